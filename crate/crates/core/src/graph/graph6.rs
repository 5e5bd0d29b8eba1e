//! graph6 text format (standard bit layout, upper triangle column by column).

use super::{GraphError, PatternGraph, MAX_PATTERN_VERTICES};

pub fn graph6_encode(g: &PatternGraph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut nbits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            nbits += 1;
            if nbits == 6 {
                out.push(acc + 63);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        out.push((acc << (6 - nbits)) + 63);
    }
    String::from_utf8(out).expect("graph6 is printable ASCII")
}

pub fn graph6_decode(text: &str) -> Result<PatternGraph, GraphError> {
    let err = |offset: usize, reason: &str| GraphError::Graph6 { offset, reason: reason.to_string() };
    let bytes = text.as_bytes();
    if let Some(pos) = bytes.iter().position(|&b| !(63..=126).contains(&b)) {
        return Err(err(pos, "byte outside the graph6 range 63..=126"));
    }
    let (n, body_start) = match bytes.first() {
        None => return Err(err(0, "empty input")),
        Some(&126) => {
            if bytes.get(1) == Some(&126) {
                // 8-byte header: n >= 258048, far beyond the cap anyway.
                if bytes.len() < 8 {
                    return Err(err(bytes.len(), "truncated 8-byte size header"));
                }
                return Err(err(0, "vertex count exceeds 64"));
            }
            if bytes.len() < 4 {
                return Err(err(bytes.len(), "truncated 4-byte size header"));
            }
            let n = bytes[1..4].iter().fold(0usize, |a, &b| a << 6 | (b - 63) as usize);
            (n, 4)
        }
        Some(&b) => ((b - 63) as usize, 1),
    };
    if n == 0 || n > MAX_PATTERN_VERTICES {
        return Err(err(0, &format!("vertex count {n} outside 1..=64")));
    }
    let bits = n * (n - 1) / 2;
    let need = bits.div_ceil(6);
    let body = &bytes[body_start..];
    if body.len() != need {
        return Err(err(
            body_start + body.len().min(need),
            &format!("expected {need} adjacency bytes for n={n}, found {}", body.len()),
        ));
    }
    let mut g = PatternGraph::empty(n)?;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j)?;
            }
            k += 1;
        }
    }
    if bits % 6 != 0 {
        let pad = body[need - 1] - 63;
        if pad & ((1 << (6 - bits % 6)) - 1) != 0 {
            return Err(err(body_start + need - 1, "nonzero padding bits"));
        }
    }
    Ok(g)
}
