//! The sentences ψ₁, ψ₂, φ (depth 4) and φ_k (k ≥ 5).
//!
//! Paper names map to identifiers as follows: `a_{1,0}` → `a_1_0`,
//! `a_{1,0}^{0,1}` → `a_1_0__0_1`, `a'_{1,1}` → `ap_1_1`; the φ_k vertices are
//! `a_i` (roots), `v_i_j` (ground), `v_i_j_l` (first level), `v_i_j_l_m`
//! (second level) and `w_i_j_l` (universal).

use std::collections::HashSet;

use super::ast::{Formula, Sentence};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum BuildError {
    #[error("duplicate variable name {0:?}")]
    DuplicateName(String),
    #[error("φ_k needs k >= 5, got {0}")]
    KTooSmall(usize),
}

fn distinct(names: &[&str]) -> Result<(), BuildError> {
    let mut seen = HashSet::new();
    for n in names {
        if !seen.insert(*n) {
            return Err(BuildError::DuplicateName(n.to_string()));
        }
    }
    Ok(())
}

fn lit(pos: bool, a: &str, b: &str) -> Formula {
    if pos {
        Formula::adj(a, b)
    } else {
        Formula::non_adj(a, b)
    }
}

/// Literals of ψ₁ mentioning `b_i`, in listed order.
fn psi1_block(a: [&str; 2], bs: [&str; 3], i: usize) -> Vec<Formula> {
    const PATTERN: [[bool; 2]; 3] = [[true, true], [true, false], [false, true]];
    (0..2).map(|j| lit(PATTERN[i][j], bs[i], a[j])).collect()
}

/// Literals of ψ₂ mentioning `b_i`, in listed order.
fn psi2_block(a: [&str; 3], bs: [&str; 4], i: usize) -> Vec<Formula> {
    const PATTERN: [[bool; 3]; 4] = [[true, true, true], [true, true, false], [true, false, true], [false, true, true]];
    (0..3).map(|j| lit(PATTERN[i][j], bs[i], a[j])).collect()
}

/// ψ₁(a₁, a₂, b₁, b₂, b₃): six adjacency literals.
pub fn build_psi1(vars: [&str; 5]) -> Result<Formula, BuildError> {
    distinct(&vars)?;
    let [a1, a2, b1, b2, b3] = vars;
    Ok(Formula::And((0..3).flat_map(|i| psi1_block([a1, a2], [b1, b2, b3], i)).collect()))
}

/// ψ₂(a₁, a₂, a₃, b₁, …, b₄): twelve adjacency literals.
pub fn build_psi2(vars: [&str; 7]) -> Result<Formula, BuildError> {
    distinct(&vars)?;
    let [a1, a2, a3, b1, b2, b3, b4] = vars;
    Ok(Formula::And((0..4).flat_map(|i| psi2_block([a1, a2, a3], [b1, b2, b3, b4], i)).collect()))
}

/// Names of the 33 variables of φ, in quantifier order of the prenex display.
pub fn phi4_variables() -> Vec<String> {
    let mut out = vec!["x".to_string()];
    for s in ["a", "b"] {
        out.push(s.to_string());
        let zs = phi4_level1(s);
        out.extend(zs.iter().cloned());
        for z in &zs {
            out.extend(phi4_level2(z));
        }
    }
    out
}

/// `s_1_1, s_1_0, s_0_1`.
pub fn phi4_level1(s: &str) -> [String; 3] {
    [format!("{s}_1_1"), format!("{s}_1_0"), format!("{s}_0_1")]
}

/// The ψ₂ witnesses of `z = s_i_j`: `z__1_1, s'_i_j, z__1_0, z__0_1`.
pub fn phi4_level2(z: &str) -> [String; 4] {
    let (s, ij) = z.split_once('_').expect("level-1 name");
    [format!("{z}__1_1"), format!("{s}p_{ij}"), format!("{z}__1_0"), format!("{z}__0_1")]
}

/// φ restructured to quantifier depth 4: every witness is quantified inside
/// the scope of exactly the variables its literals mention.
pub fn build_phi4() -> Sentence {
    let x = "x";
    let side = |s: &str, adjacent: bool| {
        let zs = phi4_level1(s);
        let mut parts = vec![lit(adjacent, x, s)];
        for (i, z) in zs.iter().enumerate() {
            let ws = phi4_level2(z);
            let mut inner = psi1_block([x, s], [&zs[0], &zs[1], &zs[2]], i);
            for (j, w) in ws.iter().enumerate() {
                let block = psi2_block([x, s, z], [&ws[0], &ws[1], &ws[2], &ws[3]], j);
                inner.push(Formula::exists(w, Formula::and(block)));
            }
            parts.push(Formula::exists(z, Formula::and(inner)));
        }
        Formula::exists(s, Formula::and(parts))
    };
    let f = Formula::exists(x, Formula::and(vec![side("a", true), side("b", false)]));
    Sentence::new(f).expect("φ is closed")
}

/// The literals of φ exactly as displayed (prenex form, flat conjunction).
pub fn phi4_flat_literals() -> Vec<Formula> {
    let mut out = Vec::new();
    for (s, adjacent) in [("a", true), ("b", false)] {
        out.push(lit(adjacent, "x", s));
        let zs = phi4_level1(s);
        if let Formula::And(l) = build_psi1(["x", s, &zs[0], &zs[1], &zs[2]]).unwrap() {
            out.extend(l);
        }
        for z in &zs {
            let ws = phi4_level2(z);
            if let Formula::And(l) = build_psi2(["x", s, z, &ws[0], &ws[1], &ws[2], &ws[3]]).unwrap() {
                out.extend(l);
            }
        }
    }
    out
}

pub fn root_name(i: usize) -> String {
    format!("a_{i}")
}
pub fn ground_name(i: usize, j: usize) -> String {
    format!("v_{i}_{j}")
}
pub fn first_level_name(i: usize, j: usize, l: usize) -> String {
    format!("v_{i}_{j}_{l}")
}
pub fn second_level_name(i: usize, j: usize, l: usize, m: usize) -> String {
    format!("v_{i}_{j}_{l}_{m}")
}
pub fn universal_name(i: usize, j: usize, l: usize) -> String {
    format!("w_{i}_{j}_{l}")
}

/// φ_k for k ≥ 5: roots a_1..a_{k-3} forming a clique, then ground,
/// first-level, second-level and universal witnesses, nested to depth k.
pub fn build_phi_k(k: usize) -> Result<Sentence, BuildError> {
    if k < 5 {
        return Err(BuildError::KTooSmall(k));
    }
    let r = k - 3;
    let roots: Vec<String> = (1..=r).map(root_name).collect();
    // Adjacent to every root except those in `except`.
    let root_lits = |v: &str, except: &[usize]| -> Vec<Formula> {
        (1..=r).map(|t| lit(!except.contains(&t), v, &roots[t - 1])).collect()
    };

    let mut body = Vec::new();
    for i in 1..=r {
        for j in i + 1..=r {
            body.push(Formula::adj(&roots[i - 1], &roots[j - 1]));
        }
    }
    for i in 1..=r {
        for j in i + 1..=r {
            let g = ground_name(i, j);
            let mut gparts = root_lits(&g, &[i, j]);
            for l in 1..=r {
                let f = first_level_name(i, j, l);
                let mut fparts = vec![Formula::adj(&f, &g)];
                fparts.extend(root_lits(&f, &[l]));
                for m in 1..=r {
                    let s = second_level_name(i, j, l, m);
                    let mut sparts = vec![Formula::adj(&s, &g), Formula::adj(&s, &f)];
                    sparts.extend(root_lits(&s, &[m]));
                    fparts.push(Formula::exists(&s, Formula::and(sparts)));
                }
                let w = universal_name(i, j, l);
                let mut wparts = vec![Formula::adj(&w, &g), Formula::adj(&w, &f)];
                wparts.extend(root_lits(&w, &[]));
                fparts.push(Formula::exists(&w, Formula::and(wparts)));
                gparts.push(Formula::exists(&f, Formula::and(fparts)));
            }
            body.push(Formula::exists(&g, Formula::and(gparts)));
        }
    }
    let mut f = Formula::and(body);
    for name in roots.iter().rev() {
        f = Formula::exists(name, f);
    }
    Ok(Sentence::new(f).expect("φ_k is closed"))
}
