//! Registry of the density bounds used in the upper- and lower-bound
//! arguments, each evaluated exactly. Where an expression is displayed in
//! two algebraically different forms, both are registered so the identity
//! can be checked on data.

use serde::Serialize;

use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum BoundError {
    #[error("unknown bound formula {0:?}")]
    UnknownId(String),
    #[error("formula {id} takes {want} parameters, got {got}")]
    Arity { id: &'static str, want: usize, got: usize },
    #[error("parameter {param} = {value} outside its domain ({domain})")]
    OutOfDomain { param: &'static str, value: Rational, domain: &'static str },
    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(&'static str),
    #[error("formula {0} has no registered conclusion")]
    NoConclusion(&'static str),
}

type Eval = fn(&[Rational]) -> Rational;
type Pred = fn(&[Rational]) -> bool;

/// A parameter: name, least admissible value, and whether it must be an integer.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Param {
    pub name: &'static str,
    pub min: i64,
    pub integer: bool,
}

const fn int(name: &'static str, min: i64) -> Param {
    Param { name, min, integer: true }
}

const fn real(name: &'static str) -> Param {
    Param { name, min: 0, integer: false }
}

/// A conclusion `holds(params, value)` claimed under `hypothesis(params)`.
#[derive(Clone, Copy)]
pub struct Conclusion {
    pub statement: &'static str,
    pub hypothesis_text: &'static str,
    hypothesis: Pred,
    holds: fn(&[Rational], Rational) -> bool,
}

#[derive(Clone, Copy)]
pub struct BoundFormula {
    pub id: &'static str,
    pub description: &'static str,
    pub params: &'static [Param],
    /// Every displayed form; all must agree on the domain.
    forms: &'static [Eval],
    pub conclusion: Option<Conclusion>,
}

impl BoundFormula {
    pub fn form_count(&self) -> usize {
        self.forms.len()
    }

    fn check(&self, p: &[Rational]) -> Result<(), BoundError> {
        if p.len() != self.params.len() {
            return Err(BoundError::Arity { id: self.id, want: self.params.len(), got: p.len() });
        }
        for (spec, &v) in self.params.iter().zip(p) {
            if v < Rational::from(spec.min) {
                return Err(BoundError::OutOfDomain { param: spec.name, value: v, domain: "below minimum" });
            }
            if spec.integer && v.denom() != 1 {
                return Err(BoundError::OutOfDomain { param: spec.name, value: v, domain: "must be an integer" });
            }
        }
        Ok(())
    }

    /// Value of form `form` at `p`.
    pub fn eval_form(&self, form: usize, p: &[Rational]) -> Result<Rational, BoundError> {
        self.check(p)?;
        Ok(self.forms[form](p))
    }
}

fn q(v: i128) -> Rational {
    Rational::from_int(v)
}

fn half() -> Rational {
    Rational::new(1, 2)
}

/// `C(k−3, 2)`.
fn c2(k: Rational) -> Rational {
    (k - q(3)) * (k - q(4)) * half()
}

fn unique_vertex_direct(p: &[Rational]) -> Rational {
    let [k, a, b, mu] = [p[0], p[1], p[2], p[3]];
    let c = c2(k);
    let num = c + (k - q(5)) * c + a * (k - q(3)) + b * (k - q(2)) + mu * (k - q(2)) + a;
    num / (k - q(3) + c + a + b + mu)
}

fn unique_vertex_closed(p: &[Rational]) -> Rational {
    let [k, a, b, mu] = [p[0], p[1], p[2], p[3]];
    let s = a + b + mu;
    ((k - q(3)) * (k - q(4)) * (k - q(4)) * half() + s * (k - q(2))) / ((k - q(3)) * (k - q(2)) * half() + s)
}

fn first_level_direct(p: &[Rational]) -> Rational {
    let [k, l, mu] = [p[0], p[1], p[2]];
    let c = c2(k);
    let num = c + (k - q(5)) * c + l * (k - q(4)) + c * (k - q(3)) + mu * (k - q(2)) + l;
    num / (k - q(3) + c + l + mu)
}

fn first_level_closed(p: &[Rational]) -> Rational {
    let [k, l, mu] = [p[0], p[1], p[2]];
    let k3 = k - q(3);
    k - q(2) + (half() * k3 * k3 * (k - q(8)) - l) / (half() * k3 * (k - q(2)) + l + mu)
}

fn first_level_hypothesis(p: &[Rational]) -> bool {
    let [k, l, eps] = [p[0], p[1], p[3]];
    eps.is_positive() && eps < half() && l <= (half() - eps * half()) * k * k * k
}

fn first_level_edges_direct(p: &[Rational]) -> Rational {
    let [k, l, mu, g, h] = [p[0], p[1], p[2], p[3], p[4]];
    let c = c2(k);
    let num = c + (k - q(5)) * c + l * (k - q(4)) + (k - q(3)) * c + g + h + mu * (k - q(2)) + l;
    num / (k - q(3) + c + l + mu)
}

fn first_level_edges_closed(p: &[Rational]) -> Rational {
    let [k, l, mu, g, h] = [p[0], p[1], p[2], p[3], p[4]];
    let k3 = k - q(3);
    k - q(2) + (half() * k3 * k3 * (k - q(8)) + g + h - l) / (half() * k3 * (k - q(2)) + l + mu)
}

fn first_level_edges_hypothesis(p: &[Rational]) -> bool {
    let [k, l, g, h] = [p[0], p[1], p[3], p[4]];
    g + h >= q(2) * k * k && l <= (k - q(3)) * c2(k)
}

fn pure_direct(p: &[Rational]) -> Rational {
    let [k, at, lt, mu] = [p[0], p[1], p[2], p[3]];
    let c = c2(k);
    let num = c + (k - q(5)) * c + at * (k - q(3)) + at * (k - q(3)) + lt * (k - q(3)) + mu * (k - q(2)) + at;
    num / (k - q(3) + c + at + lt + mu)
}

fn pure_closed(p: &[Rational]) -> Rational {
    let [k, at, lt, mu] = [p[0], p[1], p[2], p[3]];
    let k3 = k - q(3);
    k - q(2) + (at * k3 - lt - q(2) * k3 * k3) / (k3 + c2(k) + at + lt + mu)
}

fn pure_hypothesis(p: &[Rational]) -> bool {
    let [k, at, lt, eps] = [p[0], p[1], p[2], p[4]];
    let k3 = k * k * k;
    eps.is_positive() && eps < Rational::new(1, 8) && at >= (half() - eps) * k3 && lt < Rational::new(3, 8) * k3 * k
}

fn above_k_minus_2(p: &[Rational], v: Rational) -> bool {
    v > p[0] - q(2)
}

fn below_k_minus_2(p: &[Rational], v: Rational) -> bool {
    v < p[0] - q(2)
}

fn layer_one_direct(p: &[Rational]) -> Rational {
    let [k, g, d, b] = [p[0], p[1], p[2], p[3]];
    (g * (q(2) * k - q(4)) + d * (k - q(2)) + b * (k - q(2)) + (k - q(3))) / (q(2) * g + d + b + q(1))
}

fn layer_one_closed(p: &[Rational]) -> Rational {
    let [k, g, d, b] = [p[0], p[1], p[2], p[3]];
    k - q(2) - q(1) / (q(2) * g + d + b + q(1))
}

fn layer_two_direct(p: &[Rational]) -> Rational {
    let [k, g, d, b] = [p[0], p[1], p[2], p[3]];
    (g * (q(2) * k - q(4)) + d * (k - q(2)) + b * (k - q(2)) + q(1) + q(2) * (k - q(3))) / (q(2) * g + d + b + q(2))
}

fn layer_two_closed(p: &[Rational]) -> Rational {
    let [k, g, d, b] = [p[0], p[1], p[2], p[3]];
    k - q(2) - q(1) / (q(2) * g + d + b + q(2))
}

fn g0_increment_direct(p: &[Rational]) -> Rational {
    let [y, z] = [p[0], p[1]];
    (q(3) + q(2) * y + q(3) * z) / (q(4) + y + z) - (q(1) + q(2) * y + q(3) * z) / (q(3) + y + z)
}

fn g0_increment_closed(p: &[Rational]) -> Rational {
    let [y, z] = [p[0], p[1]];
    (q(5) - z) / ((q(4) + y + z) * (q(3) + y + z))
}

fn region_ratio(p: &[Rational]) -> Rational {
    let [a, b, s, e] = [p[0], p[1], p[2], p[3]];
    (a + q(2) * s + e) / (b + s)
}

fn region_hypothesis(p: &[Rational]) -> bool {
    let [a, b, s, e] = [p[0], p[1], p[2], p[3]];
    s + q(7) * e < q(13) * b - q(7) * a
}

static FORMULAS: [BoundFormula; 8] = [
    BoundFormula {
        id: "unique-vertex-density",
        description:
            "density of roots, ground vertices, a unique first-level, b unique second-level and mu universal vertices",
        params: &[int("k", 5), int("a", 0), int("b", 0), int("mu", 0)],
        forms: &[unique_vertex_direct, unique_vertex_closed],
        conclusion: None,
    },
    BoundFormula {
        id: "first-level-density",
        description: "density of roots, ground, lambda first-level and mu universal vertices",
        params: &[int("k", 5), int("lambda", 0), int("mu", 0), real("eps")],
        forms: &[first_level_direct, first_level_closed],
        conclusion: Some(Conclusion {
            statement: "value > k - 2 (for k large enough)",
            hypothesis_text: "0 < eps < 1/2 and lambda <= (1/2 - eps/2) k^3",
            hypothesis: first_level_hypothesis,
            holds: above_k_minus_2,
        }),
    },
    BoundFormula {
        id: "first-level-edge-density",
        description: "first-level density with g skewed and h first-level edges",
        params: &[int("k", 5), int("lambda", 0), int("mu", 0), int("g", 0), int("h", 0)],
        forms: &[first_level_edges_direct, first_level_edges_closed],
        conclusion: Some(Conclusion {
            statement: "value > k - 2",
            hypothesis_text: "g + h >= 2k^2 and lambda <= (k-3) C(k-3, 2)",
            hypothesis: first_level_edges_hypothesis,
            holds: above_k_minus_2,
        }),
    },
    BoundFormula {
        id: "pure-first-level-density",
        description: "density with a~ pure first-level vertices, their lambda~ second-level and mu universal vertices",
        params: &[int("k", 5), int("a_pure", 0), int("lambda_pure", 0), int("mu", 0), real("eps")],
        forms: &[pure_direct, pure_closed],
        conclusion: Some(Conclusion {
            statement: "value > k - 2 (for k large enough)",
            hypothesis_text: "0 < eps < 1/8, a~ >= (1/2 - eps) k^3 and lambda~ < 3k^4/8",
            hypothesis: pure_hypothesis,
            holds: above_k_minus_2,
        }),
    },
    BoundFormula {
        id: "layer-bound-one",
        description: "e(S,H)/v(S,H) bound of the layered pair when one low-layer vertex is present",
        params: &[int("k", 5), int("gamma", 0), int("delta", 0), int("beta", 0)],
        forms: &[layer_one_direct, layer_one_closed],
        conclusion: Some(Conclusion {
            statement: "value < k - 2",
            hypothesis_text: "none",
            hypothesis: |_| true,
            holds: below_k_minus_2,
        }),
    },
    BoundFormula {
        id: "layer-bound-two",
        description: "e(S,H)/v(S,H) bound of the layered pair when both low-layer vertices are present",
        params: &[int("k", 5), int("gamma", 0), int("delta", 0), int("beta", 0)],
        forms: &[layer_two_direct, layer_two_closed],
        conclusion: Some(Conclusion {
            statement: "value < k - 2",
            hypothesis_text: "none",
            hypothesis: |_| true,
            holds: below_k_minus_2,
        }),
    },
    BoundFormula {
        id: "g0-increment",
        description: "density gain from one more two-edge vertex in a subgraph of G_0",
        params: &[int("y", 0), int("z", 0)],
        forms: &[g0_increment_direct, g0_increment_closed],
        conclusion: Some(Conclusion {
            statement: "value > 0",
            hypothesis_text: "z <= 1",
            hypothesis: |p| p[1] <= q(1),
            holds: |_, v| v.is_positive(),
        }),
    },
    BoundFormula {
        id: "region-ratio",
        description: "(A + 2s + e)/(B + s) with s = nu_1 + nu_2",
        params: &[int("A", 1), int("B", 1), int("s", 0), int("e", 0)],
        forms: &[region_ratio],
        conclusion: Some(Conclusion {
            statement: "value < 13/7",
            hypothesis_text: "s + 7e < 13B - 7A",
            hypothesis: region_hypothesis,
            holds: |_, v| v < Rational::new(13, 7),
        }),
    },
];

pub fn bound_formulas() -> &'static [BoundFormula] {
    &FORMULAS
}

pub fn bound_formula(id: &str) -> Result<&'static BoundFormula, BoundError> {
    FORMULAS.iter().find(|f| f.id == id).ok_or_else(|| BoundError::UnknownId(id.to_string()))
}

/// Exact value of the formula's first displayed form.
pub fn eval_bound_formula(id: &str, params: &[Rational]) -> Result<Rational, BoundError> {
    bound_formula(id)?.eval_form(0, params)
}

/// True when every displayed form gives the same value at `params`.
pub fn check_bound_identity(id: &str, params: &[Rational]) -> Result<bool, BoundError> {
    let f = bound_formula(id)?;
    let first = f.eval_form(0, params)?;
    Ok((1..f.form_count()).all(|i| f.forms[i](params) == first))
}

/// Evaluates the registered conclusion at `params`; errors when the
/// conclusion's hypothesis does not hold there.
pub fn check_bound_inequality(id: &str, params: &[Rational]) -> Result<bool, BoundError> {
    let f = bound_formula(id)?;
    let c = f.conclusion.ok_or(BoundError::NoConclusion(f.id))?;
    let v = f.eval_form(0, params)?;
    if !(c.hypothesis)(params) {
        return Err(BoundError::HypothesisNotMet(c.hypothesis_text));
    }
    Ok((c.holds)(params, v))
}
