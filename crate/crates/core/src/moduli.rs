//! Parameter-space algebra: sextuples (α, β, γ, δ, ε, ζ), the group action
//! on them, the weighted invariants J₂ … J₆ with the square root 𝔞, the
//! weighted-projective orbit label, and isomorphism testing.

use std::fmt;

use exactalg::{MPoly, Rat};
use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ModuliError {
    #[error(
        "inadmissible parameters: (gamma, delta) and (epsilon, zeta) must both be nonzero pairs"
    )]
    InadmissibleParams,
    #[error("inadmissible invariants: (J4, J5, J6) = (0, 0, 0)")]
    InadmissibleInvariants,
    #[error("square root mismatch: a^2 = {found} but J5^2 - 4 J4 J6 = {expected}")]
    SqrtMismatch { found: String, expected: String },
    #[error("scaling parameter must be nonzero")]
    ZeroScaling,
    #[error("expected {expected} comma-separated rationals, got {found}")]
    Arity { expected: usize, found: usize },
    #[error("invalid rational `{0}`")]
    BadNumber(String),
}

/// Weights of J₂ … J₆ under the scaling action `J_k ↦ Λ^k J_k`.
pub const J_WEIGHTS: [u32; 5] = [2, 3, 4, 5, 6];
/// Names of the invariant variables in symbolic mode.
pub const J_VARS: [&str; 5] = ["J2", "J3", "J4", "J5", "J6"];
/// Name of the square-root variable 𝔞 in symbolic mode.
pub const SQRT_VAR: &str = "a";
/// Names of the sextuple variables in symbolic mode.
pub const PARAM_VARS: [&str; 6] = ["alpha", "beta", "gamma", "delta", "epsilon", "zeta"];

/// A rational point of the six-parameter quartic family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamPoint {
    pub alpha: Rat,
    pub beta: Rat,
    pub gamma: Rat,
    pub delta: Rat,
    pub epsilon: Rat,
    pub zeta: Rat,
}

/// A point (J₂ : J₃ : J₄ : J₅ : J₆) with an optional square root
/// 𝔞 of J₅² − 4J₄J₆.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantPoint {
    #[serde(rename = "J2")]
    pub j2: Rat,
    #[serde(rename = "J3")]
    pub j3: Rat,
    #[serde(rename = "J4")]
    pub j4: Rat,
    #[serde(rename = "J5")]
    pub j5: Rat,
    #[serde(rename = "J6")]
    pub j6: Rat,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<Rat>,
}

/// Generators of the group acting on sextuples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum GroupElement {
    /// (α, β, γ, δ, ε, ζ) ↦ (t²α, t³β, t⁵γ, t⁶δ, t⁻¹ε, ζ)
    Scaling(Rat),
    /// (α, β, γ, δ, ε, ζ) ↦ (α, β, ε, ζ, γ, δ)
    Swap,
}

/// Outcome of an isomorphism test between two sextuples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoReport {
    /// Same weighted-projective invariants (orbit equality over ℂ).
    pub equivalent_over_extension: bool,
    /// A rational witness `q = scaling(t) ∘ swap^s (p)`, when one exists.
    pub witness: Option<Witness>,
}

impl IsoReport {
    pub fn equivalent_over_q(&self) -> bool {
        self.witness.is_some()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub t: Rat,
    pub swap: bool,
}

/// Canonical orbit label of an invariant point under `J_k ↦ Λ^k J_k`.
///
/// Cross-ratios use exponents reduced by their gcd,
/// `J_a^{w_b/g} / J_b^{w_a/g}` with `g = gcd(w_a, w_b)`; the unreduced
/// ratios cannot distinguish e.g. `(1, 0, 1, 0, 0)` from `(1, 0, −1, 0, 0)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WpLabel {
    pub zero_pattern: [bool; 5],
    pub ratios: Vec<CrossRatio>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossRatio {
    pub num: String,
    pub den: String,
    pub value: Rat,
}

impl ParamPoint {
    pub fn new(values: [Rat; 6]) -> Self {
        let [alpha, beta, gamma, delta, epsilon, zeta] = values;
        ParamPoint {
            alpha,
            beta,
            gamma,
            delta,
            epsilon,
            zeta,
        }
    }

    pub fn from_ints(v: [i64; 6]) -> Self {
        ParamPoint::new(v.map(Rat::from_int))
    }

    pub fn values(&self) -> [&Rat; 6] {
        [
            &self.alpha,
            &self.beta,
            &self.gamma,
            &self.delta,
            &self.epsilon,
            &self.zeta,
        ]
    }

    pub fn is_admissible(&self) -> bool {
        !(self.gamma.is_zero() && self.delta.is_zero())
            && !(self.epsilon.is_zero() && self.zeta.is_zero())
    }

    pub fn check_admissible(&self) -> Result<(), ModuliError> {
        if self.is_admissible() {
            Ok(())
        } else {
            Err(ModuliError::InadmissibleParams)
        }
    }

    /// Variable bindings for evaluating symbolic expressions in α … ζ.
    pub fn bindings(&self) -> Vec<(&'static str, Rat)> {
        PARAM_VARS
            .iter()
            .copied()
            .zip(self.values().into_iter().cloned())
            .collect()
    }

    /// Parses `"a,b,c,d,e,f"` with rational entries such as `3/2`.
    pub fn parse_list(s: &str) -> Result<Self, ModuliError> {
        let v = parse_rats(s, 6)?;
        Ok(ParamPoint::new(v.try_into().expect("six values")))
    }
}

impl fmt::Display for ParamPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.values().iter().map(|x| x.to_string()).collect();
        write!(f, "({})", v.join(", "))
    }
}

fn parse_rats(s: &str, n: usize) -> Result<Vec<Rat>, ModuliError> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != n {
        return Err(ModuliError::Arity {
            expected: n,
            found: parts.len(),
        });
    }
    parts
        .into_iter()
        .map(|p| {
            p.parse::<Rat>()
                .map_err(|_| ModuliError::BadNumber(p.to_string()))
        })
        .collect()
}

impl InvariantPoint {
    pub fn new(j: [Rat; 5], a: Option<Rat>) -> Self {
        let [j2, j3, j4, j5, j6] = j;
        InvariantPoint {
            j2,
            j3,
            j4,
            j5,
            j6,
            a,
        }
    }

    pub fn from_ints(j: [i64; 5], a: Option<i64>) -> Self {
        InvariantPoint::new(j.map(Rat::from_int), a.map(Rat::from_int))
    }

    /// Builds a point and checks admissibility and the square-root relation.
    pub fn checked(j: [Rat; 5], a: Option<Rat>) -> Result<Self, ModuliError> {
        let p = InvariantPoint::new(j, a);
        p.validate()?;
        Ok(p)
    }

    pub fn js(&self) -> [&Rat; 5] {
        [&self.j2, &self.j3, &self.j4, &self.j5, &self.j6]
    }

    /// J₅² − 4J₄J₆, the square of 𝔞.
    pub fn a_squared(&self) -> Rat {
        &self.j5 * &self.j5 - Rat::from_int(4) * &self.j4 * &self.j6
    }

    pub fn is_admissible(&self) -> bool {
        !(self.j4.is_zero() && self.j5.is_zero() && self.j6.is_zero())
    }

    pub fn validate(&self) -> Result<(), ModuliError> {
        if !self.is_admissible() {
            return Err(ModuliError::InadmissibleInvariants);
        }
        if let Some(a) = &self.a {
            let expected = self.a_squared();
            let found = a * a;
            if found != expected {
                return Err(ModuliError::SqrtMismatch {
                    found: found.to_string(),
                    expected: expected.to_string(),
                });
            }
        }
        Ok(())
    }

    /// Attaches a rational square root of J₅² − 4J₄J₆ when one exists.
    pub fn with_rational_sqrt(mut self) -> Self {
        if self.a.is_none() {
            self.a = self.a_squared().nth_root(2);
        }
        self
    }

    /// `J_k ↦ Λ^k J_k` (and 𝔞 ↦ Λ⁵𝔞).
    pub fn rescale(&self, lambda: &Rat) -> InvariantPoint {
        let p = |k: i64| lambda.pow(k).expect("nonnegative exponent");
        InvariantPoint {
            j2: &self.j2 * &p(2),
            j3: &self.j3 * &p(3),
            j4: &self.j4 * &p(4),
            j5: &self.j5 * &p(5),
            j6: &self.j6 * &p(6),
            a: self.a.as_ref().map(|a| a * &p(5)),
        }
    }

    /// Variable bindings for evaluating symbolic expressions in J₂ … J₆
    /// (and 𝔞 when present).
    pub fn bindings(&self) -> Vec<(&'static str, Rat)> {
        let mut v: Vec<(&'static str, Rat)> = J_VARS
            .iter()
            .copied()
            .zip(self.js().into_iter().cloned())
            .collect();
        if let Some(a) = &self.a {
            v.push((SQRT_VAR, a.clone()));
        }
        v
    }

    /// Parses `"J2,J3,J4,J5,J6"`.
    pub fn parse_list(s: &str, a: Option<&str>) -> Result<Self, ModuliError> {
        let v = parse_rats(s, 5)?;
        let a = a
            .map(|x| {
                x.trim()
                    .parse::<Rat>()
                    .map_err(|_| ModuliError::BadNumber(x.to_string()))
            })
            .transpose()?;
        InvariantPoint::checked(v.try_into().expect("five values"), a)
    }
}

impl fmt::Display for InvariantPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.js().iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", v.join(" : "))?;
        if let Some(a) = &self.a {
            write!(f, " a = {a}")?;
        }
        Ok(())
    }
}

/// J₂ = α, J₃ = β, J₄ = γε, J₅ = γζ + δε, J₆ = δζ, with 𝔞 = γζ − δε.
pub fn invariants(p: &ParamPoint) -> Result<InvariantPoint, ModuliError> {
    p.check_admissible()?;
    Ok(InvariantPoint {
        j2: p.alpha.clone(),
        j3: p.beta.clone(),
        j4: &p.gamma * &p.epsilon,
        j5: &p.gamma * &p.zeta + &p.delta * &p.epsilon,
        j6: &p.delta * &p.zeta,
        a: Some(&p.gamma * &p.zeta - &p.delta * &p.epsilon),
    })
}

/// The invariants as polynomials in the symbolic sextuple.
pub fn symbolic_invariants() -> ([MPoly; 5], MPoly) {
    let v = |s: &str| MPoly::var(s);
    let (al, be, ga, de, ep, ze) = (
        v("alpha"),
        v("beta"),
        v("gamma"),
        v("delta"),
        v("epsilon"),
        v("zeta"),
    );
    let j = [al, be, &ga * &ep, &(&ga * &ze) + &(&de * &ep), &de * &ze];
    let a = &(&ga * &ze) - &(&de * &ep);
    (j, a)
}

pub fn act(p: &ParamPoint, g: &GroupElement) -> Result<ParamPoint, ModuliError> {
    match g {
        GroupElement::Swap => Ok(ParamPoint {
            alpha: p.alpha.clone(),
            beta: p.beta.clone(),
            gamma: p.epsilon.clone(),
            delta: p.zeta.clone(),
            epsilon: p.gamma.clone(),
            zeta: p.delta.clone(),
        }),
        GroupElement::Scaling(t) => {
            if t.is_zero() {
                return Err(ModuliError::ZeroScaling);
            }
            let pw = |k: i64| t.pow(k).expect("t is nonzero");
            Ok(ParamPoint {
                alpha: &p.alpha * &pw(2),
                beta: &p.beta * &pw(3),
                gamma: &p.gamma * &pw(5),
                delta: &p.delta * &pw(6),
                epsilon: &p.epsilon * &pw(-1),
                zeta: p.zeta.clone(),
            })
        }
    }
}

/// Orbit label under the weighted scaling of J₂ … J₆.
pub fn wp_normalize(j: &InvariantPoint) -> Result<WpLabel, ModuliError> {
    if !j.is_admissible() {
        return Err(ModuliError::InadmissibleInvariants);
    }
    let vals = j.js();
    let zero_pattern = vals.map(|x| x.is_zero());
    let mut ratios = Vec::new();
    for a in 0..5 {
        for b in a + 1..5 {
            if zero_pattern[a] || zero_pattern[b] {
                continue;
            }
            let (wa, wb) = (J_WEIGHTS[a], J_WEIGHTS[b]);
            let g = wa.gcd(&wb);
            let (ea, eb) = (wb / g, wa / g);
            let value = &vals[a].pow(ea as i64).expect("exponent")
                / &vals[b].pow(eb as i64).expect("exponent");
            ratios.push(CrossRatio {
                num: format!("{}^{}", J_VARS[a], ea),
                den: format!("{}^{}", J_VARS[b], eb),
                value,
            });
        }
    }
    Ok(WpLabel {
        zero_pattern,
        ratios,
    })
}

/// Whether two invariant points define the same point of the weighted
/// projective space.
pub fn same_wp_point(p: &InvariantPoint, q: &InvariantPoint) -> Result<bool, ModuliError> {
    Ok(wp_normalize(p)? == wp_normalize(q)?)
}

/// Candidate scalings `t` with `act(p, t)` possibly equal to `q`, read off
/// from coordinate ratios by exact roots.
fn scaling_candidates(p: &ParamPoint, q: &ParamPoint) -> Vec<Rat> {
    let pairs: [(&Rat, &Rat, i64); 5] = [
        (&p.epsilon, &q.epsilon, -1),
        (&p.gamma, &q.gamma, 5),
        (&p.beta, &q.beta, 3),
        (&p.alpha, &q.alpha, 2),
        (&p.delta, &q.delta, 6),
    ];
    let mut out: Vec<Rat> = Vec::new();
    for (x, y, k) in pairs {
        if x.is_zero() || y.is_zero() {
            continue;
        }
        let ratio = y / x;
        let roots: Vec<Rat> = if k == -1 {
            vec![ratio.recip().expect("nonzero")]
        } else {
            match ratio.nth_root(k as u32) {
                Some(r) if k % 2 == 0 => vec![r.clone(), -r],
                Some(r) => vec![r],
                None => Vec::new(),
            }
        };
        for r in roots {
            if !out.contains(&r) {
                out.push(r);
            }
        }
        if !out.is_empty() {
            break;
        }
    }
    if out.is_empty() {
        // every ratio-determining coordinate vanishes; t is unconstrained
        out.push(Rat::one());
    }
    out
}

/// Decides orbit equivalence: over an extension by comparing weighted
/// invariants, over ℚ by searching for a rational witness.
pub fn isomorphic(p: &ParamPoint, q: &ParamPoint) -> Result<IsoReport, ModuliError> {
    let jp = invariants(p)?;
    let jq = invariants(q)?;
    let equivalent_over_extension = same_wp_point(&jp, &jq)?;
    let mut witness = None;
    if equivalent_over_extension {
        'search: for swap in [false, true] {
            let base = if swap {
                act(p, &GroupElement::Swap)?
            } else {
                p.clone()
            };
            for t in scaling_candidates(&base, q) {
                if act(&base, &GroupElement::Scaling(t.clone()))? == *q {
                    witness = Some(Witness { t, swap });
                    break 'search;
                }
            }
        }
    }
    Ok(IsoReport {
        equivalent_over_extension,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use exactalg::rat;

    #[test]
    fn invariants_of_sample_point() {
        let j = invariants(&ParamPoint::from_ints([1, 1, 1, 1, 1, 2])).unwrap();
        assert_eq!(j, InvariantPoint::from_ints([1, 1, 1, 3, 2], Some(1)));
        assert!(j.validate().is_ok());
    }

    #[test]
    fn swap_negates_sqrt() {
        let p = ParamPoint::from_ints([1, 1, 1, 1, 1, 2]);
        let s = act(&p, &GroupElement::Swap).unwrap();
        let (jp, js) = (invariants(&p).unwrap(), invariants(&s).unwrap());
        assert_eq!(jp.js(), js.js());
        assert_eq!(js.a, jp.a.map(|a| -a));
        assert_eq!(act(&s, &GroupElement::Swap).unwrap(), p);
    }

    #[test]
    fn scaling_by_two() {
        let p = ParamPoint::from_ints([1, 1, 1, 1, 1, 2]);
        let q = act(&p, &GroupElement::Scaling(Rat::from_int(2))).unwrap();
        assert_eq!(
            q,
            ParamPoint::new([
                Rat::from_int(4),
                Rat::from_int(8),
                Rat::from_int(32),
                Rat::from_int(64),
                rat(1, 2),
                Rat::from_int(2)
            ])
        );
        assert!(act(&p, &GroupElement::Scaling(Rat::zero())).is_err());
    }

    #[test]
    fn weighted_labels() {
        let p = InvariantPoint::from_ints([1, 1, 1, 3, 2], None);
        let q = InvariantPoint::from_ints([4, 8, 16, 96, 128], None);
        assert!(same_wp_point(&p, &q).unwrap());
        let only_j5 = wp_normalize(&InvariantPoint::from_ints([0, 0, 0, 1, 0], None)).unwrap();
        assert_eq!(only_j5.zero_pattern, [true, true, true, false, true]);
        assert!(only_j5.ratios.is_empty());
        let a = InvariantPoint::from_ints([1, 0, 0, 0, 1], None);
        let b = InvariantPoint::from_ints([1, 0, 0, 0, 2], None);
        assert!(!same_wp_point(&a, &b).unwrap());
        // a sign that no scaling can produce
        let c = InvariantPoint::from_ints([1, 0, 1, 0, 0], None);
        let d = InvariantPoint::from_ints([1, 0, -1, 0, 0], None);
        assert!(!same_wp_point(&c, &d).unwrap());
        assert!(wp_normalize(&InvariantPoint::from_ints([1, 1, 0, 0, 0], None)).is_err());
    }

    #[test]
    fn isomorphism_witnesses() {
        let p = ParamPoint::from_ints([1, 1, 1, 1, 1, 2]);
        let q = act(&p, &GroupElement::Scaling(Rat::from_int(3))).unwrap();
        let r = isomorphic(&p, &q).unwrap();
        assert_eq!(
            r.witness,
            Some(Witness {
                t: Rat::from_int(3),
                swap: false
            })
        );
        let s = act(&p, &GroupElement::Swap).unwrap();
        let r = isomorphic(&p, &s).unwrap();
        assert_eq!(
            r.witness,
            Some(Witness {
                t: Rat::one(),
                swap: true
            })
        );
        let other = ParamPoint::from_ints([1, 1, 2, 2, 1, 1]);
        let r = isomorphic(&p, &other).unwrap();
        assert!(!r.equivalent_over_extension && r.witness.is_none());
    }

    #[test]
    fn json_shape() {
        let j = InvariantPoint::new(
            [rat(3, 2), Rat::one(), Rat::one(), Rat::one(), Rat::one()],
            None,
        );
        let s = serde_json::to_string(&j).unwrap();
        assert_eq!(s, r#"{"J2":"3/2","J3":"1","J4":"1","J5":"1","J6":"1"}"#);
        let back: InvariantPoint = serde_json::from_str(&s).unwrap();
        assert_eq!(back, j);
    }
}
