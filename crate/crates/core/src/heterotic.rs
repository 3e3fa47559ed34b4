//! Gauge algebras of the dual heterotic vacua: the ADE dictionary applied
//! to computed fiber configurations, the per-branch lookup of generic and
//! enhanced algebras, enhancement-locus detection and the bundle-weight
//! arithmetic.

use std::cmp::Reverse;
use std::fmt;

use exactalg::Rat;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::fibrations::{build_modular, j30_value, Branch, FibrationClass, FibrationError, Locus};
use crate::moduli::{InvariantPoint, ModuliError};
use crate::weierstrass::{classify_fibration, FiberConfig, RootLattice, Torsion, WeierstrassError};

#[derive(Debug, Error)]
pub enum HeteroticError {
    #[error(transparent)]
    Moduli(#[from] ModuliError),
    #[error(transparent)]
    Fibration(#[from] FibrationError),
    #[error(transparent)]
    Weierstrass(#[from] WeierstrassError),
    #[error("cannot parse simple Lie algebra `{0}`")]
    BadAlgebra(String),
}

/// A simple Lie algebra of ADE type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SimpleAlgebra {
    /// e₆, e₇, e₈.
    E(u32),
    /// so(2n).
    So(u32),
    /// su(n).
    Su(u32),
}

impl SimpleAlgebra {
    pub fn rank(&self) -> u32 {
        match self {
            SimpleAlgebra::E(n) => *n,
            SimpleAlgebra::So(m) => m / 2,
            SimpleAlgebra::Su(n) => n - 1,
        }
    }

    /// E₈ → e8, E₇ → e7, E₆ → e6, D_n → so(2n), A_n → su(n+1).
    pub fn from_root_lattice(l: RootLattice) -> Self {
        match l {
            RootLattice::E(n) => SimpleAlgebra::E(n),
            RootLattice::D(n) => SimpleAlgebra::So(2 * n),
            RootLattice::A(n) => SimpleAlgebra::Su(n + 1),
        }
    }

    fn sort_key(&self) -> (u8, Reverse<u32>) {
        match self {
            SimpleAlgebra::E(n) => (0, Reverse(*n)),
            SimpleAlgebra::So(n) => (1, Reverse(*n)),
            SimpleAlgebra::Su(n) => (2, Reverse(*n)),
        }
    }
}

impl fmt::Display for SimpleAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimpleAlgebra::E(n) => write!(f, "e{n}"),
            SimpleAlgebra::So(n) => write!(f, "so({n})"),
            SimpleAlgebra::Su(n) => write!(f, "su({n})"),
        }
    }
}

impl std::str::FromStr for SimpleAlgebra {
    type Err = HeteroticError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || HeteroticError::BadAlgebra(s.to_string());
        let inner = |prefix: &str| -> Option<u32> {
            s.strip_prefix(prefix)?.strip_suffix(')')?.parse().ok()
        };
        if let Some(n) = s.strip_prefix('e') {
            return n.parse().map(SimpleAlgebra::E).map_err(|_| bad());
        }
        if let Some(n) = inner("so(") {
            return Ok(SimpleAlgebra::So(n));
        }
        if let Some(n) = inner("su(") {
            return Ok(SimpleAlgebra::Su(n));
        }
        Err(bad())
    }
}

/// A semisimple algebra as a sorted multiset of simple summands.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GaugeAlgebra {
    summands: Vec<SimpleAlgebra>,
}

impl GaugeAlgebra {
    pub fn new(summands: impl IntoIterator<Item = SimpleAlgebra>) -> Self {
        let mut summands: Vec<SimpleAlgebra> = summands.into_iter().collect();
        summands.sort_by_key(|s| s.sort_key());
        GaugeAlgebra { summands }
    }

    /// Parses `"e8 + so(12)"` (also accepting `⊕`).
    pub fn parse(s: &str) -> Result<Self, HeteroticError> {
        let parts = s.split(['+', '⊕']).map(str::trim).filter(|p| !p.is_empty());
        Ok(GaugeAlgebra::new(
            parts.map(str::parse).collect::<Result<Vec<_>, _>>()?,
        ))
    }

    /// The ADE dictionary applied to every reducible fiber.
    pub fn from_config(cfg: &FiberConfig) -> Self {
        GaugeAlgebra::new(cfg.fibers.iter().flat_map(|(t, c)| {
            t.root_lattice()
                .map(SimpleAlgebra::from_root_lattice)
                .into_iter()
                .flat_map(move |a| std::iter::repeat_n(a, *c as usize))
        }))
    }

    pub fn summands(&self) -> &[SimpleAlgebra] {
        &self.summands
    }

    pub fn rank(&self) -> u32 {
        self.summands.iter().map(SimpleAlgebra::rank).sum()
    }

    pub fn with(&self, extra: SimpleAlgebra) -> Self {
        GaugeAlgebra::new(self.summands.iter().copied().chain([extra]))
    }
}

impl fmt::Display for GaugeAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summands.is_empty() {
            return f.write_str("0");
        }
        let v: Vec<String> = self.summands.iter().map(|s| s.to_string()).collect();
        f.write_str(&v.join(" ⊕ "))
    }
}

impl Serialize for GaugeAlgebra {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.summands.iter().map(|a| a.to_string()))
    }
}

fn alg(s: &str) -> GaugeAlgebra {
    GaugeAlgebra::parse(s).expect("literal algebra parses")
}

/// Short name of the heterotic branch dual to a fibration.
pub fn branch_name(class: FibrationClass) -> &'static str {
    match class {
        FibrationClass::Bfd => "e8-so12",
        FibrationClass::Standard => "e7-e7",
        FibrationClass::Alternate => "so24-su2su2",
        FibrationClass::Maximal => "so28",
    }
}

/// Gauge algebra of the branch away from all special loci.
pub fn generic_algebra(class: FibrationClass) -> GaugeAlgebra {
    match class {
        FibrationClass::Bfd => alg("e8 + so(12)"),
        FibrationClass::Standard => alg("e7 + e7"),
        FibrationClass::Alternate => alg("so(24) + su(2) + su(2)"),
        FibrationClass::Maximal => alg("so(28)"),
    }
}

/// Enhanced algebra on one enhancement locus, when the branch has one.
pub fn enhanced_algebra(class: FibrationClass, locus: Locus) -> Option<GaugeAlgebra> {
    use FibrationClass::*;
    let a = match (class, locus) {
        (_, Locus::J30) => generic_algebra(class).with(SimpleAlgebra::Su(2)),
        (Bfd, Locus::SqrtZero) => alg("e8 + so(14)"),
        (Alternate, Locus::SqrtZero) => alg("so(24) + su(4)"),
        (Maximal, Locus::SqrtZero) => alg("so(30)"),
        (Standard | Bfd, Locus::J4) => alg("e8 + e7"),
        (Alternate | Maximal, Locus::J4) => alg("so(28) + su(2)"),
        (Standard | Bfd, Locus::J4J5) => alg("e8 + e8"),
        (Alternate | Maximal, Locus::J4J5) => alg("so(32)"),
        _ => return None,
    };
    Some(a)
}

/// Global form attached to (branch, locus), where one is known.
pub fn global_form(class: FibrationClass, locus: Option<Locus>) -> Option<&'static str> {
    match (class, locus) {
        (FibrationClass::Alternate, None) => Some("(Spin(24) x SU(2) x SU(2))/Z2"),
        (FibrationClass::Alternate | FibrationClass::Maximal, Some(Locus::J4J5)) => {
            Some("Spin(32)/Z2")
        }
        _ => None,
    }
}

/// Membership in the enhancement loci 𝔞 = 0, J30 = 0, J₄ = 0, J₄ = J₅ = 0,
/// in that order.
pub fn detect_loci(j: &InvariantPoint) -> Result<Vec<Locus>, HeteroticError> {
    j.validate()?;
    let mut v = Vec::new();
    if j.a_squared().is_zero() {
        v.push(Locus::SqrtZero);
    }
    if j30_value(j).is_zero() {
        v.push(Locus::J30);
    }
    if j.j4.is_zero() {
        v.push(Locus::J4);
        if j.j5.is_zero() {
            v.push(Locus::J4J5);
        }
    }
    Ok(v)
}

/// The dictionary prediction for a set of detected loci: the most special
/// of J₄ = J₅ = 0, J₄ = 0, 𝔞 = 0 determines the base, and J30 = 0 adds su(2)
/// when it is the only locus.
pub fn predicted_algebra(class: FibrationClass, loci: &[Locus]) -> GaugeAlgebra {
    for l in [Locus::J4J5, Locus::J4, Locus::SqrtZero] {
        if loci.contains(&l) {
            if let Some(a) = enhanced_algebra(class, l) {
                return a;
            }
        }
    }
    if loci.contains(&Locus::J30) {
        return enhanced_algebra(class, Locus::J30).expect("every branch enhances on J30 = 0");
    }
    generic_algebra(class)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Enhancement {
    pub locus: Locus,
    pub algebra: GaugeAlgebra,
}

/// Heterotic data of one branch at one point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BranchReport {
    pub branch: &'static str,
    pub class: FibrationClass,
    pub point: InvariantPoint,
    /// Algebra from the dictionary lookup for the detected loci.
    pub gauge: GaugeAlgebra,
    pub generic: GaugeAlgebra,
    pub enhancements: Vec<Enhancement>,
    /// Algebra read off the computed fiber configuration, when the model
    /// is defined over ℚ at this point.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub computed: Option<GaugeAlgebra>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub config: Option<FiberConfig>,
    /// Lookup and computation agree, including the rank check against the
    /// configuration's total ADE rank.
    pub consistent: bool,
    /// Nonzero B-flux, carried by a two-torsion section.
    pub flux: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub global_form: Option<&'static str>,
    #[serde(rename = "annotations")]
    pub notes: Vec<String>,
}

/// Classifies the heterotic branch dual to `class` at `j`.
pub fn classify_branch(
    class: FibrationClass,
    j: &InvariantPoint,
) -> Result<BranchReport, HeteroticError> {
    let loci = detect_loci(j)?;
    let gauge = predicted_algebra(class, &loci);
    let enhancements: Vec<Enhancement> = loci
        .iter()
        .filter_map(|l| {
            enhanced_algebra(class, *l).map(|algebra| Enhancement { locus: *l, algebra })
        })
        .collect();
    let mut notes = Vec::new();
    let point = if class == FibrationClass::Standard {
        j.clone().with_rational_sqrt()
    } else {
        j.clone()
    };
    let (computed, config) = match build_modular(class, &point, Branch::Plus) {
        Ok(m) => {
            let c = classify_fibration(&m)?;
            (Some(GaugeAlgebra::from_config(&c.config)), Some(c.config))
        }
        Err(FibrationError::MissingSqrt) => {
            notes.push(
                "a = sqrt(J5^2 - 4 J4 J6) is irrational; fibers not computed over Q".to_string(),
            );
            (None, None)
        }
        Err(e) => return Err(e.into()),
    };
    let consistent = match (&computed, &config) {
        (Some(a), Some(c)) => *a == gauge && a.rank() == c.ade_total(),
        _ => true,
    };
    let flux = match &config {
        Some(c) => c.mw_torsion != Torsion::Trivial,
        None => class == FibrationClass::Alternate,
    };
    if class == FibrationClass::Standard {
        notes.push("double-cover parameter space branched along a^2 = J5^2 - 4 J4 J6".to_string());
        if j.j6.is_zero() {
            notes.push("pointlike instanton locus (J6 = 0)".to_string());
        }
    }
    let most_special = [Locus::J4J5, Locus::J4, Locus::SqrtZero, Locus::J30]
        .into_iter()
        .find(|l| loci.contains(l));
    Ok(BranchReport {
        branch: branch_name(class),
        class,
        point,
        gauge,
        generic: generic_algebra(class),
        enhancements,
        computed,
        config,
        consistent,
        flux,
        global_form: global_form(class, most_special),
        notes,
    })
}

/// One monomial of the general dual model `Y² = X³ + … + t⁷`: its
/// coefficient is a section of Λ^weight and it carries `t^t_power`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BundleTerm {
    pub coefficient: &'static str,
    pub weight: i64,
    pub t_power: i64,
}

/// Solution of the bundle-weight relations in units of Λ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BundleWeights {
    /// Weights of the free sections (c, d, e, f, g).
    pub section_weights: Vec<(&'static str, i64)>,
    /// Terms multiplying X (sections of L⁴) and X⁰ (sections of L⁶).
    pub x1_terms: Vec<BundleTerm>,
    pub x0_terms: Vec<BundleTerm>,
    /// M = Λ^m, with t a coordinate of weight m.
    pub m: Rat,
    /// L restricted to the zero section = Λ^ℓ.
    pub l: Rat,
    /// `weight + t_power · m` for every term, at the solution.
    pub weight4_chain: Vec<Rat>,
    pub weight6_chain: Vec<Rat>,
    /// Every term of each chain equals 4ℓ (resp. 6ℓ).
    pub consistent: bool,
}

/// Sets up `4ℓ = w + k m` for the X¹ terms and `6ℓ = w + k m` for the X⁰
/// terms of the general model with sections c, d, e, f, g of weights
/// 10, 8, 4, 12, 6 (and a = −3d², b = −2d³), solves for (m, ℓ) and checks
/// every equation.
pub fn check_bundle_weights() -> BundleWeights {
    let section_weights = vec![("c", 10), ("d", 8), ("e", 4), ("f", 12), ("g", 6)];
    let w = |name: &str| {
        section_weights
            .iter()
            .find(|(n, _)| *n == name)
            .expect("known section")
            .1
    };
    let term = |coefficient, weight, t_power| BundleTerm {
        coefficient,
        weight,
        t_power,
    };
    let x1_terms = vec![
        term("a = -3 d^2", 2 * w("d"), 2),
        term("c", w("c"), 3),
        term("e", w("e"), 4),
    ];
    let x0_terms = vec![
        term("b = -2 d^3", 3 * w("d"), 3),
        term("c d", w("c") + w("d"), 4),
        term("d e", w("d") + w("e"), 5),
        term("f", w("f"), 5),
        term("g", w("g"), 6),
        term("1", 0, 7),
    ];
    // Equations `cℓ − k m = w`; the first independent pair fixes (m, ℓ),
    // then every equation is checked.
    let r = Rat::from_int;
    let eqs: Vec<(Rat, Rat, Rat)> = x1_terms
        .iter()
        .map(|t| (r(4), t))
        .chain(x0_terms.iter().map(|t| (r(6), t)))
        .map(|(c, t)| (c, r(-t.t_power), r(t.weight)))
        .collect();
    let (l, m) = eqs
        .iter()
        .enumerate()
        .flat_map(|(i, e1)| eqs[i + 1..].iter().map(move |e2| (e1, e2)))
        .find_map(|((a11, a12, b1), (a21, a22, b2))| {
            let det = &(a11 * a22) - &(a12 * a21);
            (!det.is_zero()).then(|| {
                (
                    &(&(b1 * a22) - &(a12 * b2)) / &det,
                    &(&(a11 * b2) - &(b1 * a21)) / &det,
                )
            })
        })
        .expect("the relations have full rank");
    let chain = |terms: &[BundleTerm]| -> Vec<Rat> {
        terms
            .iter()
            .map(|t| &r(t.weight) + &(&r(t.t_power) * &m))
            .collect()
    };
    let weight4_chain = chain(&x1_terms);
    let weight6_chain = chain(&x0_terms);
    let four_l = &r(4) * &l;
    let six_l = &r(6) * &l;
    let consistent =
        weight4_chain.iter().all(|x| *x == four_l) && weight6_chain.iter().all(|x| *x == six_l);
    BundleWeights {
        section_weights,
        x1_terms,
        x0_terms,
        m,
        l,
        weight4_chain,
        weight6_chain,
        consistent,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dictionary_and_rendering() {
        let cfg = FiberConfig::parse("I8* + 2 I2 + 6 I1", Torsion::Z2).unwrap();
        let a = GaugeAlgebra::from_config(&cfg);
        assert_eq!(a, alg("su(2) + so(24) + su(2)"));
        assert_eq!(a.to_string(), "so(24) ⊕ su(2) ⊕ su(2)");
        assert_eq!(a.rank(), cfg.ade_total());
        assert_eq!(GaugeAlgebra::parse(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn detect_examples() {
        let j = InvariantPoint::from_ints([1, 1, 1, 2, 1], None);
        assert_eq!(detect_loci(&j).unwrap(), vec![Locus::SqrtZero]);
        let j = InvariantPoint::from_ints([1, 1, 0, 0, 1], None);
        assert_eq!(
            detect_loci(&j).unwrap(),
            vec![Locus::SqrtZero, Locus::J4, Locus::J4J5]
        );
    }

    #[test]
    fn bundle_weights() {
        let w = check_bundle_weights();
        assert_eq!(
            (w.m.clone(), w.l.clone()),
            (Rat::from_int(6), Rat::from_int(7))
        );
        assert!(w.consistent);
    }
}
