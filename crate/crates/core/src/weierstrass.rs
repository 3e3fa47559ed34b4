//! Weierstrass models over ℚ(t), place-by-place minimalization, Kodaira
//! classification (including t = ∞), two-torsion screening and the lattice
//! bookkeeping attached to a singular-fiber configuration.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use exactalg::{factor_rational, rational_roots, AlgError, MPoly, Rat};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

/// Name of the affine base coordinate.
pub const T: &str = "t";

/// Orders of vanishing are capped here to stand for "identically zero".
pub const INFINITE_ORDER: u32 = u32::MAX;

#[derive(Debug, Error, PartialEq)]
pub enum WeierstrassError {
    #[error("discriminant 4f^3 + 27g^2 vanishes identically")]
    DegenerateDiscriminant,
    #[error("model is not univariate in t: remaining variables {0:?}")]
    NotSpecialized(Vec<String>),
    #[error("deg {which} = {degree} exceeds the K3 bound {bound}")]
    DegreeTooHigh {
        which: &'static str,
        degree: u32,
        bound: u32,
    },
    #[error("model is not minimal at t = infinity (deg f <= 4 and deg g <= 6)")]
    NonMinimalAtInfinity,
    #[error("orders (ord f, ord g, ord Delta) = ({0}, {1}, {2}) lie outside the Kodaira table")]
    OutsideKodairaTable(u32, u32, u32),
    #[error("Euler numbers sum to {0}, expected 24")]
    EulerMismatch(u32),
    #[error("cannot parse fiber configuration `{0}`")]
    BadConfig(String),
    #[error(transparent)]
    Alg(#[from] AlgError),
}

/// `y² = x³ + a2 x² + a4 x + a6` with coefficients polynomial in the chart
/// variable and possibly in parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WModel {
    pub a2: MPoly,
    pub a4: MPoly,
    pub a6: MPoly,
    pub chart: String,
}

impl WModel {
    pub fn long(a2: MPoly, a4: MPoly, a6: MPoly) -> Self {
        WModel {
            a2,
            a4,
            a6,
            chart: T.to_string(),
        }
    }

    pub fn short(f: MPoly, g: MPoly) -> Self {
        WModel::long(MPoly::zero(), f, g)
    }

    pub fn is_short(&self) -> bool {
        self.a2.is_zero()
    }

    /// Completes the cube: the short coefficients `(f, g)`.
    pub fn depress(&self) -> (MPoly, MPoly) {
        depress(&self.a2, &self.a4, &self.a6)
    }

    /// `4f³ + 27g²` of the depressed model.
    pub fn discriminant(&self) -> MPoly {
        let (f, g) = self.depress();
        discriminant(&f, &g)
    }

    /// Evaluates parameter variables, leaving the chart variable free.
    pub fn specialize(&self, bindings: &[(&str, Rat)]) -> WModel {
        WModel {
            a2: self.a2.eval_pairs(bindings).trim_vars(),
            a4: self.a4.eval_pairs(bindings).trim_vars(),
            a6: self.a6.eval_pairs(bindings).trim_vars(),
            chart: self.chart.clone(),
        }
    }

    /// `x ↦ u²x, y ↦ u³y`: `(a2, a4, a6) ↦ (u²a2, u⁴a4, u⁶a6)`.
    pub fn twist(&self, u: &MPoly) -> WModel {
        let u2 = u.pow(2);
        WModel {
            a2: &self.a2 * &u2,
            a4: &self.a4 * &u2.pow(2),
            a6: &self.a6 * &u2.pow(3),
            chart: self.chart.clone(),
        }
    }

    /// Applies `t ↦ image` to all coefficients.
    pub fn substitute_base(&self, image: &MPoly) -> Result<WModel, AlgError> {
        let b = [(self.chart.as_str(), image.clone())];
        Ok(WModel {
            a2: subs_present(&self.a2, &b)?,
            a4: subs_present(&self.a4, &b)?,
            a6: subs_present(&self.a6, &b)?,
            chart: self.chart.clone(),
        })
    }

    fn used_non_chart(&self) -> Vec<String> {
        let mut v: Vec<String> = Vec::new();
        for p in [&self.a2, &self.a4, &self.a6] {
            for x in p.used_vars() {
                if x != self.chart && !v.contains(&x) {
                    v.push(x);
                }
            }
        }
        v
    }

    /// The minimal short model over ℚ[t] (parameters must be specialized).
    pub fn minimal_short(&self) -> Result<(MPoly, MPoly), WeierstrassError> {
        let rest = self.used_non_chart();
        if !rest.is_empty() {
            return Err(WeierstrassError::NotSpecialized(rest));
        }
        let (f, g) = self.depress();
        let (f, g) = (f.rename_chart(&self.chart), g.rename_chart(&self.chart));
        minimalize(&f, &g)
    }
}

/// Substitution that ignores bindings for variables absent from `p`.
pub fn subs_present(p: &MPoly, pairs: &[(&str, MPoly)]) -> Result<MPoly, AlgError> {
    let present: Vec<(&str, MPoly)> = pairs
        .iter()
        .filter(|(v, _)| p.var_index(v).is_some())
        .cloned()
        .collect();
    if present.is_empty() {
        return Ok(p.clone());
    }
    p.subs(&present)
}

trait ChartRename {
    fn rename_chart(&self, chart: &str) -> MPoly;
}

impl ChartRename for MPoly {
    fn rename_chart(&self, chart: &str) -> MPoly {
        if chart == T || !self.depends_on(chart) {
            self.clone()
        } else {
            self.subs(&[(chart, MPoly::var(T))])
                .expect("renaming a variable")
        }
    }
}

impl fmt::Display for WModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^2 = x^3")?;
        for (c, m) in [(&self.a2, "x^2"), (&self.a4, "x"), (&self.a6, "")] {
            if c.is_zero() {
                continue;
            }
            if m.is_empty() {
                write!(f, " + ({c})")?;
            } else {
                write!(f, " + ({c})*{m}")?;
            }
        }
        Ok(())
    }
}

/// `f = a4 − a2²/3`, `g = a6 − a2·a4/3 + 2a2³/27`.
pub fn depress(a2: &MPoly, a4: &MPoly, a6: &MPoly) -> (MPoly, MPoly) {
    if a2.is_zero() {
        return (a4.clone(), a6.clone());
    }
    let third = Rat::new(1, 3).expect("nonzero denominator");
    let f = a4 - &a2.pow(2).scale(&third);
    let g = &(a6 - &(a2 * a4).scale(&third)) + &a2.pow(3).scale(&Rat::new(2, 27).expect("nonzero"));
    (f, g)
}

/// `Δ = 4f³ + 27g²`.
pub fn discriminant(f: &MPoly, g: &MPoly) -> MPoly {
    &f.pow(3).scale(&Rat::from_int(4)) + &g.pow(2).scale(&Rat::from_int(27))
}

/// A place of ℙ¹ over ℚ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Place {
    /// Zero locus of a ℚ-irreducible polynomial in t.
    Finite {
        uniformizer: MPoly,
        degree: u32,
    },
    Infinity,
}

impl Place {
    pub fn finite(uniformizer: MPoly) -> Self {
        let degree = uniformizer.degree_in(T).unwrap_or(0);
        Place::Finite {
            uniformizer,
            degree,
        }
    }

    pub fn degree(&self) -> u32 {
        match self {
            Place::Finite { degree, .. } => *degree,
            Place::Infinity => 1,
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite { uniformizer, .. } => write!(f, "{uniformizer} = 0"),
            Place::Infinity => write!(f, "t = oo"),
        }
    }
}

/// Multiplicity of the irreducible `pi` in `p`; `INFINITE_ORDER` for `p = 0`.
pub fn order_at(p: &MPoly, pi: &MPoly) -> u32 {
    if p.is_zero() {
        return INFINITE_ORDER;
    }
    let mut k = 0;
    let mut q = p.clone();
    while let Ok(r) = q.div_exact(pi) {
        q = r;
        k += 1;
    }
    k
}

fn degree(p: &MPoly) -> u32 {
    p.degree_in(T).unwrap_or(0)
}

fn order_at_infinity(p: &MPoly, weight: u32) -> u32 {
    if p.is_zero() {
        INFINITE_ORDER
    } else {
        weight - degree(p)
    }
}

/// Vanishing orders of f, g and Δ at a place after local minimalization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LocalData {
    pub ord_f: u32,
    pub ord_g: u32,
    pub ord_delta: u32,
}

impl LocalData {
    fn minimalized(mut self) -> Self {
        while self.ord_f >= 4 && self.ord_g >= 6 && self.ord_delta >= 12 {
            if self.ord_f != INFINITE_ORDER {
                self.ord_f -= 4;
            }
            if self.ord_g != INFINITE_ORDER {
                self.ord_g -= 6;
            }
            self.ord_delta -= 12;
        }
        self
    }
}

/// Orders of f, g, Δ at `place`, locally minimalized. At infinity, f and g
/// are homogenized to degrees 8 and 12.
pub fn local_data(f: &MPoly, g: &MPoly, place: &Place) -> Result<LocalData, WeierstrassError> {
    let delta = discriminant(f, g);
    if delta.is_zero() {
        return Err(WeierstrassError::DegenerateDiscriminant);
    }
    let raw = match place {
        Place::Finite { uniformizer, .. } => LocalData {
            ord_f: order_at(f, uniformizer),
            ord_g: order_at(g, uniformizer),
            ord_delta: order_at(&delta, uniformizer),
        },
        Place::Infinity => {
            check_k3_degrees(f, g)?;
            LocalData {
                ord_f: order_at_infinity(f, 8),
                ord_g: order_at_infinity(g, 12),
                ord_delta: 24 - degree(&delta),
            }
        }
    };
    Ok(raw.minimalized())
}

fn check_k3_degrees(f: &MPoly, g: &MPoly) -> Result<(), WeierstrassError> {
    for (p, which, bound) in [(f, "f", 8), (g, "g", 12)] {
        let d = degree(p);
        if !p.is_zero() && d > bound {
            return Err(WeierstrassError::DegreeTooHigh {
                which,
                degree: d,
                bound,
            });
        }
    }
    Ok(())
}

/// Divides out `π⁴, π⁶` at every finite place where the model is not
/// minimal. Input must be univariate in t.
pub fn minimalize(f: &MPoly, g: &MPoly) -> Result<(MPoly, MPoly), WeierstrassError> {
    let delta = discriminant(f, g);
    if delta.is_zero() {
        return Err(WeierstrassError::DegenerateDiscriminant);
    }
    let (mut f, mut g) = (f.clone(), g.clone());
    if delta.degree_in(T).unwrap_or(0) == 0 {
        return Ok((f, g));
    }
    for (pi, m) in factor_rational(&delta, T)?.factors {
        if m < 12 {
            continue;
        }
        let (p4, p6) = (pi.pow(4), pi.pow(6));
        loop {
            let nf = if f.is_zero() {
                Some(f.clone())
            } else {
                f.div_exact(&p4).ok()
            };
            let ng = if g.is_zero() {
                Some(g.clone())
            } else {
                g.div_exact(&p6).ok()
            };
            match (nf, ng) {
                (Some(a), Some(b)) => {
                    f = a;
                    g = b;
                }
                _ => break,
            }
        }
    }
    Ok((f, g))
}

/// `(f, g) ↦ (s⁸f(1/s), s¹²g(1/s))`: the model in the chart at infinity.
pub fn flip_chart(f: &MPoly, g: &MPoly) -> Result<(MPoly, MPoly), WeierstrassError> {
    check_k3_degrees(f, g)?;
    let one = MPoly::one();
    Ok((f.reflect(T, &one, 8)?, g.reflect(T, &one, 12)?))
}

/// A Kodaira fiber type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KodairaType {
    I(u32),
    IStar(u32),
    II,
    III,
    IV,
    IVStar,
    IIIStar,
    IIStar,
}

/// Root lattice of the reducible part of a fiber.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootLattice {
    A(u32),
    D(u32),
    E(u32),
}

impl fmt::Display for RootLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootLattice::A(n) => write!(f, "A{n}"),
            RootLattice::D(n) => write!(f, "D{n}"),
            RootLattice::E(n) => write!(f, "E{n}"),
        }
    }
}

impl KodairaType {
    pub fn euler_number(&self) -> u32 {
        match self {
            KodairaType::I(n) => *n,
            KodairaType::IStar(n) => n + 6,
            KodairaType::II => 2,
            KodairaType::III => 3,
            KodairaType::IV => 4,
            KodairaType::IVStar => 8,
            KodairaType::IIIStar => 9,
            KodairaType::IIStar => 10,
        }
    }

    pub fn root_lattice(&self) -> Option<RootLattice> {
        match self {
            KodairaType::I(n) if *n >= 2 => Some(RootLattice::A(n - 1)),
            KodairaType::IStar(n) => Some(RootLattice::D(n + 4)),
            KodairaType::III => Some(RootLattice::A(1)),
            KodairaType::IV => Some(RootLattice::A(2)),
            KodairaType::IVStar => Some(RootLattice::E(6)),
            KodairaType::IIIStar => Some(RootLattice::E(7)),
            KodairaType::IIStar => Some(RootLattice::E(8)),
            _ => None,
        }
    }

    pub fn ade_rank(&self) -> u32 {
        match self.root_lattice() {
            Some(RootLattice::A(n) | RootLattice::D(n) | RootLattice::E(n)) => n,
            None => 0,
        }
    }

    /// Additive (potentially good or additive reduction) vs multiplicative.
    pub fn is_multiplicative(&self) -> bool {
        matches!(self, KodairaType::I(_))
    }
}

impl fmt::Display for KodairaType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KodairaType::I(n) => write!(f, "I{n}"),
            KodairaType::IStar(n) => write!(f, "I{n}*"),
            KodairaType::II => write!(f, "II"),
            KodairaType::III => write!(f, "III"),
            KodairaType::IV => write!(f, "IV"),
            KodairaType::IVStar => write!(f, "IV*"),
            KodairaType::IIIStar => write!(f, "III*"),
            KodairaType::IIStar => write!(f, "II*"),
        }
    }
}

impl FromStr for KodairaType {
    type Err = WeierstrassError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || WeierstrassError::BadConfig(s.to_string());
        let s = s.trim();
        Ok(match s {
            "II" => KodairaType::II,
            "III" => KodairaType::III,
            "IV" => KodairaType::IV,
            "IV*" => KodairaType::IVStar,
            "III*" => KodairaType::IIIStar,
            "II*" => KodairaType::IIStar,
            _ => {
                let rest = s.strip_prefix('I').ok_or_else(bad)?;
                match rest.strip_suffix('*') {
                    Some(n) => KodairaType::IStar(n.parse().map_err(|_| bad())?),
                    None => KodairaType::I(rest.parse().map_err(|_| bad())?),
                }
            }
        })
    }
}

impl Serialize for KodairaType {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// The characteristic-zero Kodaira table on minimal orders.
pub fn kodaira_classify(
    ord_f: u32,
    ord_g: u32,
    ord_delta: u32,
) -> Result<KodairaType, WeierstrassError> {
    let out = || WeierstrassError::OutsideKodairaTable(ord_f, ord_g, ord_delta);
    if ord_f >= 4 && ord_g >= 6 {
        return Err(out());
    }
    let t = match ord_delta {
        0 => KodairaType::I(0),
        n if ord_f == 0 && ord_g == 0 => KodairaType::I(n),
        2 if ord_f >= 1 && ord_g == 1 => KodairaType::II,
        3 if ord_f == 1 && ord_g >= 2 => KodairaType::III,
        4 if ord_f >= 2 && ord_g == 2 => KodairaType::IV,
        6 if ord_f >= 2 && ord_g >= 3 => KodairaType::IStar(0),
        n if n > 6 && ord_f == 2 && ord_g == 3 => KodairaType::IStar(n - 6),
        8 if ord_f >= 3 && ord_g == 4 => KodairaType::IVStar,
        9 if ord_f == 3 && ord_g >= 5 => KodairaType::IIIStar,
        10 if ord_f >= 4 && ord_g == 5 => KodairaType::IIStar,
        _ => return Err(out()),
    };
    Ok(t)
}

/// Mordell–Weil torsion as detected by two-torsion screening.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Torsion {
    Trivial,
    Z2,
    Z2xZ2,
    Undetermined,
}

impl fmt::Display for Torsion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Torsion::Trivial => "trivial",
            Torsion::Z2 => "Z/2Z",
            Torsion::Z2xZ2 => "Z/2Z x Z/2Z",
            Torsion::Undetermined => "undetermined",
        })
    }
}

impl FromStr for Torsion {
    type Err = WeierstrassError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "trivial" => Ok(Torsion::Trivial),
            "Z/2Z" => Ok(Torsion::Z2),
            "Z/2Z x Z/2Z" => Ok(Torsion::Z2xZ2),
            "undetermined" => Ok(Torsion::Undetermined),
            _ => Err(WeierstrassError::BadConfig(s.to_string())),
        }
    }
}

impl Serialize for Torsion {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Outcome of two-torsion screening with its evidence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionReport {
    pub torsion: Torsion,
    /// A value of t at which the cubic has no rational root (disproof).
    pub screened_at: Option<Rat>,
    /// Exactly verified x-coordinates of two-torsion sections.
    pub sections: Vec<MPoly>,
}

fn sample_points(n: usize) -> Vec<Rat> {
    (0..n as i64)
        .map(|k| {
            if k % 2 == 1 {
                Rat::from_int(k.div_euclid(2) + 1)
            } else {
                Rat::from_int(-(k / 2))
            }
        })
        .collect()
}

/// Newton interpolation through `(xs[i], ys[i])` as a polynomial in t.
fn interpolate(xs: &[Rat], ys: &[Rat]) -> MPoly {
    let n = xs.len();
    let mut coef: Vec<Rat> = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            coef[i] = &(&coef[i] - &coef[i - 1]) / &(&xs[i] - &xs[i - j]);
        }
    }
    let t = MPoly::var(T);
    let mut acc = MPoly::constant(coef[n - 1].clone());
    for i in (0..n - 1).rev() {
        acc = &(&acc * &(&t - &MPoly::constant(xs[i].clone()))) + &MPoly::constant(coef[i].clone());
    }
    acc
}

fn ceil_div(a: u32, b: u32) -> u32 {
    a.div_ceil(b)
}

/// Searches for roots in ℚ[t] of `x³ + f x + g` by rational-root screening
/// at sample values of t, interpolation, and exact verification.
pub fn two_torsion_sections(f: &MPoly, g: &MPoly) -> Result<TorsionReport, WeierstrassError> {
    let d = ceil_div(degree(f), 2).max(ceil_div(degree(g), 3));
    let n = 6usize.max(d as usize + 3);
    let ts = sample_points(n);
    let x = "x";
    let mut roots_at: Vec<Vec<Rat>> = Vec::with_capacity(n);
    for t0 in &ts {
        let fv = f
            .eval_pairs(&[(T, t0.clone())])
            .constant_value()
            .unwrap_or_else(Rat::zero);
        let gv = g
            .eval_pairs(&[(T, t0.clone())])
            .constant_value()
            .unwrap_or_else(Rat::zero);
        let cubic = MPoly::from_univariate(x, &[gv, fv, Rat::zero(), Rat::one()]);
        let roots: Vec<Rat> = rational_roots(&cubic, x)?
            .into_iter()
            .map(|(r, _)| r)
            .collect();
        if roots.is_empty() {
            return Ok(TorsionReport {
                torsion: Torsion::Trivial,
                screened_at: Some(t0.clone()),
                sections: vec![],
            });
        }
        roots_at.push(roots);
    }
    let k = d as usize + 1;
    let mut found: Vec<MPoly> = Vec::new();
    let mut idx = vec![0usize; k];
    'combos: loop {
        let ys: Vec<Rat> = (0..k).map(|i| roots_at[i][idx[i]].clone()).collect();
        let cand = interpolate(&ts[..k], &ys);
        let consistent = (k..n).all(|i| {
            let v = cand
                .eval_pairs(&[(T, ts[i].clone())])
                .constant_value()
                .unwrap_or_else(Rat::zero);
            roots_at[i].contains(&v)
        });
        if consistent && !found.contains(&cand) {
            let check = &(&cand.pow(3) + &(f * &cand)) + g;
            if check.is_zero() {
                found.push(cand);
            }
        }
        // advance the mixed-radix counter
        for i in 0..k {
            idx[i] += 1;
            if idx[i] < roots_at[i].len() {
                continue 'combos;
            }
            idx[i] = 0;
        }
        break;
    }
    found.sort_by_key(|p| p.to_string());
    let torsion = match found.len() {
        0 => Torsion::Undetermined,
        1 => Torsion::Z2,
        _ => Torsion::Z2xZ2,
    };
    Ok(TorsionReport {
        torsion,
        screened_at: None,
        sections: found,
    })
}

/// Multiset of singular fibers with torsion and derived lattice data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberConfig {
    /// `(type, count)` in canonical order, I₀ omitted.
    pub fibers: Vec<(KodairaType, u32)>,
    pub mw_torsion: Torsion,
}

fn display_order(a: &KodairaType, b: &KodairaType) -> Ordering {
    b.euler_number()
        .cmp(&a.euler_number())
        .then(a.is_multiplicative().cmp(&b.is_multiplicative()))
}

impl FiberConfig {
    /// Merges duplicate types, drops I₀ and sorts canonically.
    pub fn new(fibers: impl IntoIterator<Item = (KodairaType, u32)>, mw_torsion: Torsion) -> Self {
        let mut merged: Vec<(KodairaType, u32)> = Vec::new();
        for (t, c) in fibers {
            if t == KodairaType::I(0) || c == 0 {
                continue;
            }
            match merged.iter_mut().find(|(u, _)| *u == t) {
                Some(e) => e.1 += c,
                None => merged.push((t, c)),
            }
        }
        merged.sort_by(|a, b| display_order(&a.0, &b.0));
        FiberConfig {
            fibers: merged,
            mw_torsion,
        }
    }

    pub fn euler_total(&self) -> u32 {
        self.fibers.iter().map(|(t, c)| t.euler_number() * c).sum()
    }

    pub fn ade_total(&self) -> u32 {
        self.fibers.iter().map(|(t, c)| t.ade_rank() * c).sum()
    }

    /// The fiber multiset as `"I8* + 2 I2 + 6 I1"`.
    pub fn fibers_label(&self) -> String {
        self.fibers
            .iter()
            .map(|(t, c)| {
                if *c == 1 {
                    t.to_string()
                } else {
                    format!("{c} {t}")
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Parses a fiber multiset `"2 III* + 6 I1"` with the given torsion.
    pub fn parse(fibers: &str, mw_torsion: Torsion) -> Result<Self, WeierstrassError> {
        let mut v = Vec::new();
        for part in fibers.split('+') {
            let part = part.trim();
            let (c, t) = match part.split_once(' ') {
                Some((c, t)) => (
                    c.parse::<u32>()
                        .map_err(|_| WeierstrassError::BadConfig(part.to_string()))?,
                    t,
                ),
                None => (1, part),
            };
            v.push((t.parse::<KodairaType>()?, c));
        }
        Ok(FiberConfig::new(v, mw_torsion))
    }

    pub fn picard_rank(&self) -> u32 {
        shioda_tate_rank(self)
    }

    pub fn lattice(&self) -> Option<LatticeLabel> {
        lattice_lookup(self)
    }

    /// One aligned text row: fibers, torsion, Picard rank, lattice, D(Λ).
    pub fn text_row(&self) -> String {
        let (lat, disc) = match self.lattice() {
            Some(l) => (l.lattice.to_string(), l.discriminant_group.to_string()),
            None => ("?".to_string(), "?".to_string()),
        };
        format!(
            "{:<2} | {:<26} | {:<12} | {:<36} | {}",
            self.picard_rank(),
            self.fibers_label(),
            self.mw_torsion.to_string(),
            lat,
            disc
        )
    }
}

impl fmt::Display for FiberConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}]", self.fibers_label(), self.mw_torsion)
    }
}

impl Serialize for FiberConfig {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry {
            #[serde(rename = "type")]
            kind: String,
            count: u32,
        }
        let fibers: Vec<Entry> = self
            .fibers
            .iter()
            .map(|(t, c)| Entry {
                kind: t.to_string(),
                count: *c,
            })
            .collect();
        let lat = self.lattice();
        let mut st = s.serialize_struct("FiberConfig", 7)?;
        st.serialize_field("fibers", &fibers)?;
        st.serialize_field("mw_torsion", &self.mw_torsion)?;
        st.serialize_field("euler_total", &self.euler_total())?;
        st.serialize_field("ade_total", &self.ade_total())?;
        st.serialize_field("picard", &self.picard_rank())?;
        st.serialize_field("lattice", &lat.map(|l| l.lattice))?;
        st.serialize_field("discriminant_group", &lat.map(|l| l.discriminant_group))?;
        st.end()
    }
}

/// Shioda–Tate with Mordell–Weil rank zero: `2 + Σ ade_rank`.
pub fn shioda_tate_rank(cfg: &FiberConfig) -> u32 {
    2 + cfg.ade_total()
}

/// Lattice polarization Λ and its discriminant group D(Λ).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeLabel {
    pub lattice: &'static str,
    pub discriminant_group: &'static str,
}

const E7E7: LatticeLabel = LatticeLabel {
    lattice: "H + E7(-1) + E7(-1)",
    discriminant_group: "Z2^2",
};
const E7E7A1: LatticeLabel = LatticeLabel {
    lattice: "H + E7(-1) + E7(-1) + A1(-1)",
    discriminant_group: "Z2^3",
};
const E8D6: LatticeLabel = LatticeLabel {
    lattice: "H + E8(-1) + D6(-1)",
    discriminant_group: "Z2^2",
};
const E8D6A1: LatticeLabel = LatticeLabel {
    lattice: "H + E8(-1) + D6(-1) + A1(-1)",
    discriminant_group: "Z2^3",
};
const E8D7: LatticeLabel = LatticeLabel {
    lattice: "H + E8(-1) + D7(-1)",
    discriminant_group: "Z4",
};
const D14: LatticeLabel = LatticeLabel {
    lattice: "H + D14(-1)",
    discriminant_group: "Z2^2",
};
const D14A1: LatticeLabel = LatticeLabel {
    lattice: "H + D14(-1) + A1(-1)",
    discriminant_group: "Z2^3",
};
const D15: LatticeLabel = LatticeLabel {
    lattice: "H + D15(-1)",
    discriminant_group: "Z4",
};
const E8E7: LatticeLabel = LatticeLabel {
    lattice: "H + E8(-1) + E7(-1)",
    discriminant_group: "Z2",
};
const E8E8: LatticeLabel = LatticeLabel {
    lattice: "H + E8(-1) + E8(-1)",
    discriminant_group: "0",
};

/// Known (fiber multiset, torsion) → lattice assignments.
const LATTICE_TABLE: &[(&str, Torsion, LatticeLabel)] = &[
    ("2 III* + 6 I1", Torsion::Trivial, E7E7),
    ("2 III* + II + 4 I1", Torsion::Trivial, E7E7),
    ("2 III* + I2 + 4 I1", Torsion::Trivial, E7E7A1),
    ("II* + III* + 5 I1", Torsion::Trivial, E8E7),
    ("2 II* + 4 I1", Torsion::Trivial, E8E8),
    ("I8* + 2 I2 + 6 I1", Torsion::Z2, E7E7),
    ("I8* + III + I2 + 5 I1", Torsion::Z2, E7E7),
    ("I8* + I4 + 6 I1", Torsion::Z2, E8D7),
    ("I8* + 3 I2 + 4 I1", Torsion::Z2, E7E7A1),
    ("I10* + I2 + 6 I1", Torsion::Z2, E8E7),
    ("I12* + 6 I1", Torsion::Z2, E8E8),
    ("II* + I2* + 6 I1", Torsion::Trivial, E8D6),
    ("II* + I2* + II + 4 I1", Torsion::Trivial, E8D6),
    ("II* + I3* + 5 I1", Torsion::Trivial, E8D7),
    ("II* + I2* + I2 + 4 I1", Torsion::Trivial, E8D6A1),
    ("I10* + 8 I1", Torsion::Trivial, D14),
    ("I10* + II + 6 I1", Torsion::Trivial, D14),
    ("I11* + 7 I1", Torsion::Trivial, D15),
    ("I10* + I2 + 6 I1", Torsion::Trivial, D14A1),
];

/// Fixed lookup of the lattice polarization for the configurations that
/// occur in this family.
pub fn lattice_lookup(cfg: &FiberConfig) -> Option<LatticeLabel> {
    let label = cfg.fibers_label();
    LATTICE_TABLE
        .iter()
        .find(|(f, t, _)| *f == label && *t == cfg.mw_torsion)
        .map(|(_, _, l)| *l)
}

/// One classified place.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlaceFiber {
    pub place: Place,
    pub local: LocalData,
    pub kodaira: KodairaType,
}

/// Complete classification: per-place data, configuration, torsion report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub places: Vec<PlaceFiber>,
    pub config: FiberConfig,
    pub torsion: TorsionReport,
}

/// Classifies all singular fibers of a specialized model, including t = ∞.
pub fn classify_fibration(m: &WModel) -> Result<Classification, WeierstrassError> {
    let (f, g) = m.minimal_short()?;
    classify_short(&f, &g)
}

/// As [`classify_fibration`], for a short model already over ℚ[t].
pub fn classify_short(f: &MPoly, g: &MPoly) -> Result<Classification, WeierstrassError> {
    let (f, g) = minimalize(f, g)?;
    check_k3_degrees(&f, &g)?;
    if (f.is_zero() || degree(&f) <= 4) && (g.is_zero() || degree(&g) <= 6) {
        return Err(WeierstrassError::NonMinimalAtInfinity);
    }
    let delta = discriminant(&f, &g);
    let mut places = Vec::new();
    if delta.degree_in(T).unwrap_or(0) > 0 {
        for (pi, _) in factor_rational(&delta, T)?.factors {
            let place = Place::finite(pi);
            let local = local_data(&f, &g, &place)?;
            let kodaira = kodaira_classify(local.ord_f, local.ord_g, local.ord_delta)?;
            places.push(PlaceFiber {
                place,
                local,
                kodaira,
            });
        }
    }
    let local = local_data(&f, &g, &Place::Infinity)?;
    let kodaira = kodaira_classify(local.ord_f, local.ord_g, local.ord_delta)?;
    places.push(PlaceFiber {
        place: Place::Infinity,
        local,
        kodaira,
    });
    let torsion = two_torsion_sections(&f, &g)?;
    let config = FiberConfig::new(
        places.iter().map(|p| (p.kodaira, p.place.degree())),
        torsion.torsion,
    );
    let e = config.euler_total();
    if e != 24 {
        return Err(WeierstrassError::EulerMismatch(e));
    }
    Ok(Classification {
        places,
        config,
        torsion,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use exactalg::poly;

    #[test]
    fn kodaira_table() {
        assert_eq!(kodaira_classify(3, 5, 9).unwrap(), KodairaType::IIIStar);
        assert_eq!(kodaira_classify(0, 0, 1).unwrap(), KodairaType::I(1));
        assert_eq!(kodaira_classify(2, 3, 14).unwrap(), KodairaType::IStar(8));
        assert_eq!(kodaira_classify(4, 5, 10).unwrap(), KodairaType::IIStar);
        assert_eq!(
            kodaira_classify(INFINITE_ORDER, 5, 10).unwrap(),
            KodairaType::IIStar
        );
        assert_eq!(kodaira_classify(2, 3, 6).unwrap(), KodairaType::IStar(0));
        assert_eq!(
            kodaira_classify(1, INFINITE_ORDER, 3).unwrap(),
            KodairaType::III
        );
        assert!(kodaira_classify(4, 6, 12).is_err());
        assert!(kodaira_classify(1, 1, 5).is_err());
    }

    #[test]
    fn euler_and_rank() {
        assert_eq!(KodairaType::IStar(8).euler_number(), 14);
        assert_eq!(KodairaType::IStar(8).ade_rank(), 12);
        assert_eq!(KodairaType::I(2).ade_rank(), 1);
        assert_eq!(KodairaType::II.ade_rank(), 0);
        assert_eq!(KodairaType::IIIStar.root_lattice(), Some(RootLattice::E(7)));
    }

    #[test]
    fn depress_formula() {
        let (f, g) = depress(&poly("A"), &poly("B"), &MPoly::zero());
        assert_eq!(f, poly("B - 1/3*A^2"));
        assert_eq!(g, poly("-1/3*A*B + 2/27*A^3"));
        let (f, g) = depress(&MPoly::zero(), &poly("t"), &poly("t^2"));
        assert_eq!((f, g), (poly("t"), poly("t^2")));
    }

    #[test]
    fn config_display_and_parse() {
        let c = FiberConfig::new(
            [
                (KodairaType::I(1), 5),
                (KodairaType::I(2), 1),
                (KodairaType::III, 1),
                (KodairaType::IStar(8), 1),
            ],
            Torsion::Z2,
        );
        assert_eq!(c.fibers_label(), "I8* + III + I2 + 5 I1");
        assert_eq!(
            FiberConfig::parse("I8* + III + I2 + 5 I1", Torsion::Z2).unwrap(),
            c
        );
        assert_eq!(c.lattice().unwrap().lattice, "H + E7(-1) + E7(-1)");
        let d = FiberConfig::parse("I2 + II + 20 I1", Torsion::Trivial).unwrap();
        assert_eq!(d.fibers_label(), "II + I2 + 20 I1");
    }

    #[test]
    fn standard_toy_model() {
        // f = -t^3 (t^2 + 3t + 1), g = t^5 (t^2 - 2t + 2): two III* fibers
        let f = poly("-t^3*(t^2 + 3*t + 1)");
        let g = poly("t^5*(t^2 - 2*t + 2)");
        let c = classify_short(&f, &g).unwrap();
        assert_eq!(c.config.fibers_label(), "2 III* + 6 I1");
        assert_eq!(c.config.mw_torsion, Torsion::Trivial);
        assert_eq!(c.config.picard_rank(), 16);
        let zero = Place::finite(poly("t"));
        assert_eq!(
            local_data(&f, &g, &zero).unwrap(),
            LocalData {
                ord_f: 3,
                ord_g: 5,
                ord_delta: 9
            }
        );
    }

    #[test]
    fn split_cubic_has_full_two_torsion() {
        // y^2 = x (x - t)(x + t) = x^3 - t^2 x
        let r = two_torsion_sections(&poly("-t^2"), &MPoly::zero()).unwrap();
        assert_eq!(r.torsion, Torsion::Z2xZ2);
        assert_eq!(r.sections.len(), 3);
    }

    #[test]
    fn nonminimal_place_is_reduced() {
        let f = poly("-t^3*(t^2 + 3*t + 1)");
        let g = poly("t^5*(t^2 - 2*t + 2)");
        let pi = poly("t - 5");
        let (fm, gm) = minimalize(&(&f * &pi.pow(4)), &(&g * &pi.pow(6))).unwrap();
        assert_eq!((fm, gm), (f, g));
    }

    #[test]
    fn chart_flip_swaps_places() {
        let f = poly("-t^3*(t^2 + 3*t + 1)");
        let g = poly("t^5*(t^2 - 2*t + 2)");
        let (f2, g2) = flip_chart(&f, &g).unwrap();
        assert_eq!(
            classify_short(&f2, &g2).unwrap().config,
            classify_short(&f, &g).unwrap().config
        );
    }

    #[test]
    fn degenerate_input_rejected() {
        assert_eq!(
            classify_short(&MPoly::zero(), &MPoly::zero()).unwrap_err(),
            WeierstrassError::DegenerateDiscriminant
        );
    }
}
