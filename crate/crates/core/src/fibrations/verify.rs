//! Identity verification: coordinate changes from the quartic, the two
//! square-root branches of the standard model, the J30 expressions, the
//! reductions to the lower-dimensional family and the convergence of
//! the four models on J₄ = 0.
//!
//! Checks are symbolic first; a check whose intermediate expressions exceed
//! the term budget is redone exactly at random rational points.

use std::collections::HashMap;

use exactalg::{discriminant, poly, resultant, AlgError, MPoly, Rat};

use super::builders::{bfd_z, raw_homogeneous, RawHomogeneous};
use super::loci::{expected_table, Locus};
use super::sampling::Sampler;
use super::{
    build_modular, build_raw, modular_symbolic, quartic, reduce_sqrt, standard_chart, Branch,
    FibrationClass, IdentityReport, Status, StdChart, DEFAULT_BUDGET,
};
use crate::moduli::{InvariantPoint, ParamPoint};
use crate::weierstrass::{classify_fibration, WModel, T};

/// Parameters of one verification run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Number of random points for numeric checks and fallbacks (≥ 20 is
    /// recommended).
    pub points: usize,
    pub budget: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 1,
            points: 20,
            budget: DEFAULT_BUDGET,
        }
    }
}

fn var(s: &str) -> MPoly {
    MPoly::var(s)
}

fn specialize_at(p: &MPoly, b: &[(&str, Rat)]) -> MPoly {
    p.eval_pairs(b).trim_vars()
}

// ---------------------------------------------------------------------------
// Coordinate changes from the quartic
// ---------------------------------------------------------------------------

/// `Q∘φ` and `E`, both optionally specialized at a sextuple. With a conic,
/// Z is eliminated and the left side is `Q∘φ · coef_Z²`.
fn substituted(
    h: &RawHomogeneous,
    z_image: Option<&MPoly>,
    params: Option<&ParamPoint>,
    budget: Option<usize>,
) -> Result<(MPoly, MPoly, Option<MPoly>), AlgError> {
    let bind = params.map(|p| p.bindings()).unwrap_or_default();
    let sp = |p: &MPoly| {
        if bind.is_empty() {
            p.clone()
        } else {
            specialize_at(p, &bind)
        }
    };
    let q = sp(&quartic());
    let mut images: HashMap<String, MPoly> = [("X", &h.x), ("Y", &h.y), ("W", &h.w)]
        .into_iter()
        .map(|(k, v)| (k.to_string(), sp(v)))
        .collect();
    let e = sp(&h.weierstrass_form());
    let mul = |a: &MPoly, b: &MPoly| match budget {
        Some(n) => a.mul_bounded(b, n),
        None => Ok(a * b),
    };
    match (z_image, &h.conic) {
        (Some(z), _) => {
            images.insert("Z".to_string(), sp(z));
            let lhs = q.substitute_bounded(&images, budget)?;
            Ok((lhs, e, None))
        }
        (None, Some(conic)) => {
            let c = sp(conic).substitute_bounded(&images, budget)?;
            let cz = c.coeffs_in("Z");
            let coef_z = cz.get(1).cloned().unwrap_or_else(MPoly::zero);
            let r = cz.first().cloned().unwrap_or_else(MPoly::zero);
            let qz = q.substitute_bounded(&images, budget)?.coeffs_in("Z");
            let get = |k: usize| qz.get(k).cloned().unwrap_or_else(MPoly::zero);
            let t0 = mul(&get(0), &mul(&coef_z, &coef_z)?)?;
            let t1 = mul(&mul(&get(1), &r)?, &coef_z)?;
            let t2 = mul(&get(2), &mul(&r, &r)?)?;
            Ok((&(&t0 - &t1) + &t2, e, Some(coef_z)))
        }
        (None, None) => unreachable!("every map fixes Z by an image or a conic"),
    }
}

/// Checks `Q∘φ = factor · E`; returns the factor on success.
fn check_substitution(
    h: &RawHomogeneous,
    z_image: Option<&MPoly>,
    params: Option<&ParamPoint>,
    budget: Option<usize>,
) -> Result<Result<MPoly, String>, AlgError> {
    let (lhs, e, _) = substituted(h, z_image, params, budget)?;
    let q = match lhs.div_exact(&e) {
        Ok(q) => q,
        Err(_) => {
            return Ok(Err(
                "Q∘φ is not divisible by the Weierstrass form".to_string()
            ))
        }
    };
    if q.is_zero() || q.depends_on("y") {
        return Ok(Err(format!("quotient {q} is not a factor free of y")));
    }
    if let Some(expected) = &h.factor {
        let expected = match params {
            Some(p) => specialize_at(expected, &p.bindings()),
            None => expected.clone(),
        };
        if q != expected {
            return Ok(Err(format!(
                "factor {q} differs from the expected {expected}"
            )));
        }
    }
    Ok(Ok(q))
}

fn substitution_report(
    name: &str,
    h: &RawHomogeneous,
    z_image: Option<&MPoly>,
    cfg: &SuiteConfig,
) -> IdentityReport {
    match check_substitution(h, z_image, None, Some(cfg.budget)) {
        Ok(Ok(q)) => {
            let detail = if h.conic.is_some() {
                "Q(X, Y, Z, W) · coef_Z² = factor · E after eliminating Z with the conic"
            } else {
                "Q(X, Y, Z, W) = factor · E"
            };
            return IdentityReport::new(name, Status::VerifiedSymbolic, detail).with_factor(q);
        }
        Ok(Err(why)) => return IdentityReport::new(name, Status::Failed, why),
        Err(AlgError::BudgetExceeded(_)) => {}
        Err(e) => return IdentityReport::new(name, Status::Failed, e.to_string()),
    }
    let mut sampler = Sampler::new(cfg.seed);
    let mut witnesses = Vec::new();
    for _ in 0..cfg.points {
        let p = sampler.params();
        match check_substitution(h, z_image, Some(&p), None) {
            Ok(Ok(_)) => {}
            Ok(Err(why)) => witnesses.push(format!("{p}: {why}")),
            Err(e) => witnesses.push(format!("{p}: {e}")),
        }
    }
    let status = if witnesses.is_empty() {
        Status::VerifiedAtPoints(cfg.points)
    } else {
        Status::Failed
    };
    IdentityReport::new(
        name,
        status,
        "symbolic budget exceeded; checked at random sextuples",
    )
    .with_witnesses(witnesses)
}

/// The coordinate change taking the quartic to the raw model of `class`.
pub fn verify_substitution(class: FibrationClass, cfg: &SuiteConfig) -> IdentityReport {
    let h = raw_homogeneous(class);
    let z = h.z.clone();
    substitution_report(&format!("substitution.{class}"), &h, z.as_ref(), cfg)
}

/// The base-fiber-dual map with the opposite sign of the middle term of Z;
/// kept as a diagnostic, it does not reproduce the model.
pub fn verify_substitution_as_printed_bfd(cfg: &SuiteConfig) -> IdentityReport {
    let h = raw_homogeneous(FibrationClass::Bfd);
    substitution_report("substitution.bfd-opposite-sign", &h, Some(&bfd_z(-1)), cfg)
}

// ---------------------------------------------------------------------------
// Square-root branches of the standard model
// ---------------------------------------------------------------------------

/// Symmetries relating `f₊`, `f₋` and `g`, the two charts on J₆ = 0, and a
/// numeric spot check that both branches give the same fibers.
pub fn verify_fplus_fminus(cfg: &SuiteConfig) -> Vec<IdentityReport> {
    let plus = modular_symbolic(FibrationClass::Standard, Branch::Plus);
    let minus = modular_symbolic(FibrationClass::Standard, Branch::Minus);
    let (fp, fm, g) = (&plus.a4, &minus.a4, &plus.a6);
    let j6 = var("J6");
    let mut out = Vec::new();

    let lhs = reduce_sqrt(&fm.reflect(T, &j6, 8).expect("degree ≤ 8"));
    let ok = lhs == reduce_sqrt(&(&j6.pow(4) * fp));
    out.push(IdentityReport::symbolic(
        "branches.f-reflection",
        ok,
        "t^8 f_-(J6/t) = J6^4 f_+(t)",
    ));

    let lhs = g.reflect(T, &j6, 12).expect("degree ≤ 12");
    let ok = lhs == &j6.pow(6) * g;
    out.push(IdentityReport::symbolic(
        "branches.g-reflection",
        ok,
        "t^12 g(J6/t) = J6^6 g(t)",
    ));

    let (x, y) = (var("X"), var("Y"));
    let j66 = j6.pow(6);
    let left = &(&(&(&j66 * &y.pow(2)) - &(&j66 * &x.pow(3)))
        - &(&(&j6.pow(2) * &x) * &fp.reflect(T, &j6, 8).expect("degree ≤ 8")))
        - &g.reflect(T, &j6, 12).expect("degree ≤ 12");
    let right = &j66 * &(&(&(&y.pow(2) - &x.pow(3)) - &(fm * &x)) - g);
    let ok = reduce_sqrt(&left) == reduce_sqrt(&right);
    out.push(IdentityReport::symbolic(
        "branches.curve-chart-change",
        ok,
        "the f_+ curve in the chart J6/t is J6^6 times the f_- curve",
    ));

    let c1 = standard_chart(StdChart::First);
    let c2 = standard_chart(StdChart::Second);
    let one = MPoly::one();
    let ok = c2.a4.reflect(T, &one, 8).ok() == Some(c1.a4.clone())
        && c2.a6.reflect(T, &one, 12).ok() == Some(c1.a6.clone());
    out.push(IdentityReport::symbolic(
        "branches.j6-zero-charts",
        ok,
        "the two J6 = 0 charts agree under t -> 1/t",
    ));

    let mut sampler = Sampler::new(cfg.seed.wrapping_add(11));
    let mut witnesses = Vec::new();
    for _ in 0..cfg.points {
        let j = sampler.invariants();
        let a = build_modular(FibrationClass::Standard, &j, Branch::Plus)
            .map_err(|e| e.to_string())
            .and_then(|m| classify_fibration(&m).map_err(|e| e.to_string()));
        let b = build_modular(FibrationClass::Standard, &j, Branch::Minus)
            .map_err(|e| e.to_string())
            .and_then(|m| classify_fibration(&m).map_err(|e| e.to_string()));
        match (a, b) {
            (Ok(a), Ok(b)) if a.config == b.config => {}
            (a, b) => witnesses.push(format!(
                "{j}: {} vs {}",
                a.map(|c| c.config.to_string()).unwrap_or_else(|e| e),
                b.map(|c| c.config.to_string()).unwrap_or_else(|e| e)
            )),
        }
    }
    let status = if witnesses.is_empty() {
        Status::VerifiedAtPoints(cfg.points)
    } else {
        Status::Failed
    };
    out.push(
        IdentityReport::new(
            "branches.branches-same-fibers",
            status,
            "f_+ and f_- models have equal fiber configurations",
        )
        .with_witnesses(witnesses),
    );
    out
}

// ---------------------------------------------------------------------------
// J30
// ---------------------------------------------------------------------------

/// `D = A² − 4B` from the alternate model.
fn d_poly(j: &InvariantPoint) -> MPoly {
    let m = modular_symbolic(FibrationClass::Alternate, Branch::Plus).specialize(&j.bindings());
    &m.a2.pow(2) - &m.a4.scale(&Rat::from_int(4))
}

fn disc_t(p: &MPoly) -> Rat {
    discriminant(p, T)
        .ok()
        .and_then(|d| d.constant_value())
        .unwrap_or_else(Rat::zero)
}

fn res_t(p: &MPoly, q: &MPoly) -> Rat {
    resultant(p, q, T)
        .ok()
        .and_then(|d| d.constant_value())
        .unwrap_or_else(Rat::zero)
}

fn strip_t(p: &MPoly, k: u32) -> MPoly {
    p.div_exact(&var(T).pow(k)).expect("power of t divides")
}

/// Discriminant of the cubic `x³ + a x² + b x + c`.
fn cubic_disc(a: &MPoly, b: &MPoly, c: &MPoly) -> MPoly {
    let (a2, b2) = (a.pow(2), b.pow(2));
    let i = |n: i64| Rat::from_int(n);
    &(&(&(&(&a2 * &b2) - &b.pow(3).scale(&i(4))) - &(&a.pow(3) * c).scale(&i(4)))
        + &(&(a * b) * c).scale(&i(18)))
        - &c.pow(2).scale(&i(27))
}

/// J30 as the t-discriminant of `A² − 4B`.
pub fn j30_value(j: &InvariantPoint) -> Rat {
    disc_t(&d_poly(j))
}

/// The candidate expressions for J30 at one point.
struct J30Values {
    reference: Rat,
    from_max: Rat,
    std_printed: Rat,
    std_corrected: Rat,
    bfd_printed: Rat,
    bfd_corrected: Rat,
}

fn j30_values(j: &InvariantPoint) -> Option<J30Values> {
    let reference = j30_value(j);
    let b = j.bindings();
    let j6 = &j.j6;
    let int = |n: i64| Rat::from_int(n);

    let m = modular_symbolic(FibrationClass::Maximal, Branch::Plus).specialize(&b);
    let d = cubic_disc(&m.a2, &m.a4, &m.a6).scale(&j6.pow(-16).ok()?);
    let from_max = disc_t(&d);

    let s = modular_symbolic(FibrationClass::Standard, Branch::Plus).specialize(&b);
    let (f, g) = (&s.a4, &s.a6);
    let delta = crate::weierstrass::discriminant(f, g);
    let p = delta
        .div_exact(&(&MPoly::constant(j6.pow(9).ok()?) * &var(T).pow(9)))
        .ok()?;
    let r = res_t(&strip_t(f, 3), &strip_t(g, 5));
    if r.is_zero() {
        return None;
    }
    let base = &disc_t(&p) / &r.pow(3).ok()?;
    let c = &int(16) / &int(3).pow(18).ok()?;
    let std_printed = &(&c / &j6.pow(30).ok()?) * &base;
    let std_corrected = &(&c * &j6.pow(30).ok()?) * &base;

    let bm = modular_symbolic(FibrationClass::Bfd, Branch::Plus).specialize(&b);
    let (ff, gg) = (&bm.a4, &bm.a6);
    let pp = crate::weierstrass::discriminant(ff, gg)
        .div_exact(&var(T).pow(8))
        .ok()?;
    let rr = res_t(&strip_t(ff, 2), &strip_t(gg, 3));
    if rr.is_zero() {
        return None;
    }
    let base = &disc_t(&pp) / &rr.pow(3).ok()?;
    let k = -(Rat::one() / int(3).pow(21).ok()?);
    let bfd_printed = &(&k * &j.j2.pow(9).ok()?) * &base;
    let bfd_corrected = &(&k * &j.j4.pow(9).ok()?) * &base;

    Some(J30Values {
        reference,
        from_max,
        std_printed,
        std_corrected,
        bfd_printed,
        bfd_corrected,
    })
}

fn ratio_report(
    name: &str,
    detail: &str,
    samples: &[(InvariantPoint, Rat, Rat)],
) -> IdentityReport {
    let ratios: Vec<Rat> = samples.iter().map(|(_, e, r)| e / r).collect();
    let first = &ratios[0];
    let bad: Vec<String> = samples
        .iter()
        .zip(&ratios)
        .filter(|(_, q)| *q != first)
        .take(3)
        .map(|((j, _, _), q)| format!("{j}: ratio {q}"))
        .collect();
    if bad.is_empty() {
        IdentityReport::new(name, Status::VerifiedAtPoints(samples.len()), detail).with_ratio(first)
    } else {
        let mut w = vec![format!("{}: ratio {}", samples[0].0, first)];
        w.extend(bad);
        IdentityReport::new(
            name,
            Status::Failed,
            format!("{detail}: ratio to Disc_t D is not constant"),
        )
        .with_witnesses(w)
    }
}

/// Compares each J30 expression with `Disc_t(A² − 4B)` at random points.
/// A check passes when the ratio is the same at every point.
pub fn verify_j30_identity(cfg: &SuiteConfig) -> Vec<IdentityReport> {
    let mut sampler = Sampler::new(cfg.seed.wrapping_add(30));
    let mut rows: Vec<(InvariantPoint, J30Values)> = Vec::new();
    let mut attempts = 0;
    while rows.len() < cfg.points.max(2) && attempts < 10 * cfg.points.max(2) {
        attempts += 1;
        let j = sampler.invariants();
        if let Some(v) = j30_values(&j) {
            if !v.reference.is_zero() {
                rows.push((j, v));
            }
        }
    }
    let col = |pick: fn(&J30Values) -> &Rat| -> Vec<(InvariantPoint, Rat, Rat)> {
        rows.iter()
            .map(|(j, v)| (j.clone(), pick(v).clone(), v.reference.clone()))
            .collect()
    };
    vec![
        ratio_report(
            "j30.disc-d",
            "Disc_t d with d = Disc_x(maximal cubic)/J6^16",
            &col(|v| &v.from_max),
        ),
        ratio_report(
            "j30.std",
            "2^4/(3^18 J6^30) Disc_t p / Res(t^-3 f, t^-5 g)^3",
            &col(|v| &v.std_printed),
        ),
        ratio_report(
            "j30.std-j6-power-30",
            "2^4 J6^30/3^18 Disc_t p / Res(t^-3 f, t^-5 g)^3",
            &col(|v| &v.std_corrected),
        ),
        ratio_report(
            "j30.bfd",
            "-J2^9/3^21 Disc_t P / Res(t^-2 F, t^-3 G)^3",
            &col(|v| &v.bfd_printed),
        ),
        ratio_report(
            "j30.bfd-j4-power-9",
            "-J4^9/3^21 Disc_t P / Res(t^-2 F, t^-3 G)^3",
            &col(|v| &v.bfd_corrected),
        ),
    ]
}

// ---------------------------------------------------------------------------
// Convergence on J₄ = 0 and reductions
// ---------------------------------------------------------------------------

fn limit_std() -> WModel {
    WModel::short(poly("-t^3*(3*J2*t + J5)"), poly("t^5*(t^2 - 2*J3*t + J6)"))
}

fn limit_alt() -> WModel {
    WModel::long(
        poly("t^3 - 3*J2*t - 2*J3"),
        poly("-(J5*t - J6)"),
        MPoly::zero(),
    )
}

fn set(m: &WModel, pairs: &[(&str, MPoly)]) -> WModel {
    let s = |p: &MPoly| {
        crate::weierstrass::subs_present(p, pairs)
            .expect("substitution")
            .trim_vars()
    };
    WModel {
        a2: s(&m.a2),
        a4: s(&m.a4),
        a6: s(&m.a6),
        chart: m.chart.clone(),
    }
}

/// Divides `(a2, a4, a6)` by `(u², u⁴, u⁶)` exactly.
fn untwist(m: &WModel, u2: &MPoly) -> Option<WModel> {
    let d = |p: &MPoly, k: u32| {
        if p.is_zero() {
            Some(MPoly::zero())
        } else {
            p.div_exact(&u2.pow(k)).ok()
        }
    };
    Some(WModel {
        a2: d(&m.a2, 1)?,
        a4: d(&m.a4, 2)?,
        a6: d(&m.a6, 3)?,
        chart: m.chart.clone(),
    })
}

fn same(a: &WModel, b: &WModel) -> bool {
    a.a2.trim_vars() == b.a2.trim_vars()
        && a.a4.trim_vars() == b.a4.trim_vars()
        && a.a6.trim_vars() == b.a6.trim_vars()
}

/// The four models on J₄ = 0 against the two limiting forms.
pub fn verify_convergence(_cfg: &SuiteConfig) -> Vec<IdentityReport> {
    let zero = MPoly::zero();
    let j6 = var("J6");
    let t_j6 = &j6 * &var(T);
    let mut out = Vec::new();

    let bfd = set(
        &modular_symbolic(FibrationClass::Bfd, Branch::Plus),
        &[("J4", zero.clone())],
    );
    out.push(IdentityReport::symbolic(
        "limit.bfd",
        same(&bfd, &limit_std()),
        "bfd at J4 = 0 is the limiting standard form",
    ));

    let std = modular_symbolic(FibrationClass::Standard, Branch::Plus);
    let at_plus = set(&std, &[("a", var("J5"))]);
    let ok = untwist(&at_plus, &j6.pow(2)).is_some_and(|m| same(&m, &limit_std()));
    out.push(IdentityReport::symbolic(
        "limit.std-branch-plus",
        ok,
        "standard at a = J5 (J4 = 0) is J6^4 f, J6^6 g of the limiting form",
    ));

    let at_minus = set(&std, &[("a", -var("J5"))]);
    let second = WModel::short(
        poly("-t^4*(J5*t + 3*J2)"),
        poly("t^5*(J6*t^2 - 2*J3*t + 1)"),
    );
    let moved = at_minus
        .substitute_base(&t_j6)
        .ok()
        .and_then(|m| untwist(&m, &j6.pow(4)));
    let ok_second = moved.as_ref().is_some_and(|m| same(m, &second));
    let one = MPoly::one();
    let flipped = moved.and_then(|m| {
        Some(WModel::short(
            m.a4.reflect(T, &one, 8).ok()?,
            m.a6.reflect(T, &one, 12).ok()?,
        ))
    });
    let ok = ok_second && flipped.is_some_and(|m| same(&m, &limit_std()));
    out.push(IdentityReport::symbolic(
        "limit.std-branch-minus",
        ok,
        "standard at a = -J5 (J4 = 0), after t -> J6 t and t -> 1/t, is the limiting form",
    ));

    let alt = set(
        &modular_symbolic(FibrationClass::Alternate, Branch::Plus),
        &[("J4", zero.clone())],
    );
    out.push(IdentityReport::symbolic(
        "limit.alt",
        same(&alt, &limit_alt()),
        "alternate at J4 = 0 is the limiting alternate form",
    ));

    let max = set(
        &modular_symbolic(FibrationClass::Maximal, Branch::Plus),
        &[("J4", zero)],
    );
    let ok = max
        .substitute_base(&t_j6)
        .ok()
        .and_then(|m| untwist(&m, &j6.pow(4)))
        .is_some_and(|m| same(&m, &limit_alt()));
    out.push(IdentityReport::symbolic(
        "limit.max",
        ok,
        "maximal at J4 = 0, after t -> J6 t and scaling by J6^4, is the limiting alternate form",
    ));
    out
}

/// Images of the invariants in the lower-dimensional family.
fn identification(lambda: &Rat) -> Vec<(&'static str, MPoly)> {
    let l = |k: i64| lambda.pow(k).expect("nonnegative");
    vec![
        ("J2", poly("psi4").scale(&l(2))),
        ("J3", poly("psi6").scale(&l(3))),
        ("J4", MPoly::zero()),
        ("J5", poly("4096*243*chi10").scale(&l(5))),
        ("J6", poly("4096*729*chi12").scale(&l(6))),
    ]
}

fn std_red() -> WModel {
    WModel::short(
        poly("-t^3*(1/48*psi4*t + 4*chi10)"),
        poly("t^5*(t^2 - 1/864*psi6*t + chi12)"),
    )
}

fn alt_red() -> WModel {
    WModel::long(
        poly("t^3 - 1/48*psi4*t - 1/864*psi6"),
        poly("-(4*chi10*t - chi12)"),
        MPoly::zero(),
    )
}

/// The weighted rescaling `J_k ↦ Λ^k J_k` matching the reduced forms:
/// `Λ` from the χ₁₂ and χ₁₀ coefficients, checked against χ₁₀ alone.
pub fn reduction_scale() -> Option<Rat> {
    let c10 = Rat::from_int(4096 * 243);
    let c12 = Rat::from_int(4096 * 729);
    // Λ⁵ c10 = 4 and Λ⁶ c12 = 1.
    let r5 = &Rat::from_int(4) / &c10;
    let r6 = &Rat::one() / &c12;
    let lambda = &r6 / &r5;
    (lambda.pow(5).ok()? == r5).then_some(lambda)
}

/// Reductions of the J₄ = 0 models to the lower-dimensional family.
pub fn verify_reductions(_cfg: &SuiteConfig) -> Vec<IdentityReport> {
    let Some(lambda) = reduction_scale() else {
        return vec![IdentityReport::new(
            "reduction.scale",
            Status::Failed,
            "no consistent weighted rescaling",
        )];
    };
    let id = identification(&lambda);
    let mut out = vec![IdentityReport::symbolic(
        "reduction.scale",
        true,
        "J_k -> Lambda^k J_k with J4 = 0, J5 = 2^12 3^5 chi10, J6 = 2^12 3^6 chi12",
    )
    .with_ratio(format!("Lambda = {lambda}"))];

    let bfd = set(&modular_symbolic(FibrationClass::Bfd, Branch::Plus), &id);
    out.push(IdentityReport::symbolic(
        "reduction.bfd",
        same(&bfd, &std_red()),
        "bfd reduces to the standard reduced form",
    ));

    let alt = set(
        &modular_symbolic(FibrationClass::Alternate, Branch::Plus),
        &id,
    );
    out.push(IdentityReport::symbolic(
        "reduction.alt",
        same(&alt, &alt_red()),
        "alternate reduces to the alternate reduced form",
    ));

    let j6 = var("J6");
    let max = set(
        &modular_symbolic(FibrationClass::Maximal, Branch::Plus),
        &[("J4", MPoly::zero())],
    );
    let ok = max
        .substitute_base(&(&j6 * &var(T)))
        .ok()
        .and_then(|m| untwist(&m, &j6.pow(4)))
        .map(|m| set(&m, &id))
        .is_some_and(|m| same(&m, &alt_red()));
    out.push(IdentityReport::symbolic(
        "reduction.max",
        ok,
        "maximal reduces, after t -> J6 t and scaling by J6^4, to the alternate reduced form",
    ));
    out
}

// ---------------------------------------------------------------------------
// Generic classification
// ---------------------------------------------------------------------------

/// Classifies raw and modular models at random sextuples against the
/// generic row of each table.
pub fn verify_generic_classification(class: FibrationClass, cfg: &SuiteConfig) -> IdentityReport {
    let expected = expected_table()
        .into_iter()
        .find(|r| r.class == class && r.locus == Locus::Generic)
        .expect("every class has a generic row")
        .config;
    let mut sampler = Sampler::new(cfg.seed.wrapping_add(100 + class as u64));
    let mut witnesses = Vec::new();
    let mut checked = 0;
    let mut attempts = 0;
    while checked < cfg.points && attempts < 10 * cfg.points.max(1) {
        attempts += 1;
        let p = sampler.params();
        let j = crate::moduli::invariants(&p).expect("nonzero entries");
        if !super::loci::is_generic(&j) {
            continue;
        }
        checked += 1;
        let raw = build_raw(class, &p)
            .map_err(|e| e.to_string())
            .and_then(|m| classify_fibration(&m).map_err(|e| e.to_string()));
        let modular = build_modular(class, &j, Branch::Plus)
            .map_err(|e| e.to_string())
            .and_then(|m| classify_fibration(&m).map_err(|e| e.to_string()));
        match (raw, modular) {
            (Ok(r), Ok(m)) if r.config == expected && m.config == expected => {}
            (r, m) => witnesses.push(format!(
                "{p}: raw {}, modular {}",
                r.map(|c| c.config.to_string()).unwrap_or_else(|e| e),
                m.map(|c| c.config.to_string()).unwrap_or_else(|e| e)
            )),
        }
    }
    let status = if witnesses.is_empty() && checked > 0 {
        Status::VerifiedAtPoints(checked)
    } else {
        Status::Failed
    };
    IdentityReport::new(
        format!("classification.{class}"),
        status,
        format!("raw and modular models both classify as {expected}"),
    )
    .with_witnesses(witnesses)
}

/// Every check, sorted by name.
pub fn run_suite(cfg: &SuiteConfig) -> Vec<IdentityReport> {
    let mut out: Vec<IdentityReport> = FibrationClass::ALL
        .iter()
        .map(|c| verify_substitution(*c, cfg))
        .collect();
    out.extend(verify_fplus_fminus(cfg));
    out.extend(verify_j30_identity(cfg));
    out.extend(verify_convergence(cfg));
    out.extend(verify_reductions(cfg));
    out.extend(
        FibrationClass::ALL
            .iter()
            .map(|c| verify_generic_classification(*c, cfg)),
    );
    out.sort_by(|a, b| a.name.cmp(&b.name));
    out
}
