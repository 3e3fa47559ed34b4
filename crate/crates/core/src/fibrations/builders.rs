//! Weierstrass models of the four fibrations, in raw sextuple coordinates
//! and in modular coordinates.

use exactalg::{poly, MPoly, Rat};
use serde::Serialize;

use super::{FibrationClass, FibrationError};
use crate::moduli::{InvariantPoint, ParamPoint, SQRT_VAR};
use crate::weierstrass::{WModel, T};

/// Default term budget for symbolic verification before falling back to
/// specialization at random points.
pub const DEFAULT_BUDGET: usize = 2_000_000;

/// Choice of square root 𝔞 ↦ ±𝔞 in the standard fibration.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    #[default]
    Plus,
    Minus,
}

impl Branch {
    pub fn sign(&self) -> i64 {
        match self {
            Branch::Plus => 1,
            Branch::Minus => -1,
        }
    }

    pub fn other(&self) -> Branch {
        match self {
            Branch::Plus => Branch::Minus,
            Branch::Minus => Branch::Plus,
        }
    }
}

/// Base charts of the standard fibration on the locus J₆ = 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StdChart {
    /// `f = −t³(t² + 3J₂t + J₄)`, `g = t⁵(J₅ − 2J₃t)`.
    First,
    /// `f = −t³(J₄t² + 3J₂t + 1)`, `g = t⁵(J₅t² − 2J₃t)`.
    Second,
}

/// The quartic `Q(X, Y, Z, W)` defining the family.
pub fn quartic() -> MPoly {
    poly(
        "Y^2*Z*W - 4*X^3*Z + 3*alpha*X*Z*W^2 + beta*Z*W^3 + gamma*X*Z^2*W \
         - 1/2*delta*Z^2*W^2 - 1/2*zeta*W^4 + epsilon*X*W^3",
    )
}

/// A birational map from the quartic to a Weierstrass model, written in
/// homogeneous base coordinates `(u : v)` and fiber coordinates `(x : y : z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawHomogeneous {
    pub class: FibrationClass,
    /// Images of X, Y, W.
    pub x: MPoly,
    pub y: MPoly,
    pub w: MPoly,
    /// Image of Z; `None` when Z is instead solved from [`Self::conic`].
    pub z: Option<MPoly>,
    /// A form linear in Z whose vanishing defines Z.
    pub conic: Option<MPoly>,
    /// Weierstrass coefficients, homogeneous of degrees 4, 8, 12 in (u, v).
    pub a2: MPoly,
    pub a4: MPoly,
    pub a6: MPoly,
    /// Expected overall factor `Q∘φ = factor · E`, when known in closed form.
    pub factor: Option<MPoly>,
}

impl RawHomogeneous {
    /// `E = y²z − (x³ + a2 x²z + a4 xz² + a6 z³)`.
    pub fn weierstrass_form(&self) -> MPoly {
        let p = |s: &str| poly(s);
        let cubic = &(&(&p("x^3") + &(&self.a2 * &p("x^2*z"))) + &(&self.a4 * &p("x*z^2")))
            + &(&self.a6 * &p("z^3"));
        &p("y^2*z") - &cubic
    }
}

/// The coordinate change and target model of one fibration.
pub fn raw_homogeneous(class: FibrationClass) -> RawHomogeneous {
    let p = poly;
    match class {
        FibrationClass::Standard => RawHomogeneous {
            class,
            x: p("u*v*x"),
            y: p("y"),
            z: Some(p("4*u^4*v^2*z")),
            w: p("4*u^3*v^3*z"),
            conic: None,
            a2: MPoly::zero(),
            a4: p("-4*u^3*v^3*(gamma*u^2 + 3*alpha*u*v + epsilon*v^2)"),
            a6: p("8*u^5*v^5*(delta*u^2 - 2*beta*u*v + zeta*v^2)"),
            factor: Some(p("16*u^7*v^5*z")),
        },
        FibrationClass::Alternate => RawHomogeneous {
            class,
            x: p("2*u*v*x"),
            y: p("y"),
            z: Some(p("4*v^5*(zeta*v - 2*epsilon*u)*z")),
            w: p("2*v^2*x"),
            conic: None,
            a2: p("4*v*(4*u^3 - 3*alpha*u*v^2 - beta*v^3)"),
            a4: p("4*v^6*(2*gamma*u - delta*v)*(2*epsilon*u - zeta*v)"),
            a6: MPoly::zero(),
            factor: Some(p("-8*v^7*x*(2*epsilon*u - zeta*v)")),
        },
        FibrationClass::Bfd => RawHomogeneous {
            class,
            x: p("3*u*v*(x + 6*gamma*epsilon*u*v^3*z)"),
            y: p("y"),
            z: Some(bfd_z(1)),
            w: p("108*u^3*v^3*z"),
            conic: None,
            a2: MPoly::zero(),
            a4: p("-108*u^2*v^4*(9*alpha*u^2 - 3*(gamma*zeta + delta*epsilon)*u*v + gamma^2*epsilon^2*v^2)"),
            a6: p(
                "-216*u^3*v^5*(27*u^4 + 54*beta*u^3*v + 27*(alpha*gamma*epsilon + delta*zeta)*u^2*v^2 \
                 - 9*gamma*epsilon*(gamma*zeta + delta*epsilon)*u*v^3 + 2*gamma^3*epsilon^3*v^4)",
            ),
            factor: Some(&p("648*u^3*v^5") * &bfd_z(1).div_exact(&p("6*v^2")).expect("monomial factor")),
        },
        FibrationClass::Maximal => RawHomogeneous {
            class,
            x: p("delta*zeta*v*((2*beta*gamma*epsilon*v - u)*x - 2*gamma*delta^5*epsilon*zeta^5*v^5*z)"),
            y: p("y"),
            z: None,
            w: p("2*delta^2*zeta^2*v^2*x"),
            conic: Some(p(
                "v*(2*gamma^2*delta*epsilon*zeta*X*Z \
                 + (6*alpha*gamma*delta*epsilon*zeta + 4*beta*gamma*delta*epsilon^2 + 4*beta*gamma^2*epsilon*zeta \
                 + 2*delta^2*zeta^2)*X*W \
                 - gamma*delta^2*epsilon*zeta*Z*W + 2*gamma*delta*epsilon*zeta*Y^2 \
                 - (8*beta*gamma^2*epsilon^2 + 4*delta^2*epsilon*zeta + 4*gamma*delta*zeta^2)*X^2) \
                 + u*(2*gamma*X - delta*W)*(2*epsilon*X - zeta*W)",
            )),
            a2: p(
                "-2*delta*zeta*v*(u^3 - 6*beta*gamma*epsilon*u^2*v \
                 + 3*(4*beta^2*gamma^2*epsilon^2 - alpha*delta^2*zeta^2)*u*v^2 \
                 - 2*beta*(4*beta^2*gamma^3*epsilon^3 - 3*alpha*gamma*delta^2*epsilon*zeta^2 - delta^3*zeta^3)*v^3)",
            ),
            a4: p(
                "-4*delta^6*zeta^6*v^6*(2*gamma*epsilon*u^2 \
                 - (8*beta*gamma^2*epsilon^2 + gamma*delta*zeta^2 + delta^2*epsilon*zeta)*u*v \
                 + (8*beta^2*gamma^3*epsilon^3 - 3*alpha*gamma*delta^2*epsilon*zeta^2 \
                 + 2*beta*gamma^2*delta*epsilon*zeta^2 + 2*beta*gamma*delta^2*epsilon^2*zeta - delta^3*zeta^3)*v^2)",
            ),
            a6: p(
                "-8*gamma*delta^11*epsilon*zeta^11*v^11*(gamma*epsilon*u \
                 - (2*beta*gamma^2*epsilon^2 + gamma*delta*zeta^2 + delta^2*epsilon*zeta)*v)",
            ),
            factor: None,
        },
    }
}

/// Image of Z for the base-fiber-dual map, with the sign of the middle
/// term as a parameter (`+1` is the one that works).
pub(crate) fn bfd_z(sign: i64) -> MPoly {
    let mid = &poly("6*gamma*epsilon^2*u*v^3*z").scale(&Rat::from_int(sign));
    &poly("6*v^2") * &(&(&poly("epsilon*x") + mid) - &poly("18*zeta*u^2*v^2*z"))
}

fn dehomogenize(p: &MPoly) -> MPoly {
    let r = p.eval_pairs(&[("v", Rat::one())]);
    if r.depends_on("u") {
        r.subs(&[("u", MPoly::var(T))])
            .expect("u occurs")
            .trim_vars()
    } else {
        r.trim_vars()
    }
}

/// Weierstrass model in the affine chart `t = u/v`, with the sextuple
/// symbolic.
pub fn raw_symbolic(class: FibrationClass) -> WModel {
    let h = raw_homogeneous(class);
    WModel::long(
        dehomogenize(&h.a2),
        dehomogenize(&h.a4),
        dehomogenize(&h.a6),
    )
}

fn nondegenerate(class: FibrationClass, m: WModel) -> Result<WModel, FibrationError> {
    if m.discriminant().is_zero() {
        return Err(FibrationError::Degenerate(class));
    }
    Ok(m)
}

/// The raw model specialized at a sextuple.
pub fn build_raw(class: FibrationClass, p: &ParamPoint) -> Result<WModel, FibrationError> {
    p.check_admissible()?;
    nondegenerate(class, raw_symbolic(class).specialize(&p.bindings()))
}

/// Weierstrass model in modular coordinates with J₂ … J₆ (and 𝔞 for the
/// standard fibration) symbolic. The standard model is the generic J₆ ≠ 0
/// one; see [`standard_chart`] for J₆ = 0.
pub fn modular_symbolic(class: FibrationClass, branch: Branch) -> WModel {
    let p = poly;
    match class {
        FibrationClass::Standard => {
            let s = MPoly::int(branch.sign());
            let a = &s * &MPoly::var(SQRT_VAR);
            let j5 = MPoly::var("J5");
            let half = Rat::new(1, 2).expect("nonzero");
            let lead = (&j5 - &a).scale(&half);
            let last = &(&j5 + &a).scale(&half) * &MPoly::var("J6");
            let inner = &(&(&lead * &p("t^2")) + &p("3*J2*J6*t")) + &last;
            let f = &p("-t^3*J6^3") * &inner;
            let g = p("J6^6*t^5*(t^2 - 2*J3*t + J6)");
            WModel::short(f, g)
        }
        FibrationClass::Alternate => {
            WModel::long(p("t^3 - 3*J2*t - 2*J3"), p("J4*t^2 - J5*t + J6"), MPoly::zero())
        }
        FibrationClass::Bfd => WModel::short(
            p("t^2*(-3*J2*t^2 - J5*t - 1/3*J4^2)"),
            p("t^3*(t^4 - 2*J3*t^3 + (J2*J4 + J6)*t^2 + 1/3*J4*J5*t + 2/27*J4^3)"),
        ),
        FibrationClass::Maximal => WModel::long(
            p("J6*(t^3 + 6*J3*J4*t^2 + 3*(4*J3^2*J4^2 - J2*J6^2)*t - 2*J3*(3*J2*J4*J6^2 - 4*J3^2*J4^3 + J6^3))"),
            p("-J6^6*(2*J4*t^2 + (8*J3*J4^2 + J5*J6)*t + (8*J3^2*J4^3 - 3*J2*J4*J6^2 + 2*J3*J4*J5*J6 - J6^3))"),
            p("J4*J6^11*(J4*t + 2*J3*J4^2 + J5*J6)"),
        ),
    }
}

/// The standard fibration on J₆ = 0 in either base chart.
pub fn standard_chart(chart: StdChart) -> WModel {
    match chart {
        StdChart::First => {
            WModel::short(poly("-t^3*(t^2 + 3*J2*t + J4)"), poly("t^5*(J5 - 2*J3*t)"))
        }
        StdChart::Second => WModel::short(
            poly("-t^3*(J4*t^2 + 3*J2*t + 1)"),
            poly("t^5*(J5*t^2 - 2*J3*t)"),
        ),
    }
}

/// The modular model specialized at an invariant point.
///
/// The standard fibration with J₆ ≠ 0 needs a rational 𝔞 (either given or
/// found as an exact square root); the maximal one needs J₆ ≠ 0.
pub fn build_modular(
    class: FibrationClass,
    j: &InvariantPoint,
    branch: Branch,
) -> Result<WModel, FibrationError> {
    j.validate()?;
    let model = match class {
        FibrationClass::Standard if j.j6.is_zero() => {
            standard_chart(StdChart::First).specialize(&j.bindings())
        }
        FibrationClass::Standard => {
            let j = j.clone().with_rational_sqrt();
            if j.a.is_none() {
                return Err(FibrationError::MissingSqrt);
            }
            modular_symbolic(class, branch).specialize(&j.bindings())
        }
        FibrationClass::Maximal if j.j6.is_zero() => return Err(FibrationError::NeedsNonzeroJ6),
        _ => modular_symbolic(class, branch).specialize(&j.bindings()),
    };
    nondegenerate(class, model)
}

/// Reduces powers of 𝔞 using 𝔞² = J₅² − 4J₄J₆, leaving degree ≤ 1 in 𝔞.
pub fn reduce_sqrt(p: &MPoly) -> MPoly {
    if !p.depends_on(SQRT_VAR) {
        return p.clone();
    }
    let sq = poly("J5^2 - 4*J4*J6");
    let a = MPoly::var(SQRT_VAR);
    let mut acc = MPoly::zero();
    for (k, c) in p.coeffs_in(SQRT_VAR).iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let k = k as u32;
        let mut term = c * &sq.pow(k / 2);
        if k % 2 == 1 {
            term = &term * &a;
        }
        acc = &acc + &term;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moduli::invariants;
    use exactalg::rat;

    #[test]
    fn symbolic_degrees_fit_k3_bounds() {
        for class in FibrationClass::ALL {
            let m = raw_symbolic(class);
            let (f, g) = m.depress();
            assert!(f.degree_in(T).unwrap_or(0) <= 8, "{class}");
            assert!(g.degree_in(T).unwrap_or(0) <= 12, "{class}");
        }
    }

    #[test]
    fn reduce_sqrt_uses_relation() {
        let p = poly("a^3 + a^2*J4 + 1");
        assert_eq!(
            reduce_sqrt(&p),
            poly("a*(J5^2 - 4*J4*J6) + J4*(J5^2 - 4*J4*J6) + 1")
        );
    }

    #[test]
    fn modular_requires_sqrt_and_nonzero_j6() {
        let j = InvariantPoint::from_ints([1, 2, 1, 1, 1], None);
        assert!(matches!(
            build_modular(FibrationClass::Standard, &j, Branch::Plus),
            Err(FibrationError::MissingSqrt)
        ));
        let j0 = InvariantPoint::from_ints([1, 2, 1, 1, 0], None);
        assert!(matches!(
            build_modular(FibrationClass::Maximal, &j0, Branch::Plus),
            Err(FibrationError::NeedsNonzeroJ6)
        ));
        assert!(build_modular(FibrationClass::Standard, &j0, Branch::Plus).is_ok());
    }

    #[test]
    fn raw_build_specializes_all_parameters() {
        let p = ParamPoint::new([
            rat(1, 2),
            rat(-3, 1),
            rat(2, 1),
            rat(5, 3),
            rat(-1, 4),
            rat(7, 1),
        ]);
        for class in FibrationClass::ALL {
            let m = build_raw(class, &p).unwrap();
            for c in [&m.a2, &m.a4, &m.a6] {
                assert!(c.used_vars().iter().all(|v| v == T));
            }
            let j = invariants(&p).unwrap();
            assert!(build_modular(class, &j, Branch::Plus).is_ok());
        }
    }
}
