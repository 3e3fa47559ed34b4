//! Special loci in moduli, rational points on them, and the table of
//! singular-fiber configurations per fibration and locus.

use std::fmt;
use std::str::FromStr;

use exactalg::{resultant, MPoly, Rat};
use serde::{Serialize, Serializer};

use super::sampling::Sampler;
use super::{build_modular, j30_value, Branch, FibrationClass, FibrationError};
use crate::moduli::InvariantPoint;
use crate::weierstrass::{classify_fibration, FiberConfig, Torsion, T};

/// Loci on which the fiber configuration degenerates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Locus {
    Generic,
    /// A resultant of the model vanishes (a type II fiber appears).
    Res,
    /// 𝔞 = 0.
    SqrtZero,
    /// J30 = 0.
    J30,
    /// J₄ = 0.
    J4,
    /// J₄ = J₅ = 0.
    J4J5,
}

impl Locus {
    pub const ALL: [Locus; 6] = [
        Locus::Generic,
        Locus::Res,
        Locus::SqrtZero,
        Locus::J30,
        Locus::J4,
        Locus::J4J5,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            Locus::Generic => "generic",
            Locus::Res => "Res=0",
            Locus::SqrtZero => "a=0",
            Locus::J30 => "J30=0",
            Locus::J4 => "J4=0",
            Locus::J4J5 => "J4=J5=0",
        }
    }
}

impl fmt::Display for Locus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Locus {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key: String = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .collect::<String>()
            .to_ascii_lowercase();
        match key.as_str() {
            "generic" => Ok(Locus::Generic),
            "res" | "res=0" => Ok(Locus::Res),
            "a=0" | "a" | "sqrt" => Ok(Locus::SqrtZero),
            "j30" | "j30=0" => Ok(Locus::J30),
            "j4" | "j4=0" => Ok(Locus::J4),
            "j4=j5=0" | "j4j5" => Ok(Locus::J4J5),
            _ => Err(format!("unknown locus `{s}`")),
        }
    }
}

impl Serialize for Locus {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.label())
    }
}

/// One expected row: fibration, locus and configuration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub class: FibrationClass,
    pub locus: Locus,
    pub config: FiberConfig,
}

/// The reference table of singular fibers (23 rows).
pub fn expected_table() -> Vec<TableRow> {
    use FibrationClass::*;
    use Locus::*;
    let z2 = Torsion::Z2;
    let triv = Torsion::Trivial;
    let rows: [(FibrationClass, Locus, &str, Torsion); 23] = [
        (Standard, Generic, "2 III* + 6 I1", triv),
        (Standard, Res, "2 III* + II + 4 I1", triv),
        (Standard, J30, "2 III* + I2 + 4 I1", triv),
        (Standard, J4, "II* + III* + 5 I1", triv),
        (Standard, J4J5, "2 II* + 4 I1", triv),
        (Alternate, Generic, "I8* + 2 I2 + 6 I1", z2),
        (Alternate, Res, "I8* + III + I2 + 5 I1", z2),
        (Alternate, SqrtZero, "I8* + I4 + 6 I1", z2),
        (Alternate, J30, "I8* + 3 I2 + 4 I1", z2),
        (Alternate, J4, "I10* + I2 + 6 I1", z2),
        (Alternate, J4J5, "I12* + 6 I1", z2),
        (Bfd, Generic, "II* + I2* + 6 I1", triv),
        (Bfd, Res, "II* + I2* + II + 4 I1", triv),
        (Bfd, SqrtZero, "II* + I3* + 5 I1", triv),
        (Bfd, J30, "II* + I2* + I2 + 4 I1", triv),
        (Bfd, J4, "II* + III* + 5 I1", triv),
        (Bfd, J4J5, "2 II* + 4 I1", triv),
        (Maximal, Generic, "I10* + 8 I1", triv),
        (Maximal, Res, "I10* + II + 6 I1", triv),
        (Maximal, SqrtZero, "I11* + 7 I1", triv),
        (Maximal, J30, "I10* + I2 + 6 I1", triv),
        (Maximal, J4, "I10* + I2 + 6 I1", z2),
        (Maximal, J4J5, "I12* + 6 I1", z2),
    ];
    rows.into_iter()
        .map(|(class, locus, fibers, torsion)| TableRow {
            class,
            locus,
            config: FiberConfig::parse(fibers, torsion).expect("table literal parses"),
        })
        .collect()
}

fn t_order(p: &MPoly) -> u32 {
    p.coeffs_in(T)
        .iter()
        .position(|c| !c.is_zero())
        .unwrap_or(0) as u32
}

fn strip(p: &MPoly) -> MPoly {
    p.div_exact(&MPoly::var(T).pow(t_order(p)))
        .expect("power of t divides")
}

/// `Res_t(f̃, g̃)` of the short model with the powers of t at t = 0
/// removed. It vanishes exactly when f and g share a root away from 0.
pub fn locus_resultant(class: FibrationClass, j: &InvariantPoint) -> Result<Rat, FibrationError> {
    let m = build_modular(class, j, Branch::Plus)?;
    let (f, g) = m.depress();
    let r = resultant(&strip(&f), &strip(&g), T)?;
    Ok(r.constant_value().unwrap_or_else(Rat::zero))
}

fn res_nonzero(class: FibrationClass, j: &InvariantPoint) -> bool {
    locus_resultant(class, j).is_ok_and(|r| !r.is_zero())
}

/// Away from every special locus of every fibration.
pub(crate) fn is_generic(j: &InvariantPoint) -> bool {
    !j.j6.is_zero()
        && !j.j4.is_zero()
        && !j.a_squared().is_zero()
        && !j30_value(j).is_zero()
        && FibrationClass::ALL.iter().all(|c| res_nonzero(*c, j))
}

fn guards_hold(class: FibrationClass, locus: Locus, j: &InvariantPoint) -> bool {
    if j.j6.is_zero() || j.validate().is_err() {
        return false;
    }
    if !matches!(locus, Locus::J4 | Locus::J4J5) && j.j4.is_zero() {
        return false;
    }
    if !matches!(locus, Locus::SqrtZero | Locus::J4J5) && j.a_squared().is_zero() {
        return false;
    }
    if locus != Locus::J30 && j30_value(j).is_zero() {
        return false;
    }
    match locus {
        Locus::Generic | Locus::J30 | Locus::SqrtZero => res_nonzero(class, j),
        _ => true,
    }
}

fn int(n: i64) -> Rat {
    Rat::from_int(n)
}

fn point(j: [Rat; 5], a: Option<Rat>) -> InvariantPoint {
    InvariantPoint::new(j, a).with_rational_sqrt()
}

/// One candidate point on the locus; `None` when the draw hits a pole.
fn candidate(class: FibrationClass, locus: Locus, s: &mut Sampler) -> Option<InvariantPoint> {
    let half = exactalg::rat(1, 2);
    let third = exactalg::rat(1, 3);
    match locus {
        Locus::Generic => Some(s.invariants()),
        Locus::J4 => {
            let (j2, j3, j5, j6) = (s.rat(), s.rat(), s.rat(), s.rat());
            Some(point([j2, j3, Rat::zero(), j5.clone(), j6], Some(j5)))
        }
        Locus::J4J5 => {
            let (j2, j3, j6) = (s.rat(), s.rat(), s.rat());
            Some(point(
                [j2, j3, Rat::zero(), Rat::zero(), j6],
                Some(Rat::zero()),
            ))
        }
        Locus::SqrtZero => {
            let (j2, j3, m, n) = (s.rat(), s.rat(), s.rat(), s.rat());
            let j5 = &int(2) * &(&m * &n);
            Some(point([j2, j3, &m * &m, j5, &n * &n], Some(Rat::zero())))
        }
        Locus::J30 => {
            // Force a double root t0 of D = A² − 4B.
            let (j2, j3, t0, sq) = (s.rat(), s.rat(), s.rat(), s.rat());
            let a0 = &(&(&t0 * &(&t0 * &t0)) - &(&int(3) * &(&j2 * &t0))) - &(&int(2) * &j3);
            let a0p = &int(3) * &(&(&t0 * &t0) - &j2);
            let hp = &a0p * &half;
            let j4 = &(&hp * &hp) - &(&sq * &sq);
            let j5 = &(&int(2) * &(&j4 * &t0)) - &(&a0 * &hp);
            let j6 = &(&(&(&a0 * &a0) / &int(4)) - &(&j4 * &(&t0 * &t0))) + &(&j5 * &t0);
            let a = &a0 * &sq;
            Some(point([j2, j3, j4, j5, j6], Some(a)))
        }
        Locus::Res => match class {
            FibrationClass::Standard => {
                let (a, j5, j6, t0) = (s.rat(), s.rat(), s.rat(), s.rat());
                let j4 = &(&(&j5 * &j5) - &(&a * &a)) / &(&int(4) * &j6);
                let j3 = &(&(&t0 * &t0) + &j6) / &(&int(2) * &t0);
                let num =
                    &(&(&(&j5 - &a) * &half) * &(&t0 * &t0)) + &(&(&(&j5 + &a) * &half) * &j6);
                let j2 = -(&num / &(&int(3) * &(&j6 * &t0)));
                Some(point([j2, j3, j4, j5, j6], Some(a)))
            }
            FibrationClass::Alternate => {
                let (j2, j4, j5, t0) = (s.rat(), s.rat(), s.rat(), s.rat());
                let j3 = &(&(&t0 * &(&t0 * &t0)) - &(&int(3) * &(&j2 * &t0))) * &half;
                let j6 = &(&j5 * &t0) - &(&j4 * &(&t0 * &t0));
                Some(point([j2, j3, j4, j5, j6], None))
            }
            FibrationClass::Bfd => {
                let (j3, j4, j5, t0) = (s.rat(), s.rat(), s.rat(), s.rat());
                let t2 = &t0 * &t0;
                let j2 = -(&(&(&j5 * &t0) + &(&(&j4 * &j4) * &third)) / &(&int(3) * &t2));
                let rest = &(&(&(&(&t2 * &t2) - &(&(&int(2) * &j3) * &(&t2 * &t0)))
                    + &(&(&j2 * &j4) * &t2))
                    + &(&(&(&j4 * &j5) * &t0) * &third))
                    + &(&(&int(2) * &(&j4 * &(&j4 * &j4))) / &int(27));
                let j6 = -(&rest / &t2);
                Some(point([j2, j3, j4, j5, j6], None))
            }
            FibrationClass::Maximal => {
                let (j4, j6, w0, r) = (s.rat(), s.rat(), s.rat(), s.rat());
                let p = |x: &Rat, k: i64| x.pow(k).expect("nonzero base");
                let j3 = &(&(&(&(&p(&j6, 3) + &(&(&int(3) * &(&r * &j4)) / &(&j6 * &w0)))
                    + &(&(&p(&r, 3) * &w0) / &(&j4 * &p(&j6, 11))))
                    - &(&(&int(3) * &p(&r, 2)) / &p(&j6, 6)))
                    * &w0)
                    / &(&int(2) * &(&j4 * &p(&j6, 3)));
                let j2 = &(&(&p(&w0, 3) - &(&int(2) * &(&j3 * &p(&j6, 3))))
                    + &(&(&int(3) * &r) / &j6))
                    / &(&int(3) * &(&p(&j6, 2) * &w0));
                let j5 = &(&(-(&p(&r, 3) / &(&j4 * &p(&j6, 11)))) - &(&j4 * &w0)) / &j6;
                Some(point([j2, j3, j4, j5, j6], None))
            }
        },
    }
}

/// A rational point on `locus` suited to the `class` table row: on the
/// locus, off every other relevant locus.
pub fn construct_locus_point(
    class: FibrationClass,
    locus: Locus,
    sampler: &mut Sampler,
) -> Result<InvariantPoint, FibrationError> {
    if !expected_table()
        .iter()
        .any(|r| r.class == class && r.locus == locus)
    {
        return Err(FibrationError::NoSuchRow { class, locus });
    }
    const ATTEMPTS: usize = 200;
    for _ in 0..ATTEMPTS {
        let Some(j) = candidate(class, locus, sampler) else {
            continue;
        };
        if !guards_hold(class, locus, &j) {
            continue;
        }
        if locus == Locus::Res && !locus_resultant(class, &j)?.is_zero() {
            return Err(FibrationError::LocusConstruction {
                class,
                locus,
                attempts: 1,
            });
        }
        if locus == Locus::J30 && !j30_value(&j).is_zero() {
            return Err(FibrationError::LocusConstruction {
                class,
                locus,
                attempts: 1,
            });
        }
        return Ok(j);
    }
    Err(FibrationError::LocusConstruction {
        class,
        locus,
        attempts: ATTEMPTS,
    })
}

/// Outcome of reproducing one row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRowResult {
    pub class: FibrationClass,
    pub locus: Locus,
    pub expected: FiberConfig,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point: Option<InvariantPoint>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub observed: Option<FiberConfig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub matches: bool,
}

/// Classifies one constructed point per row. Each row draws from its own
/// stream derived from `seed`, so rows are reproducible independently.
pub fn reproduce_table(seed: u64) -> Vec<TableRowResult> {
    expected_table()
        .into_iter()
        .enumerate()
        .map(|(i, row)| {
            let mut sampler = Sampler::new(seed.wrapping_mul(1_000).wrapping_add(i as u64));
            let outcome = construct_locus_point(row.class, row.locus, &mut sampler).and_then(|j| {
                let m = build_modular(row.class, &j, Branch::Plus)?;
                let c = classify_fibration(&m)?;
                Ok((j, c.config))
            });
            match outcome {
                Ok((j, cfg)) => TableRowResult {
                    class: row.class,
                    locus: row.locus,
                    matches: cfg == row.config,
                    expected: row.config,
                    point: Some(j),
                    observed: Some(cfg),
                    error: None,
                },
                Err(e) => TableRowResult {
                    class: row.class,
                    locus: row.locus,
                    expected: row.config,
                    point: None,
                    observed: None,
                    error: Some(e.to_string()),
                    matches: false,
                },
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_has_23_rows_with_euler_24() {
        let t = expected_table();
        assert_eq!(t.len(), 23);
        for r in &t {
            assert_eq!(r.config.euler_total(), 24, "{} {}", r.class, r.locus);
        }
    }

    #[test]
    fn constructions_land_on_their_loci() {
        let mut s = Sampler::new(5);
        let j = construct_locus_point(FibrationClass::Alternate, Locus::J30, &mut s).unwrap();
        assert!(j30_value(&j).is_zero());
        let j = construct_locus_point(FibrationClass::Bfd, Locus::SqrtZero, &mut s).unwrap();
        assert!(j.a_squared().is_zero());
        for class in FibrationClass::ALL {
            let j = construct_locus_point(class, Locus::Res, &mut s).unwrap();
            assert!(locus_resultant(class, &j).unwrap().is_zero(), "{class}");
        }
        assert!(matches!(
            construct_locus_point(FibrationClass::Standard, Locus::SqrtZero, &mut s),
            Err(FibrationError::NoSuchRow { .. })
        ));
    }
}
