//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Every criterion is checked with exact rational arithmetic, so each
//! tolerance is "exact". The process exits non-zero when a criterion fails,
//! unless the failure is one of the documented known failures below. Those
//! still print FAIL, and instead the analysis that explains them must hold.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use exactalg::{discriminant, rat, resultant, MPoly, Rat};
use k3fib::fibrations::{
    construct_locus_point, reproduce_table, run_suite, verify_generic_classification,
    FibrationClass, IdentityReport, Locus, Sampler, Status, SuiteConfig,
};
use k3fib::heterotic::{
    classify_branch, enhanced_algebra, generic_algebra, GaugeAlgebra, SimpleAlgebra,
};
use k3fib::weierstrass::{classify_short, flip_chart, minimalize, subs_present, T};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

/// Criteria whose FAIL is expected and explained by an analysis check.
const KNOWN_FAILURES: &[u32] = &[4];

struct Outcome {
    criterion: u32,
    pass: bool,
    tolerance: &'static str,
    summary: String,
}

fn line(o: &Outcome) -> String {
    let verdict = if o.pass { "PASS" } else { "FAIL" };
    format!(
        "criterion {}: {verdict} (tolerance: {}) {}",
        o.criterion, o.tolerance, o.summary
    )
}

fn suite() -> Vec<IdentityReport> {
    run_suite(&SuiteConfig::default())
}

fn reports<'a>(all: &'a [IdentityReport], prefix: &str) -> Vec<&'a IdentityReport> {
    all.iter().filter(|r| r.name.starts_with(prefix)).collect()
}

fn find<'a>(all: &'a [IdentityReport], name: &str) -> &'a IdentityReport {
    all.iter()
        .find(|r| r.name == name)
        .unwrap_or_else(|| panic!("missing report {name}"))
}

fn all_symbolic(rs: &[&IdentityReport]) -> bool {
    !rs.is_empty() && rs.iter().all(|r| r.status == Status::VerifiedSymbolic)
}

fn names(rs: &[&IdentityReport]) -> String {
    rs.iter()
        .map(|r| format!("{}={}", r.name, r.status.label()))
        .collect::<Vec<_>>()
        .join(", ")
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let rows = reproduce_table(1);
    let elapsed = start.elapsed();
    let matched = rows.iter().filter(|r| r.matches).count();
    Outcome {
        criterion: 1,
        pass: matched == rows.len() && rows.len() == 23 && elapsed < Duration::from_secs(60),
        tolerance: "exact fiber multisets, torsion and Picard rank; runtime < 60 s",
        summary: format!(
            "{matched}/{} rows match in {:.1} s",
            rows.len(),
            elapsed.as_secs_f64()
        ),
    }
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let cfg = SuiteConfig {
        points: 100,
        ..SuiteConfig::default()
    };
    let rs: Vec<IdentityReport> = FibrationClass::ALL
        .iter()
        .map(|c| verify_generic_classification(*c, &cfg))
        .collect();
    let elapsed = start.elapsed();
    let ok = rs
        .iter()
        .all(|r| matches!(r.status, Status::VerifiedAtPoints(n) if n >= 100));
    Outcome {
        criterion: 2,
        pass: ok && elapsed < Duration::from_secs(300),
        tolerance: "exact, >= 100 points per fibration, Euler total 24; runtime < 5 min",
        summary: format!(
            "{} in {:.1} s",
            names(&rs.iter().collect::<Vec<_>>()),
            elapsed.as_secs_f64()
        ),
    }
}

fn criterion_3(all: &[IdentityReport]) -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for class in FibrationClass::ALL {
        let r = find(all, &format!("substitution.{class}"));
        let status_ok = match class {
            FibrationClass::Maximal => {
                matches!(r.status, Status::VerifiedSymbolic)
                    || matches!(r.status, Status::VerifiedAtPoints(n) if n >= 20)
            }
            _ => r.status == Status::VerifiedSymbolic,
        };
        ok &= status_ok && r.factor.is_some();
        parts.push(format!(
            "{}={} [factor {}]",
            r.name,
            r.status.label(),
            r.factor.as_deref().unwrap_or("-")
        ));
    }
    Outcome {
        criterion: 3,
        pass: ok,
        tolerance: "exact per check; symbolic, or >= 20 points for maximal",
        summary: parts.join("; "),
    }
}

/// The J30 identity exactly as stated: both discriminants equal, and both
/// quotient expressions a constant multiple of J30.
fn criterion_4(all: &[IdentityReport]) -> Outcome {
    let stated = ["j30.bfd", "j30.disc-d", "j30.std"].map(|n| find(all, n));
    let pass = stated.iter().all(|r| r.passed());
    Outcome {
        criterion: 4,
        pass,
        tolerance: "exact; one ratio constant across >= 20 points",
        summary: stated
            .iter()
            .map(|r| format!("{}={}", r.name, r.status.label()))
            .collect::<Vec<_>>()
            .join(", "),
    }
}

/// Why criterion 4 fails: the stated expressions give ratios that vary
/// from point to point, while the variants with the powers that make the
/// weights homogeneous give ratio exactly 1.
fn criterion_4_analysis(all: &[IdentityReport]) -> Result<String, String> {
    for name in ["j30.std", "j30.bfd", "j30.disc-d"] {
        let r = find(all, name);
        if r.passed() || r.witnesses.len() < 2 {
            return Err(format!(
                "{name}: expected a failure with differing witnesses, got {}",
                r.text_line()
            ));
        }
    }
    for name in ["j30.std-j6-power-30", "j30.bfd-j4-power-9"] {
        let r = find(all, name);
        if !r.passed() || r.constant_ratio.as_deref() != Some("1") {
            return Err(format!("{name}: expected ratio 1, got {}", r.text_line()));
        }
    }
    Ok("stated forms have point-dependent ratios; weight-corrected forms give ratio 1".to_string())
}

fn criterion_5(all: &[IdentityReport]) -> Outcome {
    // The identities are symbolic; the fiber comparison between the two
    // square-root branches is sampled and only has to pass.
    let (sampled, identities): (Vec<_>, Vec<_>) = reports(all, "branches.")
        .into_iter()
        .partition(|r| r.name == "branches.branches-same-fibers");
    let sampled_ok = sampled.iter().all(|r| r.passed());
    Outcome {
        criterion: 5,
        pass: all_symbolic(&identities) && sampled_ok,
        tolerance: "exact, symbolic",
        summary: format!("{}; {}", names(&identities), names(&sampled)),
    }
}

fn criterion_6(all: &[IdentityReport]) -> Outcome {
    let rs = reports(all, "reduction.");
    let scale = find(all, "reduction.scale");
    let lambda_ok = scale.constant_ratio.as_deref() == Some("Lambda = 1/12");
    // The identification χ₁₀ ↦ 2¹²3⁵, χ₁₂ ↦ 2¹²3⁶ must be the one solved
    // for Λ: Λ⁵·2¹²3⁵ = 4 and Λ⁶·2¹²3⁶ = 1.
    let l = rat(1, 12);
    let ident_ok = &l.pow(5).unwrap() * &Rat::from_int(4096 * 243) == Rat::from_int(4)
        && &l.pow(6).unwrap() * &Rat::from_int(4096 * 729) == Rat::one();
    Outcome {
        criterion: 6,
        pass: all_symbolic(&rs) && lambda_ok && ident_ok,
        tolerance: "exact, symbolic with formal psi4, psi6, chi10, chi12",
        summary: format!(
            "{}; {}",
            names(&rs),
            scale.constant_ratio.as_deref().unwrap_or("no scale")
        ),
    }
}

fn criterion_7(all: &[IdentityReport]) -> Outcome {
    let rs = reports(all, "limit.");
    Outcome {
        criterion: 7,
        pass: all_symbolic(&rs),
        tolerance: "exact, symbolic on J4 = 0",
        summary: names(&rs),
    }
}

fn criterion_8() -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    let expected_generic = [
        (FibrationClass::Bfd, "e8 + so(12)"),
        (FibrationClass::Standard, "e7 + e7"),
        (FibrationClass::Alternate, "so(24) + su(2) + su(2)"),
        (FibrationClass::Maximal, "so(28)"),
    ];
    let mut sampler = Sampler::new(8);
    for (class, alg) in expected_generic {
        if generic_algebra(class) != GaugeAlgebra::parse(alg).unwrap() {
            failures.push(format!(
                "{class}: generic algebra {}",
                generic_algebra(class)
            ));
        }
        for locus in [
            Locus::Generic,
            Locus::J30,
            Locus::SqrtZero,
            Locus::J4,
            Locus::J4J5,
        ] {
            let Ok(j) = construct_locus_point(class, locus, &mut sampler) else {
                continue;
            };
            let r = match classify_branch(class, &j) {
                Ok(r) => r,
                Err(e) => {
                    failures.push(format!("{class} {}: {e}", locus.label()));
                    continue;
                }
            };
            checked += 1;
            let predicted = if locus == Locus::Generic {
                Some(generic_algebra(class))
            } else {
                enhanced_algebra(class, locus)
            };
            if predicted.as_ref() != Some(&r.gauge) || !r.consistent || r.computed.is_none() {
                failures.push(format!(
                    "{class} {}: gauge {}, computed {:?}, consistent {}",
                    locus.label(),
                    r.gauge,
                    r.computed.as_ref().map(|a| a.to_string()),
                    r.consistent
                ));
            }
            let on_j30 = r.enhancements.iter().any(|e| e.locus == Locus::J30);
            if (locus == Locus::J30) != on_j30 {
                failures.push(format!("{class} {}: J30 detection mismatch", locus.label()));
            }
            if on_j30 && r.gauge != generic_algebra(class).with(SimpleAlgebra::Su(2)) {
                failures.push(format!(
                    "{class} J30=0: gauge {} lacks the extra su(2)",
                    r.gauge
                ));
            }
        }
    }
    // The branches meeting at J4 = 0 share their enhancement.
    let pairs = [
        (FibrationClass::Standard, FibrationClass::Bfd),
        (FibrationClass::Alternate, FibrationClass::Maximal),
    ];
    for (a, b) in pairs {
        for locus in [Locus::J4, Locus::J4J5] {
            if enhanced_algebra(a, locus) != enhanced_algebra(b, locus) {
                failures.push(format!("{a}/{b} disagree on {}", locus.label()));
            }
        }
    }
    Outcome {
        criterion: 8,
        pass: failures.is_empty() && checked >= 16,
        tolerance: "exact lookup, validated against computed ADE ranks",
        summary: if failures.is_empty() {
            format!("{checked} branch/locus points consistent")
        } else {
            failures.join("; ")
        },
    }
}

fn small_rat() -> impl Strategy<Value = Rat> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn poly_xy() -> impl Strategy<Value = MPoly> {
    prop::collection::vec((prop::collection::vec(0u32..=3, 2), small_rat()), 0..=4).prop_map(
        |terms| {
            MPoly::from_terms(vec!["x".to_string(), "y".to_string()], terms)
                .expect("two exponents per term")
        },
    )
}

fn univariate() -> impl Strategy<Value = MPoly> {
    (prop::collection::vec(-6i64..=6, 2..=3), 1i64..=3).prop_map(|(mut c, lead)| {
        c.push(lead);
        MPoly::from_univariate("x", &c.into_iter().map(Rat::from_int).collect::<Vec<_>>())
    })
}

/// A random short model (f, g) in `t` of degrees ≤ 8 and ≤ 12.
fn short_model() -> impl Strategy<Value = (MPoly, MPoly)> {
    let coeffs = |n| prop::collection::vec(-3i64..=3, n);
    (coeffs(9), coeffs(13)).prop_map(|(f, g)| {
        let mk = |c: Vec<i64>| {
            MPoly::from_univariate(T, &c.into_iter().map(Rat::from_int).collect::<Vec<_>>())
        };
        (mk(f), mk(g))
    })
}

fn run_property<S: Strategy>(
    name: &str,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<String, String> {
    let cases = 200;
    let mut runner = TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    });
    runner
        .run(&strategy, test)
        .map(|()| format!("{name} x{cases}"))
        .map_err(|e| format!("{name}: {e}"))
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let results = vec![
        run_property(
            "ring-axioms",
            (poly_xy(), poly_xy(), poly_xy()),
            |(a, b, c)| {
                prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
                prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
                prop_assert_eq!(&a * &b, &b * &a);
                prop_assert_eq!(&(&a + &b) - &b, a.clone());
                Ok(())
            },
        ),
        run_property(
            "resultant-discriminant",
            (univariate(), univariate()),
            |(p, q)| {
                let lhs = discriminant(&(&p * &q), "x").unwrap();
                let r = resultant(&p, &q, "x").unwrap();
                let rhs = &(&discriminant(&p, "x").unwrap() * &discriminant(&q, "x").unwrap())
                    * &(&r * &r);
                prop_assert_eq!(lhs, rhs);
                let rq = resultant(&(&p * &q), &q, "x").unwrap();
                prop_assert!(rq.is_zero());
                Ok(())
            },
        ),
        run_property(
            "substitution-homomorphism",
            (poly_xy(), poly_xy(), poly_xy()),
            |(a, b, img)| {
                let pairs = [("x", img.clone()), ("y", &img + &MPoly::var("x"))];
                let s = |p: &MPoly| subs_present(p, &pairs).unwrap();
                prop_assert_eq!(s(&(&a * &b)), &s(&a) * &s(&b));
                prop_assert_eq!(s(&(&a + &b)), &s(&a) + &s(&b));
                Ok(())
            },
        ),
        run_property(
            "minimality-idempotence",
            (short_model(), -3i64..=3),
            |((f, g), r)| {
                let Ok((mf, mg)) = minimalize(&f, &g) else {
                    return Ok(());
                };
                prop_assert_eq!(minimalize(&mf, &mg).unwrap(), (mf.clone(), mg.clone()));
                let u = &MPoly::var(T) - &MPoly::int(r);
                prop_assert_eq!(
                    minimalize(&(&mf * &u.pow(4)), &(&mg * &u.pow(6))).unwrap(),
                    (mf, mg)
                );
                Ok(())
            },
        ),
        run_property(
            "chart-independence",
            (short_model(), -3i64..=3),
            |((f, g), s)| {
                let Ok((f, g)) = minimalize(&f, &g) else {
                    return Ok(());
                };
                let Ok(base) = classify_short(&f, &g) else {
                    return Ok(());
                };
                let (ff, gg) = flip_chart(&f, &g).unwrap();
                prop_assert_eq!(&classify_short(&ff, &gg).unwrap().config, &base.config);
                let shift = &MPoly::var(T) + &MPoly::int(s);
                let sf = subs_present(&f, &[(T, shift.clone())]).unwrap();
                let sg = subs_present(&g, &[(T, shift)]).unwrap();
                prop_assert_eq!(&classify_short(&sf, &sg).unwrap().config, &base.config);
                Ok(())
            },
        ),
    ];
    let elapsed = start.elapsed();
    let ok = results.iter().all(Result::is_ok);
    let summary = results
        .into_iter()
        .map(|r| r.unwrap_or_else(|e| e))
        .collect::<Vec<_>>()
        .join(", ");
    Outcome {
        criterion: 9,
        pass: ok && elapsed < Duration::from_secs(300),
        tolerance: "zero failures, 200 cases each; runtime < 5 min",
        summary: format!("{summary} in {:.1} s", elapsed.as_secs_f64()),
    }
}

fn main() -> ExitCode {
    let all = suite();
    let outcomes = vec![
        criterion_1(),
        criterion_2(),
        criterion_3(&all),
        criterion_4(&all),
        criterion_5(&all),
        criterion_6(&all),
        criterion_7(&all),
        criterion_8(),
        criterion_9(),
    ];
    let mut ok = true;
    for o in &outcomes {
        println!("{}", line(o));
        if !o.pass && !KNOWN_FAILURES.contains(&o.criterion) {
            ok = false;
        }
    }
    match criterion_4_analysis(&all) {
        Ok(s) => println!("criterion 4 analysis: holds ({s})"),
        Err(e) => {
            println!("criterion 4 analysis: does not hold ({e})");
            ok = false;
        }
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
