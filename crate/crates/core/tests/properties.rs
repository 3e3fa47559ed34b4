use exactalg::{rat, MPoly, Rat};
use k3fib::fibrations::{build_modular, build_raw, expected_table, Branch, FibrationClass, Locus};
use k3fib::heterotic::{classify_branch, GaugeAlgebra};
use k3fib::moduli::{
    act, invariants, isomorphic, same_wp_point, wp_normalize, GroupElement, ParamPoint,
};
use k3fib::weierstrass::{classify_short, flip_chart, minimalize, T};
use proptest::prelude::*;

fn nonzero_rat() -> impl Strategy<Value = Rat> {
    (1i64..=9, any::<bool>(), 1i64..=5).prop_map(|(n, neg, d)| rat(if neg { -n } else { n }, d))
}

fn params() -> impl Strategy<Value = ParamPoint> {
    prop::array::uniform6(nonzero_rat()).prop_map(ParamPoint::new)
}

fn class() -> impl Strategy<Value = FibrationClass> {
    prop::sample::select(FibrationClass::ALL.to_vec())
}

fn generic_row(class: FibrationClass) -> k3fib::weierstrass::FiberConfig {
    expected_table()
        .into_iter()
        .find(|r| r.class == class && r.locus == Locus::Generic)
        .unwrap()
        .config
}

/// The minimal short model of a raw fibration, or `None` on a degenerate
/// sextuple.
fn minimal(class: FibrationClass, p: &ParamPoint) -> Option<(MPoly, MPoly)> {
    build_raw(class, p).ok()?.minimal_short().ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn euler_numbers_sum_to_24(c in class(), p in params()) {
        let Some((f, g)) = minimal(c, &p) else { return Ok(()) };
        let cl = classify_short(&f, &g).unwrap();
        prop_assert_eq!(cl.config.euler_total(), 24);
        // Shioda–Tate: with Mordell–Weil rank 0, ρ = 2 + rank of the ADE part ≤ 20.
        prop_assert!(cl.config.picard_rank() <= 20);
    }

    #[test]
    fn minimalization_is_idempotent(c in class(), p in params(), r in -3i64..=3) {
        let Some((f, g)) = minimal(c, &p) else { return Ok(()) };
        prop_assert_eq!(minimalize(&f, &g).unwrap(), (f.clone(), g.clone()));
        // A non-minimal model u⁴f, u⁶g minimalizes back.
        let u = &MPoly::var(T) - &MPoly::int(r);
        let (tf, tg) = (&f * &u.pow(4), &g * &u.pow(6));
        prop_assert_eq!(minimalize(&tf, &tg).unwrap(), (f, g));
    }

    #[test]
    fn classification_is_chart_independent(c in class(), p in params(), s in -3i64..=3) {
        let Some((f, g)) = minimal(c, &p) else { return Ok(()) };
        let base = classify_short(&f, &g).unwrap().config;
        let (ff, gg) = flip_chart(&f, &g).unwrap();
        prop_assert_eq!(&classify_short(&ff, &gg).unwrap().config, &base);
        let shift = &MPoly::var(T) + &MPoly::int(s);
        let sf = k3fib::weierstrass::subs_present(&f, &[(T, shift.clone())]).unwrap();
        let sg = k3fib::weierstrass::subs_present(&g, &[(T, shift)]).unwrap();
        prop_assert_eq!(&classify_short(&sf, &sg).unwrap().config, &base);
    }

    #[test]
    fn twisting_by_a_unit_square_keeps_fibers(c in class(), p in params(), k in nonzero_rat()) {
        let Some(m) = build_raw(c, &p).ok() else { return Ok(()) };
        let base = k3fib::weierstrass::classify_fibration(&m).unwrap().config;
        let twisted = m.twist(&MPoly::constant(k));
        prop_assert_eq!(k3fib::weierstrass::classify_fibration(&twisted).unwrap().config, base);
    }

    #[test]
    fn raw_and_modular_models_agree(c in class(), p in params()) {
        let j = invariants(&p).unwrap();
        let (Ok(raw), Ok(modular)) = (build_raw(c, &p), build_modular(c, &j, Branch::Plus)) else {
            return Ok(());
        };
        let a = k3fib::weierstrass::classify_fibration(&raw).unwrap().config;
        let b = k3fib::weierstrass::classify_fibration(&modular).unwrap().config;
        prop_assert_eq!(a, b);
    }

    #[test]
    fn both_square_root_branches_agree(p in params()) {
        let j = invariants(&p).unwrap();
        let plus = build_modular(FibrationClass::Standard, &j, Branch::Plus);
        let minus = build_modular(FibrationClass::Standard, &j, Branch::Minus);
        let (Ok(plus), Ok(minus)) = (plus, minus) else { return Ok(()) };
        let a = k3fib::weierstrass::classify_fibration(&plus).unwrap().config;
        let b = k3fib::weierstrass::classify_fibration(&minus).unwrap().config;
        prop_assert_eq!(a, b);
    }

    #[test]
    fn group_action_preserves_invariants(p in params(), s in nonzero_rat()) {
        let j = invariants(&p).unwrap();
        let scaled = act(&p, &GroupElement::Scaling(s.clone())).unwrap();
        let js = invariants(&scaled).unwrap();
        prop_assert_eq!(&js, &j.rescale(&s));
        prop_assert!(same_wp_point(&j, &js).unwrap());
        prop_assert_eq!(wp_normalize(&j).unwrap(), wp_normalize(&js).unwrap());
        let swapped = invariants(&act(&p, &GroupElement::Swap).unwrap()).unwrap();
        prop_assert_eq!(swapped.js(), j.js());
        prop_assert_eq!(swapped.a.clone().map(|a| -a), j.a.clone());
        // Witnesses have the form scaling ∘ swap^ε; that order is always found over ℚ.
        let swapped_p = act(&p, &GroupElement::Swap).unwrap();
        let q = act(&swapped_p, &GroupElement::Scaling(s.clone())).unwrap();
        let iso = isomorphic(&p, &q).unwrap();
        prop_assert!(iso.equivalent_over_extension);
        prop_assert!(iso.equivalent_over_q());
        // The other order need not be a single witness, but stays in the same
        // weighted-projective class.
        let iso = isomorphic(&p, &act(&scaled, &GroupElement::Swap).unwrap()).unwrap();
        prop_assert!(iso.equivalent_over_extension);
    }

    #[test]
    fn gauge_rank_matches_ade_rank(c in class(), p in params()) {
        let j = invariants(&p).unwrap();
        let Ok(r) = classify_branch(c, &j) else { return Ok(()) };
        let cfg = r.config.expect("a is rational at sextuple invariants");
        prop_assert_eq!(GaugeAlgebra::from_config(&cfg).rank(), cfg.ade_total());
        prop_assert!(r.consistent);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn generic_points_give_the_generic_row(c in class(), p in params()) {
        let j = invariants(&p).unwrap();
        prop_assume!(k3fib::heterotic::detect_loci(&j).unwrap().is_empty());
        let Ok(m) = build_raw(c, &p) else { return Ok(()) };
        let cfg = k3fib::weierstrass::classify_fibration(&m).unwrap().config;
        // Off the enhancement loci the only possible degeneration is a
        // type II collision, which leaves the reducible part unchanged.
        prop_assert_eq!(
            GaugeAlgebra::from_config(&cfg),
            GaugeAlgebra::from_config(&generic_row(c))
        );
        prop_assert_eq!(cfg.mw_torsion, generic_row(c).mw_torsion);
    }
}
