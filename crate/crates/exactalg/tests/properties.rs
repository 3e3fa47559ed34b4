use std::collections::HashMap;

use exactalg::{discriminant, factor_rational, gcd, rat, resultant, squarefree_factor, MPoly, Rat};
use proptest::prelude::*;

fn small_rat() -> impl Strategy<Value = Rat> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

/// Sparse polynomial in `vars` with up to `n` terms and exponents ≤ `e`.
fn poly_in(vars: &'static [&'static str], n: usize, e: u32) -> impl Strategy<Value = MPoly> {
    prop::collection::vec(
        (prop::collection::vec(0..=e, vars.len()), small_rat()),
        0..=n,
    )
    .prop_map(move |terms| {
        MPoly::from_terms(vars.iter().map(|s| s.to_string()).collect(), terms)
            .expect("exponent vectors have the right length")
    })
}

fn univariate(max_deg: usize) -> impl Strategy<Value = MPoly> {
    (prop::collection::vec(-6i64..=6, 1..=max_deg), 1i64..=3).prop_map(|(mut c, lead)| {
        c.push(lead);
        let coeffs: Vec<Rat> = c.into_iter().map(Rat::from_int).collect();
        MPoly::from_univariate("x", &coeffs)
    })
}

const XY: &[&str] = &["x", "y"];
const XYZ: &[&str] = &["x", "y", "z"];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn ring_axioms(a in poly_in(XYZ, 4, 3), b in poly_in(XYZ, 4, 3), c in poly_in(XY, 4, 3)) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &MPoly::one(), a.clone());
    }

    #[test]
    fn no_zero_coefficients_are_stored(a in poly_in(XY, 5, 3), b in poly_in(XY, 5, 3)) {
        let s = &(&a * &b) - &(&b * &a);
        prop_assert_eq!(s.num_terms(), 0);
        for (_, c) in (&a + &b).terms() {
            prop_assert!(!c.is_zero());
        }
    }

    #[test]
    fn substitution_is_a_ring_homomorphism(
        a in poly_in(XY, 4, 3),
        b in poly_in(XY, 4, 3),
        img_x in poly_in(&["u", "v"], 3, 2),
        img_y in poly_in(&["u", "y"], 3, 2),
    ) {
        let bind: HashMap<String, MPoly> =
            [("x".to_string(), img_x), ("y".to_string(), img_y)].into_iter().collect();
        let ab = (&a * &b).substitute(&bind).unwrap();
        let sa = a.substitute(&bind).unwrap();
        let sb = b.substitute(&bind).unwrap();
        prop_assert_eq!(ab, &sa * &sb);
        let apb = (&a + &b).substitute(&bind).unwrap();
        prop_assert_eq!(apb, &sa + &sb);
    }

    #[test]
    fn display_parse_roundtrip(a in poly_in(XYZ, 5, 4)) {
        let s = a.to_string();
        let back: MPoly = s.parse().unwrap();
        prop_assert_eq!(back, a.clone());
        let json = serde_json::to_string(&a).unwrap();
        let back: MPoly = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn resultant_vanishes_iff_common_factor(p in univariate(3), q in univariate(3), shared in any::<bool>(), r in -4i64..=4) {
        let lin = MPoly::from_univariate("x", &[Rat::from_int(-r), Rat::one()]);
        let (p, q) = if shared { (&p * &lin, &q * &lin) } else { (p, q) };
        let res = resultant(&p, &q, "x").unwrap();
        let g = gcd(&p, &q);
        prop_assert_eq!(res.is_zero(), g.degree_in("x").unwrap_or(0) > 0);
        if shared {
            prop_assert!(res.is_zero());
        }
    }

    #[test]
    fn resultant_is_multiplicative_and_antisymmetric(p in univariate(3), q in univariate(3), h in univariate(2)) {
        let rpq = resultant(&p, &q, "x").unwrap();
        let rqp = resultant(&q, &p, "x").unwrap();
        let m = p.degree_in("x").unwrap() * q.degree_in("x").unwrap();
        let sign = if m % 2 == 1 { -Rat::one() } else { Rat::one() };
        prop_assert_eq!(rqp, rpq.scale(&sign));
        let lhs = resultant(&(&p * &h), &q, "x").unwrap();
        let rhs = &resultant(&p, &q, "x").unwrap() * &resultant(&h, &q, "x").unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn discriminant_of_product(p in univariate(3), q in univariate(3)) {
        // Disc(pq) = Disc(p) · Disc(q) · Res(p, q)² for the normalization
        // (−1)^{n(n−1)/2} Res(f, f′)/lc(f), whenever both degrees are ≥ 2.
        prop_assume!(p.degree_in("x").unwrap() >= 2 && q.degree_in("x").unwrap() >= 2);
        let lhs = discriminant(&(&p * &q), "x").unwrap();
        let r = resultant(&p, &q, "x").unwrap();
        let rhs = &(&discriminant(&p, "x").unwrap() * &discriminant(&q, "x").unwrap()) * &(&r * &r);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn multivariate_resultant_specializes(p in poly_in(XY, 4, 2), q in poly_in(XY, 4, 2), y0 in -3i64..=3) {
        // Res commutes with specialization when leading coefficients survive.
        prop_assume!(p.degree_in("x").unwrap_or(0) >= 1 && q.degree_in("x").unwrap_or(0) >= 1);
        let at = |f: &MPoly| f.eval_pairs(&[("y", Rat::from_int(y0))]);
        prop_assume!(!at(&p.lc_in("x")).is_zero() && !at(&q.lc_in("x")).is_zero());
        let r = resultant(&p, &q, "x").unwrap();
        let r0 = resultant(&at(&p), &at(&q), "x").unwrap();
        prop_assert_eq!(at(&r), r0);
    }

    #[test]
    fn factorization_reexpands(p in univariate(4), q in univariate(3), k in 1u32..=3) {
        let f = &p * &q.pow(k);
        let fac = factor_rational(&f, "x").unwrap();
        prop_assert_eq!(fac.expand(), f.clone());
        let total: u32 = fac.factors.iter().map(|(g, m)| g.degree_in("x").unwrap() * m).sum();
        prop_assert_eq!(total, f.degree_in("x").unwrap());
        for (g, _) in &fac.factors {
            prop_assert!(g.leading_coeff().unwrap().is_positive());
            prop_assert!(g.content().is_one());
        }
        let sq = squarefree_factor(&f, "x").unwrap();
        prop_assert_eq!(sq.expand(), f);
    }

    #[test]
    fn gcd_divides_both(a in poly_in(XY, 3, 2), b in poly_in(XY, 3, 2), c in poly_in(XY, 2, 2)) {
        prop_assume!(!c.is_zero());
        let pa = &a * &c;
        let pb = &b * &c;
        let g = gcd(&pa, &pb);
        if !pa.is_zero() {
            prop_assert!(pa.div_exact(&g).is_ok());
        }
        if !pb.is_zero() {
            prop_assert!(pb.div_exact(&g).is_ok());
        }
        if !pa.is_zero() && !pb.is_zero() && !c.is_constant() {
            prop_assert!(g.div_exact(&c.primitive()).is_ok());
        }
    }
}
