//! Factorization of univariate integer polynomials (Zassenhaus): modular
//! factorization, quadratic Hensel lifting past the Mignotte bound, and
//! recombination of lifted factors by subset search.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::modp::{factor_squarefree, large_primes, FpPoly};
use crate::upoly::ZPoly;

/// Number of candidate primes examined; the one with the fewest modular
/// factors is used for lifting.
const PRIME_TRIALS: usize = 4;

fn modp(x: &BigInt, m: &BigInt) -> BigInt {
    let r = x % m;
    if r.is_negative() {
        r + m
    } else {
        r
    }
}

fn reduce(f: &ZPoly, m: &BigInt) -> ZPoly {
    ZPoly::new(f.0.iter().map(|c| modp(c, m)).collect())
}

fn symmetric(f: &ZPoly, m: &BigInt) -> ZPoly {
    let half = m >> 1;
    ZPoly::new(
        f.0.iter()
            .map(|c| {
                let r = modp(c, m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn mul_mod(a: &ZPoly, b: &ZPoly, m: &BigInt) -> ZPoly {
    reduce(&a.mul(b), m)
}

/// Division by a monic polynomial modulo `m`.
fn divrem_monic(a: &ZPoly, d: &ZPoly, m: &BigInt) -> (ZPoly, ZPoly) {
    debug_assert!(d.lc().is_one());
    let a = reduce(a, m);
    if a.degree() < d.degree() {
        return (ZPoly::default(), a);
    }
    let dd = d.degree() as usize;
    let mut r = a.0.clone();
    let mut q = vec![BigInt::zero(); r.len() - dd];
    for k in (0..q.len()).rev() {
        let qk = modp(&r[k + dd], m);
        if qk.is_zero() {
            continue;
        }
        for (j, dj) in d.0.iter().enumerate() {
            r[k + j] = modp(&(&r[k + j] - &qk * dj), m);
        }
        q[k] = qk;
    }
    (ZPoly::new(q), reduce(&ZPoly::new(r), m))
}

fn inverse_mod(a: &BigInt, m: &BigInt) -> BigInt {
    let e = modp(a, m).extended_gcd(m);
    assert!(e.gcd.is_one(), "leading coefficient not invertible");
    modp(&e.x, m)
}

/// One quadratic Hensel step (m → m²) for `f ≡ g·h`, `s·g + t·h ≡ 1`.
fn hensel_step(
    f: &ZPoly,
    g: &ZPoly,
    h: &ZPoly,
    s: &ZPoly,
    t: &ZPoly,
    m2: &BigInt,
) -> (ZPoly, ZPoly, ZPoly, ZPoly) {
    let e = reduce(&f.sub(&g.mul(h)), m2);
    let (q, r) = divrem_monic(&s.mul(&e), h, m2);
    let g2 = reduce(&g.add(&t.mul(&e)).add(&q.mul(g)), m2);
    let h2 = reduce(&h.add(&r), m2);
    let b = reduce(&s.mul(&g2).add(&t.mul(&h2)).sub(&ZPoly::one()), m2);
    let (c, d) = divrem_monic(&s.mul(&b), &h2, m2);
    let s2 = reduce(&s.sub(&d), m2);
    let t2 = reduce(&t.sub(&t.mul(&b)).sub(&c.mul(&g2)), m2);
    (g2, h2, s2, t2)
}

/// Lifts the monic modular factorization of `f̃ = lc⁻¹·f` to modulus
/// `p^(2^k) ≥ bound`; returns the lifted monic factors and the modulus.
fn hensel_lift(f: &ZPoly, factors: &[FpPoly], p: u64, bound: &BigInt) -> (Vec<ZPoly>, BigInt) {
    let pb = BigInt::from(p);
    let mut target_mod = pb.clone();
    while &target_mod <= bound {
        target_mod = &target_mod * &target_mod;
    }
    let lcinv = inverse_mod(&f.lc(), &target_mod);
    let mut current = reduce(&f.scale(&lcinv), &target_mod);
    let mut out = Vec::with_capacity(factors.len());
    for i in 0..factors.len() {
        if i + 1 == factors.len() {
            out.push(current.clone());
            break;
        }
        let g0 = &factors[i];
        let h0 = factors[i + 1..]
            .iter()
            .fold(FpPoly::one(p), |a, b| a.mul(b));
        let (_, s0, t0) = g0.ext_gcd(&h0);
        let (mut g, mut h, mut s, mut t) = (g0.to_z(), h0.to_z(), s0.to_z(), t0.to_z());
        let mut m = pb.clone();
        while m < target_mod {
            let m2 = &m * &m;
            let f_m = reduce(&current, &m2);
            let next = hensel_step(&f_m, &g, &h, &s, &t, &m2);
            g = next.0;
            h = next.1;
            s = next.2;
            t = next.3;
            m = m2;
        }
        out.push(g);
        current = h;
    }
    (out, target_mod)
}

/// Coefficient bound for factors of `f` scaled by `lc(f)` (Mignotte).
fn factor_bound(f: &ZPoly) -> BigInt {
    let n = f.degree().max(0) as u32;
    let norm2: BigInt = f.0.iter().map(|c| c * c).sum();
    let norm = norm2.sqrt() + BigInt::one();
    let two_n = BigInt::one() << n;
    BigInt::from(2) * f.lc().abs() * two_n * norm
}

fn choose_prime(f: &ZPoly) -> (u64, Vec<FpPoly>) {
    let mut best: Option<(u64, Vec<FpPoly>)> = None;
    let mut tried = 0;
    let lc = f.lc();
    for p in large_primes() {
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = FpPoly::from_z(f, p);
        if fp.degree() != f.degree() || !fp.is_squarefree() {
            continue;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(p);
        let fs = factor_squarefree(&fp.monic(), &mut rng);
        let better = best.as_ref().is_none_or(|(_, b)| fs.len() < b.len());
        if better {
            best = Some((p, fs));
        }
        tried += 1;
        if tried >= PRIME_TRIALS || best.as_ref().is_some_and(|(_, b)| b.len() == 1) {
            break;
        }
    }
    best.expect("some prime is good for a squarefree polynomial")
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Irreducible factors of a primitive squarefree polynomial of positive
/// degree with positive leading coefficient.
pub fn factor_squarefree_z(f: &ZPoly) -> Vec<ZPoly> {
    if f.degree() <= 1 {
        return vec![f.clone()];
    }
    let (p, modular) = choose_prime(f);
    if modular.len() == 1 {
        return vec![f.clone()];
    }
    let bound = factor_bound(f);
    let (mut lifted, m) = hensel_lift(f, &modular, p, &bound);
    let mut rest = f.clone();
    let mut found = Vec::new();
    let mut k = 1;
    while 2 * k <= lifted.len() {
        let mut progress = false;
        for subset in subsets(lifted.len(), k) {
            let lc = rest.lc();
            let prod = subset
                .iter()
                .fold(ZPoly(vec![lc.clone()]), |a, &i| mul_mod(&a, &lifted[i], &m));
            let cand = symmetric(&prod, &m).primitive();
            if let Some(q) = rest.div_exact(&cand) {
                found.push(cand);
                rest = q.primitive();
                let keep: Vec<ZPoly> = lifted
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, g)| g.clone())
                    .collect();
                lifted = keep;
                progress = true;
                break;
            }
        }
        if !progress {
            k += 1;
        }
    }
    if rest.degree() > 0 {
        found.push(rest.primitive());
    }
    found
}

/// Full factorization of a nonzero integer polynomial: returns the signed
/// integer content and primitive irreducible factors with multiplicities.
pub fn factor_z(f: &ZPoly) -> (BigInt, Vec<(ZPoly, u32)>) {
    let (content, prim) = f.content_primitive();
    let mut out = Vec::new();
    if prim.degree() < 1 {
        return (f.lc(), out);
    }
    for (part, mult) in prim.squarefree() {
        for g in factor_squarefree_z(&part) {
            out.push((g, mult));
        }
    }
    out.sort_by(|a, b| {
        a.0.degree()
            .cmp(&b.0.degree())
            .then_with(|| a.0 .0.iter().rev().cmp(b.0 .0.iter().rev()))
    });
    let mut expanded = ZPoly::one();
    for (g, m) in &out {
        for _ in 0..*m {
            expanded = expanded.mul(g);
        }
    }
    let unit = prim.div_exact(&expanded).expect("factors divide");
    debug_assert_eq!(unit.degree(), 0);
    (content * unit.lc(), out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn expand(c: &BigInt, fs: &[(ZPoly, u32)]) -> ZPoly {
        let mut e = ZPoly(vec![c.clone()]);
        for (g, m) in fs {
            for _ in 0..*m {
                e = e.mul(g);
            }
        }
        e
    }

    #[test]
    fn splits_difference_of_squares() {
        let f = ZPoly::from_i64(&[-1, 0, 1]);
        let (c, fs) = factor_z(&f);
        assert_eq!(fs.len(), 2);
        assert_eq!(expand(&c, &fs), f);
    }

    #[test]
    fn keeps_irreducible_quadratic() {
        let f = ZPoly::from_i64(&[1, 0, 1]);
        let (_, fs) = factor_z(&f);
        assert_eq!(fs, vec![(f, 1)]);
    }

    #[test]
    fn swinnerton_dyer_like_recombination() {
        // x^4 + 1 is irreducible over Q but splits modulo every prime.
        let f = ZPoly::from_i64(&[1, 0, 0, 0, 1]);
        let (_, fs) = factor_z(&f);
        assert_eq!(fs, vec![(f, 1)]);
    }

    #[test]
    fn mixed_product_with_large_coefficients() {
        let a = ZPoly::from_i64(&[-123456789, 0, 0, 987654321]);
        let b = ZPoly::from_i64(&[5, -7, 11]);
        let c = ZPoly::from_i64(&[3, 2]);
        let f = a.mul(&b).mul(&c).mul(&c).scale(&BigInt::from(-6));
        let (k, fs) = factor_z(&f);
        assert_eq!(expand(&k, &fs), f);
        let degs: Vec<isize> = fs.iter().map(|(g, _)| g.degree()).collect();
        assert_eq!(degs, vec![1, 2, 3]);
        assert_eq!(fs[0].1, 2);
    }
}
