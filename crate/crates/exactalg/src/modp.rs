//! Polynomial arithmetic over a prime field 𝔽ₚ with p < 2³¹, plus
//! distinct-degree and equal-degree (Cantor–Zassenhaus) factorization.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::upoly::ZPoly;

/// Ascending coefficients in `[0, p)`, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpPoly {
    pub p: u64,
    pub c: Vec<u64>,
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

impl FpPoly {
    pub fn new(p: u64, mut c: Vec<u64>) -> Self {
        while c.last() == Some(&0) {
            c.pop();
        }
        FpPoly { p, c }
    }

    pub fn from_z(z: &ZPoly, p: u64) -> Self {
        let pb = BigInt::from(p);
        let c =
            z.0.iter()
                .map(|x| {
                    let r = ((x % &pb) + &pb) % &pb;
                    r.to_u64().expect("reduced")
                })
                .collect();
        FpPoly::new(p, c)
    }

    pub fn to_z(&self) -> ZPoly {
        ZPoly::new(self.c.iter().map(|&x| BigInt::from(x)).collect())
    }

    fn x(p: u64) -> Self {
        FpPoly::new(p, vec![0, 1])
    }

    pub fn one(p: u64) -> Self {
        FpPoly::new(p, vec![1])
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> isize {
        self.c.len() as isize - 1
    }

    pub fn lc(&self) -> u64 {
        *self.c.last().unwrap_or(&0)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = inv_mod(self.lc(), self.p);
        FpPoly::new(self.p, self.c.iter().map(|&x| x * inv % self.p).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let mut c = vec![0u64; n];
        for (i, x) in c.iter_mut().enumerate() {
            let a = self.c.get(i).copied().unwrap_or(0);
            let b = o.c.get(i).copied().unwrap_or(0);
            *x = (a + b) % self.p;
        }
        FpPoly::new(self.p, c)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let mut c = vec![0u64; n];
        for (i, x) in c.iter_mut().enumerate() {
            let a = self.c.get(i).copied().unwrap_or(0);
            let b = o.c.get(i).copied().unwrap_or(0);
            *x = (a + self.p - b) % self.p;
        }
        FpPoly::new(self.p, c)
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return FpPoly::new(self.p, Vec::new());
        }
        let mut c = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                c[i + j] = (c[i + j] + a * b) % self.p;
            }
        }
        FpPoly::new(self.p, c)
    }

    pub fn scale(&self, k: u64) -> Self {
        FpPoly::new(
            self.p,
            self.c.iter().map(|&x| x * (k % self.p) % self.p).collect(),
        )
    }

    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial mod p");
        let p = self.p;
        let mut r = self.c.clone();
        if self.degree() < d.degree() {
            return (FpPoly::new(p, Vec::new()), self.clone());
        }
        let dd = d.degree() as usize;
        let inv = inv_mod(d.lc(), p);
        let mut q = vec![0u64; r.len() - dd];
        for k in (0..q.len()).rev() {
            let top = r[k + dd];
            if top == 0 {
                continue;
            }
            let qk = top * inv % p;
            for (j, &dj) in d.c.iter().enumerate() {
                r[k + j] = (r[k + j] + p - qk * dj % p) % p;
            }
            q[k] = qk;
        }
        (FpPoly::new(p, q), FpPoly::new(p, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: returns `(g, s, t)` with `s·self + t·o = g`, `g` monic.
    pub fn ext_gcd(&self, o: &Self) -> (Self, Self, Self) {
        let p = self.p;
        let zero = FpPoly::new(p, Vec::new());
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (FpPoly::one(p), zero.clone());
        let (mut t0, mut t1) = (zero.clone(), FpPoly::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        let inv = inv_mod(r0.lc(), p);
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    pub fn derivative(&self) -> Self {
        FpPoly::new(
            self.p,
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &x)| (i as u64 % self.p) * x % self.p)
                .collect(),
        )
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, e: &BigUint, m: &Self) -> Self {
        let mut result = FpPoly::one(self.p).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            result = result.mul(&result).rem(m);
            if e.bit(i) {
                result = result.mul(&base).rem(m);
            }
        }
        result
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == 0
    }
}

/// Distinct-degree factorization of a monic squarefree polynomial:
/// pairs `(product of all irreducible factors of degree d, d)`.
pub fn distinct_degree(f: &FpPoly) -> Vec<(FpPoly, usize)> {
    let p = f.p;
    let pe = BigUint::from(p);
    let mut out = Vec::new();
    let mut g = f.clone();
    let x = FpPoly::x(p);
    let mut h = x.rem(&g);
    let mut d = 1usize;
    while g.degree() >= 2 * d as isize {
        h = h.pow_mod(&pe, &g);
        let gd = h.sub(&x).gcd(&g);
        if gd.degree() > 0 {
            g = g.divrem(&gd).0;
            h = h.rem(&g);
            out.push((gd, d));
        }
        d += 1;
    }
    if g.degree() > 0 {
        let dg = g.degree() as usize;
        out.push((g, dg));
    }
    out
}

/// Splits a monic product of irreducibles of common degree `d` (odd p).
pub fn equal_degree(f: &FpPoly, d: usize, rng: &mut ChaCha8Rng) -> Vec<FpPoly> {
    let n = f.degree() as usize;
    if n == d {
        return vec![f.clone()];
    }
    let p = f.p;
    let exp = (BigUint::from(p).pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
    loop {
        let a = FpPoly::new(p, (0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.degree() < 1 {
            continue;
        }
        let g = a.gcd(f);
        let split = if g.degree() > 0 {
            g
        } else {
            let t = a.pow_mod(&exp, f).sub(&FpPoly::one(p));
            t.gcd(f)
        };
        if split.degree() > 0 && split.degree() < f.degree() {
            let other = f.divrem(&split).0.monic();
            let mut out = equal_degree(&split.monic(), d, rng);
            out.extend(equal_degree(&other, d, rng));
            return out;
        }
    }
}

/// Complete factorization of a monic squarefree polynomial into monic
/// irreducibles.
pub fn factor_squarefree(f: &FpPoly, rng: &mut ChaCha8Rng) -> Vec<FpPoly> {
    let mut out = Vec::new();
    for (g, d) in distinct_degree(f) {
        out.extend(equal_degree(&g, d, rng));
    }
    out.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.c.cmp(&b.c)));
    out
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `k`-th prime below `2^31` counting downwards (deterministic sequence).
pub fn large_primes() -> impl Iterator<Item = u64> {
    (1u64..(1 << 31)).rev().step_by(2).filter(|&n| is_prime(n))
}

/// Zero check helper used by the lifting code.
pub fn is_zero_big(x: &BigInt) -> bool {
    x.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn factor_small() {
        let p = 101;
        // (x - 1)(x + 1)(x^2 + 2) mod 101
        let f = FpPoly::new(p, vec![1, 0, 2])
            .mul(&FpPoly::new(p, vec![p - 1, 1]))
            .mul(&FpPoly::new(p, vec![1, 1]));
        let f = f.mul(&FpPoly::new(p, vec![2, 0, 1]));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let fs = factor_squarefree(&f.monic(), &mut rng);
        let prod = fs.iter().fold(FpPoly::one(p), |a, b| a.mul(b));
        assert_eq!(prod, f.monic());
        assert!(fs.iter().all(|g| g.degree() <= 2));
    }

    #[test]
    fn ext_gcd_identity() {
        let p = 7;
        let a = FpPoly::new(p, vec![1, 2, 3]);
        let b = FpPoly::new(p, vec![4, 1]);
        let (g, s, t) = a.ext_gcd(&b);
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
    }
}
