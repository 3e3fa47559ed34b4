//! Dense univariate polynomials with integer coefficients, used as the fast
//! path underneath resultants, squarefree decomposition and factorization.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rat::Rat;

/// Ascending coefficient vector with no trailing zeros; the zero polynomial
/// is the empty vector.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ZPoly(pub Vec<BigInt>);

impl ZPoly {
    pub fn new(mut c: Vec<BigInt>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        ZPoly(c)
    }

    pub fn from_i64(c: &[i64]) -> Self {
        ZPoly::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn one() -> Self {
        ZPoly(vec![BigInt::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; the zero polynomial reports `-1`.
    pub fn degree(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn lc(&self) -> BigInt {
        self.0.last().cloned().unwrap_or_default()
    }

    /// Clears denominators: returns `(c, q)` with `p = c · q`, `q` primitive
    /// with positive leading coefficient.
    pub fn from_rats(p: &[Rat]) -> (Rat, ZPoly) {
        let mut den = BigInt::one();
        for c in p {
            den = den.lcm(c.denom());
        }
        let ints: Vec<BigInt> = p.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        let z = ZPoly::new(ints);
        let (cont, prim) = z.content_primitive();
        (Rat::new(cont, den).expect("nonzero"), prim)
    }

    pub fn to_rats(&self) -> Vec<Rat> {
        self.0.iter().map(|c| Rat::from_int(c.clone())).collect()
    }

    /// Signed content (sign of the leading coefficient) and primitive part.
    pub fn content_primitive(&self) -> (BigInt, ZPoly) {
        if self.is_zero() {
            return (BigInt::one(), ZPoly::default());
        }
        let mut g = BigInt::zero();
        for c in &self.0 {
            g = g.gcd(c);
        }
        if self.lc().is_negative() {
            g = -g;
        }
        (g.clone(), ZPoly(self.0.iter().map(|c| c / &g).collect()))
    }

    pub fn primitive(&self) -> ZPoly {
        self.content_primitive().1
    }

    pub fn add(&self, o: &ZPoly) -> ZPoly {
        let n = self.0.len().max(o.0.len());
        let mut c = vec![BigInt::zero(); n];
        for (i, x) in self.0.iter().enumerate() {
            c[i] += x;
        }
        for (i, x) in o.0.iter().enumerate() {
            c[i] += x;
        }
        ZPoly::new(c)
    }

    pub fn neg(&self) -> ZPoly {
        ZPoly(self.0.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, o: &ZPoly) -> ZPoly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &ZPoly) -> ZPoly {
        if self.is_zero() || o.is_zero() {
            return ZPoly::default();
        }
        let mut c = vec![BigInt::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        ZPoly::new(c)
    }

    pub fn scale(&self, k: &BigInt) -> ZPoly {
        ZPoly::new(self.0.iter().map(|c| c * k).collect())
    }

    pub fn derivative(&self) -> ZPoly {
        ZPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Pseudo-remainder: `lc(b)^(deg a − deg b + 1) · a mod b`.
    pub fn prem(&self, b: &ZPoly) -> ZPoly {
        assert!(!b.is_zero(), "pseudo-division by zero");
        let mut r = self.clone();
        let db = b.degree();
        let lb = b.lc();
        if r.degree() < db {
            return r;
        }
        let mut steps = r.degree() - db + 1;
        while !r.is_zero() && r.degree() >= db {
            let shift = (r.degree() - db) as usize;
            let lr = r.lc();
            let mut c: Vec<BigInt> = r.0.iter().map(|x| x * &lb).collect();
            for (j, bj) in b.0.iter().enumerate() {
                c[j + shift] -= &lr * bj;
            }
            r = ZPoly::new(c);
            steps -= 1;
        }
        if steps > 0 {
            r = r.scale(&num_traits::pow::Pow::pow(&lb, steps as u32));
        }
        r
    }

    /// Exact division over the integers, if `b` divides `self` in ℤ[x].
    pub fn div_exact(&self, b: &ZPoly) -> Option<ZPoly> {
        if b.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(ZPoly::default());
        }
        if self.degree() < b.degree() {
            return None;
        }
        let db = b.degree() as usize;
        let lb = b.lc();
        let mut r = self.0.clone();
        let mut q = vec![BigInt::zero(); self.0.len() - db];
        for k in (0..q.len()).rev() {
            let top = &r[k + db];
            if top.is_zero() {
                continue;
            }
            let (qk, rem) = top.div_rem(&lb);
            if !rem.is_zero() {
                return None;
            }
            for (j, bj) in b.0.iter().enumerate() {
                r[k + j] -= &qk * bj;
            }
            q[k] = qk;
        }
        if r.iter().all(|x| x.is_zero()) {
            Some(ZPoly::new(q))
        } else {
            None
        }
    }

    /// Primitive gcd via the primitive polynomial remainder sequence,
    /// normalized to positive leading coefficient.
    pub fn gcd(&self, o: &ZPoly) -> ZPoly {
        if self.is_zero() {
            return o.primitive();
        }
        if o.is_zero() {
            return self.primitive();
        }
        let (ca, a) = self.content_primitive();
        let (cb, b) = o.content_primitive();
        let _ = (ca, cb);
        let (mut r0, mut r1) = if a.degree() >= b.degree() {
            (a, b)
        } else {
            (b, a)
        };
        loop {
            let r = r0.prem(&r1);
            if r.is_zero() {
                return r1.primitive();
            }
            if r.degree() == 0 {
                return ZPoly::one();
            }
            r0 = r1;
            r1 = r.primitive();
        }
    }

    /// Squarefree decomposition of a polynomial of positive degree:
    /// `self = c · Π aᵢ^i` with the `aᵢ` squarefree, pairwise coprime,
    /// primitive and of positive degree (gcd-based, Musser's scheme).
    pub fn squarefree(&self) -> Vec<(ZPoly, u32)> {
        let mut out = Vec::new();
        if self.degree() < 1 {
            return out;
        }
        let f = self.primitive();
        let mut a = f.gcd(&f.derivative());
        let mut b = f.div_exact(&a).expect("gcd divides").primitive();
        let mut i = 1;
        while b.degree() > 0 {
            let c = a.gcd(&b);
            let part = b.div_exact(&c).expect("gcd divides").primitive();
            if part.degree() > 0 {
                out.push((part, i));
            }
            a = a.div_exact(&c).expect("gcd divides").primitive();
            b = c;
            i += 1;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_of_products() {
        let a = ZPoly::from_i64(&[-1, 0, 1]); // x^2 - 1
        let b = ZPoly::from_i64(&[1, 2, 1]); // (x + 1)^2
        assert_eq!(a.gcd(&b), ZPoly::from_i64(&[1, 1]));
    }

    #[test]
    fn exact_division() {
        let a = ZPoly::from_i64(&[-1, 0, 1]);
        assert_eq!(
            a.div_exact(&ZPoly::from_i64(&[1, 1])),
            Some(ZPoly::from_i64(&[-1, 1]))
        );
        assert_eq!(a.div_exact(&ZPoly::from_i64(&[1, 2])), None);
    }

    #[test]
    fn yun_decomposition() {
        // (x - 1)^2 (x + 2) (3x + 1)^3
        let xm1 = ZPoly::from_i64(&[-1, 1]);
        let xp2 = ZPoly::from_i64(&[2, 1]);
        let t = ZPoly::from_i64(&[1, 3]);
        let f = xm1.mul(&xm1).mul(&xp2).mul(&t).mul(&t).mul(&t);
        let sf = f.squarefree();
        assert_eq!(sf, vec![(xp2, 1), (xm1, 2), (t, 3)]);
    }

    #[test]
    fn pseudo_remainder() {
        let a = ZPoly::from_i64(&[1, 0, 0, 1]);
        let b = ZPoly::from_i64(&[1, 2]);
        // 8·(x^3 + 1) mod (2x + 1) = 8·(1 - 1/8) = 7
        assert_eq!(a.prem(&b), ZPoly::from_i64(&[7]));
    }
}
