//! Sylvester resultants by fraction-free (Bareiss) elimination and
//! discriminants derived from them.
//!
//! Sign convention: `Res(p, q)` is the determinant of the Sylvester matrix
//! whose first `deg q` rows carry the coefficients of `p` (leading
//! coefficient first). Hence `Res(x − a, x − b) = a − b`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::AlgError;
use crate::mpoly::MPoly;
use crate::rat::Rat;

/// The ring operations Bareiss elimination needs.
pub trait BareissRing: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn mul(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Exact division; the elimination guarantees divisibility.
    fn div_exact(&self, o: &Self) -> Self;
}

impl BareissRing for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, o: &Self) -> Self {
        let (q, r) = self.div_rem(o);
        assert!(Zero::is_zero(&r), "Bareiss pivot division is exact");
        q
    }
}

impl BareissRing for MPoly {
    fn zero() -> Self {
        MPoly::zero()
    }
    fn one() -> Self {
        MPoly::one()
    }
    fn is_zero(&self) -> bool {
        MPoly::is_zero(self)
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, o: &Self) -> Self {
        MPoly::div_exact(self, o).expect("Bareiss pivot division is exact")
    }
}

/// Determinant by Bareiss fraction-free elimination with row pivoting.
pub fn bareiss_det<R: BareissRing>(mut m: Vec<Vec<R>>) -> R {
    let n = m.len();
    if n == 0 {
        return R::one();
    }
    let mut sign_flip = false;
    let mut prev = R::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign_flip = !sign_flip;
                }
                None => return R::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = v.div_exact(&prev);
            }
            m[i][k] = R::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign_flip {
        d.neg()
    } else {
        d
    }
}

/// Sylvester matrix from descending coefficient lists.
pub fn sylvester<R: BareissRing>(p: &[R], q: &[R]) -> Vec<Vec<R>> {
    let m = p.len() - 1;
    let n = q.len() - 1;
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![R::zero(); size];
        for (j, c) in p.iter().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![R::zero(); size];
        for (j, c) in q.iter().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    rows
}

fn check_degree(p: &MPoly, var: &str, needed: u32) -> Result<u32, AlgError> {
    let d = p.degree_in(var).unwrap_or(0);
    if p.is_zero() || d < needed {
        return Err(AlgError::DegreeTooLow {
            var: var.to_string(),
            needed,
            found: d,
        });
    }
    Ok(d)
}

/// `Res_var(p, q)` for polynomials of positive degree in `var`.
pub fn resultant(p: &MPoly, q: &MPoly, var: &str) -> Result<MPoly, AlgError> {
    let dp = check_degree(p, var, 1)?;
    let dq = check_degree(q, var, 1)?;
    let (pi, cp) = p.clear_denominators();
    let (qi, cq) = q.clear_denominators();
    // Res(p, q) = Res(cp·p, cq·q) / (cp^deg q · cq^deg p)
    let scale = Rat::new(
        <BigInt as One>::one(),
        num_traits::pow::Pow::pow(&cp, dq) * num_traits::pow::Pow::pow(&cq, dp),
    )?;
    let univariate =
        pi.used_vars().iter().all(|v| v == var) && qi.used_vars().iter().all(|v| v == var);
    if univariate {
        let to_ints = |f: &MPoly| -> Vec<BigInt> {
            f.to_univariate(var)
                .expect("univariate")
                .into_iter()
                .rev()
                .map(|c| c.numer().clone())
                .collect()
        };
        let det = bareiss_det(sylvester(&to_ints(&pi), &to_ints(&qi)));
        return Ok(MPoly::constant(Rat::from_int(det) * scale));
    }
    let desc = |f: &MPoly| -> Vec<MPoly> { f.coeffs_in(var).into_iter().rev().collect() };
    let det = bareiss_det(sylvester(&desc(&pi), &desc(&qi)));
    let mut out = det.scale(&scale);
    if let Some(i) = out.var_index(var) {
        let _ = i;
        out = out.trim_vars();
    }
    Ok(out)
}

/// `Disc_var(p) = (−1)^(n(n−1)/2) · Res(p, ∂p) / lc(p)`, with the final
/// division checked for exactness.
pub fn discriminant(p: &MPoly, var: &str) -> Result<MPoly, AlgError> {
    let n = check_degree(p, var, 2)?;
    let r = resultant(p, &p.derivative(var), var)?;
    let lc = p.lc_in(var);
    let q = r.div_exact(&lc).map_err(|_| {
        AlgError::InexactDivision("resultant not divisible by leading coefficient".into())
    })?;
    let sign = if (n as u64 * (n as u64 - 1) / 2) % 2 == 1 {
        -Rat::one()
    } else {
        Rat::one()
    };
    Ok(q.scale(&sign))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn p(s: &str) -> MPoly {
        s.parse().unwrap()
    }

    #[test]
    fn sylvester_three_by_three() {
        // Res_x(x^2 - 1, x - 2): det [[1,0,-1],[1,-2,0],[0,1,-2]] = 3
        let r = resultant(&p("x^2 - 1"), &p("x - 2"), "x").unwrap();
        assert_eq!(r, MPoly::int(3));
    }

    #[test]
    fn common_root_gives_zero() {
        let r = resultant(&p("(x - 3)*(x + 1)"), &p("(x - 3)*(2*x + 5)"), "x").unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn linear_sign_convention() {
        let r = resultant(&p("t - a"), &p("t - b"), "t").unwrap();
        assert_eq!(r, p("a - b"));
    }

    #[test]
    fn quadratic_discriminant() {
        let d = discriminant(&p("x^2 + b*x + c"), "x").unwrap();
        assert_eq!(d, p("b^2 - 4*c"));
        let d = discriminant(&p("(x - 1)^2"), "x").unwrap();
        assert!(d.is_zero());
    }

    #[test]
    fn cubic_discriminant() {
        let d = discriminant(&p("x^3 + a*x + b"), "x").unwrap();
        assert_eq!(d, p("-4*a^3 - 27*b^2"));
    }

    #[test]
    fn rational_coefficients() {
        let r = resultant(&p("1/2*x - 1"), &p("x^2 - 3"), "x").unwrap();
        // (1/2)^2 · (2^2 - 3)
        assert_eq!(r, MPoly::constant(rat(1, 4)));
    }

    #[test]
    fn degree_zero_is_usage_error() {
        assert!(resultant(&p("y"), &p("x - 1"), "x").is_err());
        assert!(discriminant(&p("x + 1"), "x").is_err());
    }
}
