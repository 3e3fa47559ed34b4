//! Multivariate gcd (recursive primitive remainder sequences), squarefree
//! decomposition and univariate factorization over ℚ.

use serde::Serialize;

use crate::error::AlgError;
use crate::factor::factor_z;
use crate::mpoly::MPoly;
use crate::rat::Rat;
use crate::upoly::ZPoly;

/// `unit · Π factorᵢ^multᵢ`, each factor primitive with positive leading
/// coefficient under graded-lex order.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Factorization {
    pub unit: Rat,
    pub factors: Vec<(MPoly, u32)>,
}

impl Factorization {
    /// Multiplies everything back out.
    pub fn expand(&self) -> MPoly {
        let mut acc = MPoly::constant(self.unit.clone());
        for (f, m) in &self.factors {
            acc = &acc * &f.pow(*m);
        }
        acc
    }

    /// Degrees of the factors in `var`, repeated by multiplicity.
    pub fn degrees_in(&self, var: &str) -> Vec<(u32, u32)> {
        self.factors
            .iter()
            .map(|(f, m)| (f.degree_in(var).unwrap_or(0), *m))
            .collect()
    }
}

/// Main variable for recursion: the first listed variable that occurs.
fn main_var(a: &MPoly, b: &MPoly) -> Option<String> {
    let mut vars: Vec<String> = a.vars().to_vec();
    for v in b.vars() {
        if !vars.contains(v) {
            vars.push(v.clone());
        }
    }
    vars.into_iter()
        .find(|v| a.depends_on(v) || b.depends_on(v))
}

/// Pseudo-remainder in `var` over the coefficient ring ℚ[other vars].
fn prem_in(a: &MPoly, b: &MPoly, var: &str) -> MPoly {
    let db = b.degree_in(var).unwrap_or(0);
    let lb = b.lc_in(var);
    let x = MPoly::var(var);
    let mut r = a.clone();
    let mut steps = r.degree_in(var).map_or(0, |d| d as i64 - db as i64 + 1);
    while !r.is_zero() && r.degree_in(var).unwrap_or(0) >= db {
        let dr = r.degree_in(var).unwrap_or(0);
        let lr = r.lc_in(var);
        r = &(&r * &lb) - &(&(&lr * &x.pow(dr - db)) * b);
        steps -= 1;
    }
    if steps > 0 {
        r = &r * &lb.pow(steps as u32);
    }
    r
}

/// Content with respect to `var` (a polynomial free of `var`).
pub fn content_in(p: &MPoly, var: &str) -> MPoly {
    let mut g = MPoly::zero();
    for c in p.coeffs_in(var) {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, &c);
        if g.is_constant() {
            return MPoly::one();
        }
    }
    g
}

fn normalize(p: &MPoly) -> MPoly {
    if p.is_zero() {
        return p.clone();
    }
    if p.is_constant() {
        return MPoly::one();
    }
    p.primitive()
}

/// Greatest common divisor over ℚ, normalized to integer content 1 and a
/// positive graded-lex leading coefficient (constants normalize to 1).
pub fn gcd(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_zero() {
        return normalize(b);
    }
    if b.is_zero() {
        return normalize(a);
    }
    let Some(x) = main_var(a, b) else {
        return MPoly::one();
    };
    let univariate = a
        .used_vars()
        .iter()
        .chain(b.used_vars().iter())
        .all(|v| *v == x);
    if univariate {
        let (_, za) = ZPoly::from_rats(&a.to_univariate(&x).expect("univariate"));
        let (_, zb) = ZPoly::from_rats(&b.to_univariate(&x).expect("univariate"));
        let g = za.gcd(&zb);
        return normalize(&MPoly::from_univariate(&x, &g.to_rats()));
    }
    let ca = content_in(a, &x);
    let cb = content_in(b, &x);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let c = gcd(&ca, &cb);
    let (mut r0, mut r1) = if pa.degree_in(&x) >= pb.degree_in(&x) {
        (pa, pb)
    } else {
        (pb, pa)
    };
    let g = loop {
        if r1.degree_in(&x) == Some(0) {
            break MPoly::one();
        }
        let r = prem_in(&r0, &r1, &x);
        if r.is_zero() {
            let cont = content_in(&r1, &x);
            break r1.div_exact(&cont).expect("content divides");
        }
        if r.degree_in(&x) == Some(0) {
            break MPoly::one();
        }
        let cont = content_in(&r, &x);
        r0 = r1;
        r1 = r.div_exact(&cont).expect("content divides");
    };
    normalize(&(&c * &g))
}

fn check_nonzero(p: &MPoly) -> Result<(), AlgError> {
    if p.is_zero() {
        Err(AlgError::ZeroPolynomial)
    } else {
        Ok(())
    }
}

/// Squarefree decomposition with respect to `var`. The part of the content
/// free of `var` (if non-constant) is reported as one block of
/// multiplicity 1.
pub fn squarefree_factor(p: &MPoly, var: &str) -> Result<Factorization, AlgError> {
    check_nonzero(p)?;
    let mut factors: Vec<(MPoly, u32)> = Vec::new();
    if p.degree_in(var).unwrap_or(0) == 0 {
        let u = p.content();
        let prim = p.primitive();
        if !prim.is_constant() {
            factors.push((prim, 1));
        }
        return Ok(Factorization { unit: u, factors });
    }
    let cont = content_in(p, var);
    let f = p.div_exact(&cont).expect("content divides");
    if !cont.is_constant() {
        factors.push((normalize(&cont), 1));
    }
    let mut a = gcd(&f, &f.derivative(var));
    let mut b = normalize(&f.div_exact(&a).expect("gcd divides"));
    let mut i = 1;
    while b.degree_in(var).unwrap_or(0) > 0 {
        let c = gcd(&a, &b);
        let part = normalize(&b.div_exact(&c).expect("gcd divides"));
        if part.degree_in(var).unwrap_or(0) > 0 {
            factors.push((part, i));
        }
        a = a.div_exact(&c).expect("gcd divides");
        b = c;
        i += 1;
    }
    finish(p, factors)
}

fn finish(p: &MPoly, factors: Vec<(MPoly, u32)>) -> Result<Factorization, AlgError> {
    let mut prod = MPoly::one();
    for (f, m) in &factors {
        prod = &prod * &f.pow(*m);
    }
    let unit = p.div_exact(&prod)?.constant_value().ok_or_else(|| {
        AlgError::InexactDivision("factor product leaves a non-constant cofactor".into())
    })?;
    Ok(Factorization { unit, factors })
}

/// Complete factorization over ℚ of a polynomial univariate in `var`.
pub fn factor_rational(p: &MPoly, var: &str) -> Result<Factorization, AlgError> {
    check_nonzero(p)?;
    let coeffs = p.to_univariate(var)?;
    let (scale, z) = ZPoly::from_rats(&coeffs);
    let (k, fs) = factor_z(&z);
    let factors: Vec<(MPoly, u32)> = fs
        .into_iter()
        .map(|(g, m)| (MPoly::from_univariate(var, &g.to_rats()), m))
        .collect();
    Ok(Factorization {
        unit: scale * Rat::from_int(k),
        factors,
    })
}

/// Rational roots of a univariate polynomial, with multiplicity, ascending.
pub fn rational_roots(p: &MPoly, var: &str) -> Result<Vec<(Rat, u32)>, AlgError> {
    let f = factor_rational(p, var)?;
    let mut roots: Vec<(Rat, u32)> = f
        .factors
        .iter()
        .filter(|(g, _)| g.degree_in(var) == Some(1))
        .map(|(g, m)| {
            let c = g.to_univariate(var).expect("univariate");
            (-(&c[0] / &c[1]), *m)
        })
        .collect();
    roots.sort();
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> MPoly {
        s.parse().unwrap()
    }

    #[test]
    fn multivariate_gcd() {
        let a = p("(x + y)^2*(x - 2*y)*(y^2 + 1)");
        let b = p("(x + y)*(x + 3)*(y^2 + 1)");
        assert_eq!(gcd(&a, &b), p("(x + y)*(y^2 + 1)"));
        assert_eq!(gcd(&p("x + 1"), &p("y")), MPoly::one());
    }

    #[test]
    fn squarefree_blocks() {
        let f = p("(t - 1)^2*(t + 2)");
        let s = squarefree_factor(&f, "t").unwrap();
        assert_eq!(s.factors, vec![(p("t + 2"), 1), (p("t - 1"), 2)]);
        assert_eq!(s.expand(), f);
        let g = p("3*t^3 + t + 1");
        let s = squarefree_factor(&g, "t").unwrap();
        assert_eq!(s.factors.len(), 1);
        assert_eq!(s.factors[0].1, 1);
    }

    #[test]
    fn squarefree_with_parameters() {
        let f = p("a^2*(t - a)^3*(t + b)");
        let s = squarefree_factor(&f, "t").unwrap();
        assert_eq!(s.expand(), f);
        assert!(s
            .factors
            .iter()
            .any(|(g, m)| *m == 3 && (*g == p("t - a") || *g == p("a - t"))));
    }

    #[test]
    fn factor_over_q() {
        let f = factor_rational(&p("t^2 - 1"), "t").unwrap();
        assert_eq!(f.factors, vec![(p("t - 1"), 1), (p("t + 1"), 1)]);
        let f = factor_rational(&p("t^2 + 1"), "t").unwrap();
        assert_eq!(f.factors, vec![(p("t^2 + 1"), 1)]);
        let g = p("-2/3*(t^2 - 2)^2*(3*t + 1)");
        let f = factor_rational(&g, "t").unwrap();
        assert_eq!(f.expand(), g);
    }

    #[test]
    fn roots() {
        let r = rational_roots(&p("(2*t - 1)*(t + 3)^2*(t^2 + 1)"), "t").unwrap();
        assert_eq!(r, vec![(Rat::from_int(-3), 2), (crate::rat::rat(1, 2), 1)]);
    }
}
