//! Sparse multivariate polynomials over the rationals.
//!
//! Terms are kept in a map keyed by exponent vectors ordered graded
//! lexicographically (total degree first, then lexicographic with the first
//! variable most significant). Binary operations on polynomials with
//! different variable lists first extend both operands to the union of the
//! lists, keeping the left operand's order and appending new names.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::AlgError;
use crate::rat::Rat;

/// Exponent vector with graded-lexicographic order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| {
                    a.checked_add(*b)
                        .expect("exponent overflow in monomial product")
                })
                .collect(),
        )
    }

    /// `self / other` when `other` divides `self`.
    fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A sparse polynomial with rational coefficients over named variables.
#[derive(Clone, Default)]
pub struct MPoly {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, Rat>,
}

impl MPoly {
    /// The zero polynomial over no variables.
    pub fn zero() -> Self {
        MPoly::default()
    }

    pub fn one() -> Self {
        MPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        let mut p = MPoly::zero();
        if !c.is_zero() {
            p.terms.insert(Monomial(Vec::new()), c);
        }
        p
    }

    pub fn int(n: i64) -> Self {
        MPoly::constant(Rat::from_int(n))
    }

    /// The polynomial consisting of a single variable.
    pub fn var(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial(vec![1]), Rat::one());
        MPoly {
            vars: vec![name.to_string()],
            terms,
        }
    }

    /// Builds a polynomial from explicit terms; zero coefficients are dropped
    /// and repeated exponents are summed.
    pub fn from_terms(
        vars: Vec<String>,
        terms: impl IntoIterator<Item = (Vec<u32>, Rat)>,
    ) -> Result<Self, AlgError> {
        let n = vars.len();
        let mut map: BTreeMap<Monomial, Rat> = BTreeMap::new();
        for (e, c) in terms {
            if e.len() != n {
                return Err(AlgError::Parse(format!(
                    "exponent vector of length {} for {} variables",
                    e.len(),
                    n
                )));
            }
            add_term(&mut map, Monomial(e), c);
        }
        Ok(MPoly { vars, terms: map })
    }

    /// Univariate polynomial from ascending coefficients.
    pub fn from_univariate(var: &str, coeffs: &[Rat]) -> Self {
        let mut terms = BTreeMap::new();
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                terms.insert(Monomial(vec![i as u32]), c.clone());
            }
        }
        MPoly {
            vars: vec![var.to_string()],
            terms,
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    /// The value of a constant polynomial.
    pub fn constant_value(&self) -> Option<Rat> {
        if !self.is_constant() {
            return None;
        }
        Some(
            self.terms
                .values()
                .next()
                .cloned()
                .unwrap_or_else(Rat::zero),
        )
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Whether `name` occurs with positive exponent in some term.
    pub fn depends_on(&self, name: &str) -> bool {
        match self.var_index(name) {
            Some(i) => self.terms.keys().any(|m| m.0[i] > 0),
            None => false,
        }
    }

    /// Variables that actually occur, in list order.
    pub fn used_vars(&self) -> Vec<String> {
        self.vars
            .iter()
            .filter(|v| self.depends_on(v))
            .cloned()
            .collect()
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Degree in one variable; `None` for the zero polynomial.
    pub fn degree_in(&self, name: &str) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        Some(match self.var_index(name) {
            Some(i) => self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0),
            None => 0,
        })
    }

    /// Leading term under graded-lex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Option<&Rat> {
        self.leading_term().map(|(_, c)| c)
    }

    /// Re-expresses the polynomial over a superset of its variables.
    pub fn extend_to(&self, vars: &[String]) -> Result<MPoly, AlgError> {
        if vars == self.vars.as_slice() {
            return Ok(self.clone());
        }
        let mut map = Vec::with_capacity(self.vars.len());
        for v in &self.vars {
            match vars.iter().position(|w| w == v) {
                Some(j) => map.push(j),
                None => {
                    if self.depends_on(v) {
                        return Err(AlgError::UnknownVariable(v.clone()));
                    }
                    map.push(usize::MAX);
                }
            }
        }
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut e = vec![0u32; vars.len()];
            for (i, &x) in m.0.iter().enumerate() {
                if map[i] != usize::MAX {
                    e[map[i]] = x;
                }
            }
            terms.insert(Monomial(e), c.clone());
        }
        Ok(MPoly {
            vars: vars.to_vec(),
            terms,
        })
    }

    /// Drops variables that do not occur.
    pub fn trim_vars(&self) -> MPoly {
        let used = self.used_vars();
        self.extend_to(&used).expect("used variables are kept")
    }

    /// Reorders/extends to a canonical variable list (used for display and
    /// comparison across differently built values).
    pub fn with_vars(&self, vars: &[&str]) -> Result<MPoly, AlgError> {
        let v: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        self.extend_to(&v)
    }

    fn union_vars(&self, other: &MPoly) -> Vec<String> {
        let mut vars = self.vars.clone();
        for v in &other.vars {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        }
        vars
    }

    fn aligned(&self, other: &MPoly) -> (MPoly, MPoly) {
        if self.vars == other.vars {
            return (self.clone(), other.clone());
        }
        let vars = self.union_vars(other);
        (
            self.extend_to(&vars).expect("union contains all"),
            other.extend_to(&vars).expect("union contains all"),
        )
    }

    pub fn scale(&self, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly {
                vars: self.vars.clone(),
                terms: BTreeMap::new(),
            };
        }
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    fn add_impl(&self, other: &MPoly, sign: bool) -> MPoly {
        let (mut a, b) = if self.vars == other.vars {
            (self.clone(), std::borrow::Cow::Borrowed(other))
        } else {
            let (a, b) = self.aligned(other);
            (a, std::borrow::Cow::Owned(b))
        };
        for (m, c) in &b.terms {
            let c = if sign { c.clone() } else { -c };
            add_term(&mut a.terms, m.clone(), c);
        }
        a
    }

    fn mul_impl(&self, other: &MPoly, budget: Option<usize>) -> Result<MPoly, AlgError> {
        let (a, b) = self.aligned(other);
        if let Some(limit) = budget {
            if a.terms.len().saturating_mul(b.terms.len()) > limit {
                return Err(AlgError::BudgetExceeded(limit));
            }
        }
        let mut acc: HashMap<Monomial, Rat> = HashMap::new();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match acc.get_mut(&m) {
                    Some(x) => *x += &c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(MPoly {
            vars: a.vars,
            terms,
        })
    }

    /// Product that refuses to run when the naive term count exceeds `budget`.
    pub fn mul_bounded(&self, other: &MPoly, budget: usize) -> Result<MPoly, AlgError> {
        self.mul_impl(other, Some(budget))
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut result = MPoly::one().extend_to(&self.vars).expect("constant");
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Partial derivative.
    pub fn derivative(&self, name: &str) -> MPoly {
        let Some(i) = self.var_index(name) else {
            return MPoly {
                vars: self.vars.clone(),
                terms: BTreeMap::new(),
            };
        };
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            if m.0[i] > 0 {
                let mut e = m.clone();
                e.0[i] -= 1;
                terms.insert(e, c * &Rat::from_int(m.0[i] as i64));
            }
        }
        MPoly {
            vars: self.vars.clone(),
            terms,
        }
    }

    /// Coefficients with respect to one variable, lowest power first. The
    /// coefficient polynomials keep the full variable list.
    pub fn coeffs_in(&self, name: &str) -> Vec<MPoly> {
        let deg = self.degree_in(name).unwrap_or(0) as usize;
        let mut out = vec![
            MPoly {
                vars: self.vars.clone(),
                terms: BTreeMap::new()
            };
            deg + 1
        ];
        match self.var_index(name) {
            None => {
                out[0] = self.clone();
            }
            Some(i) => {
                for (m, c) in &self.terms {
                    let k = m.0[i] as usize;
                    let mut e = m.clone();
                    e.0[i] = 0;
                    out[k].terms.insert(e, c.clone());
                }
            }
        }
        out
    }

    /// Inverse of [`coeffs_in`](Self::coeffs_in).
    pub fn from_coeffs_in(name: &str, coeffs: &[MPoly]) -> MPoly {
        let x = MPoly::var(name);
        let mut acc = MPoly::zero();
        let mut xp = MPoly::one();
        for c in coeffs {
            if !c.is_zero() {
                acc = &acc + &(c * &xp);
            }
            xp = &xp * &x;
        }
        acc
    }

    /// Leading coefficient with respect to one variable.
    pub fn lc_in(&self, name: &str) -> MPoly {
        self.coeffs_in(name).pop().unwrap_or_default()
    }

    /// Dense ascending coefficient list, if the polynomial involves no
    /// variable other than `name`.
    pub fn to_univariate(&self, name: &str) -> Result<Vec<Rat>, AlgError> {
        if self.is_zero() {
            return Ok(Vec::new());
        }
        let idx = self.var_index(name);
        let deg = self.degree_in(name).unwrap_or(0) as usize;
        let mut out = vec![Rat::zero(); deg + 1];
        for (m, c) in &self.terms {
            let k = match idx {
                Some(i) => m.0[i],
                None => 0,
            };
            if m.degree() != k as u64 {
                return Err(AlgError::NotUnivariate(name.to_string()));
            }
            out[k as usize] = c.clone();
        }
        Ok(out)
    }

    /// Evaluates a subset of variables at rational values; the evaluated
    /// variables are removed from the result's variable list.
    pub fn eval(&self, values: &HashMap<String, Rat>) -> MPoly {
        let keep: Vec<usize> = (0..self.vars.len())
            .filter(|&i| !values.contains_key(&self.vars[i]))
            .collect();
        let vars: Vec<String> = keep.iter().map(|&i| self.vars[i].clone()).collect();
        let mut powers: HashMap<(usize, u32), Rat> = HashMap::new();
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut coef = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if let Some(v) = values.get(&self.vars[i]) {
                    let p = powers
                        .entry((i, e))
                        .or_insert_with(|| v.pow(e as i64).expect("nonnegative exponent"));
                    coef = &coef * &*p;
                }
            }
            let e: Vec<u32> = keep.iter().map(|&i| m.0[i]).collect();
            add_term(&mut terms, Monomial(e), coef);
        }
        MPoly { vars, terms }
    }

    /// Evaluates at rational values given as `(name, value)` pairs.
    pub fn eval_pairs(&self, values: &[(&str, Rat)]) -> MPoly {
        let map: HashMap<String, Rat> = values
            .iter()
            .map(|(k, v)| (k.to_string(), v.clone()))
            .collect();
        self.eval(&map)
    }

    /// Full evaluation to a rational number.
    pub fn eval_rat(&self, values: &HashMap<String, Rat>) -> Result<Rat, AlgError> {
        let r = self.eval(values);
        match r.constant_value() {
            Some(c) => Ok(c),
            None => Err(AlgError::UnknownVariable(r.used_vars().join(","))),
        }
    }

    /// Simultaneous substitution of polynomials for variables. Unbound
    /// variables pass through unchanged.
    pub fn substitute(&self, bindings: &HashMap<String, MPoly>) -> Result<MPoly, AlgError> {
        self.substitute_bounded(bindings, None)
    }

    /// Substitution that aborts with [`AlgError::BudgetExceeded`] once any
    /// intermediate result exceeds `budget` terms.
    pub fn substitute_bounded(
        &self,
        bindings: &HashMap<String, MPoly>,
        budget: Option<usize>,
    ) -> Result<MPoly, AlgError> {
        for k in bindings.keys() {
            if self.var_index(k).is_none() {
                return Err(AlgError::UnknownVariable(k.clone()));
            }
        }
        let mut out_vars: Vec<String> = self
            .vars
            .iter()
            .filter(|v| !bindings.contains_key(*v))
            .cloned()
            .collect();
        for v in &self.vars {
            if let Some(img) = bindings.get(v) {
                for w in &img.vars {
                    if !out_vars.contains(w) {
                        out_vars.push(w.clone());
                    }
                }
            }
        }
        let images: Vec<Option<MPoly>> = self
            .vars
            .iter()
            .map(|v| bindings.get(v).map(|p| p.extend_to(&out_vars)).transpose())
            .collect::<Result<_, _>>()?;
        let passthrough: Vec<Option<usize>> = self
            .vars
            .iter()
            .map(|v| {
                if bindings.contains_key(v) {
                    None
                } else {
                    out_vars.iter().position(|w| w == v)
                }
            })
            .collect();

        let mut cache: HashMap<(usize, u32), MPoly> = HashMap::new();
        let mut acc: BTreeMap<Monomial, Rat> = BTreeMap::new();
        let mut acc_poly: Option<MPoly> = None;
        for (m, c) in &self.terms {
            let mut base = vec![0u32; out_vars.len()];
            let mut factor: Option<MPoly> = None;
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match (&images[i], passthrough[i]) {
                    (Some(img), _) => {
                        let p = cache.entry((i, e)).or_insert_with(|| img.pow(e)).clone();
                        factor = Some(match factor {
                            None => p,
                            Some(f) => match budget {
                                Some(b) => f.mul_bounded(&p, b)?,
                                None => &f * &p,
                            },
                        });
                    }
                    (None, Some(j)) => base[j] += e,
                    (None, None) => unreachable!("variable is either bound or passed through"),
                }
            }
            let mono = MPoly {
                vars: out_vars.clone(),
                terms: std::iter::once((Monomial(base), c.clone())).collect(),
            };
            match factor {
                None => {
                    for (mm, cc) in mono.terms {
                        add_term(&mut acc, mm, cc);
                    }
                }
                Some(f) => {
                    let prod = &f * &mono;
                    let sum = match acc_poly.take() {
                        None => prod,
                        Some(a) => &a + &prod,
                    };
                    if let Some(b) = budget {
                        if sum.num_terms() > b {
                            return Err(AlgError::BudgetExceeded(b));
                        }
                    }
                    acc_poly = Some(sum);
                }
            }
        }
        let mut result = MPoly {
            vars: out_vars,
            terms: acc,
        };
        if let Some(p) = acc_poly {
            result = &result + &p;
        }
        Ok(result)
    }

    /// Substitution given as `(name, image)` pairs.
    pub fn subs(&self, pairs: &[(&str, MPoly)]) -> Result<MPoly, AlgError> {
        let map: HashMap<String, MPoly> = pairs
            .iter()
            .map(|(k, v)| (k.to_string(), v.clone()))
            .collect();
        self.substitute(&map)
    }

    /// Exact multivariate division. Fails unless `other` divides `self`.
    pub fn div_exact(&self, other: &MPoly) -> Result<MPoly, AlgError> {
        if other.is_zero() {
            return Err(AlgError::DivisionByZero);
        }
        let (mut rem, d) = self.aligned(other);
        let vars = rem.vars.clone();
        if let Some(c) = d.constant_value() {
            return Ok(rem.scale(&c.recip()?));
        }
        let (dm, dc) = d
            .leading_term()
            .map(|(m, c)| (m.clone(), c.clone()))
            .expect("nonzero");
        let mut quot: BTreeMap<Monomial, Rat> = BTreeMap::new();
        while let Some((rm, rc)) = rem.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
            let Some(qm) = rm.div(&dm) else {
                return Err(AlgError::InexactDivision(format!(
                    "leading monomial not divisible while dividing by {d}"
                )));
            };
            let qc = &rc / &dc;
            let step = MPoly {
                vars: vars.clone(),
                terms: std::iter::once((qm.clone(), qc.clone())).collect(),
            };
            rem = &rem - &(&step * &d);
            add_term(&mut quot, qm, qc);
        }
        Ok(MPoly { vars, terms: quot })
    }

    /// Whether `other` divides `self` exactly.
    pub fn divides(other: &MPoly, p: &MPoly) -> bool {
        p.div_exact(other).is_ok()
    }

    /// Gcd of numerators over lcm of denominators, signed so that the
    /// primitive part has a positive leading coefficient.
    pub fn content(&self) -> Rat {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for c in self.terms.values() {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            return Rat::one();
        }
        let mut c = Rat::new(num, den).expect("positive denominator");
        if self.leading_coeff().is_some_and(|l| l.is_negative()) {
            c = -c;
        }
        c
    }

    /// Integer-coefficient primitive part with positive leading coefficient.
    pub fn primitive(&self) -> MPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.content().recip().expect("nonzero content"))
    }

    /// Multiplies by the lcm of the denominators so all coefficients are
    /// integers; returns that multiplier too.
    pub fn clear_denominators(&self) -> (MPoly, BigInt) {
        let mut den = BigInt::one();
        for c in self.terms.values() {
            den = den.lcm(c.denom());
        }
        (self.scale(&Rat::from_int(den.clone())), den)
    }

    /// Replaces `var` by `c * var` (a weighted rescaling of one variable).
    pub fn rescale_var(&self, name: &str, c: &Rat) -> MPoly {
        let Some(i) = self.var_index(name) else {
            return self.clone();
        };
        let mut powers: HashMap<u32, Rat> = HashMap::new();
        MPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter_map(|(m, a)| {
                    let p = powers
                        .entry(m.0[i])
                        .or_insert_with(|| c.pow(m.0[i] as i64).expect("nonnegative"));
                    let v = a * &*p;
                    (!v.is_zero()).then(|| (m.clone(), v))
                })
                .collect(),
        }
    }

    /// `var^deg * p(c / var)`: the reflection used for base chart changes.
    /// Fails if `deg` is smaller than the degree in `var`.
    pub fn reflect(&self, name: &str, c: &MPoly, deg: u32) -> Result<MPoly, AlgError> {
        let found = self.degree_in(name).unwrap_or(0);
        if found > deg {
            return Err(AlgError::DegreeTooLow {
                var: name.to_string(),
                needed: found,
                found: deg,
            });
        }
        let coeffs = self.coeffs_in(name);
        let x = MPoly::var(name);
        let mut acc = MPoly::zero();
        for (k, a) in coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let term = &(a * &c.pow(k as u32)) * &x.pow(deg - k as u32);
            acc = &acc + &term;
        }
        Ok(acc)
    }

    /// Canonical JSON value `{vars, terms: [{exp, coef}]}`, terms in
    /// descending graded-lex order.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable")
    }
}

fn add_term(map: &mut BTreeMap<Monomial, Rat>, m: Monomial, c: Rat) {
    if c.is_zero() {
        return;
    }
    match map.get_mut(&m) {
        Some(x) => {
            *x += &c;
            if x.is_zero() {
                map.remove(&m);
            }
        }
        None => {
            map.insert(m, c);
        }
    }
}

impl PartialEq for MPoly {
    fn eq(&self, other: &Self) -> bool {
        if self.vars == other.vars {
            return self.terms == other.terms;
        }
        let (a, b) = self.aligned(other);
        a.terms == b.terms
    }
}

impl Eq for MPoly {}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let mut factors: Vec<String> = Vec::new();
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.vars[i].clone()),
                    _ => factors.push(format!("{}^{}", self.vars[i], e)),
                }
            }
            if factors.is_empty() {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                write!(f, "{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    exp: Vec<u32>,
    coef: Rat,
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    vars: Vec<String>,
    terms: Vec<TermRepr>,
}

impl Serialize for MPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        PolyRepr {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .rev()
                .map(|(m, c)| TermRepr {
                    exp: m.0.clone(),
                    coef: c.clone(),
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let r = PolyRepr::deserialize(deserializer)?;
        MPoly::from_terms(r.vars, r.terms.into_iter().map(|t| (t.exp, t.coef)))
            .map_err(serde::de::Error::custom)
    }
}

macro_rules! poly_binop {
    ($Trait:ident, $method:ident, $body:expr) => {
        impl $Trait<&MPoly> for &MPoly {
            type Output = MPoly;
            fn $method(self, rhs: &MPoly) -> MPoly {
                let f: fn(&MPoly, &MPoly) -> MPoly = $body;
                f(self, rhs)
            }
        }
        impl $Trait<MPoly> for MPoly {
            type Output = MPoly;
            fn $method(self, rhs: MPoly) -> MPoly {
                (&self).$method(&rhs)
            }
        }
        impl $Trait<&MPoly> for MPoly {
            type Output = MPoly;
            fn $method(self, rhs: &MPoly) -> MPoly {
                (&self).$method(rhs)
            }
        }
        impl $Trait<MPoly> for &MPoly {
            type Output = MPoly;
            fn $method(self, rhs: MPoly) -> MPoly {
                self.$method(&rhs)
            }
        }
    };
}

poly_binop!(Add, add, |a, b| a.add_impl(b, true));
poly_binop!(Sub, sub, |a, b| a.add_impl(b, false));
poly_binop!(Mul, mul, |a, b| a
    .mul_impl(b, None)
    .expect("unbounded product"));

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.scale(&-Rat::one())
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

impl Mul<&Rat> for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &Rat) -> MPoly {
        self.scale(rhs)
    }
}

impl From<Rat> for MPoly {
    fn from(c: Rat) -> Self {
        MPoly::constant(c)
    }
}

/// Sign of the leading coefficient: `true` when positive or zero.
pub fn has_positive_lead(p: &MPoly) -> bool {
    p.leading_coeff().is_none_or(|c| c.numer().is_positive())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn p(s: &str) -> MPoly {
        s.parse().unwrap()
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(p("(x + y)*(x - y)"), p("x^2 - y^2"));
    }

    #[test]
    fn absorbing_zero() {
        assert!((&p("x^3 + 2*y") * &MPoly::zero()).is_zero());
    }

    #[test]
    fn cube_by_repeated_multiplication() {
        let x1 = p("x + 1");
        let cube = &(&x1 * &x1) * &x1;
        assert_eq!(cube, p("x^3 + 3*x^2 + 3*x + 1"));
        assert_eq!(x1.pow(3), cube);
    }

    #[test]
    fn display_is_graded_lex_descending() {
        assert_eq!(
            p("1 + x - 3/2*x*y^2 + y^3").to_string(),
            "-3/2*x*y^2 + y^3 + x + 1"
        );
        assert_eq!(MPoly::zero().to_string(), "0");
    }

    #[test]
    fn union_of_variables() {
        let a = MPoly::var("x");
        let b = MPoly::var("y");
        let s = &a + &b;
        assert_eq!(s.vars(), &["x".to_string(), "y".to_string()]);
        assert_eq!(&s - &b, a);
    }

    #[test]
    fn monomial_substitution() {
        let x2 = p("x^2");
        let r = x2.subs(&[("x", p("u*v"))]).unwrap();
        assert_eq!(r, p("u^2*v^2"));
    }

    #[test]
    fn chart_restriction() {
        let f = p("u^3*v + 2*u*v^3");
        let r = f.subs(&[("u", p("t")), ("v", MPoly::one())]).unwrap();
        assert_eq!(r, p("t^3 + 2*t"));
    }

    #[test]
    fn exact_division() {
        let a = p("x^2 - y^2");
        assert_eq!(a.div_exact(&p("x - y")).unwrap(), p("x + y"));
        assert!(a.div_exact(&p("x + 2*y")).is_err());
    }

    #[test]
    fn derivative_and_coeffs() {
        let f = p("3*x^2*y + x + 7");
        assert_eq!(f.derivative("x"), p("6*x*y + 1"));
        let c = f.coeffs_in("x");
        assert_eq!(c.len(), 3);
        assert_eq!(c[2], p("3*y"));
        assert_eq!(MPoly::from_coeffs_in("x", &c), f);
    }

    #[test]
    fn json_roundtrip() {
        let f = p("x^2 - 1/3*y");
        let js = serde_json::to_string(&f).unwrap();
        assert_eq!(
            js,
            r#"{"vars":["x","y"],"terms":[{"exp":[2,0],"coef":"1"},{"exp":[0,1],"coef":"-1/3"}]}"#
        );
        let back: MPoly = serde_json::from_str(&js).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn content_and_primitive() {
        let f = p("-4/3*x + 2");
        assert_eq!(f.content(), rat(-2, 3));
        assert_eq!(f.primitive(), p("2*x - 3"));
    }

    #[test]
    fn reflection() {
        let f = p("t^2 + 2*t + 3");
        assert_eq!(
            f.reflect("t", &MPoly::one(), 4).unwrap(),
            p("3*t^4 + 2*t^3 + t^2")
        );
    }
}
