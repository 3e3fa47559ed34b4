//! A small recursive-descent reader for polynomial expressions such as
//! `-t^3*(3*J2*t + J5) + 2/27*J4^3`.
//!
//! Grammar: `expr := term (('+'|'-') term)*`, `term := unary (('*'|'/') unary)*`,
//! `unary := '-' unary | power`, `power := atom ('^' uint)?`,
//! `atom := integer | ident | '(' expr ')'`. Division is only allowed by
//! nonzero constants.

use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::AlgError;
use crate::mpoly::MPoly;
use crate::rat::Rat;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<Tok>, AlgError> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let lit: String = chars[start..i].iter().collect();
            out.push(Tok::Num(lit.parse().expect("digits")));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else if c == '−' {
            out.push(Tok::Op('-'));
            i += 1;
        } else {
            return Err(AlgError::Parse(format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<MPoly, AlgError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MPoly, AlgError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat('/') {
                let d = self.unary()?;
                let c = d
                    .constant_value()
                    .ok_or_else(|| AlgError::Parse("division by a non-constant".into()))?;
                acc = acc.scale(&c.recip()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<MPoly, AlgError> {
        if self.eat('-') {
            return Ok(-self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<MPoly, AlgError> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.toks.get(self.pos).cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e = u32::try_from(n).map_err(|_| AlgError::ExponentOverflow)?;
                    Ok(base.pow(e))
                }
                _ => Err(AlgError::Parse(
                    "exponent must be a non-negative integer".into(),
                )),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<MPoly, AlgError> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(MPoly::constant(Rat::from_int(n)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Ok(MPoly::var(&name))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(AlgError::Parse("missing `)`".into()));
                }
                Ok(e)
            }
            other => Err(AlgError::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

/// Variable names in order of first appearance.
fn first_appearance(toks: &[Tok]) -> Vec<String> {
    let mut vars: Vec<String> = Vec::new();
    for t in toks {
        if let Tok::Ident(n) = t {
            if !vars.contains(n) {
                vars.push(n.clone());
            }
        }
    }
    vars
}

impl MPoly {
    /// Parses an expression over an explicit variable list; names not in the
    /// list are appended in order of appearance.
    pub fn parse_in(s: &str, vars: &[&str]) -> Result<MPoly, AlgError> {
        let toks = lex(s)?;
        let mut all: Vec<String> = vars.iter().map(|v| v.to_string()).collect();
        for v in first_appearance(&toks) {
            if !all.contains(&v) {
                all.push(v);
            }
        }
        let mut p = Parser { toks, pos: 0 };
        let e = p.expr()?;
        if p.pos != p.toks.len() {
            return Err(AlgError::Parse(format!("trailing input in `{s}`")));
        }
        e.extend_to(&all)
    }
}

impl FromStr for MPoly {
    type Err = AlgError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        MPoly::parse_in(s, &[])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn precedence_and_fractions() {
        let p: MPoly = "2/27*J4^3 - (J5 - a)/2*t".parse().unwrap();
        let q =
            MPoly::parse_in("-1/2*J5*t + 1/2*a*t + 2/27*J4^3", &["J4", "J5", "a", "t"]).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn unary_minus_binds_below_power() {
        let p: MPoly = "-x^2".parse().unwrap();
        assert_eq!(p.leading_coeff(), Some(&rat(-1, 1)));
    }

    #[test]
    fn display_roundtrip() {
        let p: MPoly = "(x - 2*y + 1/3)^3".parse().unwrap();
        let back: MPoly = p.to_string().parse().unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn rejects_garbage() {
        assert!("x +".parse::<MPoly>().is_err());
        assert!("x / y".parse::<MPoly>().is_err());
        assert!("x ^ y".parse::<MPoly>().is_err());
        assert!("(x".parse::<MPoly>().is_err());
    }
}
