//! A small expression language for polynomials in one variable:
//! integers, `q`/`x`, `Phi<k>` (with primed factors supplied by the caller),
//! `sqrt(-7)`-style square roots, `E(m)` roots of unity, `+ - * / ^` and
//! implicit multiplication.

use std::collections::HashMap;

use super::residue::{gauss_sum, quadratic_discriminant};
use super::{laurent::phi_poly, ArithError, CycloNum, LaurentX};

pub struct Parser<'a> {
    src: Vec<char>,
    pos: usize,
    named: &'a HashMap<String, LaurentX>,
    var: Option<char>,
}

fn err(msg: impl Into<String>) -> ArithError {
    ArithError::Parse(msg.into())
}

/// Parse an expression; `named` resolves symbols such as `Phi7'`.
pub fn parse(src: &str, named: &HashMap<String, LaurentX>) -> Result<LaurentX, ArithError> {
    parse_with(src, named, None)
}

/// Like [`parse`] but with `var` as the only variable name.
pub fn parse_in(src: &str, var: char, named: &HashMap<String, LaurentX>) -> Result<LaurentX, ArithError> {
    parse_with(src, named, Some(var))
}

fn parse_with(src: &str, named: &HashMap<String, LaurentX>, var: Option<char>) -> Result<LaurentX, ArithError> {
    let mut p = Parser { src: src.chars().filter(|c| !c.is_whitespace()).collect(), pos: 0, named, var };
    let v = p.sum()?;
    if p.pos != p.src.len() {
        return Err(err(format!("trailing input at {}", p.pos)));
    }
    Ok(v)
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn starts_with(&self, s: &str) -> bool {
        let t: Vec<char> = s.chars().collect();
        self.src.len() >= self.pos + t.len() && self.src[self.pos..self.pos + t.len()] == t[..]
    }

    fn sum(&mut self) -> Result<LaurentX, ArithError> {
        let mut acc = if self.eat('-') { -self.product()? } else { self.product()? };
        loop {
            if self.eat('+') {
                acc = &acc + &self.product()?;
            } else if self.eat('-') {
                acc = &acc - &self.product()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Result<LaurentX, ArithError> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.power()?;
            } else if self.eat('/') {
                let d = self.power()?;
                acc = acc.div_exact(&d).ok_or_else(|| err("inexact division"))?;
            } else if matches!(self.peek(), Some(c) if c == '(' || c.is_ascii_alphanumeric()) {
                acc = &acc * &self.power()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<LaurentX, ArithError> {
        let base = self.atom()?;
        if self.eat('^') {
            let neg = self.eat('-');
            let e = self.integer()?;
            if neg {
                let inv = LaurentX::one().div_exact(&base.pow(e as u32)).ok_or_else(|| err("negative power of a non-monomial"))?;
                return Ok(inv);
            }
            return Ok(base.pow(e as u32));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<i64, ArithError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(err(format!("expected integer at {start}")));
        }
        self.src[start..self.pos].iter().collect::<String>().parse().map_err(|_| err("integer overflow"))
    }

    fn atom(&mut self) -> Result<LaurentX, ArithError> {
        if self.eat('(') {
            let v = self.sum()?;
            if !self.eat(')') {
                return Err(err("missing )"));
            }
            return Ok(v);
        }
        if self.eat('-') {
            return Ok(-self.power()?);
        }
        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            return Ok(LaurentX::from_int(self.integer()?));
        }
        if self.starts_with("Phi") {
            self.pos += 3;
            let k = self.integer()?;
            let mut primes = 0;
            while self.eat('\'') {
                primes += 1;
            }
            if primes == 0 {
                return Ok(phi_poly(k as u32));
            }
            let name = format!("Phi{}{}", k, "'".repeat(primes));
            return self.named.get(&name).cloned().ok_or_else(|| err(format!("unknown symbol {name}")));
        }
        if self.starts_with("sqrt(") {
            self.pos += 5;
            let neg = self.eat('-');
            let n = self.integer()?;
            if !self.eat(')') {
                return Err(err("missing ) after sqrt"));
            }
            let d = if neg { -n } else { n };
            let p = d.unsigned_abs();
            if quadratic_discriminant(p) != Some(d) {
                return Err(err(format!("unsupported sqrt({d})")));
            }
            return Ok(LaurentX::constant(gauss_sum(p as u32)));
        }
        if self.starts_with("E(") {
            self.pos += 2;
            let m = self.integer()?;
            if !self.eat(')') {
                return Err(err("missing ) after E"));
            }
            return Ok(LaurentX::constant(CycloNum::root_of_unity(m as u32, 1)));
        }
        let is_var = match self.var {
            Some(v) => self.eat(v),
            None => self.eat('q') || self.eat('x'),
        };
        if is_var {
            return Ok(LaurentX::x_pow(1));
        }
        Err(err(format!("unexpected input at {}", self.pos)))
    }
}
