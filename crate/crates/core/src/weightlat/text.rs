//! Plain-text polynomial syntax.
//!
//! Terms look like `-3*x1^2*y1^-1/2` and are joined by ` + ` / ` - ` in
//! descending lexicographic order of their exponents. The parser also accepts
//! parentheses, products, integer powers of polynomials, division by
//! monomials (or exact division), and the shorthands `u<i> = x<i> + x<i>^-1`,
//! `v<j> = y<j> + y<j>^-1`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Signed};

use crate::error::{Error, Result};

use super::weight::fmt_ratio;
use super::{LaurentPoly, MonomialOrder, Shape, Weight};

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let shape = self.shape();
        for (k, (e, c)) in self.terms().rev().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mono = format_monomial(shape, e);
            let abs = c.abs();
            match (mono.is_empty(), abs.is_one()) {
                (true, _) => write!(f, "{abs}")?,
                (false, true) => f.write_str(&mono)?,
                (false, false) => write!(f, "{abs}*{mono}")?,
            }
        }
        Ok(())
    }
}

fn format_monomial(shape: Shape, e: &[i64]) -> String {
    let mut parts = Vec::new();
    for (i, &x) in e.iter().enumerate() {
        if x == 0 {
            continue;
        }
        let name = if i < shape.m { format!("x{}", i + 1) } else { format!("y{}", i - shape.m + 1) };
        let r = Ratio::new(x, shape.denom);
        if r.is_one() {
            parts.push(name);
        } else {
            parts.push(format!("{name}^{}", fmt_ratio(&r)));
        }
    }
    parts.join("*")
}

/// Resolves the standard variable names `x<i>`, `y<j>`, `u<i>`, `v<j>`.
pub fn standard_variable(shape: Shape, name: &str) -> Option<LaurentPoly> {
    let (head, idx) = name.split_at(1);
    let idx: usize = idx.parse().ok()?;
    if idx == 0 {
        return None;
    }
    let coord = match head {
        "x" | "u" if idx <= shape.m => idx - 1,
        "y" | "v" if idx <= shape.n => shape.m + idx - 1,
        _ => return None,
    };
    let w = Weight::unit(shape, coord);
    let p = LaurentPoly::exp(&w);
    match head {
        "u" | "v" => Some(&p + &LaurentPoly::exp(&-&w)),
        _ => Some(p),
    }
}

impl LaurentPoly {
    /// Parses the text syntax with the standard variable names.
    pub fn parse(shape: Shape, s: &str) -> Result<Self> {
        parse_with(shape, s, &|name| standard_variable(shape, name))
    }
}

/// Parses with a custom variable resolver.
pub fn parse_with(
    shape: Shape,
    s: &str,
    resolve: &dyn Fn(&str) -> Option<LaurentPoly>,
) -> Result<LaurentPoly> {
    let mut p = Parser { src: s.as_bytes(), pos: 0, shape, resolve };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("trailing input"));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    shape: Shape,
    resolve: &'a dyn Fn(&str) -> Option<LaurentPoly>,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<LaurentPoly> {
        let mut acc = LaurentPoly::zero(self.shape);
        let mut first = true;
        loop {
            let neg = if self.eat(b'-') {
                true
            } else {
                if !self.eat(b'+') && !first {
                    break;
                }
                false
            };
            let t = self.term()?;
            acc = if neg { &acc - &t } else { &acc + &t };
            first = false;
            if !matches!(self.peek(), Some(b'+') | Some(b'-')) {
                break;
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<LaurentPoly> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.factor()?;
            } else if self.eat(b'/') {
                let d = self.factor()?;
                acc = divide(&acc, &d)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<LaurentPoly> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let r = self.exponent()?;
            return power(&base, r);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<LaurentPoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.digits();
                let n: BigInt = digits.parse().map_err(|_| self.error("bad integer"))?;
                Ok(LaurentPoly::constant(self.shape, n))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                (self.resolve)(name).ok_or_else(|| Error::Parse(format!("unknown variable {name:?}")))
            }
            _ => Err(self.error("expected a term")),
        }
    }

    fn digits(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn exponent(&mut self) -> Result<Ratio<i64>> {
        let paren = self.eat(b'(');
        let neg = self.eat(b'-');
        let p = self.digits();
        let p: i64 = p.parse().map_err(|_| self.error("bad exponent"))?;
        let mut r = Ratio::from_integer(p);
        // `a/b` directly after `^` is read as a fractional exponent
        if self.src.get(self.pos) == Some(&b'/')
            && self.src.get(self.pos + 1).is_some_and(u8::is_ascii_digit)
        {
            self.pos += 1;
            let q: i64 = self.digits().parse().map_err(|_| self.error("bad exponent"))?;
            if q == 0 {
                return Err(self.error("zero denominator"));
            }
            r = Ratio::new(p, q);
        }
        if paren && !self.eat(b')') {
            return Err(self.error("expected ')'"));
        }
        Ok(if neg { -r } else { r })
    }
}

fn single_term(p: &LaurentPoly) -> Option<(Vec<i64>, BigInt)> {
    if p.len() != 1 {
        return None;
    }
    p.terms().next().map(|(e, c)| (e.to_vec(), c.clone()))
}

fn power(base: &LaurentPoly, r: Ratio<i64>) -> Result<LaurentPoly> {
    if r.is_integer() && !r.is_negative() {
        return Ok(base.pow(r.to_integer() as u32));
    }
    let (e, c) = single_term(base)
        .ok_or_else(|| Error::Parse("only monomials take negative or fractional powers".into()))?;
    let c = if c.is_one() {
        c
    } else if r.is_integer() && (-&c).is_one() {
        if r.to_integer() % 2 == 0 { BigInt::one() } else { c }
    } else {
        return Err(Error::Parse("coefficient cannot be raised to that power".into()));
    };
    let shape = base.shape();
    let scaled = e
        .iter()
        .map(|&x| {
            let v = r * x;
            if v.is_integer() {
                Ok(v.to_integer())
            } else {
                Err(Error::Lattice(format!("power {} leaves (1/{})Z", fmt_ratio(&r), shape.denom)))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    LaurentPoly::from_terms(shape, [(scaled, c)])
}

fn divide(a: &LaurentPoly, d: &LaurentPoly) -> Result<LaurentPoly> {
    if let Some((e, c)) = single_term(d) {
        if c.abs().is_one() {
            let inv = Weight::new(d.shape(), e.iter().map(|x| -x).collect())?;
            let q = a.shift(&inv);
            return Ok(if c.is_negative() { -q } else { q });
        }
    }
    if d.is_zero() {
        return Err(Error::DivisionByZero);
    }
    a.exact_divide(d, &MonomialOrder::lex(d.shape()))
}
