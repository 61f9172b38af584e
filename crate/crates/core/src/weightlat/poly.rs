use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

use super::{MonomialOrder, Shape, Weight};

/// Sparse Laurent polynomial with integer coefficients over a fixed [`Shape`].
/// Terms are keyed by scaled exponent vectors; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    shape: Shape,
    terms: BTreeMap<Vec<i64>, BigInt>,
}

/// Replace variable `var` by the monomial `replacement` (which must not involve `var`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubstitutionRule {
    pub var: usize,
    pub replacement: Weight,
}

impl SubstitutionRule {
    pub fn new(var: usize, replacement: Weight) -> Result<Self> {
        if var >= replacement.shape().dim() || replacement.coords()[var] != 0 {
            return Err(Error::Lattice(format!("bad substitution for variable {var}")));
        }
        Ok(SubstitutionRule { var, replacement })
    }

    /// Applies the rule to a single exponent vector.
    pub fn apply(&self, e: &[i64]) -> Result<Vec<i64>> {
        let d = self.replacement.shape().denom;
        let a = e[self.var];
        let mut out = e.to_vec();
        out[self.var] = 0;
        for (o, &r) in out.iter_mut().zip(self.replacement.coords()) {
            let num = a as i128 * r as i128;
            if num % d as i128 != 0 {
                return Err(Error::Lattice(format!(
                    "substitution leaves the lattice at variable {}",
                    self.var
                )));
            }
            *o += (num / d as i128) as i64;
        }
        Ok(out)
    }
}

impl LaurentPoly {
    pub fn zero(shape: Shape) -> Self {
        LaurentPoly { shape, terms: BTreeMap::new() }
    }

    pub fn one(shape: Shape) -> Self {
        LaurentPoly::constant(shape, 1)
    }

    pub fn constant(shape: Shape, c: impl Into<BigInt>) -> Self {
        let mut p = LaurentPoly::zero(shape);
        p.add_term(vec![0; shape.dim()], c.into());
        p
    }

    pub fn monomial(w: &Weight, c: impl Into<BigInt>) -> Self {
        let mut p = LaurentPoly::zero(w.shape());
        p.add_term(w.coords().to_vec(), c.into());
        p
    }

    /// `e^w`.
    pub fn exp(w: &Weight) -> Self {
        LaurentPoly::monomial(w, 1)
    }

    /// The variable `x_{i+1}` (or `y_{i-m+1}`) as a polynomial.
    pub fn var(shape: Shape, i: usize) -> Self {
        LaurentPoly::exp(&Weight::unit(shape, i))
    }

    pub fn from_terms<I>(shape: Shape, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<i64>, BigInt)>,
    {
        let mut p = LaurentPoly::zero(shape);
        for (e, c) in terms {
            if e.len() != shape.dim() {
                return Err(Error::Lattice(format!("exponent of length {} in {shape}", e.len())));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Ascending lexicographic iteration over `(scaled exponent, coefficient)`.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&[i64], &BigInt)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn weights(&self) -> impl Iterator<Item = (Weight, &BigInt)> {
        let shape = self.shape;
        self.terms.iter().map(move |(e, c)| (Weight::new(shape, e.clone()).unwrap(), c))
    }

    pub fn coeff(&self, e: &[i64]) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    /// Constant value if the polynomial has no non-trivial monomials.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => {
                let (e, c) = self.terms.iter().next()?;
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub(crate) fn add_term(&mut self, e: Vec<i64>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn try_add(&self, other: &LaurentPoly) -> Result<Self> {
        self.shape.check(&other.shape)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &LaurentPoly) -> Result<Self> {
        self.shape.check(&other.shape)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &LaurentPoly) -> Result<Self> {
        self.shape.check(&other.shape)?;
        let mut out = LaurentPoly::zero(self.shape);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return LaurentPoly::zero(self.shape);
        }
        LaurentPoly {
            shape: self.shape,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    /// Multiplication by `e^w`.
    pub fn shift(&self, w: &Weight) -> Self {
        assert_eq!(self.shape, w.shape(), "shift by a weight of another shape");
        LaurentPoly {
            shape: self.shape,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(w.coords()).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = LaurentPoly::one(self.shape);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Applies `f` to every exponent vector, landing in `shape`; colliding terms add up.
    pub fn map_exponents<F>(&self, shape: Shape, mut f: F) -> Result<Self>
    where
        F: FnMut(&[i64]) -> Result<Vec<i64>>,
    {
        let mut out = LaurentPoly::zero(shape);
        for (e, c) in &self.terms {
            let e2 = f(e)?;
            if e2.len() != shape.dim() {
                return Err(Error::Lattice("exponent map changed the rank".into()));
            }
            out.add_term(e2, c.clone());
        }
        Ok(out)
    }

    /// Applies the rules in order to every monomial.
    pub fn substitute(&self, rules: &[SubstitutionRule]) -> Result<Self> {
        for r in rules {
            self.shape.check(&r.replacement.shape())?;
        }
        self.map_exponents(self.shape, |e| {
            let mut e = e.to_vec();
            for r in rules {
                e = r.apply(&e)?;
            }
            Ok(e)
        })
    }

    /// Sum of coefficients, i.e. the value at `x = y = 1`.
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn leading_term(&self, order: &MonomialOrder) -> Result<(Weight, BigInt)> {
        let (e, c) = self.leading_raw(order).ok_or(Error::ZeroPolynomial)?;
        Ok((Weight::new(self.shape, e.to_vec())?, c.clone()))
    }

    fn leading_raw(&self, order: &MonomialOrder) -> Option<(&Vec<i64>, &BigInt)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    fn coordinate_bounds(&self) -> Vec<(i64, i64)> {
        let dim = self.shape.dim();
        let mut b = vec![(i64::MAX, i64::MIN); dim];
        for e in self.terms.keys() {
            for (bound, &x) in b.iter_mut().zip(e) {
                bound.0 = bound.0.min(x);
                bound.1 = bound.1.max(x);
            }
        }
        b
    }

    /// Exact quotient `self / d` by leading-term elimination.
    ///
    /// Every quotient exponent must lie in the box cut out by the coordinate-wise
    /// extremes of `self` and `d`, so the elimination stops as soon as it leaves it.
    pub fn exact_divide(&self, d: &LaurentPoly, order: &MonomialOrder) -> Result<Self> {
        self.shape.check(&d.shape)?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(LaurentPoly::zero(self.shape));
        }
        let fb = self.coordinate_bounds();
        let db = d.coordinate_bounds();
        let bounds: Vec<(i64, i64)> =
            fb.iter().zip(&db).map(|(f, d)| (f.0 - d.0, f.1 - d.1)).collect();
        if bounds.iter().any(|(lo, hi)| lo > hi) {
            return Err(Error::NotDivisible);
        }
        let (ld, lc) = d.leading_raw(order).map(|(e, c)| (e.clone(), c.clone())).unwrap();
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero(self.shape);
        while let Some((lr, cr)) = rem.leading_raw(order) {
            let t: Vec<i64> = lr.iter().zip(&ld).map(|(a, b)| a - b).collect();
            if t.iter().zip(&bounds).any(|(x, (lo, hi))| x < lo || x > hi) {
                return Err(Error::NotDivisible);
            }
            let (q, r) = cr.div_rem(&lc);
            if !r.is_zero() {
                return Err(Error::NotDivisible);
            }
            for (e, c) in &d.terms {
                let e2 = e.iter().zip(&t).map(|(a, b)| a + b).collect();
                rem.add_term(e2, -(c * &q));
            }
            quot.add_term(t, q);
        }
        Ok(quot)
    }

    /// Largest absolute coefficient; zero for the zero polynomial.
    pub fn max_abs_coeff(&self) -> BigInt {
        self.terms.values().map(|c| c.abs()).max().unwrap_or_default()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_add(rhs).expect("polynomial shape mismatch")
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_sub(rhs).expect("polynomial shape mismatch")
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_mul(rhs).expect("polynomial shape mismatch")
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            shape: self.shape,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}
