use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Variable layout of a Laurent ring: `m` even-block variables `x1..xm`,
/// `n` odd-block variables `y1..yn`, exponents scaled by `denom`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Shape {
    pub m: usize,
    pub n: usize,
    pub denom: i64,
}

impl Shape {
    pub fn new(m: usize, n: usize, denom: i64) -> Result<Self> {
        if denom < 1 {
            return Err(Error::Lattice(format!("denominator {denom} must be positive")));
        }
        Ok(Shape { m, n, denom })
    }

    pub fn dim(&self) -> usize {
        self.m + self.n
    }

    pub fn check(&self, other: &Shape) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ShapeMismatch { left: *self, right: *other })
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}|{})/{}", self.m, self.n, self.denom)
    }
}

/// A point of the scaled exponent lattice. Coordinate `i < m` is the exponent
/// of `x_{i+1}`, coordinate `m + j` the exponent of `y_{j+1}`, each stored
/// multiplied by the shape's denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    shape: Shape,
    coords: Vec<i64>,
}

impl Weight {
    pub fn new(shape: Shape, scaled: Vec<i64>) -> Result<Self> {
        if scaled.len() != shape.dim() {
            return Err(Error::Lattice(format!(
                "expected {} coordinates, got {}",
                shape.dim(),
                scaled.len()
            )));
        }
        Ok(Weight { shape, coords: scaled })
    }

    pub fn zero(shape: Shape) -> Self {
        Weight { shape, coords: vec![0; shape.dim()] }
    }

    /// The unit vector on coordinate `i` (real coordinate 1).
    pub fn unit(shape: Shape, i: usize) -> Self {
        let mut w = Weight::zero(shape);
        w.coords[i] = shape.denom;
        w
    }

    pub fn eps(shape: Shape, i: usize) -> Self {
        Weight::unit(shape, i)
    }

    pub fn delta(shape: Shape, j: usize) -> Self {
        Weight::unit(shape, shape.m + j)
    }

    /// Builds a weight from real coordinates; fails off the lattice.
    pub fn from_real(shape: Shape, real: &[Ratio<i64>]) -> Result<Self> {
        if real.len() != shape.dim() {
            return Err(Error::Lattice(format!(
                "expected {} coordinates, got {}",
                shape.dim(),
                real.len()
            )));
        }
        let coords = real
            .iter()
            .map(|r| {
                let s = r * shape.denom;
                if s.is_integer() {
                    Ok(s.to_integer())
                } else {
                    Err(Error::Lattice(format!("{r} not in (1/{})Z", shape.denom)))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Weight { shape, coords })
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<i64> {
        self.coords
    }

    pub fn real(&self, i: usize) -> Ratio<i64> {
        Ratio::new(self.coords[i], self.shape.denom)
    }

    pub fn reals(&self) -> Vec<Ratio<i64>> {
        (0..self.coords.len()).map(|i| self.real(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// True when every real coordinate is an integer.
    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|c| c % self.shape.denom == 0)
    }

    pub fn scale(&self, k: i64) -> Self {
        Weight { shape: self.shape, coords: self.coords.iter().map(|c| c * k).collect() }
    }

    /// Half of this weight, if it stays on the lattice.
    pub fn halve(&self) -> Result<Self> {
        if self.coords.iter().any(|c| c % 2 != 0) {
            return Err(Error::Lattice(format!("{self}/2")));
        }
        Ok(Weight { shape: self.shape, coords: self.coords.iter().map(|c| c / 2).collect() })
    }

    pub fn try_add(&self, other: &Weight) -> Result<Self> {
        self.shape.check(&other.shape)?;
        Ok(self + other)
    }

    pub fn with_shape(&self, shape: Shape) -> Result<Self> {
        if shape.dim() != self.shape.dim() {
            return Err(Error::ShapeMismatch { left: self.shape, right: shape });
        }
        Weight::from_real(shape, &self.reals())
    }
}

fn zip_with(a: &Weight, b: &Weight, f: impl Fn(i64, i64) -> i64) -> Weight {
    assert_eq!(a.shape, b.shape, "weight shape mismatch");
    Weight {
        shape: a.shape,
        coords: a.coords.iter().zip(&b.coords).map(|(&x, &y)| f(x, y)).collect(),
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        zip_with(self, rhs, |x, y| x + y)
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        zip_with(self, rhs, |x, y| x - y)
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, rhs: Weight) -> Weight {
        &self + &rhs
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, rhs: Weight) -> Weight {
        &self - &rhs
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight { shape: self.shape, coords: self.coords.iter().map(|c| -c).collect() }
    }
}

impl Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        -&self
    }
}

/// Formats a rational as `p` or `p/q`.
pub(crate) fn fmt_ratio(r: &Ratio<i64>) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let part = |range: std::ops::Range<usize>| {
            range.map(|i| fmt_ratio(&self.real(i))).collect::<Vec<_>>().join(",")
        };
        write!(f, "({}|{})", part(0..self.shape.m), part(self.shape.m..self.shape.dim()))
    }
}

/// Parses `a1,...,am|b1,...,bn` with rational entries.
pub fn parse_real_vector(s: &str) -> Result<(Vec<Ratio<i64>>, Vec<Ratio<i64>>)> {
    let s = s.trim().trim_start_matches('(').trim_end_matches(')');
    let (left, right) = s.split_once('|').unwrap_or((s, ""));
    let parse_side = |side: &str| -> Result<Vec<Ratio<i64>>> {
        side.split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(parse_ratio)
            .collect()
    };
    Ok((parse_side(left)?, parse_side(right)?))
}

pub fn parse_ratio(s: &str) -> Result<Ratio<i64>> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: i64 = p.trim().parse().map_err(|_| bad())?;
            let q: i64 = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Ratio::new(p, q))
        }
        None => Ok(Ratio::from_integer(s.parse().map_err(|_| bad())?)),
    }
}
