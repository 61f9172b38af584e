//! Generators `h_k` of supergroup character rings, their transfer under `ds`,
//! twisted gl images and the exceptional image rings.

mod exceptional;

pub use exceptional::{
    canonical_form, exc_image_elements, exc_image_generators, exc_image_membership, ImageMembership,
};

use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::Zero;

use crate::dshom::build_ds;
use crate::error::{Error, Result};
use crate::rootdata::{AlgebraDatum, Family, IsoSet};
use crate::weightlat::{fmt_ratio, LaurentPoly, Shape, Weight};

/// `prod (1 - e^mu t)^{±1}` as a power series in `t`.
#[derive(Clone, Debug)]
pub struct GeneratingSeries {
    shape: Shape,
    numerator: Vec<Weight>,
    denominator: Vec<Weight>,
}

impl GeneratingSeries {
    pub fn new(shape: Shape, numerator: Vec<Weight>, denominator: Vec<Weight>) -> Self {
        GeneratingSeries { shape, numerator, denominator }
    }

    /// The series `chi_G(t)` of a classical family.
    pub fn for_algebra(a: &AlgebraDatum) -> Result<Self> {
        let s = a.shape();
        let xs = |sign: i64| (0..s.m).map(move |i| Weight::eps(s, i).scale(sign));
        let ys = |sign: i64| (0..s.n).map(move |j| Weight::delta(s, j).scale(sign));
        let (numerator, denominator): (Vec<_>, Vec<_>) = match a.family() {
            Family::Gl | Family::Sl => (xs(1).collect(), ys(1).collect()),
            Family::OspB => (
                ys(1).chain(ys(-1)).collect(),
                std::iter::once(Weight::zero(s)).chain(xs(1)).chain(xs(-1)).collect(),
            ),
            Family::OspC | Family::OspD => (ys(1).chain(ys(-1)).collect(), xs(1).chain(xs(-1)).collect()),
            _ => return Err(Error::Unsupported(format!("generating series for {}", a.name()))),
        };
        Ok(GeneratingSeries { shape: s, numerator, denominator })
    }

    pub fn numerator(&self) -> &[Weight] {
        &self.numerator
    }

    pub fn denominator(&self) -> &[Weight] {
        &self.denominator
    }

    /// Coefficients of `t^0..=t^order`.
    pub fn expand(&self, order: usize) -> Vec<LaurentPoly> {
        let mut c = vec![LaurentPoly::zero(self.shape); order + 1];
        c[0] = LaurentPoly::one(self.shape);
        for mu in &self.numerator {
            let e = LaurentPoly::exp(mu);
            for k in (1..=order).rev() {
                c[k] = &c[k] - &(&e * &c[k - 1]);
            }
        }
        for mu in &self.denominator {
            let e = LaurentPoly::exp(mu);
            for k in 1..=order {
                c[k] = &c[k] + &(&e * &c[k - 1]);
            }
        }
        c
    }
}

/// `[h_1, .., h_K]`.
pub fn gens_hk(a: &AlgebraDatum, order: usize) -> Result<Vec<LaurentPoly>> {
    let mut c = GeneratingSeries::for_algebra(a)?.expand(order);
    c.remove(0);
    Ok(c)
}

/// `h_k` in the inverted variables, which gl and sl also need.
pub fn gens_hk_inverse(a: &AlgebraDatum, order: usize) -> Result<Vec<LaurentPoly>> {
    gens_hk(a, order)?
        .iter()
        .map(|h| h.map_exponents(a.shape(), |e| Ok(e.iter().map(|x| -x).collect())))
        .collect()
}

/// `x1..xm / y1..yn` and its inverse.
pub fn gl_units(a: &AlgebraDatum) -> Result<[LaurentPoly; 2]> {
    if a.family() != Family::Gl {
        return Err(Error::Unsupported(format!("units for {}", a.name())));
    }
    let s = a.shape();
    let mut e = vec![s.denom; s.m];
    e.extend(std::iter::repeat(-s.denom).take(s.n));
    let w = Weight::new(s, e)?;
    Ok([LaurentPoly::exp(&w), LaurentPoly::exp(&-&w)])
}

/// Checks `ds(h_k) = h_k` of the target for `k <= order`.
pub fn verify_generator_transfer(a: &AlgebraDatum, b: &IsoSet, order: usize) -> Result<bool> {
    let d = build_ds(a, b)?;
    let source = gens_hk(a, order)?;
    let target = gens_hk(d.target(), order)?;
    for (h, expected) in source.iter().zip(&target) {
        if d.apply(h)? != *expected {
            return Ok(false);
        }
    }
    if a.family() == Family::Gl {
        let [u, v] = gl_units(a)?;
        let [tu, tv] = gl_units(d.target())?;
        return Ok(d.apply(&u)? == tu && d.apply(&v)? == tv);
    }
    Ok(true)
}

/// Largest denominator accepted for twist exponents by default.
pub const TWIST_DENOM_BOUND: i64 = 12;

/// `(x1..xm)^a (y1..yn)^b base` for gl, with `a` reduced into `[0, 1)` and
/// integral parts folded into `base`. When `a + b` is an integer, `b = -a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedElement {
    a: Ratio<i64>,
    b: Ratio<i64>,
    base: LaurentPoly,
}

fn block_monomial(s: Shape, x: i64, y: i64) -> Result<LaurentPoly> {
    let mut e = vec![x * s.denom; s.m];
    e.extend(std::iter::repeat(y * s.denom).take(s.n));
    Ok(LaurentPoly::exp(&Weight::new(s, e)?))
}

impl TwistedElement {
    pub fn new(a: Ratio<i64>, b: Ratio<i64>, base: LaurentPoly) -> Result<Self> {
        Self::with_bound(a, b, base, TWIST_DENOM_BOUND)
    }

    pub fn with_bound(a: Ratio<i64>, b: Ratio<i64>, base: LaurentPoly, bound: i64) -> Result<Self> {
        if *a.denom() > bound || *b.denom() > bound {
            return Err(Error::Lattice(format!("twist denominators exceed {bound}")));
        }
        if !base.weights().all(|(w, _)| w.is_integral()) {
            return Err(Error::Lattice("twist base must have integral exponents".into()));
        }
        let s = base.shape();
        let fa = a.floor();
        let a = a - fa;
        let (b, fb) = if (a + b).is_integer() {
            (-a, (a + b).to_integer())
        } else {
            let fb = b.floor();
            (b - fb, fb.to_integer())
        };
        let base = &base * &block_monomial(s, fa.to_integer(), fb)?;
        Ok(TwistedElement { a, b, base })
    }

    pub fn a(&self) -> Ratio<i64> {
        self.a
    }

    pub fn b(&self) -> Ratio<i64> {
        self.b
    }

    pub fn base(&self) -> &LaurentPoly {
        &self.base
    }

    pub fn is_zero(&self) -> bool {
        self.base.is_zero()
    }

    /// Full expansion over a lattice fine enough for the twist exponents.
    pub fn expand(&self) -> Result<LaurentPoly> {
        let s = self.base.shape();
        let denom = s.denom.lcm(self.a.denom()).lcm(self.b.denom());
        let fine = Shape::new(s.m, s.n, denom)?;
        let k = denom / s.denom;
        let base = self.base.map_exponents(fine, |e| Ok(e.iter().map(|x| x * k).collect()))?;
        let mut e = vec![(self.a * denom).to_integer(); s.m];
        e.extend(std::iter::repeat((self.b * denom).to_integer()).take(s.n));
        Ok(base.shift(&Weight::new(fine, e)?))
    }
}

impl fmt::Display for TwistedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.a.is_zero() && self.b.is_zero() {
            return write!(f, "{}", self.base);
        }
        let s = self.base.shape();
        let block = |name: &str, k: usize, r: Ratio<i64>| {
            let vars: Vec<String> = (1..=k).map(|i| format!("{name}{i}")).collect();
            format!("({})^{}", vars.join("*"), fmt_ratio(&r))
        };
        let mut parts = Vec::new();
        if !self.a.is_zero() && s.m > 0 {
            parts.push(block("x", s.m, self.a));
        }
        if !self.b.is_zero() && s.n > 0 {
            parts.push(block("y", s.n, self.b));
        }
        parts.push(format!("({})", self.base));
        f.write_str(&parts.join("*"))
    }
}

/// `ds` of a twisted element: the twist survives on the remaining variables
/// when `a + b` is an integer, and the element dies otherwise.
pub fn gl_twisted_image(a: &AlgebraDatum, b: &IsoSet, t: &TwistedElement) -> Result<TwistedElement> {
    if a.family() != Family::Gl {
        return Err(Error::Unsupported(format!("twisted images for {}", a.name())));
    }
    a.shape().check(&t.base.shape())?;
    let d = build_ds(a, b)?;
    let s = a.shape();
    let zero = |tgt: &AlgebraDatum| TwistedElement { a: Ratio::zero(), b: Ratio::zero(), base: LaurentPoly::zero(tgt.shape()) };
    if !(t.a + t.b).is_integer() {
        if !t.base.substitute(d.rules())?.is_zero() {
            return Err(Error::NotSupercharacter("twisted component does not vanish on the hyperplanes".into()));
        }
        return Ok(zero(d.target()));
    }
    // x_r = y_s leaves y_s^{a+b} from the twist
    let c = (t.a + t.b).to_integer();
    let mut e = vec![0; s.dim()];
    for beta in b.roots() {
        let j = (s.m..s.dim()).find(|&j| beta.coords()[j] != 0).expect("isotropic roots of gl have a delta part");
        e[j] = c * s.denom;
    }
    let base = d.apply(&t.base.shift(&Weight::new(s, e)?))?;
    TwistedElement::new(t.a, t.b, base)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{iso_set_validate, parse_algebra};
    use crate::superring::{is_in_jg, is_supersymmetric, is_w_invariant};

    fn alg(s: &str) -> AlgebraDatum {
        parse_algebra(s).unwrap()
    }

    fn iso(a: &AlgebraDatum, roots: &[&str]) -> IsoSet {
        iso_set_validate(a, roots.iter().map(|r| a.parse_root(r).unwrap()).collect()).unwrap()
    }

    #[test]
    fn hk_examples() {
        let a = alg("gl(1|1)");
        let h = gens_hk(&a, 2).unwrap();
        assert_eq!(h[0], a.parse_poly("y1-x1").unwrap());
        assert_eq!(h[1], a.parse_poly("y1^2-x1*y1").unwrap());
        let b = alg("osp(1|2)");
        assert_eq!(gens_hk(&b, 1).unwrap()[0], b.parse_poly("1-y1-y1^-1").unwrap());
        for s in ["gl(2|1)", "osp(3|2)", "osp(4|2)", "osp(2|2)"] {
            let a = alg(s);
            assert!(GeneratingSeries::for_algebra(&a).unwrap().expand(0)[0].is_one());
        }
        assert_eq!(gens_hk(&alg("osp(3|2)"), 1).unwrap()[0], alg("osp(3|2)").parse_poly("1 - v1 + u1").unwrap());
    }

    #[test]
    fn hk_are_group_characters() {
        for s in ["gl(2|1)", "gl(2|2)", "sl(3|1)", "osp(3|2)", "osp(4|2)", "osp(2|4)", "osp(5|4)"] {
            let a = alg(s);
            for h in gens_hk(&a, 4).unwrap().iter().chain(&gens_hk_inverse(&a, 2).unwrap()) {
                assert!(is_w_invariant(&a, h).0, "{s}");
                assert!(is_supersymmetric(&a, h).unwrap().0, "{s}");
                assert!(is_in_jg(&a, h).unwrap(), "{s}");
            }
        }
    }

    #[test]
    fn transfer_examples() {
        let a = alg("gl(3|2)");
        assert!(verify_generator_transfer(&a, &iso(&a, &["e3-d2"]), 4).unwrap());
        assert!(verify_generator_transfer(&a, &iso(&a, &["e3-d2"]), 0).unwrap());
        let b = alg("osp(5|4)");
        assert!(verify_generator_transfer(&b, &iso(&b, &["d1-e2"]), 4).unwrap());
        assert!(verify_generator_transfer(&b, &iso(&b, &["d2+e1"]), 4).unwrap());
    }

    #[test]
    fn twist_examples() {
        let a = alg("gl(2|1)");
        let b = iso(&a, &["e2-d1"]);
        let half = Ratio::new(1, 2);
        let t = TwistedElement::new(half, -half, LaurentPoly::one(a.shape())).unwrap();
        let img = gl_twisted_image(&a, &b, &t).unwrap();
        assert_eq!((img.a(), img.b()), (half, -half));
        assert!(img.base().is_one());
        assert_eq!(img.to_string(), "(x1)^1/2*(1)");

        let t = TwistedElement::new(Ratio::new(3, 2), Ratio::new(-1, 2), LaurentPoly::one(a.shape())).unwrap();
        assert_eq!(t.base(), &a.parse_poly("x1*x2").unwrap());

        let plain = a.parse_poly("y1-x1-x2").unwrap();
        let t = TwistedElement::new(Ratio::zero(), Ratio::zero(), plain.clone()).unwrap();
        assert_eq!(gl_twisted_image(&a, &b, &t).unwrap().base(), &build_ds(&a, &b).unwrap().apply(&plain).unwrap());

        let k = a.parse_poly("(1-x1/y1)*(1-x2/y1)").unwrap();
        let t = TwistedElement::new(Ratio::new(1, 3), Ratio::new(1, 4), k).unwrap();
        assert!(gl_twisted_image(&a, &b, &t).unwrap().is_zero());
        assert!(TwistedElement::new(Ratio::new(1, 13), Ratio::zero(), LaurentPoly::one(a.shape())).is_err());
    }
}
