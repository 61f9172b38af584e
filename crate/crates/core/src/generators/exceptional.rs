//! Image of `ds` for G(3), F(4) and D(2,1;alpha).

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::dshom::build_ds;
use crate::error::{Error, Result};
use crate::rootdata::{iso_set_validate, AlgebraDatum, Alpha, Family};
use crate::weightlat::LaurentPoly;

fn require_exceptional(a: &AlgebraDatum) -> Result<()> {
    if a.family().is_exceptional() {
        Ok(())
    } else {
        Err(Error::Unsupported(format!("exceptional images for {}", a.name())))
    }
}

fn f4_w(a: &AlgebraDatum, k: i64) -> Result<LaurentPoly> {
    let k2 = 2 * k;
    let pair = |i: usize| format!("(x{i}^{k2} + x{i}^-{k2})");
    let mut s = String::new();
    for (i, j) in [(1, 2), (1, 3), (2, 3)] {
        s += &format!("{}*{} + ", pair(i), pair(j));
    }
    for i in 1..=3 {
        s += &format!("{} + ", pair(i));
    }
    s += &format!("y1^{k2} + y1^-{k2} + 2 - (y1^{k} + y1^-{k})*(x1^{k}+x1^-{k})*(x2^{k}+x2^-{k})*(x3^{k}+x3^-{k})");
    a.parse_poly(&s)
}

/// `w_alpha` for rational `alpha = p/q`.
pub fn d21a_w_alpha(a: &AlgebraDatum) -> Result<LaurentPoly> {
    let Some(Alpha::Rational(r)) = a.alpha() else {
        return Err(Error::Unsupported("w_alpha needs a rational alpha".into()));
    };
    let (p, q) = (*r.numer(), *r.denom());
    let num = a.parse_poly(&format!("(x2^{p} - x2^{})*(x3^{q} - x3^{})", -p, -q))?;
    let den = a.parse_poly("(x2 - x2^-1)*(x3 - x3^-1)")?;
    let s = num.exact_divide(&den, a.order())?;
    let head = a.parse_poly("x2*x3 + x2^-1*x3^-1 - x1 - x1^-1")?;
    let tail = a.parse_poly(&format!("x2^{p}*x3^{} + x2^{}*x3^{q}", -q, -p))?;
    Ok(&(&head * &s) + &tail)
}

/// Named elements whose `ds` images generate the image ring, together with
/// the factor killed by `ds`.
pub fn exc_image_elements(a: &AlgebraDatum) -> Result<Vec<(String, LaurentPoly)>> {
    require_exceptional(a)?;
    let named = |n: &str, p: LaurentPoly| (n.to_string(), p);
    Ok(match a.family() {
        Family::G3 => vec![
            named("w", a.parse_poly("v1^2 - v1*(u1+u2+u3+1) + u1*u2 + u1*u3 + u2*u3")?),
            named("P", a.parse_poly("(v1-u1)*(v1-u2)*(v1-u3)")?),
        ],
        Family::F4 => {
            let q = (1..=3).map(|i| format!("(y1 + y1^-1 - x1*x2*x3*x{i}^-2 - x{i}^2*x1^-1*x2^-1*x3^-1)"));
            let q = format!("(y1 + y1^-1 - x1*x2*x3 - x1^-1*x2^-1*x3^-1)*{}", q.collect::<Vec<_>>().join("*"));
            vec![named("w1", f4_w(a, 1)?), named("w2", f4_w(a, 2)?), named("Q", a.parse_poly(&q)?)]
        }
        Family::D21a => {
            let mut v = vec![named("Q", a.parse_poly("u1^2 + u2^2 + u3^2 - u1*u2*u3 - 4")?)];
            if matches!(a.alpha(), Some(Alpha::Rational(_))) {
                v.push(named("w_alpha", d21a_w_alpha(a)?));
            }
            v
        }
        _ => unreachable!(),
    })
}

/// Target algebra and the images of the generating elements.
pub fn exc_image_generators(a: &AlgebraDatum) -> Result<(AlgebraDatum, Vec<(String, LaurentPoly)>)> {
    require_exceptional(a)?;
    let beta = a.iso_representative().expect("exceptional algebras have isotropic roots");
    let d = build_ds(a, &iso_set_validate(a, vec![beta])?)?;
    let mut gens = Vec::new();
    for (name, f) in exc_image_elements(a)? {
        if name == "P" || name == "Q" {
            continue;
        }
        let name = if name == "w1" { "w_x1".to_string() } else if name == "w2" { "w_x2".to_string() } else { format!("{name}_x") };
        gens.push((name, d.apply(&f)?));
    }
    Ok((d.target().clone(), gens))
}

/// Reduces modulo `x1..xm = 1` for sl targets by eliminating the last variable.
pub fn canonical_form(target: &AlgebraDatum, f: &LaurentPoly) -> Result<LaurentPoly> {
    let s = target.shape();
    if target.family() != Family::Sl || s.n != 0 || s.m == 0 {
        return Ok(f.clone());
    }
    f.map_exponents(s, |e| {
        let last = e[s.m - 1];
        let mut out: Vec<i64> = e.iter().map(|x| x - last).collect();
        out[s.m - 1] = 0;
        Ok(out)
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ImageMembership {
    pub member: bool,
    /// Polynomial in the generator names, when a member.
    pub expression: Option<String>,
    /// Irreducible remainder certifying non-membership.
    pub remainder: Option<String>,
}

fn height(f: &LaurentPoly) -> i64 {
    f.terms().flat_map(|(e, _)| e.iter().map(|x| x.abs())).max().unwrap_or(0)
}

type Row = BTreeMap<Vec<i64>, BigRational>;

fn to_row(f: &LaurentPoly) -> Row {
    f.terms().map(|(e, c)| (e.to_vec(), BigRational::from_integer(c.clone()))).collect()
}

fn axpy(row: &mut Row, c: &BigRational, other: &Row) {
    for (k, v) in other {
        let e = row.entry(k.clone()).or_insert_with(BigRational::zero);
        *e -= c * v;
        if e.is_zero() {
            row.remove(k);
        }
    }
}

/// Row-echelon reduction of `target` against `rows`, tracking coefficients.
struct Echelon {
    pivots: BTreeMap<Vec<i64>, (Row, Row)>,
}

impl Echelon {
    fn reduce(&self, mut row: Row, mut expr: Row) -> (Row, Row) {
        let mut cursor: Option<Vec<i64>> = None;
        loop {
            let next = row
                .keys()
                .rev()
                .find(|k| cursor.as_ref().map_or(true, |c| *k < c) && self.pivots.contains_key(*k))
                .cloned();
            let Some(k) = next else { break };
            let (prow, pexpr) = &self.pivots[&k];
            let c = row[&k].clone();
            axpy(&mut row, &c, prow);
            axpy(&mut expr, &c, pexpr);
            cursor = Some(k);
        }
        (row, expr)
    }

    fn insert(&mut self, row: Row, expr: Row) {
        let (row, expr) = self.reduce(row, expr);
        let Some((k, lead)) = row.iter().next_back().map(|(k, v)| (k.clone(), v.clone())) else {
            return;
        };
        let inv = lead.recip();
        let norm = |r: Row| r.into_iter().map(|(k, v)| (k, v * &inv)).collect::<Row>();
        self.pivots.insert(k, (norm(row), norm(expr)));
    }
}

fn format_expression(names: &[String], expr: &Row) -> String {
    if expr.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (e, c)) in expr.iter().rev().enumerate() {
        let c = c.to_integer();
        let monomial: Vec<String> = e
            .iter()
            .zip(names)
            .filter(|(k, _)| **k > 0)
            .map(|(k, n)| if *k == 1 { n.clone() } else { format!("{n}^{k}") })
            .collect();
        let neg = c.is_negative();
        let abs = c.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if monomial.is_empty() {
            out.push_str(&abs.to_string());
        } else {
            if !abs.is_one() {
                out.push_str(&format!("{abs}*"));
            }
            out.push_str(&monomial.join("*"));
        }
    }
    out
}

/// Decides membership of `g` (in target variables) in the image ring of `ds`.
pub fn exc_image_membership(a: &AlgebraDatum, g: &LaurentPoly) -> Result<ImageMembership> {
    let (target, gens) = exc_image_generators(a)?;
    target.shape().check(&g.shape())?;
    let g = canonical_form(&target, g)?;
    let gens: Vec<(String, LaurentPoly)> =
        gens.into_iter().map(|(n, f)| Ok((n, canonical_form(&target, &f)?))).collect::<Result<_>>()?;
    let names: Vec<String> = gens.iter().map(|(n, _)| n.clone()).collect();
    let heights: Vec<i64> = gens.iter().map(|(_, f)| height(f)).collect();
    let unit = heights.iter().copied().filter(|h| *h > 0).min().unwrap_or(1);
    let budget = ((height(&g) + unit - 1) / unit + 2) * unit;

    let mut exponents = vec![vec![0i64; gens.len()]];
    for (i, h) in heights.iter().enumerate() {
        let mut next = Vec::new();
        for e in &exponents {
            let used: i64 = e.iter().zip(&heights).map(|(k, h)| k * h).sum();
            let mut e = e.clone();
            for _ in 0..=((budget - used) / h.max(&1)) {
                next.push(e.clone());
                e[i] += 1;
            }
        }
        exponents = next;
    }
    let mut ech = Echelon { pivots: BTreeMap::new() };
    let mut seen = BTreeSet::new();
    for e in exponents {
        if !seen.insert(e.clone()) {
            continue;
        }
        let mut p = LaurentPoly::one(target.shape());
        for ((k, (_, f)), _) in e.iter().zip(&gens).zip(&names) {
            p = &p * &f.pow(*k as u32);
        }
        let expr: Row = [(e.clone(), BigRational::one())].into_iter().collect();
        ech.insert(to_row(&p), expr);
    }
    let (rem, expr) = ech.reduce(to_row(&g), Row::new());
    if !rem.is_empty() {
        let rem = LaurentPoly::from_terms(
            target.shape(),
            rem.into_iter().map(|(k, v)| (k, v.to_integer())),
        )?;
        return Ok(ImageMembership { member: false, expression: None, remainder: Some(rem.to_string()) });
    }
    let expr: Row = expr.into_iter().map(|(k, v)| (k, -v)).collect();
    if expr.values().any(|v| !v.is_integer()) {
        return Ok(ImageMembership { member: false, expression: None, remainder: Some("non-integral coefficients".into()) });
    }
    Ok(ImageMembership { member: true, expression: Some(format_expression(&names, &expr)), remainder: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::parse_algebra;
    use crate::superring::{is_supersymmetric, is_w_invariant};

    fn elements(a: &AlgebraDatum) -> BTreeMap<String, LaurentPoly> {
        exc_image_elements(a).unwrap().into_iter().collect()
    }

    fn ds_rep(a: &AlgebraDatum, f: &LaurentPoly) -> LaurentPoly {
        let beta = a.iso_representative().unwrap();
        build_ds(a, &iso_set_validate(a, vec![beta]).unwrap()).unwrap().apply(f).unwrap()
    }

    #[test]
    fn elements_are_supercharacters() {
        for s in ["G(3)", "F(4)", "D(2,1;1/2)", "D(2,1;2/3)", "D(2,1;3)", "D(2,1;-3/2)"] {
            let a = parse_algebra(s).unwrap();
            for (name, f) in exc_image_elements(&a).unwrap() {
                assert!(is_w_invariant(&a, &f).0, "{s} {name}");
                assert!(is_supersymmetric(&a, &f).unwrap().0, "{s} {name}");
            }
        }
    }

    #[test]
    fn images() {
        let g = parse_algebra("G(3)").unwrap();
        let e = elements(&g);
        let t = build_ds(&g, &iso_set_validate(&g, vec![g.iso_representative().unwrap()]).unwrap()).unwrap();
        assert_eq!(ds_rep(&g, &e["w"]), t.target().parse_poly("x1/x2 + x2/x1").unwrap());
        assert!(ds_rep(&g, &e["P"]).is_zero());

        let f = parse_algebra("F(4)").unwrap();
        let e = elements(&f);
        let t = build_ds(&f, &iso_set_validate(&f, vec![f.iso_representative().unwrap()]).unwrap()).unwrap();
        assert!(ds_rep(&f, &e["Q"]).is_zero());
        for (k, name) in [(2, "w1"), (4, "w2")] {
            let expected = t
                .target()
                .parse_poly(&format!("x1^{k}/x2^{k} + x2^{k}/x1^{k} + x1^{k}/x3^{k} + x3^{k}/x1^{k} + x2^{k}/x3^{k} + x3^{k}/x2^{k}"))
                .unwrap();
            assert_eq!(ds_rep(&f, &e[name]), expected);
        }

        for alpha in ["1/2", "2/3", "3"] {
            let d = parse_algebra(&format!("D(2,1;{alpha})")).unwrap();
            let e = elements(&d);
            assert!(ds_rep(&d, &e["Q"]).is_zero());
        }
    }

    #[test]
    fn printed_formulas_fail() {
        // the displayed w_1 of F(4) lacks the cross terms and the constant
        let f = parse_algebra("F(4)").unwrap();
        let mut s = String::new();
        for i in 1..=3 {
            for j in 1..=3 {
                if i != j {
                    s += &format!("x{i}^2*x{j}^-2 + ");
                }
            }
            s += &format!("x{i}^2 + x{i}^-2 + ");
        }
        s += "y1^2 + y1^-2 - (y1 + y1^-1)*(x1+x1^-1)*(x2+x2^-1)*(x3+x3^-1)";
        let printed = f.parse_poly(&s).unwrap();
        assert!(!is_supersymmetric(&f, &printed).unwrap().0);

        // the displayed w_alpha has the sign of its first factor reversed
        let d = parse_algebra("D(2,1;2/3)").unwrap();
        let w = d21a_w_alpha(&d).unwrap();
        let tail = d.parse_poly("x2^2*x3^-3 + x2^-2*x3^3").unwrap();
        let printed = &tail - &(&w - &tail);
        assert!(!is_w_invariant(&d, &printed).0);
    }

    #[test]
    fn membership() {
        let g = parse_algebra("G(3)").unwrap();
        let (t, _) = exc_image_generators(&g).unwrap();
        let r = exc_image_membership(&g, &t.parse_poly("x1^2 + x2^2").unwrap()).unwrap();
        assert_eq!(r.expression.as_deref(), Some("w_x"));
        let r = exc_image_membership(&g, &t.parse_poly("x1+x1^-1").unwrap()).unwrap();
        assert!(!r.member && r.remainder.is_some());
        // x1^2 + x2^-2 = 2 x1^2 modulo x1 x2 = 1
        assert!(!exc_image_membership(&g, &t.parse_poly("x1^2 + x2^-2").unwrap()).unwrap().member);
        let r = exc_image_membership(&g, &t.parse_poly("7").unwrap()).unwrap();
        assert_eq!(r.expression.as_deref(), Some("7"));
        let r = exc_image_membership(&g, &t.parse_poly("(x1/x2 + x2/x1)^3 - 2*(x1/x2+x2/x1) + 1").unwrap()).unwrap();
        assert_eq!(r.expression.as_deref(), Some("w_x^3 - 2*w_x + 1"));

        let f = parse_algebra("F(4)").unwrap();
        let (t, gens) = exc_image_generators(&f).unwrap();
        let p = &gens[0].1.pow(2) - &gens[1].1.scale(&3.into());
        let r = exc_image_membership(&f, &p).unwrap();
        assert_eq!(r.expression.as_deref(), Some("w_x1^2 - 3*w_x2"));
        assert!(!exc_image_membership(&f, &t.parse_poly("x1^2 + x2^2 + x3^2").unwrap()).unwrap().member);

        let d = parse_algebra("D(2,1;3)").unwrap();
        let (t, gens) = exc_image_generators(&d).unwrap();
        assert_eq!(gens[0].1, t.parse_poly("x2^3*x3^-1 + x2^-3*x3").unwrap());
        assert!(exc_image_membership(&d, &gens[0].1.pow(2)).unwrap().member);
        assert!(!exc_image_membership(&d, &t.parse_poly("x2 + x2^-1").unwrap()).unwrap().member);
    }
}
