//! Weyl character formula for the auxiliary reductive algebra whose positive
//! roots are the non-isotropic part of the positive system.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::rootdata::{AlgebraDatum, PositiveSystem, WEYL_BOUND};
use crate::weightlat::{LaurentPoly, Weight};

pub struct TildeDatum<'a> {
    algebra: &'a AlgebraDatum,
    denominator: LaurentPoly,
}

/// `sum_w sgn(w) e^{w(lambda)}`.
pub fn alternating_sum(a: &AlgebraDatum, lambda: &Weight) -> LaurentPoly {
    let mut out = LaurentPoly::zero(a.shape());
    for w in a.weyl_elements() {
        let term = LaurentPoly::monomial(&a.weyl_act(&w, lambda), w.length_parity as i64);
        out = &out + &term;
    }
    out
}

pub fn build_tilde(a: &AlgebraDatum) -> Result<TildeDatum<'_>> {
    let size = a.weyl_order();
    if size > WEYL_BOUND {
        return Err(Error::WeylGroupTooLarge { size, bound: WEYL_BOUND });
    }
    Ok(TildeDatum { algebra: a, denominator: alternating_sum(a, a.rho_tilde()) })
}

impl<'a> TildeDatum<'a> {
    pub fn algebra(&self) -> &'a AlgebraDatum {
        self.algebra
    }

    pub fn pos_roots(&self) -> &[Weight] {
        self.algebra.tilde_pos_roots()
    }

    pub fn rho_tilde(&self) -> &Weight {
        self.algebra.rho_tilde()
    }

    /// Weyl denominator `sum_w sgn(w) e^{w rho~}`.
    pub fn denominator(&self) -> &LaurentPoly {
        &self.denominator
    }

    /// Character of the irreducible module with highest weight `mu`.
    pub fn char_irrep(&self, mu: &Weight) -> Result<LaurentPoly> {
        let a = self.algebra;
        if !a.is_dominant_integral(mu, PositiveSystem::Tilde) {
            return Err(Error::NotDominant(mu.to_string()));
        }
        let num = alternating_sum(a, &(mu + self.rho_tilde()));
        let ch = num.exact_divide(&self.denominator, a.order())?;
        let (lead, c) = ch.leading_term(a.order())?;
        if lead != *mu || !c.is_one() {
            return Err(Error::Internal(format!("character of {mu} has leading term {lead}")));
        }
        Ok(ch)
    }

    /// Writes a W-invariant `g` as an integer combination of irreducible
    /// characters by peeling off leading terms.
    pub fn char_decompose(&self, g: &LaurentPoly) -> Result<BTreeMap<Weight, BigInt>> {
        let a = self.algebra;
        let mut rem = g.clone();
        let mut out = BTreeMap::new();
        while !rem.is_zero() {
            let (mu, c) = rem.leading_term(a.order())?;
            if !a.is_dominant_integral(&mu, PositiveSystem::Tilde) {
                return Err(Error::NotSupercharacter(format!(
                    "leading weight {mu} is not dominant integral"
                )));
            }
            let ch = self.char_irrep(&mu)?;
            rem = &rem - &ch.scale(&c);
            out.insert(mu, c);
        }
        Ok(out)
    }
}

pub fn char_irrep(t: &TildeDatum<'_>, mu: &Weight) -> Result<LaurentPoly> {
    t.char_irrep(mu)
}

pub fn char_decompose(t: &TildeDatum<'_>, g: &LaurentPoly) -> Result<BTreeMap<Weight, BigInt>> {
    t.char_decompose(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::parse_algebra;

    #[test]
    fn small_characters() {
        let a = parse_algebra("gl(2|1)").unwrap();
        let t = build_tilde(&a).unwrap();
        assert!(t.char_irrep(&Weight::zero(a.shape())).unwrap().is_one());
        let e1 = a.parse_weight("1,0|0").unwrap();
        assert_eq!(t.char_irrep(&e1).unwrap(), a.parse_poly("x1+x2").unwrap());
        assert!(matches!(t.char_irrep(&a.parse_weight("0,1|0").unwrap()), Err(Error::NotDominant(_))));

        let b = parse_algebra("osp(3|2)").unwrap();
        let t = build_tilde(&b).unwrap();
        let d1 = b.parse_weight("0|1").unwrap();
        assert_eq!(t.char_irrep(&d1).unwrap(), b.parse_poly("y1 + 1 + y1^-1").unwrap());
        // spin representation of the B1 factor
        let half = b.parse_weight("0|1/2").unwrap();
        assert_eq!(t.char_irrep(&half).unwrap(), b.parse_poly("y1^1/2 + y1^-1/2").unwrap());
    }

    /// Weyl dimension formula as an independent check.
    fn weyl_dimension(a: &AlgebraDatum, mu: &Weight) -> num_rational::Ratio<i64> {
        let shifted = mu + a.rho_tilde();
        a.tilde_pos_roots()
            .iter()
            .map(|r| {
                let num = a.pairing(&shifted, r);
                let den = a.pairing(a.rho_tilde(), r);
                num.ratio(&den).unwrap()
            })
            .product()
    }

    #[test]
    fn dimensions_match_weyl_formula() {
        for (alg, lambdas) in [
            ("gl(3|1)", vec!["2,1,0|0", "3,0,-1|2"]),
            ("osp(5|4)", vec!["1,0|2,1", "1/2,1/2|1,1", "2,1|0,0"]),
            ("osp(6|2)", vec!["1,1,1|0", "1,1,-1|2", "1/2,1/2,-1/2|0"]),
            ("G(3)", vec!["1,0,-1|0", "2,1,0|1"]),
        ] {
            let a = parse_algebra(alg).unwrap();
            let t = build_tilde(&a).unwrap();
            for l in lambdas {
                let mu = a.parse_weight(l).unwrap();
                let ch = t.char_irrep(&mu).unwrap();
                let dim = weyl_dimension(&a, &mu);
                assert_eq!(num_rational::Ratio::from_integer(i64::try_from(ch.eval_at_one()).unwrap()), dim, "{alg} {l}");
                assert!(crate::superring::is_w_invariant(&a, &ch).0);
            }
        }
    }

    #[test]
    fn decomposition_examples() {
        let a = parse_algebra("gl(2|1)").unwrap();
        let t = build_tilde(&a).unwrap();
        let g = a.parse_poly("(x1+x2)^2").unwrap();
        let d = t.char_decompose(&g).unwrap();
        let expected: BTreeMap<Weight, BigInt> = [
            (a.parse_weight("2,0|0").unwrap(), BigInt::from(1)),
            (a.parse_weight("1,1|0").unwrap(), BigInt::from(1)),
        ]
        .into_iter()
        .collect();
        assert_eq!(d, expected);
        assert!(t.char_decompose(&LaurentPoly::zero(a.shape())).unwrap().is_empty());
        let mu = a.parse_weight("3,-1|2").unwrap();
        let ch = t.char_irrep(&mu).unwrap();
        assert_eq!(t.char_decompose(&ch).unwrap(), [(mu, BigInt::from(1))].into_iter().collect());
        assert!(t.char_decompose(&a.parse_poly("x1").unwrap()).is_err());
    }
}
