//! Weight lattice, monomial orders and the Laurent polynomial engine.

mod json;
mod order;
mod poly;
mod text;
mod weight;

pub use order::MonomialOrder;
pub use poly::{LaurentPoly, SubstitutionRule};
pub use text::{parse_with, standard_variable};
pub use weight::{parse_ratio, parse_real_vector, Shape, Weight};

pub(crate) use weight::fmt_ratio;

use num_bigint::BigInt;

use crate::error::Result;

pub fn poly_add(f: &LaurentPoly, g: &LaurentPoly) -> Result<LaurentPoly> {
    f.try_add(g)
}

pub fn poly_mul(f: &LaurentPoly, g: &LaurentPoly) -> Result<LaurentPoly> {
    f.try_mul(g)
}

pub fn poly_substitute(f: &LaurentPoly, rules: &[SubstitutionRule]) -> Result<LaurentPoly> {
    f.substitute(rules)
}

pub fn poly_exact_divide(f: &LaurentPoly, d: &LaurentPoly, order: &MonomialOrder) -> Result<LaurentPoly> {
    f.exact_divide(d, order)
}

pub fn poly_eval_at_one(f: &LaurentPoly) -> BigInt {
    f.eval_at_one()
}

pub fn leading_term(f: &LaurentPoly, order: &MonomialOrder) -> Result<(Weight, BigInt)> {
    f.leading_term(order)
}
