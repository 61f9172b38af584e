use thiserror::Error;

use crate::weightlat::Shape;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("shape mismatch: {left} vs {right}")]
    ShapeMismatch { left: Shape, right: Shape },

    #[error("exponent outside the lattice: {0}")]
    Lattice(String),

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("not divisible")]
    NotDivisible,

    #[error("leading term of the zero polynomial")]
    ZeroPolynomial,

    #[error("invalid monomial order: {0}")]
    InvalidOrder(String),

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("invalid isotropic set: {0}")]
    InvalidIsoSet(String),

    #[error("Weyl group of order {size} exceeds the bound {bound}")]
    WeylGroupTooLarge { size: u128, bound: u128 },

    #[error("parity undefined for {0}")]
    Parity(String),

    #[error("weight {0} is not dominant integral")]
    NotDominant(String),

    #[error("not W-invariant: {0}")]
    NotWInvariant(String),

    #[error("not in the kernel: {0}")]
    NotInKernel(String),

    #[error("not a supercharacter: {0}")]
    NotSupercharacter(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}
