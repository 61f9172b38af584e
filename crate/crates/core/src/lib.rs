//! Supercharacter rings of contragredient Lie superalgebras.
//!
//! Supercharacters are stored as sparse Laurent polynomials with exact integer
//! coefficients. The Duflo-Serganova homomorphism `ds_x` becomes a monomial
//! substitution followed by a relabeling of the surviving variables.

pub mod cli;
pub mod dshom;
pub mod error;
pub mod generators;
pub mod kackernel;
pub mod rootdata;
pub mod superring;
pub mod verify;
pub mod weightlat;
pub mod weylchar;

pub use error::{Error, Result};

pub use weightlat::{LaurentPoly, MonomialOrder, Shape, Weight};
