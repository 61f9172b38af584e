//! The kernel basis `k(lambda)` of `ds_x`, Kac module supercharacters and
//! decomposition of kernel elements.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rootdata::{AlgebraDatum, IsoSet, PositiveSystem};
use crate::superring::is_w_invariant;
use crate::weightlat::{LaurentPoly, Weight};
use crate::weylchar::build_tilde;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LatticeMode {
    /// Keys in `P0+ + rho_iso`.
    Algebra,
    /// Keys additionally with integral coordinates.
    Group,
}

/// Sign and denominator conventions for the alternating-sum form of `k(lambda)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlternatingConvention {
    /// `R1 = prod (1 - e^-b)` over all positive odd roots, sign
    /// `(-1)^{l(w) + p(w(lambda+rho) - rho)}`.
    Printed,
    /// As `Printed` with sign `(-1)^{l(w) + p(w(lambda+rho) - (lambda+rho))}`.
    Shifted,
    /// `R1 = prod (1 - e^-b)` over isotropic and `prod (1 + e^-b)` over
    /// non-isotropic positive odd roots, sign `(-1)^{l(w)}`.
    Split,
}

/// `b_lambda` coefficients of a kernel element.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct KernelDecomposition {
    pub coeffs: BTreeMap<Weight, BigInt>,
}

impl KernelDecomposition {
    /// Rebuilds `sum b_lambda k(lambda)`.
    pub fn recombine(&self, a: &AlgebraDatum) -> Result<LaurentPoly> {
        let mut out = LaurentPoly::zero(a.shape());
        for (lambda, b) in &self.coeffs {
            out = &out + &kac_k(a, lambda)?.scale(b);
        }
        Ok(out)
    }
}

impl fmt::Display for KernelDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (lambda, b) in &self.coeffs {
            writeln!(f, "{lambda}: {b}")?;
        }
        Ok(())
    }
}

fn require_classical(a: &AlgebraDatum) -> Result<()> {
    if a.family().is_classical() {
        Ok(())
    } else {
        Err(Error::Unsupported(format!("kernel basis for {}", a.name())))
    }
}

/// `prod (1 - e^{-root})`.
pub fn product_one_minus(a: &AlgebraDatum, roots: &[Weight]) -> LaurentPoly {
    roots.iter().fold(LaurentPoly::one(a.shape()), |acc, r| {
        &acc * &(&LaurentPoly::one(a.shape()) - &LaurentPoly::exp(&-r))
    })
}

fn product_one_plus(a: &AlgebraDatum, roots: &[Weight]) -> LaurentPoly {
    roots.iter().fold(LaurentPoly::one(a.shape()), |acc, r| {
        &acc * &(&LaurentPoly::one(a.shape()) + &LaurentPoly::exp(&-r))
    })
}

/// `e^{rho_iso} prod_{iso+} (1 - e^{-alpha})`, the factor shared by the kernel.
pub fn kernel_factor(a: &AlgebraDatum) -> LaurentPoly {
    product_one_minus(a, a.pos_iso_roots()).shift(a.rho_iso())
}

/// `k(lambda) = e^{rho_iso} prod (1 - e^{-alpha}) ch L~(lambda - rho_iso)`.
pub fn kac_k(a: &AlgebraDatum, lambda: &Weight) -> Result<LaurentPoly> {
    require_classical(a)?;
    a.shape().check(&lambda.shape())?;
    let mu = lambda - a.rho_iso();
    let t = build_tilde(a)?;
    Ok(&kernel_factor(a) * &t.char_irrep(&mu)?)
}

/// `k(lambda)` through the alternating sum over W followed by exact division
/// by `prod_{even+} (1 - e^{-alpha})`.
pub fn kac_k_alternating(a: &AlgebraDatum, lambda: &Weight, conv: AlternatingConvention) -> Result<LaurentPoly> {
    require_classical(a)?;
    let mu = lambda - a.rho_iso();
    if !a.is_dominant_integral(&mu, PositiveSystem::Tilde) {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    let rho = a.rho();
    let top = lambda + &rho;
    let mut sum = LaurentPoly::zero(a.shape());
    for w in a.weyl_elements() {
        let image = a.weyl_act(&w, &top);
        let p = match conv {
            AlternatingConvention::Printed => a.parity(&(&image - &rho))?,
            AlternatingConvention::Shifted => a.parity(&(&image - &top))?,
            AlternatingConvention::Split => 0,
        };
        let sign = if p == 0 { w.length_parity as i64 } else { -(w.length_parity as i64) };
        sum = &sum + &LaurentPoly::monomial(&(&image - &rho), sign);
    }
    let r1 = match conv {
        AlternatingConvention::Printed | AlternatingConvention::Shifted => product_one_minus(a, a.pos_odd_roots()),
        AlternatingConvention::Split => {
            let non_iso: Vec<Weight> =
                a.pos_odd_roots().iter().filter(|b| !a.pos_iso_roots().contains(b)).cloned().collect();
            &product_one_minus(a, a.pos_iso_roots()) * &product_one_plus(a, &non_iso)
        }
    };
    let r0 = product_one_minus(a, a.pos_even_roots());
    (&r1 * &sum).exact_divide(&r0, a.order())
}

/// Supercharacter of the Kac module `K(lambda)` for gl and sl:
/// `prod_{odd+} (1 - e^{-beta}) ch L0(lambda)`.
pub fn sch_kac(a: &AlgebraDatum, lambda: &Weight) -> Result<LaurentPoly> {
    if !a.family().is_gl_type() {
        return Err(Error::Unsupported(format!("Kac modules for {}", a.name())));
    }
    if !a.is_dominant_integral(lambda, PositiveSystem::Even) {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    let t = build_tilde(a)?;
    Ok(&product_one_minus(a, a.pos_odd_roots()) * &t.char_irrep(lambda)?)
}

/// Whether `ds` along the single root of `b` kills `f`.
pub fn kernel_member(a: &AlgebraDatum, b: &IsoSet, f: &LaurentPoly) -> Result<bool> {
    if b.len() != 1 {
        return Err(Error::InvalidIsoSet(format!("expected one root, got {}", b.len())));
    }
    let rule = a.restriction_rule(&b.roots()[0])?;
    Ok(f.substitute(&[rule])?.is_zero())
}

/// Expresses a kernel element in the basis `k(lambda)`.
pub fn kernel_decompose(a: &AlgebraDatum, f: &LaurentPoly, mode: LatticeMode) -> Result<KernelDecomposition> {
    require_classical(a)?;
    a.shape().check(&f.shape())?;
    if let (false, Some(w)) = is_w_invariant(a, f) {
        return Err(Error::NotWInvariant(format!("moved by {w}")));
    }
    if f.is_zero() {
        return Ok(KernelDecomposition::default());
    }
    let g = f.exact_divide(&kernel_factor(a), a.order()).map_err(|e| match e {
        Error::NotDivisible => Error::NotInKernel("not divisible by the isotropic factor".into()),
        e => e,
    })?;
    let t = build_tilde(a)?;
    let chars = t.char_decompose(&g).map_err(|e| match e {
        Error::NotSupercharacter(m) => Error::NotInKernel(m),
        e => e,
    })?;
    let mut coeffs = BTreeMap::new();
    for (mu, b) in chars {
        if b.is_zero() {
            continue;
        }
        let lambda = &mu + a.rho_iso();
        if !a.is_dominant_integral(&mu, PositiveSystem::Even) {
            return Err(Error::NotInKernel(format!("{lambda} - rho_iso is not in P0+")));
        }
        if mode == LatticeMode::Group && !mu.is_integral() {
            return Err(Error::NotInKernel(format!("{lambda} - rho_iso is not integral")));
        }
        coeffs.insert(lambda, b);
    }
    Ok(KernelDecomposition { coeffs })
}
