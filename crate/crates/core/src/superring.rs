//! Membership in the supercharacter ring: W-invariance plus supersymmetry.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::error::Result;
use crate::rootdata::{AlgebraDatum, FormValue, SignedPerm, WeylElement};
use crate::weightlat::{LaurentPoly, Weight};

/// Evidence that `f` depends on the isotropic direction after restriction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupersymmetryWitness {
    pub root: Weight,
    /// Value of `(mu, beta)` on the offending stratum.
    pub grade: FormValue,
    /// The restricted terms of that grade.
    pub residue: LaurentPoly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MembershipReport {
    pub w_invariant: bool,
    pub supersymmetric: bool,
    pub witness: Option<String>,
}

impl MembershipReport {
    pub fn is_member(&self) -> bool {
        self.w_invariant && self.supersymmetric
    }
}

impl fmt::Display for MembershipReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serde_json::to_string(self).map_err(|_| fmt::Error)?)
    }
}

/// Checks invariance under a generating set of the Weyl group and returns the
/// first generator that moves `f`.
pub fn is_w_invariant(a: &AlgebraDatum, f: &LaurentPoly) -> (bool, Option<WeylElement>) {
    for g in a.weyl_generators() {
        if a.weyl_act_poly(&g, f) != *f {
            return (false, Some(g));
        }
    }
    (true, None)
}

/// Restricts `f` to the hyperplane `e^beta = 1` of a representative isotropic
/// root and requires every stratum with `(mu, beta) != 0` to cancel. For
/// W-invariant `f` this covers every isotropic root.
pub fn is_supersymmetric(a: &AlgebraDatum, f: &LaurentPoly) -> Result<(bool, Option<SupersymmetryWitness>)> {
    let Some(beta) = a.iso_representative() else {
        return Ok((true, None));
    };
    supersymmetric_along(a, &beta, f)
}

pub fn supersymmetric_along(
    a: &AlgebraDatum,
    beta: &Weight,
    f: &LaurentPoly,
) -> Result<(bool, Option<SupersymmetryWitness>)> {
    let rule = a.restriction_rule(beta)?;
    let mut strata: BTreeMap<(FormValue, Vec<i64>), BigInt> = BTreeMap::new();
    for (mu, c) in f.weights() {
        let grade = a.pairing(&mu, beta);
        let restricted = rule.apply(mu.coords())?;
        *strata.entry((grade, restricted)).or_default() += c;
    }
    let bad = strata
        .iter()
        .find(|((g, _), c)| !g.is_zero() && !c.is_zero())
        .map(|((g, _), _)| *g);
    let Some(grade) = bad else {
        return Ok((true, None));
    };
    let residue = LaurentPoly::from_terms(
        f.shape(),
        strata
            .into_iter()
            .filter(|((g, _), _)| *g == grade)
            .map(|((_, e), c)| (e, c)),
    )?;
    Ok((false, Some(SupersymmetryWitness { root: beta.clone(), grade, residue })))
}

pub fn membership_report(a: &AlgebraDatum, f: &LaurentPoly) -> Result<MembershipReport> {
    let (w_invariant, w_witness) = is_w_invariant(a, f);
    let (supersymmetric, s_witness) = is_supersymmetric(a, f)?;
    let witness = match (w_witness, s_witness) {
        (Some(w), _) => Some(format!("not W-invariant under {w}")),
        (None, Some(s)) => Some(format!(
            "t-dependent along {}: stratum of grade {} restricts to {}",
            a.format_root(&s.root),
            s.grade,
            s.residue
        )),
        (None, None) => None,
    };
    Ok(MembershipReport { w_invariant, supersymmetric, witness })
}

/// Membership in the supercharacter ring of the supergroup: integral
/// exponents, invariance under all sign changes for osp, W-invariance and
/// supersymmetry.
pub fn is_in_jg(a: &AlgebraDatum, f: &LaurentPoly) -> Result<bool> {
    if !f.weights().all(|(w, _)| w.is_integral()) {
        return Ok(false);
    }
    if a.family().is_osp() {
        let s = a.shape();
        for i in 0..s.dim() {
            let flip = |r: usize, k: Option<usize>| {
                let mut p = SignedPerm::identity(r);
                if let Some(k) = k {
                    p.sign[k] = -1;
                }
                p
            };
            let (e, d) = if i < s.m { (flip(s.m, Some(i)), flip(s.n, None)) } else { (flip(s.m, None), flip(s.n, Some(i - s.m))) };
            let w = WeylElement { eps_perm: e, delta_perm: d, length_parity: -1 };
            if a.weyl_act_poly(&w, f) != *f {
                return Ok(false);
            }
        }
    }
    Ok(is_w_invariant(a, f).0 && is_supersymmetric(a, f)?.0)
}
