//! The Duflo-Serganova homomorphism on supercharacter rings, realised as
//! restriction to `e^beta = 1` for every `beta` in an isotropic set followed by
//! dropping the eliminated variables.

use crate::error::{Error, Result};
use crate::rootdata::{build_algebra, iso_set_validate, AlgebraDatum, Family, IsoSet};
use crate::weightlat::{LaurentPoly, SubstitutionRule, Weight};

#[derive(Clone, Debug)]
pub struct DsMap {
    source: AlgebraDatum,
    roots: IsoSet,
    target: AlgebraDatum,
    rules: Vec<SubstitutionRule>,
    /// Source coordinate -> target coordinate; `None` for dropped coordinates.
    relabel: Vec<Option<usize>>,
}

fn target_algebra(a: &AlgebraDatum, k: usize) -> Result<AlgebraDatum> {
    if k == 0 {
        return Ok(a.clone());
    }
    let (m, n) = (a.m(), a.n());
    match a.family() {
        Family::Gl => build_algebra(Family::Gl, m - k, n - k, None),
        Family::Sl => build_algebra(Family::Sl, m - k, n - k, None),
        Family::OspB => build_algebra(Family::OspB, m - k, n - k, None),
        Family::OspD | Family::OspC if m - k == 1 => build_algebra(Family::OspC, 1, n - k, None),
        Family::OspD | Family::OspC => build_algebra(Family::OspD, m - k, n - k, None),
        Family::F4 => build_algebra(Family::Sl, 3, 0, None),
        Family::G3 => build_algebra(Family::Sl, 2, 0, None),
        Family::D21a => Ok(AlgebraDatum::abelian(3, a.shape().denom)),
        Family::Abelian => Err(Error::InvalidIsoSet("abelian algebras have no odd roots".into())),
    }
}

pub fn build_ds(a: &AlgebraDatum, roots: &IsoSet) -> Result<DsMap> {
    if a.family().is_exceptional() && !roots.is_empty() {
        let rep = a.iso_representative().expect("exceptional algebras have isotropic roots");
        for beta in roots.roots() {
            let conjugate = a.weyl_elements().any(|w| {
                let x = a.weyl_act(&w, &rep);
                x == *beta || x == -beta
            });
            if !conjugate {
                return Err(Error::InvalidIsoSet(format!(
                    "{} is not conjugate to {}",
                    a.format_root(beta),
                    a.format_root(&rep)
                )));
            }
        }
    }
    let shape = a.shape();
    let mut rules = Vec::new();
    let mut dropped = vec![false; shape.dim()];
    for beta in roots.roots() {
        let rule = a.restriction_rule(beta)?;
        if a.family() != Family::D21a {
            dropped[rule.var] = true;
        }
        if a.family().is_classical() {
            let s = (shape.m..shape.dim())
                .find(|&j| beta.coords()[j] != 0)
                .ok_or_else(|| Error::InvalidIsoSet(format!("{beta} has no delta component")))?;
            dropped[s] = true;
        }
        rules.push(rule);
    }
    let target = target_algebra(a, roots.len())?;
    let mut relabel = Vec::with_capacity(shape.dim());
    let mut next = 0;
    for d in dropped {
        if d {
            relabel.push(None);
        } else {
            relabel.push(Some(next));
            next += 1;
        }
    }
    if next != target.shape().dim() {
        return Err(Error::Internal(format!("{} variables survive into {}", next, target.name())));
    }
    Ok(DsMap { source: a.clone(), roots: roots.clone(), target, rules, relabel })
}

impl DsMap {
    pub fn source(&self) -> &AlgebraDatum {
        &self.source
    }

    pub fn roots(&self) -> &IsoSet {
        &self.roots
    }

    pub fn target(&self) -> &AlgebraDatum {
        &self.target
    }

    pub fn rules(&self) -> &[SubstitutionRule] {
        &self.rules
    }

    pub fn relabel(&self) -> &[Option<usize>] {
        &self.relabel
    }

    fn substitute(&self, e: &[i64]) -> Result<Vec<i64>> {
        let mut e = e.to_vec();
        for r in &self.rules {
            e = r.apply(&e)?;
        }
        Ok(e)
    }

    fn relabel_exponent(&self, e: &[i64]) -> Result<Vec<i64>> {
        let mut out = vec![0; self.target.shape().dim()];
        for (i, &x) in e.iter().enumerate() {
            match self.relabel[i] {
                Some(j) => out[j] = x,
                None if x != 0 => {
                    return Err(Error::NotSupercharacter(format!(
                        "restriction still depends on eliminated coordinate {}",
                        i + 1
                    )))
                }
                None => {}
            }
        }
        Ok(out)
    }

    /// Carries a weight orthogonal to the isotropic set into the target.
    pub fn transport(&self, mu: &Weight) -> Result<Weight> {
        Weight::new(self.target.shape(), self.relabel_exponent(&self.substitute(mu.coords())?)?)
    }

    /// Restriction followed by relabeling. Fails if the restriction still
    /// involves a dropped variable, which cannot happen for supercharacters.
    pub fn apply(&self, f: &LaurentPoly) -> Result<LaurentPoly> {
        self.source.shape().check(&f.shape())?;
        f.substitute(&self.rules)?
            .map_exponents(self.target.shape(), |e| self.relabel_exponent(e))
    }

    /// Roots of `g_x`: orthogonal to every `beta`, not `±beta`, transported.
    pub fn target_roots(&self) -> Result<Vec<Weight>> {
        let a = &self.source;
        a.even_roots()
            .iter()
            .chain(a.odd_roots())
            .filter(|r| {
                self.roots.roots().iter().all(|b| a.pairing(r, b).is_zero() && *r != b && **r != -b)
            })
            .map(|r| self.transport(r))
            .collect()
    }
}

pub fn ds_apply(d: &DsMap, f: &LaurentPoly) -> Result<LaurentPoly> {
    d.apply(f)
}

/// Applies single-root maps for `roots` from the last to the first,
/// transporting the remaining roots at each step.
pub fn ds_iterated(a: &AlgebraDatum, roots: &[Weight], f: &LaurentPoly) -> Result<(AlgebraDatum, LaurentPoly)> {
    let mut alg = a.clone();
    let mut f = f.clone();
    let mut remaining = roots.to_vec();
    while let Some(beta) = remaining.pop() {
        let d = build_ds(&alg, &iso_set_validate(&alg, vec![beta])?)?;
        f = d.apply(&f)?;
        remaining = remaining.iter().map(|r| d.transport(r)).collect::<Result<_>>()?;
        alg = d.target;
    }
    Ok((alg, f))
}

/// One-shot `ds` along `B` agrees with the iterated composition in the given order.
pub fn ds_compose_check(a: &AlgebraDatum, roots: &IsoSet, f: &LaurentPoly) -> Result<bool> {
    let one_shot = build_ds(a, roots)?.apply(f)?;
    let (_, iterated) = ds_iterated(a, roots.roots(), f)?;
    Ok(one_shot == iterated)
}
