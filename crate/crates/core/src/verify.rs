//! Seeded random corpora and the property suites run by `superchar verify`.

use num_bigint::BigInt;
use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::dshom::{build_ds, ds_iterated};
use crate::error::{Error, Result};
use crate::generators::{
    exc_image_elements, exc_image_generators, exc_image_membership, gens_hk, gens_hk_inverse, gl_units,
    verify_generator_transfer,
};
use crate::kackernel::{kac_k, kernel_decompose, kernel_member, LatticeMode};
use crate::rootdata::{iso_set_validate, AlgebraDatum, Family, IsoSet, PositiveSystem};
use crate::superring::{is_supersymmetric, is_w_invariant};
use crate::weightlat::{LaurentPoly, Weight};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Summary printed by `verify`.
#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub suite: String,
    pub algebra: String,
    pub seed: u64,
    pub checks: usize,
    pub failures: usize,
    pub counterexample: Option<String>,
}

impl VerifyReport {
    fn new(suite: &str, a: &AlgebraDatum, seed: u64) -> Self {
        VerifyReport { suite: suite.into(), algebra: a.name(), seed, checks: 0, failures: 0, counterexample: None }
    }

    pub fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.counterexample.is_none() {
                self.counterexample = Some(what());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Generators from which random ring elements are built.
pub fn corpus_generators(a: &AlgebraDatum) -> Result<Vec<LaurentPoly>> {
    let mut gens = Vec::new();
    match a.family() {
        Family::Gl => {
            gens.extend(gens_hk(a, 3)?);
            gens.extend(gens_hk_inverse(a, 2)?);
            gens.extend(gl_units(a)?);
        }
        Family::Sl => {
            gens.extend(gens_hk(a, 3)?);
            gens.extend(gens_hk_inverse(a, 2)?);
        }
        Family::OspB | Family::OspC | Family::OspD => gens.extend(gens_hk(a, 3)?),
        Family::G3 => {
            let e = exc_image_elements(a)?;
            gens.push(e[0].1.clone());
            gens.push(&e[1].1 * &a.parse_poly("u1+u2+u3")?);
            gens.push(&e[1].1 * &a.parse_poly("v1")?);
        }
        Family::F4 => {
            let e = exc_image_elements(a)?;
            gens.push(e[0].1.clone());
            gens.push(e[1].1.clone());
            gens.push(&e[2].1 * &a.parse_poly("y1^2 + y1^-2")?);
        }
        Family::D21a => {
            for (name, f) in exc_image_elements(a)? {
                if name == "Q" {
                    gens.push(&f * &a.parse_poly("u1*u2")?);
                    gens.push(f);
                } else {
                    gens.push(f);
                }
            }
        }
        Family::Abelian => return Err(Error::Unsupported("abelian corpora".into())),
    }
    Ok(gens)
}

/// A random integer combination of products of at most `depth` generators.
pub fn random_member<R: Rng>(a: &AlgebraDatum, gens: &[LaurentPoly], depth: usize, rng: &mut R) -> LaurentPoly {
    let mut f = LaurentPoly::zero(a.shape());
    for _ in 0..rng.gen_range(1..=3) {
        let mut p = LaurentPoly::constant(a.shape(), rng.gen_range(-3i64..=3));
        for _ in 0..rng.gen_range(0..=depth) {
            p = &p * gens.choose(rng).expect("non-empty generator list");
        }
        f = &f + &p;
    }
    f
}

pub fn random_corpus(a: &AlgebraDatum, seed: u64, count: usize) -> Result<Vec<LaurentPoly>> {
    let gens = corpus_generators(a)?;
    let mut r = rng(seed);
    Ok((0..count).map(|_| random_member(a, &gens, 2, &mut r)).collect())
}

/// A weight `lambda` with `lambda - rho_iso` dominant integral for both the
/// even and the auxiliary positive systems.
pub fn random_kernel_weight<R: Rng>(a: &AlgebraDatum, bound: i64, rng: &mut R) -> Weight {
    let s = a.shape();
    loop {
        let coords: Vec<i64> = (0..s.dim()).map(|_| rng.gen_range(-bound..=bound) * s.denom).collect();
        let mu = a.dominant_representative(&Weight::new(s, coords).expect("integral coordinates"));
        if a.is_dominant_integral(&mu, PositiveSystem::Even) && a.is_dominant_integral(&mu, PositiveSystem::Tilde) {
            return &mu + a.rho_iso();
        }
    }
}

/// All single isotropic roots up to sign, for use as `B`.
pub fn single_root_sets(a: &AlgebraDatum) -> Vec<IsoSet> {
    a.pos_iso_roots().iter().filter_map(|b| iso_set_validate(a, vec![b.clone()]).ok()).collect()
}

fn closure_ok(a: &AlgebraDatum, f: &LaurentPoly) -> Result<bool> {
    Ok(is_w_invariant(a, f).0 && is_supersymmetric(a, f)?.0)
}

/// Additivity, multiplicativity, superdimension and closure of `ds` on pairs
/// of random members.
pub fn suite_homomorphism(a: &AlgebraDatum, b: &IsoSet, seed: u64, pairs: usize) -> Result<VerifyReport> {
    let mut rep = VerifyReport::new("homomorphism", a, seed);
    let d = build_ds(a, b)?;
    let corpus = random_corpus(a, seed, 2 * pairs)?;
    for pair in corpus.chunks(2) {
        let (f, g) = (&pair[0], &pair[1]);
        let (df, dg) = (d.apply(f)?, d.apply(g)?);
        rep.check(d.apply(&(f + g))? == &df + &dg, || format!("additivity fails for f = {f}, g = {g}"));
        rep.check(d.apply(&(f * g))? == &df * &dg, || format!("multiplicativity fails for f = {f}, g = {g}"));
        rep.check(df.eval_at_one() == f.eval_at_one(), || format!("superdimension changes for {f}"));
        rep.check(closure_ok(d.target(), &df)?, || format!("ds({f}) = {df} is not a supercharacter"));
    }
    Ok(rep)
}

/// `ds(h_k) = h_k` for every single isotropic root and `k <= order`.
pub fn suite_transfer(a: &AlgebraDatum, order: usize, seed: u64) -> Result<VerifyReport> {
    let mut rep = VerifyReport::new("transfer", a, seed);
    for b in single_root_sets(a) {
        let ok = verify_generator_transfer(a, &b, order)?;
        rep.check(ok, || format!("transfer fails along {}", a.format_root(&b.roots()[0])));
    }
    Ok(rep)
}

/// Random kernel elements are killed by `ds` and decompose back.
pub fn suite_kernel(a: &AlgebraDatum, seed: u64, count: usize) -> Result<VerifyReport> {
    let mut rep = VerifyReport::new("kernel", a, seed);
    let mut r = rng(seed);
    let sets = single_root_sets(a);
    for _ in 0..count {
        let mut expected = std::collections::BTreeMap::new();
        for _ in 0..r.gen_range(1..=3) {
            let c: i64 = r.gen_range(1..=5) * if r.gen_bool(0.5) { 1 } else { -1 };
            *expected.entry(random_kernel_weight(a, 2, &mut r)).or_insert(BigInt::from(0)) += c;
        }
        expected.retain(|_, c: &mut BigInt| *c != BigInt::from(0));
        let mut f = LaurentPoly::zero(a.shape());
        for (l, c) in &expected {
            f = &f + &kac_k(a, l)?.scale(c);
        }
        let b = sets.choose(&mut r).expect("algebra has isotropic roots");
        rep.check(kernel_member(a, b, &f)?, || format!("ds does not kill {f}"));
        let got = kernel_decompose(a, &f, LatticeMode::Algebra).map(|d| d.coeffs);
        rep.check(got.as_ref().ok() == Some(&expected), || format!("decomposition of {f} gives {got:?}"));
    }
    Ok(rep)
}

/// Images of the exceptional elements and membership of random images.
pub fn suite_exceptional(a: &AlgebraDatum, seed: u64, count: usize) -> Result<VerifyReport> {
    let mut rep = VerifyReport::new("exceptional", a, seed);
    let beta = a.iso_representative().ok_or_else(|| Error::Unsupported("no isotropic roots".into()))?;
    let d = build_ds(a, &iso_set_validate(a, vec![beta])?)?;
    let (_, gens) = exc_image_generators(a)?;
    for (name, f) in exc_image_elements(a)? {
        let img = d.apply(&f)?;
        if name == "P" || name == "Q" {
            rep.check(img.is_zero(), || format!("ds({name}) = {img}"));
        }
        rep.check(closure_ok(a, &f)?, || format!("{name} is not a supercharacter"));
    }
    let corpus = random_corpus(a, seed, count)?;
    for f in &corpus {
        let img = d.apply(f)?;
        let m = exc_image_membership(a, &img)?;
        rep.check(m.member, || format!("ds({f}) = {img} not recognised in the image"));
    }
    for (name, g) in &gens {
        for k in 0..=3u32 {
            rep.check(exc_image_membership(a, &g.pow(k))?.member, || format!("{name}^{k} rejected"));
        }
    }
    Ok(rep)
}

/// One-shot `ds` against every ordering of iterated single-root maps.
pub fn composition_agrees(a: &AlgebraDatum, b: &IsoSet, f: &LaurentPoly) -> Result<bool> {
    use itertools::Itertools;
    let one_shot = build_ds(a, b)?.apply(f)?;
    for perm in b.roots().iter().cloned().permutations(b.len()) {
        if ds_iterated(a, &perm, f)?.1 != one_shot {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Twist exponents used by the gl twist checks.
pub fn twist_values() -> [Ratio<i64>; 2] {
    [Ratio::new(1, 2), Ratio::new(1, 3)]
}
