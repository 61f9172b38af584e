//! Root data, invariant forms, Weyl groups and dominance for the supported
//! contragredient Lie superalgebras.
//!
//! Weights are stored in the variable coordinates of the supercharacter ring:
//! `x_i = e^{eps_i}`, `y_j = e^{delta_j}`, except for F(4) where
//! `x_i = e^{eps_i/2}`, `y = e^{delta/2}`, and G(3) where only `eps_1, eps_2`
//! are kept (`eps_3 = -eps_1 - eps_2`).

mod parse;
mod weyl;

use std::fmt;

use num_rational::Ratio;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::weightlat::{LaurentPoly, MonomialOrder, Shape, SubstitutionRule, Weight};

pub use parse::{parse_algebra, parse_basis_vector};
pub use weyl::{Block, BlockKind, SignedPerm, WeylElement, WeylStructure};

/// Default bound on materialised Weyl groups.
pub const WEYL_BOUND: u128 = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Gl,
    Sl,
    /// `osp(2m+1|2n)`.
    OspB,
    /// `osp(2|2n)`, stored with `m = 1`.
    OspC,
    /// `osp(2m|2n)` with `m != 1`.
    OspD,
    D21a,
    F4,
    G3,
    /// Abelian Lie algebra of rank `m`; the image of D(2,1;alpha) under `ds`.
    Abelian,
}

impl Family {
    pub fn is_classical(&self) -> bool {
        matches!(self, Family::Gl | Family::Sl | Family::OspB | Family::OspC | Family::OspD)
    }

    pub fn is_gl_type(&self) -> bool {
        matches!(self, Family::Gl | Family::Sl)
    }

    pub fn is_osp(&self) -> bool {
        matches!(self, Family::OspB | Family::OspC | Family::OspD)
    }

    pub fn is_exceptional(&self) -> bool {
        matches!(self, Family::D21a | Family::F4 | Family::G3)
    }
}

/// The D(2,1;alpha) parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Alpha {
    Rational(Ratio<i64>),
    /// A transcendental parameter, kept symbolic in the form.
    Generic,
}

/// A value `c + a * alpha` of the invariant form; `a` is only non-zero for a
/// generic D(2,1;alpha).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FormValue {
    pub c: Ratio<i64>,
    pub a: Ratio<i64>,
}

impl FormValue {
    pub fn constant(c: i64) -> Self {
        FormValue { c: Ratio::from_integer(c), a: Ratio::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_zero() && self.a.is_zero()
    }

    /// `self / other` when it is a well-defined rational number.
    pub fn ratio(&self, other: &FormValue) -> Option<Ratio<i64>> {
        if !other.a.is_zero() {
            let r = self.a / other.a;
            (self.c == r * other.c).then_some(r)
        } else if !other.c.is_zero() && self.a.is_zero() {
            Some(self.c / other.c)
        } else {
            None
        }
    }
}

impl fmt::Display for FormValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.a.is_zero() {
            write!(f, "{}", self.c)
        } else {
            write!(f, "{} + {}*alpha", self.c, self.a)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PositiveSystem {
    /// The even positive roots.
    Even,
    /// The positive roots of the auxiliary reductive algebra.
    Tilde,
}

/// Everything about one superalgebra that the character computations need.
#[derive(Clone, Debug)]
pub struct AlgebraDatum {
    family: Family,
    m: usize,
    n: usize,
    alpha: Option<Alpha>,
    shape: Shape,
    gram: Vec<Vec<FormValue>>,
    even_roots: Vec<Weight>,
    odd_roots: Vec<Weight>,
    pos_even: Vec<Weight>,
    pos_odd: Vec<Weight>,
    iso_roots: Vec<Weight>,
    pos_iso: Vec<Weight>,
    tilde_pos: Vec<Weight>,
    rho0: Weight,
    rho1: Weight,
    rho_iso: Weight,
    rho_tilde: Weight,
    order: MonomialOrder,
    weyl: WeylStructure,
}

/// An ordered set of mutually orthogonal, linearly independent isotropic roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoSet {
    roots: Vec<Weight>,
}

impl IsoSet {
    pub fn roots(&self) -> &[Weight] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }
}

struct Table {
    shape: Shape,
    gram: Vec<Vec<FormValue>>,
    even: Vec<Vec<i64>>,
    odd: Vec<Vec<i64>>,
    phi: Vec<i64>,
    weyl: WeylStructure,
}

fn block(kind: BlockKind, rank: usize) -> Block {
    Block { kind, rank }
}

fn diag(entries: &[FormValue]) -> Vec<Vec<FormValue>> {
    let k = entries.len();
    (0..k)
        .map(|i| (0..k).map(|j| if i == j { entries[i] } else { FormValue::default() }).collect())
        .collect()
}

/// Accumulates `±coef * unit` vectors in real integer coordinates.
fn vecs(dim: usize, parts: &[&[(usize, i64)]]) -> Vec<Vec<i64>> {
    parts
        .iter()
        .map(|p| {
            let mut v = vec![0; dim];
            for &(i, c) in p.iter() {
                v[i] += c;
            }
            v
        })
        .collect()
}

fn with_negatives(v: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
    let neg: Vec<Vec<i64>> = v.iter().map(|r| r.iter().map(|c| -c).collect()).collect();
    v.into_iter().chain(neg).collect()
}

fn classical_table(family: Family, m: usize, n: usize) -> Table {
    let dim = m + n;
    let e = |i: usize| i;
    let d = |j: usize| m + j;
    let mut even = Vec::new();
    let mut odd = Vec::new();
    match family {
        Family::Gl | Family::Sl => {
            for i in 0..m {
                for j in i + 1..m {
                    even.extend(vecs(dim, &[&[(e(i), 1), (e(j), -1)]]));
                }
                for j in 0..n {
                    odd.extend(vecs(dim, &[&[(e(i), 1), (d(j), -1)]]));
                }
            }
            for i in 0..n {
                for j in i + 1..n {
                    even.extend(vecs(dim, &[&[(d(i), 1), (d(j), -1)]]));
                }
            }
        }
        _ => {
            for i in 0..m {
                for j in i + 1..m {
                    even.extend(vecs(dim, &[&[(e(i), 1), (e(j), -1)], &[(e(i), 1), (e(j), 1)]]));
                }
                if family == Family::OspB {
                    even.extend(vecs(dim, &[&[(e(i), 1)]]));
                }
            }
            for i in 0..n {
                for j in i + 1..n {
                    even.extend(vecs(dim, &[&[(d(i), 1), (d(j), -1)], &[(d(i), 1), (d(j), 1)]]));
                }
                even.extend(vecs(dim, &[&[(d(i), 2)]]));
                if family == Family::OspB {
                    odd.extend(vecs(dim, &[&[(d(i), 1)]]));
                }
                for j in 0..m {
                    odd.extend(vecs(dim, &[&[(d(i), 1), (e(j), -1)], &[(d(i), 1), (e(j), 1)]]));
                }
            }
        }
    }
    let mut form = vec![FormValue::constant(1); m];
    form.extend(vec![FormValue::constant(-1); n]);
    let (phi, weyl) = match family {
        Family::Gl | Family::Sl => (
            (1..=dim as i64).rev().collect(),
            WeylStructure { eps: block(BlockKind::Symmetric, m), delta: block(BlockKind::Symmetric, n), g2_lift: false },
        ),
        _ => {
            let mut phi: Vec<i64> = (1..=m as i64).rev().collect();
            phi.extend((m as i64 + 1..=dim as i64).rev());
            let eps_kind = if family == Family::OspB { BlockKind::Hyperoctahedral } else { BlockKind::EvenFlips };
            (
                phi,
                WeylStructure { eps: block(eps_kind, m), delta: block(BlockKind::Hyperoctahedral, n), g2_lift: false },
            )
        }
    };
    Table {
        shape: Shape { m, n, denom: 2 },
        gram: diag(&form),
        even: with_negatives(even),
        odd: with_negatives(odd),
        phi,
        weyl,
    }
}

fn d21a_table(alpha: Alpha) -> Table {
    let form = match alpha {
        Alpha::Rational(a) => {
            let c = |x: Ratio<i64>| FormValue { c: x, a: Ratio::zero() };
            [c(-(a + 1)), c(Ratio::from_integer(1)), c(a)]
        }
        Alpha::Generic => [
            FormValue { c: Ratio::from_integer(-1), a: Ratio::from_integer(-1) },
            FormValue::constant(1),
            FormValue { c: Ratio::zero(), a: Ratio::from_integer(1) },
        ],
    };
    let even = vecs(3, &[&[(0, 2)], &[(1, 2)], &[(2, 2)]]);
    let mut odd = Vec::new();
    for s1 in [1, -1] {
        for s2 in [1, -1] {
            for s3 in [1, -1] {
                odd.push(vec![s1, s2, s3]);
            }
        }
    }
    Table {
        shape: Shape { m: 3, n: 0, denom: 1 },
        gram: diag(&form),
        even: with_negatives(even),
        odd,
        phi: vec![4, 2, 1],
        weyl: WeylStructure { eps: block(BlockKind::FlipsOnly, 3), delta: block(BlockKind::Trivial, 0), g2_lift: false },
    }
}

fn f4_table() -> Table {
    let mut even = Vec::new();
    for i in 0..3 {
        for j in i + 1..3 {
            even.extend(vecs(4, &[&[(i, 2), (j, -2)], &[(i, 2), (j, 2)]]));
        }
        even.extend(vecs(4, &[&[(i, 2)]]));
    }
    even.extend(vecs(4, &[&[(3, 2)]]));
    let mut odd = Vec::new();
    for mask in 0..16 {
        odd.push((0..4).map(|k| if mask >> k & 1 == 1 { -1 } else { 1 }).collect());
    }
    let form = [FormValue::constant(1), FormValue::constant(1), FormValue::constant(1), FormValue::constant(-3)];
    Table {
        shape: Shape { m: 3, n: 1, denom: 2 },
        gram: diag(&form),
        even: with_negatives(even),
        odd,
        phi: vec![8, 4, 2, 1],
        weyl: WeylStructure {
            eps: block(BlockKind::Hyperoctahedral, 3),
            delta: block(BlockKind::Hyperoctahedral, 1),
            g2_lift: false,
        },
    }
}

fn g3_table() -> Table {
    let g2 = [[1, 0], [0, 1], [1, 1], [1, -1], [2, 1], [1, 2]];
    let mut even: Vec<Vec<i64>> = g2.iter().map(|r| vec![r[0], r[1], 0]).collect();
    even.push(vec![0, 0, 2]);
    let short = [[1, 0], [0, 1], [-1, -1]];
    let mut odd = vec![vec![0, 0, 1]];
    for s in short {
        odd.push(vec![s[0], s[1], 1]);
        odd.push(vec![-s[0], -s[1], 1]);
    }
    let gram = vec![
        vec![FormValue::constant(2), FormValue::constant(-1), FormValue::default()],
        vec![FormValue::constant(-1), FormValue::constant(2), FormValue::default()],
        vec![FormValue::default(), FormValue::default(), FormValue::constant(-2)],
    ];
    Table {
        shape: Shape { m: 2, n: 1, denom: 2 },
        gram,
        even: with_negatives(even),
        odd: with_negatives(odd),
        phi: vec![2, 1, 4],
        weyl: WeylStructure {
            eps: block(BlockKind::UniformSign, 3),
            delta: block(BlockKind::Hyperoctahedral, 1),
            g2_lift: true,
        },
    }
}

/// Builds the root datum. `m, n` are the block ranks (`osp(2m+1|2n)`,
/// `osp(2m|2n)`, `osp(2|2n)` with `m = 1`); they are ignored for the
/// exceptional families.
pub fn build_algebra(family: Family, m: usize, n: usize, alpha: Option<Alpha>) -> Result<AlgebraDatum> {
    let table = match family {
        Family::Gl => classical_table(family, m, n),
        Family::Sl if m == n => return Err(Error::InvalidAlgebra(format!("sl({m}|{n}) needs m != n"))),
        Family::Sl => classical_table(family, m, n),
        Family::OspB => classical_table(family, m, n),
        Family::OspC if m != 1 => return Err(Error::InvalidAlgebra("osp(2|2n) has m = 1".into())),
        Family::OspC => classical_table(family, 1, n),
        Family::OspD if m == 1 => return Err(Error::InvalidAlgebra("osp(2|2n) is the C family".into())),
        Family::OspD => classical_table(family, m, n),
        Family::D21a => match alpha {
            None => return Err(Error::InvalidAlgebra("D(2,1;alpha) needs alpha".into())),
            Some(Alpha::Rational(a)) if a.is_zero() || a == Ratio::from_integer(-1) => {
                return Err(Error::InvalidAlgebra(format!("alpha = {a} is degenerate")))
            }
            Some(a) => d21a_table(a),
        },
        Family::F4 => f4_table(),
        Family::G3 => g3_table(),
        Family::Abelian => return Ok(AlgebraDatum::abelian(m, 2)),
    };
    let alpha = if family == Family::D21a { alpha } else { None };
    let shape = table.shape;
    let d = shape.denom;
    let to_w = |v: &Vec<i64>| Weight::new(shape, v.iter().map(|c| c * d).collect()).unwrap();
    let even_roots: Vec<Weight> = table.even.iter().map(to_w).collect();
    let odd_roots: Vec<Weight> = table.odd.iter().map(to_w).collect();
    let order = MonomialOrder::new(table.phi.clone(), &[])?;
    let positive = |v: &Vec<Weight>| -> Vec<Weight> {
        v.iter().filter(|r| order.height(r.coords()) > 0).cloned().collect()
    };
    let pos_even = positive(&even_roots);
    let pos_odd = positive(&odd_roots);
    let mut datum = AlgebraDatum {
        family,
        m,
        n,
        alpha,
        shape,
        gram: table.gram,
        even_roots,
        odd_roots,
        pos_even,
        pos_odd,
        iso_roots: Vec::new(),
        pos_iso: Vec::new(),
        tilde_pos: Vec::new(),
        rho0: Weight::zero(shape),
        rho1: Weight::zero(shape),
        rho_iso: Weight::zero(shape),
        rho_tilde: Weight::zero(shape),
        order: MonomialOrder::lex(shape),
        weyl: table.weyl,
    };
    if family.is_exceptional() {
        datum.m = shape.m;
        datum.n = shape.n;
    }
    datum.iso_roots = datum.odd_roots.iter().filter(|b| datum.pairing(b, b).is_zero()).cloned().collect();
    datum.pos_iso = datum.pos_odd.iter().filter(|b| datum.pairing(b, b).is_zero()).cloned().collect();
    let half_even: Vec<Weight> = datum.odd_roots.iter().map(|b| b.scale(2)).collect();
    datum.tilde_pos = datum
        .pos_even
        .iter()
        .filter(|a| !half_even.contains(a))
        .chain(datum.pos_odd.iter().filter(|b| !datum.pos_iso.contains(b)))
        .cloned()
        .collect();
    let half_sum = |v: &[Weight]| -> Result<Weight> {
        v.iter().fold(Weight::zero(shape), |acc, r| &acc + r).halve()
    };
    datum.rho0 = half_sum(&datum.pos_even)?;
    datum.rho1 = half_sum(&datum.pos_odd)?;
    datum.rho_iso = half_sum(&datum.pos_iso)?;
    datum.rho_tilde = half_sum(&datum.tilde_pos)?;
    let all_pos: Vec<Weight> = datum.pos_even.iter().chain(&datum.pos_odd).cloned().collect();
    datum.order = MonomialOrder::new(table.phi, &all_pos)?;
    Ok(datum)
}

impl AlgebraDatum {
    /// Rank-`rank` abelian algebra with trivial Weyl group.
    pub fn abelian(rank: usize, denom: i64) -> Self {
        let shape = Shape { m: rank, n: 0, denom };
        AlgebraDatum {
            family: Family::Abelian,
            m: rank,
            n: 0,
            alpha: None,
            shape,
            gram: diag(&vec![FormValue::constant(1); rank]),
            even_roots: Vec::new(),
            odd_roots: Vec::new(),
            pos_even: Vec::new(),
            pos_odd: Vec::new(),
            iso_roots: Vec::new(),
            pos_iso: Vec::new(),
            tilde_pos: Vec::new(),
            rho0: Weight::zero(shape),
            rho1: Weight::zero(shape),
            rho_iso: Weight::zero(shape),
            rho_tilde: Weight::zero(shape),
            order: MonomialOrder::new((1..=rank as i64).rev().collect(), &[]).unwrap(),
            weyl: WeylStructure {
                eps: block(BlockKind::Trivial, rank),
                delta: block(BlockKind::Trivial, 0),
                g2_lift: false,
            },
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alpha(&self) -> Option<Alpha> {
        self.alpha
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn name(&self) -> String {
        let (m, n) = (self.m, self.n);
        match self.family {
            Family::Gl => format!("gl({m}|{n})"),
            Family::Sl => format!("sl({m}|{n})"),
            Family::OspB => format!("osp({}|{})", 2 * m + 1, 2 * n),
            Family::OspC => format!("osp(2|{})", 2 * n),
            Family::OspD => format!("osp({}|{})", 2 * m, 2 * n),
            Family::D21a => match self.alpha {
                Some(Alpha::Rational(a)) => format!("D(2,1;{a})"),
                _ => "D(2,1;generic)".into(),
            },
            Family::F4 => "F(4)".into(),
            Family::G3 => "G(3)".into(),
            Family::Abelian => format!("abelian({m})"),
        }
    }

    pub fn even_roots(&self) -> &[Weight] {
        &self.even_roots
    }

    pub fn odd_roots(&self) -> &[Weight] {
        &self.odd_roots
    }

    pub fn pos_even_roots(&self) -> &[Weight] {
        &self.pos_even
    }

    pub fn pos_odd_roots(&self) -> &[Weight] {
        &self.pos_odd
    }

    /// All isotropic roots, both signs.
    pub fn iso_roots(&self) -> &[Weight] {
        &self.iso_roots
    }

    pub fn pos_iso_roots(&self) -> &[Weight] {
        &self.pos_iso
    }

    /// Positive roots of the auxiliary reductive algebra.
    pub fn tilde_pos_roots(&self) -> &[Weight] {
        &self.tilde_pos
    }

    pub fn rho0(&self) -> &Weight {
        &self.rho0
    }

    pub fn rho1(&self) -> &Weight {
        &self.rho1
    }

    pub fn rho(&self) -> Weight {
        &self.rho0 - &self.rho1
    }

    pub fn rho_iso(&self) -> &Weight {
        &self.rho_iso
    }

    pub fn rho_tilde(&self) -> &Weight {
        &self.rho_tilde
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn weyl(&self) -> &WeylStructure {
        &self.weyl
    }

    pub fn gram(&self) -> &[Vec<FormValue>] {
        &self.gram
    }

    pub fn defect(&self) -> usize {
        match self.family {
            Family::Gl | Family::Sl | Family::OspB | Family::OspD | Family::OspC => self.m.min(self.n),
            Family::D21a | Family::F4 | Family::G3 => 1,
            Family::Abelian => 0,
        }
    }

    /// The invariant form on stored coordinates.
    pub fn pairing(&self, a: &Weight, b: &Weight) -> FormValue {
        let d2 = self.shape.denom * self.shape.denom;
        let mut out = FormValue::default();
        for (i, &ai) in a.coords().iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.coords().iter().enumerate() {
                let g = self.gram[i][j];
                let k = Ratio::new(ai * bj, d2);
                out.c += g.c * k;
                out.a += g.a * k;
            }
        }
        out
    }

    /// `2(lambda, alpha)/(alpha, alpha)`.
    pub fn coroot_pairing(&self, lambda: &Weight, alpha: &Weight) -> Result<Ratio<i64>> {
        let num = self.pairing(lambda, alpha);
        let den = self.pairing(alpha, alpha);
        num.ratio(&den)
            .map(|r| r * 2)
            .ok_or_else(|| Error::InvalidAlgebra(format!("no coroot pairing of {lambda} with {alpha}")))
    }

    fn system(&self, system: PositiveSystem) -> &[Weight] {
        match system {
            PositiveSystem::Even => &self.pos_even,
            PositiveSystem::Tilde => &self.tilde_pos,
        }
    }

    pub fn is_dominant(&self, lambda: &Weight, system: PositiveSystem) -> bool {
        self.system(system)
            .iter()
            .all(|a| self.coroot_pairing(lambda, a).is_ok_and(|r| !r.is_negative()))
    }

    pub fn is_integral(&self, lambda: &Weight, system: PositiveSystem) -> bool {
        self.system(system)
            .iter()
            .all(|a| self.coroot_pairing(lambda, a).is_ok_and(|r| r.is_integer()))
    }

    pub fn is_dominant_integral(&self, lambda: &Weight, system: PositiveSystem) -> bool {
        self.is_dominant(lambda, system) && self.is_integral(lambda, system)
    }

    /// The linear parity function extending `p` from the roots.
    pub fn parity(&self, nu: &Weight) -> Result<u8> {
        let reals = nu.reals();
        let s: Ratio<i64> = match self.family {
            Family::D21a => reals.iter().sum(),
            Family::Abelian => Ratio::zero(),
            _ => reals[self.shape.m..].iter().sum(),
        };
        if !s.is_integer() {
            return Err(Error::Parity(nu.to_string()));
        }
        Ok(s.to_integer().rem_euclid(2) as u8)
    }

    pub fn weyl_order(&self) -> u128 {
        self.weyl.order()
    }

    /// Streams the Weyl group.
    pub fn weyl_elements(&self) -> impl Iterator<Item = WeylElement> + '_ {
        self.weyl.elements()
    }

    pub fn weyl_generators(&self) -> Vec<WeylElement> {
        self.weyl.generators()
    }

    pub fn weyl_act(&self, w: &WeylElement, lambda: &Weight) -> Weight {
        Weight::new(self.shape, self.weyl.act(w, lambda.coords())).unwrap()
    }

    pub fn weyl_act_poly(&self, w: &WeylElement, f: &LaurentPoly) -> LaurentPoly {
        f.map_exponents(self.shape, |e| Ok(self.weyl.act(w, e))).unwrap()
    }

    /// The `phi`-largest element of the Weyl orbit, which is dominant.
    pub fn dominant_representative(&self, lambda: &Weight) -> Weight {
        self.weyl_elements()
            .map(|w| self.weyl_act(&w, lambda))
            .max_by(|a, b| self.order.cmp(a.coords(), b.coords()))
            .unwrap_or_else(|| lambda.clone())
    }

    /// Converts epsilon/delta coordinates to a stored weight. G(3) takes three
    /// epsilon coordinates.
    pub fn weight_from_basis(&self, eps: &[Ratio<i64>], delta: &[Ratio<i64>]) -> Result<Weight> {
        let ambient_m = if self.family == Family::G3 { 3 } else { self.shape.m };
        if eps.len() != ambient_m || delta.len() != self.shape.n {
            return Err(Error::Parse(format!(
                "{} expects {ambient_m} epsilon and {} delta coordinates",
                self.name(),
                self.shape.n
            )));
        }
        let mut real: Vec<Ratio<i64>> = match self.family {
            Family::G3 => vec![eps[0] - eps[2], eps[1] - eps[2]],
            Family::F4 => eps.iter().map(|x| x * 2).collect(),
            _ => eps.to_vec(),
        };
        let scale = if self.family == Family::F4 { 2 } else { 1 };
        real.extend(delta.iter().map(|x| x * scale));
        Weight::from_real(self.shape, &real)
    }

    /// Representative isotropic root used for the supersymmetry test.
    pub fn iso_representative(&self) -> Option<Weight> {
        if self.iso_roots.is_empty() {
            return None;
        }
        let s = self.shape;
        let r = |eps: &[i64], delta: &[i64]| {
            let eps: Vec<Ratio<i64>> = eps.iter().map(|&x| Ratio::from_integer(x)).collect();
            let delta: Vec<Ratio<i64>> = delta.iter().map(|&x| Ratio::from_integer(x)).collect();
            self.weight_from_basis(&eps, &delta).unwrap()
        };
        let unit = |k: usize, len: usize, c: i64| (0..len).map(|i| if i == k { c } else { 0 }).collect::<Vec<_>>();
        Some(match self.family {
            Family::Gl | Family::Sl => r(&unit(0, s.m, 1), &unit(0, s.n, -1)),
            Family::OspB | Family::OspC | Family::OspD => r(&unit(0, s.m, -1), &unit(0, s.n, 1)),
            Family::D21a => r(&[1, -1, -1], &[]),
            Family::F4 => Weight::new(s, vec![2, 2, 2, -2]).unwrap(),
            Family::G3 => r(&[0, 0, 1], &[1]),
            Family::Abelian => unreachable!(),
        })
    }

    /// The coordinate eliminated by the substitution killing `beta`.
    pub fn eliminated_coordinate(&self, beta: &Weight) -> Result<usize> {
        let c = match self.family {
            Family::F4 | Family::G3 => Some(self.shape.m),
            _ => beta.coords()[..self.shape.m].iter().position(|&x| x != 0),
        };
        c.filter(|&c| beta.coords()[c].abs() == self.shape.denom)
            .ok_or_else(|| Error::InvalidIsoSet(format!("{beta} has no unit coordinate to eliminate")))
    }

    /// The substitution realising `e^beta = 1` by solving for one variable.
    pub fn restriction_rule(&self, beta: &Weight) -> Result<SubstitutionRule> {
        if !self.iso_roots.contains(beta) {
            return Err(Error::InvalidIsoSet(format!("{beta} is not an isotropic root of {}", self.name())));
        }
        let c = self.eliminated_coordinate(beta)?;
        let sign = beta.coords()[c].signum();
        let repl: Vec<i64> = beta
            .coords()
            .iter()
            .enumerate()
            .map(|(i, &b)| if i == c { 0 } else { -b * sign })
            .collect();
        SubstitutionRule::new(c, Weight::new(self.shape, repl)?)
    }

    /// Parses a polynomial in this algebra's ring (text or JSON).
    pub fn parse_poly(&self, s: &str) -> Result<LaurentPoly> {
        let t = s.trim();
        let p = if t.starts_with('{') {
            LaurentPoly::from_json(t)?
        } else {
            crate::weightlat::parse_with(self.shape, t, &|name| self.resolve_variable(name))?
        };
        self.shape.check(&p.shape())?;
        Ok(p)
    }

    fn resolve_variable(&self, name: &str) -> Option<LaurentPoly> {
        if self.family == Family::G3 && (name == "x3" || name == "u3") {
            let x3 = Weight::new(self.shape, vec![-2, -2, 0]).unwrap();
            let p = LaurentPoly::exp(&x3);
            return Some(if name == "u3" { &p + &LaurentPoly::exp(&-&x3) } else { p });
        }
        crate::weightlat::standard_variable(self.shape, name)
    }

    /// Parses `a1,...,am|b1,...,bn` in the epsilon/delta basis.
    pub fn parse_weight(&self, s: &str) -> Result<Weight> {
        let (e, d) = crate::weightlat::parse_real_vector(s)?;
        self.weight_from_basis(&e, &d)
    }

    /// Parses a root literal such as `e2-d1` or `1/2(e1+e2+e3-d1)`.
    pub fn parse_root(&self, s: &str) -> Result<Weight> {
        let ambient_m = if self.family == Family::G3 { 3 } else { self.shape.m };
        let (e, d) = parse_basis_vector(s, ambient_m, self.shape.n)?;
        self.weight_from_basis(&e, &d)
    }

    /// Formats a weight in the epsilon/delta basis, e.g. `e1-d1`.
    pub fn format_root(&self, w: &Weight) -> String {
        let reals = w.reals();
        let (eps, delta): (Vec<Ratio<i64>>, Vec<Ratio<i64>>) = match self.family {
            Family::F4 => (reals[..3].iter().map(|x| x / 2).collect(), vec![reals[3] / 2]),
            Family::G3 => (vec![reals[0], reals[1], Ratio::zero()], vec![reals[2]]),
            _ => (reals[..self.shape.m].to_vec(), reals[self.shape.m..].to_vec()),
        };
        let mut out = String::new();
        let names = eps
            .iter()
            .enumerate()
            .map(|(i, c)| (format!("e{}", i + 1), *c))
            .chain(delta.iter().enumerate().map(|(j, c)| (format!("d{}", j + 1), *c)));
        for (name, c) in names {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else if out.is_empty() { "" } else { "+" };
            let a = c.abs();
            let coef = if a == Ratio::from_integer(1) { String::new() } else { crate::weightlat::fmt_ratio(&a) };
            out.push_str(&format!("{sign}{coef}{name}"));
        }
        if out.is_empty() {
            "0".into()
        } else {
            out
        }
    }
}

pub fn weyl_group(a: &AlgebraDatum) -> Result<Vec<WeylElement>> {
    let size = a.weyl_order();
    if size > WEYL_BOUND {
        return Err(Error::WeylGroupTooLarge { size, bound: WEYL_BOUND });
    }
    Ok(a.weyl_elements().collect())
}

pub fn weyl_act(a: &AlgebraDatum, w: &WeylElement, lambda: &Weight) -> Weight {
    a.weyl_act(w, lambda)
}

pub fn parity(a: &AlgebraDatum, nu: &Weight) -> Result<u8> {
    a.parity(nu)
}

pub fn is_dominant(a: &AlgebraDatum, lambda: &Weight, system: PositiveSystem) -> bool {
    a.is_dominant(lambda, system)
}

/// Rank of a set of weights over the rationals.
pub fn rank(vectors: &[Weight]) -> usize {
    let mut rows: Vec<Vec<Ratio<i128>>> = vectors
        .iter()
        .map(|v| v.coords().iter().map(|&c| Ratio::from_integer(c as i128)).collect())
        .collect();
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c] / rows[r][c];
                let pivot = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot) {
                    *x -= f * y;
                }
            }
        }
        r += 1;
    }
    r
}

pub fn iso_set_validate(a: &AlgebraDatum, roots: Vec<Weight>) -> Result<IsoSet> {
    for b in &roots {
        if !a.iso_roots().contains(b) {
            return Err(Error::InvalidIsoSet(format!("{} is not isotropic", a.format_root(b))));
        }
    }
    for (i, b1) in roots.iter().enumerate() {
        for b2 in &roots[i + 1..] {
            if b1 == b2 || *b1 == -b2 {
                return Err(Error::InvalidIsoSet(format!("{} repeated up to sign", a.format_root(b1))));
            }
            let p = a.pairing(b1, b2);
            if !p.is_zero() {
                return Err(Error::InvalidIsoSet(format!(
                    "({}, {}) = {p} is not zero",
                    a.format_root(b1),
                    a.format_root(b2)
                )));
            }
        }
    }
    if rank(&roots) != roots.len() {
        return Err(Error::InvalidIsoSet("roots are linearly dependent".into()));
    }
    if roots.len() > a.defect() {
        return Err(Error::InvalidIsoSet(format!("{} roots exceed the defect {}", roots.len(), a.defect())));
    }
    Ok(IsoSet { roots })
}
