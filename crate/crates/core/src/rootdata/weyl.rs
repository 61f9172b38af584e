use std::fmt;

use itertools::Itertools;

/// How the Weyl group acts on one block of coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BlockKind {
    /// The trivial group.
    Trivial,
    /// Permutations only.
    Symmetric,
    /// Permutations and arbitrary sign changes.
    Hyperoctahedral,
    /// Permutations and an even number of sign changes.
    EvenFlips,
    /// Sign changes only.
    FlipsOnly,
    /// Permutations times a global sign (the G2 Weyl group on a lifted 3-vector).
    UniformSign,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Block {
    pub kind: BlockKind,
    pub rank: usize,
}

impl Block {
    pub fn order(&self) -> u128 {
        let r = self.rank as u32;
        let fact: u128 = (1..=self.rank as u128).product();
        match self.kind {
            BlockKind::Trivial => 1,
            BlockKind::Symmetric => fact,
            BlockKind::Hyperoctahedral => fact << r,
            BlockKind::EvenFlips if r == 0 => 1,
            BlockKind::EvenFlips => fact << (r - 1),
            BlockKind::FlipsOnly => 1 << r,
            BlockKind::UniformSign if r == 0 => 1,
            BlockKind::UniformSign => 2 * fact,
        }
    }

    pub fn elements(&self) -> Vec<SignedPerm> {
        let r = self.rank;
        let perms: Vec<Vec<usize>> = match self.kind {
            BlockKind::FlipsOnly | BlockKind::Trivial => vec![(0..r).collect()],
            _ => (0..r).permutations(r).collect(),
        };
        let signs: Vec<Vec<i8>> = match self.kind {
            BlockKind::Symmetric | BlockKind::Trivial => vec![vec![1; r]],
            BlockKind::UniformSign if r == 0 => vec![vec![]],
            BlockKind::UniformSign => vec![vec![1; r], vec![-1; r]],
            BlockKind::Hyperoctahedral | BlockKind::FlipsOnly | BlockKind::EvenFlips => (0..1u32 << r)
                .map(|mask| (0..r).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect::<Vec<i8>>())
                .filter(|s| self.kind != BlockKind::EvenFlips || s.iter().filter(|&&x| x < 0).count() % 2 == 0)
                .collect(),
        };
        perms
            .iter()
            .cartesian_product(&signs)
            .map(|(p, s)| SignedPerm { image: p.clone(), sign: s.clone() })
            .collect()
    }

    pub fn generators(&self) -> Vec<SignedPerm> {
        let r = self.rank;
        let id = SignedPerm::identity(r);
        let transposition = |i: usize| {
            let mut g = id.clone();
            g.image.swap(i, i + 1);
            g
        };
        let flip = |i: usize| {
            let mut g = id.clone();
            g.sign[i] = -1;
            g
        };
        let mut gens = Vec::new();
        if !matches!(self.kind, BlockKind::FlipsOnly | BlockKind::Trivial) {
            gens.extend((0..r.saturating_sub(1)).map(transposition));
        }
        match self.kind {
            BlockKind::Symmetric | BlockKind::Trivial => {}
            BlockKind::Hyperoctahedral if r > 0 => gens.push(flip(r - 1)),
            BlockKind::EvenFlips if r >= 2 => {
                let mut g = transposition(r - 2);
                g.sign[r - 2] = -1;
                g.sign[r - 1] = -1;
                gens.push(g);
            }
            BlockKind::FlipsOnly => gens.extend((0..r).map(flip)),
            BlockKind::UniformSign if r > 0 => gens.push(SignedPerm { image: id.image.clone(), sign: vec![-1; r] }),
            _ => {}
        }
        gens
    }

    /// Determinant of the action, i.e. `(-1)^length`.
    pub fn det(&self, g: &SignedPerm) -> i8 {
        match self.kind {
            BlockKind::UniformSign => g.perm_sign(),
            _ => g.perm_sign() * g.sign.iter().product::<i8>(),
        }
    }
}

/// `e_i -> sign[i] * e_{image[i]}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPerm {
    pub image: Vec<usize>,
    pub sign: Vec<i8>,
}

impl SignedPerm {
    pub fn identity(r: usize) -> Self {
        SignedPerm { image: (0..r).collect(), sign: vec![1; r] }
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &j)| i == j) && self.sign.iter().all(|&s| s == 1)
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &SignedPerm) -> SignedPerm {
        let image = other.image.iter().map(|&j| self.image[j]).collect();
        let sign = other.image.iter().zip(&other.sign).map(|(&j, &s)| s * self.sign[j]).collect();
        SignedPerm { image, sign }
    }

    pub fn inverse(&self) -> SignedPerm {
        let r = self.image.len();
        let mut image = vec![0; r];
        let mut sign = vec![1; r];
        for i in 0..r {
            image[self.image[i]] = i;
            sign[self.image[i]] = self.sign[i];
        }
        SignedPerm { image, sign }
    }

    pub fn perm_sign(&self) -> i8 {
        let r = self.image.len();
        let mut seen = vec![false; r];
        let mut parity = 0;
        for start in 0..r {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.image[i];
                len += 1;
            }
            parity += len - 1;
        }
        if parity % 2 == 0 { 1 } else { -1 }
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        let mut out = vec![0; v.len()];
        for (i, &c) in v.iter().enumerate() {
            out[self.image[i]] = self.sign[i] as i64 * c;
        }
        out
    }
}

/// An element of the Weyl group of the even part, acting blockwise.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElement {
    pub eps_perm: SignedPerm,
    pub delta_perm: SignedPerm,
    pub length_parity: i8,
}

impl WeylElement {
    pub fn is_identity(&self) -> bool {
        self.eps_perm.is_identity() && self.delta_perm.is_identity()
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |p: &SignedPerm, name: char| {
            p.image
                .iter()
                .zip(&p.sign)
                .enumerate()
                .filter(|(i, (j, s))| *i != **j || **s != 1)
                .map(|(i, (j, s))| format!("{name}{}->{}{name}{}", i + 1, if *s < 0 { "-" } else { "" }, j + 1))
                .collect::<Vec<_>>()
        };
        let mut parts = show(&self.eps_perm, 'e');
        parts.extend(show(&self.delta_perm, 'd'));
        if parts.is_empty() {
            f.write_str("id")
        } else {
            f.write_str(&parts.join(","))
        }
    }
}

/// Blockwise description of a Weyl group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylStructure {
    pub eps: Block,
    pub delta: Block,
    /// The epsilon block acts on a lifted vector `(a1, a2, 0)` and is reduced back
    /// by `c -> (c1 - c3, c2 - c3)`.
    pub g2_lift: bool,
}

impl WeylStructure {
    pub fn order(&self) -> u128 {
        self.eps.order() * self.delta.order()
    }

    fn element(&self, e: SignedPerm, d: SignedPerm) -> WeylElement {
        let length_parity = self.eps.det(&e) * self.delta.det(&d);
        WeylElement { eps_perm: e, delta_perm: d, length_parity }
    }

    pub fn identity(&self) -> WeylElement {
        self.element(SignedPerm::identity(self.eps.rank), SignedPerm::identity(self.delta.rank))
    }

    /// Lazily enumerates the group; blocks are materialised, their product is streamed.
    pub fn elements(&self) -> impl Iterator<Item = WeylElement> + '_ {
        let eps = self.eps.elements();
        let delta = self.delta.elements();
        eps.into_iter()
            .cartesian_product(delta)
            .map(move |(e, d)| self.element(e, d))
    }

    pub fn generators(&self) -> Vec<WeylElement> {
        let mut gens: Vec<WeylElement> = self
            .eps
            .generators()
            .into_iter()
            .map(|e| self.element(e, SignedPerm::identity(self.delta.rank)))
            .collect();
        gens.extend(
            self.delta
                .generators()
                .into_iter()
                .map(|d| self.element(SignedPerm::identity(self.eps.rank), d)),
        );
        gens
    }

    pub fn compose(&self, a: &WeylElement, b: &WeylElement) -> WeylElement {
        self.element(a.eps_perm.compose(&b.eps_perm), a.delta_perm.compose(&b.delta_perm))
    }

    pub fn inverse(&self, a: &WeylElement) -> WeylElement {
        self.element(a.eps_perm.inverse(), a.delta_perm.inverse())
    }

    /// Acts on a stored exponent vector (epsilon block first).
    pub fn act(&self, w: &WeylElement, v: &[i64]) -> Vec<i64> {
        let m = if self.g2_lift { 2 } else { self.eps.rank };
        let (ve, vd) = v.split_at(m);
        let mut out = if self.g2_lift {
            let c = w.eps_perm.apply(&[ve[0], ve[1], 0]);
            vec![c[0] - c[2], c[1] - c[2]]
        } else {
            w.eps_perm.apply(ve)
        };
        out.extend(w.delta_perm.apply(vd));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ws(e: BlockKind, m: usize, d: BlockKind, n: usize) -> WeylStructure {
        WeylStructure { eps: Block { kind: e, rank: m }, delta: Block { kind: d, rank: n }, g2_lift: false }
    }

    #[test]
    fn orders_match_enumeration() {
        use BlockKind::*;
        for (e, m, d, n) in [
            (Symmetric, 3, Symmetric, 2),
            (Hyperoctahedral, 2, Hyperoctahedral, 2),
            (EvenFlips, 3, Hyperoctahedral, 1),
            (EvenFlips, 1, Hyperoctahedral, 2),
            (FlipsOnly, 3, Symmetric, 0),
            (UniformSign, 3, FlipsOnly, 1),
        ] {
            let w = ws(e, m, d, n);
            let all: Vec<_> = w.elements().collect();
            assert_eq!(all.len() as u128, w.order());
            let distinct: std::collections::HashSet<_> = all.iter().collect();
            assert_eq!(distinct.len(), all.len());
        }
    }

    #[test]
    fn generators_generate() {
        use BlockKind::*;
        for w in [ws(EvenFlips, 3, Hyperoctahedral, 2), ws(UniformSign, 3, FlipsOnly, 1), ws(Symmetric, 3, Symmetric, 1)] {
            let gens = w.generators();
            let mut seen = std::collections::HashSet::new();
            let mut frontier = vec![w.identity()];
            seen.insert(w.identity());
            while let Some(x) = frontier.pop() {
                for g in &gens {
                    let y = w.compose(g, &x);
                    if seen.insert(y.clone()) {
                        frontier.push(y);
                    }
                }
            }
            assert_eq!(seen.len() as u128, w.order());
        }
    }

    #[test]
    fn sign_is_multiplicative() {
        use BlockKind::*;
        let w = ws(EvenFlips, 3, Hyperoctahedral, 1);
        let all: Vec<_> = w.elements().collect();
        for a in all.iter().step_by(5) {
            for b in all.iter().step_by(7) {
                let c = w.compose(a, b);
                assert_eq!(c.length_parity, a.length_parity * b.length_parity);
                let v = [3, -5, 7, 11];
                assert_eq!(w.act(&c, &v), w.act(a, &w.act(b, &v)));
            }
        }
    }
}
