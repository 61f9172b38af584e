use std::cmp::Ordering;

use crate::error::{Error, Result};

use super::{Shape, Weight};

/// A group order on the exponent lattice: compare by an integer height
/// functional, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    phi: Vec<i64>,
}

impl MonomialOrder {
    /// Builds the order and checks that every listed root has positive height.
    pub fn new(phi: Vec<i64>, positive_roots: &[Weight]) -> Result<Self> {
        let order = MonomialOrder { phi };
        for root in positive_roots {
            if root.coords().len() != order.phi.len() {
                return Err(Error::InvalidOrder(format!("root {root} has the wrong rank")));
            }
            if order.height(root.coords()) <= 0 {
                return Err(Error::InvalidOrder(format!("root {root} has non-positive height")));
            }
        }
        Ok(order)
    }

    /// Pure lexicographic order on `shape`.
    pub fn lex(shape: Shape) -> Self {
        MonomialOrder { phi: vec![0; shape.dim()] }
    }

    pub fn phi(&self) -> &[i64] {
        &self.phi
    }

    pub fn height(&self, e: &[i64]) -> i128 {
        self.phi.iter().zip(e).map(|(&p, &c)| p as i128 * c as i128).sum()
    }

    pub fn cmp(&self, a: &[i64], b: &[i64]) -> Ordering {
        self.height(a).cmp(&self.height(b)).then_with(|| a.cmp(b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_positive_roots() {
        let sh = Shape::new(2, 1, 2).unwrap();
        let root = &Weight::eps(sh, 1) - &Weight::delta(sh, 0);
        // height of 2*rho-tilde dual for gl(2|1) is not positive on e2 - d1
        assert!(MonomialOrder::new(vec![1, -1, 0], &[root.clone()]).is_err());
        assert!(MonomialOrder::new(vec![3, 2, 1], &[root]).is_ok());
    }

    #[test]
    fn ties_broken_lexicographically() {
        let o = MonomialOrder::new(vec![1, 1], &[]).unwrap();
        assert_eq!(o.cmp(&[2, 0], &[0, 2]), Ordering::Greater);
        assert_eq!(o.cmp(&[0, 3], &[2, 0]), Ordering::Greater);
    }
}
