//! Incremental row reduction over the rationals, tracking each row as a
//! combination of the state keys that produced it.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::StateKey;
use crate::arith::Q;
use crate::vector::{Basis, Vector};

/// Independent generator-mode monomials found so far and an echelon basis of
/// their span. Each row's pivot is the largest label in its support.
pub(super) struct Span<B: Basis> {
    pub keys: Vec<(StateKey, Vector<B>)>,
    rows: BTreeMap<B, (Vector<B>, Vector<usize>)>,
    pub covered: Option<usize>,
}

impl<B: Basis> Span<B> {
    pub fn new(vacuum: Vector<B>) -> Self {
        let mut span = Self {
            keys: Vec::new(),
            rows: BTreeMap::new(),
            covered: None,
        };
        span.insert(StateKey::Vacuum, vacuum);
        span
    }

    /// `v = rem + sum_i used_i keys_i`, with no pivot in the support of `rem`
    /// above its largest label.
    fn reduce(&self, v: &Vector<B>) -> (Vector<B>, Vector<usize>) {
        let mut rem = v.clone();
        let mut used = Vector::zero();
        loop {
            let Some(top) = rem.support().next_back().cloned() else {
                break;
            };
            let Some((row, comb)) = self.rows.get(&top) else {
                break;
            };
            let c = rem.coeff(&top) / row.coeff(&top);
            rem.add_scaled(&-c.clone(), row);
            used.add_scaled(&c, comb);
        }
        (rem, used)
    }

    /// Adds `key` if its state is independent of those already found.
    pub fn insert(&mut self, key: StateKey, v: Vector<B>) -> bool {
        let (rem, used) = self.reduce(&v);
        if rem.is_zero() {
            return false;
        }
        let index = self.keys.len();
        let mut comb = Vector::term(index, Q::one());
        comb.add_scaled(&-Q::one(), &used);
        let pivot = rem.support().next_back().cloned().expect("nonzero remainder");
        self.rows.insert(pivot, (rem, comb));
        self.keys.push((key, v));
        true
    }

    /// Coefficients expressing `v` in the found keys, if it lies in their span.
    pub fn express(&self, v: &Vector<B>) -> Option<Vec<(usize, Q)>> {
        let (rem, used) = self.reduce(v);
        rem.is_zero().then(|| {
            used.iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (*i, c.clone()))
                .collect()
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::q;

    #[test]
    fn expresses_dependent_vectors() {
        let e = |i: usize| Vector::basis(i);
        let mut span = Span::new(e(0));
        assert!(span.insert(StateKey::Vacuum, &e(1) + &e(2)));
        assert!(span.insert(StateKey::Vacuum, &e(1) - &e(2)));
        assert!(!span.insert(StateKey::Vacuum, e(1)));
        let c = span.express(&e(2)).unwrap();
        assert_eq!(
            c,
            vec![(1, crate::arith::q_frac(1, 2)), (2, crate::arith::q_frac(-1, 2))]
        );
        assert!(span.express(&e(3)).is_none());
        assert_eq!(span.express(&e(0).scaled(&q(3))).unwrap(), vec![(0, q(3))]);
    }
}
