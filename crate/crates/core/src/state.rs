//! The arena fields act on: a graded space with vacuum and translation operator.

use serde::{Deserialize, Serialize};

use crate::vector::{Basis, Vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    /// Koszul sign `p(a, b)`: `-1` iff both are odd.
    pub fn sign_with(self, other: Parity) -> i64 {
        if self == Parity::Odd && other == Parity::Odd {
            -1
        } else {
            1
        }
    }

    pub fn product(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// A state space with vacuum `|0>`, an even translation operator `T` with
/// `T|0> = 0`, and a basis enumerable by degree.
pub trait StateModel: Send + Sync + 'static {
    type Basis: Basis;

    fn name(&self) -> &str;

    fn vacuum(&self) -> Vector<Self::Basis>;

    fn translate_basis(&self, b: &Self::Basis) -> Vector<Self::Basis>;

    fn translate(&self, v: &Vector<Self::Basis>) -> Vector<Self::Basis> {
        v.map_linear(|b| self.translate_basis(b))
    }

    /// All basis states of degree `<= d`, each once, in a deterministic order.
    fn basis_up_to(&self, d: usize) -> Vec<Self::Basis>;

    fn degree(&self, b: &Self::Basis) -> usize;

    fn parity_of(&self, _b: &Self::Basis) -> Parity {
        Parity::Even
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn koszul_sign_is_symmetric_and_multiplicative() {
        let all = [Parity::Even, Parity::Odd];
        for a in all {
            for b in all {
                assert_eq!(a.sign_with(b), b.sign_with(a));
                for c in all {
                    assert_eq!(a.product(b).sign_with(c), a.sign_with(c) * b.sign_with(c));
                }
            }
        }
    }
}
