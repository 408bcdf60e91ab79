use crate::arith::q_frac;
use crate::fock::{self, Monomial};
use crate::state::Parity;
use crate::vector::Vector;

use super::Field;

/// The free bosonic field `alpha(z) = sum_n alpha_n z^{-n-1}`, so
/// `alpha_(n) = alpha_n`.
pub fn alpha_field() -> Field<Monomial> {
    Field::new("alpha", Parity::Even, fock::alpha_mode_basis, |m: &Monomial| {
        m.degree() as i64 + 1
    })
}

/// `beta(z) = sum_{n>0} n^{-1} alpha_n z^{-n}`.
///
/// Re-indexed to the mode convention, `beta_(m) = (m+1)^{-1} alpha_{m+1}`
/// for `m >= 0`, and every mode `m < 0` vanishes.
pub fn beta_field() -> Field<Monomial> {
    Field::new(
        "beta",
        Parity::Even,
        |m, b: &Monomial| {
            if m < 0 {
                Vector::zero()
            } else {
                fock::alpha_mode_basis(m + 1, b).scaled(&q_frac(1, m + 1))
            }
        },
        |b: &Monomial| b.degree() as i64,
    )
}
