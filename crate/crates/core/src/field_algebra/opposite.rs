//! Opposite fields `X(a, z) b = p(a, b) e^{zT} Y(b, -z) a`.

use num_traits::One;

use super::FieldAlgebra;
use crate::arith::{self, sign, Q};
use crate::distributions::UnivariateSeries;
use crate::fields::{Field, EMPTY_BOUND};
use crate::state::StateModel;
use crate::vector::{Basis, Vector};

/// `e^{zT} s(z)` known through exponent `through`. Coefficient `k` is
/// `sum_{j=0}^{k-min} T^j s_{k-j} / j!`, finite because `s` is bounded below.
pub fn apply_exp_zt<B: Basis>(
    s: &UnivariateSeries<Vector<B>>,
    through: i64,
    t: impl Fn(&Vector<B>) -> Vector<B>,
) -> UnivariateSeries<Vector<B>> {
    assert!(s.is_bounded_below(), "e^{{zT}} needs a series bounded below");
    let min = s.min_exponent();
    let mut out: Vec<Vector<B>> = vec![Vector::zero(); (through - min + 1).max(0) as usize];
    for e in min..=through {
        let mut u = s.coeff(e).expect("input known through the requested exponent");
        let mut j = 0u32;
        while !u.is_zero() && e + j as i64 <= through {
            let c = Q::one() / arith::factorial(j);
            out[(e + j as i64 - min) as usize].add_scaled(&c, &u);
            u = t(&u);
            j += 1;
        }
    }
    UnivariateSeries::bounded(
        min,
        through,
        out.into_iter().enumerate().map(|(i, v)| (min + i as i64, v)),
    )
}

/// `X(a)_(n) b`: the `z^{-n-1}` coefficient of `p(a, b) e^{zT} Y(b, -z) a`.
///
/// `Y(b, -z) a` carries `(-1)^e b_(-e-1) a` at `z^e`, and vanishes below
/// `e = -N` where `N` is the annihilation bound of `Y(b)` on `a`.
pub fn opposite_mode<M: StateModel>(
    fa: &FieldAlgebra<M>,
    a: &Vector<M::Basis>,
    n: i64,
    b: &M::Basis,
) -> Vector<M::Basis> {
    let yb = fa.y_basis(b);
    let bound = yb.ann_bound(a);
    let k = -n - 1;
    if bound == EMPTY_BOUND || k < -bound {
        return Vector::zero();
    }
    let min = -bound;
    let coeffs = (min..=k).map(|e| (e, yb.mode(-e - 1, a).scaled(&arith::q(sign(e)))));
    let series = UnivariateSeries::bounded(min, k, coeffs);
    let shifted = apply_exp_zt(&series, k, |v| fa.translate(v));
    let p = a
        .support()
        .next()
        .map_or(1, |x| fa.model().parity_of(x).sign_with(fa.model().parity_of(b)));
    shifted.coeff(k).expect("known through k").scaled(&arith::q(p))
}

impl<M: StateModel> FieldAlgebra<M> {
    /// The field algebra of opposite fields `X(a)`, sharing the model.
    pub fn opposite(&self) -> FieldAlgebra<M> {
        let source = self.clone();
        FieldAlgebra::direct(
            format!("opposite({})", self.name()),
            self.model_arc(),
            move |a: &M::Basis| {
                let parity = source.model().parity_of(a);
                let a = Vector::basis(a.clone());
                let (src, bsrc, av, bav) = (source.clone(), source.clone(), a.clone(), a.clone());
                Field::new(
                    format!("X({a})"),
                    parity,
                    move |n, b: &M::Basis| opposite_mode(&src, &av, n, b),
                    move |b: &M::Basis| bsrc.y_basis(b).ann_bound(&bav),
                )
            },
        )
    }
}
