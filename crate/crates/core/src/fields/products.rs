use num_traits::Zero;

use super::{Field, EMPTY_BOUND};
use crate::arith::{self, sign, Q};
use crate::vector::{Basis, Vector};

/// `(d a)_(n) = -n a_(n-1)`.
pub fn derivative<B: Basis>(a: &Field<B>) -> Field<B> {
    let src = a.clone();
    let bsrc = a.clone();
    Field::new(
        format!("d({})", a.label()),
        a.parity(),
        move |n, v| src.mode_basis(n - 1, v).scaled(&arith::q(-n)),
        move |v| bsrc.ann_bound_basis(v).saturating_add(1),
    )
}

/// Divided power `d^(k) a = d^k a / k!`, i.e. `(d^(k) a)_(n) = (-1)^k C(n, k) a_(n-k)`.
pub fn divided_derivative<B: Basis>(a: &Field<B>, k: u32) -> Field<B> {
    if k == 0 {
        return a.clone();
    }
    let src = a.clone();
    let bsrc = a.clone();
    Field::new(
        format!("d^({k})({})", a.label()),
        a.parity(),
        move |n, v| {
            let c = arith::binomial(n, k) * arith::q(sign(k as i64));
            src.mode_basis(n - k as i64, v).scaled(&c)
        },
        move |v| bsrc.ann_bound_basis(v).saturating_add(k as i64),
    )
}

pub fn scaled<B: Basis>(a: &Field<B>, c: Q) -> Field<B> {
    linear_combination(format!("({})*{}", arith::pretty(&c), a.label()), vec![(c, a.clone())])
}

/// `sum_i c_i a_i`. Parity is taken from the first term.
pub fn linear_combination<B: Basis>(label: impl Into<String>, terms: Vec<(Q, Field<B>)>) -> Field<B> {
    let terms: Vec<(Q, Field<B>)> = terms.into_iter().filter(|(c, _)| !c.is_zero()).collect();
    let parity = terms
        .first()
        .map(|(_, f)| f.parity())
        .unwrap_or(crate::state::Parity::Even);
    let bterms = terms.clone();
    Field::new(
        label,
        parity,
        move |n, v| {
            let mut out = Vector::zero();
            for (c, f) in &terms {
                out.add_scaled(c, &f.mode_basis(n, v));
            }
            out
        },
        move |v| {
            bterms
                .iter()
                .map(|(_, f)| f.ann_bound_basis(v))
                .max()
                .unwrap_or(EMPTY_BOUND)
        },
    )
}

/// Normally ordered product `:a b:`, mode `m` acting as
/// `sum_{n<0} a_(n) b_(m-n-1) + p(a,b) sum_{n>=0} b_(m-n-1) a_(n)`.
///
/// Both sums are finite on a fixed vector: the first because
/// `b_(m-n-1) v = 0` once `m - n - 1 >= ann_bound_b(v)`, the second because
/// `a_(n) v = 0` for `n >= ann_bound_a(v)`.
pub fn normal_ordered<B: Basis>(a: &Field<B>, b: &Field<B>) -> Field<B> {
    let p = Q::from_integer(a.parity().sign_with(b.parity()).into());
    let (fa, fb) = (a.clone(), b.clone());
    let (ba, bb) = (a.clone(), b.clone());
    Field::new(
        format!(":{} {}:", a.label(), b.label()),
        a.parity().product(b.parity()),
        move |m, v| {
            let mut out = Vector::zero();
            let bound_b = fb.ann_bound_basis(v);
            for n in m.saturating_sub(bound_b)..=-1 {
                let u = fb.mode_basis(m - n - 1, v);
                if !u.is_zero() {
                    out.add_assign(&fa.mode(n, &u));
                }
            }
            for n in 0..fa.ann_bound_basis(v) {
                let u = fa.mode_basis(n, v);
                if !u.is_zero() {
                    out.add_scaled(&p, &fb.mode(m - n - 1, &u));
                }
            }
            out
        },
        move |v| {
            let mut bound = bb.ann_bound_basis(v);
            for n in 0..ba.ann_bound_basis(v) {
                let u = ba.mode_basis(n, v);
                bound = bound.max(bb.ann_bound(&u).saturating_add(n + 1));
            }
            bound
        },
    )
}

/// The n-th product `a(z)_(n) b(z)`.
///
/// For `n >= 0`, mode `m` is `sum_{j=0}^{n} (-1)^j C(n,j) [a_(n-j), b_(m+j)]`
/// with the supercommutator sign `p(a,b)`. For `n < 0` it is
/// `:(d^(-n-1) a) b:`.
pub fn nth_product<B: Basis>(a: &Field<B>, b: &Field<B>, n: i64) -> Field<B> {
    if n < 0 {
        let shifted = divided_derivative(a, (-n - 1) as u32);
        return normal_ordered(&shifted, b).relabel(format!("{}_({n}){}", a.label(), b.label()));
    }
    let p = Q::from_integer(a.parity().sign_with(b.parity()).into());
    let coeffs: Vec<Q> = (0..=n)
        .map(|j| arith::binomial(n, j as u32) * arith::q(sign(j)))
        .collect();
    let (fa, fb) = (a.clone(), b.clone());
    let (ba, bb) = (a.clone(), b.clone());
    Field::new(
        format!("{}_({n}){}", a.label(), b.label()),
        a.parity().product(b.parity()),
        move |m, v| {
            let mut out = Vector::zero();
            for (j, c) in coeffs.iter().enumerate() {
                let j = j as i64;
                let left = fa.mode(n - j, &fb.mode_basis(m + j, v));
                let right = fb.mode(m + j, &fa.mode_basis(n - j, v));
                out.add_scaled(c, &left);
                out.add_scaled(&-(c * &p), &right);
            }
            out
        },
        move |v| {
            let mut bound = bb.ann_bound_basis(v);
            for j in 0..=n {
                let u = ba.mode_basis(n - j, v);
                bound = bound.max(bb.ann_bound(&u).saturating_sub(j));
            }
            bound
        },
    )
}
