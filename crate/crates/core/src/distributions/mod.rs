//! Formal distributions in two variables, truncated to explicit exponent
//! windows.
//!
//! A [`Bivariate`] holds the coefficients of `z^p w^q` for `(p, q)` in its
//! window. Every cell inside the window is exact. Operations that need cells
//! outside an operand's window shrink the result to the interior where all
//! contributing cells are known, and report the shrunk window.

mod series;
mod taylor;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::arith::{self, sign, Q};
use crate::report::{labelled, labelled_scalar, ExpRange, Labelled};
use crate::vector::{Basis, Vector};

pub use series::UnivariateSeries;
pub use taylor::{delta_annihilation_check, orientation_check, taylor_delta_check, TrivariateWindow};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DistributionError {
    #[error("window does not contain z-exponent {needed}")]
    WindowInsufficient { needed: i64 },
    #[error("no reliable interior window remains")]
    EmptyWindow,
    #[error("neither operand has finite support; the product has no reliable cell")]
    NoReliableWindow,
    #[error("series is not bounded below")]
    NotBoundedBelow,
    #[error("coefficient at exponent {exponent} lies beyond the known range")]
    BeyondKnown { exponent: i64 },
}

/// Exponent ranges for `z` and `w`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExponentWindow {
    pub z: ExpRange,
    pub w: ExpRange,
}

impl ExponentWindow {
    pub fn new(z: ExpRange, w: ExpRange) -> Self {
        Self { z, w }
    }

    pub fn square(lo: i64, hi: i64) -> Self {
        Self::new(ExpRange::new(lo, hi), ExpRange::new(lo, hi))
    }

    pub fn symmetric(r: i64) -> Self {
        Self::square(-r, r)
    }

    pub fn contains(&self, p: i64, q: i64) -> bool {
        self.z.contains(p) && self.w.contains(q)
    }

    pub fn is_empty(&self) -> bool {
        self.z.is_empty() || self.w.is_empty()
    }

    pub fn intersect(&self, other: &Self) -> Self {
        Self::new(self.z.intersect(&other.z), self.w.intersect(&other.w))
    }

    pub fn cells(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.z.iter().flat_map(move |p| self.w.iter().map(move |q| (p, q)))
    }
}

/// Values a coefficient array can hold: exact scalars or state vectors.
pub trait Cell: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    /// `self += c * other`
    fn add_scaled(&mut self, c: &Q, other: &Self);
    fn labelled(&self) -> Labelled;
    fn to_json(&self) -> serde_json::Value;
}

impl Cell for Q {
    fn zero() -> Self {
        Zero::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_scaled(&mut self, c: &Q, other: &Self) {
        *self += c * other;
    }
    fn labelled(&self) -> Labelled {
        labelled_scalar(self)
    }
    fn to_json(&self) -> serde_json::Value {
        json!(arith::render(self))
    }
}

impl<B: Basis> Cell for Vector<B> {
    fn zero() -> Self {
        Vector::zero()
    }
    fn is_zero(&self) -> bool {
        Vector::is_zero(self)
    }
    fn add_scaled(&mut self, c: &Q, other: &Self) {
        Vector::add_scaled(self, c, other)
    }
    fn labelled(&self) -> Labelled {
        labelled(self)
    }
    fn to_json(&self) -> serde_json::Value {
        json!(self.to_labels())
    }
}

/// Windowed coefficients of a two-variable formal distribution.
///
/// `complete` asserts that every nonzero coefficient of the underlying
/// distribution lies inside the window (a polynomial fully captured).
#[derive(Clone, Debug, PartialEq)]
pub struct Bivariate<C: Cell> {
    window: ExponentWindow,
    cells: BTreeMap<(i64, i64), C>,
    complete: bool,
}

/// Scalar (identity-operator valued) distributions such as `delta(z - w)`.
pub type ScalarBivariate = Bivariate<Q>;

/// State-vector valued distributions, e.g. a commutator applied to a vector.
pub type BivariateCoefficients<B> = Bivariate<Vector<B>>;

impl<C: Cell> Bivariate<C> {
    pub fn zero(window: ExponentWindow) -> Self {
        Self {
            window,
            cells: BTreeMap::new(),
            complete: false,
        }
    }

    pub fn from_fn(window: ExponentWindow, mut f: impl FnMut(i64, i64) -> C) -> Self {
        let mut out = Self::zero(window);
        for (p, q) in window.cells() {
            out.set(p, q, f(p, q));
        }
        out
    }

    pub fn window(&self) -> ExponentWindow {
        self.window
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub(crate) fn mark_complete(mut self, complete: bool) -> Self {
        self.complete = complete;
        self
    }

    pub fn set(&mut self, p: i64, q: i64, value: C) {
        assert!(self.window.contains(p, q), "cell ({p}, {q}) outside window");
        if value.is_zero() {
            self.cells.remove(&(p, q));
        } else {
            self.cells.insert((p, q), value);
        }
    }

    /// Coefficient of `z^p w^q`; `None` when the cell is not known.
    pub fn cell(&self, p: i64, q: i64) -> Option<C> {
        if self.window.contains(p, q) || self.complete {
            Some(self.cells.get(&(p, q)).cloned().unwrap_or_else(C::zero))
        } else {
            None
        }
    }

    /// Like [`Bivariate::cell`] but panics on unknown cells.
    pub fn get(&self, p: i64, q: i64) -> C {
        self.cell(p, q)
            .unwrap_or_else(|| panic!("cell ({p}, {q}) is outside the known window"))
    }

    pub fn nonzero_cells(&self) -> impl Iterator<Item = (&(i64, i64), &C)> {
        self.cells.iter()
    }

    /// First nonzero cell in window order.
    pub fn first_nonzero(&self) -> Option<(i64, i64)> {
        self.window
            .cells()
            .find(|&(p, q)| self.cells.get(&(p, q)).is_some_and(|c| !c.is_zero()))
    }

    pub fn restrict(&self, window: ExponentWindow) -> Self {
        let window = window.intersect(&self.window);
        let cells = self
            .cells
            .iter()
            .filter(|((p, q), _)| window.contains(*p, *q))
            .map(|(k, v)| (*k, v.clone()))
            .collect();
        Self {
            window,
            cells,
            complete: false,
        }
    }

    pub fn scaled(&self, c: &Q) -> Self {
        let mut out = Self::zero(self.window).mark_complete(self.complete);
        for (&(p, q), v) in &self.cells {
            let mut x = C::zero();
            x.add_scaled(c, v);
            out.set(p, q, x);
        }
        out
    }

    /// `self - other` on the common window.
    pub fn sub(&self, other: &Self) -> Self {
        let window = self.window.intersect(&other.window);
        let minus_one = -Q::one();
        Self::from_fn(window, |p, q| {
            let mut x = self.get(p, q);
            x.add_scaled(&minus_one, &other.get(p, q));
            x
        })
    }

    /// First cell (in window order) where the two arrays differ on their
    /// common window.
    pub fn first_difference(&self, other: &Self) -> Option<(i64, i64)> {
        self.sub(other).first_nonzero()
    }

    /// Bounding box of the stored nonzero cells.
    fn support_box(&self) -> Option<ExponentWindow> {
        let mut it = self.cells.keys();
        let &(p0, q0) = it.next()?;
        let (mut zlo, mut zhi, mut wlo, mut whi) = (p0, p0, q0, q0);
        for &(p, q) in it {
            zlo = zlo.min(p);
            zhi = zhi.max(p);
            wlo = wlo.min(q);
            whi = whi.max(q);
        }
        Some(ExponentWindow::new(ExpRange::new(zlo, zhi), ExpRange::new(wlo, whi)))
    }

    /// `{window: {z, w}, cells: [{p, q, value}]}` for failure witnesses.
    pub fn to_json(&self) -> serde_json::Value {
        let cells: Vec<_> = self
            .cells
            .iter()
            .map(|(&(p, q), v)| json!({ "p": p, "q": q, "value": v.to_json() }))
            .collect();
        json!({ "window": self.window, "cells": cells })
    }
}

/// Expansion domain for `(z - w)^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    /// `i_{z,w}`: expand in `|z| > |w|`, nonnegative powers of `w`.
    InZ,
    /// `i_{w,z}`: expand in `|w| > |z|`, nonnegative powers of `z`.
    InW,
}

/// `i_{z,w}(z - w)^n` or `i_{w,z}(z - w)^n` on `window`.
pub fn expand_power(n: i64, direction: Direction, window: ExponentWindow) -> ScalarBivariate {
    let mut out = ScalarBivariate::zero(window);
    // i_{z,w}: sum_k C(n,k) (-1)^k z^{n-k} w^k.
    // i_{w,z}: (-1)^n sum_k C(n,k) (-1)^k z^k w^{n-k}.
    let free_axis = match direction {
        Direction::InZ => window.w,
        Direction::InW => window.z,
    };
    for k in free_axis.lo.max(0)..=free_axis.hi {
        if n >= 0 && k > n {
            break;
        }
        let (p, q) = match direction {
            Direction::InZ => (n - k, k),
            Direction::InW => (k, n - k),
        };
        if !window.contains(p, q) {
            continue;
        }
        let mut c = arith::binomial(n, k as u32) * arith::q(sign(k));
        if direction == Direction::InW {
            c *= arith::q(sign(n));
        }
        out.set(p, q, c);
    }
    let complete = n >= 0 && (0..=n).all(|k| window.contains(n - k, k));
    out.mark_complete(complete)
}

/// `d^j/dw^j delta(z - w)` where `delta(z - w) = sum_n z^{-n-1} w^n`.
///
/// The coefficient of `z^p w^q` is the falling factorial `n (n-1) ... (n-j+1)`
/// with `n = -p - 1`, on the antidiagonal `q = n - j`.
pub fn delta_derivative(j: u32, window: ExponentWindow) -> ScalarBivariate {
    let mut out = ScalarBivariate::zero(window);
    for p in window.z.iter() {
        let n = -p - 1;
        let q = n - j as i64;
        if window.w.contains(q) {
            out.set(p, q, Q::from_integer(arith::falling(n, j)));
        }
    }
    out
}

/// Extracts the `z^{-1}` row as a series in `w`.
pub fn residue_z<C: Cell>(d: &Bivariate<C>) -> Result<UnivariateSeries<C>, DistributionError> {
    let window = d.window();
    if !window.z.contains(-1) {
        return Err(DistributionError::WindowInsufficient { needed: -1 });
    }
    let coeffs = window.w.iter().map(|q| (q, d.get(-1, q)));
    Ok(UnivariateSeries::from_window(window.w, d.is_complete(), coeffs))
}

/// Convolution product `s * d`, restricted to the interior where every
/// contributing cell lies inside both windows.
///
/// At least one operand must have finite support (be `complete`); the sum is
/// taken over that operand's nonzero cells.
pub fn multiply_scalar<C: Cell>(s: &ScalarBivariate, d: &Bivariate<C>) -> Result<Bivariate<C>, DistributionError> {
    if s.is_complete() {
        let Some(sb) = s.support_box() else {
            return Ok(Bivariate::zero(d.window()).mark_complete(true));
        };
        let window = if d.is_complete() {
            let db = d.support_box().unwrap_or(d.window());
            ExponentWindow::new(
                ExpRange::new(db.z.lo + sb.z.lo, db.z.hi + sb.z.hi),
                ExpRange::new(db.w.lo + sb.w.lo, db.w.hi + sb.w.hi),
            )
        } else {
            let dw = d.window();
            ExponentWindow::new(
                ExpRange::new(dw.z.lo + sb.z.hi, dw.z.hi + sb.z.lo),
                ExpRange::new(dw.w.lo + sb.w.hi, dw.w.hi + sb.w.lo),
            )
        };
        if window.is_empty() {
            return Err(DistributionError::EmptyWindow);
        }
        let out = Bivariate::from_fn(window, |p, q| {
            let mut acc = C::zero();
            for (&(i, j), c) in s.nonzero_cells() {
                acc.add_scaled(c, &d.get(p - i, q - j));
            }
            acc
        });
        Ok(out.mark_complete(d.is_complete()))
    } else if d.is_complete() {
        let Some(db) = d.support_box() else {
            return Ok(Bivariate::zero(s.window()).mark_complete(true));
        };
        let sw = s.window();
        let window = ExponentWindow::new(
            ExpRange::new(sw.z.lo + db.z.hi, sw.z.hi + db.z.lo),
            ExpRange::new(sw.w.lo + db.w.hi, sw.w.hi + db.w.lo),
        );
        if window.is_empty() {
            return Err(DistributionError::EmptyWindow);
        }
        Ok(Bivariate::from_fn(window, |p, q| {
            let mut acc = C::zero();
            for (&(i, j), v) in d.nonzero_cells() {
                acc.add_scaled(&s.get(p - i, q - j), v);
            }
            acc
        }))
    } else {
        Err(DistributionError::NoReliableWindow)
    }
}

/// `(z - w)^n` for `n >= 0` as a complete polynomial.
pub fn binomial_polynomial(n: u32) -> ScalarBivariate {
    expand_power(n as i64, Direction::InZ, ExponentWindow::square(0, n as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::q;

    fn w(r: i64) -> ExponentWindow {
        ExponentWindow::symmetric(r)
    }

    /// `delta(z - w) = sum_n z^{-n-1} w^n`, differentiated `j` times, by
    /// direct term-by-term differentiation of each monomial.
    fn delta_oracle(j: u32, p: i64, qq: i64) -> Q {
        let n = -p - 1;
        // w^n -> n w^{n-1} -> ... ; multiply exponents one at a time
        let mut exp = n;
        let mut coeff = q(1);
        for _ in 0..j {
            coeff *= q(exp);
            exp -= 1;
        }
        if exp == qq {
            coeff
        } else {
            q(0)
        }
    }

    #[test]
    fn delta_cells() {
        let d = delta_derivative(0, w(4));
        assert_eq!(d.get(-1, 0), q(1));
        assert_eq!(d.get(-3, 2), q(1));
        assert_eq!(d.get(0, 0), q(0));
        assert_eq!(delta_derivative(1, w(4)).get(-3, 1), q(2));
        assert_eq!(delta_derivative(2, w(4)).get(-1, -2), q(0));
        for j in 0..5 {
            let d = delta_derivative(j, w(6));
            for (p, qq) in w(6).cells() {
                assert_eq!(d.get(p, qq), delta_oracle(j, p, qq), "j={j} ({p},{qq})");
            }
        }
    }

    #[test]
    fn expansions_of_z_minus_w() {
        for dir in [Direction::InZ, Direction::InW] {
            let e = expand_power(1, dir, w(3));
            assert_eq!(e.get(1, 0), q(1));
            assert_eq!(e.get(0, 1), q(-1));
            assert_eq!(e.nonzero_cells().count(), 2);
            assert!(e.is_complete());
        }
    }

    #[test]
    fn geometric_expansions() {
        let in_w = expand_power(-1, Direction::InW, w(5));
        let in_z = expand_power(-1, Direction::InZ, w(5));
        for k in 0..=4 {
            assert_eq!(in_w.get(k, -k - 1), q(-1));
            assert_eq!(in_z.get(-k - 1, k), q(1));
        }
        assert_eq!(in_w.nonzero_cells().count(), 5);
        assert!(!in_w.is_complete());
    }

    /// Series oracle: coefficient extraction from repeated multiplication of
    /// truncated geometric series `(1 - w/z)^{-1}`.
    #[test]
    fn negative_powers_match_series_products() {
        for n in 1..=4i64 {
            let e = expand_power(-n, Direction::InZ, w(8));
            // (z - w)^{-n} = z^{-n} (sum_k (w/z)^k)^n: coefficient of (w/z)^k is C(n+k-1, k).
            for k in 0..=8 {
                let mut ways = vec![0i64; 9];
                ways[0] = 1;
                for _ in 0..n {
                    let mut next = vec![0i64; 9];
                    for (i, &c) in ways.iter().enumerate() {
                        for extra in 0..9 - i {
                            next[i + extra] += c;
                        }
                    }
                    ways = next;
                }
                let p = -n - k;
                if w(8).contains(p, k) {
                    assert_eq!(e.get(p, k), q(ways[k as usize]), "n={n} k={k}");
                }
            }
        }
    }

    #[test]
    fn nonnegative_powers_agree_in_both_directions() {
        for n in 0..5 {
            let a = expand_power(n, Direction::InZ, w(6));
            let b = expand_power(n, Direction::InW, w(6));
            assert_eq!(a.first_difference(&b), None);
        }
    }

    #[test]
    fn residues() {
        let r = residue_z(&delta_derivative(0, w(3))).unwrap();
        for qq in -3..=3 {
            let expected = if qq == 0 { q(1) } else { q(0) };
            assert_eq!(r.coeff(qq).unwrap(), expected);
        }
        let one = expand_power(0, Direction::InZ, w(3));
        assert!(residue_z(&one).unwrap().is_zero());
        let r = residue_z(&expand_power(-1, Direction::InZ, w(3))).unwrap();
        assert_eq!(r.coeff(0).unwrap(), q(1));
        assert_eq!(r.nonzero().count(), 1);
        let shifted = ExponentWindow::new(ExpRange::new(0, 3), ExpRange::new(0, 3));
        assert_eq!(
            residue_z(&delta_derivative(0, shifted)),
            Err(DistributionError::WindowInsufficient { needed: -1 })
        );
    }

    #[test]
    fn delta_is_killed_by_matching_power() {
        let one = multiply_scalar(&binomial_polynomial(0), &delta_derivative(0, w(5))).unwrap();
        assert_eq!(one.first_difference(&delta_derivative(0, w(5))), None);
        assert_eq!(one.window(), w(5));

        let r = multiply_scalar(&binomial_polynomial(1), &delta_derivative(0, w(5))).unwrap();
        assert_eq!(r.window(), ExponentWindow::square(-4, 5));
        assert_eq!(r.first_nonzero(), None);

        let r = multiply_scalar(&binomial_polynomial(2), &delta_derivative(1, w(5))).unwrap();
        assert_eq!(r.first_nonzero(), None);
        // one power short leaves a nonzero delta
        let r = multiply_scalar(&binomial_polynomial(1), &delta_derivative(1, w(5))).unwrap();
        assert!(r.first_nonzero().is_some());
    }

    #[test]
    fn product_of_two_infinite_series_is_refused() {
        let a = delta_derivative(0, w(3));
        assert_eq!(multiply_scalar(&a, &a), Err(DistributionError::NoReliableWindow));
    }

    #[test]
    fn product_shrinking_to_nothing_is_an_error() {
        let p = binomial_polynomial(4);
        let d = delta_derivative(0, w(1));
        assert_eq!(multiply_scalar(&p, &d), Err(DistributionError::EmptyWindow));
    }

    #[test]
    fn json_shape() {
        let e = expand_power(1, Direction::InZ, w(1));
        let v = e.to_json();
        assert_eq!(v["window"]["z"], json!([-1, 1]));
        assert_eq!(v["cells"][0], json!({"p": 0, "q": 1, "value": "-1/1"}));
    }
}
