//! Self-tests of the distribution kernel: the three-variable Taylor identity
//! for the delta function, the orientation of the two expansions of
//! `(z - w)^{-1}`, and `(z - w)^{j+1} d_w^j delta(z - w) = 0`.

use std::collections::BTreeMap;

use super::{binomial_polynomial, delta_derivative, expand_power, multiply_scalar, Cell, Direction, ExponentWindow};
use crate::arith::{self, Q};
use crate::report::{CertifiedWindow, CheckParams, CheckReport, ExpRange, Witness};

/// Exponent ranges for `(z, w, x)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TrivariateWindow {
    pub z: ExpRange,
    pub w: ExpRange,
    pub x: ExpRange,
}

impl TrivariateWindow {
    pub fn symmetric(r: i64) -> Self {
        let e = ExpRange::symmetric(r);
        Self { z: e, w: e, x: e }
    }

    fn certified(&self) -> CertifiedWindow {
        CertifiedWindow {
            z: Some(self.z),
            w: Some(self.w),
            x: Some(self.x),
            ..CertifiedWindow::default()
        }
    }
}

type Trivariate = BTreeMap<(i64, i64, i64), Q>;

/// `delta(u - z)` with `u = w + x`, written as `sum_n u^{-n-1} z^n`, and
/// `u^{-n-1}` expanded in nonnegative powers of `x`.
fn shifted_delta(window: &TrivariateWindow) -> Trivariate {
    let mut out = Trivariate::new();
    for p in window.z.iter() {
        let power = -p - 1;
        for r in window.x.lo.max(0)..=window.x.hi {
            let q = power - r;
            if !window.w.contains(q) {
                continue;
            }
            let c = arith::binomial(power, r as u32);
            if !Cell::is_zero(&c) {
                out.insert((p, q, r), c);
            }
        }
    }
    out
}

/// `sum_j x^(j) d_w^j delta(z - w)`, skipping the term `j = dropped`.
fn divided_delta_sum(window: &TrivariateWindow, dropped: Option<u32>) -> Trivariate {
    let zw = ExponentWindow::new(window.z, window.w);
    let mut out = Trivariate::new();
    for j in window.x.lo.max(0)..=window.x.hi {
        let j = j as u32;
        if dropped == Some(j) {
            continue;
        }
        let scale = arith::factorial(j);
        for (&(p, q), c) in delta_derivative(j, zw).nonzero_cells() {
            out.insert((p, q, j as i64), c / &scale);
        }
    }
    out
}

/// Compares both sides of `i_{w,x} delta((w + x) - z) = sum_j x^(j) d_w^j delta(z - w)`
/// cell by cell on `window`. `dropped` removes one term from the right side,
/// which must then fail.
pub fn taylor_delta_check(window: TrivariateWindow, dropped: Option<u32>) -> CheckReport {
    let lhs = shifted_delta(&window);
    let rhs = divided_delta_sum(&window, dropped);
    let params = CheckParams::default();
    let zero = Q::from_integer(0.into());
    for p in window.z.iter() {
        for q in window.w.iter() {
            for r in window.x.iter() {
                let a = lhs.get(&(p, q, r)).unwrap_or(&zero);
                let b = rhs.get(&(p, q, r)).unwrap_or(&zero);
                if a != b {
                    let mut w = Witness::new("taylor-delta");
                    w.cell = Some(vec![p, q, r]);
                    w.result = b.labelled();
                    w.expected = Some(a.labelled());
                    return CheckReport::fails("taylor-delta", params, window.certified(), w);
                }
            }
        }
    }
    CheckReport::holds("taylor-delta", params, window.certified())
}

/// `i_{z,w}(z - w)^{-1} - i_{w,z}(z - w)^{-1} = delta(z - w)` cellwise.
pub fn orientation_check(window: ExponentWindow) -> CheckReport {
    let diff = expand_power(-1, Direction::InZ, window).sub(&expand_power(-1, Direction::InW, window));
    let delta = delta_derivative(0, window);
    let certified = CertifiedWindow {
        z: Some(window.z),
        w: Some(window.w),
        ..CertifiedWindow::default()
    };
    match diff.first_difference(&delta) {
        None => CheckReport::holds("delta-orientation", CheckParams::default(), certified),
        Some((p, q)) => {
            let mut w = Witness::new("delta-orientation");
            w.cell = Some(vec![p, q]);
            w.result = diff.get(p, q).labelled();
            w.expected = Some(delta.get(p, q).labelled());
            CheckReport::fails("delta-orientation", CheckParams::default(), certified, w)
        }
    }
}

/// `(z - w)^{j+1} d_w^j delta(z - w) = 0` for `0 <= j <= j_max`, on the
/// interior of `window` left after each multiplication.
pub fn delta_annihilation_check(j_max: u32, window: ExponentWindow) -> CheckReport {
    let params = CheckParams {
        n_max: Some(j_max as i64),
        ..CheckParams::default()
    };
    let mut certified: Option<ExponentWindow> = None;
    for j in 0..=j_max {
        let product = match multiply_scalar(&binomial_polynomial(j + 1), &delta_derivative(j, window)) {
            Ok(p) => p,
            Err(e) => return CheckReport::inapplicable("delta-annihilation", params, e.to_string()),
        };
        let interior = product.window();
        certified = Some(certified.map_or(interior, |c| c.intersect(&interior)));
        if let Some((p, q)) = product.first_nonzero() {
            let mut w = Witness::new("delta-annihilation");
            w.n = Some(j as i64);
            w.cell = Some(vec![p, q]);
            w.result = product.get(p, q).labelled();
            return CheckReport::fails("delta-annihilation", params, interior_window(interior), w);
        }
    }
    let certified = certified.expect("at least one j");
    CheckReport::holds("delta-annihilation", params, interior_window(certified))
}

fn interior_window(w: ExponentWindow) -> CertifiedWindow {
    CertifiedWindow {
        z: Some(w.z),
        w: Some(w.w),
        ..CertifiedWindow::default()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn taylor_identity_holds() {
        let r = taylor_delta_check(TrivariateWindow::symmetric(6), None);
        assert!(r.is_holds(), "{r}");
    }

    #[test]
    fn collapsed_x_range_is_the_plain_delta() {
        let mut window = TrivariateWindow::symmetric(5);
        window.x = ExpRange::new(0, 0);
        assert!(taylor_delta_check(window, None).is_holds());
        // j = 0 only: the x^0 slice of the left side is delta(w - z) = delta(z - w)
        let lhs = shifted_delta(&window);
        let delta = delta_derivative(0, ExponentWindow::new(window.z, window.w));
        for (p, q) in ExponentWindow::new(window.z, window.w).cells() {
            let l = lhs.get(&(p, q, 0)).cloned().unwrap_or_else(|| arith::q(0));
            assert_eq!(l, delta.get(p, q));
        }
    }

    #[test]
    fn dropping_a_term_fails_with_a_witness() {
        let r = taylor_delta_check(TrivariateWindow::symmetric(6), Some(2));
        assert!(r.is_fails());
        let cell = r.witness.unwrap().cell.unwrap();
        assert_eq!(cell[2], 2);
    }

    #[test]
    fn orientation() {
        assert!(orientation_check(ExponentWindow::symmetric(8)).is_holds());
    }

    #[test]
    fn annihilation() {
        let r = delta_annihilation_check(6, ExponentWindow::symmetric(10));
        assert!(r.is_holds(), "{r}");
        assert_eq!(r.window.z, Some(ExpRange::new(-3, 10)));
    }
}
