//! Commutators, weak-locality bounds, skewsymmetry and the weak Dong property.

use num_traits::One;
use rayon::prelude::*;

use super::products::{divided_derivative, linear_combination, nth_product};
use super::{field_nonzero, Discrepancy, Field, Grid};
use crate::arith::{self, sign, Q};
use crate::distributions::{binomial_polynomial, multiply_scalar, residue_z, BivariateCoefficients, ExponentWindow};
use crate::report::{CheckReport, ExpRange, Witness};
use crate::vector::{Basis, Vector};

/// Cell `(p, q)` holds `(a_(-p-1) b_(-q-1) - p(a,b) b_(-q-1) a_(-p-1)) v`,
/// the coefficient of `z^p w^q` in `[a(z), b(w)] v`.
pub fn commutator_coefficients<B: Basis>(
    a: &Field<B>,
    b: &Field<B>,
    v: &Vector<B>,
    window: ExponentWindow,
) -> BivariateCoefficients<B> {
    let p = arith::q(-a.parity().sign_with(b.parity()));
    BivariateCoefficients::from_fn(window, |zp, wq| {
        let (i, k) = (-zp - 1, -wq - 1);
        let mut out = a.mode(i, &b.mode(k, v));
        out.add_scaled(&p, &b.mode(k, &a.mode(i, v)));
        out
    })
}

/// `(a_(n) b)_(m) v` for `n >= 0` as `Res_z (z - w)^n [a(z), b(w)] v`, read
/// off at `w^{-m-1}`. Shares no code with [`nth_product`].
pub fn nth_product_by_residue<B: Basis>(a: &Field<B>, b: &Field<B>, n: u32, m: i64, v: &Vector<B>) -> Vector<B> {
    let q = -m - 1;
    let n = n as i64;
    let window = ExponentWindow::new(ExpRange::new(-1 - n, -1), ExpRange::new(q - n, q));
    let commutator = commutator_coefficients(a, b, v, window);
    let product = multiply_scalar(&binomial_polynomial(n as u32), &commutator).expect("window sized for the product");
    residue_z(&product)
        .and_then(|row| row.coeff(q))
        .expect("residue row covers w^{-m-1}")
}

/// Least `N <= n_max` with `a_(n) b` vanishing on the grid for every
/// `N <= n <= n_max`, or the witness that `a_(n_max) b` does not vanish.
pub fn find_weak_locality_bound<B: Basis>(
    a: &Field<B>,
    b: &Field<B>,
    grid: &Grid<B>,
    n_max: i64,
) -> Result<i64, Discrepancy<B>> {
    for n in (0..=n_max).rev() {
        if let Some(d) = field_nonzero(&nth_product(a, b, n), grid) {
            return if n == n_max { Err(d) } else { Ok(n + 1) };
        }
    }
    Ok(0)
}

/// Weak-locality verdict for the ordered pair `(a, b)`; `found` carries `N`.
pub fn weak_locality_bound<B: Basis>(a: &Field<B>, b: &Field<B>, grid: &Grid<B>, n_max: i64) -> CheckReport {
    let name = format!("weak-locality({}, {})", a.label(), b.label());
    let window = grid.window();
    let mut window_with_products = window.clone();
    window_with_products.products = Some(ExpRange::new(0, n_max));
    match find_weak_locality_bound(a, b, grid, n_max) {
        Ok(n) => CheckReport::holds(name, grid.params(Some(n_max)), window_with_products).with_found(Some(n)),
        Err(d) => CheckReport::fails(
            name,
            grid.params(Some(n_max)),
            window_with_products,
            d.witness("weak-locality", a.label(), Some(b.label()), Some(n_max)),
        )
        .with_note(format!("no bound found <= {n_max}")),
    }
}

/// The skewsymmetry residual and its verdict.
pub struct SkewResidual<B: Basis> {
    pub report: CheckReport,
    /// `None` when the weak-locality hypotheses could not be established.
    pub residual: Option<Field<B>>,
}

/// `R = a_(n) b + s p(a,b) sum_{j>=0} (-1)^{j+n} d^(j)(b_(n+j) a)` where
/// `s` is the calibrated global sign (see [`calibrate_skew_sign`]). The sum
/// stops once `n + j` reaches the weak-locality bound of `(b, a)`.
pub fn skewsymmetry_residual<B: Basis>(
    a: &Field<B>,
    b: &Field<B>,
    n: i64,
    grid: &Grid<B>,
    n_max: i64,
    skew_sign: i64,
) -> SkewResidual<B> {
    let name = format!("skewsymmetry({}, {}, n={n})", a.label(), b.label());
    let params = grid.params(Some(n_max));
    let bound_ba = match find_weak_locality_bound(b, a, grid, n_max) {
        Ok(bound) => bound,
        Err(_) => {
            return SkewResidual {
                report: CheckReport::inapplicable(
                    name,
                    params,
                    format!("({b}, {a}) has no weak-locality bound <= {n_max}"),
                ),
                residual: None,
            }
        }
    };
    if find_weak_locality_bound(a, b, grid, n_max).is_err() {
        return SkewResidual {
            report: CheckReport::inapplicable(
                name,
                params,
                format!("({a}, {b}) has no weak-locality bound <= {n_max}"),
            ),
            residual: None,
        };
    }
    let p = a.parity().sign_with(b.parity());
    let mut terms = vec![(Q::one(), nth_product(a, b, n))];
    let mut j = 0i64;
    while n + j < bound_ba {
        let c = arith::q(skew_sign * p * sign(j + n));
        terms.push((c, divided_derivative(&nth_product(b, a, n + j), j as u32)));
        j += 1;
    }
    let residual = linear_combination(format!("R({}, {}, {n})", a.label(), b.label()), terms);
    let report = match field_nonzero(&residual, grid) {
        None => CheckReport::holds(name, params, grid.window()),
        Some(d) => CheckReport::fails(
            name,
            params,
            grid.window(),
            d.witness("skewsymmetry", a.label(), Some(b.label()), Some(n)),
        ),
    };
    SkewResidual {
        report,
        residual: Some(residual),
    }
}

/// Picks the global sign of the skewsymmetry residual that makes it vanish
/// for a pair known to be local, over every `n` in `ns`.
pub fn calibrate_skew_sign<B: Basis>(
    a: &Field<B>,
    b: &Field<B>,
    ns: ExpRange,
    grid: &Grid<B>,
    n_max: i64,
) -> Result<i64, String> {
    let vanishing: Vec<i64> = [1, -1]
        .into_iter()
        .filter(|&s| {
            ns.iter()
                .all(|n| skewsymmetry_residual(a, b, n, grid, n_max, s).report.is_holds())
        })
        .collect();
    match vanishing.as_slice() {
        [s] => Ok(*s),
        [] => Err(format!("no sign makes the residual of ({a}, {b}) vanish")),
        _ => Err(format!(
            "the residual of ({a}, {b}) vanishes for both signs; pick a pair with a nonzero product"
        )),
    }
}

/// Weak Dong property: if all ordered pairs among `(a, b, c)` are weakly
/// local, then `(a_(k) b, c)` and `(c, a_(k) b)` are weakly local for each `k`.
///
/// A failing hypothesis makes the verdict `inapplicable`, never `fails`.
pub fn dong_weak_check<B: Basis>(
    a: &Field<B>,
    b: &Field<B>,
    c: &Field<B>,
    products: &[i64],
    grid: &Grid<B>,
    n_max: i64,
) -> CheckReport {
    let name = format!("dong({}, {}, {})", a.label(), b.label(), c.label());
    let params = grid.params(Some(n_max));
    let pairs = [(a, b), (b, a), (a, c), (c, a), (b, c), (c, b)];
    for (x, y) in pairs {
        if find_weak_locality_bound(x, y, grid, n_max).is_err() {
            return CheckReport::inapplicable(
                name,
                params,
                format!("hypothesis fails: ({x}, {y}) is not weakly local at this scale"),
            );
        }
    }
    let mut bounds = Vec::new();
    let mut largest = 0;
    for &k in products {
        let d = nth_product(a, b, k);
        for (x, y) in [(&d, c), (c, &d)] {
            match find_weak_locality_bound(x, y, grid, n_max) {
                Ok(n) => {
                    largest = largest.max(n);
                    bounds.push(format!("({x}, {y}): {n}"));
                }
                Err(disc) => {
                    let mut w: Witness = disc.witness("dong", x.label(), Some(y.label()), Some(n_max));
                    w.field_c = Some(format!("k={k}"));
                    return CheckReport::fails(name, params, grid.window(), w)
                        .with_note(format!("({x}, {y}) has no bound <= {n_max}"));
                }
            }
        }
    }
    CheckReport::holds(name, params, grid.window())
        .with_found(Some(largest))
        .with_note(bounds.join("; "))
}

/// A cell where `(z - w)^N [a(z), b(w)] v` is nonzero at the largest `N` tried.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalityFailure<B: Basis> {
    pub vector: B,
    pub n: i64,
    pub cell: (i64, i64),
    pub value: Vector<B>,
}

/// Least `N <= n_max` with `(z - w)^N [a(z), b(w)] v = 0` for every `v` in
/// `states`. The commutator is taken on `[-w - n_max, w + n_max]^2`, so the
/// interior left after multiplication always contains `[-w, w]^2`; every
/// interior cell is compared, not only the certified square.
pub fn find_locality_order<B: Basis>(
    a: &Field<B>,
    b: &Field<B>,
    states: &[B],
    w: i64,
    n_max: i64,
) -> Result<i64, LocalityFailure<B>> {
    let window = ExponentWindow::square(-w - n_max, w + n_max);
    let commutators: Vec<_> = states
        .par_iter()
        .map(|s| (s, commutator_coefficients(a, b, &Vector::basis(s.clone()), window)))
        .collect();
    let mut last = None;
    for n in 0..=n_max {
        let poly = binomial_polynomial(n as u32);
        let failure = commutators.par_iter().find_map_first(|(s, c)| {
            let product = multiply_scalar(&poly, c).expect("commutator window exceeds the polynomial degree");
            product.first_nonzero().map(|(p, q)| LocalityFailure {
                vector: (*s).clone(),
                n,
                cell: (p, q),
                value: product.get(p, q),
            })
        });
        match failure {
            None => return Ok(n),
            Some(f) => last = Some(f),
        }
    }
    Err(last.expect("n_max >= 0"))
}
