//! Fields as families of mode operators `n -> a_(n)`, with the convention
//! `a(z) = sum_n a_(n) z^{-n-1}`.
//!
//! A field is represented by its action on basis states together with an
//! annihilation bound: `a_(n) v = 0` whenever `n >= ann_bound(v)`. Derived
//! fields (derivatives, normally ordered and n-th products) evaluate their
//! modes through finite sums whose ranges come from these bounds, and
//! memoize the result per `(n, basis state)`.

mod free_boson;
mod locality;
mod products;

use std::fmt;
use std::sync::Arc;

use dashmap::DashMap;
use rayon::prelude::*;

use crate::report::{labelled, CertifiedWindow, CheckParams, ExpRange, Witness};
use crate::state::{Parity, StateModel};
use crate::vector::{Basis, Vector};

pub use free_boson::{alpha_field, beta_field};
pub use locality::{
    calibrate_skew_sign, commutator_coefficients, dong_weak_check, find_locality_order, find_weak_locality_bound,
    nth_product_by_residue, skewsymmetry_residual, weak_locality_bound, LocalityFailure, SkewResidual,
};
pub use products::{derivative, divided_derivative, linear_combination, normal_ordered, nth_product, scaled};

/// Annihilation bound reported for the zero vector: every mode vanishes.
pub const EMPTY_BOUND: i64 = i64::MIN / 4;

type ModeFn<B> = dyn Fn(i64, &B) -> Vector<B> + Send + Sync;
type BoundFn<B> = dyn Fn(&B) -> i64 + Send + Sync;

struct FieldInner<B: Basis> {
    parity: Parity,
    action: Box<ModeFn<B>>,
    bound: Box<BoundFn<B>>,
    modes: DashMap<(i64, B), Arc<Vector<B>>>,
    bounds: DashMap<B, i64>,
}

/// A parity-tagged field. Cloning is cheap; clones share the mode cache.
#[derive(Clone)]
pub struct Field<B: Basis> {
    label: Arc<str>,
    inner: Arc<FieldInner<B>>,
}

impl<B: Basis> Field<B> {
    /// `action(n, b)` must vanish for `n >= bound(b)`.
    pub fn new(
        label: impl Into<String>,
        parity: Parity,
        action: impl Fn(i64, &B) -> Vector<B> + Send + Sync + 'static,
        bound: impl Fn(&B) -> i64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            label: Arc::from(label.into()),
            inner: Arc::new(FieldInner {
                parity,
                action: Box::new(action),
                bound: Box::new(bound),
                modes: DashMap::new(),
                bounds: DashMap::new(),
            }),
        }
    }

    /// `Y(|0>, z) = I`: only `a_(-1)` is nonzero and it is the identity.
    pub fn identity() -> Self {
        Self::new(
            "I",
            Parity::Even,
            |n, b: &B| {
                if n == -1 {
                    Vector::basis(b.clone())
                } else {
                    Vector::zero()
                }
            },
            |_| 0,
        )
    }

    pub fn zero() -> Self {
        Self::new("0", Parity::Even, |_, _| Vector::zero(), |_| EMPTY_BOUND)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn relabel(&self, label: impl Into<String>) -> Self {
        Self {
            label: Arc::from(label.into()),
            inner: Arc::clone(&self.inner),
        }
    }

    pub fn parity(&self) -> Parity {
        self.inner.parity
    }

    pub fn ann_bound_basis(&self, b: &B) -> i64 {
        if let Some(n) = self.inner.bounds.get(b) {
            return *n;
        }
        let n = (self.inner.bound)(b);
        self.inner.bounds.insert(b.clone(), n);
        n
    }

    /// Largest bound over the support; [`EMPTY_BOUND`] for the zero vector.
    pub fn ann_bound(&self, v: &Vector<B>) -> i64 {
        v.support()
            .map(|b| self.ann_bound_basis(b))
            .max()
            .unwrap_or(EMPTY_BOUND)
    }

    pub fn mode_basis(&self, n: i64, b: &B) -> Arc<Vector<B>> {
        if n >= self.ann_bound_basis(b) {
            return Arc::new(Vector::zero());
        }
        let key = (n, b.clone());
        if let Some(v) = self.inner.modes.get(&key) {
            return Arc::clone(&v);
        }
        let v = Arc::new((self.inner.action)(n, b));
        self.inner.modes.insert(key, Arc::clone(&v));
        v
    }

    /// `a_(n) v`.
    pub fn mode(&self, n: i64, v: &Vector<B>) -> Vector<B> {
        let mut out = Vector::zero();
        for (b, c) in v.iter() {
            if n < self.ann_bound_basis(b) {
                out.add_scaled(c, &self.mode_basis(n, b));
            }
        }
        out
    }
}

impl<B: Basis> fmt::Debug for Field<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({})", self.label)
    }
}

impl<B: Basis> fmt::Display for Field<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

/// Test vectors and mode window a field identity is checked on.
#[derive(Clone, Debug)]
pub struct Grid<B: Basis> {
    pub states: Vec<B>,
    pub modes: ExpRange,
    pub degree: usize,
}

impl<B: Basis> Grid<B> {
    pub fn new<M: StateModel<Basis = B>>(model: &M, degree: usize, mode_window: i64) -> Self {
        Self {
            states: model.basis_up_to(degree),
            modes: ExpRange::symmetric(mode_window),
            degree,
        }
    }

    pub fn window(&self) -> CertifiedWindow {
        CertifiedWindow::grid(self.degree, self.modes)
    }

    pub fn params(&self, n_max: Option<i64>) -> CheckParams {
        CheckParams {
            degree_cap: Some(self.degree),
            mode_window: Some(self.modes.hi),
            n_max,
            ..CheckParams::default()
        }
    }

    /// All `(mode, state)` points, modes varying fastest.
    pub fn points(&self) -> Vec<(i64, &B)> {
        self.states
            .iter()
            .flat_map(|b| self.modes.iter().map(move |m| (m, b)))
            .collect()
    }
}

/// A point where two fields disagree: `lhs_(mode) v != rhs_(mode) v`.
#[derive(Clone, Debug, PartialEq)]
pub struct Discrepancy<B: Basis> {
    pub mode: i64,
    pub vector: B,
    pub lhs: Vector<B>,
    pub rhs: Vector<B>,
}

impl<B: Basis> Discrepancy<B> {
    pub fn witness(&self, check: &str, field_a: &str, field_b: Option<&str>, n: Option<i64>) -> Witness {
        let mut w = Witness::new(check);
        w.field_a = Some(field_a.to_string());
        w.field_b = field_b.map(str::to_string);
        w.n = n;
        w.mode = Some(self.mode);
        w.vector = Some(self.vector.to_string());
        w.result = labelled(&self.lhs);
        w.expected = Some(labelled(&self.rhs));
        w
    }
}

/// First grid point (in grid order) where `f(mode, v)` and `g(mode, v)` differ.
pub fn first_mismatch<B: Basis>(
    grid: &Grid<B>,
    f: impl Fn(i64, &B) -> Vector<B> + Sync,
    g: impl Fn(i64, &B) -> Vector<B> + Sync,
) -> Option<Discrepancy<B>> {
    grid.points().par_iter().find_map_first(|&(m, b)| {
        let lhs = f(m, b);
        let rhs = g(m, b);
        (lhs != rhs).then(|| Discrepancy {
            mode: m,
            vector: b.clone(),
            lhs,
            rhs,
        })
    })
}

/// First grid point where two fields differ.
pub fn fields_differ<B: Basis>(a: &Field<B>, b: &Field<B>, grid: &Grid<B>) -> Option<Discrepancy<B>> {
    first_mismatch(
        grid,
        |m, v| a.mode_basis(m, v).as_ref().clone(),
        |m, v| b.mode_basis(m, v).as_ref().clone(),
    )
}

/// First grid point where a field is nonzero.
pub fn field_nonzero<B: Basis>(a: &Field<B>, grid: &Grid<B>) -> Option<Discrepancy<B>> {
    first_mismatch(grid, |m, v| a.mode_basis(m, v).as_ref().clone(), |_, _| Vector::zero())
}
