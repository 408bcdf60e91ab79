//! The expansion identity with its delta-function correction, and the
//! associativity it implies after multiplying by `(z - w)^N`.
//!
//! Cell `(p, q)` is the coefficient of `z^p w^q`. With `Y(a, z-w)` expanded
//! in `|z| > |w|`:
//!
//! ```text
//! lhs(p, q)  = (-1)^q Y(a_(-p-1) b)_(-q-1) c
//! main(p, q) = sum_{i >= 0} C(p+i, i) (-1)^i (-1)^(k+1) a_(-p-1-i) b_(k) c,   k = i-q-1
//! corr(p, q) = p(a,b) sum_{j >= 0} C(-p-1, j) (-1)^(k+1) b_(k) a_(j) c,       k = -p-q-j-2
//! ```
//!
//! and the identity reads `lhs = main - corr` cellwise.

use num_traits::One;
use rayon::prelude::*;

use super::{basis_label, parse_state, ProbeError, SuiteParams};
use crate::arith::{self, Q};
use crate::distributions::{binomial_polynomial, multiply_scalar, BivariateCoefficients, ExponentWindow};
use crate::field_algebra::FieldAlgebra;
use crate::fields::Field;
use crate::report::{labelled, CertifiedWindow, CheckReport, ExpRange, Labelled, Witness};
use crate::state::StateModel;
use crate::vector::Vector;

/// The three sides of the expansion identity on a window.
#[derive(Clone, Debug)]
pub struct IdentityTerms<B: crate::vector::Basis> {
    pub lhs: BivariateCoefficients<B>,
    pub main: BivariateCoefficients<B>,
    pub correction: BivariateCoefficients<B>,
}

struct Sides<'a, M: StateModel> {
    fa: &'a FieldAlgebra<M>,
    a: Vector<M::Basis>,
    b: Vector<M::Basis>,
    c: Vector<M::Basis>,
    ya: Field<M::Basis>,
    yb: Field<M::Basis>,
    parity: i64,
}

impl<'a, M: StateModel> Sides<'a, M> {
    fn new(fa: &'a FieldAlgebra<M>, a: &Vector<M::Basis>, b: &Vector<M::Basis>, c: &Vector<M::Basis>) -> Self {
        let (ya, yb) = (fa.y(a), fa.y(b));
        Self {
            fa,
            a: a.clone(),
            b: b.clone(),
            c: c.clone(),
            parity: ya.parity().sign_with(yb.parity()),
            ya,
            yb,
        }
    }

    fn lhs(&self, p: i64, q: i64) -> Vector<M::Basis> {
        let d = self.fa.product(&self.a, -p - 1, &self.b);
        if d.is_zero() {
            return d;
        }
        self.fa.y(&d).mode(-q - 1, &self.c).scaled(&arith::q(arith::sign(q)))
    }

    fn main(&self, p: i64, q: i64) -> Vector<M::Basis> {
        let mut out = Vector::zero();
        let top = self.yb.ann_bound(&self.c) + q;
        for i in 0..=top {
            let k = i - q - 1;
            let bc = self.yb.mode(k, &self.c);
            if bc.is_zero() {
                continue;
            }
            let coeff = arith::binomial(p + i, i as u32) * arith::q(arith::sign(i) * arith::sign(k + 1));
            out.add_scaled(&coeff, &self.ya.mode(-p - 1 - i, &bc));
        }
        out
    }

    fn correction(&self, p: i64, q: i64) -> Vector<M::Basis> {
        let mut out = Vector::zero();
        for j in 0..self.ya.ann_bound(&self.c) {
            let ac = self.ya.mode(j, &self.c);
            if ac.is_zero() {
                continue;
            }
            let k = -p - q - j - 2;
            let coeff = arith::binomial(-p - 1, j as u32) * arith::q(self.parity * arith::sign(k + 1));
            out.add_scaled(&coeff, &self.yb.mode(k, &ac));
        }
        out
    }
}

fn tabulate<B: crate::vector::Basis>(
    window: ExponentWindow,
    f: impl Fn(i64, i64) -> Vector<B> + Sync,
) -> BivariateCoefficients<B> {
    let cells: Vec<(i64, i64)> = window.cells().collect();
    let values: Vec<Vector<B>> = cells.par_iter().map(|&(p, q)| f(p, q)).collect();
    let mut out = BivariateCoefficients::zero(window);
    for ((p, q), v) in cells.into_iter().zip(values) {
        out.set(p, q, v);
    }
    out
}

/// `lhs`, `main` and `corr` for states `a, b, c` on `window`.
pub fn expansion_identity_terms<M: StateModel>(
    fa: &FieldAlgebra<M>,
    a: &Vector<M::Basis>,
    b: &Vector<M::Basis>,
    c: &Vector<M::Basis>,
    window: ExponentWindow,
) -> IdentityTerms<M::Basis> {
    let s = Sides::new(fa, a, b, c);
    IdentityTerms {
        lhs: tabulate(window, |p, q| s.lhs(p, q)),
        main: tabulate(window, |p, q| s.main(p, q)),
        correction: tabulate(window, |p, q| s.correction(p, q)),
    }
}

/// `(lhs, main)`: the associativity sides before multiplying by `(z - w)^N`.
pub fn associativity_sides<M: StateModel>(
    fa: &FieldAlgebra<M>,
    a: &Vector<M::Basis>,
    b: &Vector<M::Basis>,
    c: &Vector<M::Basis>,
    window: ExponentWindow,
) -> (BivariateCoefficients<M::Basis>, BivariateCoefficients<M::Basis>) {
    let s = Sides::new(fa, a, b, c);
    (
        tabulate(window, |p, q| s.lhs(p, q)),
        tabulate(window, |p, q| s.main(p, q)),
    )
}

fn triple_name(check: &str, fa_labels: [&str; 3]) -> String {
    format!("{check}({}, {}, {})", fa_labels[0], fa_labels[1], fa_labels[2])
}

fn triple_witness(check: &str, labels: [&str; 3], cell: (i64, i64)) -> Witness {
    let mut w = Witness::new(check);
    w.field_a = Some(labels[0].to_string());
    w.field_b = Some(labels[1].to_string());
    w.field_c = Some(labels[2].to_string());
    w.cell = Some(vec![cell.0, cell.1]);
    w
}

fn window_report(window: ExponentWindow) -> CertifiedWindow {
    CertifiedWindow {
        z: Some(window.z),
        w: Some(window.w),
        ..CertifiedWindow::default()
    }
}

/// `lhs = main - corr` on `[-W, W]^2`. The note records whether the
/// correction term vanishes there.
pub fn check_expansion_identity<M: StateModel>(
    fa: &FieldAlgebra<M>,
    a: &M::Basis,
    b: &M::Basis,
    c: &M::Basis,
    p: &SuiteParams,
) -> CheckReport {
    let labels = [basis_label(fa, a), basis_label(fa, b), basis_label(fa, c)];
    let labels = [labels[0].as_str(), labels[1].as_str(), labels[2].as_str()];
    let window = ExponentWindow::symmetric(p.window);
    let (va, vb, vc) = (
        Vector::basis(a.clone()),
        Vector::basis(b.clone()),
        Vector::basis(c.clone()),
    );
    let t = expansion_identity_terms(fa, &va, &vb, &vc, window);
    let rhs = t.main.sub(&t.correction);
    let note = if t.correction.first_nonzero().is_some() {
        "correction nonzero"
    } else {
        "correction zero"
    };
    let name = triple_name("expansion-identity", labels);
    let params = p.check_params(fa, None);
    match t.lhs.first_difference(&rhs) {
        None => CheckReport::holds(name, params, window_report(window)).with_note(note),
        Some(cell) => {
            let mut w = triple_witness("expansion-identity", labels, cell);
            w.result = labelled(&t.lhs.get(cell.0, cell.1));
            w.expected = Some(labelled(&rhs.get(cell.0, cell.1)));
            CheckReport::fails(name, params, window_report(window), w).with_note(note)
        }
    }
}

/// Least `N <= n_max` with `(z - w)^N lhs = (z - w)^N main` on `[-W, W]^2`.
/// On failure the witness is the first differing cell at `N = n_max`.
pub fn check_associativity<M: StateModel>(
    fa: &FieldAlgebra<M>,
    a: &M::Basis,
    b: &M::Basis,
    c: &M::Basis,
    n_max: i64,
    p: &SuiteParams,
) -> CheckReport {
    let labels = [basis_label(fa, a), basis_label(fa, b), basis_label(fa, c)];
    let labels = [labels[0].as_str(), labels[1].as_str(), labels[2].as_str()];
    let w = p.window;
    let base = ExponentWindow::square(-w - n_max, w);
    let target = ExponentWindow::symmetric(w);
    let (va, vb, vc) = (
        Vector::basis(a.clone()),
        Vector::basis(b.clone()),
        Vector::basis(c.clone()),
    );
    let (lhs, main) = associativity_sides(fa, &va, &vb, &vc, base);
    let name = triple_name("associativity", labels);
    let mut window = window_report(target);
    window.products = Some(ExpRange::new(0, n_max));
    let params = p.check_params(fa, Some(n_max));
    let multiplied = |n: i64| {
        let poly = binomial_polynomial(n as u32);
        let l = multiply_scalar(&poly, &lhs)
            .expect("window fits n_max")
            .restrict(target);
        let r = multiply_scalar(&poly, &main)
            .expect("window fits n_max")
            .restrict(target);
        (l, r)
    };
    for n in 0..=n_max {
        let (l, r) = multiplied(n);
        if l.first_difference(&r).is_none() {
            return CheckReport::holds(name, params, window).with_found(Some(n));
        }
    }
    let (l, r) = multiplied(n_max);
    let cell = l.first_difference(&r).expect("sides differ");
    let mut wit = triple_witness("associativity", labels, cell);
    wit.n = Some(n_max);
    wit.result = labelled(&l.get(cell.0, cell.1));
    wit.expected = Some(labelled(&r.get(cell.0, cell.1)));
    CheckReport::fails(name, params, window, wit)
}

fn triples<M: StateModel>(fa: &FieldAlgebra<M>, p: &SuiteParams) -> Vec<(M::Basis, M::Basis, M::Basis)> {
    let states = fa.test_states(p.triple_depth());
    let mut out = Vec::new();
    for a in &states {
        for b in &states {
            for c in &states {
                out.push((a.clone(), b.clone(), c.clone()));
            }
        }
    }
    out
}

/// Merges per-triple reports: the first failure in triple order, or holds
/// with the largest `found`.
fn merge(name: &str, params: crate::report::CheckParams, reports: Vec<CheckReport>) -> CheckReport {
    if let Some(r) = reports.iter().find(|r| !r.is_holds()) {
        let mut out = r.clone();
        out.name = name.to_string();
        out.params = params;
        return out;
    }
    let found = reports.iter().filter_map(|r| r.found).max();
    let nonzero = reports
        .iter()
        .filter(|r| r.note.as_deref() == Some("correction nonzero"))
        .count();
    let window = reports.first().map(|r| r.window.clone()).unwrap_or_default();
    let mut out = CheckReport::holds(name, params, window).with_found(found);
    if name == "expansion-identity" {
        out = out.with_note(format!("{} triples, correction nonzero on {nonzero}", reports.len()));
    } else {
        out = out.with_note(format!("{} triples", reports.len()));
    }
    out
}

/// [`check_expansion_identity`] on every triple of test states of depth
/// `<= triple_depth`.
pub fn check_identity_all<M: StateModel>(fa: &FieldAlgebra<M>, p: &SuiteParams) -> CheckReport {
    let reports: Vec<CheckReport> = triples(fa, p)
        .par_iter()
        .map(|(a, b, c)| check_expansion_identity(fa, a, b, c, p))
        .collect();
    merge("expansion-identity", p.check_params(fa, None), reports)
}

/// [`check_associativity`] on every triple of test states, `N <= N_max`.
pub fn check_associativity_all<M: StateModel>(fa: &FieldAlgebra<M>, p: &SuiteParams) -> CheckReport {
    let reports: Vec<CheckReport> = triples(fa, p)
        .par_iter()
        .map(|(a, b, c)| check_associativity(fa, a, b, c, p.n_max, p))
        .collect();
    merge("associativity", p.check_params(fa, Some(p.n_max)), reports)
}

fn triple_states<M: StateModel>(fa: &FieldAlgebra<M>, w: &Witness) -> Result<[Vector<M::Basis>; 3], ProbeError> {
    let get = |s: &Option<String>, what| {
        let s = s.as_deref().ok_or(ProbeError::Missing(what))?;
        parse_state(fa, s)
    };
    Ok([
        get(&w.field_a, "field_a")?,
        get(&w.field_b, "field_b")?,
        get(&w.field_c, "field_c")?,
    ])
}

pub(super) fn probe<M: StateModel>(
    fa: &FieldAlgebra<M>,
    w: &Witness,
) -> Result<(Labelled, Option<Labelled>), ProbeError> {
    let [a, b, c] = triple_states(fa, w)?;
    let cell = w.cell.as_deref().ok_or(ProbeError::Missing("cell"))?;
    let (p, q) = (cell[0], cell[1]);
    let s = Sides::new(fa, &a, &b, &c);
    Ok(match w.check.as_str() {
        "expansion-identity" => {
            let mut rhs = s.main(p, q);
            rhs.add_scaled(&-Q::one(), &s.correction(p, q));
            (labelled(&s.lhs(p, q)), Some(labelled(&rhs)))
        }
        "associativity" => {
            let n = w.n.ok_or(ProbeError::Missing("n"))?;
            // (z - w)^N = sum_k C(N, k) (-1)^k z^{N-k} w^k
            let (mut l, mut r) = (Vector::zero(), Vector::zero());
            for k in 0..=n {
                let coeff = arith::binomial(n, k as u32) * arith::q(arith::sign(k));
                l.add_scaled(&coeff, &s.lhs(p - n + k, q - k));
                r.add_scaled(&coeff, &s.main(p - n + k, q - k));
            }
            (labelled(&l), Some(labelled(&r)))
        }
        other => return Err(ProbeError::UnknownCheck(other.to_string())),
    })
}
