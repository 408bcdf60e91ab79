use num_traits::One;
use rayon::prelude::*;

use super::{basis_label, parse_state, ProbeError, SuiteParams, VACUUM_LABEL};
use crate::arith::{self, Q};
use crate::distributions::ExponentWindow;
use crate::field_algebra::{translation_covariance, FieldAlgebra, StateKey};
use crate::fields::{
    commutator_coefficients, derivative, fields_differ, find_locality_order, find_weak_locality_bound, first_mismatch,
    nth_product, Discrepancy, Field,
};
use crate::report::{labelled, CertifiedWindow, CheckReport, ExpRange, Labelled, Witness};
use crate::state::StateModel;
use crate::vector::Vector;

fn discrepancy_witness<M: StateModel>(
    fa: &FieldAlgebra<M>,
    check: &str,
    a: &M::Basis,
    b: Option<&M::Basis>,
    n: Option<i64>,
    d: &Discrepancy<M::Basis>,
) -> Witness {
    let b = b.map(|b| basis_label(fa, b));
    let mut w = d.witness(check, &basis_label(fa, a), b.as_deref(), n);
    w.vector = Some(basis_label(fa, &d.vector));
    w
}

/// `Y(a)_(n) |0>` against the created-state condition: `0` for `n >= 0`,
/// `a` for `n = -1`. Checks `n` in `modes`.
fn created_state<M: StateModel>(fa: &FieldAlgebra<M>, check: &str, a: &M::Basis, modes: &[i64]) -> Option<Witness> {
    let vac = fa.vacuum();
    let y = fa.y_basis(a);
    modes.iter().find_map(|&n| {
        let lhs = y.mode(n, &vac);
        let rhs = if n == -1 {
            Vector::basis(a.clone())
        } else {
            Vector::zero()
        };
        (lhs != rhs).then(|| {
            let mut w = Witness::new(check);
            w.field_a = Some(basis_label(fa, a));
            w.mode = Some(n);
            w.vector = Some(VACUUM_LABEL.to_string());
            w.result = labelled(&lhs);
            w.expected = Some(labelled(&rhs));
            w
        })
    })
}

fn identity_of_vacuum<M: StateModel>(fa: &FieldAlgebra<M>, check: &str, p: &SuiteParams) -> Option<Witness> {
    let grid = p.grid(fa);
    fields_differ(&fa.y(&fa.vacuum()), &Field::identity(), &grid).map(|d| {
        let mut w = d.witness(check, VACUUM_LABEL, None, None);
        w.vector = Some(basis_label(fa, &d.vector));
        w
    })
}

fn vacuum_like<M: StateModel>(fa: &FieldAlgebra<M>, p: &SuiteParams, check: &str, modes: &[i64]) -> CheckReport {
    let grid = p.grid(fa);
    let witness = identity_of_vacuum(fa, check, p).or_else(|| {
        fa.test_states(p.depth)
            .par_iter()
            .find_map_first(|a| created_state(fa, check, a, modes))
    });
    CheckReport::from_search(check, p.check_params(fa, None), grid.window(), witness)
}

/// `Y(|0>, z) = I` and `Y(a, z)|0>|_{z=0} = a`: `a_(n)|0> = 0` for
/// `0 <= n <= W` and `a_(-1)|0> = a`.
pub fn check_vacuum<M: StateModel>(fa: &FieldAlgebra<M>, p: &SuiteParams) -> CheckReport {
    let modes: Vec<i64> = std::iter::once(-1).chain(0..=p.window).collect();
    vacuum_like(fa, p, "vacuum", &modes)
}

/// `Y(|0>, z) = I` and `a_(-1)|0> = a`, without regularity at `z = 0`.
pub fn check_partial_vacuum<M: StateModel>(fa: &FieldAlgebra<M>, p: &SuiteParams) -> CheckReport {
    vacuum_like(fa, p, "partial-vacuum", &[-1])
}

/// `Y(Ta, z) = d Y(a, z) = [T, Y(a, z)]` modewise: `Y(Ta)_(n) = -n a_(n-1)`
/// and `[T, a_(n)] = -n a_(n-1)`.
pub fn check_translation<M: StateModel>(fa: &FieldAlgebra<M>, p: &SuiteParams) -> CheckReport {
    let grid = p.grid(fa);
    let witness = fa.test_states(p.depth).par_iter().find_map_first(|a| {
        let ya = fa.y_basis(a);
        let yta = fa.y(&fa.translate(&Vector::basis(a.clone())));
        if let Some(d) = fields_differ(&yta, &derivative(&ya), &grid) {
            return Some(discrepancy_witness(fa, "translation", a, None, None, &d));
        }
        translation_covariance(fa.model(), &ya, &grid)
            .map(|d| discrepancy_witness(fa, "translation-commutator", a, None, None, &d))
    });
    CheckReport::from_search("translation", p.check_params(fa, None), grid.window(), witness)
}

/// `Y(a_(n) b, z) = Y(a, z)_(n) Y(b, z)` for `n` in `ns`.
pub fn check_nth_product_axiom<M: StateModel>(fa: &FieldAlgebra<M>, p: &SuiteParams, ns: ExpRange) -> CheckReport {
    let grid = p.grid(fa);
    let states = fa.test_states(p.depth);
    let cases: Vec<(&M::Basis, &M::Basis, i64)> = states
        .iter()
        .flat_map(|a| states.iter().flat_map(move |b| ns.iter().map(move |n| (a, b, n))))
        .collect();
    let witness = cases.par_iter().find_map_first(|&(a, b, n)| {
        let (va, vb) = (Vector::basis(a.clone()), Vector::basis(b.clone()));
        let lhs = fa.y(&fa.product(&va, n, &vb));
        let rhs = nth_product(&fa.y(&va), &fa.y(&vb), n);
        fields_differ(&lhs, &rhs, &grid).map(|d| discrepancy_witness(fa, "nth-product", a, Some(b), Some(n), &d))
    });
    let mut window = grid.window();
    window.products = Some(ns);
    CheckReport::from_search("nth-product", p.check_params(fa, None), window, witness)
}

/// `Y(a)_(n) Y(b) = 0` for `n >= N`, some `N <= N_max`, for all test pairs.
/// `found` is the largest `N` needed.
pub fn check_weak_locality<M: StateModel>(fa: &FieldAlgebra<M>, p: &SuiteParams) -> CheckReport {
    let grid = p.grid(fa);
    let states = fa.test_states(p.depth);
    let pairs: Vec<(&M::Basis, &M::Basis)> = states.iter().flat_map(|a| states.iter().map(move |b| (a, b))).collect();
    let results: Vec<Result<i64, Box<Witness>>> = pairs
        .par_iter()
        .map(|&(a, b)| {
            find_weak_locality_bound(&fa.y_basis(a), &fa.y_basis(b), &grid, p.n_max)
                .map_err(|d| Box::new(discrepancy_witness(fa, "weak-locality", a, Some(b), Some(p.n_max), &d)))
        })
        .collect();
    let mut window = grid.window();
    window.products = Some(ExpRange::new(0, p.n_max));
    let params = p.check_params(fa, Some(p.n_max));
    match results.iter().find_map(|r| r.as_ref().err()) {
        Some(w) => CheckReport::fails("weak-locality", params, window, w.as_ref().clone()),
        None => {
            let found = results
                .iter()
                .filter_map(|r| r.as_ref().ok())
                .copied()
                .max()
                .unwrap_or(0);
            CheckReport::holds("weak-locality", params, window).with_found(Some(found))
        }
    }
}

/// `(z - w)^N [Y(a, z), Y(b, w)] v = 0` for some `N <= n_max`, test pairs
/// and `v` of degree `<= depth`, on `[-W, W]^2`.
pub fn check_locality<M: StateModel>(fa: &FieldAlgebra<M>, p: &SuiteParams, n_max: i64) -> CheckReport {
    let states = fa.test_states(p.depth);
    let pairs: Vec<(&M::Basis, &M::Basis)> = states.iter().flat_map(|a| states.iter().map(move |b| (a, b))).collect();
    let results: Vec<Result<i64, Box<Witness>>> = pairs
        .par_iter()
        .map(|&(a, b)| {
            find_locality_order(&fa.y_basis(a), &fa.y_basis(b), &states, p.window, n_max).map_err(|f| {
                let mut w = Witness::new("locality");
                w.field_a = Some(basis_label(fa, a));
                w.field_b = Some(basis_label(fa, b));
                w.n = Some(f.n);
                w.cell = Some(vec![f.cell.0, f.cell.1]);
                w.vector = Some(basis_label(fa, &f.vector));
                w.result = labelled(&f.value);
                Box::new(w)
            })
        })
        .collect();
    let window = CertifiedWindow {
        degree: Some(p.depth),
        z: Some(ExpRange::symmetric(p.window)),
        w: Some(ExpRange::symmetric(p.window)),
        ..CertifiedWindow::default()
    };
    let params = p.check_params(fa, Some(n_max));
    match results.iter().find_map(|r| r.as_ref().err()) {
        Some(w) => CheckReport::fails("locality", params, window, w.as_ref().clone()),
        None => {
            let found = results
                .iter()
                .filter_map(|r| r.as_ref().ok())
                .copied()
                .max()
                .unwrap_or(0);
            CheckReport::holds("locality", params, window).with_found(Some(found))
        }
    }
}

/// `X(a) = Y(a)` on the grid: holds means a vertex algebra on this window,
/// fails means a strict field algebra, with the witness pair.
pub fn classify_skewsymmetry<M: StateModel>(fa: &FieldAlgebra<M>, p: &SuiteParams) -> CheckReport {
    let grid = p.grid(fa);
    let x = fa.opposite();
    // mode -1 first: X(a, 0) b against Y(a, 0) b is the most readable witness
    let mut at_zero = grid.clone();
    at_zero.modes = ExpRange::new(-1, -1);
    let states = fa.test_states(p.depth);
    let witness = [&at_zero, &grid].into_iter().find_map(|g| {
        states.par_iter().find_map_first(|a| {
            let d = fields_differ(&x.y_basis(a), &fa.y_basis(a), g)?;
            Some(discrepancy_witness(fa, "skewsymmetry", a, Some(&d.vector), None, &d))
        })
    });
    let params = p.check_params(fa, None);
    match witness {
        None => CheckReport::holds("skewsymmetry", params, grid.window()).with_note("vertex algebra on this window"),
        Some(w) => CheckReport::fails("skewsymmetry", params, grid.window(), w).with_note("strict field algebra"),
    }
}

/// `(Ta)_(n) b = -n a_(n-1) b` for `0 <= n <= W`, with the skewsymmetry
/// status `c2` recorded in the note. A surrogate for the conformal-algebra
/// axioms other than skewsymmetry.
pub fn check_conformal_surrogates<M: StateModel>(
    fa: &FieldAlgebra<M>,
    p: &SuiteParams,
    c2: &CheckReport,
) -> CheckReport {
    let mut grid = p.grid(fa);
    grid.modes = ExpRange::new(0, p.window);
    let witness = fa.test_states(p.depth).par_iter().find_map_first(|a| {
        let ya = fa.y_basis(a);
        let yta = fa.y(&fa.translate(&Vector::basis(a.clone())));
        let d = first_mismatch(
            &grid,
            |n, b| yta.mode_basis(n, b).as_ref().clone(),
            |n, b| ya.mode_basis(n - 1, b).scaled(&arith::q(-n)),
        )?;
        Some(discrepancy_witness(fa, "conformal-surrogate", a, None, None, &d))
    });
    let note = format!("surrogate; skewsymmetry {}", c2.verdict);
    CheckReport::from_search("conformal-surrogate", p.check_params(fa, None), grid.window(), witness).with_note(note)
}

/// `Y` through the recursion on every presentation of depth `<= depth`
/// with modes in `[-depth, depth - 1]` equals `Y` of the presented state.
pub fn check_recursion_consistency<M: StateModel>(fa: &FieldAlgebra<M>, p: &SuiteParams) -> CheckReport {
    let grid = p.grid(fa);
    let depth = p.depth as i64;
    let mut keys = vec![StateKey::Vacuum];
    let mut layer = keys.clone();
    for _ in 0..p.depth {
        layer = layer
            .iter()
            .flat_map(|k| (0..fa.generators().len()).flat_map(move |g| (-depth..depth).map(move |n| k.apply(g, n))))
            .collect();
        keys.extend(layer.iter().cloned());
    }
    let witness = keys.par_iter().find_map_first(|k| {
        let v = fa.eval_key(k);
        let d = fields_differ(&fa.y_key(k), &fa.y(&v), &grid)?;
        let mut w = Witness::new("recursion-consistency");
        w.field_a = Some(fa.render_key(k));
        w.field_b = Some(v.to_string());
        w.mode = Some(d.mode);
        w.vector = Some(basis_label(fa, &d.vector));
        w.result = labelled(&d.lhs);
        w.expected = Some(labelled(&d.rhs));
        Some(w)
    });
    let note = format!("{} presentations", keys.len());
    CheckReport::from_search(
        "recursion-consistency",
        p.check_params(fa, None),
        grid.window(),
        witness,
    )
    .with_note(note)
}

fn field(w: &Witness) -> Result<&str, ProbeError> {
    w.field_a.as_deref().ok_or(ProbeError::Missing("field_a"))
}

fn commutator_with_t<M: StateModel>(
    fa: &FieldAlgebra<M>,
    f: &Field<M::Basis>,
    n: i64,
    v: &Vector<M::Basis>,
) -> Vector<M::Basis> {
    let mut out = fa.translate(&f.mode(n, v));
    out.add_scaled(&-Q::one(), &f.mode(n, &fa.translate(v)));
    out
}

pub(super) fn probe<M: StateModel>(
    fa: &FieldAlgebra<M>,
    w: &Witness,
) -> Result<(Labelled, Option<Labelled>), ProbeError> {
    let a = parse_state(fa, field(w)?)?;
    let b = w.field_b.as_deref().map(|s| parse_state(fa, s)).transpose()?;
    let v = parse_state(fa, w.vector.as_deref().ok_or(ProbeError::Missing("vector"))?)?;
    let m = w.mode;
    let mode = || m.ok_or(ProbeError::Missing("mode"));
    let n = || w.n.ok_or(ProbeError::Missing("n"));
    let second = || b.clone().ok_or(ProbeError::Missing("field_b"));
    let pair = |lhs: Vector<M::Basis>, rhs: Vector<M::Basis>| (labelled(&lhs), Some(labelled(&rhs)));
    let ya = fa.y(&a);
    Ok(match w.check.as_str() {
        "vacuum" | "partial-vacuum" => {
            let m = mode()?;
            let lhs = ya.mode(m, &v);
            let rhs = if a == fa.vacuum() {
                Field::identity().mode(m, &v)
            } else if m == -1 {
                a.clone()
            } else {
                Vector::zero()
            };
            pair(lhs, rhs)
        }
        "translation" => {
            let m = mode()?;
            pair(
                fa.y(&fa.translate(&a)).mode(m, &v),
                ya.mode(m - 1, &v).scaled(&arith::q(-m)),
            )
        }
        "translation-commutator" => {
            let m = mode()?;
            pair(
                commutator_with_t(fa, &ya, m, &v),
                ya.mode(m - 1, &v).scaled(&arith::q(-m)),
            )
        }
        "conformal-surrogate" => {
            let m = mode()?;
            pair(
                fa.y(&fa.translate(&a)).mode(m, &v),
                ya.mode(m - 1, &v).scaled(&arith::q(-m)),
            )
        }
        "nth-product" => {
            let (b, n, m) = (second()?, n()?, mode()?);
            let lhs = fa.y(&fa.product(&a, n, &b)).mode(m, &v);
            pair(lhs, nth_product(&ya, &fa.y(&b), n).mode(m, &v))
        }
        "weak-locality" => {
            let (b, n, m) = (second()?, n()?, mode()?);
            pair(nth_product(&ya, &fa.y(&b), n).mode(m, &v), Vector::zero())
        }
        "skewsymmetry" => {
            let m = mode()?;
            pair(fa.opposite().y(&a).mode(m, &v), ya.mode(m, &v))
        }
        "locality" => {
            let (b, n) = (second()?, n()?);
            let cell = w.cell.as_deref().ok_or(ProbeError::Missing("cell"))?;
            let (p, q) = (cell[0], cell[1]);
            let window = ExponentWindow::new(ExpRange::new(p - n, p), ExpRange::new(q - n, q));
            let c = commutator_coefficients(&ya, &fa.y(&b), &v, window);
            // (z - w)^N = sum_k C(N, k) (-1)^k z^{N-k} w^k
            let mut value = Vector::zero();
            for k in 0..=n {
                let coeff = arith::binomial(n, k as u32) * arith::q(arith::sign(k));
                value.add_scaled(&coeff, &c.get(p - n + k, q - k));
            }
            (labelled(&value), None)
        }
        other => return Err(ProbeError::UnknownCheck(other.to_string())),
    })
}
