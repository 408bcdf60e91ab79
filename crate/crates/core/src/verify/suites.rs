//! Canned suites: the counterexample pair, the two shipped algebras, the
//! mutants, the two equivalent axiom sets, weak Dong and uniqueness.

use num_traits::One;
use rayon::prelude::*;

use super::{
    check_associativity_all, check_conformal_surrogates, check_identity_all, check_locality, check_nth_product_axiom,
    check_partial_vacuum, check_recursion_consistency, check_translation, check_vacuum, check_weak_locality,
    classify_skewsymmetry, SuiteParams, SuiteReport,
};
use crate::arith::{self, Q};
use crate::distributions::{expand_power, Direction, ExponentWindow};
use crate::field_algebra::{
    free_boson, seeded_perturbations, uniqueness_check, AssocAlgebraModel, FieldAlgebra, UniquenessSetup,
};
use crate::fields::{
    alpha_field, beta_field, calibrate_skew_sign, commutator_coefficients, dong_weak_check, field_nonzero,
    fields_differ, find_weak_locality_bound, linear_combination, normal_ordered, nth_product, scaled,
    skewsymmetry_residual, Field, Grid,
};
use crate::fock::{self, FockSpace, Monomial};
use crate::report::{labelled, CertifiedWindow, CheckParams, CheckReport, ExpRange, Witness};
use crate::state::StateModel;
use crate::vector::Vector;

type Job<'a> = Box<dyn Fn() -> CheckReport + Send + Sync + 'a>;

fn run(jobs: Vec<Job<'_>>) -> Vec<CheckReport> {
    jobs.par_iter().map(|job| job()).collect()
}

const RAW_FIELDS: &str = "raw-fields(alpha, beta)";

fn raw_params(p: &SuiteParams, n_max: Option<i64>) -> CheckParams {
    CheckParams {
        degree_cap: Some(p.degree),
        mode_window: Some(p.window),
        n_max,
        depth: None,
        algebra: Some(RAW_FIELDS.to_string()),
    }
}

/// `[alpha(z), beta(w)] v = i_{w,z}(z - w)^{-1} v` cellwise on `[-W, W]^2`
/// for every `v` of degree `<= min(D, 4)`.
fn counterexample_commutator(p: &SuiteParams) -> CheckReport {
    let (a, b) = (alpha_field(), beta_field());
    let window = ExponentWindow::symmetric(p.window);
    let kernel = expand_power(-1, Direction::InW, window);
    let states = fock::basis_up_to(p.degree.min(4));
    let witness = states.par_iter().find_map_first(|m| {
        let v = Vector::basis(m.clone());
        let c = commutator_coefficients(&a, &b, &v, window);
        window.cells().find_map(|(zp, wq)| {
            let lhs = c.get(zp, wq);
            let rhs = v.scaled(&kernel.get(zp, wq));
            (lhs != rhs).then(|| {
                let mut w = Witness::new("counterexample-commutator");
                w.field_a = Some("alpha".into());
                w.field_b = Some("beta".into());
                w.cell = Some(vec![zp, wq]);
                w.vector = Some(m.to_string());
                w.result = labelled(&lhs);
                w.expected = Some(labelled(&rhs));
                w
            })
        })
    });
    let cw = CertifiedWindow {
        degree: Some(p.degree.min(4)),
        z: Some(window.z),
        w: Some(window.w),
        ..CertifiedWindow::default()
    };
    CheckReport::from_search("counterexample-commutator", raw_params(p, None), cw, witness)
}

/// `alpha_(j) beta = 0` and `beta_(j) alpha = delta_{j,0} I` for `0 <= j <= 4`.
fn counterexample_products(p: &SuiteParams) -> CheckReport {
    let (a, b) = (alpha_field(), beta_field());
    let grid = Grid::new(&FockSpace, p.degree, p.window);
    let js: Vec<i64> = (0..=4).collect();
    let witness = js.par_iter().find_map_first(|&j| {
        if let Some(d) = field_nonzero(&nth_product(&a, &b, j), &grid) {
            return Some(d.witness("counterexample-products", "alpha", Some("beta"), Some(j)));
        }
        let expected = if j == 0 { Field::identity() } else { Field::zero() };
        fields_differ(&nth_product(&b, &a, j), &expected, &grid)
            .map(|d| d.witness("counterexample-products", "beta", Some("alpha"), Some(j)))
    });
    let mut window = grid.window();
    window.products = Some(ExpRange::new(0, 4));
    CheckReport::from_search("counterexample-products", raw_params(p, None), window, witness)
}

/// Weak-locality bounds of both orders; `found` is the larger, the note
/// lists each.
fn counterexample_weak_locality(p: &SuiteParams) -> CheckReport {
    let (a, b) = (alpha_field(), beta_field());
    let grid = Grid::new(&FockSpace, p.degree, p.window);
    let mut window = grid.window();
    window.products = Some(ExpRange::new(0, p.n_max));
    let params = raw_params(p, Some(p.n_max));
    let ab = find_weak_locality_bound(&a, &b, &grid, p.n_max);
    let ba = find_weak_locality_bound(&b, &a, &grid, p.n_max);
    match (ab, ba) {
        (Ok(x), Ok(y)) => CheckReport::holds("counterexample-weak-locality", params, window)
            .with_found(Some(x.max(y)))
            .with_note(format!("(alpha, beta): {x}; (beta, alpha): {y}")),
        (Err(d), _) => CheckReport::fails(
            "counterexample-weak-locality",
            params,
            window,
            d.witness("weak-locality", "alpha", Some("beta"), Some(p.n_max)),
        ),
        (_, Err(d)) => CheckReport::fails(
            "counterexample-weak-locality",
            params,
            window,
            d.witness("weak-locality", "beta", Some("alpha"), Some(p.n_max)),
        ),
    }
}

/// The skewsymmetry residual of `(alpha, beta)` at `n = 0`, with the global
/// sign calibrated on `(alpha, alpha)`. Returns the sign and the residual.
pub fn counterexample_residual(p: &SuiteParams) -> (Result<i64, String>, Option<Field<Monomial>>, CheckReport) {
    let (a, b) = (alpha_field(), beta_field());
    let grid = Grid::new(&FockSpace, p.degree, p.window);
    let sign = calibrate_skew_sign(&a, &a, ExpRange::new(0, 2), &grid, p.n_max);
    let Ok(s) = sign else {
        let r = CheckReport::inapplicable(
            "counterexample-skewsymmetry",
            raw_params(p, Some(p.n_max)),
            "sign calibration failed",
        );
        return (sign, None, r);
    };
    let res = skewsymmetry_residual(&a, &b, 0, &grid, p.n_max, s);
    let mut report = res.report;
    report.name = "counterexample-skewsymmetry".to_string();
    report.params = raw_params(p, Some(p.n_max));
    if let Some(r) = &res.residual {
        let which = [(1, "+Id"), (-1, "-Id")]
            .into_iter()
            .find(|(c, _)| fields_differ(r, &scaled(&Field::identity(), arith::q(*c)), &grid).is_none());
        let shape = which.map_or("residual is not a multiple of Id", |(_, s)| s);
        report = report.with_note(format!("skew sign {s:+}; residual = {shape}"));
    }
    (sign, res.residual, report)
}

/// The four checks on the raw pair `alpha`, `beta`.
pub fn counterexample_suite(p: &SuiteParams) -> SuiteReport {
    let jobs: Vec<Job> = vec![
        Box::new(|| counterexample_commutator(p)),
        Box::new(|| counterexample_products(p)),
        Box::new(|| counterexample_weak_locality(p)),
        Box::new(|| counterexample_residual(p).2),
    ];
    SuiteReport::new("counterexample", *p, run(jobs))
}

fn battery<M: StateModel>(fa: &FieldAlgebra<M>, p: &SuiteParams) -> Vec<CheckReport> {
    let jobs: Vec<Job> = vec![
        Box::new(|| check_vacuum(fa, p)),
        Box::new(|| check_translation(fa, p)),
        Box::new(|| check_nth_product_axiom(fa, p, ExpRange::new(-3, 4))),
        Box::new(|| check_weak_locality(fa, p)),
        Box::new(|| check_identity_all(fa, p)),
        Box::new(|| check_associativity_all(fa, p)),
        Box::new(|| check_locality(fa, p, p.n_max)),
        Box::new(|| check_recursion_consistency(fa, p)),
    ];
    let mut out = run(jobs);
    let c2 = classify_skewsymmetry(fa, p);
    out.push(check_conformal_surrogates(fa, p, &c2));
    out.push(c2);
    out
}

/// The full battery on the free-boson algebra.
pub fn free_boson_battery(p: &SuiteParams) -> SuiteReport {
    let fa = free_boson();
    let checks = battery(&fa, p);
    SuiteReport::new("free-boson", *p, checks)
}

/// `X(a)_(-1) b = b a` for every pair of basis elements.
fn opposite_at_zero(fa: &FieldAlgebra<AssocAlgebraModel>, p: &SuiteParams) -> CheckReport {
    let m = fa.model();
    let x = fa.opposite();
    let basis = m.basis().to_vec();
    let witness = basis
        .iter()
        .flat_map(|a| basis.iter().map(move |b| (a, b)))
        .find_map(|(a, b)| {
            let (va, vb) = (Vector::basis(a.clone()), Vector::basis(b.clone()));
            let lhs = x.y(&va).mode(-1, &vb);
            let rhs = m.mul(&vb, &va);
            (lhs != rhs).then(|| {
                let mut w = Witness::new("opposite-at-zero");
                w.field_a = Some(a.to_string());
                w.vector = Some(b.to_string());
                w.mode = Some(-1);
                w.result = labelled(&lhs);
                w.expected = Some(labelled(&rhs));
                w
            })
        });
    let window = CertifiedWindow {
        degree: Some(0),
        modes: Some(ExpRange::new(-1, -1)),
        ..CertifiedWindow::default()
    };
    CheckReport::from_search("opposite-at-zero", p.check_params(fa, None), window, witness)
        .with_note(format!("{} pairs", basis.len() * basis.len()))
}

/// The battery on the 2x2 matrices with `T = ad(E12)`, plus the opposite
/// structure and the commutative diagonal subalgebra's classification.
pub fn holomorphic_battery(p: &SuiteParams) -> SuiteReport {
    let fa = FieldAlgebra::holomorphic(AssocAlgebraModel::matrix_2x2());
    let diag = FieldAlgebra::holomorphic(AssocAlgebraModel::diagonal_2x2());
    let mut checks = battery(&fa, p);
    let x = fa.opposite();
    let jobs: Vec<Job> = vec![
        Box::new(|| opposite_at_zero(&fa, p)),
        Box::new(|| check_partial_vacuum(&x, p)),
        Box::new(|| check_nth_product_axiom(&x, p, ExpRange::new(-3, 4))),
        Box::new(|| classify_skewsymmetry(&diag, p)),
    ];
    checks.extend(run(jobs));
    SuiteReport::new("holomorphic", *p, checks)
}

/// Mutants of the free-boson algebra, each breaking one axiom:
/// `Y(|0>) = 2 I`, `Y(x1) = beta`, and `Y(x1^2)` doubled.
pub fn mutants() -> Vec<FieldAlgebra<FockSpace>> {
    let fa = free_boson();
    let x11 = fock::monomial([1, 1]);
    let doubled = scaled(&fa.y(&x11), arith::q(2)).relabel("2 Y(x1^2)");
    vec![
        fa.with_override(
            "mutant-vacuum",
            fa.vacuum(),
            scaled(&Field::identity(), arith::q(2)).relabel("2 I"),
        ),
        fa.with_override("mutant-translation", fock::monomial([1]), beta_field()),
        fa.with_override("mutant-associativity", x11, doubled),
    ]
}

/// Vacuum, translation covariance, weak locality and associativity.
pub fn axiom_set_a<M: StateModel>(fa: &FieldAlgebra<M>, p: &SuiteParams) -> Vec<CheckReport> {
    let jobs: Vec<Job> = vec![
        Box::new(|| check_vacuum(fa, p)),
        Box::new(|| check_translation(fa, p)),
        Box::new(|| check_weak_locality(fa, p)),
        Box::new(|| check_associativity_all(fa, p)),
    ];
    run(jobs)
}

/// Partial vacuum and the `n`-th product axiom.
pub fn axiom_set_b<M: StateModel>(fa: &FieldAlgebra<M>, p: &SuiteParams) -> Vec<CheckReport> {
    let jobs: Vec<Job> = vec![
        Box::new(|| check_partial_vacuum(fa, p)),
        Box::new(|| check_nth_product_axiom(fa, p, ExpRange::new(-3, 4))),
    ];
    run(jobs)
}

/// Holds iff every member holds; otherwise carries the first failing
/// member's witness and names all failing members in the note.
pub fn set_report<M: StateModel>(
    name: &str,
    fa: &FieldAlgebra<M>,
    p: &SuiteParams,
    members: &[CheckReport],
) -> CheckReport {
    let params = p.check_params(fa, Some(p.n_max));
    let window = p.grid(fa).window();
    let failing: Vec<&CheckReport> = members.iter().filter(|r| !r.is_holds()).collect();
    match failing.first() {
        None => CheckReport::holds(name, params, window)
            .with_note(members.iter().map(|r| r.name.as_str()).collect::<Vec<_>>().join(", ")),
        Some(first) => {
            let names: Vec<String> = failing.iter().map(|r| format!("{} {}", r.name, r.verdict)).collect();
            let witness = first
                .witness
                .clone()
                .unwrap_or_else(|| Witness::new(first.name.clone()));
            CheckReport::fails(name, params, window, witness).with_note(names.join(", "))
        }
    }
}

fn both_sets<M: StateModel>(fa: &FieldAlgebra<M>, p: &SuiteParams) -> Vec<CheckReport> {
    let (a, b) = rayon::join(|| axiom_set_a(fa, p), || axiom_set_b(fa, p));
    vec![
        set_report("axiom-set-a", fa, p, &a),
        set_report("axiom-set-b", fa, p, &b),
    ]
}

/// Both axiom sets on both shipped algebras and on every mutant.
pub fn equivalence_suite(p: &SuiteParams) -> SuiteReport {
    let fb = free_boson();
    let hol = FieldAlgebra::holomorphic(AssocAlgebraModel::matrix_2x2());
    let mut checks = both_sets(&fb, p);
    checks.extend(both_sets(&hol, p));
    let ms = mutants();
    checks.extend(ms.par_iter().flat_map(|m| both_sets(m, p)).collect::<Vec<_>>());
    SuiteReport::new("equivalence", *p, checks)
}

/// The three fields of the weak Dong scenario: `alpha`, `beta`, `:alpha alpha:`.
pub fn dong_fields() -> Vec<Field<Monomial>> {
    let a = alpha_field();
    vec![a.clone(), beta_field(), normal_ordered(&a, &a).relabel(":alpha alpha:")]
}

/// Weak Dong over all 27 ordered triples with products `k` in `{-1, 0, 1}`.
pub fn dong_suite(p: &SuiteParams) -> SuiteReport {
    let fs = dong_fields();
    let grid = Grid::new(&FockSpace, p.degree, p.window);
    let mut triples: Vec<[&Field<Monomial>; 3]> = Vec::new();
    for a in &fs {
        for b in &fs {
            for c in &fs {
                triples.push([a, b, c]);
            }
        }
    }
    let checks = triples
        .par_iter()
        .map(|[a, b, c]| {
            let mut r = dong_weak_check(a, b, c, &[-1, 0, 1], &grid, p.n_max);
            r.params.algebra = Some("raw-fields(alpha, beta, :alpha alpha:)".to_string());
            r.params.depth = None;
            r
        })
        .collect();
    SuiteReport::new("dong", *p, checks)
}

pub const UNIQUENESS_WINDOW: i64 = 3;
pub const UNIQUENESS_N_MAX: i64 = 4;

/// The uniqueness theorem on the free boson: `B = Y(x1)` itself,
/// `count` seeded perturbations `Y(x1) + r z^{-1} P`, and `B = beta`.
/// Locality with `X(a)` is searched on a window of at most
/// [`UNIQUENESS_WINDOW`] with `N <= UNIQUENESS_N_MAX`.
pub fn uniqueness_suite(p: &SuiteParams, seed: u64, count: usize) -> SuiteReport {
    let fa = free_boson();
    let samples = vec![fa.vacuum(), fock::monomial([1]), fock::monomial([2])];
    // the commutator window grows with n_max, and X(a) on high-degree states
    // dominates the cost; N = 3 already suffices for the tautological case
    let (window, n_max) = (p.window.min(UNIQUENESS_WINDOW), p.n_max.min(UNIQUENESS_N_MAX));
    let setup = UniquenessSetup::new(&fa, samples, fa.test_states(p.depth), window, n_max, p.grid(&fa));
    let b = fock::monomial([1]);
    let yb = fa.y(&b);
    let mut candidates = vec![yb.clone(), beta_field()];
    candidates.extend(seeded_perturbations(seed, count).into_iter().map(|pert| {
        let label = format!("Y(x1) + {}", pert.label());
        linear_combination(label, vec![(Q::one(), yb.clone()), (Q::one(), pert)])
    }));
    let checks = candidates
        .par_iter()
        .map(|c| {
            let mut r = uniqueness_check(&setup, c, &b);
            r.params.algebra = Some(fa.name().to_string());
            r.params.depth = Some(p.depth);
            r
        })
        .collect();
    SuiteReport::new("uniqueness", *p, checks)
}

fn raw_field(label: &str) -> Result<Field<Monomial>, super::ProbeError> {
    dong_fields()
        .into_iter()
        .find(|f| f.label() == label)
        .ok_or_else(|| super::ProbeError::BadState(label.to_string()))
}

/// [`super::probe`] for witnesses over the raw fields `alpha`, `beta` and
/// `:alpha alpha:`, which belong to no field algebra. `p` supplies the grid
/// the skewsymmetry residual's bounds are searched on.
pub fn probe_raw(
    w: &Witness,
    p: &SuiteParams,
) -> Result<(crate::report::Labelled, Option<crate::report::Labelled>), super::ProbeError> {
    use super::ProbeError::{BadState, Missing, UnknownCheck};
    let vector = w.vector.as_deref().ok_or(Missing("vector"))?;
    let v = if vector == super::VACUUM_LABEL {
        fock::vacuum()
    } else {
        Vector::basis(crate::vector::Basis::parse_label(vector).ok_or_else(|| BadState(vector.to_string()))?)
    };
    let a = raw_field(w.field_a.as_deref().ok_or(Missing("field_a"))?)?;
    let b = raw_field(w.field_b.as_deref().ok_or(Missing("field_b"))?)?;
    let mode = || w.mode.ok_or(Missing("mode"));
    let n = || w.n.ok_or(Missing("n"));
    let pair = |l: Vector<Monomial>, r: Vector<Monomial>| (labelled(&l), Some(labelled(&r)));
    Ok(match w.check.as_str() {
        "counterexample-commutator" => {
            let cell = w.cell.as_deref().ok_or(Missing("cell"))?;
            let window = ExponentWindow::new(ExpRange::new(cell[0], cell[0]), ExpRange::new(cell[1], cell[1]));
            let c = commutator_coefficients(&a, &b, &v, window).get(cell[0], cell[1]);
            let k = expand_power(-1, Direction::InW, window).get(cell[0], cell[1]);
            pair(c, v.scaled(&k))
        }
        "counterexample-products" | "weak-locality" => {
            let (j, m) = (n()?, mode()?);
            let lhs = nth_product(&a, &b, j).mode(m, &v);
            let identity = w.check == "counterexample-products" && j == 0 && a.label() == "beta";
            let rhs = if identity {
                Field::identity().mode(m, &v)
            } else {
                Vector::zero()
            };
            pair(lhs, rhs)
        }
        "skewsymmetry" => {
            let grid = Grid::new(&FockSpace, p.degree, p.window);
            let alpha = alpha_field();
            let s = calibrate_skew_sign(&alpha, &alpha, ExpRange::new(0, 2), &grid, p.n_max)
                .map_err(|_| Missing("skew sign"))?;
            let res = skewsymmetry_residual(&a, &b, n()?, &grid, p.n_max, s);
            let r = res.residual.ok_or(Missing("weak-locality bound"))?;
            pair(r.mode(mode()?, &v), Vector::zero())
        }
        other => return Err(UnknownCheck(other.to_string())),
    })
}
