use proptest::prelude::*;

use super::*;
use crate::distributions::ExponentWindow;
use crate::field_algebra::{free_boson, AssocAlgebraModel};
use crate::fock::{self, Monomial};
use crate::report::{ExpRange, Verdict, Witness};

fn small() -> SuiteParams {
    SuiteParams {
        degree: 4,
        window: 3,
        n_max: 6,
        depth: 2,
    }
}

fn m(parts: &[u32]) -> Monomial {
    Monomial::new(parts.iter().copied())
}

fn holomorphic() -> FieldAlgebra<AssocAlgebraModel> {
    FieldAlgebra::holomorphic(AssocAlgebraModel::matrix_2x2())
}

/// Re-running the single-point check named by the witness reproduces the
/// recorded values.
fn assert_reproduces<M: StateModel>(fa: &FieldAlgebra<M>, w: &Witness) {
    let (result, expected) = probe(fa, w).unwrap();
    assert_eq!(result, w.result, "{w:?}");
    if let Some(e) = &w.expected {
        assert_eq!(expected.as_ref(), Some(e), "{w:?}");
    }
    assert_ne!(Some(result), expected, "probe should see the failure");
}

#[test]
fn identity_with_correction_on_the_boson() {
    let fa = free_boson();
    let x1 = m(&[1]);
    let r = check_expansion_identity(&fa, &x1, &x1, &x1, &small());
    assert!(r.is_holds(), "{r}");
    assert_eq!(r.note.as_deref(), Some("correction nonzero"));
}

#[test]
fn dropping_the_correction_breaks_the_identity() {
    let fa = free_boson();
    let x1 = fock::monomial([1]);
    let t = expansion_identity_terms(&fa, &x1, &x1, &x1, ExponentWindow::symmetric(3));
    assert!(t.lhs.first_difference(&t.main).is_some());
    assert_eq!(t.lhs.first_difference(&t.main.sub(&t.correction)), None);
}

/// `Res_x x^j Y(a, x)|0> = a_(j)|0> = 0` for `j >= 0`: the correction
/// vanishes on the vacuum.
#[test]
fn correction_vanishes_on_the_vacuum() {
    let fa = free_boson();
    for a in fock::basis_up_to(2) {
        let t = expansion_identity_terms(
            &fa,
            &Vector::basis(a),
            &fock::monomial([1]),
            &fa.vacuum(),
            ExponentWindow::symmetric(3),
        );
        assert_eq!(t.correction.first_nonzero(), None);
        assert_eq!(t.lhs.first_difference(&t.main), None);
    }
}

#[test]
fn associativity_orders() {
    let fa = free_boson();
    let x1 = m(&[1]);
    let r = check_associativity(&fa, &x1, &x1, &x1, 6, &small());
    assert_eq!(r.found, Some(2), "{r}");
    let hol = holomorphic();
    let e = |s: &str| crate::field_algebra::AlgebraBasis::new(s);
    let r = check_associativity(&hol, &e("E12"), &e("E21"), &e("E11"), 6, &small());
    assert_eq!(r.found, Some(0), "{r}");
    let r = check_expansion_identity(&hol, &e("E12"), &e("E21"), &e("E11"), &small());
    assert!(r.is_holds());
    assert_eq!(r.note.as_deref(), Some("correction zero"));
}

#[test]
fn associativity_failure_reproduces() {
    let ms = mutants();
    let fa = ms.iter().find(|f| f.name() == "mutant-associativity").unwrap();
    let x1 = m(&[1]);
    let r = check_associativity(fa, &x1, &x1, &m(&[]), 2, &small());
    assert!(r.is_fails(), "{r}");
    assert_reproduces(fa, r.witness.as_ref().unwrap());
}

#[test]
fn holomorphic_witnesses_reproduce() {
    let fa = holomorphic();
    let p = small();
    let loc = check_locality(&fa, &p, p.n_max);
    assert!(loc.is_fails());
    let w = loc.witness.unwrap();
    let (value, _) = probe(&fa, &w).unwrap();
    assert_eq!(value, w.result);
    assert!(!value.is_empty());

    let skew = classify_skewsymmetry(&fa, &p);
    assert_eq!(skew.note.as_deref(), Some("strict field algebra"));
    let w = skew.witness.unwrap();
    assert_eq!(w.mode, Some(-1));
    assert_reproduces(&fa, &w);
}

#[test]
fn diagonal_algebra_is_vertex() {
    let fa = FieldAlgebra::holomorphic(AssocAlgebraModel::diagonal_2x2());
    assert!(classify_skewsymmetry(&fa, &small()).is_holds());
}

#[test]
fn mutant_witnesses_reproduce() {
    let p = small();
    for fa in mutants() {
        let reports = [
            check_vacuum(&fa, &p),
            check_partial_vacuum(&fa, &p),
            check_translation(&fa, &p),
            check_nth_product_axiom(&fa, &p, ExpRange::new(-2, 2)),
        ];
        assert!(reports.iter().any(CheckReport::is_fails), "{}", fa.name());
        for r in reports.iter().filter(|r| r.is_fails()) {
            assert_reproduces(&fa, r.witness.as_ref().unwrap());
        }
    }
}

#[test]
fn shipped_algebras_pass_both_sets() {
    let p = small();
    let fa = free_boson();
    for set in [axiom_set_a(&fa, &p), axiom_set_b(&fa, &p)] {
        assert!(set.iter().all(CheckReport::is_holds), "{set:?}");
    }
}

#[test]
fn counterexample_witness_reproduces() {
    let p = small();
    let (sign, _, r) = counterexample_residual(&p);
    assert_eq!(sign, Ok(1));
    assert!(r.is_fails());
    let w = r.witness.unwrap();
    let (value, zero) = probe_raw(&w, &p).unwrap();
    assert_eq!(value, w.result);
    assert_eq!(zero, Some(Default::default()));
}

#[test]
fn reports_round_trip_byte_for_byte() {
    let report = counterexample_suite(&small());
    let text = report.to_canonical_json();
    let back: SuiteReport = serde_json::from_str(&text).unwrap();
    assert_eq!(back, report);
    assert_eq!(back.to_canonical_json(), text);
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&value).unwrap(), text);
    assert!(text.contains("\"Nmax\": 6"));
}

#[test]
fn suites_are_deterministic() {
    let p = small();
    assert_eq!(counterexample_suite(&p), counterexample_suite(&p));
    assert_eq!(uniqueness_suite(&p, 5, 4), uniqueness_suite(&p, 5, 4));
}

#[test]
fn uniqueness_never_refutes() {
    let r = uniqueness_suite(&small(), 11, 20);
    let verdicts: Vec<Verdict> = r.checks.iter().map(|c| c.verdict).collect();
    assert!(!verdicts.contains(&Verdict::Fails));
    assert_eq!(verdicts.iter().filter(|v| **v == Verdict::Holds).count(), 1);
}

#[test]
fn probe_rejects_unknown_checks() {
    let fa = free_boson();
    let mut w = Witness::new("nope");
    w.field_a = Some("x1".into());
    w.vector = Some("|0>".into());
    assert_eq!(probe(&fa, &w), Err(ProbeError::UnknownCheck("nope".into())));
    w.check = "vacuum".into();
    w.field_a = Some("x0".into());
    assert!(matches!(probe(&fa, &w), Err(ProbeError::BadState(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Each cell of the expansion identity, recomputed pointwise, balances.
    #[test]
    fn identity_cells_balance(a in 0usize..4, b in 0usize..4, c in 0usize..4, p in -4i64..4, q in -4i64..4) {
        let fa = free_boson();
        let basis = fock::basis_up_to(2);
        let mut w = Witness::new("expansion-identity");
        w.field_a = Some(super::basis_label(&fa, &basis[a]));
        w.field_b = Some(super::basis_label(&fa, &basis[b]));
        w.field_c = Some(super::basis_label(&fa, &basis[c]));
        w.cell = Some(vec![p, q]);
        let (lhs, rhs) = probe(&fa, &w).unwrap();
        prop_assert_eq!(Some(lhs), rhs);
    }
}
