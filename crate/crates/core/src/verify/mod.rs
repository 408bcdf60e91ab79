//! Axiom and identity checks over a [`FieldAlgebra`], producing
//! [`CheckReport`]s, plus the canned suites the CLI runs.
//!
//! Every failure witness names states by basis label (`"|0>"` is the
//! vacuum of any model) so that [`probe`] can recompute the failing point
//! from the witness alone.

mod axioms;
mod identity;
mod suites;

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field_algebra::FieldAlgebra;
use crate::fields::Grid;
use crate::report::{CheckParams, CheckReport, Labelled};
use crate::state::StateModel;
use crate::vector::{Basis, Vector};

pub use axioms::{
    check_conformal_surrogates, check_locality, check_nth_product_axiom, check_partial_vacuum,
    check_recursion_consistency, check_translation, check_vacuum, check_weak_locality, classify_skewsymmetry,
};
pub use identity::{
    associativity_sides, check_associativity, check_associativity_all, check_expansion_identity, check_identity_all,
    expansion_identity_terms, IdentityTerms,
};
pub use suites::{
    axiom_set_a, axiom_set_b, counterexample_residual, counterexample_suite, dong_fields, dong_suite,
    equivalence_suite, free_boson_battery, holomorphic_battery, mutants, probe_raw, set_report, uniqueness_suite,
    UNIQUENESS_N_MAX, UNIQUENESS_WINDOW,
};

/// Grid scale shared by a suite. Defaults: `D = 6`, `W = 4`, `N_max = 8`,
/// depth 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteParams {
    #[serde(rename = "D")]
    pub degree: usize,
    #[serde(rename = "W")]
    pub window: i64,
    #[serde(rename = "Nmax")]
    pub n_max: i64,
    pub depth: usize,
}

impl Default for SuiteParams {
    fn default() -> Self {
        Self {
            degree: 6,
            window: 4,
            n_max: 8,
            depth: 3,
        }
    }
}

impl SuiteParams {
    pub fn grid<M: StateModel>(&self, fa: &FieldAlgebra<M>) -> Grid<M::Basis> {
        fa.grid(self.degree, self.window)
    }

    pub fn check_params<M: StateModel>(&self, fa: &FieldAlgebra<M>, n_max: Option<i64>) -> CheckParams {
        CheckParams {
            degree_cap: Some(self.degree),
            mode_window: Some(self.window),
            n_max,
            depth: Some(self.depth),
            algebra: Some(fa.name().to_string()),
        }
    }

    /// States used as the first two arguments of triple identities.
    pub fn triple_depth(&self) -> usize {
        self.depth.min(2)
    }
}

/// `{suite, params: {D, W, Nmax, depth}, checks, exact: true}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub params: SuiteParams,
    pub checks: Vec<CheckReport>,
    pub exact: bool,
}

impl SuiteReport {
    /// Sorts `checks` by name, then by serialized parameters.
    pub fn new(suite: impl Into<String>, params: SuiteParams, mut checks: Vec<CheckReport>) -> Self {
        checks.sort_by(compare_checks);
        Self {
            suite: suite.into(),
            params,
            checks,
            exact: true,
        }
    }

    /// Canonical JSON: object keys sorted, two-space indentation.
    pub fn to_canonical_json(&self) -> String {
        let value = serde_json::to_value(self).expect("reports serialize");
        serde_json::to_string_pretty(&value).expect("values serialize")
    }
}

fn compare_checks(a: &CheckReport, b: &CheckReport) -> Ordering {
    let key = |c: &CheckReport| serde_json::to_string(&c.params).unwrap_or_default();
    a.name.cmp(&b.name).then_with(|| key(a).cmp(&key(b)))
}

pub(crate) const VACUUM_LABEL: &str = "|0>";

pub(crate) fn state_label<M: StateModel>(fa: &FieldAlgebra<M>, v: &Vector<M::Basis>) -> String {
    if *v == fa.vacuum() {
        VACUUM_LABEL.to_string()
    } else {
        v.to_string()
    }
}

pub(crate) fn basis_label<M: StateModel>(fa: &FieldAlgebra<M>, b: &M::Basis) -> String {
    state_label(fa, &Vector::basis(b.clone()))
}

#[derive(Debug, Error, PartialEq)]
pub enum ProbeError {
    #[error("witness lacks `{0}`")]
    Missing(&'static str),
    #[error("cannot parse state `{0}`")]
    BadState(String),
    #[error("no probe for check `{0}`")]
    UnknownCheck(String),
}

pub(crate) fn parse_state<M: StateModel>(fa: &FieldAlgebra<M>, s: &str) -> Result<Vector<M::Basis>, ProbeError> {
    if s == VACUUM_LABEL {
        return Ok(fa.vacuum());
    }
    M::Basis::parse_label(s)
        .map(Vector::basis)
        .ok_or_else(|| ProbeError::BadState(s.to_string()))
}

/// Recomputes `(result, expected)` at the point a witness names.
pub fn probe<M: StateModel>(
    fa: &FieldAlgebra<M>,
    w: &crate::report::Witness,
) -> Result<(Labelled, Option<Labelled>), ProbeError> {
    match w.check.as_str() {
        "associativity" | "expansion-identity" => identity::probe(fa, w),
        _ => axioms::probe(fa, w),
    }
}

#[cfg(test)]
mod tests;
