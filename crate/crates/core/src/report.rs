//! Structured verdicts.
//!
//! A [`CheckReport`] always names the window it certified: "holds" means
//! "holds exactly on that window", and a failure always carries a witness
//! that can be re-evaluated from the serialized report alone.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{self, Q};
use crate::vector::{Basis, Vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Fails,
    Inapplicable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::Inapplicable => "inapplicable",
        })
    }
}

/// Inclusive integer range `[lo, hi]`; serialized as a two-element array.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "[i64; 2]", into = "[i64; 2]")]
pub struct ExpRange {
    pub lo: i64,
    pub hi: i64,
}

impl ExpRange {
    pub fn new(lo: i64, hi: i64) -> Self {
        Self { lo, hi }
    }

    pub fn symmetric(r: i64) -> Self {
        Self::new(-r, r)
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    pub fn contains(&self, x: i64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn iter(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi
    }

    pub fn intersect(&self, other: &Self) -> Self {
        Self::new(self.lo.max(other.lo), self.hi.min(other.hi))
    }
}

impl From<[i64; 2]> for ExpRange {
    fn from([lo, hi]: [i64; 2]) -> Self {
        Self { lo, hi }
    }
}

impl From<ExpRange> for [i64; 2] {
    fn from(r: ExpRange) -> Self {
        [r.lo, r.hi]
    }
}

/// Run parameters a verdict was established under.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree_cap: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode_window: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_max: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub depth: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub algebra: Option<String>,
}

/// The region a verdict is certified on. Mode-grid checks fill `degree` and
/// `modes`; coefficient-array checks fill the exponent ranges.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertifiedWindow {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub modes: Option<ExpRange>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub products: Option<ExpRange>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z: Option<ExpRange>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w: Option<ExpRange>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<ExpRange>,
}

impl CertifiedWindow {
    pub fn grid(degree: usize, modes: ExpRange) -> Self {
        Self {
            degree: Some(degree),
            modes: Some(modes),
            ..Self::default()
        }
    }

    pub fn is_empty(&self) -> bool {
        let ranges = [self.modes, self.products, self.z, self.w, self.x];
        ranges.iter().flatten().any(ExpRange::is_empty) || (self.degree.is_none() && ranges.iter().all(Option::is_none))
    }
}

/// Labelled value: basis label to `"num/den"`. Scalars use the label `"1"`.
pub type Labelled = BTreeMap<String, String>;

pub fn labelled_scalar(x: &Q) -> Labelled {
    let mut out = Labelled::new();
    if !num_traits::Zero::is_zero(x) {
        out.insert("1".into(), arith::render(x));
    }
    out
}

pub fn labelled<B: Basis>(v: &Vector<B>) -> Labelled {
    v.to_labels()
}

/// A single failing grid point, complete enough to be recomputed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub check: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field_a: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field_b: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field_c: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cell: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vector: Option<String>,
    pub result: Labelled,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<Labelled>,
}

impl Witness {
    pub fn new(check: impl Into<String>) -> Self {
        Self {
            check: check.into(),
            ..Self::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub params: CheckParams,
    pub verdict: Verdict,
    pub window: CertifiedWindow,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    /// Least index found by a bound search (weak locality, associativity).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub found: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckReport {
    pub fn holds(name: impl Into<String>, params: CheckParams, window: CertifiedWindow) -> Self {
        assert!(!window.is_empty(), "a holding verdict needs a nonempty window");
        Self {
            name: name.into(),
            params,
            verdict: Verdict::Holds,
            window,
            witness: None,
            found: None,
            note: None,
        }
    }

    pub fn fails(name: impl Into<String>, params: CheckParams, window: CertifiedWindow, witness: Witness) -> Self {
        Self {
            name: name.into(),
            params,
            verdict: Verdict::Fails,
            window,
            witness: Some(witness),
            found: None,
            note: None,
        }
    }

    pub fn inapplicable(name: impl Into<String>, params: CheckParams, reason: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            params,
            verdict: Verdict::Inapplicable,
            window: CertifiedWindow::default(),
            witness: None,
            found: None,
            note: Some(reason.into()),
        }
    }

    /// Holds if `witness` is `None`, fails with it otherwise.
    pub fn from_search(
        name: impl Into<String>,
        params: CheckParams,
        window: CertifiedWindow,
        witness: Option<Witness>,
    ) -> Self {
        match witness {
            None => Self::holds(name, params, window),
            Some(w) => Self::fails(name, params, window, w),
        }
    }

    pub fn with_found(mut self, found: Option<i64>) -> Self {
        self.found = found;
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn is_holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }

    pub fn is_fails(&self) -> bool {
        self.verdict == Verdict::Fails
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<40} {}", self.name, self.verdict)?;
        if let Some(n) = self.found {
            write!(f, " (N = {n})")?;
        }
        if let Some(note) = &self.note {
            write!(f, " [{note}]")?;
        }
        if let Some(w) = &self.witness {
            write!(f, "\n    witness: {}", serde_json::to_string(w).unwrap_or_default())?;
        }
        Ok(())
    }
}
