use std::collections::BTreeMap;

use super::{Cell, DistributionError};
use crate::report::ExpRange;

/// A one-variable series with a known exponent range.
///
/// Coefficients below `min_exponent` are zero when `bounded_below` holds
/// (for a field applied to a fixed vector this is the field property);
/// coefficients above `max_known` are not known.
#[derive(Clone, Debug, PartialEq)]
pub struct UnivariateSeries<C: Cell> {
    coeffs: BTreeMap<i64, C>,
    min_exponent: i64,
    max_known: Option<i64>,
    bounded_below: bool,
}

impl<C: Cell> UnivariateSeries<C> {
    /// A series known exactly on `range`. With `complete` set, everything
    /// outside `range` is zero.
    pub fn from_window(range: ExpRange, complete: bool, coeffs: impl IntoIterator<Item = (i64, C)>) -> Self {
        let coeffs = coeffs
            .into_iter()
            .filter(|(e, c)| range.contains(*e) && !c.is_zero())
            .collect();
        Self {
            coeffs,
            min_exponent: range.lo,
            max_known: if complete { None } else { Some(range.hi) },
            bounded_below: complete,
        }
    }

    /// A series that vanishes below `min_exponent` and is known through
    /// `max_known`.
    pub fn bounded(min_exponent: i64, max_known: i64, coeffs: impl IntoIterator<Item = (i64, C)>) -> Self {
        let range = ExpRange::new(min_exponent, max_known);
        let coeffs = coeffs
            .into_iter()
            .filter(|(e, c)| range.contains(*e) && !c.is_zero())
            .collect();
        Self {
            coeffs,
            min_exponent,
            max_known: Some(max_known),
            bounded_below: true,
        }
    }

    pub fn min_exponent(&self) -> i64 {
        self.min_exponent
    }

    pub fn max_known(&self) -> Option<i64> {
        self.max_known
    }

    pub fn is_bounded_below(&self) -> bool {
        self.bounded_below
    }

    pub fn coeff(&self, e: i64) -> Result<C, DistributionError> {
        if self.max_known.is_some_and(|hi| e > hi) || (e < self.min_exponent && !self.bounded_below) {
            return Err(DistributionError::BeyondKnown { exponent: e });
        }
        Ok(self.coeffs.get(&e).cloned().unwrap_or_else(C::zero))
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (&i64, &C)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}
