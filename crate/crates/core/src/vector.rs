//! Finite linear combinations over a basis with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};

use crate::arith::{self, Q};

/// A basis label of a state model.
///
/// Labels must round-trip through [`fmt::Display`] and [`Basis::parse_label`]
/// so that failure witnesses can be re-evaluated from a JSON report.
pub trait Basis: Clone + Ord + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn parse_label(s: &str) -> Option<Self>;
}

impl Basis for usize {
    fn parse_label(s: &str) -> Option<Self> {
        s.parse().ok()
    }
}

/// Canonical form: no stored zero coefficients, keys in basis order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Vector<B: Basis> {
    terms: BTreeMap<B, Q>,
}

impl<B: Basis> Default for Vector<B> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<B: Basis> Vector<B> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn basis(b: B) -> Self {
        Self::term(b, Q::one())
    }

    pub fn term(b: B, c: Q) -> Self {
        let mut v = Self::zero();
        v.add_term(b, c);
        v
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (B, Q)>) -> Self {
        let mut v = Self::zero();
        for (b, c) in terms {
            v.add_term(b, c);
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, b: &B) -> Q {
        self.terms.get(b).cloned().unwrap_or_else(Q::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&B, &Q)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl DoubleEndedIterator<Item = &B> {
        self.terms.keys()
    }

    /// The single basis element this vector is a unit multiple of, if any.
    pub fn as_basis(&self) -> Option<&B> {
        match self.terms.iter().next() {
            Some((b, c)) if self.terms.len() == 1 && c.is_one() => Some(b),
            _ => None,
        }
    }

    pub fn add_term(&mut self, b: B, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(b) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, c: &Q, other: &Self) {
        if c.is_zero() {
            return;
        }
        for (b, x) in &other.terms {
            self.add_term(b.clone(), c * x);
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (b, x) in &other.terms {
            self.add_term(b.clone(), x.clone());
        }
    }

    pub fn scaled(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(b, x)| (b.clone(), x * c)).collect(),
        }
    }

    /// Extends a map on basis elements linearly.
    pub fn map_linear<C: Basis>(&self, mut f: impl FnMut(&B) -> Vector<C>) -> Vector<C> {
        let mut out = Vector::zero();
        for (b, c) in &self.terms {
            out.add_scaled(c, &f(b));
        }
        out
    }

    /// Labels with `"num/den"` coefficients, the JSON form used in reports.
    pub fn to_labels(&self) -> BTreeMap<String, String> {
        self.terms
            .iter()
            .map(|(b, c)| (b.to_string(), arith::render(c)))
            .collect()
    }

    pub fn from_labels(labels: &BTreeMap<String, String>) -> Option<Self> {
        let mut v = Self::zero();
        for (b, c) in labels {
            v.add_term(B::parse_label(b)?, arith::parse(c)?);
        }
        Some(v)
    }
}

impl<B: Basis> fmt::Display for Vector<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (b, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "{b}")?;
            } else {
                write!(f, "({})*{b}", arith::pretty(c))?;
            }
        }
        Ok(())
    }
}

impl<B: Basis> fmt::Debug for Vector<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<B: Basis> Add for &Vector<B> {
    type Output = Vector<B>;
    fn add(self, rhs: Self) -> Vector<B> {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }
}

impl<B: Basis> Sub for &Vector<B> {
    type Output = Vector<B>;
    fn sub(self, rhs: Self) -> Vector<B> {
        let mut out = self.clone();
        out.add_scaled(&-Q::one(), rhs);
        out
    }
}

impl<B: Basis> Neg for &Vector<B> {
    type Output = Vector<B>;
    fn neg(self) -> Vector<B> {
        self.scaled(&-Q::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::q;

    #[test]
    fn cancellation_leaves_no_zero_entries() {
        let mut v = Vector::term(3usize, q(2));
        v.add_term(3, q(-2));
        assert!(v.is_zero());
        assert_eq!(v, Vector::zero());
    }

    #[test]
    fn labels_round_trip() {
        let v = Vector::from_terms([(1usize, q(3)), (4, crate::arith::q_frac(-1, 2))]);
        assert_eq!(Vector::from_labels(&v.to_labels()), Some(v));
    }
}
