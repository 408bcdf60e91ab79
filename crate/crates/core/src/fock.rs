//! Free-boson Fock space: polynomials in `x1, x2, ...` with the Heisenberg
//! modes `alpha_n` acting by multiplication (`n < 0`) and differentiation
//! (`n > 0`).
//!
//! The monomial `x_{n1} ... x_{nk}` is `alpha_{-n1} ... alpha_{-nk}|0>`, so
//! a basis state is a partition and its degree is the partition's weight.

use std::fmt;

use crate::arith::q;
use crate::state::StateModel;
use crate::vector::{Basis, Vector};

/// A partition, stored with parts sorted descending. The empty partition is
/// the vacuum.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial {
    parts: Vec<u32>,
}

impl Monomial {
    pub fn vacuum() -> Self {
        Self::default()
    }

    /// Parts in any order; zeros are rejected.
    pub fn new(parts: impl IntoIterator<Item = u32>) -> Self {
        let mut parts: Vec<u32> = parts.into_iter().collect();
        assert!(parts.iter().all(|&p| p >= 1), "monomial parts must be positive");
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn degree(&self) -> usize {
        self.parts.iter().map(|&p| p as usize).sum()
    }

    pub fn is_vacuum(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn multiplicity(&self, part: u32) -> usize {
        self.parts.iter().filter(|&&p| p == part).count()
    }

    fn with_part(&self, part: u32) -> Self {
        let at = self.parts.partition_point(|&p| p > part);
        let mut parts = self.parts.clone();
        parts.insert(at, part);
        Self { parts }
    }

    fn without_one(&self, part: u32) -> Option<Self> {
        let at = self.parts.iter().position(|&p| p == part)?;
        let mut parts = self.parts.clone();
        parts.remove(at);
        Some(Self { parts })
    }

    /// Exponent vector `(part, multiplicity)` in increasing part order.
    fn exponents(&self) -> Vec<(u32, usize)> {
        let mut out: Vec<(u32, usize)> = Vec::new();
        for &p in self.parts.iter().rev() {
            match out.last_mut() {
                Some((last, k)) if *last == p => *k += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "|0>");
        }
        for (i, (p, k)) in self.exponents().into_iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if k == 1 {
                write!(f, "x{p}")?;
            } else {
                write!(f, "x{p}^{k}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Basis for Monomial {
    fn parse_label(s: &str) -> Option<Self> {
        let s = s.trim();
        if s == "|0>" {
            return Some(Self::vacuum());
        }
        let mut parts = Vec::new();
        for factor in s.split_whitespace() {
            let rest = factor.strip_prefix('x')?;
            let (part, power) = match rest.split_once('^') {
                Some((p, k)) => (p.parse::<u32>().ok()?, k.parse::<usize>().ok()?),
                None => (rest.parse::<u32>().ok()?, 1),
            };
            if part == 0 || power == 0 {
                return None;
            }
            parts.extend(std::iter::repeat_n(part, power));
        }
        if parts.is_empty() {
            return None;
        }
        Some(Self::new(parts))
    }
}

pub type FockVector = Vector<Monomial>;

pub fn vacuum() -> FockVector {
    Vector::basis(Monomial::vacuum())
}

pub fn monomial(parts: impl IntoIterator<Item = u32>) -> FockVector {
    Vector::basis(Monomial::new(parts))
}

/// `alpha_n` on a single monomial.
pub fn alpha_mode_basis(n: i64, m: &Monomial) -> FockVector {
    match n {
        0 => Vector::zero(),
        n if n < 0 => Vector::basis(m.with_part((-n) as u32)),
        n => {
            let part = n as u32;
            let k = m.multiplicity(part);
            match m.without_one(part) {
                Some(rest) => Vector::term(rest, q(n * k as i64)),
                None => Vector::zero(),
            }
        }
    }
}

/// The Heisenberg mode `alpha_n` with `[alpha_m, alpha_n] = m delta_{m,-n}`.
pub fn alpha_mode(n: i64, v: &FockVector) -> FockVector {
    v.map_linear(|m| alpha_mode_basis(n, m))
}

/// `T` on a monomial: the derivation fixed by `T|0> = 0` and
/// `[T, alpha_{-n}] = n alpha_{-n-1}`.
pub fn translate_basis(m: &Monomial) -> FockVector {
    let mut out = Vector::zero();
    for (part, k) in m.exponents() {
        let lowered = m.without_one(part).expect("part present");
        let raised = lowered.with_part(part + 1);
        out.add_term(raised, q(part as i64 * k as i64));
    }
    out
}

pub fn translate(v: &FockVector) -> FockVector {
    v.map_linear(translate_basis)
}

/// Partitions of exactly `weight`, largest first part first.
pub fn partitions(weight: usize) -> Vec<Monomial> {
    fn go(remaining: u32, max_part: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if remaining == 0 {
            out.push(Monomial { parts: prefix.clone() });
            return;
        }
        for p in (1..=remaining.min(max_part)).rev() {
            prefix.push(p);
            go(remaining - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(weight as u32, weight as u32, &mut Vec::new(), &mut out);
    out
}

/// Every partition of weight `0..=d`, ordered by weight.
pub fn basis_up_to(d: usize) -> Vec<Monomial> {
    (0..=d).flat_map(partitions).collect()
}

/// The free-boson Fock space as a [`StateModel`].
#[derive(Clone, Copy, Debug, Default)]
pub struct FockSpace;

impl StateModel for FockSpace {
    type Basis = Monomial;

    fn name(&self) -> &str {
        "free-boson"
    }

    fn vacuum(&self) -> FockVector {
        vacuum()
    }

    fn translate_basis(&self, b: &Monomial) -> FockVector {
        translate_basis(b)
    }

    fn basis_up_to(&self, d: usize) -> Vec<Monomial> {
        basis_up_to(d)
    }

    fn degree(&self, b: &Monomial) -> usize {
        b.degree()
    }
}

/// Degree of a homogeneous vector, `None` for zero or mixed degree.
pub fn homogeneous_degree(v: &FockVector) -> Option<usize> {
    let mut degrees = v.support().map(Monomial::degree);
    let first = degrees.next()?;
    degrees.all(|d| d == first).then_some(first)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Euler's pentagonal recurrence, independent of the enumeration.
    fn partition_numbers(upto: usize) -> Vec<i64> {
        let mut p = vec![0i64; upto + 1];
        p[0] = 1;
        for n in 1..=upto as i64 {
            let mut total = 0;
            for k in 1.. {
                let g1 = k * (3 * k - 1) / 2;
                if g1 > n {
                    break;
                }
                let s = if k % 2 == 1 { 1 } else { -1 };
                total += s * p[(n - g1) as usize];
                let g2 = k * (3 * k + 1) / 2;
                if g2 <= n {
                    total += s * p[(n - g2) as usize];
                }
            }
            p[n as usize] = total;
        }
        p
    }

    #[test]
    fn creation_on_vacuum() {
        assert_eq!(alpha_mode(-2, &vacuum()), monomial([2]));
    }

    #[test]
    fn annihilation_differentiates() {
        assert_eq!(alpha_mode(2, &monomial([2])), vacuum().scaled(&q(2)));
        assert!(alpha_mode(1, &monomial([2])).is_zero());
        // 3 * d/dx3 (x3^2 x1) = 6 x3 x1
        assert_eq!(alpha_mode(3, &monomial([3, 3, 1])), monomial([3, 1]).scaled(&q(6)));
    }

    #[test]
    fn zero_mode_vanishes() {
        assert!(alpha_mode(0, &monomial([1, 1])).is_zero());
    }

    #[test]
    fn translation_examples() {
        assert!(translate(&vacuum()).is_zero());
        assert_eq!(translate(&monomial([1])), monomial([2]));
        assert_eq!(translate(&monomial([1, 1])), monomial([2, 1]).scaled(&q(2)));
    }

    /// `T` against the commutator expansion `T a_{-n1}...a_{-nk}|0> =
    /// sum_i a_{-n1} ... [T, a_{-ni}] ... |0>`.
    #[test]
    fn translation_matches_commutator_expansion() {
        for m in basis_up_to(7) {
            let parts = m.parts().to_vec();
            let mut expected = Vector::zero();
            for i in 0..parts.len() {
                let mut state = vacuum();
                for (j, &p) in parts.iter().enumerate().rev() {
                    state = if i == j {
                        alpha_mode(-(p as i64) - 1, &state).scaled(&q(p as i64))
                    } else {
                        alpha_mode(-(p as i64), &state)
                    };
                }
                expected.add_assign(&state);
            }
            assert_eq!(translate_basis(&m), expected, "T on {m}");
        }
    }

    #[test]
    fn basis_examples() {
        assert_eq!(basis_up_to(0), vec![Monomial::vacuum()]);
        let two: Vec<String> = basis_up_to(2).iter().map(|m| m.to_string()).collect();
        assert_eq!(two, ["|0>", "x1", "x2", "x1^2"]);
        assert_eq!(basis_up_to(4).len(), 12);
    }

    #[test]
    fn basis_sizes_are_partition_numbers() {
        let p = partition_numbers(12);
        for (d, &count) in p.iter().enumerate() {
            assert_eq!(partitions(d).len() as i64, count, "p({d})");
            let mut all = partitions(d);
            all.dedup();
            assert_eq!(all.len() as i64, count);
            assert!(all.iter().all(|m| m.degree() == d));
        }
    }

    #[test]
    fn labels_round_trip() {
        for m in basis_up_to(6) {
            assert_eq!(Monomial::parse_label(&m.to_string()), Some(m.clone()));
        }
        assert_eq!(Monomial::new([3, 1, 1]).to_string(), "x1^2 x3");
        assert_eq!(Monomial::parse_label("x0"), None);
    }

    proptest! {
        #[test]
        fn heisenberg_relations(m in -6i64..=6, n in -6i64..=6, idx in 0usize..30) {
            let v = basis_vector(idx);
            let lhs = &alpha_mode(m, &alpha_mode(n, &v)) - &alpha_mode(n, &alpha_mode(m, &v));
            let rhs = if m == -n { v.scaled(&q(m)) } else { Vector::zero() };
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn annihilation_bound(idx in 0usize..30, extra in 1i64..6) {
            let v = basis_vector(idx);
            let n = homogeneous_degree(&v).unwrap() as i64 + extra;
            prop_assert!(alpha_mode(n, &v).is_zero());
        }

        #[test]
        fn translation_raises_degree_by_one(idx in 0usize..30, c in -5i64..5, idx2 in 0usize..30) {
            let v = basis_vector(idx);
            let w = basis_vector(idx2);
            if let Some(d) = homogeneous_degree(&translate(&v)) {
                prop_assert_eq!(d, homogeneous_degree(&v).unwrap() + 1);
            }
            let lin = translate(&(&v.scaled(&q(c)) + &w));
            prop_assert_eq!(lin, &translate(&v).scaled(&q(c)) + &translate(&w));
        }
    }

    fn basis_vector(idx: usize) -> FockVector {
        Vector::basis(basis_up_to(6)[idx].clone())
    }
}
