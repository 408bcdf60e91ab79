//! Finite-dimensional unital associative algebras with a derivation, and the
//! holomorphic field algebra `Y(a, z) b = e^{zT}(a) b` they define.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_traits::One;
use thiserror::Error;

use super::FieldAlgebra;
use crate::arith::{self, Q};
use crate::fields::Field;
use crate::state::{Parity, StateModel};
use crate::vector::{Basis, Vector};

/// A named basis element; ordered by name.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgebraBasis(Arc<str>);

impl AlgebraBasis {
    pub fn new(name: &str) -> Self {
        Self(Arc::from(name))
    }
}

impl fmt::Display for AlgebraBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Basis for AlgebraBasis {
    fn parse_label(s: &str) -> Option<Self> {
        (!s.is_empty()).then(|| Self::new(s))
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum AlgebraError {
    #[error("({0} {1}) {2} != {0} ({1} {2})")]
    NotAssociative(String, String, String),
    #[error("unit law fails on {0}")]
    NotUnital(String),
    #[error("T fails the Leibniz rule on ({0}, {1})")]
    NotDerivation(String, String),
    #[error("T does not kill the unit")]
    UnitNotKilled,
    #[error("unknown basis element {0}")]
    UnknownBasis(String),
}

type AlgVector = Vector<AlgebraBasis>;

/// Structure constants `e_i e_j`, unit and derivation `T`, all exact.
#[derive(Clone, Debug)]
pub struct AssocAlgebraModel {
    name: String,
    basis: Vec<AlgebraBasis>,
    index: HashMap<AlgebraBasis, usize>,
    products: Vec<Vec<AlgVector>>,
    unit: AlgVector,
    derivation: Vec<AlgVector>,
}

impl AssocAlgebraModel {
    /// Validates associativity, the unit laws, `T(1) = 0` and the Leibniz
    /// rule on all basis pairs.
    pub fn new(
        name: impl Into<String>,
        basis: Vec<AlgebraBasis>,
        products: Vec<Vec<AlgVector>>,
        unit: AlgVector,
        derivation: Vec<AlgVector>,
    ) -> Result<Self, AlgebraError> {
        let index = basis.iter().cloned().enumerate().map(|(i, b)| (b, i)).collect();
        let model = Self {
            name: name.into(),
            basis,
            index,
            products,
            unit,
            derivation,
        };
        model.validate()?;
        Ok(model)
    }

    fn validate(&self) -> Result<(), AlgebraError> {
        let all: Vec<AlgVector> = self.basis.iter().map(|b| Vector::basis(b.clone())).collect();
        for v in [&self.unit]
            .into_iter()
            .chain(self.derivation.iter())
            .chain(self.products.iter().flatten())
        {
            if let Some(b) = v.support().find(|b| !self.index.contains_key(*b)) {
                return Err(AlgebraError::UnknownBasis(b.to_string()));
            }
        }
        for (b, e) in self.basis.iter().zip(&all) {
            if self.mul(&self.unit, e) != *e || self.mul(e, &self.unit) != *e {
                return Err(AlgebraError::NotUnital(b.to_string()));
            }
        }
        for (x, ex) in self.basis.iter().zip(&all) {
            for (y, ey) in self.basis.iter().zip(&all) {
                for (z, ez) in self.basis.iter().zip(&all) {
                    if self.mul(&self.mul(ex, ey), ez) != self.mul(ex, &self.mul(ey, ez)) {
                        return Err(AlgebraError::NotAssociative(
                            x.to_string(),
                            y.to_string(),
                            z.to_string(),
                        ));
                    }
                }
                let lhs = self.derive(&self.mul(ex, ey));
                let rhs = &self.mul(&self.derive(ex), ey) + &self.mul(ex, &self.derive(ey));
                if lhs != rhs {
                    return Err(AlgebraError::NotDerivation(x.to_string(), y.to_string()));
                }
            }
        }
        if !self.derive(&self.unit).is_zero() {
            return Err(AlgebraError::UnitNotKilled);
        }
        Ok(())
    }

    pub fn mul(&self, x: &AlgVector, y: &AlgVector) -> AlgVector {
        let mut out = Vector::zero();
        for (a, ca) in x.iter() {
            for (b, cb) in y.iter() {
                out.add_scaled(&(ca * cb), &self.products[self.index[a]][self.index[b]]);
            }
        }
        out
    }

    pub fn derive(&self, x: &AlgVector) -> AlgVector {
        x.map_linear(|b| self.derivation[self.index[b]].clone())
    }

    pub fn unit(&self) -> AlgVector {
        self.unit.clone()
    }

    pub fn basis(&self) -> &[AlgebraBasis] {
        &self.basis
    }

    pub fn element(&self, name: &str) -> AlgVector {
        Vector::basis(AlgebraBasis::new(name))
    }

    /// `M_2(Q)` with matrix units `E11, E12, E21, E22` and `T = ad(E12)`,
    /// which is nilpotent with `T^3 = 0`.
    pub fn matrix_2x2() -> Self {
        let names = ["E11", "E12", "E21", "E22"];
        let basis: Vec<AlgebraBasis> = names.iter().map(|n| AlgebraBasis::new(n)).collect();
        let unit_of = |i: usize, j: usize| Vector::basis(basis[2 * i + j].clone());
        let mut products = vec![vec![Vector::zero(); 4]; 4];
        for (x, row) in products.iter_mut().enumerate() {
            for (y, cell) in row.iter_mut().enumerate() {
                let ((i, j), (k, l)) = ((x / 2, x % 2), (y / 2, y % 2));
                if j == k {
                    *cell = unit_of(i, l);
                }
            }
        }
        let unit = &unit_of(0, 0) + &unit_of(1, 1);
        let zero = vec![Vector::zero(); 4];
        let base = Self::new("matrix-2x2", basis.clone(), products.clone(), unit.clone(), zero).expect("matrix units");
        let e12 = unit_of(0, 1);
        let derivation = (0..4)
            .map(|x| {
                let e = unit_of(x / 2, x % 2);
                &base.mul(&e12, &e) - &base.mul(&e, &e12)
            })
            .collect();
        Self::new("matrix-2x2", basis, products, unit, derivation).expect("ad(E12) is a derivation")
    }

    /// Diagonal `2 x 2` matrices with `T = 0`: commutative.
    pub fn diagonal_2x2() -> Self {
        let basis = vec![AlgebraBasis::new("E11"), AlgebraBasis::new("E22")];
        let e = |i: usize| Vector::basis(basis[i].clone());
        let products = vec![vec![e(0), Vector::zero()], vec![Vector::zero(), e(1)]];
        let unit = &e(0) + &e(1);
        Self::new(
            "diagonal-2x2",
            basis.clone(),
            products,
            unit,
            vec![Vector::zero(), Vector::zero()],
        )
        .expect("diagonal algebra is valid")
    }
}

impl StateModel for AssocAlgebraModel {
    type Basis = AlgebraBasis;

    fn name(&self) -> &str {
        &self.name
    }

    fn vacuum(&self) -> AlgVector {
        self.unit.clone()
    }

    fn translate_basis(&self, b: &AlgebraBasis) -> AlgVector {
        self.derivation[self.index[b]].clone()
    }

    fn basis_up_to(&self, _d: usize) -> Vec<AlgebraBasis> {
        self.basis.clone()
    }

    fn degree(&self, _b: &AlgebraBasis) -> usize {
        0
    }

    fn parity_of(&self, _b: &AlgebraBasis) -> Parity {
        Parity::Even
    }
}

impl FieldAlgebra<AssocAlgebraModel> {
    /// `Y(a, z) b = e^{zT}(a) b`: `a_(-j-1) b = (T^j a / j!) b`, and every
    /// mode `n >= 0` vanishes.
    pub fn holomorphic(model: AssocAlgebraModel) -> Self {
        let name = format!("holomorphic({})", model.name);
        let model = Arc::new(model);
        let m = Arc::clone(&model);
        FieldAlgebra::direct(name, model, move |a: &AlgebraBasis| {
            let m = Arc::clone(&m);
            let a = Vector::basis(a.clone());
            let label = a.to_string();
            Field::new(
                label,
                Parity::Even,
                move |n, c: &AlgebraBasis| {
                    let j = -n - 1;
                    let mut t = a.clone();
                    for _ in 0..j {
                        t = m.derive(&t);
                        if t.is_zero() {
                            return Vector::zero();
                        }
                    }
                    let t = t.scaled(&(Q::one() / arith::factorial(j as u32)));
                    m.mul(&t, &Vector::basis(c.clone()))
                },
                |_| 0,
            )
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::q;

    #[test]
    fn matrix_units_multiply() {
        let m = AssocAlgebraModel::matrix_2x2();
        assert_eq!(m.mul(&m.element("E12"), &m.element("E21")), m.element("E11"));
        assert_eq!(m.mul(&m.element("E21"), &m.element("E12")), m.element("E22"));
        assert!(m.mul(&m.element("E12"), &m.element("E12")).is_zero());
    }

    #[test]
    fn ad_e12_is_nilpotent() {
        let m = AssocAlgebraModel::matrix_2x2();
        let e21 = m.element("E21");
        let t1 = m.derive(&e21);
        assert_eq!(t1, &m.element("E11") - &m.element("E22"));
        assert_eq!(m.derive(&t1), m.element("E12").scaled(&q(-2)));
        assert!(m.derive(&m.derive(&t1)).is_zero());
    }

    #[test]
    fn rejects_a_non_derivation() {
        let m = AssocAlgebraModel::diagonal_2x2();
        let e = |n: &str| Vector::basis(AlgebraBasis::new(n));
        let bad = vec![e("E11"), Vector::zero()];
        let r = AssocAlgebraModel::new("bad", m.basis.clone(), m.products.clone(), m.unit(), bad);
        assert!(matches!(r, Err(AlgebraError::NotDerivation(..))));
    }

    #[test]
    fn rejects_a_non_associative_table() {
        let m = AssocAlgebraModel::diagonal_2x2();
        let mut products = m.products.clone();
        products[0][0] = Vector::basis(AlgebraBasis::new("E11")).scaled(&q(2));
        let r = AssocAlgebraModel::new("bad", m.basis.clone(), products, m.unit(), m.derivation.clone());
        assert!(r.is_err());
    }

    #[test]
    fn holomorphic_field_on_unit_is_exponential() {
        let m = AssocAlgebraModel::matrix_2x2();
        let fa = FieldAlgebra::holomorphic(m.clone());
        let y = fa.y(&m.element("E21"));
        let unit = m.unit();
        assert_eq!(y.mode(-1, &unit), m.element("E21"));
        assert_eq!(y.mode(-2, &unit), &m.element("E11") - &m.element("E22"));
        assert_eq!(y.mode(-3, &unit), m.element("E12").scaled(&q(-1)));
        assert!(y.mode(-4, &unit).is_zero());
        assert!(y.mode(0, &unit).is_zero());
    }
}
