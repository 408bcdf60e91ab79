pub mod arith;
pub mod distributions;
pub mod field_algebra;
pub mod fields;
pub mod fock;
pub mod report;
pub mod state;
pub mod vector;
pub mod verify;

pub use arith::Q;
pub use field_algebra::{free_boson, FieldAlgebra};
pub use fields::Field;
pub use fock::Monomial;
pub use report::{CheckReport, Verdict, Witness};
pub use state::StateModel;
pub use vector::Vector;
pub use verify::{SuiteParams, SuiteReport};
