//! Exact computations with anomalies, projective representations and
//! twisted group algebras over finite categories.
//!
//! The linear algebra and bimodule layers are generic over a [`Field`]; the
//! cocycle layers work over [`Rational`] because they factor values in `Q*`.

pub mod algebra;
pub mod anomaly;
pub mod bimodule;
pub mod category;
pub mod cocycle;
pub mod error;
pub mod extension;
pub mod group;
pub mod integer;
pub mod linalg;
pub mod matrix;
pub mod nerve;
pub mod report;
pub mod reps;
pub mod scalar;
pub mod tensor;
pub mod twisted;

pub use error::{Error, Result};
pub use integer::{smith_normal_form, solve_integer_system, IntMatrix, Smith};
pub use linalg::{inverse, kernel_basis, quotient_with_section, rank, rref, solve_linear, Quotient, Rref};
pub use matrix::Matrix;
pub use report::{Findings, Violation};
pub use scalar::{format_rational, frac, parse_rational, q, Field, Rational};

pub type QMatrix = Matrix<Rational>;
pub type QAlgebra = algebra::Algebra<Rational>;
pub type QBimodule = bimodule::Bimodule<Rational>;
pub type QMorphism = bimodule::BimoduleMorphism<Rational>;
pub type QTensor = tensor::TensorResult<Rational>;
