//! Conjugate complex polynomials and their symmetric tensor
//! representations: conversions, real-valuedness certification,
//! structured tensor eigenpairs, Banach-type equality checks, and two
//! desk-scale applications (best rank-one approximation, radar code
//! design).

pub mod apps;
pub mod banach;
pub mod bijection;
pub mod eigen;
pub mod error;
pub mod forms;
pub mod linalg;
pub mod scalar;
pub mod tensor;

pub use error::{Error, Result};
pub use scalar::{CScalar, Real};
pub use tensor::{outer_product, tensor_norm, DenseComplexTensor, SymmetryDefect};

/// Concrete aliases for the common scalar choices.
pub type Tensor64 = DenseComplexTensor<f64>;
pub type Tensor32 = DenseComplexTensor<f32>;
