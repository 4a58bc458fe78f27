//! Exact field arithmetic: prime fields `GF(p)` and arbitrary-precision
//! rationals, plus the Gaussian elimination the duality verifiers run on.
//!
//! Floating point is deliberately absent: every argument downstream relies on
//! exact equality, so scalars are canonical residues or reduced fractions and
//! nothing else.

mod gauss;
mod scalar;

pub use gauss::{gauss_solve, rank, DenseMatrix};
pub use scalar::{FieldSpec, Scalar};
