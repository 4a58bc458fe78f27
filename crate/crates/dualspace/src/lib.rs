//! Exact linear algebra over the two sequence spaces attached to a field `F`:
//! the finite-support vectors `F^(α)` and the full product vectors `F^α`,
//! with `α` a natural number or `ω`.
//!
//! Morphisms on both sides are row-finite matrices. One matrix acts on the
//! right on finite-support vectors and on the left on product vectors, and the
//! two actions are adjoint to each other under the canonical pairing
//! `pair(x, y) = Σ x_i y_i`. The crate makes that structure executable:
//!
//! * [`field`] — exact scalars (prime fields `GF(p)` and arbitrary-precision
//!   rationals) plus deterministic Gaussian elimination,
//! * [`seq`] — finite-support and product vectors with decidable equality,
//! * [`rowfinite`] — row-finite matrices, both actions, composition,
//! * [`limits`] — the quotient tower `F^ω / V_n ≅ F^n` and its threads,
//! * [`duality`] — adjointness, faithfulness, fullness and exactness checks,
//! * [`io`] — the text file formats for vectors and matrices,
//! * [`verify`] — seeded randomized law suites with byte-stable reports.
//!
//! Everything is immutable after construction and every operation is a pure
//! function, so values can be shared freely across threads.

pub mod duality;
pub mod error;
pub mod field;
pub mod io;
pub mod limits;
pub mod rowfinite;
pub mod seq;
pub mod verify;

pub use error::{Error, Result};
pub use field::{gauss_solve, rank, DenseMatrix, FieldSpec, Scalar};
pub use rowfinite::{MatrixBody, RowFiniteMatrix};
pub use seq::{pair, Dim, FinSuppVec, ProdVec, TailSpec};
