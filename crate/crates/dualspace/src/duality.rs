//! The dualizing functor made executable.
//!
//! One row-finite matrix carries two morphisms at once: the right action
//! `x ↦ x·F` on finite-support vectors and the left action `y ↦ F·y` on
//! product vectors. [`DualMorphism`] packages a matrix with the orientation
//! currently meant; dualizing flips the orientation and keeps the matrix.
//! The two orientations are adjoint under the canonical pairing:
//!
//! ```text
//! ⟨x·F, y⟩ = ⟨x, F·y⟩
//! ```
//!
//! On top of that sit the verification entry points: [`check_adjoint`] tests
//! the pairing identity on given data, [`faithful_witness`] extracts a
//! separating functional from any nonzero matrix, [`full_preimage`] inverts
//! the morphism map, and [`check_exactness`] verifies that dualizing an
//! injection yields a surjection, solving for preimages with exact
//! elimination.

use crate::error::{Error, Result};
use crate::field::{gauss_solve, rank, DenseMatrix};
use crate::rowfinite::RowFiniteMatrix;
use crate::seq::{pair, Dim, FinSuppVec, ProdVec};

/// Which of its two actions a matrix is currently read as.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    /// `F^(β) → F^(α)`, `x ↦ x·F`.
    RightOnFinSupp,
    /// `F^α → F^β`, `y ↦ F·y`.
    LeftOnProd,
}

impl Orientation {
    pub fn flipped(self) -> Orientation {
        match self {
            Orientation::RightOnFinSupp => Orientation::LeftOnProd,
            Orientation::LeftOnProd => Orientation::RightOnFinSupp,
        }
    }
}

/// A matrix together with the orientation it is being used in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualMorphism {
    matrix: RowFiniteMatrix,
    orientation: Orientation,
}

impl DualMorphism {
    pub fn new(matrix: RowFiniteMatrix, orientation: Orientation) -> Self {
        DualMorphism { matrix, orientation }
    }

    pub fn matrix(&self) -> &RowFiniteMatrix {
        &self.matrix
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    /// The adjoint morphism: same matrix, flipped orientation. Involutive.
    pub fn dual(&self) -> DualMorphism {
        DualMorphism {
            matrix: self.matrix.clone(),
            orientation: self.orientation.flipped(),
        }
    }

    /// Applies the morphism in its right orientation.
    pub fn apply_fin(&self, x: &FinSuppVec) -> Result<FinSuppVec> {
        match self.orientation {
            Orientation::RightOnFinSupp => self.matrix.act_right(x),
            Orientation::LeftOnProd => Err(Error::PreconditionViolated(
                "morphism is oriented on product vectors".into(),
            )),
        }
    }

    /// Applies the morphism in its left orientation.
    pub fn apply_prod(&self, y: &ProdVec) -> Result<ProdVec> {
        match self.orientation {
            Orientation::LeftOnProd => self.matrix.act_left(y),
            Orientation::RightOnFinSupp => Err(Error::PreconditionViolated(
                "morphism is oriented on finite-support vectors".into(),
            )),
        }
    }
}

/// The pairing identity `⟨x·F, y⟩ = ⟨x, F·y⟩`, decided exactly.
pub fn check_adjoint(f: &RowFiniteMatrix, x: &FinSuppVec, y: &ProdVec) -> Result<bool> {
    let lhs = pair(&f.act_right(x)?, y)?;
    let rhs = pair(x, &f.act_left(y)?)?;
    Ok(lhs == rhs)
}

/// A separating witness for a nonzero matrix: indices `(i, j)` with
/// `F[j, i] ≠ 0`, so the functional `δ_i` composed through `F` is nonzero at
/// coordinate `j`. Returns `None` exactly for the zero matrix.
pub fn faithful_witness(f: &RowFiniteMatrix) -> Option<(usize, usize)> {
    f.first_nonzero_entry().map(|(row, col)| (col, row))
}

/// Confirms a faithfulness witness: re-reads the entry and checks that the
/// left action on the embedded basis functional is nonzero at the row.
pub fn validate_witness(f: &RowFiniteMatrix, witness: (usize, usize)) -> Result<bool> {
    let (i, j) = witness;
    let entry = f.row(j)?.get(i);
    if entry.is_zero() {
        return Ok(false);
    }
    let functional = FinSuppVec::delta(f.spec(), f.col_dim(), i)?.embed();
    Ok(!f.act_left(&functional)?.get(j)?.is_zero())
}

/// The preimage of a left-action morphism under dualization: the right-action
/// morphism with the same matrix. `dual(full_preimage(G)).matrix = G`.
pub fn full_preimage(g: RowFiniteMatrix) -> DualMorphism {
    DualMorphism::new(g, Orientation::RightOnFinSupp)
}

fn finite_row_count(f: &RowFiniteMatrix) -> Result<usize> {
    match f.row_dim() {
        Dim::Finite(b) => Ok(b),
        Dim::Omega => Err(Error::PreconditionViolated(
            "row dimension must be finite".into(),
        )),
    }
}

/// Ensures `trunc` covers every row support, so column-truncated answers are
/// sound, and returns the rows as a dense `b × trunc` matrix.
fn truncated_rows(f: &RowFiniteMatrix, trunc: usize) -> Result<DenseMatrix> {
    let b = finite_row_count(f)?;
    let mut required = 0;
    for j in 0..b {
        required = required.max(f.row_support_bound(j)?);
    }
    if trunc < required {
        return Err(Error::TruncationTooSmall { trunc, required });
    }
    let mut rows = Vec::with_capacity(b);
    for j in 0..b {
        let row = f.row(j)?;
        rows.push((0..trunc).map(|c| row.get(c)).collect());
    }
    DenseMatrix::from_rows(f.spec(), rows)
}

/// Whether the rows of `f` are linearly independent — equivalently, whether
/// `x ↦ x·F` is injective. Sound because `trunc` must cover every support.
pub fn rows_independent(f: &RowFiniteMatrix, trunc: usize) -> Result<bool> {
    let b = finite_row_count(f)?;
    let dense = truncated_rows(f, trunc)?;
    Ok(rank(&dense)? == b)
}

/// For each target basis functional `δ_j`, a product vector `y` with
/// `F·y = δ_j`, found by exact elimination on the `trunc`-column truncation.
/// Each solution is re-verified through the left action before being
/// returned; `None` means some functional has no verified preimage within
/// the truncation.
pub fn exactness_preimages(f: &RowFiniteMatrix, trunc: usize) -> Result<Option<Vec<ProdVec>>> {
    let b = finite_row_count(f)?;
    if !rows_independent(f, trunc)? {
        return Err(Error::PreconditionViolated(
            "rows are not linearly independent".into(),
        ));
    }
    let spec = f.spec();
    // The support search stays inside the column dimension; row supports fit
    // in it too, so the narrowed width still covers them.
    let horizon = match f.col_dim() {
        Dim::Finite(a) => trunc.min(a),
        Dim::Omega => trunc,
    };
    let dense = truncated_rows(f, horizon)?;

    let mut out = Vec::with_capacity(b);
    for j in 0..b {
        let mut target = vec![spec.zero(); b];
        target[j] = spec.one();
        let Some(solution) = gauss_solve(&dense, &target)? else {
            return Ok(None);
        };
        let y = ProdVec::new(spec, f.col_dim(), solution, crate::seq::TailSpec::Zeros)?;
        let image = f.act_left(&y)?;
        let want = FinSuppVec::delta(spec, Dim::Finite(b), j)?.embed();
        if !image.eq_checked(&want)? {
            return Ok(None);
        }
        out.push(y);
    }
    Ok(Some(out))
}

/// Dual of injective is surjective: true iff every target basis functional
/// has a verified preimage under the left action.
pub fn check_exactness(f: &RowFiniteMatrix, trunc: usize) -> Result<bool> {
    Ok(exactness_preimages(f, trunc)?.is_some())
}
