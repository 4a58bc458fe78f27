//! Exact Gaussian elimination on dense matrices.
//!
//! Pivoting is deterministic: the first nonzero entry scanning rows top-down,
//! columns left-to-right. Exact arithmetic needs no magnitude pivoting.

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::seq::Dim;

/// A dense row-major matrix of scalars over one field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseMatrix {
    spec: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl DenseMatrix {
    /// Builds a matrix from row-major data; every entry must share `spec`.
    pub fn new(spec: FieldSpec, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Invalid(format!(
                "dense matrix {rows}x{cols} needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        for s in &data {
            spec.check(s.spec())?;
        }
        Ok(DenseMatrix { spec, rows, cols, data })
    }

    pub fn zero(spec: FieldSpec, rows: usize, cols: usize) -> Self {
        DenseMatrix {
            spec,
            rows,
            cols,
            data: vec![spec.zero(); rows * cols],
        }
    }

    pub fn identity(spec: FieldSpec, n: usize) -> Self {
        let mut m = Self::zero(spec, n, n);
        for i in 0..n {
            *m.at_mut(i, i) = spec.one();
        }
        m
    }

    pub fn from_rows(spec: FieldSpec, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Invalid("ragged rows in dense matrix".into()));
        }
        Self::new(spec, r, c, rows.into_iter().flatten().collect())
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    fn at_mut(&mut self, r: usize, c: usize) -> &mut Scalar {
        &mut self.data[r * self.cols + c]
    }

    /// `A · x` for a dense vector `x` of length `cols`.
    pub fn mat_vec(&self, x: &[Scalar]) -> Result<Vec<Scalar>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: Dim::Finite(self.cols),
                found: Dim::Finite(x.len()),
            });
        }
        let mut out = Vec::with_capacity(self.rows);
        for r in 0..self.rows {
            let mut acc = self.spec.zero();
            for (c, xc) in x.iter().enumerate() {
                acc = acc.add(&self.at(r, c).mul(xc)?)?;
            }
            out.push(acc);
        }
        Ok(out)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

/// Reduced row echelon form in place; returns the pivot columns.
fn rref(m: &mut DenseMatrix) -> Result<Vec<usize>> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m.cols {
        if row == m.rows {
            break;
        }
        let Some(pr) = (row..m.rows).find(|&r| !m.at(r, col).is_zero()) else {
            continue;
        };
        m.swap_rows(row, pr);
        let inv = m.at(row, col).inv()?;
        for c in col..m.cols {
            *m.at_mut(row, c) = m.at(row, c).mul(&inv)?;
        }
        for r in 0..m.rows {
            if r == row || m.at(r, col).is_zero() {
                continue;
            }
            let factor = m.at(r, col).clone();
            for c in col..m.cols {
                let delta = factor.mul(m.at(row, c))?;
                *m.at_mut(r, c) = m.at(r, c).sub(&delta)?;
            }
        }
        pivots.push(col);
        row += 1;
    }
    Ok(pivots)
}

/// The rank of `a` over its field.
pub fn rank(a: &DenseMatrix) -> Result<usize> {
    let mut m = a.clone();
    Ok(rref(&mut m)?.len())
}

/// Solves `A · x = b` exactly.
///
/// Returns `Some(x)` with free variables set to zero, or `None` when the
/// system is inconsistent. A returned solution always satisfies `A · x = b`
/// under exact re-multiplication.
pub fn gauss_solve(a: &DenseMatrix, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
    if b.len() != a.rows {
        return Err(Error::DimensionMismatch {
            expected: Dim::Finite(a.rows),
            found: Dim::Finite(b.len()),
        });
    }
    for s in b {
        a.spec.check(s.spec())?;
    }

    // Eliminate on the augmented matrix [A | b].
    let mut aug = DenseMatrix::zero(a.spec, a.rows, a.cols + 1);
    for (r, rhs) in b.iter().enumerate() {
        for c in 0..a.cols {
            *aug.at_mut(r, c) = a.at(r, c).clone();
        }
        *aug.at_mut(r, a.cols) = rhs.clone();
    }
    let pivots = rref(&mut aug)?;

    // A pivot in the augmented column means rank([A|b]) > rank(A).
    if pivots.last() == Some(&a.cols) {
        return Ok(None);
    }

    let mut x = vec![a.spec.zero(); a.cols];
    for (row, &col) in pivots.iter().enumerate() {
        x[col] = aug.at(row, a.cols).clone();
    }
    Ok(Some(x))
}
