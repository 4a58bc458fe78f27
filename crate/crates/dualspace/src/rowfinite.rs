//! Row-finite matrices and their two actions.
//!
//! A matrix in `F^{β,(α)}` has a finite-support row at every index, which is
//! exactly what makes both actions computable: the right action
//! `x ↦ x·F` on finite-support vectors is a finite combination of rows, and
//! the left action `y ↦ F·y` on product vectors evaluates each coordinate as
//! a finite pairing `⟨row_j, y⟩`.
//!
//! Matrices with infinitely many rows must still be finitely described, so a
//! matrix body is either an explicit finite list of nonzero rows or one of
//! three total rules (identity, shift, periodic diagonal). These suffice to
//! exercise genuinely infinite behaviour while keeping every operation —
//! including equality — decidable.

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::seq::{pair, Dim, FinSuppVec, ProdVec, TailSpec};

/// How the rows of a [`RowFiniteMatrix`] are described.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatrixBody {
    /// Finitely many nonzero rows, sorted by row index; all others are zero.
    ExplicitRows(Vec<(usize, FinSuppVec)>),
    /// Entry `(j, j) = 1`; requires equal row and column dimensions.
    Identity,
    /// Entry `(j, j+k) = 1` for every row `j`.
    Shift(usize),
    /// Entry `(j, j) = block[j mod len]`, zero elsewhere.
    DiagBlock(Vec<Scalar>),
}

/// A row-finite matrix `F ∈ F^{β,(α)}` acting on the right on `F^(β)` and on
/// the left on `F^α`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowFiniteMatrix {
    spec: FieldSpec,
    row_dim: Dim,
    col_dim: Dim,
    body: MatrixBody,
}

impl RowFiniteMatrix {
    /// A matrix with the given nonzero rows; rows are sorted, zero rows are
    /// dropped, duplicate row indices are rejected.
    pub fn explicit(
        spec: FieldSpec,
        row_dim: Dim,
        col_dim: Dim,
        rows: Vec<(usize, FinSuppVec)>,
    ) -> Result<Self> {
        let mut rows: Vec<(usize, FinSuppVec)> =
            rows.into_iter().filter(|(_, r)| !r.is_zero()).collect();
        rows.sort_by_key(|&(j, _)| j);
        for window in rows.windows(2) {
            if window[0].0 == window[1].0 {
                return Err(Error::Invalid(format!("duplicate explicit row {}", window[0].0)));
            }
        }
        for (j, row) in &rows {
            row_dim.check_index(*j)?;
            spec.check(row.spec())?;
            col_dim.check(row.dim())?;
        }
        Ok(RowFiniteMatrix { spec, row_dim, col_dim, body: MatrixBody::ExplicitRows(rows) })
    }

    pub fn identity(spec: FieldSpec, dim: Dim) -> Self {
        RowFiniteMatrix { spec, row_dim: dim, col_dim: dim, body: MatrixBody::Identity }
    }

    /// The shift rule `(j, j+k) = 1`. Valid when the column dimension is `ω`
    /// or every row's entry column `j + k` stays in range.
    pub fn shift(spec: FieldSpec, row_dim: Dim, col_dim: Dim, k: usize) -> Result<Self> {
        match (row_dim, col_dim) {
            (_, Dim::Omega) => {}
            (Dim::Finite(b), Dim::Finite(a)) => {
                if b + k > a {
                    return Err(Error::Invalid(format!(
                        "shift {k} does not fit: rows {b} need columns up to {}, have {a}",
                        b + k
                    )));
                }
            }
            (Dim::Omega, Dim::Finite(_)) => {
                return Err(Error::Invalid(
                    "shift with infinitely many rows needs omega columns".into(),
                ));
            }
        }
        Ok(RowFiniteMatrix { spec, row_dim, col_dim, body: MatrixBody::Shift(k) })
    }

    /// The periodic diagonal rule `(j, j) = block[j mod len]`.
    pub fn diag_block(
        spec: FieldSpec,
        row_dim: Dim,
        col_dim: Dim,
        block: Vec<Scalar>,
    ) -> Result<Self> {
        if block.is_empty() {
            return Err(Error::Invalid("diagonal block must be nonempty".into()));
        }
        for s in &block {
            spec.check(s.spec())?;
        }
        Ok(RowFiniteMatrix { spec, row_dim, col_dim, body: MatrixBody::DiagBlock(block) })
    }

    pub fn zero(spec: FieldSpec, row_dim: Dim, col_dim: Dim) -> Self {
        RowFiniteMatrix { spec, row_dim, col_dim, body: MatrixBody::ExplicitRows(Vec::new()) }
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn row_dim(&self) -> Dim {
        self.row_dim
    }

    pub fn col_dim(&self) -> Dim {
        self.col_dim
    }

    pub fn body(&self) -> &MatrixBody {
        &self.body
    }

    /// Row `j` as a finite-support vector of the column dimension. Equals
    /// `act_right(δ_j, self)`.
    pub fn row(&self, j: usize) -> Result<FinSuppVec> {
        self.row_dim.check_index(j)?;
        Ok(match &self.body {
            MatrixBody::ExplicitRows(rows) => rows
                .binary_search_by_key(&j, |&(i, _)| i)
                .map(|pos| rows[pos].1.clone())
                .unwrap_or_else(|_| FinSuppVec::zero(self.spec, self.col_dim)),
            MatrixBody::Identity => FinSuppVec::delta(self.spec, self.col_dim, j)?,
            MatrixBody::Shift(k) => FinSuppVec::delta(self.spec, self.col_dim, j + k)?,
            MatrixBody::DiagBlock(block) => {
                let coef = &block[j % block.len()];
                if self.col_dim.contains(j) && !coef.is_zero() {
                    FinSuppVec::delta(self.spec, self.col_dim, j)?.scale(coef)?
                } else {
                    FinSuppVec::zero(self.spec, self.col_dim)
                }
            }
        })
    }

    /// One past the largest column index in row `j`'s support.
    ///
    /// Coordinate `j` of the left action is insensitive to any change of the
    /// argument at or beyond this bound.
    pub fn row_support_bound(&self, j: usize) -> Result<usize> {
        Ok(self.row(j)?.support_bound())
    }

    /// The right action `x ↦ x·F`, a morphism `F^(β) → F^(α)`.
    pub fn act_right(&self, x: &FinSuppVec) -> Result<FinSuppVec> {
        self.spec.check(x.spec())?;
        self.row_dim.check(x.dim())?;
        let mut acc = FinSuppVec::zero(self.spec, self.col_dim);
        for (j, xj) in x.iter() {
            acc = acc.add(&self.row(j)?.scale(xj)?)?;
        }
        Ok(acc)
    }

    /// The left action `y ↦ F·y`, a morphism `F^α → F^β`; coordinate `j` of
    /// the result is `⟨row_j, y⟩`.
    ///
    /// The result is always materialized back into the prefix+tail class:
    /// finite row dimensions become plain prefixes, and at `ω` each body
    /// variant has its own closed form (explicit rows give a finite prefix,
    /// the identity returns the argument, a shift drops leading coordinates,
    /// a diagonal multiplies pointwise by the periodic block).
    pub fn act_left(&self, y: &ProdVec) -> Result<ProdVec> {
        self.spec.check(y.spec())?;
        self.col_dim.check(y.dim())?;
        match self.row_dim {
            Dim::Finite(b) => {
                let mut prefix = Vec::with_capacity(b);
                for j in 0..b {
                    prefix.push(pair(&self.row(j)?, y)?);
                }
                ProdVec::new(self.spec, Dim::Finite(b), prefix, TailSpec::Zeros)
            }
            Dim::Omega => match &self.body {
                MatrixBody::Identity => Ok(y.clone()),
                MatrixBody::Shift(k) => shift_left(y, *k),
                MatrixBody::DiagBlock(block) => diag_apply(self.spec, block, y, self.col_dim),
                MatrixBody::ExplicitRows(rows) => {
                    let bound = rows.last().map_or(0, |&(j, _)| j + 1);
                    let mut prefix = vec![self.spec.zero(); bound];
                    for (j, row) in rows {
                        prefix[*j] = pair(row, y)?;
                    }
                    ProdVec::new(self.spec, Dim::Omega, prefix, TailSpec::Zeros)
                }
            },
        }
    }

    /// Matrix composition: row `j` of `A∘B` is `act_right(row_j(A), B)`.
    ///
    /// Rule pairs with a closed form are kept symbolic (identity absorption,
    /// `Shift(k)∘Shift(m) = Shift(k+m)`, diagonal·diagonal); composites with
    /// finitely many nonzero rows are materialized to explicit rows. The only
    /// remainder — shift against a non-trivial diagonal with every dimension
    /// `ω`, a scaled shift — has no finite description here and errors with
    /// [`Error::UnrepresentableComposite`].
    pub fn compose(&self, other: &RowFiniteMatrix) -> Result<RowFiniteMatrix> {
        self.spec.check(other.spec)?;
        self.col_dim.check(other.row_dim)?;
        let (beta, alpha) = (self.row_dim, other.col_dim);

        match (&self.body, &other.body) {
            (MatrixBody::Identity, _) => return Ok(other.clone()),
            (_, MatrixBody::Identity) => return Ok(self.clone()),
            (MatrixBody::Shift(k), MatrixBody::Shift(m)) => {
                return RowFiniteMatrix::shift(self.spec, beta, alpha, k + m);
            }
            (MatrixBody::DiagBlock(a), MatrixBody::DiagBlock(b)) => {
                // Valid whenever the inner dimension covers the outer
                // diagonal; a short inner dimension truncates instead and is
                // handled by materialization below.
                let outer = match (beta, alpha) {
                    (Dim::Finite(x), Dim::Finite(y)) => Some(x.min(y)),
                    (Dim::Finite(x), Dim::Omega) | (Dim::Omega, Dim::Finite(x)) => Some(x),
                    (Dim::Omega, Dim::Omega) => None,
                };
                let covered = match (self.col_dim, outer) {
                    (Dim::Omega, _) => true,
                    (Dim::Finite(g), Some(o)) => g >= o,
                    (Dim::Finite(_), None) => false,
                };
                if covered {
                    let period = lcm(a.len(), b.len());
                    let block = (0..period)
                        .map(|i| a[i % a.len()].mul(&b[i % b.len()]))
                        .collect::<Result<Vec<_>>>()?;
                    return RowFiniteMatrix::diag_block(self.spec, beta, alpha, block);
                }
            }
            _ => {}
        }

        if let Some(candidates) = self.composite_row_candidates(other) {
            let mut rows = Vec::new();
            for j in candidates {
                let row = other.act_right(&self.row(j)?)?;
                if !row.is_zero() {
                    rows.push((j, row));
                }
            }
            return RowFiniteMatrix::explicit(self.spec, beta, alpha, rows);
        }

        // All dimensions are ω and both bodies are total rules mixing a shift
        // with a diagonal. Degenerate blocks still have closed forms.
        match (&self.body, &other.body) {
            (MatrixBody::Shift(k), MatrixBody::DiagBlock(b))
            | (MatrixBody::DiagBlock(b), MatrixBody::Shift(k)) => {
                if b.iter().all(Scalar::is_zero) {
                    Ok(RowFiniteMatrix::zero(self.spec, beta, alpha))
                } else if b.iter().all(Scalar::is_one) {
                    RowFiniteMatrix::shift(self.spec, beta, alpha, *k)
                } else {
                    Err(Error::UnrepresentableComposite)
                }
            }
            _ => unreachable!("all other body pairs are simplified or materialized"),
        }
    }

    /// The row indices at which this matrix can have a nonzero row, when that
    /// set is finite. `None` means unboundedly many rows may be nonzero.
    fn nonzero_row_candidates(&self) -> Option<Vec<usize>> {
        match (&self.body, self.row_dim) {
            (MatrixBody::ExplicitRows(rows), _) => {
                Some(rows.iter().map(|&(j, _)| j).collect())
            }
            (_, Dim::Finite(b)) => Some((0..b).collect()),
            (MatrixBody::DiagBlock(block), Dim::Omega) => match self.col_dim {
                // Rows at or beyond the column dimension are zero.
                Dim::Finite(a) => Some(
                    (0..a).filter(|&j| !block[j % block.len()].is_zero()).collect(),
                ),
                Dim::Omega => {
                    if block.iter().all(Scalar::is_zero) {
                        Some(Vec::new())
                    } else {
                        None
                    }
                }
            },
            (MatrixBody::Identity | MatrixBody::Shift(_), Dim::Omega) => None,
        }
    }

    /// Rows of `self∘other` that can be nonzero, when finitely many.
    fn composite_row_candidates(&self, other: &RowFiniteMatrix) -> Option<Vec<usize>> {
        if let Some(own) = self.nonzero_row_candidates() {
            return Some(own);
        }
        // self is a total rule on ω rows; map other's bounded nonzero rows
        // back through the rule. Row j of the composite combines other's rows
        // in supp(row_j(self)): {j} for a diagonal, {j + k} for a shift.
        let inner = other.nonzero_row_candidates()?;
        match &self.body {
            MatrixBody::DiagBlock(_) => Some(inner),
            MatrixBody::Shift(k) => {
                Some(inner.into_iter().filter(|&t| t >= *k).map(|t| t - k).collect())
            }
            MatrixBody::Identity | MatrixBody::ExplicitRows(_) => {
                unreachable!("identity absorbed; explicit rows are bounded")
            }
        }
    }

    /// Decidable matrix equality: true iff `row(A, j) = row(B, j)` for all j.
    ///
    /// For the shipped body variants the answer is always certified — either
    /// both sides have finitely many nonzero rows and those are compared, or
    /// the total rules are compared through their closed forms. The
    /// `Undecidable` contract error is reserved for body classes without such
    /// a certificate and is never produced here.
    pub fn mat_eq(&self, other: &RowFiniteMatrix) -> Result<bool> {
        self.spec.check(other.spec)?;
        self.row_dim.check(other.row_dim)?;
        self.col_dim.check(other.col_dim)?;

        match (self.nonzero_row_candidates(), other.nonzero_row_candidates()) {
            (Some(a), Some(b)) => {
                let mut indices: Vec<usize> = a.into_iter().chain(b).collect();
                indices.sort_unstable();
                indices.dedup();
                for j in indices {
                    if !self.row(j)?.eq_checked(&other.row(j)?)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            // One side is eventually zero, the other has unboundedly many
            // nonzero rows: they differ somewhere beyond the bound.
            (Some(_), None) | (None, Some(_)) => Ok(false),
            (None, None) => self.rule_eq(other),
        }
    }

    /// Equality of two total rules on ω rows with ω columns.
    fn rule_eq(&self, other: &RowFiniteMatrix) -> Result<bool> {
        use MatrixBody::*;
        Ok(match (&self.body, &other.body) {
            (Identity, Identity) => true,
            (Identity, Shift(k)) | (Shift(k), Identity) => *k == 0,
            (Shift(k), Shift(m)) => k == m,
            (DiagBlock(a), DiagBlock(b)) => {
                let period = lcm(a.len(), b.len());
                (0..period).all(|i| a[i % a.len()] == b[i % b.len()])
            }
            (Identity, DiagBlock(b)) | (DiagBlock(b), Identity) => b.iter().all(Scalar::is_one),
            (Shift(k), DiagBlock(b)) | (DiagBlock(b), Shift(k)) => {
                *k == 0 && b.iter().all(Scalar::is_one)
            }
            (ExplicitRows(_), _) | (_, ExplicitRows(_)) => {
                unreachable!("explicit rows always have bounded candidates")
            }
        })
    }

    /// The first nonzero entry in row-major order, as `(row, col)`.
    pub fn first_nonzero_entry(&self) -> Option<(usize, usize)> {
        match &self.body {
            MatrixBody::ExplicitRows(rows) => rows
                .first()
                .and_then(|(j, row)| row.support().next().map(|i| (*j, i))),
            MatrixBody::Identity => self.row_dim.contains(0).then_some((0, 0)),
            MatrixBody::Shift(k) => self.row_dim.contains(0).then_some((0, *k)),
            MatrixBody::DiagBlock(block) => (0..block.len())
                .find(|&j| {
                    self.row_dim.contains(j)
                        && self.col_dim.contains(j)
                        && !block[j % block.len()].is_zero()
                })
                .map(|j| (j, j)),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.first_nonzero_entry().is_none()
    }
}

fn lcm(a: usize, b: usize) -> usize {
    num_integer::Integer::lcm(&a, &b)
}

/// `y ↦ (y_k, y_{k+1}, ...)` on an ω-dimensional product vector.
fn shift_left(y: &ProdVec, k: usize) -> Result<ProdVec> {
    let prefix = y.prefix();
    if k <= prefix.len() {
        return ProdVec::new(y.spec(), Dim::Omega, prefix[k..].to_vec(), y.tail().clone());
    }
    match y.tail() {
        TailSpec::Zeros => Ok(ProdVec::zero(y.spec(), Dim::Omega)),
        TailSpec::Repeat(block) => {
            let phase = (k - prefix.len()) % block.len();
            let mut rotated = block[phase..].to_vec();
            rotated.extend_from_slice(&block[..phase]);
            ProdVec::new(y.spec(), Dim::Omega, Vec::new(), TailSpec::Repeat(rotated))
        }
    }
}

/// Pointwise product with a periodic diagonal block, `ω` rows.
fn diag_apply(
    spec: FieldSpec,
    block: &[Scalar],
    y: &ProdVec,
    col_dim: Dim,
) -> Result<ProdVec> {
    match col_dim {
        Dim::Finite(a) => {
            // Rows at or beyond the column dimension are zero.
            let mut prefix = Vec::with_capacity(a);
            for j in 0..a {
                prefix.push(block[j % block.len()].mul(&y.get(j)?)?);
            }
            ProdVec::new(spec, Dim::Omega, prefix, TailSpec::Zeros)
        }
        Dim::Omega => {
            let start = y.prefix().len();
            let mut prefix = Vec::with_capacity(start);
            for j in 0..start {
                prefix.push(block[j % block.len()].mul(&y.prefix()[j])?);
            }
            let tail = match y.tail() {
                TailSpec::Zeros => TailSpec::Zeros,
                TailSpec::Repeat(yb) => {
                    let period = lcm(block.len(), yb.len());
                    let mut out = Vec::with_capacity(period);
                    for t in 0..period {
                        let j = start + t;
                        out.push(block[j % block.len()].mul(&yb[t % yb.len()])?);
                    }
                    TailSpec::Repeat(out)
                }
            };
            ProdVec::new(spec, Dim::Omega, prefix, tail)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    fn qq() -> FieldSpec {
        FieldSpec::rationals()
    }

    fn delta(spec: FieldSpec, dim: Dim, i: usize) -> FinSuppVec {
        FinSuppVec::delta(spec, dim, i).unwrap()
    }

    fn prod(spec: FieldSpec, prefix: &[i64], tail: TailSpec) -> ProdVec {
        let prefix = prefix.iter().map(|&v| spec.from_i64(v)).collect();
        ProdVec::new(spec, Dim::Omega, prefix, tail).unwrap()
    }

    /// Entrywise truncation oracle: entry (j, i) read through `row`.
    fn entry(m: &RowFiniteMatrix, j: usize, i: usize) -> Scalar {
        m.row(j).unwrap().get(i)
    }

    #[test]
    fn row_examples() {
        let spec = gf(5);
        let id = RowFiniteMatrix::identity(spec, Dim::Omega);
        assert_eq!(id.row(3).unwrap(), delta(spec, Dim::Omega, 3));

        let sh = RowFiniteMatrix::shift(spec, Dim::Omega, Dim::Omega, 2).unwrap();
        assert_eq!(sh.row(0).unwrap(), delta(spec, Dim::Omega, 2));

        let ex = RowFiniteMatrix::explicit(
            spec,
            Dim::Omega,
            Dim::Omega,
            vec![(1, delta(spec, Dim::Omega, 4))],
        )
        .unwrap();
        assert!(ex.row(0).unwrap().is_zero());
    }

    #[test]
    fn shift_dimension_rules() {
        let spec = gf(2);
        assert!(RowFiniteMatrix::shift(spec, Dim::Finite(2), Dim::Finite(4), 2).is_ok());
        assert!(RowFiniteMatrix::shift(spec, Dim::Finite(3), Dim::Finite(4), 2).is_err());
        assert!(RowFiniteMatrix::shift(spec, Dim::Omega, Dim::Finite(4), 1).is_err());
        assert!(RowFiniteMatrix::shift(spec, Dim::Omega, Dim::Omega, 7).is_ok());
    }

    #[test]
    fn explicit_rejects_duplicates_and_drops_zero_rows() {
        let spec = gf(3);
        let d = delta(spec, Dim::Omega, 0);
        assert!(RowFiniteMatrix::explicit(
            spec,
            Dim::Omega,
            Dim::Omega,
            vec![(0, d.clone()), (0, d.clone())]
        )
        .is_err());
        let m = RowFiniteMatrix::explicit(
            spec,
            Dim::Omega,
            Dim::Omega,
            vec![(5, FinSuppVec::zero(spec, Dim::Omega)), (1, d)],
        )
        .unwrap();
        match m.body() {
            MatrixBody::ExplicitRows(rows) => assert_eq!(rows.len(), 1),
            _ => unreachable!(),
        }
    }

    #[test]
    fn act_right_examples() {
        let spec = gf(2);
        let sh = RowFiniteMatrix::shift(spec, Dim::Omega, Dim::Omega, 1).unwrap();
        // Basis action: act_right(δ_j, F) = row_j(F).
        assert_eq!(sh.act_right(&delta(spec, Dim::Omega, 3)).unwrap(), sh.row(3).unwrap());
        assert!(sh.act_right(&FinSuppVec::zero(spec, Dim::Omega)).unwrap().is_zero());
        // Rows expanded by hand: (δ_0 + δ_1)·S = δ_1 + δ_2.
        let x = delta(spec, Dim::Omega, 0).add(&delta(spec, Dim::Omega, 1)).unwrap();
        let want = delta(spec, Dim::Omega, 1).add(&delta(spec, Dim::Omega, 2)).unwrap();
        assert_eq!(sh.act_right(&x).unwrap(), want);
    }

    #[test]
    fn act_left_examples() {
        let y = prod(qq(), &[1, 2, 3], TailSpec::Zeros);
        let id = RowFiniteMatrix::identity(qq(), Dim::Omega);
        assert_eq!(id.act_left(&y).unwrap(), y);

        // Coordinate oracle: (S·y)_j = y_{j+1}.
        let sh = RowFiniteMatrix::shift(qq(), Dim::Omega, Dim::Omega, 1).unwrap();
        let shifted = sh.act_left(&y).unwrap();
        for j in 0..8 {
            assert_eq!(shifted.get(j).unwrap(), y.get(j + 1).unwrap());
        }
        assert_eq!(shifted, prod(qq(), &[2, 3], TailSpec::Zeros));

        // Pairing oracle: row 0 = δ_5 reads off y_5.
        let ex = RowFiniteMatrix::explicit(
            qq(),
            Dim::Omega,
            Dim::Omega,
            vec![(0, delta(qq(), Dim::Omega, 5))],
        )
        .unwrap();
        let five = qq().from_i64(5);
        let y = prod(qq(), &[0, 1, 2, 3, 4, 5, 6], TailSpec::Zeros);
        let out = ex.act_left(&y).unwrap();
        assert_eq!(out.get(0).unwrap(), five);
        assert_eq!(out, prod(qq(), &[5], TailSpec::Zeros));
    }

    #[test]
    fn act_left_shift_into_repeat_tail() {
        let spec = gf(7);
        let block = TailSpec::Repeat(vec![spec.from_i64(1), spec.from_i64(2), spec.from_i64(3)]);
        let y = prod(spec, &[6], block);
        let sh = RowFiniteMatrix::shift(spec, Dim::Omega, Dim::Omega, 3).unwrap();
        let out = sh.act_left(&y).unwrap();
        for j in 0..12 {
            assert_eq!(out.get(j).unwrap(), y.get(j + 3).unwrap());
        }
    }

    #[test]
    fn act_left_diag_block_is_pointwise() {
        let spec = gf(7);
        let m = RowFiniteMatrix::diag_block(
            spec,
            Dim::Omega,
            Dim::Omega,
            vec![spec.from_i64(2), spec.from_i64(3)],
        )
        .unwrap();
        let y = prod(spec, &[1], TailSpec::Repeat(vec![spec.from_i64(4), spec.from_i64(5), spec.from_i64(6)]));
        let out = m.act_left(&y).unwrap();
        for j in 0..16 {
            let want = m.row(j).unwrap().get(j).mul(&y.get(j).unwrap()).unwrap();
            assert_eq!(out.get(j).unwrap(), want);
        }
    }

    #[test]
    fn compose_closed_forms() {
        let spec = gf(5);
        let id = RowFiniteMatrix::identity(spec, Dim::Omega);
        let s1 = RowFiniteMatrix::shift(spec, Dim::Omega, Dim::Omega, 1).unwrap();
        let s2 = RowFiniteMatrix::shift(spec, Dim::Omega, Dim::Omega, 2).unwrap();
        assert!(id.compose(&s2).unwrap().mat_eq(&s2).unwrap());
        assert!(s1.compose(&id).unwrap().mat_eq(&s1).unwrap());

        let s3 = s1.compose(&s2).unwrap();
        assert_eq!(s3.body(), &MatrixBody::Shift(3));
        // Entrywise check on an 8x8 truncation.
        for j in 0..8 {
            for i in 0..8 {
                let mut acc = spec.zero();
                for t in 0..16 {
                    acc = acc.add(&entry(&s1, j, t).mul(&entry(&s2, t, i)).unwrap()).unwrap();
                }
                assert_eq!(entry(&s3, j, i), acc);
            }
        }

        let d1 = RowFiniteMatrix::diag_block(spec, Dim::Omega, Dim::Omega, vec![spec.from_i64(2)])
            .unwrap();
        let d2 = RowFiniteMatrix::diag_block(
            spec,
            Dim::Omega,
            Dim::Omega,
            vec![spec.from_i64(3), spec.from_i64(4)],
        )
        .unwrap();
        let d = d1.compose(&d2).unwrap();
        for j in 0..8 {
            assert_eq!(entry(&d, j, j), entry(&d1, j, j).mul(&entry(&d2, j, j)).unwrap());
        }
    }

    #[test]
    fn compose_materializes_bounded_rows() {
        let spec = gf(5);
        // Shift(ω) ∘ ExplicitRows has finitely many nonzero rows.
        let s1 = RowFiniteMatrix::shift(spec, Dim::Omega, Dim::Omega, 1).unwrap();
        let ex = RowFiniteMatrix::explicit(
            spec,
            Dim::Omega,
            Dim::Omega,
            vec![(3, delta(spec, Dim::Omega, 0))],
        )
        .unwrap();
        let c = s1.compose(&ex).unwrap();
        // Row j of the composite is row_{j+1} of ex: nonzero only at j = 2.
        assert!(matches!(c.body(), MatrixBody::ExplicitRows(rows) if rows.len() == 1 && rows[0].0 == 2));
        assert_eq!(entry(&c, 2, 0), spec.one());

        // Finite row dimension always materializes.
        let a = RowFiniteMatrix::shift(spec, Dim::Finite(2), Dim::Omega, 1).unwrap();
        let b = RowFiniteMatrix::diag_block(spec, Dim::Omega, Dim::Omega, vec![spec.from_i64(2)])
            .unwrap();
        let c = a.compose(&b).unwrap();
        assert_eq!(c.row_dim(), Dim::Finite(2));
        for j in 0..2 {
            assert_eq!(entry(&c, j, j + 1), spec.from_i64(2));
        }
    }

    #[test]
    fn compose_unrepresentable_scaled_shift() {
        let spec = gf(5);
        let sh = RowFiniteMatrix::shift(spec, Dim::Omega, Dim::Omega, 1).unwrap();
        let d2 = RowFiniteMatrix::diag_block(spec, Dim::Omega, Dim::Omega, vec![spec.from_i64(2)])
            .unwrap();
        assert_eq!(sh.compose(&d2), Err(Error::UnrepresentableComposite));
        assert_eq!(d2.compose(&sh), Err(Error::UnrepresentableComposite));

        // Degenerate blocks still compose.
        let zero = RowFiniteMatrix::diag_block(spec, Dim::Omega, Dim::Omega, vec![spec.zero()])
            .unwrap();
        assert!(sh.compose(&zero).unwrap().is_zero());
        let ones = RowFiniteMatrix::diag_block(spec, Dim::Omega, Dim::Omega, vec![spec.one()])
            .unwrap();
        assert_eq!(sh.compose(&ones).unwrap().body(), &MatrixBody::Shift(1));
    }

    #[test]
    fn mat_eq_examples() {
        let spec = gf(3);
        let id = RowFiniteMatrix::identity(spec, Dim::Omega);
        let s0 = RowFiniteMatrix::shift(spec, Dim::Omega, Dim::Omega, 0).unwrap();
        let s1 = RowFiniteMatrix::shift(spec, Dim::Omega, Dim::Omega, 1).unwrap();
        assert!(id.mat_eq(&id).unwrap());
        assert!(id.mat_eq(&s0).unwrap());
        assert!(!s1.mat_eq(&id).unwrap());

        // Periodic diagonal vs its unrolled form.
        let d = RowFiniteMatrix::diag_block(
            spec,
            Dim::Omega,
            Dim::Omega,
            vec![spec.one(), spec.one()],
        )
        .unwrap();
        assert!(d.mat_eq(&id).unwrap());

        // Explicit vs rule: a rule with unboundedly many nonzero rows never
        // equals a finite explicit list.
        let ex = RowFiniteMatrix::explicit(
            spec,
            Dim::Omega,
            Dim::Omega,
            vec![(0, delta(spec, Dim::Omega, 0))],
        )
        .unwrap();
        assert!(!ex.mat_eq(&id).unwrap());

        // Explicit vs diagonal that is eventually zero by column bound.
        let dfin = RowFiniteMatrix::diag_block(spec, Dim::Omega, Dim::Finite(1), vec![spec.one()])
            .unwrap();
        let exfin = RowFiniteMatrix::explicit(
            spec,
            Dim::Omega,
            Dim::Finite(1),
            vec![(0, delta(spec, Dim::Finite(1), 0))],
        )
        .unwrap();
        assert!(dfin.mat_eq(&exfin).unwrap());
    }

    #[test]
    fn mat_eq_rejects_mismatched_shapes() {
        let spec = gf(3);
        let a = RowFiniteMatrix::identity(spec, Dim::Omega);
        let b = RowFiniteMatrix::identity(spec, Dim::Finite(3));
        assert!(matches!(a.mat_eq(&b), Err(Error::DimensionMismatch { .. })));
        let c = RowFiniteMatrix::identity(gf(5), Dim::Omega);
        assert!(matches!(a.mat_eq(&c), Err(Error::FieldMismatch(_, _))));
    }

    #[test]
    fn row_support_bound_is_a_locality_bound() {
        let spec = gf(7);
        let m = RowFiniteMatrix::explicit(
            spec,
            Dim::Omega,
            Dim::Omega,
            vec![(0, delta(spec, Dim::Omega, 3).scale(&spec.from_i64(2)).unwrap())],
        )
        .unwrap();
        assert_eq!(m.row_support_bound(0).unwrap(), 4);
        let y = prod(spec, &[1, 1, 1, 1], TailSpec::Zeros);
        // Perturb beyond the bound: coordinate 0 of the action is unchanged.
        let mut perturbed = y.prefix().to_vec();
        perturbed.extend([spec.from_i64(5), spec.from_i64(6)]);
        let y2 = ProdVec::new(spec, Dim::Omega, perturbed, TailSpec::Zeros).unwrap();
        assert_eq!(
            m.act_left(&y).unwrap().get(0).unwrap(),
            m.act_left(&y2).unwrap().get(0).unwrap()
        );
    }
}
