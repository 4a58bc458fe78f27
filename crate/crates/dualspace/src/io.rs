//! Text file formats for vectors and matrices.
//!
//! Both formats are line-oriented UTF-8 with a fixed header order followed by
//! the data block. Serialization is canonical: parsing a serialized value and
//! re-serializing it reproduces the bytes, and parsing any accepted file then
//! serializing canonicalizes it (idempotently).
//!
//! Vector files:
//!
//! ```text
//! field: GF(7)          field: QQ
//! dim: omega            dim: 4
//! kind: sparse          kind: prefix
//! 0 3                   prefix: 1/2 -2
//! 5 1                   tail: zeros
//! ```
//!
//! Sparse lines are `<index> <scalar>` with strictly increasing indices and
//! no zero values. Prefix vectors carry `tail: zeros` or
//! `tail: repeat <scalars>`. Matrix files:
//!
//! ```text
//! field: GF(2)
//! rows: 2
//! cols: 2
//! kind: triplets        (or: identity | shift <k> | diagblock)
//! 0 1 1
//! 1 0 1
//! ```
//!
//! Triplet lines are `<row> <col> <scalar>` sorted row-major with no zero
//! values and no duplicate coordinates; `diagblock` is followed by a single
//! `block: <scalars>` line.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::rowfinite::{MatrixBody, RowFiniteMatrix};
use crate::seq::{Dim, FinSuppVec, ProdVec, TailSpec};

/// A parsed vector file: either kind of vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VectorData {
    Sparse(FinSuppVec),
    Prefix(ProdVec),
}

impl VectorData {
    pub fn spec(&self) -> FieldSpec {
        match self {
            VectorData::Sparse(x) => x.spec(),
            VectorData::Prefix(y) => y.spec(),
        }
    }

    pub fn dim(&self) -> Dim {
        match self {
            VectorData::Sparse(x) => x.dim(),
            VectorData::Prefix(y) => y.dim(),
        }
    }
}

struct Lines<'a> {
    lines: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines { lines: text.lines().enumerate() }
    }

    /// Next non-blank line as `(1-based line number, content)`.
    fn next(&mut self) -> Option<(usize, &'a str)> {
        for (idx, line) in self.lines.by_ref() {
            let trimmed = line.trim();
            if !trimmed.is_empty() {
                return Some((idx + 1, trimmed));
            }
        }
        None
    }

    fn expect(&mut self, what: &str) -> Result<(usize, &'a str)> {
        self.next()
            .ok_or_else(|| Error::Parse { line: 0, reason: format!("missing {what}") })
    }

    fn header(&mut self, key: &str) -> Result<(usize, &'a str)> {
        let (line, content) = self.expect(&format!("`{key}:` header"))?;
        let value = content.strip_prefix(key).and_then(|rest| rest.strip_prefix(':'));
        match value {
            Some(v) => Ok((line, v.trim())),
            None => Err(Error::Parse {
                line,
                reason: format!("expected `{key}:` header, got {content:?}"),
            }),
        }
    }
}

fn parse_field(line: usize, value: &str) -> Result<FieldSpec> {
    if value == "QQ" {
        return Ok(FieldSpec::rationals());
    }
    if let Some(p) = value.strip_prefix("GF(").and_then(|v| v.strip_suffix(')')) {
        let p: u32 = p.trim().parse().map_err(|_| Error::Parse {
            line,
            reason: format!("bad prime modulus {p:?}"),
        })?;
        return FieldSpec::prime(p).map_err(|e| Error::Parse { line, reason: e.to_string() });
    }
    Err(Error::Parse { line, reason: format!("unknown field {value:?} (want GF(p) or QQ)") })
}

fn parse_dim(line: usize, value: &str) -> Result<Dim> {
    if value == "omega" {
        return Ok(Dim::Omega);
    }
    value
        .parse()
        .map(Dim::Finite)
        .map_err(|_| Error::Parse { line, reason: format!("bad dimension {value:?}") })
}

fn parse_usize(line: usize, token: &str, what: &str) -> Result<usize> {
    token
        .parse()
        .map_err(|_| Error::Parse { line, reason: format!("bad {what} {token:?}") })
}

fn parse_scalar(line: usize, spec: FieldSpec, token: &str) -> Result<Scalar> {
    Scalar::parse(spec, token).map_err(|e| Error::Parse { line, reason: e.to_string() })
}

fn parse_scalar_list(line: usize, spec: FieldSpec, tokens: &str) -> Result<Vec<Scalar>> {
    tokens
        .split_whitespace()
        .map(|t| parse_scalar(line, spec, t))
        .collect()
}

/// Parses a vector file.
pub fn parse_vector(text: &str) -> Result<VectorData> {
    let mut lines = Lines::new(text);
    let (line, value) = lines.header("field")?;
    let spec = parse_field(line, value)?;
    let (line, value) = lines.header("dim")?;
    let dim = parse_dim(line, value)?;
    let (line, kind) = lines.header("kind")?;
    match kind {
        "sparse" => {
            let mut entries: Vec<(usize, Scalar)> = Vec::new();
            while let Some((line, content)) = lines.next() {
                let mut tokens = content.split_whitespace();
                let (Some(index), Some(value), None) =
                    (tokens.next(), tokens.next(), tokens.next())
                else {
                    return Err(Error::Parse {
                        line,
                        reason: format!("sparse line must be `<index> <scalar>`, got {content:?}"),
                    });
                };
                let index = parse_usize(line, index, "index")?;
                let value = parse_scalar(line, spec, value)?;
                if value.is_zero() {
                    return Err(Error::FileInvariant {
                        line,
                        reason: format!("stored zero at index {index}"),
                    });
                }
                if let Some(&(prev, _)) = entries.last() {
                    if index <= prev {
                        return Err(Error::FileInvariant {
                            line,
                            reason: format!(
                                "indices must be strictly increasing ({prev} then {index})"
                            ),
                        });
                    }
                }
                if !dim.contains(index) {
                    return Err(Error::FileInvariant {
                        line,
                        reason: format!("index {index} out of range for dim {dim}"),
                    });
                }
                entries.push((index, value));
            }
            let vec = FinSuppVec::from_entries(spec, dim, entries)
                .map_err(|e| Error::Parse { line, reason: e.to_string() })?;
            Ok(VectorData::Sparse(vec))
        }
        "prefix" => {
            let (line, value) = lines.header("prefix")?;
            let prefix = parse_scalar_list(line, spec, value)?;
            let (line, value) = lines.header("tail")?;
            let tail = if value == "zeros" {
                TailSpec::Zeros
            } else if let Some(rest) = value.strip_prefix("repeat") {
                let block = parse_scalar_list(line, spec, rest)?;
                if block.is_empty() {
                    return Err(Error::Parse {
                        line,
                        reason: "repeat tail needs at least one scalar".into(),
                    });
                }
                TailSpec::Repeat(block)
            } else {
                return Err(Error::Parse {
                    line,
                    reason: format!("tail must be `zeros` or `repeat <scalars>`, got {value:?}"),
                });
            };
            if let Some((line, content)) = lines.next() {
                return Err(Error::Parse {
                    line,
                    reason: format!("unexpected trailing content {content:?}"),
                });
            }
            let vec = ProdVec::new(spec, dim, prefix, tail)
                .map_err(|e| Error::Parse { line, reason: e.to_string() })?;
            Ok(VectorData::Prefix(vec))
        }
        other => Err(Error::Parse {
            line,
            reason: format!("vector kind must be sparse or prefix, got {other:?}"),
        }),
    }
}

/// Canonical serialization of either vector kind.
pub fn serialize_vector(data: &VectorData) -> String {
    let mut out = String::new();
    match data {
        VectorData::Sparse(x) => {
            let _ = writeln!(out, "field: {}", x.spec());
            let _ = writeln!(out, "dim: {}", x.dim());
            let _ = writeln!(out, "kind: sparse");
            for (i, v) in x.iter() {
                let _ = writeln!(out, "{i} {v}");
            }
        }
        VectorData::Prefix(y) => {
            let _ = writeln!(out, "field: {}", y.spec());
            let _ = writeln!(out, "dim: {}", y.dim());
            let _ = writeln!(out, "kind: prefix");
            let _ = writeln!(out, "prefix:{}", scalar_list(y.prefix()));
            match y.tail() {
                TailSpec::Zeros => {
                    let _ = writeln!(out, "tail: zeros");
                }
                TailSpec::Repeat(block) => {
                    let _ = writeln!(out, "tail: repeat{}", scalar_list(block));
                }
            }
        }
    }
    out
}

fn scalar_list(scalars: &[Scalar]) -> String {
    let mut out = String::new();
    for s in scalars {
        let _ = write!(out, " {s}");
    }
    out
}

/// Parses a matrix file.
pub fn parse_matrix(text: &str) -> Result<RowFiniteMatrix> {
    let mut lines = Lines::new(text);
    let (line, value) = lines.header("field")?;
    let spec = parse_field(line, value)?;
    let (line, value) = lines.header("rows")?;
    let rows_dim = parse_dim(line, value)?;
    let (line, value) = lines.header("cols")?;
    let cols_dim = parse_dim(line, value)?;
    let (kind_line, kind) = lines.header("kind")?;

    let reject_trailing = |lines: &mut Lines| -> Result<()> {
        if let Some((line, content)) = lines.next() {
            return Err(Error::Parse {
                line,
                reason: format!("unexpected trailing content {content:?}"),
            });
        }
        Ok(())
    };

    if kind == "identity" {
        reject_trailing(&mut lines)?;
        if rows_dim != cols_dim {
            return Err(Error::Parse {
                line: kind_line,
                reason: format!("identity needs rows = cols, got {rows_dim} and {cols_dim}"),
            });
        }
        return Ok(RowFiniteMatrix::identity(spec, rows_dim));
    }
    if let Some(k) = kind.strip_prefix("shift") {
        reject_trailing(&mut lines)?;
        let k = parse_usize(kind_line, k.trim(), "shift offset")?;
        return RowFiniteMatrix::shift(spec, rows_dim, cols_dim, k)
            .map_err(|e| Error::Parse { line: kind_line, reason: e.to_string() });
    }
    if kind == "diagblock" {
        let (line, value) = lines.header("block")?;
        let block = parse_scalar_list(line, spec, value)?;
        reject_trailing(&mut lines)?;
        return RowFiniteMatrix::diag_block(spec, rows_dim, cols_dim, block)
            .map_err(|e| Error::Parse { line, reason: e.to_string() });
    }
    if kind != "triplets" {
        return Err(Error::Parse {
            line: kind_line,
            reason: format!(
                "matrix kind must be triplets, identity, shift <k> or diagblock, got {kind:?}"
            ),
        });
    }

    let mut triplets: Vec<(usize, usize, Scalar)> = Vec::new();
    while let Some((line, content)) = lines.next() {
        let mut tokens = content.split_whitespace();
        let (Some(row), Some(col), Some(value), None) =
            (tokens.next(), tokens.next(), tokens.next(), tokens.next())
        else {
            return Err(Error::Parse {
                line,
                reason: format!("triplet line must be `<row> <col> <scalar>`, got {content:?}"),
            });
        };
        let row = parse_usize(line, row, "row index")?;
        let col = parse_usize(line, col, "column index")?;
        let value = parse_scalar(line, spec, value)?;
        if value.is_zero() {
            return Err(Error::FileInvariant {
                line,
                reason: format!("stored zero at ({row}, {col})"),
            });
        }
        if let Some(&(prow, pcol, _)) = triplets.last() {
            if (row, col) == (prow, pcol) {
                return Err(Error::FileInvariant {
                    line,
                    reason: format!("duplicate coordinate ({row}, {col})"),
                });
            }
            if (row, col) < (prow, pcol) {
                return Err(Error::FileInvariant {
                    line,
                    reason: format!(
                        "triplets must be sorted row-major: ({prow}, {pcol}) then ({row}, {col})"
                    ),
                });
            }
        }
        if !rows_dim.contains(row) {
            return Err(Error::FileInvariant {
                line,
                reason: format!("row {row} out of range for rows {rows_dim}"),
            });
        }
        if !cols_dim.contains(col) {
            return Err(Error::FileInvariant {
                line,
                reason: format!("column {col} out of range for cols {cols_dim}"),
            });
        }
        triplets.push((row, col, value));
    }

    let mut rows: Vec<(usize, FinSuppVec)> = Vec::new();
    let mut current: Option<(usize, Vec<(usize, Scalar)>)> = None;
    for (row, col, value) in triplets {
        match &mut current {
            Some((j, entries)) if *j == row => entries.push((col, value)),
            _ => {
                if let Some((j, entries)) = current.take() {
                    rows.push((j, FinSuppVec::from_entries(spec, cols_dim, entries)?));
                }
                current = Some((row, vec![(col, value)]));
            }
        }
    }
    if let Some((j, entries)) = current.take() {
        rows.push((j, FinSuppVec::from_entries(spec, cols_dim, entries)?));
    }
    RowFiniteMatrix::explicit(spec, rows_dim, cols_dim, rows)
}

/// Canonical serialization of a matrix.
pub fn serialize_matrix(m: &RowFiniteMatrix) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "field: {}", m.spec());
    let _ = writeln!(out, "rows: {}", m.row_dim());
    let _ = writeln!(out, "cols: {}", m.col_dim());
    match m.body() {
        MatrixBody::Identity => {
            let _ = writeln!(out, "kind: identity");
        }
        MatrixBody::Shift(k) => {
            let _ = writeln!(out, "kind: shift {k}");
        }
        MatrixBody::DiagBlock(block) => {
            let _ = writeln!(out, "kind: diagblock");
            let _ = writeln!(out, "block:{}", scalar_list(block));
        }
        MatrixBody::ExplicitRows(rows) => {
            let _ = writeln!(out, "kind: triplets");
            for (j, row) in rows {
                for (i, v) in row.iter() {
                    let _ = writeln!(out, "{j} {i} {v}");
                }
            }
        }
    }
    out
}
