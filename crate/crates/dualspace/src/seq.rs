//! The two sequence-space element types over an exact field: finite-support
//! vectors (elements of `F^(α)`) and product vectors (elements of `F^α`),
//! together with the canonical pairing between them.
//!
//! Product vectors are represented as a finite prefix plus a decidable tail
//! rule — all zeros, or a repeating block. Any coordinate is computable and
//! equality is decidable by comparing coordinates up to
//! `len(prefix_u) + len(prefix_v) + lcm(period_u, period_v)`, which is a
//! complete bound for this representation class.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};

/// An index dimension: a natural number or `ω`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Dim {
    Finite(usize),
    Omega,
}

impl Dim {
    pub fn contains(self, index: usize) -> bool {
        match self {
            Dim::Finite(n) => index < n,
            Dim::Omega => true,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Dim::Finite(_))
    }

    pub(crate) fn check(self, other: Dim) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self, found: other })
        }
    }

    pub(crate) fn check_index(self, index: usize) -> Result<()> {
        if self.contains(index) {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index, dim: self })
        }
    }
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dim::Finite(n) => write!(f, "{n}"),
            Dim::Omega => write!(f, "omega"),
        }
    }
}

/// A finitely-supported sequence: only the nonzero coordinates are stored.
///
/// Structural equality is semantic equality because the representation is
/// canonical (no stored zeros).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinSuppVec {
    spec: FieldSpec,
    dim: Dim,
    entries: BTreeMap<usize, Scalar>,
}

impl FinSuppVec {
    pub fn zero(spec: FieldSpec, dim: Dim) -> Self {
        FinSuppVec { spec, dim, entries: BTreeMap::new() }
    }

    /// The basis vector with a single 1 at `index`.
    pub fn delta(spec: FieldSpec, dim: Dim, index: usize) -> Result<Self> {
        dim.check_index(index)?;
        let mut entries = BTreeMap::new();
        entries.insert(index, spec.one());
        Ok(FinSuppVec { spec, dim, entries })
    }

    /// Accumulates `(index, value)` contributions coordinatewise; zeros are
    /// dropped so the result is canonical.
    pub fn from_entries<I>(spec: FieldSpec, dim: Dim, iter: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, Scalar)>,
    {
        let mut entries: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (index, value) in iter {
            spec.check(value.spec())?;
            dim.check_index(index)?;
            let acc = match entries.remove(&index) {
                Some(prev) => prev.add(&value)?,
                None => value,
            };
            if !acc.is_zero() {
                entries.insert(index, acc);
            }
        }
        Ok(FinSuppVec { spec, dim, entries })
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// The coordinate at `index` (zero when unsupported).
    pub fn get(&self, index: usize) -> Scalar {
        self.entries.get(&index).cloned().unwrap_or_else(|| self.spec.zero())
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.entries.iter().map(|(&i, s)| (i, s))
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.keys().copied()
    }

    /// One past the largest support index; 0 for the zero vector.
    pub fn support_bound(&self) -> usize {
        self.entries.keys().next_back().map_or(0, |&i| i + 1)
    }

    pub fn add(&self, rhs: &FinSuppVec) -> Result<FinSuppVec> {
        self.spec.check(rhs.spec)?;
        self.dim.check(rhs.dim)?;
        let mut entries = self.entries.clone();
        for (&i, v) in &rhs.entries {
            let acc = match entries.remove(&i) {
                Some(prev) => prev.add(v)?,
                None => v.clone(),
            };
            if !acc.is_zero() {
                entries.insert(i, acc);
            }
        }
        Ok(FinSuppVec { spec: self.spec, dim: self.dim, entries })
    }

    pub fn scale(&self, c: &Scalar) -> Result<FinSuppVec> {
        self.spec.check(c.spec())?;
        if c.is_zero() {
            return Ok(FinSuppVec::zero(self.spec, self.dim));
        }
        let mut entries = BTreeMap::new();
        for (&i, v) in &self.entries {
            entries.insert(i, c.mul(v)?);
        }
        Ok(FinSuppVec { spec: self.spec, dim: self.dim, entries })
    }

    pub fn neg(&self) -> FinSuppVec {
        let entries = self.entries.iter().map(|(&i, v)| (i, v.neg())).collect();
        FinSuppVec { spec: self.spec, dim: self.dim, entries }
    }

    /// Checked equality per the vector contract: the operands must agree on
    /// field and dimension, otherwise this is an error rather than `false`.
    pub fn eq_checked(&self, rhs: &FinSuppVec) -> Result<bool> {
        self.spec.check(rhs.spec)?;
        self.dim.check(rhs.dim)?;
        Ok(self.entries == rhs.entries)
    }

    /// The natural embedding of `F^(α)` into `F^α`.
    pub fn embed(&self) -> ProdVec {
        let bound = self.support_bound();
        let prefix = (0..bound).map(|i| self.get(i)).collect();
        ProdVec::new(self.spec, self.dim, prefix, TailSpec::Zeros)
            .expect("finite support embeds within its own dimension")
    }
}

/// Tail rule for a product vector: zeros forever, or a repeating block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TailSpec {
    Zeros,
    Repeat(Vec<Scalar>),
}

/// An element of the product space `F^α`: a stored prefix followed by a
/// decidable tail. Coordinate `i` is `prefix[i]` when `i < len(prefix)`,
/// otherwise the tail rule applies.
///
/// Canonical form: a `Repeat` block is reduced to its minimal period, an
/// all-zero block collapses to `Zeros`, and trailing zeros of the prefix are
/// trimmed when the tail is `Zeros`. Finite-dimensional vectors always carry
/// a `Zeros` tail (coordinates beyond the prefix are zero).
#[derive(Clone, Debug)]
pub struct ProdVec {
    spec: FieldSpec,
    dim: Dim,
    prefix: Vec<Scalar>,
    tail: TailSpec,
}

impl ProdVec {
    pub fn new(spec: FieldSpec, dim: Dim, prefix: Vec<Scalar>, tail: TailSpec) -> Result<Self> {
        for s in &prefix {
            spec.check(s.spec())?;
        }
        if let Dim::Finite(n) = dim {
            if prefix.len() > n {
                return Err(Error::Invalid(format!(
                    "prefix of length {} exceeds finite dimension {n}",
                    prefix.len()
                )));
            }
            if !matches!(tail, TailSpec::Zeros) {
                return Err(Error::Invalid(
                    "finite-dimensional vector cannot carry a repeating tail".into(),
                ));
            }
        }
        let tail = match tail {
            TailSpec::Zeros => TailSpec::Zeros,
            TailSpec::Repeat(block) => {
                if block.is_empty() {
                    return Err(Error::Invalid("repeat block must be nonempty".into()));
                }
                for s in &block {
                    spec.check(s.spec())?;
                }
                if block.iter().all(Scalar::is_zero) {
                    TailSpec::Zeros
                } else {
                    TailSpec::Repeat(minimal_period(block))
                }
            }
        };
        let mut prefix = prefix;
        if matches!(tail, TailSpec::Zeros) {
            while prefix.last().is_some_and(Scalar::is_zero) {
                prefix.pop();
            }
        }
        Ok(ProdVec { spec, dim, prefix, tail })
    }

    pub fn zero(spec: FieldSpec, dim: Dim) -> Self {
        ProdVec { spec, dim, prefix: Vec::new(), tail: TailSpec::Zeros }
    }

    /// A vector that is `block` repeated from coordinate 0 on.
    pub fn repeating(spec: FieldSpec, block: Vec<Scalar>) -> Result<Self> {
        ProdVec::new(spec, Dim::Omega, Vec::new(), TailSpec::Repeat(block))
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    pub fn prefix(&self) -> &[Scalar] {
        &self.prefix
    }

    pub fn tail(&self) -> &TailSpec {
        &self.tail
    }

    /// Tail period; 1 for `Zeros` (the constant-zero block).
    pub fn period(&self) -> usize {
        match &self.tail {
            TailSpec::Zeros => 1,
            TailSpec::Repeat(block) => block.len(),
        }
    }

    /// The coordinate at `index`, per the prefix/tail rule.
    pub fn get(&self, index: usize) -> Result<Scalar> {
        self.dim.check_index(index)?;
        Ok(self.get_unchecked(index))
    }

    fn get_unchecked(&self, index: usize) -> Scalar {
        if index < self.prefix.len() {
            return self.prefix[index].clone();
        }
        match &self.tail {
            TailSpec::Zeros => self.spec.zero(),
            TailSpec::Repeat(block) => block[(index - self.prefix.len()) % block.len()].clone(),
        }
    }

    pub fn add(&self, rhs: &ProdVec) -> Result<ProdVec> {
        self.spec.check(rhs.spec)?;
        self.dim.check(rhs.dim)?;
        let start = self.prefix.len().max(rhs.prefix.len());
        let mut prefix = Vec::with_capacity(start);
        for i in 0..start {
            prefix.push(self.get_unchecked(i).add(&rhs.get_unchecked(i))?);
        }
        let tail = if self.tail == TailSpec::Zeros && rhs.tail == TailSpec::Zeros {
            TailSpec::Zeros
        } else {
            // Beyond both prefixes the sum is periodic with the lcm period.
            let period = self.period().lcm(&rhs.period());
            let mut block = Vec::with_capacity(period);
            for t in 0..period {
                block.push(self.get_unchecked(start + t).add(&rhs.get_unchecked(start + t))?);
            }
            TailSpec::Repeat(block)
        };
        ProdVec::new(self.spec, self.dim, prefix, tail)
    }

    pub fn scale(&self, c: &Scalar) -> Result<ProdVec> {
        self.spec.check(c.spec())?;
        if c.is_zero() {
            return Ok(ProdVec::zero(self.spec, self.dim));
        }
        let prefix = self.prefix.iter().map(|v| c.mul(v)).collect::<Result<_>>()?;
        let tail = match &self.tail {
            TailSpec::Zeros => TailSpec::Zeros,
            TailSpec::Repeat(block) => {
                TailSpec::Repeat(block.iter().map(|v| c.mul(v)).collect::<Result<_>>()?)
            }
        };
        ProdVec::new(self.spec, self.dim, prefix, tail)
    }

    pub fn neg(&self) -> ProdVec {
        let prefix = self.prefix.iter().map(Scalar::neg).collect();
        let tail = match &self.tail {
            TailSpec::Zeros => TailSpec::Zeros,
            TailSpec::Repeat(block) => TailSpec::Repeat(block.iter().map(Scalar::neg).collect()),
        };
        ProdVec { spec: self.spec, dim: self.dim, prefix, tail }
    }

    /// Coordinates agreeing up to this bound agree everywhere: beyond both
    /// prefixes each side is periodic, so one lcm period decides.
    pub fn eq_bound(&self, rhs: &ProdVec) -> usize {
        let bound = self.prefix.len() + rhs.prefix.len() + self.period().lcm(&rhs.period());
        match self.dim {
            Dim::Finite(n) => bound.min(n),
            Dim::Omega => bound,
        }
    }

    /// Checked equality: errors on field/dimension mismatch, otherwise decides
    /// coordinatewise up to [`ProdVec::eq_bound`].
    pub fn eq_checked(&self, rhs: &ProdVec) -> Result<bool> {
        self.spec.check(rhs.spec)?;
        self.dim.check(rhs.dim)?;
        let bound = self.eq_bound(rhs);
        for i in 0..bound {
            if self.get_unchecked(i) != rhs.get_unchecked(i) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_zero(&self) -> bool {
        // Canonical form makes this structural.
        self.prefix.is_empty() && self.tail == TailSpec::Zeros
    }
}

/// Semantic equality of the represented sequences (false on any field or
/// dimension mismatch). Use [`ProdVec::eq_checked`] to surface mismatches.
impl PartialEq for ProdVec {
    fn eq(&self, rhs: &ProdVec) -> bool {
        self.spec == rhs.spec && self.dim == rhs.dim && self.eq_checked(rhs).unwrap_or(false)
    }
}

impl Eq for ProdVec {}

/// Reduces a repeat block to its minimal period. The minimal period of the
/// generated sequence always divides the block length.
fn minimal_period(block: Vec<Scalar>) -> Vec<Scalar> {
    let n = block.len();
    for d in 1..n {
        if n.is_multiple_of(d) && block.iter().enumerate().all(|(i, v)| *v == block[i % d]) {
            return block[..d].to_vec();
        }
    }
    block
}

/// The canonical pairing `⟨x, y⟩ = Σ_{i ∈ supp(x)} x_i · y_i`.
///
/// The sum is finite because `x` has finite support; this is evaluation of
/// the functional `y` on the finite-support vector `x`.
pub fn pair(x: &FinSuppVec, y: &ProdVec) -> Result<Scalar> {
    x.spec().check(y.spec())?;
    x.dim().check(y.dim())?;
    let mut acc = x.spec().zero();
    for (i, xi) in x.iter() {
        acc = acc.add(&xi.mul(&y.get_unchecked(i))?)?;
    }
    Ok(acc)
}
