//! The canonical quotient tower over `F^ω` and its inverse-limit threads.
//!
//! `V_n` is the subspace of sequences whose first `n` coordinates vanish; the
//! quotient `F^ω / V_n` is coordinatized by the first `n` entries, and the
//! tower's truncation maps just forget trailing coordinates. A [`Thread`] is
//! a family of stages compatible under truncation — an inverse-limit element
//! observed to finite depth.

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::seq::{Dim, ProdVec, TailSpec};

/// The canonical tower `V_0 ⊇ V_1 ⊇ …` for one field.
///
/// Membership in `V_n` is the statement "the first `n` coordinates are zero";
/// the chain ordering is structural.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuotientTower {
    spec: FieldSpec,
}

impl QuotientTower {
    pub fn new(spec: FieldSpec) -> Self {
        QuotientTower { spec }
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    /// Whether `y ∈ V_n`.
    pub fn v_n_contains(&self, y: &ProdVec, n: usize) -> Result<bool> {
        self.spec.check(y.spec())?;
        for i in 0..n {
            if !y.get(i)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The class of `y` modulo `V_n` in coordinates: `(y_0, …, y_{n-1})`.
    pub fn project(&self, y: &ProdVec, n: usize) -> Result<Vec<Scalar>> {
        self.spec.check(y.spec())?;
        project(y, n)
    }

    pub fn to_thread(&self, y: &ProdVec, depth: usize) -> Result<Thread> {
        self.spec.check(y.spec())?;
        to_thread(y, depth)
    }
}

/// `(y_0, …, y_{n-1})`, the image of `y` in the depth-`n` quotient.
pub fn project(y: &ProdVec, n: usize) -> Result<Vec<Scalar>> {
    if n > 0 {
        y.dim().check_index(n - 1)?;
    }
    (0..n).map(|i| y.get(i)).collect()
}

/// Truncation to the first `m` coordinates.
pub fn restrict(stage: &[Scalar], m: usize) -> Result<Vec<Scalar>> {
    if m > stage.len() {
        return Err(Error::BadTruncation { len: stage.len(), want: m });
    }
    Ok(stage[..m].to_vec())
}

/// True iff every stage truncates onto every shallower stage
/// (and stage `n` has length `n`).
pub fn check_compat(stages: &[Vec<Scalar>]) -> bool {
    for (idx, stage) in stages.iter().enumerate() {
        if stage.len() != idx + 1 {
            return false;
        }
        if idx > 0 && stage[..idx] != stages[idx - 1][..] {
            return false;
        }
    }
    true
}

/// A compatible family of stages: `stages[n-1]` is the class of one sequence
/// modulo `V_n`, for `n = 1..=depth`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Thread {
    spec: FieldSpec,
    stages: Vec<Vec<Scalar>>,
}

impl Thread {
    /// Validates lengths, field and the compatibility condition.
    pub fn new(spec: FieldSpec, stages: Vec<Vec<Scalar>>) -> Result<Self> {
        for (idx, stage) in stages.iter().enumerate() {
            if stage.len() != idx + 1 {
                return Err(Error::IncompatibleThread(format!(
                    "stage {} has length {}, want {}",
                    idx + 1,
                    stage.len(),
                    idx + 1
                )));
            }
            for s in stage {
                spec.check(s.spec())?;
            }
        }
        if !check_compat(&stages) {
            return Err(Error::IncompatibleThread(
                "stages do not truncate onto each other".into(),
            ));
        }
        Ok(Thread { spec, stages })
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn depth(&self) -> usize {
        self.stages.len()
    }

    pub fn stages(&self) -> &[Vec<Scalar>] {
        &self.stages
    }

    pub fn stage(&self, n: usize) -> Option<&[Scalar]> {
        (n >= 1).then(|| self.stages.get(n - 1).map(Vec::as_slice)).flatten()
    }
}

/// Observes `y` through the tower down to `depth`: stage `n` is
/// `project(y, n)`. Compatibility holds by construction.
pub fn to_thread(y: &ProdVec, depth: usize) -> Result<Thread> {
    if y.dim() != Dim::Omega {
        return Err(Error::DimensionMismatch { expected: Dim::Omega, found: y.dim() });
    }
    let stages = (1..=depth).map(|n| project(y, n)).collect::<Result<Vec<_>>>()?;
    Ok(Thread { spec: y.spec(), stages })
}

/// The canonical section back into `F^ω`: the unique sequence agreeing with
/// every stage on its coordinates, extended by zero beyond the thread's
/// depth. Inverse to [`to_thread`] on the observed coordinates.
pub fn from_thread(t: &Thread) -> ProdVec {
    let prefix = t.stages.last().cloned().unwrap_or_default();
    ProdVec::new(t.spec, Dim::Omega, prefix, TailSpec::Zeros)
        .expect("thread stages are field-checked at construction")
}
