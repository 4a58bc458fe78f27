//! Deterministic case generation for the law suites.
//!
//! Every case gets its own ChaCha8 stream keyed by `(seed, domain, case)`,
//! so cases are independent and reproducible regardless of the order they
//! run in. Sampling goes through raw `next_u64` with rejection only — no
//! distribution code from the rand ecosystem — which keeps reports
//! byte-stable across dependency upgrades and platforms.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::{FieldSpec, Scalar};
use crate::rowfinite::RowFiniteMatrix;
use crate::seq::{Dim, FinSuppVec, ProdVec, TailSpec};

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn fnv1a(s: &str) -> u64 {
    let mut hash = 0xCBF2_9CE4_8422_2325u64;
    for b in s.bytes() {
        hash ^= u64::from(b);
        hash = hash.wrapping_mul(0x0000_0100_0000_01B3);
    }
    hash
}

/// A per-case random stream.
pub struct CaseRng {
    inner: ChaCha8Rng,
}

impl CaseRng {
    pub fn new(seed: u64, domain: &str, case: u64) -> Self {
        let mut state = seed ^ fnv1a(domain) ^ case.wrapping_mul(0xA24B_AED4_963E_E407);
        let mut key = [0u8; 32];
        for chunk in key.chunks_mut(8) {
            chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
        }
        CaseRng { inner: ChaCha8Rng::from_seed(key) }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform in `[0, n)` by rejection; `n` must be positive.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0, "below(0)");
        let zone = u64::MAX - (u64::MAX % n);
        loop {
            let v = self.next_u64();
            if v < zone {
                return v % n;
            }
        }
    }

    pub fn usize_below(&mut self, n: usize) -> usize {
        self.below(n as u64) as usize
    }

    /// Uniform in `[lo, hi]`.
    pub fn range(&mut self, lo: usize, hi: usize) -> usize {
        lo + self.usize_below(hi - lo + 1)
    }

    /// True with probability `num/den`.
    pub fn chance(&mut self, num: u64, den: u64) -> bool {
        self.below(den) < num
    }

    pub fn scalar(&mut self, spec: FieldSpec) -> Scalar {
        match spec {
            FieldSpec::Prime(p) => spec.from_i64(self.below(u64::from(p)) as i64),
            FieldSpec::Rationals => {
                let numer = self.below(25) as i64 - 12;
                let denom = self.below(12) as i64 + 1;
                Scalar::rational(numer, denom).expect("positive denominator")
            }
        }
    }

    pub fn nonzero_scalar(&mut self, spec: FieldSpec) -> Scalar {
        loop {
            let s = self.scalar(spec);
            if !s.is_zero() {
                return s;
            }
        }
    }

    /// A finite-support vector with up to `max_support` nonzero entries;
    /// indices are drawn below `horizon` (clamped to a finite dimension).
    pub fn fin_supp(
        &mut self,
        spec: FieldSpec,
        dim: Dim,
        max_support: usize,
        horizon: usize,
    ) -> FinSuppVec {
        let horizon = match dim {
            Dim::Finite(n) => horizon.min(n),
            Dim::Omega => horizon,
        };
        if horizon == 0 {
            return FinSuppVec::zero(spec, dim);
        }
        let count = self.usize_below(max_support.min(horizon) + 1);
        let mut indices = std::collections::BTreeSet::new();
        while indices.len() < count {
            indices.insert(self.usize_below(horizon));
        }
        let entries: Vec<(usize, Scalar)> = indices
            .into_iter()
            .map(|i| (i, self.nonzero_scalar(spec)))
            .collect();
        FinSuppVec::from_entries(spec, dim, entries).expect("generated entries are in range")
    }

    /// A product vector; ω dimensions get a zeros or repeating tail.
    pub fn prod_vec(
        &mut self,
        spec: FieldSpec,
        dim: Dim,
        max_prefix: usize,
        max_period: usize,
    ) -> ProdVec {
        let prefix_cap = match dim {
            Dim::Finite(n) => max_prefix.min(n),
            Dim::Omega => max_prefix,
        };
        let prefix_len = self.usize_below(prefix_cap + 1);
        let prefix: Vec<Scalar> = (0..prefix_len).map(|_| self.scalar(spec)).collect();
        let tail = match dim {
            Dim::Finite(_) => TailSpec::Zeros,
            Dim::Omega => {
                if self.chance(1, 2) {
                    TailSpec::Zeros
                } else {
                    let period = self.range(1, max_period.max(1));
                    TailSpec::Repeat((0..period).map(|_| self.scalar(spec)).collect())
                }
            }
        };
        ProdVec::new(spec, dim, prefix, tail).expect("generated prefix fits the dimension")
    }

    /// A matrix with explicit rows: up to `max_rows` listed rows below
    /// `row_horizon`, each with up to `max_nnz` entries below `col_horizon`.
    #[allow(clippy::too_many_arguments)]
    pub fn explicit_matrix(
        &mut self,
        spec: FieldSpec,
        row_dim: Dim,
        col_dim: Dim,
        max_rows: usize,
        max_nnz: usize,
        row_horizon: usize,
        col_horizon: usize,
    ) -> RowFiniteMatrix {
        let row_horizon = match row_dim {
            Dim::Finite(b) => row_horizon.min(b),
            Dim::Omega => row_horizon,
        };
        if row_horizon == 0 {
            return RowFiniteMatrix::zero(spec, row_dim, col_dim);
        }
        let count = self.usize_below(max_rows.min(row_horizon) + 1);
        let mut indices = std::collections::BTreeSet::new();
        while indices.len() < count {
            indices.insert(self.usize_below(row_horizon));
        }
        let rows: Vec<(usize, FinSuppVec)> = indices
            .into_iter()
            .map(|j| (j, self.fin_supp(spec, col_dim, max_nnz, col_horizon)))
            .collect();
        RowFiniteMatrix::explicit(spec, row_dim, col_dim, rows)
            .expect("generated rows are sorted and in range")
    }

    /// One of the ω×ω matrix bodies: identity, shift, periodic diagonal, or
    /// explicit rows.
    pub fn rule_matrix_omega(&mut self, spec: FieldSpec) -> RowFiniteMatrix {
        match self.below(4) {
            0 => RowFiniteMatrix::identity(spec, Dim::Omega),
            1 => {
                let k = self.usize_below(8);
                RowFiniteMatrix::shift(spec, Dim::Omega, Dim::Omega, k)
                    .expect("omega columns accept any shift")
            }
            2 => {
                let len = self.range(1, 4);
                let block = (0..len).map(|_| self.scalar(spec)).collect();
                RowFiniteMatrix::diag_block(spec, Dim::Omega, Dim::Omega, block)
                    .expect("nonempty block")
            }
            _ => self.explicit_matrix(spec, Dim::Omega, Dim::Omega, 6, 6, 24, 24),
        }
    }

    /// A matrix with linearly independent rows, built in row-echelon shape:
    /// strictly increasing pivot columns with nonzero pivots.
    pub fn echelon_matrix(&mut self, spec: FieldSpec, rows: usize, cols: usize) -> RowFiniteMatrix {
        assert!(rows <= cols, "echelon shape needs rows <= cols");
        let mut pivots = std::collections::BTreeSet::new();
        while pivots.len() < rows {
            pivots.insert(self.usize_below(cols));
        }
        let pivots: Vec<usize> = pivots.into_iter().collect();
        let mut out = Vec::with_capacity(rows);
        for (r, &p) in pivots.iter().enumerate() {
            let mut entries = vec![(p, self.nonzero_scalar(spec))];
            for c in (p + 1)..cols {
                if self.chance(1, 3) {
                    let v = self.scalar(spec);
                    if !v.is_zero() {
                        entries.push((c, v));
                    }
                }
            }
            let row = FinSuppVec::from_entries(spec, Dim::Finite(cols), entries)
                .expect("entries below cols");
            out.push((r, row));
        }
        RowFiniteMatrix::explicit(spec, Dim::Finite(rows), Dim::Finite(cols), out)
            .expect("echelon rows are valid")
    }
}
