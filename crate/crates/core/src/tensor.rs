//! Dense real symmetric tensors and their vector contractions.
//!
//! A [`SymTensor`] stores all `n^m` entries of an order-`m`, dimension-`n`
//! tensor whose entries are invariant under every permutation of the index
//! tuple. Storage is deliberately dense: at desk scale the memory cost is
//! trivial and the contraction loops stay simple. Construction is rejected
//! above a configurable entry cap (default 10^8).

use num_complex::Complex64;
use thiserror::Error;

use crate::linalg::SymMatrix;
use crate::sample;

/// Default cap on `n^m` dense entries.
pub const DEFAULT_ENTRY_CAP: usize = 100_000_000;

/// Deviation from exact symmetry accepted by the strict constructor.
pub const STRICT_SYMMETRY_TOL: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum TensorError {
    #[error("expected n^m = {expected} entries, got {got}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("tensor entries must be finite")]
    NonFinite,
    #[error("order and dimension must be at least 1")]
    EmptyShape,
    #[error("dense storage needs {needed} entries, above the cap of {cap}")]
    TooLarge { needed: u128, cap: usize },
    #[error("no identity tensor exists for odd order {0}")]
    OddOrderIdentity(usize),
    #[error("input deviates from symmetry by {deviation:e} (strict limit {limit:e})")]
    AsymmetricInput { deviation: f64, limit: f64 },
    #[error("contraction count {times} out of range 1..={order}")]
    TimesOutOfRange { times: usize, order: usize },
    #[error("vector length {got} does not match tensor dimension {expected}")]
    Dimension { expected: usize, got: usize },
    #[error("operation requires order >= {needed}, tensor has order {got}")]
    OrderTooSmall { needed: usize, got: usize },
}

/// Dense order-`m`, dimension-`n` real symmetric tensor.
///
/// Entries are addressed by 0-based multi-index `(i_1, ..., i_m)` with linear
/// layout `((i_1 n + i_2) n + i_3) ...`. The struct is immutable after
/// construction and safe to share across threads.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTensor {
    order: usize,
    dim: usize,
    entries: Vec<f64>,
}

fn checked_len(order: usize, dim: usize, cap: usize) -> Result<usize, TensorError> {
    if order == 0 || dim == 0 {
        return Err(TensorError::EmptyShape);
    }
    let needed = (dim as u128).checked_pow(order as u32).unwrap_or(u128::MAX);
    if needed > cap as u128 {
        return Err(TensorError::TooLarge { needed, cap });
    }
    Ok(needed as usize)
}

fn factorial(m: usize) -> usize {
    (1..=m).product()
}

/// Calls `f` with every permutation of `work` (Heap's algorithm).
fn for_each_permutation(work: &mut [usize], mut f: impl FnMut(&[usize])) {
    let m = work.len();
    let mut c = vec![0usize; m];
    f(work);
    let mut i = 1;
    while i < m {
        if c[i] < i {
            if i % 2 == 0 {
                work.swap(0, i);
            } else {
                work.swap(c[i], i);
            }
            f(work);
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

impl SymTensor {
    /// Symmetrizes a dense raw array: each output entry is the mean of the
    /// raw values over all permutations of its index tuple. Already-symmetric
    /// input passes through unchanged up to floating rounding.
    pub fn from_raw(order: usize, dim: usize, raw: Vec<f64>) -> Result<Self, TensorError> {
        Self::from_raw_capped(order, dim, raw, DEFAULT_ENTRY_CAP)
    }

    pub fn from_raw_capped(
        order: usize,
        dim: usize,
        raw: Vec<f64>,
        cap: usize,
    ) -> Result<Self, TensorError> {
        let len = checked_len(order, dim, cap)?;
        if raw.len() != len {
            return Err(TensorError::SizeMismatch {
                expected: len,
                got: raw.len(),
            });
        }
        if raw.iter().any(|v| !v.is_finite()) {
            return Err(TensorError::NonFinite);
        }
        // One mean per sorted index group, written to every permutation, so
        // the output is bitwise invariant under index permutations.
        let fact = factorial(order) as f64;
        let mut entries = vec![0.0; len];
        let mut group = vec![0usize; order];
        let mut scratch = vec![0usize; order];
        loop {
            scratch.copy_from_slice(&group);
            let mut sum = 0.0;
            let mut all_equal = true;
            let first = raw[encode_index(&group, dim)];
            for_each_permutation(&mut scratch, |p| {
                let v = raw[encode_index(p, dim)];
                sum += v;
                all_equal &= v == first;
            });
            let mean = if all_equal { first } else { sum / fact };
            scratch.copy_from_slice(&group);
            for_each_permutation(&mut scratch, |p| {
                entries[encode_index(p, dim)] = mean;
            });
            if !next_sorted_index(&mut group, dim) {
                break;
            }
        }
        Ok(Self {
            order,
            dim,
            entries,
        })
    }

    /// Strict constructor: rejects raw input deviating from exact symmetry by
    /// more than [`STRICT_SYMMETRY_TOL`], then stores the symmetrized mean.
    pub fn from_symmetric_raw(
        order: usize,
        dim: usize,
        raw: Vec<f64>,
    ) -> Result<Self, TensorError> {
        let len = checked_len(order, dim, DEFAULT_ENTRY_CAP)?;
        if raw.len() != len {
            return Err(TensorError::SizeMismatch {
                expected: len,
                got: raw.len(),
            });
        }
        if raw.iter().any(|v| !v.is_finite()) {
            return Err(TensorError::NonFinite);
        }
        let mut idx = vec![0usize; order];
        let mut scratch = vec![0usize; order];
        let mut deviation = 0.0f64;
        for (lin, v) in raw.iter().enumerate() {
            decode_index(lin, dim, &mut idx);
            scratch.copy_from_slice(&idx);
            for_each_permutation(&mut scratch, |p| {
                deviation = deviation.max((raw[encode_index(p, dim)] - v).abs());
            });
        }
        if deviation > STRICT_SYMMETRY_TOL {
            return Err(TensorError::AsymmetricInput {
                deviation,
                limit: STRICT_SYMMETRY_TOL,
            });
        }
        Self::from_raw(order, dim, raw)
    }

    /// Builds an exactly symmetric tensor from values on sorted index groups
    /// (0-based, non-decreasing). Each value is written to every permutation
    /// of its group; unlisted groups are zero.
    pub fn from_sorted_entries(
        order: usize,
        dim: usize,
        groups: &[(Vec<usize>, f64)],
    ) -> Result<Self, TensorError> {
        let len = checked_len(order, dim, DEFAULT_ENTRY_CAP)?;
        let mut entries = vec![0.0; len];
        let mut scratch = vec![0usize; order];
        for (group, value) in groups {
            if group.len() != order || group.iter().any(|&i| i >= dim) {
                return Err(TensorError::Dimension {
                    expected: order,
                    got: group.len(),
                });
            }
            if !value.is_finite() {
                return Err(TensorError::NonFinite);
            }
            scratch.copy_from_slice(group);
            for_each_permutation(&mut scratch, |p| {
                entries[encode_index(p, dim)] = *value;
            });
        }
        Ok(Self {
            order,
            dim,
            entries,
        })
    }

    pub fn zeros(order: usize, dim: usize) -> Result<Self, TensorError> {
        let len = checked_len(order, dim, DEFAULT_ENTRY_CAP)?;
        Ok(Self {
            order,
            dim,
            entries: vec![0.0; len],
        })
    }

    /// The even-order identity tensor `E` with `E x^{m-1} = x` on the unit
    /// sphere: symmetrized products of Kronecker deltas over index pairs.
    pub fn identity(order: usize, dim: usize) -> Result<Self, TensorError> {
        if order % 2 != 0 {
            return Err(TensorError::OddOrderIdentity(order));
        }
        let len = checked_len(order, dim, DEFAULT_ENTRY_CAP)?;
        let fact = factorial(order) as f64;
        let mut entries = vec![0.0; len];
        let mut idx = vec![0usize; order];
        let mut scratch = vec![0usize; order];
        for (lin, slot) in entries.iter_mut().enumerate() {
            decode_index(lin, dim, &mut idx);
            scratch.copy_from_slice(&idx);
            let mut hits = 0usize;
            for_each_permutation(&mut scratch, |p| {
                let paired = p.chunks_exact(2).all(|pair| pair[0] == pair[1]);
                if paired {
                    hits += 1;
                }
            });
            *slot = hits as f64 / fact;
        }
        Ok(Self {
            order,
            dim,
            entries,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    /// Entry at a 0-based multi-index.
    pub fn get(&self, idx: &[usize]) -> f64 {
        assert_eq!(idx.len(), self.order, "multi-index arity mismatch");
        self.entries[encode_index(idx, self.dim)]
    }

    /// General `times`-fold product with `x`, returning a tensor of order
    /// `m - times`. `times` must be in `1..=m`.
    pub fn multiply(&self, x: &[f64], times: usize) -> Result<SymTensor, TensorError> {
        if x.len() != self.dim {
            return Err(TensorError::Dimension {
                expected: self.dim,
                got: x.len(),
            });
        }
        if times < 1 || times > self.order {
            return Err(TensorError::TimesOutOfRange {
                times,
                order: self.order,
            });
        }
        let n = self.dim;
        let r = self.order - times;
        let out_len = n.pow(r as u32);
        let suffix_len = n.pow(times as u32);
        let mut out = vec![0.0; out_len];
        let mut digits = vec![0usize; times];
        for s in 0..suffix_len {
            decode_index(s, n, &mut digits);
            let w: f64 = digits.iter().map(|&k| x[k]).product();
            if w == 0.0 {
                continue;
            }
            for (p, slot) in out.iter_mut().enumerate() {
                *slot += self.entries[p * suffix_len + s] * w;
            }
        }
        Ok(SymTensor {
            order: r,
            dim: n,
            entries: out,
        })
    }

    /// Scalar form `A x^m`.
    pub fn eval(&self, x: &[f64]) -> f64 {
        self.multiply(x, self.order)
            .expect("vector length mismatch")
            .entries[0]
    }

    /// Vector form `A x^{m-1}`; requires order >= 2.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.dim, "vector length mismatch");
        assert!(self.order >= 2, "apply requires order >= 2");
        let n = self.dim;
        let tail = self.order - 1;
        let suffix_len = n.pow(tail as u32);
        let mut out = vec![0.0; n];
        let mut digits = vec![0usize; tail];
        for s in 0..suffix_len {
            decode_index(s, n, &mut digits);
            let w: f64 = digits.iter().map(|&k| x[k]).product();
            if w == 0.0 {
                continue;
            }
            for (i, slot) in out.iter_mut().enumerate() {
                *slot += self.entries[i * suffix_len + s] * w;
            }
        }
        out
    }

    /// Matrix form `A x^{m-2}`; requires order >= 2. For order 2 this is the
    /// tensor itself, independent of `x`.
    pub fn contract_matrix(&self, x: &[f64]) -> Result<SymMatrix, TensorError> {
        if self.order < 2 {
            return Err(TensorError::OrderTooSmall {
                needed: 2,
                got: self.order,
            });
        }
        let entries = if self.order == 2 {
            self.entries.clone()
        } else {
            self.multiply(x, self.order - 2)?.entries
        };
        // Exactly symmetric by symmetric storage; checked construction is cheap.
        Ok(SymMatrix::new(self.dim, entries).expect("contraction of a symmetric tensor"))
    }

    /// Gradient of `f(x) = A x^m`: `m * A x^{m-1}`.
    pub fn gradient(&self, x: &[f64]) -> Vec<f64> {
        let m = self.order as f64;
        self.apply(x).into_iter().map(|v| m * v).collect()
    }

    /// Hessian of `f(x) = A x^m`: `m (m-1) * A x^{m-2}`.
    pub fn hessian(&self, x: &[f64]) -> Result<SymMatrix, TensorError> {
        let scale = (self.order * (self.order - 1)) as f64;
        let base = self.contract_matrix(x)?;
        let scaled: Vec<f64> = base.entries().iter().map(|v| scale * v).collect();
        Ok(SymMatrix::new(self.dim, scaled).expect("scaled symmetric matrix"))
    }

    /// Complex multilinear form `A z^{m-1}` (no conjugation).
    pub fn apply_complex(&self, z: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(z.len(), self.dim, "vector length mismatch");
        assert!(self.order >= 2, "apply requires order >= 2");
        let n = self.dim;
        let tail = self.order - 1;
        let suffix_len = n.pow(tail as u32);
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        let mut digits = vec![0usize; tail];
        for s in 0..suffix_len {
            decode_index(s, n, &mut digits);
            let mut w = Complex64::new(1.0, 0.0);
            for &k in &digits {
                w *= z[k];
            }
            if w.norm_sqr() == 0.0 {
                continue;
            }
            for (i, slot) in out.iter_mut().enumerate() {
                *slot += self.entries[i * suffix_len + s] * w;
            }
        }
        out
    }

    /// Complex multilinear scalar `A z^m` (no conjugation).
    pub fn eval_complex(&self, z: &[Complex64]) -> Complex64 {
        let g = self.apply_complex(z);
        g.iter().zip(z).map(|(a, b)| a * b).sum()
    }

    /// Guaranteed upper bound on the convexity threshold:
    /// `(m-1) * sum of |entries|`.
    pub fn beta_conservative(&self) -> f64 {
        (self.order as f64 - 1.0) * self.entries.iter().map(|v| v.abs()).sum::<f64>()
    }

    /// Sampled lower estimate of the convexity threshold:
    /// `(m-1) * max over sampled unit x of rho(A x^{m-2})`.
    /// Deterministic for a given seed.
    pub fn beta_sampled(&self, samples: usize, seed: u64) -> f64 {
        assert!(samples >= 1, "at least one sample required");
        assert!(self.order >= 2, "spectral estimate requires order >= 2");
        let mut rng = sample::trial_rng(seed, 0);
        let mut best = f64::NEG_INFINITY;
        for _ in 0..samples {
            let x = sample::unit_sphere(&mut rng, self.dim);
            let rho = self
                .contract_matrix(&x)
                .expect("unit sample has matching length")
                .spectral_radius();
            best = best.max(rho);
        }
        (self.order as f64 - 1.0) * best
    }
}

/// Linear offset of a 0-based multi-index (`i_1` most significant).
pub(crate) fn encode_index(idx: &[usize], dim: usize) -> usize {
    idx.iter().fold(0usize, |acc, &i| acc * dim + i)
}

/// Inverse of [`encode_index`] into a preallocated buffer.
pub(crate) fn decode_index(mut lin: usize, dim: usize, out: &mut [usize]) {
    for slot in out.iter_mut().rev() {
        *slot = lin % dim;
        lin /= dim;
    }
}

/// Advances a non-decreasing (sorted) multi-index over `0..dim`; returns
/// false after the last one.
pub(crate) fn next_sorted_index(idx: &mut [usize], dim: usize) -> bool {
    let m = idx.len();
    for k in (0..m).rev() {
        if idx[k] + 1 < dim {
            let v = idx[k] + 1;
            for slot in idx.iter_mut().skip(k) {
                *slot = v;
            }
            return true;
        }
    }
    false
}
