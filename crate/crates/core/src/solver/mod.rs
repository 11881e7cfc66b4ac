//! Shifted symmetric higher-order power iteration and its analysis tools.
//!
//! The iteration normalizes `A x^{m-1} + alpha x` each step (sign-fixed for
//! negative shifts), which converges monotonically to an eigenpair once the
//! shift magnitude exceeds the tensor's convexity threshold. The module also
//! carries the complex-vector variant, eigenpair classification through the
//! projected Hessian, fixed-point Jacobian stability analysis, canonical
//! representatives for deduplication, and seeded multistart orchestration.

mod canonical;
mod multistart;
mod power;
mod stability;

pub use canonical::{canonicalize_complex, canonicalize_real, complex_pairs_match, pairs_match};
pub use multistart::{
    multistart, multistart_complex, ComplexRunSummary, ComplexSummaryEntry, RunSummary,
    SummaryEntry,
};
pub use power::{complex_sshopm, shopm, sshopm, ComplexIterationTrace, IterationTrace};
pub use stability::{
    classify, classify_spectrum, concave_jacobian, jacobian, projected_hessian, projected_spectrum,
    stability_sweep, SweepRow, DEGENERATE_TOL,
};

use num_complex::Complex64;
use thiserror::Error;

use crate::linalg::LinalgError;
use crate::tensor::TensorError;

/// Canonical-form matching tolerance used for deduplication, applied to both
/// the eigenvalue difference and the eigenvector distance.
pub const DEDUP_TOL: f64 = 1e-6;

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("invalid configuration: {0}")]
    BadConfig(String),
    #[error("start vector must have unit norm, got {0}")]
    NotUnit(f64),
    #[error("vector length {got} does not match tensor dimension {expected}")]
    Dimension { expected: usize, got: usize },
    #[error("iterate vanished at step {step}: the negated shift matches an eigenvalue")]
    ZeroIterate { step: usize },
    #[error("shifted eigenvalue magnitude {magnitude:e} below safe limit at step {step}")]
    ShiftSingularity { step: usize, magnitude: f64 },
    #[error("(lambda, x) with lambda = {lambda} is not a fixed point of the shifted map for alpha = {alpha}")]
    NotFixedPoint { lambda: f64, alpha: f64 },
    #[error("eigenvalue is zero; no canonical ring representative")]
    ZeroEigenvalue,
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Shift and stopping control for a power-iteration run.
///
/// A run stops as soon as both `|lambda_{k+1} - lambda_k| < tol` and
/// `||x_{k+1} - x_k|| < x_tol`, or after `max_iters` steps. Both criteria are
/// required: the eigenvalue sequence alone can stagnate while the iterates
/// still oscillate (sign flips, or phase drift in the complex variant), and
/// such runs must be reported as failures.
#[derive(Debug, Clone)]
pub struct ShiftConfig {
    /// Shift value; `alpha >= 0` selects the convex update, `alpha < 0` the
    /// sign-fixed concave update.
    pub alpha: f64,
    /// Stagnation tolerance on `|lambda_{k+1} - lambda_k|`.
    pub tol: f64,
    /// Step tolerance on `||x_{k+1} - x_k||`.
    pub x_tol: f64,
    pub max_iters: usize,
    /// Base seed; trial `i` of a multistart uses `seed + i`.
    pub seed: u64,
}

impl ShiftConfig {
    pub fn new(alpha: f64) -> Self {
        Self {
            alpha,
            tol: 1e-15,
            x_tol: 1e-10,
            max_iters: 1000,
            seed: 0,
        }
    }

    pub(crate) fn validate(&self) -> Result<(), SolverError> {
        let positive = |v: f64| v.is_finite() && v > 0.0;
        if !positive(self.tol) || !positive(self.x_tol) {
            return Err(SolverError::BadConfig("tolerances must be positive".into()));
        }
        if self.max_iters < 1 {
            return Err(SolverError::BadConfig(
                "max_iters must be at least 1".into(),
            ));
        }
        if !self.alpha.is_finite() {
            return Err(SolverError::BadConfig("alpha must be finite".into()));
        }
        Ok(())
    }
}

/// Definiteness class of the projected Hessian at an eigenpair. Negative
/// stable pairs are the attractors of the convex iteration, positive stable
/// pairs of the concave one; unstable pairs attract neither.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    NegativeStable,
    PositiveStable,
    Unstable,
    /// Some projected-Hessian eigenvalue sits inside the degeneracy band;
    /// does not occur for generic tensors.
    Degenerate,
}

impl Classification {
    pub fn flip(self) -> Self {
        match self {
            Classification::NegativeStable => Classification::PositiveStable,
            Classification::PositiveStable => Classification::NegativeStable,
            other => other,
        }
    }
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Classification::NegativeStable => "neg-stable",
            Classification::PositiveStable => "pos-stable",
            Classification::Unstable => "unstable",
            Classification::Degenerate => "degenerate",
        };
        f.write_str(s)
    }
}

/// A real eigenpair as produced by the solver or oracle, with its audit data.
#[derive(Debug, Clone)]
pub struct EigenPair {
    pub lambda: f64,
    /// Unit eigenvector.
    pub x: Vec<f64>,
    /// `||A x^{m-1} - lambda x||`, recomputable from the pair.
    pub residual: f64,
    /// Eigenvalues of the projected Hessian, ascending.
    pub c_spectrum: Vec<f64>,
    pub classification: Classification,
    pub iterations: usize,
    /// True only when both stopping criteria were met before `max_iters`.
    pub converged: bool,
}

/// A complex eigenpair from the complex-vector iteration. No classification
/// is attached; the projected-Hessian analysis is defined for real pairs.
#[derive(Debug, Clone)]
pub struct ComplexEigenPair {
    pub lambda: Complex64,
    /// Unit eigenvector in the Hermitian norm.
    pub x: Vec<Complex64>,
    pub residual: f64,
    pub iterations: usize,
    pub converged: bool,
}
