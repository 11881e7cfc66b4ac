//! The power iterations: real shifted, real unshifted, and complex shifted.

use num_complex::Complex64;

use super::{stability, ComplexEigenPair, EigenPair, ShiftConfig, SolverError};
use crate::linalg::{norm, UNIT_TOL};
use crate::tensor::SymTensor;

/// Per-iteration record of a real run. Row `k` holds `lambda_k` and
/// `||x_k - x_{k-1}||` (zero at `k = 0`); the iterates themselves are kept
/// for rate analysis against a known limit point.
#[derive(Debug, Clone)]
pub struct IterationTrace {
    pub lambdas: Vec<f64>,
    pub dx_norms: Vec<f64>,
    pub xs: Vec<Vec<f64>>,
}

impl IterationTrace {
    fn with_start(lambda: f64, x: Vec<f64>) -> Self {
        Self {
            lambdas: vec![lambda],
            dx_norms: vec![0.0],
            xs: vec![x],
        }
    }

    fn push(&mut self, lambda: f64, dx: f64, x: Vec<f64>) {
        self.lambdas.push(lambda);
        self.dx_norms.push(dx);
        self.xs.push(x);
    }

    pub fn len(&self) -> usize {
        self.lambdas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lambdas.is_empty()
    }

    /// Distances `||x_k - x*||` for a supplied limit point.
    pub fn distances_to(&self, x_star: &[f64]) -> Vec<f64> {
        self.xs
            .iter()
            .map(|x| {
                x.iter()
                    .zip(x_star)
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum::<f64>()
                    .sqrt()
            })
            .collect()
    }
}

/// Complex counterpart of [`IterationTrace`].
#[derive(Debug, Clone)]
pub struct ComplexIterationTrace {
    pub lambdas: Vec<Complex64>,
    pub dx_norms: Vec<f64>,
    pub xs: Vec<Vec<Complex64>>,
}

fn check_start(a: &SymTensor, x0: &[f64]) -> Result<(), SolverError> {
    if x0.len() != a.dim() {
        return Err(SolverError::Dimension {
            expected: a.dim(),
            got: x0.len(),
        });
    }
    let n = norm(x0);
    if (n - 1.0).abs() > UNIT_TOL {
        return Err(SolverError::NotUnit(n));
    }
    Ok(())
}

fn finish_pair(
    a: &SymTensor,
    lambda: f64,
    x: Vec<f64>,
    iterations: usize,
    converged: bool,
) -> EigenPair {
    let g = a.apply(&x);
    let residual = g
        .iter()
        .zip(&x)
        .map(|(gi, xi)| (gi - lambda * xi) * (gi - lambda * xi))
        .sum::<f64>()
        .sqrt();
    let c_spectrum = stability::projected_spectrum(a, lambda, &x).unwrap_or_default();
    let classification = stability::classify_spectrum(&c_spectrum, stability::DEGENERATE_TOL);
    EigenPair {
        lambda,
        x,
        residual,
        c_spectrum,
        classification,
        iterations,
        converged,
    }
}

/// Shifted symmetric power iteration from a unit start vector.
///
/// Each step normalizes `A x^{m-1} + alpha x`, negated first when
/// `alpha < 0` so the concave iterates do not flip sign. The run stops when
/// both stopping criteria of the config hold (see [`ShiftConfig`]) or at
/// `max_iters`, whichever comes first; hitting the cap reports the last
/// iterate with `converged = false` rather than an error. The only error
/// path mid-run is a vanishing iterate, which can occur only when `-alpha`
/// is itself an eigenvalue.
pub fn sshopm(
    a: &SymTensor,
    x0: &[f64],
    cfg: &ShiftConfig,
) -> Result<(EigenPair, IterationTrace), SolverError> {
    cfg.validate()?;
    check_start(a, x0)?;
    if a.order() < 2 {
        return Err(SolverError::Tensor(
            crate::tensor::TensorError::OrderTooSmall {
                needed: 2,
                got: a.order(),
            },
        ));
    }

    let alpha = cfg.alpha;
    let mut x = x0.to_vec();
    let mut lambda = a.eval(&x);
    let mut trace = IterationTrace::with_start(lambda, x.clone());
    let mut converged = false;
    let mut iterations = 0;

    // The sign fix keeps the concave iterates from flipping every step.
    let sign = if alpha < 0.0 { -1.0 } else { 1.0 };
    for step in 0..cfg.max_iters {
        let mut xhat = a.apply(&x);
        for (h, xi) in xhat.iter_mut().zip(&x) {
            *h = sign * (*h + alpha * xi);
        }
        let nhat = norm(&xhat);
        if nhat < 1e-13 {
            return Err(SolverError::ZeroIterate { step });
        }
        let x_next: Vec<f64> = xhat.iter().map(|v| v / nhat).collect();
        let lambda_next = a.eval(&x_next);
        let dx = x_next
            .iter()
            .zip(&x)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt();
        trace.push(lambda_next, dx, x_next.clone());
        iterations = step + 1;

        let lambda_settled = (lambda_next - lambda).abs() < cfg.tol;
        x = x_next;
        lambda = lambda_next;
        if lambda_settled && dx < cfg.x_tol {
            converged = true;
            break;
        }
    }

    Ok((finish_pair(a, lambda, x, iterations, converged), trace))
}

/// Unshifted symmetric power iteration (`alpha = 0`, convex update).
pub fn shopm(
    a: &SymTensor,
    x0: &[f64],
    cfg: &ShiftConfig,
) -> Result<(EigenPair, IterationTrace), SolverError> {
    let mut cfg = cfg.clone();
    cfg.alpha = 0.0;
    sshopm(a, x0, &cfg)
}

fn cnorm(x: &[Complex64]) -> f64 {
    x.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
}

fn cdist(x: &[Complex64], y: &[Complex64]) -> f64 {
    x.iter()
        .zip(y)
        .map(|(a, b)| (a - b).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// Complex shifted power iteration.
///
/// The update is `(A x^{m-1} + alpha x) / (lambda_k + alpha)`, normalized;
/// the division holds the phase of the iterates steady. The new eigenvalue
/// estimate is the Hermitian form `x^H (A x^{m-1})`. A shifted eigenvalue
/// magnitude below 1e-14 aborts the run (the division blows up). Stopping is
/// the same two-criterion rule as the real iteration; an eigenvalue sequence
/// that settles while the iterates keep moving runs to `max_iters` and is
/// reported with `converged = false`.
pub fn complex_sshopm(
    a: &SymTensor,
    x0: &[Complex64],
    alpha: Complex64,
    cfg: &ShiftConfig,
) -> Result<(ComplexEigenPair, ComplexIterationTrace), SolverError> {
    cfg.validate()?;
    if x0.len() != a.dim() {
        return Err(SolverError::Dimension {
            expected: a.dim(),
            got: x0.len(),
        });
    }
    let n0 = cnorm(x0);
    if (n0 - 1.0).abs() > UNIT_TOL {
        return Err(SolverError::NotUnit(n0));
    }
    if a.order() < 2 {
        return Err(SolverError::Tensor(
            crate::tensor::TensorError::OrderTooSmall {
                needed: 2,
                got: a.order(),
            },
        ));
    }

    let mut x = x0.to_vec();
    let mut lambda = a.eval_complex(&x);
    let mut trace = ComplexIterationTrace {
        lambdas: vec![lambda],
        dx_norms: vec![0.0],
        xs: vec![x.clone()],
    };
    let mut converged = false;
    let mut iterations = 0;

    for step in 0..cfg.max_iters {
        let denom = lambda + alpha;
        if denom.norm() < 1e-14 {
            return Err(SolverError::ShiftSingularity {
                step,
                magnitude: denom.norm(),
            });
        }
        let g = a.apply_complex(&x);
        let xhat: Vec<Complex64> = g
            .iter()
            .zip(&x)
            .map(|(gi, xi)| (gi + alpha * xi) / denom)
            .collect();
        let nhat = cnorm(&xhat);
        if nhat < 1e-13 {
            return Err(SolverError::ZeroIterate { step });
        }
        let x_next: Vec<Complex64> = xhat.iter().map(|v| v / nhat).collect();
        let g_next = a.apply_complex(&x_next);
        let lambda_next: Complex64 = x_next
            .iter()
            .zip(&g_next)
            .map(|(xi, gi)| xi.conj() * gi)
            .sum();
        let dx = cdist(&x_next, &x);
        trace.lambdas.push(lambda_next);
        trace.dx_norms.push(dx);
        trace.xs.push(x_next.clone());
        iterations = step + 1;

        let lambda_settled = (lambda_next - lambda).norm() < cfg.tol;
        x = x_next;
        lambda = lambda_next;
        if lambda_settled && dx < cfg.x_tol {
            converged = true;
            break;
        }
    }

    let g = a.apply_complex(&x);
    let residual = g
        .iter()
        .zip(&x)
        .map(|(gi, xi)| (gi - lambda * xi).norm_sqr())
        .sum::<f64>()
        .sqrt();
    let pair = ComplexEigenPair {
        lambda,
        x,
        residual,
        iterations,
        converged,
    };
    Ok((pair, trace))
}
