//! Independent enumeration of real eigenpairs on small instances.
//!
//! Newton's method applied directly to the eigensystem
//! `A x^{m-1} = lambda x`, `x^T x = 1` converges quadratically near simple
//! roots, and a large multistart over the sphere recovers the full real
//! eigenpair list at desk scale (n <= 4, m <= 6). Completeness is
//! probabilistic; the equivalence-class count bound flags dedup anomalies.

use rayon::prelude::*;
use thiserror::Error;

use crate::linalg::norm;
use crate::sample;
use crate::solver::{
    canonicalize_real, classify_spectrum, pairs_match, projected_spectrum, Classification,
    EigenPair, SolverError, DEDUP_TOL, DEGENERATE_TOL,
};
use crate::tensor::{SymTensor, TensorError};

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("Newton system is numerically singular at step {step} (pivot ratio {cond:e})")]
    SingularJacobian { step: usize, cond: f64 },
    #[error("Newton iteration diverged at step {step} (residual {residual:e})")]
    Diverged { step: usize, residual: f64 },
    #[error("no convergence within {max_steps} steps (residual {residual:e})")]
    MaxSteps { max_steps: usize, residual: f64 },
    #[error("start point must be finite")]
    NonFiniteStart,
    #[error("enumeration requires order >= 2, got {0}")]
    OrderTooSmall(usize),
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error(transparent)]
    Solver(#[from] SolverError),
}

/// A Newton-refined candidate eigenpair.
#[derive(Debug, Clone)]
pub struct NewtonState {
    pub lambda: f64,
    pub x: Vec<f64>,
    /// Norm of the combined residual `(A x^{m-1} - lambda x, (x^T x - 1)/2)`.
    pub residual_norm: f64,
    pub step_count: usize,
}

/// Condition threshold (max/min pivot magnitude) above which the Newton
/// linear solve is treated as singular.
const PIVOT_COND_LIMIT: f64 = 1e14;

fn eig_system_residual(a: &SymTensor, lambda: f64, x: &[f64]) -> (Vec<f64>, f64) {
    let g = a.apply(x);
    let mut r: Vec<f64> = g.iter().zip(x).map(|(gi, xi)| gi - lambda * xi).collect();
    let c = (x.iter().map(|v| v * v).sum::<f64>() - 1.0) / 2.0;
    r.push(c);
    let rn = norm(&r);
    (r, rn)
}

/// Gaussian elimination with partial pivoting; returns the solution and the
/// max/min pivot magnitude ratio as a cheap condition estimate.
fn solve_with_pivoting(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<(Vec<f64>, f64)> {
    let n = b.len();
    let mut max_pivot = 0.0f64;
    let mut min_pivot = f64::INFINITY;
    for col in 0..n {
        let (best, pivot) = (col..n)
            .map(|r| (r, a[r][col].abs()))
            .max_by(|p, q| p.1.partial_cmp(&q.1).unwrap())?;
        if pivot == 0.0 {
            return Some((vec![f64::NAN; n], f64::INFINITY));
        }
        max_pivot = max_pivot.max(pivot);
        min_pivot = min_pivot.min(pivot);
        a.swap(col, best);
        b.swap(col, best);
        for row in (col + 1)..n {
            let factor = a[row][col] / a[col][col];
            if factor == 0.0 {
                continue;
            }
            for k in col..n {
                a[row][k] -= factor * a[col][k];
            }
            b[row] -= factor * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let mut acc = b[row];
        for k in (row + 1)..n {
            acc -= a[row][k] * x[k];
        }
        x[row] = acc / a[row][row];
    }
    Some((x, max_pivot / min_pivot))
}

/// Newton refinement of a candidate `(lambda, x)` against the eigensystem.
///
/// The exact Jacobian blocks are `[(m-1) A x^{m-2} - lambda I, -x; x^T, 0]`.
/// Fails on a numerically singular system, on five consecutive residual
/// increases, or at the step cap. An input already within `tol` returns with
/// zero steps.
pub fn newton_refine(
    a: &SymTensor,
    lambda0: f64,
    x0: &[f64],
    tol: f64,
    max_steps: usize,
) -> Result<NewtonState, OracleError> {
    if a.order() < 2 {
        return Err(OracleError::OrderTooSmall(a.order()));
    }
    if !lambda0.is_finite() || x0.iter().any(|v| !v.is_finite()) || x0.len() != a.dim() {
        return Err(OracleError::NonFiniteStart);
    }
    let n = a.dim();
    let m1 = a.order() as f64 - 1.0;
    let mut lambda = lambda0;
    let mut x = x0.to_vec();
    let (_, mut rn) = eig_system_residual(a, lambda, &x);
    let mut growth_streak = 0usize;

    for step in 0..max_steps {
        if rn <= tol {
            return Ok(NewtonState {
                lambda,
                x,
                residual_norm: rn,
                step_count: step,
            });
        }
        let contracted = a.contract_matrix(&x)?;
        let mut jac = vec![vec![0.0; n + 1]; n + 1];
        for i in 0..n {
            for j in 0..n {
                jac[i][j] = m1 * contracted.get(i, j);
            }
            jac[i][i] -= lambda;
            jac[i][n] = -x[i];
            jac[n][i] = x[i];
        }
        let (r, _) = eig_system_residual(a, lambda, &x);
        let rhs: Vec<f64> = r.iter().map(|v| -v).collect();
        let (delta, cond) = solve_with_pivoting(jac, rhs)
            .ok_or(OracleError::SingularJacobian { step, cond: 0.0 })?;
        if !cond.is_finite() || cond > PIVOT_COND_LIMIT || delta.iter().any(|v| !v.is_finite()) {
            return Err(OracleError::SingularJacobian { step, cond });
        }
        for (xi, d) in x.iter_mut().zip(&delta) {
            *xi += d;
        }
        lambda += delta[n];
        let (_, rn_next) = eig_system_residual(a, lambda, &x);
        if rn_next > rn {
            growth_streak += 1;
            if growth_streak >= 5 {
                return Err(OracleError::Diverged {
                    step,
                    residual: rn_next,
                });
            }
        } else {
            growth_streak = 0;
        }
        rn = rn_next;
    }
    if rn <= tol {
        return Ok(NewtonState {
            lambda,
            x,
            residual_norm: rn,
            step_count: max_steps,
        });
    }
    Err(OracleError::MaxSteps {
        max_steps,
        residual: rn,
    })
}

/// Upper bound on the number of distinct eigenvalue equivalence classes of a
/// generic order-`m`, dimension-`n` symmetric tensor:
/// `((m-1)^n - 1)/(m-2)`, read as `n` when `m = 2`. Exact integer arithmetic.
pub fn count_bound(m: usize, n: usize) -> u64 {
    assert!(m >= 2 && n >= 1, "count bound defined for m >= 2, n >= 1");
    if m == 2 {
        return n as u64;
    }
    let base = (m as u128) - 1;
    let power = base.pow(n as u32);
    ((power - 1) / ((m as u128) - 2)) as u64
}

/// Real eigenpair list from a Newton multistart.
#[derive(Debug, Clone)]
pub struct Enumeration {
    /// Canonical pairs, sorted by descending eigenvalue.
    pub pairs: Vec<EigenPair>,
    /// Equivalence-class bound for this shape (real and complex classes).
    pub bound: u64,
}

impl Enumeration {
    /// The bound caps all equivalence classes including complex ones, so a
    /// real list exceeding it indicates a deduplication failure.
    pub fn exceeds_bound(&self) -> bool {
        self.pairs.len() as u64 > self.bound
    }
}

/// Enumerates real eigenpairs by Newton refinement from `starts` random
/// sphere points (`lambda_0 = A x_0^m`). Successes are canonicalized,
/// deduplicated, classified, and sorted by descending eigenvalue.
pub fn enumerate_real(a: &SymTensor, starts: usize, seed: u64) -> Result<Enumeration, OracleError> {
    if a.order() < 2 {
        return Err(OracleError::OrderTooSmall(a.order()));
    }
    let n = a.dim();
    let successes: Vec<NewtonState> = (0..starts)
        .into_par_iter()
        .filter_map(|start| {
            let mut rng = sample::trial_rng(seed, start);
            let x0 = sample::unit_sphere(&mut rng, n);
            let lambda0 = a.eval(&x0);
            newton_refine(a, lambda0, &x0, 1e-12, 100).ok()
        })
        .collect();

    let mut pairs: Vec<EigenPair> = Vec::new();
    for state in successes {
        // Re-normalize exactly and recompute the eigenvalue for a clean pair.
        let nx = norm(&state.x);
        if nx < 1e-8 {
            continue;
        }
        let x: Vec<f64> = state.x.iter().map(|v| v / nx).collect();
        let lambda = a.eval(&x);
        let g = a.apply(&x);
        let residual = g
            .iter()
            .zip(&x)
            .map(|(gi, xi)| (gi - lambda * xi) * (gi - lambda * xi))
            .sum::<f64>()
            .sqrt();
        let c_spectrum = projected_spectrum(a, lambda, &x)?;
        let classification = classify_spectrum(&c_spectrum, DEGENERATE_TOL);
        let pair = canonicalize_real(
            &EigenPair {
                lambda,
                x,
                residual,
                c_spectrum,
                classification,
                iterations: state.step_count,
                converged: true,
            },
            a.order(),
        );
        if !pairs.iter().any(|p| pairs_match(p, &pair, DEDUP_TOL)) {
            pairs.push(pair);
        }
    }
    pairs.sort_by(|p, q| {
        q.lambda
            .partial_cmp(&p.lambda)
            .unwrap()
            .then_with(|| q.x.partial_cmp(&p.x).unwrap())
    });
    Ok(Enumeration {
        pairs,
        bound: count_bound(a.order(), n),
    })
}

/// Audit report for a single candidate pair.
#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub residual: f64,
    pub norm_error: f64,
    pub classification: Classification,
    pub c_spectrum: Vec<f64>,
    /// Spectral radius of the sign-appropriate iteration-map Jacobian per
    /// requested shift; `None` where `lambda + alpha` vanishes.
    pub rho: Vec<(f64, Option<f64>)>,
    pub pass: bool,
}

/// Pure recomputation of the eigenpair conditions for `(lambda, x)`,
/// flagging pass/fail at `tol`.
pub fn verify_pair(
    a: &SymTensor,
    lambda: f64,
    x: &[f64],
    tol: f64,
    alphas: &[f64],
) -> VerifyReport {
    let nx = norm(x);
    let norm_error = (nx - 1.0).abs();
    if nx < 1e-8 || x.len() != a.dim() || a.order() < 2 {
        return VerifyReport {
            residual: f64::INFINITY,
            norm_error,
            classification: Classification::Degenerate,
            c_spectrum: Vec::new(),
            rho: alphas.iter().map(|&al| (al, None)).collect(),
            pass: false,
        };
    }
    let unit: Vec<f64> = x.iter().map(|v| v / nx).collect();
    let g = a.apply(x);
    let residual = g
        .iter()
        .zip(x)
        .map(|(gi, xi)| (gi - lambda * xi) * (gi - lambda * xi))
        .sum::<f64>()
        .sqrt();
    let c_spectrum = projected_spectrum(a, lambda, &unit).unwrap_or_default();
    let classification = classify_spectrum(&c_spectrum, DEGENERATE_TOL);
    let rho = alphas
        .iter()
        .map(|&alpha| {
            let radius = if (lambda + alpha).abs() > 1e-12 {
                crate::solver::jacobian(a, lambda, &unit, alpha)
                    .or_else(|_| crate::solver::concave_jacobian(a, lambda, &unit, alpha))
                    .ok()
                    .map(|j| j.spectral_radius())
            } else {
                None
            };
            (alpha, radius)
        })
        .collect();
    VerifyReport {
        residual,
        norm_error,
        classification,
        c_spectrum,
        rho,
        pass: residual <= tol && norm_error <= tol,
    }
}
