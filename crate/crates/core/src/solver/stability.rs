//! Eigenpair classification and fixed-point stability analysis.

use super::{Classification, EigenPair, SolverError};
use crate::linalg::{norm, orthonormal_complement, SymMatrix, UNIT_TOL};
use crate::tensor::SymTensor;

/// Half-width of the projected-Hessian eigenvalue band treated as degenerate.
pub const DEGENERATE_TOL: f64 = 1e-8;

/// Projected Hessian of the Lagrangian at `(lambda, x)`:
/// `C = U^T ((m-1) A x^{m-2} - lambda I) U` with `U` an orthonormal basis of
/// the complement of `x`. Its spectrum is basis-independent. The input is
/// expected to be an (approximate) eigenpair; for inexact pairs the result is
/// advisory.
pub fn projected_hessian(a: &SymTensor, lambda: f64, x: &[f64]) -> Result<SymMatrix, SolverError> {
    if x.len() != a.dim() {
        return Err(SolverError::Dimension {
            expected: a.dim(),
            got: x.len(),
        });
    }
    let nx = norm(x);
    if (nx - 1.0).abs() > UNIT_TOL {
        return Err(SolverError::NotUnit(nx));
    }
    let n = a.dim();
    let m1 = a.order() as f64 - 1.0;
    let contracted = a.contract_matrix(x)?;
    let u = orthonormal_complement(x)?;
    // M = (m-1) A x^{m-2} - lambda I, then C_kl = u_k^T M u_l.
    let mu: Vec<Vec<f64>> = u
        .iter()
        .map(|col| {
            let mut mv = contracted.mul_vec(col);
            for (v, c) in mv.iter_mut().zip(col) {
                *v = m1 * *v - lambda * c;
            }
            mv
        })
        .collect();
    Ok(SymMatrix::from_upper(n - 1, |k, l| {
        u[k].iter().zip(&mu[l]).map(|(a, b)| a * b).sum()
    }))
}

/// Ascending eigenvalues of the projected Hessian.
pub fn projected_spectrum(a: &SymTensor, lambda: f64, x: &[f64]) -> Result<Vec<f64>, SolverError> {
    Ok(projected_hessian(a, lambda, x)?.eig().values)
}

/// Classification from a projected-Hessian spectrum.
pub fn classify_spectrum(spectrum: &[f64], degenerate_tol: f64) -> Classification {
    if spectrum.is_empty() || spectrum.iter().any(|c| c.abs() <= degenerate_tol) {
        return Classification::Degenerate;
    }
    if spectrum.iter().all(|&c| c < -degenerate_tol) {
        Classification::NegativeStable
    } else if spectrum.iter().all(|&c| c > degenerate_tol) {
        Classification::PositiveStable
    } else {
        Classification::Unstable
    }
}

/// Classifies an (approximate) eigenpair by the definiteness of its
/// projected Hessian.
pub fn classify(
    a: &SymTensor,
    lambda: f64,
    x: &[f64],
    degenerate_tol: f64,
) -> Result<Classification, SolverError> {
    Ok(classify_spectrum(
        &projected_spectrum(a, lambda, x)?,
        degenerate_tol,
    ))
}

fn map_jacobian(
    a: &SymTensor,
    lambda: f64,
    x: &[f64],
    alpha: f64,
) -> Result<SymMatrix, SolverError> {
    if x.len() != a.dim() {
        return Err(SolverError::Dimension {
            expected: a.dim(),
            got: x.len(),
        });
    }
    let nx = norm(x);
    if (nx - 1.0).abs() > UNIT_TOL {
        return Err(SolverError::NotUnit(nx));
    }
    let n = a.dim();
    let m1 = a.order() as f64 - 1.0;
    let contracted = a.contract_matrix(x)?;
    let denom = lambda + alpha;
    Ok(SymMatrix::from_upper(n, |i, j| {
        let delta = if i == j { 1.0 } else { 0.0 };
        (m1 * (contracted.get(i, j) - lambda * x[i] * x[j]) + alpha * (delta - x[i] * x[j])) / denom
    }))
}

/// Jacobian of the normalized shifted iteration map at an eigenpair:
/// `[(m-1)(A x^{m-2} - lambda x x^T) + alpha (I - x x^T)] / (lambda + alpha)`.
/// The eigenpair is a fixed point of the convex map only when
/// `lambda + alpha > 0`; other shifts are a domain error. The result is
/// symmetric and annihilates `x`.
pub fn jacobian(
    a: &SymTensor,
    lambda: f64,
    x: &[f64],
    alpha: f64,
) -> Result<SymMatrix, SolverError> {
    if lambda + alpha <= 0.0 {
        return Err(SolverError::NotFixedPoint { lambda, alpha });
    }
    map_jacobian(a, lambda, x, alpha)
}

/// Jacobian of the sign-fixed concave iteration map, defined when
/// `lambda + alpha < 0`. Algebraically the same expression as [`jacobian`];
/// the negative denominator accounts for the sign fix.
pub fn concave_jacobian(
    a: &SymTensor,
    lambda: f64,
    x: &[f64],
    alpha: f64,
) -> Result<SymMatrix, SolverError> {
    if lambda + alpha >= 0.0 {
        return Err(SolverError::NotFixedPoint { lambda, alpha });
    }
    map_jacobian(a, lambda, x, alpha)
}

/// One cell of a stability sweep: spectral radius of the convex-map Jacobian
/// for one eigenpair at one shift, `None` where the pair is not a fixed
/// point (`lambda + alpha <= 0`).
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub pair_index: usize,
    pub alpha: f64,
    pub rho: Option<f64>,
}

/// Tabulates `rho(J(x; alpha))` over an alpha grid for each eigenpair.
pub fn stability_sweep(a: &SymTensor, pairs: &[EigenPair], alphas: &[f64]) -> Vec<SweepRow> {
    let mut rows = Vec::with_capacity(pairs.len() * alphas.len());
    for (pair_index, pair) in pairs.iter().enumerate() {
        for &alpha in alphas {
            let rho = if pair.lambda + alpha > 0.0 {
                map_jacobian(a, pair.lambda, &pair.x, alpha)
                    .ok()
                    .map(|j| j.spectral_radius())
            } else {
                None
            };
            rows.push(SweepRow {
                pair_index,
                alpha,
                rho,
            });
        }
    }
    rows
}
