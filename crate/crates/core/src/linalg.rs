//! Small dense symmetric-matrix kernels: cyclic-Jacobi eigendecomposition,
//! spectral radius, and orthonormal-complement bases.
//!
//! Everything here targets the tiny matrices (n up to a few dozen) produced by
//! tensor contractions, projected Hessians, and fixed-point Jacobians. Cyclic
//! Jacobi is the whole eigensolver: at this scale it is simple, accurate, and
//! needs no external linear algebra.

use thiserror::Error;

/// Symmetry deviation accepted by [`SymMatrix::new`].
pub const SYMMETRY_TOL: f64 = 1e-12;

/// Norm deviation accepted where a unit vector is required.
pub const UNIT_TOL: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum LinalgError {
    #[error("matrix is not symmetric: |m[{i}][{j}] - m[{j}][{i}]| = {deviation:e}")]
    NotSymmetric { i: usize, j: usize, deviation: f64 },
    #[error("matrix entries must be finite")]
    NonFinite,
    #[error("expected {expected} entries for a {dim}x{dim} matrix, got {got}")]
    BadShape {
        dim: usize,
        expected: usize,
        got: usize,
    },
    #[error("expected a unit vector, got norm {0}")]
    NotUnit(f64),
    #[error("dimension must be at least {needed}, got {got}")]
    TooSmall { needed: usize, got: usize },
}

/// Dense real symmetric matrix, row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    dim: usize,
    entries: Vec<f64>,
}

impl SymMatrix {
    /// Builds a matrix from row-major entries, verifying symmetry to
    /// [`SYMMETRY_TOL`] and finiteness. The stored copy is exactly
    /// symmetrized by averaging mirrored entries.
    pub fn new(dim: usize, entries: Vec<f64>) -> Result<Self, LinalgError> {
        if entries.len() != dim * dim {
            return Err(LinalgError::BadShape {
                dim,
                expected: dim * dim,
                got: entries.len(),
            });
        }
        if entries.iter().any(|v| !v.is_finite()) {
            return Err(LinalgError::NonFinite);
        }
        let mut m = Self { dim, entries };
        for i in 0..dim {
            for j in (i + 1)..dim {
                let a = m.entries[i * dim + j];
                let b = m.entries[j * dim + i];
                let deviation = (a - b).abs();
                if deviation > SYMMETRY_TOL * (1.0 + a.abs().max(b.abs())) {
                    return Err(LinalgError::NotSymmetric { i, j, deviation });
                }
                let avg = 0.5 * (a + b);
                m.entries[i * dim + j] = avg;
                m.entries[j * dim + i] = avg;
            }
        }
        Ok(m)
    }

    /// Builds a matrix from its upper triangle (`f(i, j)` with `i <= j`),
    /// mirroring the lower triangle so the result is exactly symmetric.
    pub fn from_upper(dim: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut entries = vec![0.0; dim * dim];
        for i in 0..dim {
            for j in i..dim {
                let v = f(i, j);
                entries[i * dim + j] = v;
                entries[j * dim + i] = v;
            }
        }
        Self { dim, entries }
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![0.0; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_upper(dim, |i, j| if i == j { 1.0 } else { 0.0 })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.dim + j]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        let n = self.dim;
        let mut out = vec![0.0; n];
        for i in 0..n {
            let row = &self.entries[i * n..(i + 1) * n];
            out[i] = row.iter().zip(x).map(|(a, b)| a * b).sum();
        }
        out
    }

    /// Full eigendecomposition by cyclic Jacobi rotations.
    ///
    /// Sweeps run until every off-diagonal magnitude is at most
    /// `1e-14 * ||M||_F`. Eigenvalues are returned in ascending order with
    /// matching orthonormal eigenvectors.
    pub fn eig(&self) -> EigenDecomposition {
        let n = self.dim;
        let mut a = self.entries.clone();
        let mut v = vec![0.0; n * n];
        for i in 0..n {
            v[i * n + i] = 1.0;
        }
        let off_tol = 1e-14 * self.frobenius_norm();

        let max_sweeps = 100;
        for _ in 0..max_sweeps {
            let mut off = 0.0f64;
            for p in 0..n {
                for q in (p + 1)..n {
                    off = off.max(a[p * n + q].abs());
                }
            }
            if off <= off_tol {
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    let apq = a[p * n + q];
                    if apq.abs() <= off_tol * 1e-2 {
                        continue;
                    }
                    let app = a[p * n + p];
                    let aqq = a[q * n + q];
                    let tau = (aqq - app) / (2.0 * apq);
                    let t = if tau >= 0.0 {
                        1.0 / (tau + (1.0 + tau * tau).sqrt())
                    } else {
                        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                    };
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = t * c;

                    for k in 0..n {
                        let akp = a[k * n + p];
                        let akq = a[k * n + q];
                        a[k * n + p] = c * akp - s * akq;
                        a[k * n + q] = s * akp + c * akq;
                    }
                    for k in 0..n {
                        let apk = a[p * n + k];
                        let aqk = a[q * n + k];
                        a[p * n + k] = c * apk - s * aqk;
                        a[q * n + k] = s * apk + c * aqk;
                    }
                    for k in 0..n {
                        let vkp = v[k * n + p];
                        let vkq = v[k * n + q];
                        v[k * n + p] = c * vkp - s * vkq;
                        v[k * n + q] = s * vkp + c * vkq;
                    }
                }
            }
        }

        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| a[i * n + i].partial_cmp(&a[j * n + j]).unwrap());
        let values: Vec<f64> = order.iter().map(|&i| a[i * n + i]).collect();
        let vectors: Vec<Vec<f64>> = order
            .iter()
            .map(|&col| (0..n).map(|row| v[row * n + col]).collect())
            .collect();
        EigenDecomposition { values, vectors }
    }

    /// Maximum eigenvalue magnitude.
    pub fn spectral_radius(&self) -> f64 {
        self.eig()
            .values
            .iter()
            .fold(0.0f64, |acc, w| acc.max(w.abs()))
    }
}

/// Result of [`SymMatrix::eig`]: ascending eigenvalues and matching
/// orthonormal eigenvectors (`vectors[k]` pairs with `values[k]`).
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<f64>>,
}

pub fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

pub fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

/// Orthonormal basis for the complement of a unit vector.
///
/// Returns `n - 1` columns `U` with `U^T U = I` and `U^T x = 0`, built from
/// the Householder reflector carrying `e_1` onto `x` (first column dropped).
/// The construction is deterministic in `x`.
pub fn orthonormal_complement(x: &[f64]) -> Result<Vec<Vec<f64>>, LinalgError> {
    let n = x.len();
    if n < 1 {
        return Err(LinalgError::TooSmall { needed: 1, got: n });
    }
    let nx = norm(x);
    if (nx - 1.0).abs() > UNIT_TOL {
        return Err(LinalgError::NotUnit(nx));
    }
    if n == 1 {
        return Ok(Vec::new());
    }
    // v = x + sign(x_1) e_1; H = I - 2 v v^T / (v^T v). Column 1 of H is
    // proportional to x, so columns 2..n span the complement.
    let s = if x[0] >= 0.0 { 1.0 } else { -1.0 };
    let mut v = x.to_vec();
    v[0] += s;
    let vtv: f64 = v.iter().map(|a| a * a).sum();
    let mut cols = Vec::with_capacity(n - 1);
    for j in 1..n {
        let mut col = vec![0.0; n];
        for i in 0..n {
            let e = if i == j { 1.0 } else { 0.0 };
            col[i] = e - 2.0 * v[i] * v[j] / vtv;
        }
        cols.push(col);
    }
    Ok(cols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn random_sym(n: usize, rng: &mut ChaCha8Rng) -> SymMatrix {
        SymMatrix::from_upper(n, |_, _| rng.random_range(-1.0..1.0))
    }

    #[test]
    fn eig_diagonal_is_sorted() {
        let m = SymMatrix::new(3, vec![3.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 2.0]).unwrap();
        let d = m.eig();
        assert!((d.values[0] - 1.0).abs() < 1e-14);
        assert!((d.values[1] - 2.0).abs() < 1e-14);
        assert!((d.values[2] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn eig_reconstructs_random_matrix() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let m = random_sym(6, &mut rng);
        let d = m.eig();
        // M = V diag(w) V^T, entrywise to 1e-10.
        for i in 0..6 {
            for j in 0..6 {
                let mut rec = 0.0;
                for k in 0..6 {
                    rec += d.values[k] * d.vectors[k][i] * d.vectors[k][j];
                }
                assert!(
                    (rec - m.get(i, j)).abs() < 1e-10,
                    "reconstruction off at ({i},{j})"
                );
            }
        }
        // Orthonormal vectors and small residuals.
        for k in 0..6 {
            for l in 0..6 {
                let d_kl = dot(&d.vectors[k], &d.vectors[l]);
                let expect = if k == l { 1.0 } else { 0.0 };
                assert!((d_kl - expect).abs() < 1e-10);
            }
            let mv = m.mul_vec(&d.vectors[k]);
            let res: f64 = mv
                .iter()
                .zip(&d.vectors[k])
                .map(|(a, b)| (a - d.values[k] * b).powi(2))
                .sum::<f64>()
                .sqrt();
            assert!(res < 1e-10 * m.frobenius_norm().max(1.0));
        }
    }

    #[test]
    fn eigenvalues_invariant_under_orthogonal_similarity() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let m = random_sym(5, &mut rng);
        // Random rotation from the complement basis of a random unit vector,
        // padded with the vector itself.
        let mut x: Vec<f64> = (0..5).map(|_| rng.random_range(-1.0..1.0)).collect();
        let nx = norm(&x);
        x.iter_mut().for_each(|v| *v /= nx);
        let mut q = vec![x.clone()];
        q.extend(orthonormal_complement(&x).unwrap());
        let rotated = SymMatrix::from_upper(5, |i, j| {
            let mut acc = 0.0;
            for a in 0..5 {
                for b in 0..5 {
                    acc += q[i][a] * m.get(a, b) * q[j][b];
                }
            }
            acc
        });
        let w1 = m.eig().values;
        let w2 = rotated.eig().values;
        for (a, b) in w1.iter().zip(&w2) {
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn spectral_radius_takes_magnitudes() {
        let m = SymMatrix::new(2, vec![-5.0, 0.0, 0.0, 2.0]).unwrap();
        assert!((m.spectral_radius() - 5.0).abs() < 1e-14);

        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let m = random_sym(4, &mut rng);
        let by_eig = m
            .eig()
            .values
            .iter()
            .fold(0.0f64, |acc, w| acc.max(w.abs()));
        assert_eq!(m.spectral_radius(), by_eig);
    }

    #[test]
    fn complement_of_basis_vector() {
        let u = orthonormal_complement(&[1.0, 0.0, 0.0]).unwrap();
        assert_eq!(u.len(), 2);
        for col in &u {
            assert!(col[0].abs() < 1e-14);
            assert!((norm(col) - 1.0).abs() < 1e-14);
        }
        assert!(dot(&u[0], &u[1]).abs() < 1e-14);
    }

    #[test]
    fn complement_is_orthonormal_and_orthogonal_to_x() {
        let s = 3.0f64.sqrt().recip();
        let x = [s, s, s];
        let u = orthonormal_complement(&x).unwrap();
        for (k, col) in u.iter().enumerate() {
            assert!(dot(col, &x).abs() < 1e-12);
            for (l, other) in u.iter().enumerate() {
                let expect = if k == l { 1.0 } else { 0.0 };
                assert!((dot(col, other) - expect).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn complement_rejects_non_unit_input() {
        assert!(matches!(
            orthonormal_complement(&[2.0, 0.0]),
            Err(LinalgError::NotUnit(_))
        ));
        assert!(matches!(
            orthonormal_complement(&[0.0, 0.0]),
            Err(LinalgError::NotUnit(_))
        ));
    }

    #[test]
    fn new_rejects_asymmetric_input() {
        let err = SymMatrix::new(2, vec![0.0, 1.0, 0.0, 0.0]);
        assert!(matches!(err, Err(LinalgError::NotSymmetric { .. })));
    }
}
