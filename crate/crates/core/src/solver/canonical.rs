//! Canonical representatives of eigenpair equivalence classes.
//!
//! For even order, `(lambda, x)` and `(lambda, -x)` are the same class; for
//! odd order, `(lambda, x)` and `(-lambda, -x)` are. Complex classes are
//! whole eigenrings generated by phase rotation. Deduplication throughout the
//! crate compares canonical forms.

use num_complex::Complex64;

use super::{ComplexEigenPair, EigenPair, SolverError};

/// Magnitude below which a component is skipped when picking the sign- or
/// phase-fixing component.
const SIGNIFICANT: f64 = 1e-12;

fn first_significant(x: &[f64]) -> Option<usize> {
    x.iter().position(|v| v.abs() > SIGNIFICANT)
}

fn flip_even(pair: &EigenPair) -> EigenPair {
    let mut out = pair.clone();
    out.x.iter_mut().for_each(|v| *v = -*v);
    out
}

fn flip_odd(pair: &EigenPair) -> EigenPair {
    // (lambda, x) -> (-lambda, -x): the projected Hessian negates, so its
    // spectrum reverses sign and order, and the stable classes swap.
    let mut out = pair.clone();
    out.lambda = -out.lambda;
    out.x.iter_mut().for_each(|v| *v = -*v);
    out.c_spectrum = out.c_spectrum.iter().rev().map(|c| -c).collect();
    out.classification = out.classification.flip();
    out
}

/// Canonical representative of a real eigenpair's equivalence class.
///
/// Even order: the eigenvector's first significant component is made
/// positive. Odd order: the sign pair is flipped to make `lambda`
/// nonnegative; for `lambda` within 1e-12 of zero the even-order vector rule
/// applies instead. Idempotent.
pub fn canonicalize_real(pair: &EigenPair, order: usize) -> EigenPair {
    if order % 2 == 0 {
        match first_significant(&pair.x) {
            Some(i) if pair.x[i] < 0.0 => flip_even(pair),
            _ => pair.clone(),
        }
    } else if pair.lambda < -SIGNIFICANT {
        flip_odd(pair)
    } else if pair.lambda.abs() <= SIGNIFICANT {
        match first_significant(&pair.x) {
            Some(i) if pair.x[i] < 0.0 => flip_odd(pair),
            _ => pair.clone(),
        }
    } else {
        pair.clone()
    }
}

/// Canonical representative of a complex eigenpair's eigenring.
///
/// The pair is rescaled so the eigenvalue is real positive and the
/// eigenvector has unit Hermitian norm. The leftover `(m-2)`-th
/// root-of-unity freedom is fixed on the first significant component: take
/// the rotation maximizing its real part, with near-ties (within 1e-9)
/// broken toward positive imaginary part. A half-open phase window would be
/// simpler, but rings of real eigenpairs land their lead component exactly
/// on any such window's boundary (phase 0/pi for positive eigenvalues,
/// +-pi/2 for negative ones at order 4), and floating noise would then flip
/// the representative between runs and break deduplication. Requires order
/// >= 3 and a nonzero eigenvalue.
pub fn canonicalize_complex(
    pair: &ComplexEigenPair,
    order: usize,
) -> Result<ComplexEigenPair, SolverError> {
    if order < 3 {
        return Err(SolverError::BadConfig(
            "ring representatives need order >= 3".into(),
        ));
    }
    if pair.lambda.norm() == 0.0 {
        return Err(SolverError::ZeroEigenvalue);
    }
    let xhx: f64 = pair.x.iter().map(|v| v.norm_sqr()).sum();
    if xhx < 1e-12 {
        return Err(SolverError::BadConfig(
            "eigenvector norm too small to rescale".into(),
        ));
    }
    let root = order as f64 - 2.0;
    let lambda_mag = pair.lambda.norm();
    let phase = (Complex64::new(lambda_mag, 0.0) / pair.lambda).powf(1.0 / root);
    let scale = phase / xhx.sqrt();
    let mut x: Vec<Complex64> = pair.x.iter().map(|v| v * scale).collect();
    let lambda = Complex64::new(lambda_mag / xhx.powf(root / 2.0), 0.0);

    // Resolve the (m-2)-th root-of-unity freedom.
    let lead = x
        .iter()
        .position(|v| v.norm() > 1e-8)
        .expect("unit vector has a significant component");
    let step = 2.0 * std::f64::consts::PI / root;
    let theta = x[lead].arg();
    let candidates: Vec<(f64, f64, usize)> = (0..root as usize)
        .map(|k| {
            let (s, c) = (theta + k as f64 * step).sin_cos();
            (c, s, k)
        })
        .collect();
    let best_cos = candidates
        .iter()
        .map(|c| c.0)
        .fold(f64::NEG_INFINITY, f64::max);
    let k = candidates
        .iter()
        .filter(|c| c.0 >= best_cos - 1e-9)
        .max_by(|p, q| p.1.partial_cmp(&q.1).unwrap())
        .expect("at least one candidate")
        .2;
    if k != 0 {
        let twist = Complex64::from_polar(1.0, k as f64 * step);
        x.iter_mut().for_each(|v| *v *= twist);
    }

    Ok(ComplexEigenPair {
        lambda,
        x,
        residual: pair.residual,
        iterations: pair.iterations,
        converged: pair.converged,
    })
}

/// True when two (canonical) real pairs agree within `tol` in both the
/// eigenvalue and the eigenvector.
pub fn pairs_match(a: &EigenPair, b: &EigenPair, tol: f64) -> bool {
    if (a.lambda - b.lambda).abs() > tol {
        return false;
    }
    let dx: f64 =
        a.x.iter()
            .zip(&b.x)
            .map(|(p, q)| (p - q) * (p - q))
            .sum::<f64>()
            .sqrt();
    dx <= tol
}

/// Complex counterpart of [`pairs_match`].
pub fn complex_pairs_match(a: &ComplexEigenPair, b: &ComplexEigenPair, tol: f64) -> bool {
    if (a.lambda - b.lambda).norm() > tol {
        return false;
    }
    let dx: f64 =
        a.x.iter()
            .zip(&b.x)
            .map(|(p, q)| (p - q).norm_sqr())
            .sum::<f64>()
            .sqrt();
    dx <= tol
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample;
    use crate::solver::Classification;

    fn pair(lambda: f64, x: Vec<f64>, class: Classification, spec: Vec<f64>) -> EigenPair {
        EigenPair {
            lambda,
            x,
            residual: 0.0,
            c_spectrum: spec,
            classification: class,
            iterations: 1,
            converged: true,
        }
    }

    #[test]
    fn even_order_fixes_vector_sign() {
        let p = pair(
            0.8893,
            vec![-0.6672, -0.2471, 0.7027],
            Classification::NegativeStable,
            vec![-1.8459, -0.8857],
        );
        let c = canonicalize_real(&p, 4);
        assert_eq!(c.lambda, 0.8893);
        assert!(c.x[0] > 0.0);
        assert_eq!(c.classification, Classification::NegativeStable);
        assert_eq!(c.c_spectrum, p.c_spectrum);
    }

    #[test]
    fn odd_order_fixes_eigenvalue_sign() {
        let p = pair(
            -0.0006,
            vec![-0.2907, -0.7359, 0.6115],
            Classification::NegativeStable,
            vec![-0.1405, -0.0968],
        );
        let c = canonicalize_real(&p, 3);
        assert!((c.lambda - 0.0006).abs() < 1e-12);
        assert!((c.x[0] - 0.2907).abs() < 1e-12);
        assert_eq!(c.classification, Classification::PositiveStable);
        assert!((c.c_spectrum[0] - 0.0968).abs() < 1e-12);
        assert!((c.c_spectrum[1] - 0.1405).abs() < 1e-12);
    }

    #[test]
    fn canonicalization_is_idempotent() {
        let mut rng = sample::trial_rng(101, 0);
        for trial in 0..1000 {
            let order = if trial % 2 == 0 { 3 } else { 4 };
            let x = sample::uniform_box_unit(&mut rng, 3);
            let lambda = (x[0] * 10.0).round() / 10.0;
            let p = pair(lambda, x, Classification::Unstable, vec![-1.0, 1.0]);
            let once = canonicalize_real(&p, order);
            let twice = canonicalize_real(&once, order);
            assert!(pairs_match(&once, &twice, 0.0));
            assert_eq!(once.classification, twice.classification);
        }
    }

    #[test]
    fn complex_ring_representative_is_rotation_invariant() {
        // Start from the tabulated ring representative and verify every
        // phase rotation of it canonicalizes back to the same point.
        let base_x = [
            Complex64::new(0.2930, 0.0571),
            Complex64::new(0.8171, -0.0365),
            Complex64::new(-0.4912, -0.0245),
        ];
        let nx: f64 = base_x.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
        let base_x: Vec<Complex64> = base_x.iter().map(|v| v / nx).collect();
        let base = ComplexEigenPair {
            lambda: Complex64::new(0.6694, 0.0),
            x: base_x,
            residual: 0.0,
            iterations: 1,
            converged: true,
        };
        let canon = canonicalize_complex(&base, 4).unwrap();
        assert!((canon.lambda.re - 0.6694).abs() < 1e-12);
        assert!(canon.lambda.im.abs() < 1e-15);

        let mut rng = sample::trial_rng(7, 0);
        for _ in 0..50 {
            let phi: f64 = rand::Rng::random_range(&mut rng, 0.0..std::f64::consts::TAU);
            let ring = Complex64::from_polar(1.0, 2.0 * phi);
            let rot = Complex64::from_polar(1.0, phi);
            let rotated = ComplexEigenPair {
                lambda: base.lambda * ring,
                x: base.x.iter().map(|v| v * rot).collect(),
                residual: 0.0,
                iterations: 1,
                converged: true,
            };
            let c = canonicalize_complex(&rotated, 4).unwrap();
            assert!(
                complex_pairs_match(&c, &canon, 1e-10),
                "rotation by {phi} escaped the canonical form"
            );
        }
    }

    #[test]
    fn real_ring_members_share_a_canonical_form() {
        // Rings of real pairs carry phase noise around 0 and pi; both signs
        // must land on the same representative.
        let x = [0.6672, 0.2471, -0.7027];
        let nx = norm_of(&x);
        for flip in [1.0, -1.0] {
            for noise in [1e-16, -1e-16] {
                let z: Vec<Complex64> = x
                    .iter()
                    .map(|&v| Complex64::new(flip * v / nx, noise))
                    .collect();
                let p = ComplexEigenPair {
                    lambda: Complex64::new(0.8893, 0.0),
                    x: z,
                    residual: 0.0,
                    iterations: 1,
                    converged: true,
                };
                let c = canonicalize_complex(&p, 4).unwrap();
                assert!(
                    c.x[0].re > 0.0,
                    "flip {flip} noise {noise} kept a negative lead component"
                );
                assert!((c.x[0].re - x[0] / nx).abs() < 1e-9);
            }
        }
    }

    fn norm_of(x: &[f64]) -> f64 {
        x.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    #[test]
    fn imaginary_axis_ring_members_share_a_canonical_form() {
        // A real pair with negative eigenvalue canonicalizes to +-i times a
        // real vector; both signs and both noise directions must merge.
        let v = [-0.5915, 0.7467, 0.3043];
        let nv = norm_of(&v);
        let mut reps = Vec::new();
        for flip in [1.0, -1.0] {
            for noise in [1e-16, -1e-16] {
                let z: Vec<Complex64> = v
                    .iter()
                    .map(|&c| Complex64::new(noise, flip * c / nv))
                    .collect();
                let p = ComplexEigenPair {
                    lambda: Complex64::new(1.0954, 0.0),
                    x: z,
                    residual: 0.0,
                    iterations: 1,
                    converged: true,
                };
                reps.push(canonicalize_complex(&p, 4).unwrap());
            }
        }
        for r in &reps[1..] {
            assert!(
                complex_pairs_match(&reps[0], r, 1e-9),
                "ring members split: {:?} vs {:?}",
                reps[0].x[0],
                r.x[0]
            );
        }
    }

    #[test]
    fn real_positive_pair_is_unchanged() {
        let x = vec![
            Complex64::new(0.6, 0.0),
            Complex64::new(0.8, 0.0),
            Complex64::new(0.0, 0.0),
        ];
        let p = ComplexEigenPair {
            lambda: Complex64::new(0.5, 0.0),
            x: x.clone(),
            residual: 0.0,
            iterations: 1,
            converged: true,
        };
        let c = canonicalize_complex(&p, 4).unwrap();
        assert!((c.lambda.re - 0.5).abs() < 1e-14);
        for (a, b) in c.x.iter().zip(&x) {
            assert!((a - b).norm() < 1e-14);
        }
    }

    #[test]
    fn complex_rejects_zero_eigenvalue_and_low_order() {
        let p = ComplexEigenPair {
            lambda: Complex64::new(0.0, 0.0),
            x: vec![Complex64::new(1.0, 0.0)],
            residual: 0.0,
            iterations: 0,
            converged: false,
        };
        assert!(matches!(
            canonicalize_complex(&p, 4),
            Err(SolverError::ZeroEigenvalue)
        ));
        let q = ComplexEigenPair {
            lambda: Complex64::new(1.0, 0.0),
            x: vec![Complex64::new(1.0, 0.0)],
            residual: 0.0,
            iterations: 0,
            converged: false,
        };
        assert!(matches!(
            canonicalize_complex(&q, 2),
            Err(SolverError::BadConfig(_))
        ));
    }
}
