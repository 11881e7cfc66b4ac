//! Seeded random draws shared by the experiment protocol.
//!
//! All stochastic entry points take an explicit `u64` seed and derive
//! per-trial generators as `seed + trial_index`, so every run is
//! reproducible from its command line.

use num_complex::Complex64;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// Generator for a given trial of a seeded experiment.
pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_add(trial as u64))
}

/// Uniform point on the unit sphere, by normalizing standard normals.
pub fn unit_sphere(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    loop {
        let mut x: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
        let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm > 1e-8 {
            x.iter_mut().for_each(|v| *v /= norm);
            return x;
        }
    }
}

/// Start vector drawn componentwise uniform on `[-1, 1]`, then normalized.
/// Redrawn in the (practically impossible) case of a near-zero draw.
pub fn uniform_box_unit(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    loop {
        let x: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm > 1e-8 {
            return x.iter().map(|v| v / norm).collect();
        }
    }
}

/// Complex start vector: independent uniform real and imaginary parts on
/// `[-1, 1]`, then normalized in the Hermitian norm.
pub fn uniform_box_unit_complex(rng: &mut ChaCha8Rng, n: usize) -> Vec<Complex64> {
    loop {
        let x: Vec<Complex64> = (0..n)
            .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        let norm = x.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-8 {
            return x.iter().map(|v| v / norm).collect();
        }
    }
}
