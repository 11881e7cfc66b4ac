//! Cross-module invariants on random instances.

use proptest::prelude::*;

use teneig_core::io::{parse_tensor, write_tensor};
use teneig_core::linalg::norm;
use teneig_core::sample;
use teneig_core::solver::{self, ShiftConfig};
use teneig_core::tensor::SymTensor;

fn shape() -> impl Strategy<Value = (usize, usize)> {
    prop_oneof![
        Just((3usize, 2usize)),
        Just((3, 3)),
        Just((4, 2)),
        Just((4, 3)),
        Just((6, 2)),
        Just((2, 5)),
    ]
}

fn tensor_and_vector() -> impl Strategy<Value = (SymTensor, Vec<f64>)> {
    shape().prop_flat_map(|(m, n)| {
        let len = n.pow(m as u32);
        (
            proptest::collection::vec(-1.0..1.0f64, len),
            proptest::collection::vec(-1.0..1.0f64, n),
        )
            .prop_map(move |(raw, x)| (SymTensor::from_raw(m, n, raw).unwrap(), x))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn contraction_routes_agree((a, x) in tensor_and_vector()) {
        let fx = a.eval(&x);
        let via_vec: f64 = a.apply(&x).iter().zip(&x).map(|(g, xi)| g * xi).sum();
        let mat = a.contract_matrix(&x).unwrap();
        let via_mat: f64 = mat.mul_vec(&x).iter().zip(&x).map(|(g, xi)| g * xi).sum();
        let scale = fx.abs().max(1.0);
        prop_assert!((fx - via_vec).abs() <= 1e-12 * scale);
        prop_assert!((fx - via_mat).abs() <= 1e-12 * scale);
    }

    #[test]
    fn apply_is_degree_homogeneous((a, x) in tensor_and_vector(), c in -2.0..2.0f64) {
        let scaled: Vec<f64> = x.iter().map(|v| c * v).collect();
        let lhs = a.apply(&scaled);
        let rhs = a.apply(&x);
        let factor = c.powi(a.order() as i32 - 1);
        for (l, r) in lhs.iter().zip(&rhs) {
            let want = factor * r;
            prop_assert!((l - want).abs() <= 1e-12 * want.abs().max(1.0));
        }
    }

    #[test]
    fn text_round_trip_is_bit_exact((a, _) in tensor_and_vector()) {
        let back = parse_tensor(&write_tensor(&a)).unwrap();
        prop_assert_eq!(a.entries(), back.entries());
    }

    #[test]
    fn canonical_form_is_idempotent((a, x) in tensor_and_vector()) {
        prop_assume!(norm(&x) > 1e-3);
        let unit: Vec<f64> = {
            let nx = norm(&x);
            x.iter().map(|v| v / nx).collect()
        };
        let lambda = a.eval(&unit);
        let pair = solver::EigenPair {
            lambda,
            x: unit,
            residual: 0.0,
            c_spectrum: vec![],
            classification: solver::Classification::Degenerate,
            iterations: 0,
            converged: false,
        };
        let once = solver::canonicalize_real(&pair, a.order());
        let twice = solver::canonicalize_real(&once, a.order());
        prop_assert_eq!(once.lambda, twice.lambda);
        prop_assert_eq!(once.x, twice.x);
    }
}

/// Shifted runs past the conservative bound are monotone, and everything
/// they converge to obeys the eigenvalue magnitude cap.
#[test]
fn shifted_runs_are_monotone_and_bounded() {
    for (case, (m, n)) in [
        (0u64, (3usize, 2usize)),
        (1, (3, 3)),
        (2, (4, 2)),
        (3, (4, 3)),
    ]
    .into_iter()
    .enumerate()
    .map(|(i, s)| (i as u64, s.1))
    {
        for rep in 0..4 {
            let mut rng = sample::trial_rng(900 + case, rep);
            let len = n.pow(m as u32);
            let raw: Vec<f64> = (0..len)
                .map(|_| rand::Rng::random_range(&mut rng, -1.0..1.0))
                .collect();
            let a = SymTensor::from_raw(m, n, raw).unwrap();
            let beta = a.beta_conservative();
            for sign in [1.0, -1.0] {
                let mut cfg = ShiftConfig::new(sign * (beta + 1.0));
                cfg.max_iters = 400;
                let x0 = sample::uniform_box_unit(&mut rng, n);
                let (pair, trace) = solver::sshopm(&a, &x0, &cfg).unwrap();
                for w in trace.lambdas.windows(2) {
                    if sign > 0.0 {
                        assert!(w[1] >= w[0] - 1e-13, "convex trace decreased");
                    } else {
                        assert!(w[1] <= w[0] + 1e-13, "concave trace increased");
                    }
                }
                if pair.converged {
                    assert!(pair.residual <= 1e-8);
                    assert!(pair.lambda.abs() <= beta / (m as f64 - 1.0) + 1e-9);
                    assert!((norm(&pair.x) - 1.0).abs() <= 1e-12);
                }
            }
        }
    }
}

/// For odd order the convex and concave experiments find the same canonical
/// eigenpair set.
#[test]
fn odd_order_shift_mirror() {
    let a = teneig_core::io::builtin_corpus("odd33").unwrap();
    let up = solver::multistart(&a, &ShiftConfig::new(1.0), 60).unwrap();
    let down = solver::multistart(&a, &ShiftConfig::new(-1.0), 60).unwrap();
    assert_eq!(up.entries.len(), down.entries.len());
    for (p, q) in up.entries.iter().zip(&down.entries) {
        assert!(
            solver::pairs_match(&p.pair, &q.pair, 1e-6),
            "mirror mismatch: {} vs {}",
            p.pair.lambda,
            q.pair.lambda
        );
    }
}

/// Power-iteration results and the Newton enumeration validate each other:
/// everything the solver converges to is on the oracle's list, and every
/// attracting pair on the oracle's list is reached by the solver.
#[test]
fn solver_and_oracle_cross_validate() {
    let a = teneig_core::io::builtin_corpus("kore02").unwrap();
    let enumeration = teneig_core::oracle::enumerate_real(&a, 2000, 0).unwrap();
    let summary = solver::multistart(&a, &ShiftConfig::new(2.0), 100).unwrap();
    for entry in &summary.entries {
        assert!(
            enumeration
                .pairs
                .iter()
                .any(|p| solver::pairs_match(p, &entry.pair, 1e-6)),
            "solver found a pair the oracle does not know: {}",
            entry.pair.lambda
        );
    }

    let a = teneig_core::io::builtin_corpus("odd33").unwrap();
    let enumeration = teneig_core::oracle::enumerate_real(&a, 2000, 0).unwrap();
    let mut cfg = ShiftConfig::new(a.beta_conservative() + 1.0);
    cfg.max_iters = 5000;
    let summary = solver::multistart(&a, &cfg, 500).unwrap();
    for pair in &enumeration.pairs {
        if pair.classification != solver::Classification::NegativeStable {
            continue;
        }
        assert!(
            summary
                .entries
                .iter()
                .any(|e| solver::pairs_match(&e.pair, pair, 1e-6)),
            "attracting pair {} not reached in 500 trials",
            pair.lambda
        );
    }
}

/// The matrix case reduces to ordinary shifted power iteration: extreme
/// eigenvalues match a dense eigensolve.
#[test]
fn matrix_reduction_recovers_extremes() {
    for seed in 0..5u64 {
        let mut rng = sample::trial_rng(40 + seed, 0);
        let raw: Vec<f64> = (0..25)
            .map(|_| rand::Rng::random_range(&mut rng, -1.0..1.0))
            .collect();
        let a = SymTensor::from_raw(2, 5, raw).unwrap();
        let dense = teneig_core::SymMatrix::new(5, a.entries().to_vec())
            .unwrap()
            .eig();
        let beta = a.beta_conservative();
        let up = solver::multistart(&a, &ShiftConfig::new(beta + 1.0), 10).unwrap();
        assert_eq!(up.entries.len(), 1);
        assert!((up.entries[0].pair.lambda - dense.values[4]).abs() <= 1e-10);
        let down = solver::multistart(&a, &ShiftConfig::new(-beta - 1.0), 10).unwrap();
        assert_eq!(down.entries.len(), 1);
        assert!((down.entries[0].pair.lambda - dense.values[0]).abs() <= 1e-10);
    }
}
