//! Seeded multistart orchestration with canonical deduplication.

use num_complex::Complex64;
use rayon::prelude::*;

use super::{
    canonicalize_complex, canonicalize_real, complex_pairs_match, complex_sshopm, pairs_match,
    sshopm, ComplexEigenPair, EigenPair, ShiftConfig, SolverError, DEDUP_TOL,
};
use crate::sample;
use crate::tensor::SymTensor;

/// One distinct canonical eigenpair found by a multistart run.
#[derive(Debug, Clone)]
pub struct SummaryEntry {
    pub pair: EigenPair,
    pub occurrences: usize,
    /// Iteration counts of every trial that landed on this pair.
    pub iteration_counts: Vec<usize>,
}

impl SummaryEntry {
    pub fn median_iterations(&self) -> f64 {
        median(&self.iteration_counts)
    }
}

/// Deduplicated outcome of a real multistart experiment.
#[derive(Debug, Clone)]
pub struct RunSummary {
    pub entries: Vec<SummaryEntry>,
    pub failures: usize,
    pub trials: usize,
}

impl RunSummary {
    /// Distinct eigenvalues, in the summary's (descending) order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.pair.lambda).collect()
    }
}

#[derive(Debug, Clone)]
pub struct ComplexSummaryEntry {
    pub pair: ComplexEigenPair,
    pub occurrences: usize,
    pub iteration_counts: Vec<usize>,
}

impl ComplexSummaryEntry {
    pub fn median_iterations(&self) -> f64 {
        median(&self.iteration_counts)
    }
}

/// Deduplicated outcome of a complex multistart experiment. Entries are
/// canonical ring representatives; conjugate eigenvector classes on the same
/// ring stay distinct.
#[derive(Debug, Clone)]
pub struct ComplexRunSummary {
    pub entries: Vec<ComplexSummaryEntry>,
    pub failures: usize,
    pub trials: usize,
}

impl ComplexRunSummary {
    pub fn ring_magnitudes(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.pair.lambda.norm()).collect()
    }
}

fn median(counts: &[usize]) -> f64 {
    if counts.is_empty() {
        return f64::NAN;
    }
    let mut sorted = counts.to_vec();
    sorted.sort_unstable();
    let mid = sorted.len() / 2;
    if sorted.len() % 2 == 1 {
        sorted[mid] as f64
    } else {
        (sorted[mid - 1] + sorted[mid]) as f64 / 2.0
    }
}

fn lex_less(a: &[f64], b: &[f64]) -> bool {
    for (p, q) in a.iter().zip(b) {
        if p != q {
            return p < q;
        }
    }
    false
}

/// Runs `trials` seeded power iterations from random starts and groups the
/// converged results by canonical form.
///
/// Trial `i` draws its start from a generator seeded `cfg.seed + i`, so runs
/// are reproducible and trials may execute in parallel; grouping is by trial
/// index, with near-ties merging into the earlier-found entry. Failed trials
/// (no convergence, or a vanished iterate) are counted, never raised.
pub fn multistart(
    a: &SymTensor,
    cfg: &ShiftConfig,
    trials: usize,
) -> Result<RunSummary, SolverError> {
    cfg.validate()?;
    if trials < 1 {
        return Err(SolverError::BadConfig("at least one trial required".into()));
    }
    let outcomes: Vec<Option<EigenPair>> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = sample::trial_rng(cfg.seed, trial);
            let x0 = sample::uniform_box_unit(&mut rng, a.dim());
            match sshopm(a, &x0, cfg) {
                Ok((pair, _)) if pair.converged => Some(pair),
                _ => None,
            }
        })
        .collect();

    let mut entries: Vec<SummaryEntry> = Vec::new();
    let mut failures = 0usize;
    for outcome in outcomes {
        let Some(pair) = outcome else {
            failures += 1;
            continue;
        };
        let canonical = canonicalize_real(&pair, a.order());
        match entries
            .iter_mut()
            .find(|e| pairs_match(&e.pair, &canonical, DEDUP_TOL))
        {
            Some(entry) => {
                entry.occurrences += 1;
                entry.iteration_counts.push(canonical.iterations);
            }
            None => entries.push(SummaryEntry {
                occurrences: 1,
                iteration_counts: vec![canonical.iterations],
                pair: canonical,
            }),
        }
    }
    entries.sort_by(|p, q| {
        q.pair
            .lambda
            .partial_cmp(&p.pair.lambda)
            .unwrap()
            .then_with(|| {
                if lex_less(&q.pair.x, &p.pair.x) {
                    std::cmp::Ordering::Less
                } else {
                    std::cmp::Ordering::Greater
                }
            })
    });
    Ok(RunSummary {
        entries,
        failures,
        trials,
    })
}

/// Complex-start counterpart of [`multistart`]; results are grouped by
/// canonical ring representative.
pub fn multistart_complex(
    a: &SymTensor,
    alpha: Complex64,
    cfg: &ShiftConfig,
    trials: usize,
) -> Result<ComplexRunSummary, SolverError> {
    cfg.validate()?;
    if trials < 1 {
        return Err(SolverError::BadConfig("at least one trial required".into()));
    }
    let order = a.order();
    let outcomes: Vec<Option<ComplexEigenPair>> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = sample::trial_rng(cfg.seed, trial);
            let x0 = sample::uniform_box_unit_complex(&mut rng, a.dim());
            match complex_sshopm(a, &x0, alpha, cfg) {
                Ok((pair, _)) if pair.converged => canonicalize_complex(&pair, order).ok(),
                _ => None,
            }
        })
        .collect();

    let mut entries: Vec<ComplexSummaryEntry> = Vec::new();
    let mut failures = 0usize;
    for outcome in outcomes {
        let Some(pair) = outcome else {
            failures += 1;
            continue;
        };
        match entries
            .iter_mut()
            .find(|e| complex_pairs_match(&e.pair, &pair, DEDUP_TOL))
        {
            Some(entry) => {
                entry.occurrences += 1;
                entry.iteration_counts.push(pair.iterations);
            }
            None => entries.push(ComplexSummaryEntry {
                occurrences: 1,
                iteration_counts: vec![pair.iterations],
                pair,
            }),
        }
    }
    entries.sort_by(|p, q| {
        q.pair
            .lambda
            .re
            .partial_cmp(&p.pair.lambda.re)
            .unwrap()
            .then_with(|| {
                let px: Vec<f64> = p.pair.x.iter().flat_map(|z| [z.re, z.im]).collect();
                let qx: Vec<f64> = q.pair.x.iter().flat_map(|z| [z.re, z.im]).collect();
                if lex_less(&qx, &px) {
                    std::cmp::Ordering::Less
                } else {
                    std::cmp::Ordering::Greater
                }
            })
    });
    Ok(ComplexRunSummary {
        entries,
        failures,
        trials,
    })
}
