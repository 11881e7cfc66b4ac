//! Table, CSV, and JSON renderings of experiment results.
//!
//! All output is deterministic for a given input: column orders are fixed,
//! floats print through Rust's shortest round-trip formatting in CSV/JSON
//! and at four decimals in tables.

use serde::Serialize;

use teneig_core::oracle::{Enumeration, VerifyReport};
use teneig_core::solver::{ComplexRunSummary, IterationTrace, RunSummary, SweepRow};
use teneig_core::tensor::SymTensor;

#[derive(Serialize, Clone, Copy)]
pub struct TensorMeta {
    pub m: usize,
    pub n: usize,
}

impl TensorMeta {
    pub fn of(a: &SymTensor) -> Self {
        Self {
            m: a.order(),
            n: a.dim(),
        }
    }
}

#[derive(Serialize, Clone)]
pub struct SolveConfig {
    pub alpha: f64,
    pub trials: usize,
    pub seed: u64,
    pub tol: f64,
    pub x_tol: f64,
    pub max_iters: usize,
    pub complex: bool,
}

fn fmt_vec_table(x: &[f64]) -> String {
    let comps: Vec<String> = x.iter().map(|v| format!("{v:7.4}")).collect();
    format!("[ {} ]", comps.join(" "))
}

fn fmt_spectrum_table(c: &[f64]) -> String {
    let comps: Vec<String> = c.iter().map(|v| format!("{v:7.4}")).collect();
    format!("{{ {} }}", comps.join(", "))
}

pub fn solve_table(summary: &RunSummary) -> String {
    let mut out = String::new();
    out.push_str(
        "occurrences  lambda    x                                  type        median_its\n",
    );
    for e in &summary.entries {
        out.push_str(&format!(
            "{:>11}  {:7.4}   {:<33}  {:<10}  {:>8.0}\n",
            e.occurrences,
            e.pair.lambda,
            fmt_vec_table(&e.pair.x),
            e.pair.classification.to_string(),
            e.median_iterations()
        ));
    }
    out.push_str(&format!(
        "trials = {}, distinct = {}, failures = {}\n",
        summary.trials,
        summary.entries.len(),
        summary.failures
    ));
    out
}

pub fn solve_csv(summary: &RunSummary, dim: usize) -> String {
    let mut out = String::from("occurrences,lambda");
    for i in 1..=dim {
        out.push_str(&format!(",x{i}"));
    }
    out.push_str(",type,median_iters\n");
    for e in &summary.entries {
        out.push_str(&format!("{},{}", e.occurrences, e.pair.lambda));
        for v in &e.pair.x {
            out.push_str(&format!(",{v}"));
        }
        out.push_str(&format!(
            ",{},{}\n",
            e.pair.classification,
            e.median_iterations()
        ));
    }
    out.push_str(&format!("# failures = {}\n", summary.failures));
    out
}

#[derive(Serialize)]
struct SolveRow {
    lambda: f64,
    x: Vec<f64>,
    #[serde(rename = "type")]
    kind: String,
    occurrences: usize,
    median_iters: f64,
}

#[derive(Serialize)]
struct SolveDoc<'a> {
    tensor: TensorMeta,
    config: &'a SolveConfig,
    results: Vec<SolveRow>,
    failures: usize,
}

pub fn solve_json(meta: TensorMeta, config: &SolveConfig, summary: &RunSummary) -> String {
    let doc = SolveDoc {
        tensor: meta,
        config,
        results: summary
            .entries
            .iter()
            .map(|e| SolveRow {
                lambda: e.pair.lambda,
                x: e.pair.x.clone(),
                kind: e.pair.classification.to_string(),
                occurrences: e.occurrences,
                median_iters: e.median_iterations(),
            })
            .collect(),
        failures: summary.failures,
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("serializable document");
    s.push('\n');
    s
}

pub fn complex_solve_table(summary: &ComplexRunSummary) -> String {
    let mut out = String::new();
    out.push_str("occurrences  |lambda|  x (ring representative)                                median_its\n");
    for e in &summary.entries {
        let comps: Vec<String> = e
            .pair
            .x
            .iter()
            .map(|z| format!("{:7.4}{:+7.4}i", z.re, z.im))
            .collect();
        out.push_str(&format!(
            "{:>11}  {:8.4}  [ {} ]  {:>8.0}\n",
            e.occurrences,
            e.pair.lambda.norm(),
            comps.join(" "),
            e.median_iterations()
        ));
    }
    out.push_str(&format!(
        "trials = {}, distinct = {}, failures = {}\n",
        summary.trials,
        summary.entries.len(),
        summary.failures
    ));
    out
}

pub fn complex_solve_csv(summary: &ComplexRunSummary, dim: usize) -> String {
    let mut out = String::from("occurrences,lambda_abs");
    for i in 1..=dim {
        out.push_str(&format!(",x{i}_re,x{i}_im"));
    }
    out.push_str(",median_iters\n");
    for e in &summary.entries {
        out.push_str(&format!("{},{}", e.occurrences, e.pair.lambda.norm()));
        for z in &e.pair.x {
            out.push_str(&format!(",{},{}", z.re, z.im));
        }
        out.push_str(&format!(",{}\n", e.median_iterations()));
    }
    out.push_str(&format!("# failures = {}\n", summary.failures));
    out
}

#[derive(Serialize)]
struct ComplexSolveRow {
    lambda: f64,
    x: Vec<[f64; 2]>,
    #[serde(rename = "type")]
    kind: String,
    occurrences: usize,
    median_iters: f64,
}

#[derive(Serialize)]
struct ComplexSolveDoc<'a> {
    tensor: TensorMeta,
    config: &'a SolveConfig,
    results: Vec<ComplexSolveRow>,
    failures: usize,
}

pub fn complex_solve_json(
    meta: TensorMeta,
    config: &SolveConfig,
    summary: &ComplexRunSummary,
) -> String {
    let doc = ComplexSolveDoc {
        tensor: meta,
        config,
        results: summary
            .entries
            .iter()
            .map(|e| ComplexSolveRow {
                lambda: e.pair.lambda.norm(),
                x: e.pair.x.iter().map(|z| [z.re, z.im]).collect(),
                kind: "complex".into(),
                occurrences: e.occurrences,
                median_iters: e.median_iterations(),
            })
            .collect(),
        failures: summary.failures,
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("serializable document");
    s.push('\n');
    s
}

pub fn enumerate_table(e: &Enumeration) -> String {
    let mut out = String::new();
    out.push_str("lambda    x                                  eigenvalues_of_C           type\n");
    for p in &e.pairs {
        out.push_str(&format!(
            "{:7.4}   {:<33}  {:<25}  {}\n",
            p.lambda,
            fmt_vec_table(&p.x),
            fmt_spectrum_table(&p.c_spectrum),
            p.classification
        ));
    }
    out.push_str(&format!("bound = {} (found {})\n", e.bound, e.pairs.len()));
    out
}

pub fn enumerate_csv(e: &Enumeration, dim: usize) -> String {
    let mut out = String::from("lambda");
    for i in 1..=dim {
        out.push_str(&format!(",x{i}"));
    }
    for i in 1..dim {
        out.push_str(&format!(",c{i}"));
    }
    out.push_str(",type,residual\n");
    for p in &e.pairs {
        out.push_str(&p.lambda.to_string());
        for v in &p.x {
            out.push_str(&format!(",{v}"));
        }
        for c in &p.c_spectrum {
            out.push_str(&format!(",{c}"));
        }
        out.push_str(&format!(",{},{}\n", p.classification, p.residual));
    }
    out.push_str(&format!("# bound = {}\n", e.bound));
    out
}

#[derive(Serialize)]
struct EnumerateRow {
    lambda: f64,
    x: Vec<f64>,
    c_spectrum: Vec<f64>,
    #[serde(rename = "type")]
    kind: String,
    residual: f64,
}

#[derive(Serialize)]
struct EnumerateDoc {
    tensor: TensorMeta,
    starts: usize,
    seed: u64,
    bound: u64,
    results: Vec<EnumerateRow>,
}

pub fn enumerate_json(meta: TensorMeta, starts: usize, seed: u64, e: &Enumeration) -> String {
    let doc = EnumerateDoc {
        tensor: meta,
        starts,
        seed,
        bound: e.bound,
        results: e
            .pairs
            .iter()
            .map(|p| EnumerateRow {
                lambda: p.lambda,
                x: p.x.clone(),
                c_spectrum: p.c_spectrum.clone(),
                kind: p.classification.to_string(),
                residual: p.residual,
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("serializable document");
    s.push('\n');
    s
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from("eigenpair_id,alpha,rho,defined_flag\n");
    for row in rows {
        match row.rho {
            Some(rho) => out.push_str(&format!("{},{},{},1\n", row.pair_index, row.alpha, rho)),
            None => out.push_str(&format!("{},{},,0\n", row.pair_index, row.alpha)),
        }
    }
    out
}

pub fn trace_csv(trace: &IterationTrace) -> String {
    let mut out = String::from("k,lambda_k,dx_norm\n");
    for (k, (l, dx)) in trace.lambdas.iter().zip(&trace.dx_norms).enumerate() {
        out.push_str(&format!("{k},{l},{dx}\n"));
    }
    out
}

pub fn classify_text(lambda: f64, report: &VerifyReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("lambda          = {lambda}\n"));
    out.push_str(&format!("residual        = {:.3e}\n", report.residual));
    out.push_str(&format!("norm_error      = {:.3e}\n", report.norm_error));
    out.push_str(&format!(
        "eigenvalues_of_C = {}\n",
        fmt_spectrum_table(&report.c_spectrum)
    ));
    out.push_str(&format!("type            = {}\n", report.classification));
    for (alpha, rho) in &report.rho {
        match rho {
            Some(r) => out.push_str(&format!("rho(J) at alpha = {alpha}: {r:.6}\n")),
            None => out.push_str(&format!("rho(J) at alpha = {alpha}: undefined\n")),
        }
    }
    out.push_str(if report.pass { "PASS\n" } else { "FAIL\n" });
    out
}

#[derive(Serialize)]
struct ClassifyDoc {
    lambda: f64,
    residual: f64,
    norm_error: f64,
    c_spectrum: Vec<f64>,
    #[serde(rename = "type")]
    kind: String,
    rho: Vec<RhoRow>,
    pass: bool,
}

#[derive(Serialize)]
struct RhoRow {
    alpha: f64,
    rho: Option<f64>,
}

pub fn classify_json(lambda: f64, report: &VerifyReport) -> String {
    let doc = ClassifyDoc {
        lambda,
        residual: report.residual,
        norm_error: report.norm_error,
        c_spectrum: report.c_spectrum.clone(),
        kind: report.classification.to_string(),
        rho: report
            .rho
            .iter()
            .map(|(alpha, rho)| RhoRow {
                alpha: *alpha,
                rho: *rho,
            })
            .collect(),
        pass: report.pass,
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("serializable document");
    s.push('\n');
    s
}
