//! Command implementations behind the argument surface.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use num_complex::Complex64;

use teneig_core::io::{builtin_corpus, parse_tensor, CorpusError};
use teneig_core::linalg::norm;
use teneig_core::oracle;
use teneig_core::sample;
use teneig_core::solver::{
    self, classify_spectrum, EigenPair, ShiftConfig, SolverError, DEGENERATE_TOL,
};
use teneig_core::tensor::SymTensor;

use crate::args::{
    BasinsArgs, ClassifyArgs, EnumerateArgs, Format, SolveArgs, Source, SweepArgs, TraceArgs,
};
use crate::basins;
use crate::render;

/// Command failure classes, mapped onto the tool's exit codes:
/// usage = 1, parse = 2, numerical = 3.
#[derive(Debug)]
pub enum CmdError {
    Usage(String),
    Parse(String),
    Numerical(String),
    Io(std::io::Error),
}

impl fmt::Display for CmdError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CmdError::Usage(m) => write!(f, "{m}"),
            CmdError::Parse(m) => write!(f, "{m}"),
            CmdError::Numerical(m) => write!(f, "{m}"),
            CmdError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<std::io::Error> for CmdError {
    fn from(e: std::io::Error) -> Self {
        CmdError::Io(e)
    }
}

impl CmdError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CmdError::Usage(_) => 1,
            CmdError::Parse(_) | CmdError::Io(_) => 2,
            CmdError::Numerical(_) => 3,
        }
    }
}

fn load_tensor(source: &Source) -> Result<SymTensor, CmdError> {
    if let Some(path) = &source.tensor {
        let text = fs::read_to_string(path)
            .map_err(|e| CmdError::Parse(format!("{}: {e}", path.display())))?;
        return parse_tensor(&text)
            .map_err(|e| CmdError::Parse(format!("{}: {e}", path.display())));
    }
    let name = source.builtin.as_deref().expect("clap enforces the group");
    builtin_corpus(name).map_err(|e| match e {
        CorpusError::Unknown(_) => CmdError::Usage(e.to_string()),
        CorpusError::Tensor(t) => CmdError::Usage(t.to_string()),
    })
}

/// `auto` is the conservative convexity bound plus one; `auto-neg` its
/// negative; anything else must parse as a number.
fn resolve_alpha(spec: &str, a: &SymTensor) -> Result<f64, CmdError> {
    match spec {
        "auto" => Ok(a.beta_conservative() + 1.0),
        "auto-neg" => Ok(-(a.beta_conservative() + 1.0)),
        other => other
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| {
                CmdError::Usage(format!(
                    "--alpha must be a number, `auto`, or `auto-neg`; got `{other}`"
                ))
            }),
    }
}

fn parse_vector(spec: &str, dim: usize) -> Result<Vec<f64>, CmdError> {
    let parts: Result<Vec<f64>, _> = spec.split(',').map(|t| t.trim().parse::<f64>()).collect();
    let v = parts.map_err(|_| CmdError::Usage(format!("could not parse vector `{spec}`")))?;
    if v.len() != dim {
        return Err(CmdError::Usage(format!(
            "vector has {} components, tensor dimension is {dim}",
            v.len()
        )));
    }
    if v.iter().any(|c| !c.is_finite()) {
        return Err(CmdError::Usage("vector components must be finite".into()));
    }
    Ok(v)
}

fn parse_resolution(spec: &str) -> Result<(usize, usize), CmdError> {
    let bad = || {
        CmdError::Usage(format!(
            "--resolution must be WxH with W,H >= 2; got `{spec}`"
        ))
    };
    let (w, h) = spec.split_once('x').ok_or_else(bad)?;
    let w: usize = w.parse().map_err(|_| bad())?;
    let h: usize = h.parse().map_err(|_| bad())?;
    if w < 2 || h < 2 {
        return Err(bad());
    }
    Ok((w, h))
}

fn write_output(out: &Option<PathBuf>, content: &str) -> Result<(), CmdError> {
    match out {
        Some(path) => fs::write(path, content)?,
        None => print!("{content}"),
    }
    Ok(())
}

pub fn cmd_solve(args: &SolveArgs) -> Result<(), CmdError> {
    let a = load_tensor(&args.source)?;
    if a.order() < 2 {
        return Err(CmdError::Usage("solve requires tensor order >= 2".into()));
    }
    let alpha = resolve_alpha(&args.alpha, &a)?;
    let mut cfg = ShiftConfig::new(alpha);
    cfg.tol = args.tol;
    cfg.x_tol = args.x_tol;
    cfg.max_iters = args.max_iters;
    cfg.seed = args.seed;
    let meta = render::TensorMeta::of(&a);
    let config = render::SolveConfig {
        alpha,
        trials: args.trials,
        seed: args.seed,
        tol: args.tol,
        x_tol: args.x_tol,
        max_iters: args.max_iters,
        complex: args.complex,
    };

    let rendered = if args.complex {
        if a.order() < 3 {
            return Err(CmdError::Usage(
                "complex ring representatives need tensor order >= 3".into(),
            ));
        }
        let summary = solver::multistart_complex(&a, Complex64::new(alpha, 0.0), &cfg, args.trials)
            .map_err(|e| CmdError::Usage(e.to_string()))?;
        match args.format {
            Format::Table => render::complex_solve_table(&summary),
            Format::Csv => render::complex_solve_csv(&summary, a.dim()),
            Format::Json => render::complex_solve_json(meta, &config, &summary),
        }
    } else {
        let summary = solver::multistart(&a, &cfg, args.trials)
            .map_err(|e| CmdError::Usage(e.to_string()))?;
        match args.format {
            Format::Table => render::solve_table(&summary),
            Format::Csv => render::solve_csv(&summary, a.dim()),
            Format::Json => render::solve_json(meta, &config, &summary),
        }
    };
    write_output(&args.out, &rendered)
}

pub fn cmd_enumerate(args: &EnumerateArgs) -> Result<(), CmdError> {
    let a = load_tensor(&args.source)?;
    if a.order() < 2 {
        return Err(CmdError::Usage(
            "enumerate requires tensor order >= 2".into(),
        ));
    }
    let enumeration = oracle::enumerate_real(&a, args.starts, args.seed)
        .map_err(|e| CmdError::Numerical(e.to_string()))?;
    if enumeration.exceeds_bound() {
        eprintln!(
            "warning: found {} real eigenpairs, above the class bound {}; deduplication may have split a class",
            enumeration.pairs.len(),
            enumeration.bound
        );
    }
    let rendered = match args.format {
        Format::Table => render::enumerate_table(&enumeration),
        Format::Csv => render::enumerate_csv(&enumeration, a.dim()),
        Format::Json => render::enumerate_json(
            render::TensorMeta::of(&a),
            args.starts,
            args.seed,
            &enumeration,
        ),
    };
    write_output(&args.out, &rendered)
}

fn provided_pair(a: &SymTensor, spec: &str) -> Result<EigenPair, CmdError> {
    let (l, xs) = spec.split_once(':').ok_or_else(|| {
        CmdError::Usage(format!(
            "--pair must be `<lambda>:<x1,x2,...>`, got `{spec}`"
        ))
    })?;
    let lambda: f64 = l
        .trim()
        .parse()
        .map_err(|_| CmdError::Usage(format!("bad eigenvalue in --pair `{spec}`")))?;
    let x = parse_vector(xs, a.dim())?;
    let nx = norm(&x);
    if nx < 1e-8 {
        return Err(CmdError::Usage(
            "--pair eigenvector is numerically zero".into(),
        ));
    }
    let x: Vec<f64> = x.iter().map(|v| v / nx).collect();
    let g = a.apply(&x);
    let residual = g
        .iter()
        .zip(&x)
        .map(|(gi, xi)| (gi - lambda * xi) * (gi - lambda * xi))
        .sum::<f64>()
        .sqrt();
    if residual > 1e-6 {
        eprintln!("warning: provided pair has residual {residual:.3e}; sweep values are advisory");
    }
    let c_spectrum =
        solver::projected_spectrum(a, lambda, &x).map_err(|e| CmdError::Usage(e.to_string()))?;
    let classification = classify_spectrum(&c_spectrum, DEGENERATE_TOL);
    Ok(EigenPair {
        lambda,
        x,
        residual,
        c_spectrum,
        classification,
        iterations: 0,
        converged: true,
    })
}

pub fn cmd_sweep(args: &SweepArgs) -> Result<(), CmdError> {
    let a = load_tensor(&args.source)?;
    if a.order() < 2 {
        return Err(CmdError::Usage(
            "sweep-alpha requires tensor order >= 2".into(),
        ));
    }
    if args.alpha_steps < 1 {
        return Err(CmdError::Usage("--alpha-steps must be at least 1".into()));
    }
    if args.alpha_max < args.alpha_min {
        return Err(CmdError::Usage("--alpha-max must be >= --alpha-min".into()));
    }
    let pairs: Vec<EigenPair> = if args.pairs.is_empty() {
        oracle::enumerate_real(&a, args.starts, args.seed)
            .map_err(|e| CmdError::Numerical(e.to_string()))?
            .pairs
    } else {
        args.pairs
            .iter()
            .map(|spec| provided_pair(&a, spec))
            .collect::<Result<_, _>>()?
    };
    let alphas: Vec<f64> = if args.alpha_steps == 1 {
        vec![args.alpha_min]
    } else {
        let h = (args.alpha_max - args.alpha_min) / (args.alpha_steps - 1) as f64;
        (0..args.alpha_steps)
            .map(|k| args.alpha_min + h * k as f64)
            .collect()
    };
    let rows = solver::stability_sweep(&a, &pairs, &alphas);
    write_output(&args.out, &render::sweep_csv(&rows))
}

pub fn cmd_basins(args: &BasinsArgs) -> Result<(), CmdError> {
    let a = load_tensor(&args.source)?;
    if a.dim() != 3 {
        return Err(CmdError::Usage(format!(
            "basins are rasterized on the sphere in R^3; tensor dimension is {}",
            a.dim()
        )));
    }
    if a.order() < 2 {
        return Err(CmdError::Usage("basins require tensor order >= 2".into()));
    }
    let alpha = resolve_alpha(&args.alpha, &a)?;
    let (width, height) = parse_resolution(&args.resolution)?;
    let mut cfg = ShiftConfig::new(alpha);
    cfg.tol = args.tol;
    cfg.x_tol = args.x_tol;
    cfg.max_iters = args.max_iters;
    let raster = basins::compute(&a, &cfg, width, height);

    let ppm_path = args.out.with_extension("ppm");
    let legend_path = legend_path(&args.out);
    fs::write(&ppm_path, raster.to_ppm())?;
    fs::write(&legend_path, raster.legend_csv())?;
    eprintln!(
        "wrote {} and {} ({} basins, {} unresolved cells)",
        ppm_path.display(),
        legend_path.display(),
        raster.legend.len(),
        raster.none_count()
    );
    Ok(())
}

pub fn legend_path(prefix: &Path) -> PathBuf {
    prefix.with_extension("legend.csv")
}

pub fn cmd_trace(args: &TraceArgs) -> Result<(), CmdError> {
    let a = load_tensor(&args.source)?;
    if a.order() < 2 {
        return Err(CmdError::Usage("trace requires tensor order >= 2".into()));
    }
    let alpha = resolve_alpha(&args.alpha, &a)?;
    let x0 = match &args.x0 {
        Some(spec) => {
            let v = parse_vector(spec, a.dim())?;
            let nv = norm(&v);
            if nv < 1e-8 {
                return Err(CmdError::Usage("--x0 is numerically zero".into()));
            }
            v.iter().map(|c| c / nv).collect()
        }
        None => {
            let mut rng = sample::trial_rng(args.seed, 0);
            sample::uniform_box_unit(&mut rng, a.dim())
        }
    };
    let mut cfg = ShiftConfig::new(alpha);
    cfg.tol = args.tol;
    cfg.x_tol = args.x_tol;
    cfg.max_iters = args.max_iters;
    cfg.seed = args.seed;
    let (_, trace) = solver::sshopm(&a, &x0, &cfg).map_err(|e| match e {
        SolverError::ZeroIterate { .. } | SolverError::ShiftSingularity { .. } => {
            CmdError::Numerical(e.to_string())
        }
        other => CmdError::Usage(other.to_string()),
    })?;
    write_output(&args.out, &render::trace_csv(&trace))
}

pub fn cmd_classify(args: &ClassifyArgs) -> Result<(), CmdError> {
    let a = load_tensor(&args.source)?;
    if a.order() < 2 {
        return Err(CmdError::Usage(
            "classify requires tensor order >= 2".into(),
        ));
    }
    let x = parse_vector(&args.x, a.dim())?;
    let alphas: Vec<f64> = match &args.alphas {
        Some(spec) => spec
            .split(',')
            .map(|t| t.trim().parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|_| CmdError::Usage(format!("could not parse --alphas `{spec}`")))?,
        None => {
            let b = a.beta_conservative() + 1.0;
            vec![b, -b]
        }
    };
    let report = oracle::verify_pair(&a, args.lambda, &x, args.tol, &alphas);
    let rendered = match args.format {
        Format::Table => render::classify_text(args.lambda, &report),
        Format::Csv => render::classify_text(args.lambda, &report),
        Format::Json => render::classify_json(args.lambda, &report),
    };
    write_output(&args.out, &rendered)
}
