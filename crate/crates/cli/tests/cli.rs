//! End-to-end checks of the binary: output determinism, exit codes, and the
//! documented file formats.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn teneig(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_teneig"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = teneig(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf8 output")
}

fn tmp_path(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("teneig-test-{}-{name}", std::process::id()))
}

#[test]
fn solve_output_is_deterministic() {
    let args = [
        "solve",
        "--builtin",
        "kore02",
        "--alpha",
        "2",
        "--trials",
        "40",
        "--seed",
        "7",
        "--format",
        "csv",
    ];
    let first = stdout(&args);
    let second = stdout(&args);
    assert_eq!(first, second);
    let json = stdout(&[
        "solve",
        "--builtin",
        "kore02",
        "--alpha",
        "2",
        "--trials",
        "40",
        "--seed",
        "7",
        "--format",
        "json",
    ]);
    assert_eq!(
        json,
        stdout(&[
            "solve",
            "--builtin",
            "kore02",
            "--alpha",
            "2",
            "--trials",
            "40",
            "--seed",
            "7",
            "--format",
            "json",
        ])
    );
    let doc: serde_json::Value = serde_json::from_str(&json).expect("valid json");
    assert_eq!(doc["tensor"]["m"], 4);
    assert_eq!(doc["tensor"]["n"], 3);
    assert_eq!(doc["config"]["trials"], 40);
    assert!(doc["results"]
        .as_array()
        .map(|r| !r.is_empty())
        .unwrap_or(false));
    assert!(doc["failures"].is_number());
    for row in doc["results"].as_array().unwrap() {
        assert!(row["lambda"].is_number());
        assert_eq!(row["x"].as_array().unwrap().len(), 3);
        assert!(row["type"].is_string());
        assert!(row["occurrences"].is_number());
        assert!(row["median_iters"].is_number());
    }
}

#[test]
fn usage_errors_exit_one() {
    let out = teneig(&["solve", "--builtin", "nope"]);
    assert_eq!(out.status.code(), Some(1));
    let out = teneig(&["solve", "--builtin", "kore02", "--alpha", "many"]);
    assert_eq!(out.status.code(), Some(1));
    let out = teneig(&["solve"]);
    assert_eq!(out.status.code(), Some(1));
    // Basins are only defined on the sphere in R^3.
    let out = teneig(&[
        "basins",
        "--builtin",
        "diag42",
        "--alpha",
        "0.5",
        "--out",
        "/tmp/never-written",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn parse_errors_exit_two() {
    let path = tmp_path("bad.tensor");
    fs::write(&path, "tensor 3 3\n1 2 9 1.0\n").unwrap();
    let out = teneig(&["solve", "--tensor", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2"), "missing line number: {err}");
    fs::remove_file(&path).ok();

    let out = teneig(&["solve", "--tensor", "/no/such/file.tensor"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn numerical_failures_exit_three() {
    // At alpha = -1 the shifted iterate from the first axis vector vanishes.
    let out = teneig(&[
        "trace",
        "--builtin",
        "diag42",
        "--alpha",
        "-1",
        "--x0",
        "1,0",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn solve_reports_failures_with_exit_zero() {
    let text = stdout(&[
        "solve",
        "--builtin",
        "kore02",
        "--alpha",
        "0",
        "--trials",
        "10",
        "--tol",
        "1e-12",
        "--format",
        "csv",
    ]);
    assert!(text.trim_end().ends_with("# failures = 10"));
}

#[test]
fn solve_zero_tensor_single_trial() {
    let path = tmp_path("zero.tensor");
    fs::write(&path, "tensor 3 3\n").unwrap();
    let text = stdout(&[
        "solve",
        "--tensor",
        path.to_str().unwrap(),
        "--alpha",
        "1",
        "--trials",
        "1",
        "--format",
        "csv",
    ]);
    fs::remove_file(&path).ok();
    let row = text.lines().nth(1).expect("one result row");
    let fields: Vec<&str> = row.split(',').collect();
    assert_eq!(fields[0], "1");
    assert_eq!(fields[1].parse::<f64>().unwrap(), 0.0);
    assert_eq!(fields[6].parse::<f64>().unwrap(), 1.0);
}

#[test]
fn enumerate_footer_and_csv_columns() {
    let table = stdout(&["enumerate", "--builtin", "odd33", "--starts", "800"]);
    assert!(table.contains("bound = 7 (found 7)"));
    let csv = stdout(&[
        "enumerate",
        "--builtin",
        "diag42",
        "--starts",
        "200",
        "--format",
        "csv",
    ]);
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "lambda,x1,x2,c1,type,residual");
    assert_eq!(csv.lines().last().unwrap(), "# bound = 4");
}

#[test]
fn sweep_closed_form_rows() {
    let csv = stdout(&[
        "sweep-alpha",
        "--builtin",
        "diag42",
        "--pair",
        "1:1,0",
        "--alpha-min",
        "0.5",
        "--alpha-max",
        "2",
        "--alpha-steps",
        "3",
    ]);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "eigenpair_id,alpha,rho,defined_flag");
    let expect = [(0.5, 1.0 / 3.0), (1.25, 1.25 / 2.25), (2.0, 2.0 / 3.0)];
    for (line, (alpha, rho)) in lines[1..].iter().zip(&expect) {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields[0], "0");
        assert!((fields[1].parse::<f64>().unwrap() - alpha).abs() < 1e-12);
        assert!((fields[2].parse::<f64>().unwrap() - rho).abs() < 1e-10);
        assert_eq!(fields[3], "1");
    }
    // Closed form alpha/(1+alpha) at the documented grid points.
    for (alpha, rho) in [("0.5", 1.0 / 3.0), ("1", 0.5), ("2", 2.0 / 3.0)] {
        let csv = stdout(&[
            "sweep-alpha",
            "--builtin",
            "diag42",
            "--pair",
            "1:1,0",
            "--alpha-min",
            alpha,
            "--alpha-max",
            alpha,
            "--alpha-steps",
            "1",
        ]);
        let got: f64 = csv
            .lines()
            .nth(1)
            .unwrap()
            .split(',')
            .nth(2)
            .unwrap()
            .parse()
            .unwrap();
        assert!((got - rho).abs() < 1e-10, "alpha {alpha}: {got} vs {rho}");
    }
    // A pair that stops being a fixed point is flagged undefined.
    let csv = stdout(&[
        "sweep-alpha",
        "--builtin",
        "diag42",
        "--pair",
        "-1:0,1",
        "--alpha-min",
        "0.5",
        "--alpha-max",
        "0.5",
        "--alpha-steps",
        "1",
    ]);
    assert!(csv.lines().nth(1).unwrap().ends_with(",,0"));
}

#[test]
fn trace_rows_and_oscillation() {
    // The identity tensor fixes every start: constant eigenvalue column.
    let csv = stdout(&[
        "trace",
        "--builtin",
        "identity-4-2",
        "--alpha",
        "0",
        "--x0",
        "0.6,0.8",
    ]);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "k,lambda_k,dx_norm");
    assert_eq!(lines.len(), 3);
    for line in &lines[1..] {
        let lambda: f64 = line.split(',').nth(1).unwrap().parse().unwrap();
        assert!((lambda - 1.0).abs() < 1e-12);
    }

    // The classic non-convergent start oscillates for the full budget.
    let csv = stdout(&[
        "trace",
        "--builtin",
        "kore02",
        "--alpha",
        "0",
        "--x0",
        "-0.2695,0.1972,0.3370",
        "--tol",
        "1e-12",
    ]);
    assert_eq!(csv.lines().count(), 1002);
    let lambdas: Vec<f64> = csv
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    let up = lambdas.windows(2).any(|w| w[1] > w[0]);
    let down = lambdas.windows(2).any(|w| w[1] < w[0]);
    assert!(up && down, "expected an oscillating eigenvalue sequence");

    // A convex shift gives a nondecreasing column.
    let csv = stdout(&[
        "trace",
        "--builtin",
        "kore02",
        "--alpha",
        "2",
        "--seed",
        "3",
    ]);
    let lambdas: Vec<f64> = csv
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert!(lambdas.windows(2).all(|w| w[1] >= w[0] - 1e-13));
}

#[test]
fn basins_write_pixmap_and_legend() {
    let prefix = tmp_path("basins");
    stdout(&[
        "basins",
        "--builtin",
        "odd33",
        "--alpha",
        "0",
        "--resolution",
        "24x12",
        "--out",
        prefix.to_str().unwrap(),
    ]);
    let ppm = fs::read(prefix.with_extension("ppm")).unwrap();
    assert!(ppm.starts_with(b"P6\n24 12\n255\n"));
    assert_eq!(ppm.len(), "P6\n24 12\n255\n".len() + 24 * 12 * 3);
    let legend = fs::read_to_string(prefix.with_extension("legend.csv")).unwrap();
    assert_eq!(
        legend.lines().next().unwrap(),
        "id,lambda,x1,x2,x3,type,r,g,b"
    );
    assert_eq!(legend.lines().count(), 3);
    fs::remove_file(prefix.with_extension("ppm")).ok();
    fs::remove_file(prefix.with_extension("legend.csv")).ok();
}

#[test]
fn classify_audits_a_pair() {
    let text = stdout(&[
        "classify",
        "--builtin",
        "kore02",
        "--lambda",
        "0.8893",
        "--x",
        "0.6672,0.2471,-0.7027",
        "--tol",
        "1e-3",
        "--alphas",
        "2,-2",
    ]);
    assert!(text.contains("type            = neg-stable"));
    assert!(text.trim_end().ends_with("PASS"));

    let json = stdout(&[
        "classify",
        "--builtin",
        "kore02",
        "--lambda",
        "0.5",
        "--x",
        "1,0,0",
        "--format",
        "json",
    ]);
    let doc: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(doc["pass"], false);
}

#[test]
fn out_flag_writes_files() {
    let path = tmp_path("solve.csv");
    stdout(&[
        "solve",
        "--builtin",
        "diag42",
        "--alpha",
        "0.5",
        "--trials",
        "5",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    let content = fs::read_to_string(&path).unwrap();
    assert!(content.starts_with("occurrences,lambda,x1,x2,type,median_iters"));
    fs::remove_file(&path).ok();
}
