//! Tensor text format and the built-in test corpus.
//!
//! File format: `#` starts a comment line, the first data line is
//! `tensor <m> <n>`, and every further line is `m` whitespace-separated
//! 1-based indices followed by a decimal value. Omitted entries are zero,
//! indices need not be pre-sorted, and a repeated sorted index group is an
//! error. Values are written back with 17 significant digits so that
//! `parse(write(t)) == t` exactly.

use std::collections::HashMap;

use thiserror::Error;

use crate::tensor::{SymTensor, TensorError};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: expected header `tensor <m> <n>`, got `{found}`")]
    Header { line: usize, found: String },
    #[error("no `tensor <m> <n>` header line found")]
    MissingHeader,
    #[error("line {line}: expected {expected} indices and a value, got {got} tokens")]
    EntryArity {
        line: usize,
        expected: usize,
        got: usize,
    },
    #[error("line {line}: index {index} out of range 1..={dim}")]
    IndexOutOfRange {
        line: usize,
        index: usize,
        dim: usize,
    },
    #[error("line {line}: duplicate entry for sorted index group (first at line {first})")]
    DuplicateGroup { line: usize, first: usize },
    #[error("line {line}: `{token}` is not a finite number")]
    BadNumber { line: usize, token: String },
    #[error(transparent)]
    Tensor(#[from] TensorError),
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error(
        "unknown builtin tensor `{0}`; available: kore02, odd33, perm3, diag42, identity-<m>-<n>"
    )]
    Unknown(String),
    #[error(transparent)]
    Tensor(#[from] TensorError),
}

/// Parses the tensor text format. Every stored value is assigned to all
/// permutations of its index group, so the result is exactly symmetric.
pub fn parse_tensor(text: &str) -> Result<SymTensor, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut groups: Vec<(Vec<usize>, f64)> = Vec::new();
    let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();

    for (lineno, raw_line) in text.lines().enumerate() {
        let line = lineno + 1;
        let trimmed = raw_line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        match header {
            None => {
                let ok = tokens.len() == 3 && tokens[0] == "tensor";
                let m = ok.then(|| tokens[1].parse::<usize>().ok()).flatten();
                let n = ok.then(|| tokens[2].parse::<usize>().ok()).flatten();
                match (m, n) {
                    (Some(m), Some(n)) if m >= 1 && n >= 1 => header = Some((m, n)),
                    _ => {
                        return Err(ParseError::Header {
                            line,
                            found: trimmed.to_string(),
                        })
                    }
                }
            }
            Some((m, n)) => {
                if tokens.len() != m + 1 {
                    return Err(ParseError::EntryArity {
                        line,
                        expected: m,
                        got: tokens.len(),
                    });
                }
                let mut idx = Vec::with_capacity(m);
                for tok in &tokens[..m] {
                    let i: usize = tok.parse().map_err(|_| ParseError::BadNumber {
                        line,
                        token: tok.to_string(),
                    })?;
                    if i < 1 || i > n {
                        return Err(ParseError::IndexOutOfRange {
                            line,
                            index: i,
                            dim: n,
                        });
                    }
                    idx.push(i - 1);
                }
                idx.sort_unstable();
                let value: f64 = tokens[m].parse().map_err(|_| ParseError::BadNumber {
                    line,
                    token: tokens[m].to_string(),
                })?;
                if !value.is_finite() {
                    return Err(ParseError::BadNumber {
                        line,
                        token: tokens[m].to_string(),
                    });
                }
                if let Some(&first) = seen.get(&idx) {
                    return Err(ParseError::DuplicateGroup { line, first });
                }
                seen.insert(idx.clone(), line);
                groups.push((idx, value));
            }
        }
    }

    let (m, n) = header.ok_or(ParseError::MissingHeader)?;
    Ok(SymTensor::from_sorted_entries(m, n, &groups)?)
}

/// Canonical text form: header plus one line per nonzero sorted index group,
/// 1-based indices, values at 17 significant digits.
pub fn write_tensor(t: &SymTensor) -> String {
    let m = t.order();
    let n = t.dim();
    let mut out = format!("tensor {m} {n}\n");
    let mut idx = vec![0usize; m];
    loop {
        let v = t.get(&idx);
        if v != 0.0 {
            for i in &idx {
                out.push_str(&(i + 1).to_string());
                out.push(' ');
            }
            out.push_str(&format!("{v:.16e}\n"));
        }
        if !crate::tensor::next_sorted_index(&mut idx, n) {
            break;
        }
    }
    out
}

/// Built-in tensors used throughout the docs and tests:
///
/// * `kore02` — order 4, dimension 3, the classic example on which the
///   unshifted power method fails to converge.
/// * `odd33` — order 3, dimension 3, with the full seven eigenpair classes.
/// * `perm3` — order 3, dimension 3, entries 1 exactly on permutations of
///   (1,2,3).
/// * `diag42` — order 4, dimension 2, `a_1111 = 1`, `a_2222 = -1`.
/// * `identity-<m>-<n>` — the even-order identity tensor.
pub fn builtin_corpus(name: &str) -> Result<SymTensor, CorpusError> {
    match name {
        "kore02" => {
            let e = |i: [usize; 4], v: f64| (i.to_vec(), v);
            Ok(SymTensor::from_sorted_entries(
                4,
                3,
                &[
                    e([0, 0, 0, 0], 0.2883),
                    e([0, 0, 0, 1], -0.0031),
                    e([0, 0, 0, 2], 0.1973),
                    e([0, 0, 1, 1], -0.2485),
                    e([0, 0, 1, 2], -0.2939),
                    e([0, 0, 2, 2], 0.3847),
                    e([0, 1, 1, 1], 0.2972),
                    e([0, 1, 1, 2], 0.1862),
                    e([0, 1, 2, 2], 0.0919),
                    e([0, 2, 2, 2], -0.3619),
                    e([1, 1, 1, 1], 0.1241),
                    e([1, 1, 1, 2], -0.3420),
                    e([1, 1, 2, 2], 0.2127),
                    e([1, 2, 2, 2], 0.2727),
                    e([2, 2, 2, 2], -0.3054),
                ],
            )?)
        }
        "odd33" => {
            let e = |i: [usize; 3], v: f64| (i.to_vec(), v);
            Ok(SymTensor::from_sorted_entries(
                3,
                3,
                &[
                    e([0, 0, 0], -0.1281),
                    e([0, 0, 1], 0.0516),
                    e([0, 0, 2], -0.0954),
                    e([0, 1, 1], -0.1958),
                    e([0, 1, 2], -0.1790),
                    e([0, 2, 2], -0.2676),
                    e([1, 1, 1], 0.3251),
                    e([1, 1, 2], 0.2513),
                    e([1, 2, 2], 0.1773),
                    e([2, 2, 2], 0.0338),
                ],
            )?)
        }
        "perm3" => Ok(SymTensor::from_sorted_entries(
            3,
            3,
            &[(vec![0, 1, 2], 1.0)],
        )?),
        "diag42" => Ok(SymTensor::from_sorted_entries(
            4,
            2,
            &[(vec![0, 0, 0, 0], 1.0), (vec![1, 1, 1, 1], -1.0)],
        )?),
        other => {
            if let Some(rest) = other.strip_prefix("identity-") {
                let parts: Vec<&str> = rest.split('-').collect();
                if parts.len() == 2 {
                    if let (Ok(m), Ok(n)) = (parts[0].parse(), parts[1].parse()) {
                        return Ok(SymTensor::identity(m, n)?);
                    }
                }
            }
            Err(CorpusError::Unknown(other.to_string()))
        }
    }
}
