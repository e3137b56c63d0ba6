//! Matrix-source parsing for the verify commands.
//!
//! A matrix argument is one of `identity`, `seeded`, `diag:a,b,c` (exact
//! rational entries) or `file:PATH` (JSON `{"size": n, "entries": [[..]]}`
//! with entries as `num/den` strings). Seeded matrices come from the
//! documented ChaCha8 generator in `hurwitz_core::matrix`, so the same
//! `--seed` reproduces the same run everywhere.

use std::path::Path;

use hurwitz_core::matrix::{seeded_invertible, ExactMatrix};
use hurwitz_core::scalar;

use crate::CliError;

pub fn parse_matrix(spec: &str, n: usize, seed: u64) -> Result<ExactMatrix, CliError> {
    if spec == "identity" {
        return Ok(ExactMatrix::identity(n));
    }
    if spec == "seeded" {
        return Ok(seeded_invertible(n, seed));
    }
    if let Some(list) = spec.strip_prefix("diag:") {
        let diag: Vec<_> = list
            .split(',')
            .map(|t| {
                scalar::parse(t).ok_or_else(|| CliError::usage(format!("bad diagonal entry {t:?}")))
            })
            .collect::<Result<_, _>>()?;
        if diag.len() != n {
            return Err(CliError::usage(format!(
                "diagonal has {} entries but size is {n}",
                diag.len()
            )));
        }
        return Ok(ExactMatrix::diagonal(&diag));
    }
    if let Some(path) = spec.strip_prefix("file:") {
        return load_matrix_file(Path::new(path), n);
    }
    Err(CliError::usage(format!(
        "unknown matrix source {spec:?}; expected identity, seeded, diag:... or file:..."
    )))
}

#[derive(serde::Deserialize)]
struct MatrixFile {
    size: usize,
    entries: Vec<Vec<String>>,
}

fn load_matrix_file(path: &Path, n: usize) -> Result<ExactMatrix, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
    let file: MatrixFile = serde_json::from_str(&text)
        .map_err(|e| CliError::usage(format!("bad matrix file {}: {e}", path.display())))?;
    if file.size != n {
        return Err(CliError::usage(format!(
            "matrix file has size {} but size {n} was requested",
            file.size
        )));
    }
    let mut rows = Vec::with_capacity(n);
    for row in file.entries {
        let parsed: Vec<_> = row
            .iter()
            .map(|t| {
                scalar::parse(t).ok_or_else(|| CliError::usage(format!("bad matrix entry {t:?}")))
            })
            .collect::<Result<_, _>>()?;
        rows.push(parsed);
    }
    ExactMatrix::from_rows(rows).map_err(CliError::from)
}
