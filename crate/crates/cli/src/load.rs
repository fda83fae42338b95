use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use strelkit_core::presentation::{parse_presentation, A1, LAMBDA2, TRUNCATED_LOOPS};
use strelkit_core::relation::parse_relation;
use strelkit_core::{parse_kronecker, Field, KroneckerModule, LinearRelation, Matrix, StringPresentation};

pub fn read(path: &str) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {path}"))
}

pub fn presentation(source: &str) -> Result<StringPresentation> {
    let text = if Path::new(source).exists() {
        read(source)?
    } else {
        match source {
            "lambda2" => LAMBDA2.to_string(),
            "truncated-loops" => TRUNCATED_LOOPS.to_string(),
            "a1" => A1.to_string(),
            _ => bail!("no presentation file or built-in named `{source}`"),
        }
    };
    parse_presentation(&text).with_context(|| format!("in presentation {source}"))
}

pub fn relation(path: &str) -> Result<LinearRelation> {
    parse_relation(&read(path)?).with_context(|| format!("in relation file {path}"))
}

pub fn kronecker(path: &str) -> Result<KroneckerModule> {
    parse_kronecker(&read(path)?).with_context(|| format!("in Kronecker file {path}"))
}

/// Whitespace-separated rows; `#` starts a comment.
pub fn matrix(path: &str, field: Field) -> Result<Matrix> {
    let mut rows = Vec::new();
    for (n, line) in read(path)?.lines().enumerate() {
        let line = line.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let row = line
            .split_whitespace()
            .map(|t| field.parse_scalar(t))
            .collect::<strelkit_core::Result<Vec<_>>>()
            .with_context(|| format!("{path}:{}", n + 1))?;
        rows.push(row);
    }
    let cols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != cols) {
        bail!("{path}: rows have different lengths");
    }
    Ok(Matrix::from_rows(field, cols, &rows))
}
