//! File formats: simplex input files (plain text or JSON) and the
//! JSON-lines catalog written by enumeration and read back by verification.

use std::fmt;
use std::fs;
use std::io::Read;

use num::ToPrimitive;
use serde::{Deserialize, Serialize};

use fwps::{ClassificationRecord, FanoSimplex};

/// Failure with a fixed process exit code: 2 for parse errors, 3 for
/// simplex validation errors.
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn parse(message: impl fmt::Display) -> Self {
        CliError {
            code: 2,
            message: message.to_string(),
        }
    }

    pub fn validation(message: impl fmt::Display) -> Self {
        CliError {
            code: 3,
            message: message.to_string(),
        }
    }
}

#[derive(Deserialize)]
struct SimplexJson {
    dim: usize,
    vertices: Vec<Vec<i64>>,
}

/// Read a simplex description from `path` (`-` for standard input).
///
/// Plain text holds one vertex per line as space-separated integers, with
/// `#` starting a comment; a file whose first non-space character is `{`
/// is instead parsed as JSON `{"dim": n, "vertices": [[…], …]}`. Shape
/// problems and unparseable numbers are parse errors (exit 2, text ones
/// with line numbers); a well-shaped vertex list that fails the simplex
/// invariants is a validation error (exit 3).
pub fn read_simplex(path: &str) -> Result<FanoSimplex, CliError> {
    let content = if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliError::parse(format!("reading standard input: {e}")))?;
        buf
    } else {
        fs::read_to_string(path)
            .map_err(|e| CliError::parse(format!("reading {path}: {e}")))?
    };

    let rows = if content.trim_start().starts_with('{') {
        let parsed: SimplexJson = serde_json::from_str(&content)
            .map_err(|e| CliError::parse(format!("{path}: {e}")))?;
        if parsed
            .vertices
            .iter()
            .any(|row| row.len() != parsed.dim)
        {
            return Err(CliError::parse(format!(
                "{path}: every vertex must have {} coordinates",
                parsed.dim
            )));
        }
        parsed.vertices
    } else {
        let mut rows = Vec::new();
        for (lineno, raw) in content.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut row = Vec::new();
            for token in line.split_whitespace() {
                let value: i64 = token.parse().map_err(|_| {
                    CliError::parse(format!(
                        "{path}:{}: `{token}` is not an integer",
                        lineno + 1
                    ))
                })?;
                row.push(value);
            }
            rows.push((lineno + 1, row));
        }
        if rows.is_empty() {
            return Err(CliError::parse(format!("{path}: no vertices found")));
        }
        let width = rows[0].1.len();
        for (lineno, row) in &rows {
            if row.len() != width {
                return Err(CliError::parse(format!(
                    "{path}:{lineno}: expected {width} coordinates, found {}",
                    row.len()
                )));
            }
        }
        rows.into_iter().map(|(_, row)| row).collect()
    };

    let width = rows.first().map_or(0, |r| r.len());
    if rows.len() != width + 1 {
        return Err(CliError::parse(format!(
            "{path}: a {width}-dimensional simplex needs {} vertices, found {}",
            width + 1,
            rows.len()
        )));
    }
    let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
    FanoSimplex::from_i64_vertices(&refs).map_err(|e| CliError::validation(format!("{path}: {e}")))
}

/// One catalog line. Field order is fixed; rationals travel as reduced
/// `p/q` strings so exact values survive round-trips.
#[derive(Serialize, Deserialize)]
pub struct RecordDto {
    pub vertices: Vec<Vec<i64>>,
    pub weights: Vec<u64>,
    pub mult: u64,
    pub terminal: bool,
    pub canonical: bool,
    pub reflexive: bool,
    pub degree: String,
    pub quotient: Vec<u64>,
    pub cone_singularities: Vec<String>,
}

impl From<&ClassificationRecord> for RecordDto {
    fn from(r: &ClassificationRecord) -> Self {
        let nf = &r.normal_form_vertices;
        let vertices = (0..nf.rows())
            .map(|i| {
                nf.row(i)
                    .iter()
                    .map(|c| c.to_i64().expect("catalog coordinate beyond i64"))
                    .collect()
            })
            .collect();
        RecordDto {
            vertices,
            weights: r
                .weights
                .lambdas()
                .iter()
                .map(|l| l.to_u64().expect("catalog weight beyond u64"))
                .collect(),
            mult: r.multiplicity.to_u64().expect("catalog mult beyond u64"),
            terminal: r.terminal,
            canonical: r.canonical,
            reflexive: r.reflexive,
            degree: r.degree.to_string(),
            quotient: r
                .quotient
                .iter()
                .map(|q| q.to_u64().expect("catalog quotient factor beyond u64"))
                .collect(),
            cone_singularities: r.cone_singularities.iter().map(|c| c.to_string()).collect(),
        }
    }
}

/// Parse a JSON-lines catalog; blank lines are skipped, errors carry the
/// line number.
pub fn read_catalog(path: &str) -> Result<Vec<RecordDto>, CliError> {
    let content = fs::read_to_string(path)
        .map_err(|e| CliError::parse(format!("reading {path}: {e}")))?;
    let mut records = Vec::new();
    for (lineno, line) in content.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let dto: RecordDto = serde_json::from_str(line)
            .map_err(|e| CliError::parse(format!("{path}:{}: {e}", lineno + 1)))?;
        records.push(dto);
    }
    Ok(records)
}

/// Rebuild the live simplex a catalog line describes.
pub fn simplex_of(dto: &RecordDto, path: &str, lineno: usize) -> Result<FanoSimplex, CliError> {
    let refs: Vec<&[i64]> = dto.vertices.iter().map(|r| r.as_slice()).collect();
    FanoSimplex::from_i64_vertices(&refs)
        .map_err(|e| CliError::validation(format!("{path}: record {lineno}: {e}")))
}
