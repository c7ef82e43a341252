//! Input resolution, argument parsing and report output.

use std::fmt;
use std::path::Path;

use bihom_core::corpus;
use bihom_core::report::{CheckReport, Failure};
use bihom_core::{AlgebraDocument, Error, Field, Matrix, Scalar};
use clap::ValueEnum;
use serde_json::{json, Map, Value};

/// Exit status 1 for a failed mathematical check, 2 for bad input.
#[derive(Debug)]
pub enum CliError {
    Math(String),
    Input(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Math(_) => 1,
            CliError::Input(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Math(m) | CliError::Input(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } | Error::Validation(_) | Error::Io(_) | Error::DimensionMismatch { .. } => {
                CliError::Input(e.to_string())
            }
            _ => CliError::Math(e.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// `bundled:NAME` reads from the built-in corpus, anything else is a path.
pub fn load(source: &str, default_field: Field) -> CliResult<AlgebraDocument> {
    if let Some(name) = source.strip_prefix("bundled:") {
        let (_, text) = corpus::BUNDLED
            .iter()
            .find(|(n, _)| *n == name || n.trim_end_matches(".alg") == name)
            .ok_or_else(|| CliError::Input(format!("no bundled document named {name:?}")))?;
        return Ok(AlgebraDocument::parse_with_default(text, default_field)?);
    }
    Ok(AlgebraDocument::load_with_default(Path::new(source), default_field)?)
}

pub fn parse_field(text: &str) -> std::result::Result<Field, String> {
    Field::from_tag(text).map_err(|e| e.to_string())
}

pub fn scalar(field: Field, text: &str) -> CliResult<Scalar> {
    Ok(field.parse(text)?)
}

/// `id`, `zero`, `diag:a,b,...`, or rows `a,b;c,d` (optionally prefixed by
/// `rows:`).
pub fn matrix_spec(field: Field, n: usize, spec: &str) -> CliResult<Matrix> {
    let spec = spec.trim();
    let bad = |msg: &str| CliError::Input(format!("matrix {spec:?}: {msg}"));
    let m = match spec {
        "id" => Matrix::identity(n),
        "zero" => Matrix::zeros(n, n),
        _ => {
            if let Some(rest) = spec.strip_prefix("diag:") {
                let entries = rest.split(',').map(|t| scalar(field, t.trim())).collect::<CliResult<Vec<_>>>()?;
                Matrix::diagonal(&entries)
            } else {
                let body = spec.strip_prefix("rows:").unwrap_or(spec);
                let rows = body
                    .split(';')
                    .map(|row| row.split(',').map(|t| scalar(field, t.trim())).collect::<CliResult<Vec<_>>>())
                    .collect::<CliResult<Vec<_>>>()?;
                Matrix::from_rows(rows).map_err(|_| bad("rows have different lengths"))?
            }
        }
    };
    if m.rows() != n || m.cols() != n {
        return Err(bad(&format!("expected {n}x{n}, got {}x{}", m.rows(), m.cols())));
    }
    Ok(m)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    /// One JSON object per line.
    Records,
}

/// A named group of fields, printed as an indented block or a JSON line.
pub struct Record {
    kind: &'static str,
    fields: Map<String, Value>,
}

impl Record {
    pub fn new(kind: &'static str) -> Self {
        Record { kind, fields: Map::new() }
    }

    pub fn field(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.fields.insert(key.to_string(), value.into());
        self
    }

    pub fn emit(self, format: Format) {
        match format {
            Format::Human => {
                println!("{}", self.kind);
                for (k, v) in &self.fields {
                    let shown = match v {
                        Value::String(s) => s.clone(),
                        other => other.to_string(),
                    };
                    println!("  {k}: {shown}");
                }
            }
            Format::Records => {
                let mut obj = Map::new();
                obj.insert("record".into(), Value::String(self.kind.into()));
                obj.extend(self.fields);
                println!("{}", Value::Object(obj));
            }
        }
    }
}

fn vector_text(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(|s| Value::String(s.to_string())).collect())
}

pub fn failure_value(f: &Failure) -> Value {
    json!({
        "identity": f.identity,
        "indices": f.indices,
        "lhs": vector_text(&f.lhs),
        "rhs": vector_text(&f.rhs),
    })
}

/// Adds `passed`, `failures` and `first_failure` fields for a report.
pub fn with_report(record: Record, report: &CheckReport) -> Record {
    let record = record.field("passed", report.passed()).field("failures", report.failure_count());
    match report.first_failure() {
        Some(f) => record.field("first_failure", failure_value(f)),
        None => record,
    }
}
