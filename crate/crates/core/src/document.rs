//! The algebra document format: a JSON object holding exact scalars as
//! strings.
//!
//! ```json
//! {
//!   "dimension": 2,
//!   "field": "rational",
//!   "product": [[0, 1, 1, "3"]],
//!   "alpha": [["1", "0"], ["0", "2"]],
//!   "beta": [["1", "0"], ["0", "3"]]
//! }
//! ```
//!
//! Product entries are `[i, j, k, c]` meaning `e_i e_j` has `c` as its `e_k`
//! coefficient (0-based). Matrices are row-major; column `j` is the image of
//! `e_j`. Optional blocks: `bilinear_form`, `derivation`,
//! `rota_baxter {matrix, weight}`, `deformation {order, convention, terms}`,
//! `expected {kinds}` and `provenance` (string map).
//!
//! Parsing runs in two stages: [`serde_json`] into raw structs (syntax errors
//! carry line and column), then validation into exact values.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::{BiHomAlgebra, Kind};
use crate::constructions::RotaBaxterData;
use crate::deformation::{G0Convention, TruncatedDeformation};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::quadratic::BilinearForm;
use crate::scalar::{Field, Scalar};
use crate::tensor::Tensor3;

type RawEntry = (usize, usize, usize, String);
type RawMatrix = Vec<Vec<String>>;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    dimension: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    field: Option<String>,
    #[serde(default)]
    product: Vec<RawEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    alpha: Option<RawMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    beta: Option<RawMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    bilinear_form: Option<RawMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    derivation: Option<RawMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    rota_baxter: Option<RawRotaBaxter>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    deformation: Option<RawDeformation>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    expected: Option<RawExpected>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    provenance: Option<BTreeMap<String, String>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRotaBaxter {
    matrix: RawMatrix,
    weight: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDeformation {
    order: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    convention: Option<String>,
    #[serde(default)]
    terms: Vec<Vec<RawEntry>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawExpected {
    kinds: Vec<String>,
}

/// A validated document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraDocument {
    pub field: Field,
    pub algebra: BiHomAlgebra,
    pub bilinear_form: Option<BilinearForm>,
    pub derivation: Option<Matrix>,
    pub rota_baxter: Option<RotaBaxterData>,
    /// `G_1, ..., G_N` with the degree-zero convention.
    pub deformation: Option<(Vec<Tensor3>, G0Convention)>,
    pub expected: Vec<Kind>,
    pub provenance: BTreeMap<String, String>,
}

impl AlgebraDocument {
    pub fn new(field: Field, algebra: BiHomAlgebra) -> Self {
        AlgebraDocument {
            field,
            algebra,
            bilinear_form: None,
            derivation: None,
            rota_baxter: None,
            deformation: None,
            expected: Vec::new(),
            provenance: BTreeMap::new(),
        }
    }

    pub fn dimension(&self) -> usize {
        self.algebra.dim()
    }

    /// Parses with the rationals as the default field.
    pub fn parse(text: &str) -> Result<Self> {
        Self::parse_with_default(text, Field::Rational)
    }

    /// Parses; `default_field` applies when the document has no `field` tag.
    pub fn parse_with_default(text: &str, default_field: Field) -> Result<Self> {
        let raw: RawDocument = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        validate(raw, default_field)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::load_with_default(path, Field::Rational)
    }

    pub fn load_with_default(path: impl AsRef<Path>, default_field: Field) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::parse_with_default(&text, default_field)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let text = self.to_text()?;
        std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
    }

    /// Canonical text: zero product entries dropped, scalars in canonical form.
    pub fn to_text(&self) -> Result<String> {
        let raw = self.to_raw()?;
        let value = serde_json::to_value(&raw).map_err(|e| Error::Validation(e.to_string()))?;
        let mut out = String::new();
        render(&value, 0, &mut out);
        out.push('\n');
        Ok(out)
    }

    /// The stored deformation as a [`TruncatedDeformation`] over the algebra.
    pub fn truncated_deformation(&self) -> Option<TruncatedDeformation> {
        self.deformation.as_ref().map(|(terms, convention)| TruncatedDeformation {
            base: self.algebra.clone(),
            terms: terms.clone(),
            convention: *convention,
        })
    }

    pub fn set_deformation(&mut self, d: &TruncatedDeformation) {
        self.deformation = Some((d.terms.clone(), d.convention));
    }

    fn scalar_text(&self, s: &Scalar) -> Result<String> {
        self.field
            .embed(s)
            .map(|v| v.to_string())
            .ok_or_else(|| Error::Validation(format!("scalar {s} is not in the field {}", self.field)))
    }

    fn matrix_raw(&self, m: &Matrix) -> Result<RawMatrix> {
        m.row_vectors().iter().map(|row| row.iter().map(|s| self.scalar_text(s)).collect()).collect()
    }

    fn entries_raw(&self, t: &Tensor3) -> Result<Vec<RawEntry>> {
        let mut out = Vec::new();
        for (i, j, k, c) in t.nonzero_entries() {
            let text = self.scalar_text(c)?;
            if text != "0" {
                out.push((i, j, k, text));
            }
        }
        Ok(out)
    }

    fn to_raw(&self) -> Result<RawDocument> {
        Ok(RawDocument {
            dimension: self.dimension(),
            field: Some(self.field.tag()),
            product: self.entries_raw(self.algebra.mu())?,
            alpha: Some(self.matrix_raw(self.algebra.alpha())?),
            beta: Some(self.matrix_raw(self.algebra.beta())?),
            bilinear_form: self.bilinear_form.as_ref().map(|b| self.matrix_raw(b.matrix())).transpose()?,
            derivation: self.derivation.as_ref().map(|d| self.matrix_raw(d)).transpose()?,
            rota_baxter: self
                .rota_baxter
                .as_ref()
                .map(|rb| -> Result<RawRotaBaxter> {
                    Ok(RawRotaBaxter { matrix: self.matrix_raw(&rb.operator)?, weight: self.scalar_text(&rb.weight)? })
                })
                .transpose()?,
            deformation: self
                .deformation
                .as_ref()
                .map(|(terms, convention)| -> Result<RawDeformation> {
                    Ok(RawDeformation {
                        order: terms.len(),
                        convention: Some(convention.as_str().to_string()),
                        terms: terms.iter().map(|t| self.entries_raw(t)).collect::<Result<_>>()?,
                    })
                })
                .transpose()?,
            expected: (!self.expected.is_empty())
                .then(|| RawExpected { kinds: self.expected.iter().map(|k| k.as_str().to_string()).collect() }),
            provenance: (!self.provenance.is_empty()).then(|| self.provenance.clone()),
        })
    }
}

fn validate(raw: RawDocument, default_field: Field) -> Result<AlgebraDocument> {
    let n = raw.dimension;
    if n == 0 {
        return Err(Error::Validation("dimension must be positive".into()));
    }
    let field = match &raw.field {
        Some(tag) => Field::from_tag(tag)?,
        None => default_field,
    };
    let scalar =
        |text: &str, at: &str| field.parse(text).map_err(|e| Error::Validation(format!("{at}: {}", strip_prefix(&e))));
    let tensor = |entries: &[RawEntry], at: &str| -> Result<Tensor3> {
        let mut t = Tensor3::zeros(n);
        let mut seen = std::collections::BTreeSet::new();
        for (idx, (i, j, k, c)) in entries.iter().enumerate() {
            let here = format!("{at}[{idx}]");
            if *i >= n || *j >= n || *k >= n {
                return Err(Error::Validation(format!("{here}: index ({i}, {j}, {k}) out of range for dimension {n}")));
            }
            if !seen.insert((*i, *j, *k)) {
                return Err(Error::Validation(format!("{here}: duplicate entry ({i}, {j}, {k})")));
            }
            t.set(*i, *j, *k, scalar(c, &here)?);
        }
        Ok(t)
    };
    let matrix = |rows: &RawMatrix, at: &str| -> Result<Matrix> {
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Validation(format!("{at}: matrix must be {n}x{n}")));
        }
        let mut parsed = Vec::with_capacity(n);
        for (r, row) in rows.iter().enumerate() {
            let mut out = Vec::with_capacity(n);
            for (c, text) in row.iter().enumerate() {
                out.push(scalar(text, &format!("{at}[{r}][{c}]"))?);
            }
            parsed.push(out);
        }
        Matrix::from_rows(parsed)
    };
    let identity = || Matrix::from_fn(n, n, |r, c| if r == c { field.one() } else { field.zero() });
    let alpha = raw.alpha.as_ref().map(|m| matrix(m, "alpha")).transpose()?.unwrap_or_else(identity);
    let beta = raw.beta.as_ref().map(|m| matrix(m, "beta")).transpose()?.unwrap_or_else(identity);
    let algebra = BiHomAlgebra::new(tensor(&raw.product, "product")?, alpha, beta)?;
    let bilinear_form =
        raw.bilinear_form.as_ref().map(|m| matrix(m, "bilinear_form").and_then(BilinearForm::new)).transpose()?;
    let derivation = raw.derivation.as_ref().map(|m| matrix(m, "derivation")).transpose()?;
    let rota_baxter = raw
        .rota_baxter
        .as_ref()
        .map(|rb| -> Result<RotaBaxterData> {
            Ok(RotaBaxterData {
                operator: matrix(&rb.matrix, "rota_baxter.matrix")?,
                weight: scalar(&rb.weight, "rota_baxter.weight")?,
            })
        })
        .transpose()?;
    let deformation = raw
        .deformation
        .as_ref()
        .map(|d| -> Result<(Vec<Tensor3>, G0Convention)> {
            if d.terms.len() > d.order {
                return Err(Error::Validation(format!(
                    "deformation: {} terms exceed order {}",
                    d.terms.len(),
                    d.order
                )));
            }
            let mut terms = d
                .terms
                .iter()
                .enumerate()
                .map(|(i, t)| tensor(t, &format!("deformation.terms[{i}]")))
                .collect::<Result<Vec<_>>>()?;
            terms.resize(d.order, Tensor3::zeros(n));
            let convention = d.convention.as_deref().map(str::parse).transpose()?.unwrap_or_default();
            Ok((terms, convention))
        })
        .transpose()?;
    let expected = raw
        .expected
        .as_ref()
        .map(|e| e.kinds.iter().map(|k| k.parse()).collect::<Result<Vec<Kind>>>())
        .transpose()?
        .unwrap_or_default();
    Ok(AlgebraDocument {
        field,
        algebra,
        bilinear_form,
        derivation,
        rota_baxter,
        deformation,
        expected,
        provenance: raw.provenance.unwrap_or_default(),
    })
}

fn strip_prefix(e: &Error) -> String {
    match e {
        Error::Validation(m) => m.clone(),
        other => other.to_string(),
    }
}

/// JSON with one line per product entry or matrix row.
fn render(value: &Value, indent: usize, out: &mut String) {
    let pad = |level: usize| "  ".repeat(level);
    match value {
        Value::Array(items) if items.is_empty() => out.push_str("[]"),
        Value::Array(items) if items.iter().all(|v| !v.is_array() && !v.is_object()) => {
            out.push('[');
            for (i, v) in items.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                out.push_str(&v.to_string());
            }
            out.push(']');
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, v) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                render(v, indent + 1, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, v)) in map.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                render(v, indent + 1, out);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        other => out.push_str(&other.to_string()),
    }
}
