//! Input file schemas.
//!
//! Complex scalars are `[re, im]` pairs and matrices are lists of rows.
//! Grids are nested lists indexed `[k][i]`.

use num_complex::Complex64;
use serde::{de::DeserializeOwned, Deserialize, Serialize};

use super::CliError;
use crate::matlin::{ComplexMatrix, Tolerance};

pub type ComplexSpec = [f64; 2];
pub type MatrixSpec = Vec<Vec<ComplexSpec>>;
pub type GridSpec = Vec<Vec<MatrixSpec>>;

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToleranceSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rel: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub abs: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NamedMatrix {
    pub name: String,
    pub matrix: MatrixSpec,
}

/// Matrix Lie algebra `g ⊆ su(N)` with a metric scale for `h(u, v) = x·u†v`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpecFile {
    #[serde(rename = "N")]
    pub size: usize,
    pub basis: Vec<NamedMatrix>,
    #[serde(default = "unit_scale")]
    pub metric_scale: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<ToleranceSpec>,
}

fn unit_scale() -> f64 {
    1.0
}

/// Projective calculus given by coefficient grids or by module generators.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProjectiveSpecFile {
    #[serde(rename = "N")]
    pub size: usize,
    pub n: usize,
    pub derivations: Vec<MatrixSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub structure_constants: Option<Vec<Vec<Vec<f64>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<GridSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<GridSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h_inv: Option<GridSpec>,
    #[serde(rename = "X", default, skip_serializing_if = "Option::is_none")]
    pub x: Option<Vec<MatrixSpec>>,
    #[serde(rename = "Y", default, skip_serializing_if = "Option::is_none")]
    pub y: Option<Vec<MatrixSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<ToleranceSpec>,
}

/// Which form a [`ProjectiveSpecFile`] uses.
pub enum ProjectiveForm<'a> {
    Coefficients {
        p: &'a GridSpec,
        h: &'a GridSpec,
        h_inv: &'a GridSpec,
    },
    Generators {
        x: &'a [MatrixSpec],
        y: &'a [MatrixSpec],
    },
}

impl ProjectiveSpecFile {
    pub fn form(&self, origin: &str) -> Result<ProjectiveForm<'_>, CliError> {
        let field = |field: &str, message: &str| CliError::Field {
            origin: origin.to_string(),
            field: field.to_string(),
            message: message.to_string(),
        };
        match (&self.p, &self.h, &self.h_inv, &self.x, &self.y) {
            (Some(p), Some(h), Some(h_inv), None, None) => {
                Ok(ProjectiveForm::Coefficients { p, h, h_inv })
            }
            (None, None, None, Some(x), Some(y)) => Ok(ProjectiveForm::Generators { x, y }),
            (None, None, None, None, None) => Err(field("p", "give either p, h, h_inv or X, Y")),
            (_, _, _, Some(_), Some(_)) => {
                Err(field("X", "p, h, h_inv and X, Y are mutually exclusive"))
            }
            (_, _, _, Some(_), None) | (_, _, _, None, Some(_)) => {
                Err(field("Y", "X and Y must be given together"))
            }
            _ => Err(field("p", "p, h and h_inv must be given together")),
        }
    }
}

/// Parse JSON, locating failures by position and field path.
pub fn parse<T: DeserializeOwned>(text: &str, origin: &str) -> Result<T, CliError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        CliError::Syntax {
            origin: origin.to_string(),
            line: inner.line(),
            column: inner.column(),
            path,
            message: strip_location(&inner.to_string()),
        }
    })
}

/// Canonical text of an input file: pretty JSON with shortest round-trip floats.
pub fn to_canonical<T: Serialize>(spec: &T) -> String {
    serde_json::to_string_pretty(spec).expect("spec files serialize")
}

fn strip_location(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(idx) => msg[..idx].to_string(),
        None => msg.to_string(),
    }
}

pub fn resolve_tolerance(
    spec: Option<&ToleranceSpec>,
    cli_rel: Option<f64>,
) -> Result<Tolerance, CliError> {
    let default = Tolerance::default();
    let rel = cli_rel.or(spec.and_then(|s| s.rel)).unwrap_or(default.rel);
    let abs = spec.and_then(|s| s.abs).unwrap_or(default.abs);
    Ok(Tolerance::new(rel, abs)?)
}

pub fn to_matrix(
    spec: &MatrixSpec,
    rows: usize,
    cols: usize,
    origin: &str,
    field: &str,
) -> Result<ComplexMatrix, CliError> {
    let err = |message: String| CliError::Field {
        origin: origin.to_string(),
        field: field.to_string(),
        message,
    };
    if spec.len() != rows {
        return Err(err(format!("expected {rows} rows, found {}", spec.len())));
    }
    let mut data = Vec::with_capacity(rows * cols);
    for (r, row) in spec.iter().enumerate() {
        if row.len() != cols {
            return Err(err(format!(
                "row {r} has {} entries, expected {cols}",
                row.len()
            )));
        }
        data.extend(row.iter().map(|&[re, im]| Complex64::new(re, im)));
    }
    ComplexMatrix::from_row_major(rows, cols, data).map_err(|e| err(e.to_string()))
}

pub fn to_grid(
    spec: &GridSpec,
    n: usize,
    size: usize,
    origin: &str,
    field: &str,
) -> Result<Vec<Vec<ComplexMatrix>>, CliError> {
    if spec.len() != n || spec.iter().any(|row| row.len() != n) {
        return Err(CliError::Field {
            origin: origin.to_string(),
            field: field.to_string(),
            message: format!("expected a {n}x{n} grid of matrices"),
        });
    }
    spec.iter()
        .enumerate()
        .map(|(a, row)| {
            row.iter()
                .enumerate()
                .map(|(b, m)| to_matrix(m, size, size, origin, &format!("{field}[{a}][{b}]")))
                .collect()
        })
        .collect()
}
