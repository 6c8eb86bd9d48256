//! Command-line front end.
//!
//! Inputs are JSON files (see [`input`]); a bundled example is selected with
//! the path `bundled:<name>`, e.g. `bundled:su2.json`. Every command returns
//! a [`Report`]; mathematical verdicts are part of the report, and only
//! unreadable or invalid input produces an error.

pub mod format;
pub mod input;

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::cncalc::{decide_existence, MetricPreCalculus, Status};
use crate::error::Error;
use crate::liealg::{
    center, derived_subalgebra, is_semisimple, is_solvable, killing_form, levi_split_compact,
    structure_constants, LieBasis, StructureConstants,
};
use crate::matlin::Tolerance;
use crate::projcalc::{
    from_module_generators, koszul_verify_projective, lambda_tensor, lc_condition_check,
    lc_connection_coefficients, ProjectiveCalculusData,
};
use input::{
    parse, resolve_tolerance, to_grid, to_matrix, AlgebraSpecFile, ProjectiveForm,
    ProjectiveSpecFile,
};

/// Example inputs shipped with the binary.
pub const BUNDLED: &[(&str, &str)] = &[
    ("su2.json", include_str!("../../fixtures/su2.json")),
    (
        "abelian1.json",
        include_str!("../../fixtures/abelian1.json"),
    ),
    ("ga_su4.json", include_str!("../../fixtures/ga_su4.json")),
    ("gb_su4.json", include_str!("../../fixtures/gb_su4.json")),
    ("gc_su4.json", include_str!("../../fixtures/gc_su4.json")),
    (
        "mat2_rank1.json",
        include_str!("../../fixtures/mat2_rank1.json"),
    ),
    (
        "free_trivial.json",
        include_str!("../../fixtures/free_trivial.json"),
    ),
    (
        "abelian_free.json",
        include_str!("../../fixtures/abelian_free.json"),
    ),
];

const BUNDLED_PREFIX: &str = "bundled:";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },

    #[error("unknown bundled fixture `{0}`; available: {list}", list = BUNDLED.iter().map(|(n, _)| *n).collect::<Vec<_>>().join(", "))]
    UnknownFixture(String),

    #[error("{origin}:{line}:{column}: at `{path}`: {message}")]
    Syntax {
        origin: String,
        line: usize,
        column: usize,
        path: String,
        message: String,
    },

    #[error("{origin}: field `{field}`: {message}")]
    Field {
        origin: String,
        field: String,
        message: String,
    },

    #[error("{origin}: basis is not closed under brackets: [{a}, {b}] (elements {i} and {j}) leaves the span, residual {residual:.3e}")]
    Closure {
        origin: String,
        a: String,
        b: String,
        i: usize,
        j: usize,
        residual: f64,
    },

    #[error(transparent)]
    Math(#[from] Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "realcalc",
    version,
    about = "Levi-Civita connections for real calculi over matrix algebras"
)]
pub struct Cli {
    /// Relative tolerance for rank and residual decisions.
    #[arg(long, global = true, value_name = "REL")]
    pub tol: Option<f64>,

    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,

    /// Write the report here instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Structure constants and Killing form of a matrix Lie algebra.
    Lie {
        /// Algebra file, or `bundled:<name>`.
        file: String,
    },
    /// Decide whether a Levi-Civita connection exists over C^N and build it.
    Analyze {
        /// Algebra file, or `bundled:<name>`.
        file: String,
    },
    /// Check the Levi-Civita condition for a projective module.
    Projective {
        /// Projective calculus file, or `bundled:<name>`.
        file: String,
    },
}

/// Outcome of one command.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub input: String,
    pub tolerance: Tolerance,
    pub status: String,
    pub reason: Option<String>,
    pub witness: Option<Value>,
    pub diagnostics: BTreeMap<String, Value>,
    pub tables: BTreeMap<String, Value>,
}

impl Report {
    fn new(command: &str, input: &str, tolerance: Tolerance, status: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            input: input.into(),
            tolerance,
            status: status.into(),
            reason: None,
            witness: None,
            diagnostics: BTreeMap::new(),
            tables: BTreeMap::new(),
        }
    }

    fn diag(&mut self, key: &str, value: impl Serialize) {
        self.diagnostics.insert(
            key.into(),
            serde_json::to_value(value).expect("serializable"),
        );
    }

    fn table(&mut self, key: &str, value: impl Serialize) {
        self.tables.insert(
            key.into(),
            serde_json::to_value(value).expect("serializable"),
        );
    }

    pub fn to_json(&self) -> String {
        let mut s = format::to_json(self);
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "command: {}\ninput: {}\n",
            self.command, self.input
        ));
        out.push_str(&format!(
            "tolerance: rel={} abs={}\n",
            format::format_f64(self.tolerance.rel),
            format::format_f64(self.tolerance.abs)
        ));
        out.push_str(&format!("status: {}\n", self.status));
        if let Some(reason) = &self.reason {
            out.push_str(&format!("reason: {reason}\n"));
        }
        let section = |out: &mut String, name: &str, value: Value| {
            out.push_str(name);
            out.push_str(":\n");
            for line in format::to_text(&value).lines() {
                out.push_str("  ");
                out.push_str(line);
                out.push('\n');
            }
        };
        if let Some(w) = &self.witness {
            section(&mut out, "witness", w.clone());
        }
        if !self.diagnostics.is_empty() {
            section(&mut out, "diagnostics", json!(self.diagnostics));
        }
        if !self.tables.is_empty() {
            section(&mut out, "tables", json!(self.tables));
        }
        out
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Text => self.to_text(),
            OutputFormat::Json => self.to_json(),
        }
    }
}

/// Contents of a file path or `bundled:<name>` fixture.
pub fn load_source(file: &str) -> Result<String, CliError> {
    if let Some(name) = file.strip_prefix(BUNDLED_PREFIX) {
        return bundled(name)
            .map(str::to_string)
            .ok_or_else(|| CliError::UnknownFixture(name.to_string()));
    }
    std::fs::read_to_string(file).map_err(|e| CliError::Io {
        path: file.to_string(),
        message: e.to_string(),
    })
}

pub fn bundled(name: &str) -> Option<&'static str> {
    let stem = name.strip_suffix(".json").unwrap_or(name);
    BUNDLED
        .iter()
        .find(|(n, _)| n.strip_suffix(".json") == Some(stem))
        .map(|(_, text)| *text)
}

struct Algebra {
    names: Vec<String>,
    pre: MetricPreCalculus,
    tol: Tolerance,
}

fn build_algebra(
    spec: &AlgebraSpecFile,
    origin: &str,
    cli_tol: Option<f64>,
) -> Result<Algebra, CliError> {
    let tol = resolve_tolerance(spec.tolerance.as_ref(), cli_tol)?;
    if spec.size == 0 {
        return Err(CliError::Field {
            origin: origin.into(),
            field: "N".into(),
            message: "must be positive".into(),
        });
    }
    let mats = spec
        .basis
        .iter()
        .enumerate()
        .map(|(k, m)| {
            to_matrix(
                &m.matrix,
                spec.size,
                spec.size,
                origin,
                &format!("basis[{k}].matrix"),
            )
        })
        .collect::<Result<Vec<_>, _>>()?;
    let basis = LieBasis::new(mats, tol)?;
    let pre = MetricPreCalculus::new(basis, spec.metric_scale)?;
    Ok(Algebra {
        names: spec.basis.iter().map(|m| m.name.clone()).collect(),
        pre,
        tol,
    })
}

fn fit_constants(algebra: &Algebra, origin: &str) -> Result<StructureConstants, CliError> {
    structure_constants(algebra.pre.basis(), algebra.tol).map_err(|e| match e {
        Error::ClosureViolation { i, j, residual } => CliError::Closure {
            origin: origin.into(),
            a: algebra.names[i].clone(),
            b: algebra.names[j].clone(),
            i: i + 1,
            j: j + 1,
            residual,
        },
        other => other.into(),
    })
}

/// `lie`: structure constants, Killing form, semisimplicity, Levi split.
pub fn cmd_lie(
    spec: &AlgebraSpecFile,
    origin: &str,
    cli_tol: Option<f64>,
) -> Result<Report, CliError> {
    let algebra = build_algebra(spec, origin, cli_tol)?;
    let tol = algebra.tol;
    let f = fit_constants(&algebra, origin)?;
    let killing = killing_form(&f);
    let split = levi_split_compact(&f, tol)?;
    let mut report = Report::new("lie", origin, tol, "ok");
    report.diag("dim", f.dim());
    report.diag("semisimple", is_semisimple(&killing, tol));
    report.diag("solvable", is_solvable(&f, tol));
    report.diag("center_dim", center(&f, tol).len());
    report.diag("derived_dim", derived_subalgebra(&f, tol).len());
    report.diag("killing_spectrum", killing.spectrum());
    report.diag("jacobi_residual", f.jacobi_residual());
    report.table("basis", &algebra.names);
    report.table("structure_constants", f.to_nested());
    let b = killing.matrix();
    report.table(
        "killing_form",
        (0..b.nrows())
            .map(|i| b.row(i).iter().cloned().collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    );
    report.table(
        "levi_split",
        json!({"radical_basis": split.radical_basis, "ss_basis": split.ss_basis}),
    );
    Ok(report)
}

/// `analyze`: the existence decision with witness and residuals.
pub fn cmd_analyze(
    spec: &AlgebraSpecFile,
    origin: &str,
    cli_tol: Option<f64>,
) -> Result<Report, CliError> {
    let algebra = build_algebra(spec, origin, cli_tol)?;
    fit_constants(&algebra, origin)?;
    let existence = decide_existence(&algebra.pre, algebra.tol)?;
    let status = match existence.status {
        Status::Exists => "Exists",
        Status::Nonexistent => "Nonexistent",
    };
    let mut report = Report::new("analyze", origin, algebra.tol, status);
    report.reason = Some(format!("{:?}", existence.reason));
    if let Some(w) = &existence.witness {
        report.witness = Some(json!({
            "v0": w.anchor.v0(),
            "mu": w.anchor.mu(),
            "lambda": w.connection.lambdas(),
        }));
    }
    for (k, v) in &existence.diagnostics {
        report.diag(k, v);
    }
    report.table("basis", &algebra.names);
    Ok(report)
}

fn build_projective(
    spec: &ProjectiveSpecFile,
    origin: &str,
    tol: Tolerance,
) -> Result<ProjectiveCalculusData, CliError> {
    let field = |field: &str, message: String| CliError::Field {
        origin: origin.into(),
        field: field.into(),
        message,
    };
    if spec.size == 0 || spec.n == 0 {
        return Err(field("n", "N and n must be positive".into()));
    }
    if spec.derivations.len() != spec.n {
        return Err(field(
            "derivations",
            format!(
                "expected {} matrices, found {}",
                spec.n,
                spec.derivations.len()
            ),
        ));
    }
    let mats = spec
        .derivations
        .iter()
        .enumerate()
        .map(|(k, m)| {
            to_matrix(
                m,
                spec.size,
                spec.size,
                origin,
                &format!("derivations[{k}]"),
            )
        })
        .collect::<Result<Vec<_>, _>>()?;
    let derivs = LieBasis::new(mats, tol)?;
    let f = match &spec.structure_constants {
        Some(t) => StructureConstants::from_tensor(t, tol)?,
        None => structure_constants(&derivs, tol)?,
    };
    let data = match spec.form(origin)? {
        ProjectiveForm::Coefficients { p, h, h_inv } => ProjectiveCalculusData::new(
            derivs,
            f,
            to_grid(p, spec.n, spec.size, origin, "p")?,
            to_grid(h, spec.n, spec.size, origin, "h")?,
            to_grid(h_inv, spec.n, spec.size, origin, "h_inv")?,
            tol,
        )?,
        ProjectiveForm::Generators { x, y } => {
            if x.len() != spec.n || y.len() != spec.n {
                return Err(field("X", format!("X and Y need {} entries each", spec.n)));
            }
            let rows = x[0].len();
            let xs = x
                .iter()
                .enumerate()
                .map(|(k, m)| to_matrix(m, rows, spec.size, origin, &format!("X[{k}]")))
                .collect::<Result<Vec<_>, _>>()?;
            let ys = y
                .iter()
                .enumerate()
                .map(|(k, m)| to_matrix(m, spec.size, rows, origin, &format!("Y[{k}]")))
                .collect::<Result<Vec<_>, _>>()?;
            from_module_generators(&xs, &ys, derivs, f, tol)?
        }
    };
    Ok(data)
}

/// `projective`: the Levi-Civita condition with per-index residuals.
///
/// Indices in the report are 1-based.
pub fn cmd_projective(
    spec: &ProjectiveSpecFile,
    origin: &str,
    cli_tol: Option<f64>,
) -> Result<Report, CliError> {
    let tol = resolve_tolerance(spec.tolerance.as_ref(), cli_tol)?;
    let data = build_projective(spec, origin, tol)?;
    let check = lc_condition_check(&data, tol);
    let mut report = Report::new(
        "projective",
        origin,
        tol,
        if check.holds { "holds" } else { "fails" },
    );
    report.diag("holds", check.holds);
    report.diag("max_residual", check.max_residual);
    let (k, i, j) = check.worst_index;
    report.diag("worst_index", [k + 1, i + 1, j + 1]);
    report.table("lambda", lambda_tensor(&data));
    report.table("residuals", &check.residuals);
    if check.holds {
        let coeffs = lc_connection_coefficients(&data, tol)?;
        report.diag("koszul_residual", koszul_verify_projective(&data, &coeffs)?);
        report.table("connection_coefficients", &coeffs);
    }
    Ok(report)
}

/// Run a parsed command line and return the rendered report.
pub fn run(cli: &Cli) -> Result<String, CliError> {
    let report = match &cli.command {
        Command::Lie { file } => cmd_lie(&parse(&load_source(file)?, file)?, file, cli.tol)?,
        Command::Analyze { file } => {
            cmd_analyze(&parse(&load_source(file)?, file)?, file, cli.tol)?
        }
        Command::Projective { file } => {
            cmd_projective(&parse(&load_source(file)?, file)?, file, cli.tol)?
        }
    };
    Ok(report.render(cli.format))
}

/// [`run`], then write to `--output` or return the text for standard output.
pub fn execute(cli: &Cli) -> Result<Option<String>, CliError> {
    let text = run(cli)?;
    match &cli.output {
        Some(path) => {
            std::fs::write(path, &text).map_err(|e| CliError::Io {
                path: path.display().to_string(),
                message: e.to_string(),
            })?;
            Ok(None)
        }
        None => Ok(Some(text)),
    }
}
