//! Real metric calculi over the simple module `C^N` of `Mat(N)`.
//!
//! A calculus is given by a [`LieBasis`] `D_1, …, D_n` (derivations act as
//! `[D_i, ·]`) and the metric `h(u, v) = x·u†v`. Metric anchor maps have the
//! form `φ(D_i) = μ_i v̂₀` and metric connections `∇_j v = iλ_j v − v·D_j`.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::liealg::{
    anchor_solution_space, center, common_left_eigenvector, derived_subalgebra, is_semisimple,
    is_solvable, killing_form, levi_split_compact, mu_obstruction_space, structure_constants,
    LieBasis, StructureConstants,
};
use crate::matlin::{bracket, ComplexMatrix, RowVector, Tolerance};

/// Number of sample pairs used by [`decide_existence`] for metric compatibility.
pub const DEFAULT_TRIALS: usize = 16;

const SAMPLE_SEED: u64 = 0x5eed_1e71_c1f1_7a00;

/// Factor applied to the caller's tolerance when a witness checks itself.
const WITNESS_SLACK: f64 = 100.0;

/// The triple `(Mat(N), g, C^N)` with metric `h(u, v) = x·u†v`.
#[derive(Debug, Clone)]
pub struct MetricPreCalculus {
    basis: LieBasis,
    metric_scale: f64,
}

impl MetricPreCalculus {
    pub fn new(basis: LieBasis, metric_scale: f64) -> Result<Self> {
        if metric_scale == 0.0 || !metric_scale.is_finite() {
            return Err(Error::InvalidInput(format!(
                "metric scale must be a finite nonzero real, got {metric_scale}"
            )));
        }
        Ok(MetricPreCalculus {
            basis,
            metric_scale,
        })
    }

    pub fn basis(&self) -> &LieBasis {
        &self.basis
    }

    pub fn metric_scale(&self) -> f64 {
        self.metric_scale
    }

    /// `h(u, v) = x·u†v`.
    pub fn metric(&self, u: &RowVector, v: &RowVector) -> ComplexMatrix {
        RowVector::outer_adjoint(u, v).scale_real(self.metric_scale)
    }
}

/// Anchor map `φ(D_i) = μ_i v̂₀`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnchorMap {
    v0: RowVector,
    mu: Vec<f64>,
}

impl AnchorMap {
    pub fn new(v0: RowVector, mu: Vec<f64>, tol: Tolerance) -> Result<Self> {
        if (v0.norm() - 1.0).abs() > tol.threshold(1.0) {
            return Err(Error::InvalidInput(format!(
                "v0 must have unit norm, got {}",
                v0.norm()
            )));
        }
        if mu.iter().any(|m| !m.is_finite()) {
            return Err(Error::InvalidInput("mu must be finite".into()));
        }
        if mu.iter().all(|m| m.abs() <= tol.threshold(1.0)) {
            return Err(Error::InvalidInput("mu must have a nonzero entry".into()));
        }
        Ok(AnchorMap { v0, mu })
    }

    pub fn v0(&self) -> &RowVector {
        &self.v0
    }

    pub fn mu(&self) -> &[f64] {
        &self.mu
    }

    /// `φ(D_i) = μ_i v̂₀`.
    pub fn image(&self, i: usize) -> RowVector {
        self.v0.scale(Complex64::new(self.mu[i], 0.0))
    }

    /// `φ(Σ_k c_k D_k) = (Σ_k c_k μ_k) v̂₀`.
    fn image_of(&self, c: impl Iterator<Item = f64>) -> RowVector {
        let s: f64 = c.zip(&self.mu).map(|(ck, mk)| ck * mk).sum();
        self.v0.scale(Complex64::new(s, 0.0))
    }
}

/// Metric connection `∇_j v = iλ_j v − v·D_j`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Connection {
    lambdas: Vec<f64>,
}

impl Connection {
    pub fn new(lambdas: Vec<f64>) -> Result<Self> {
        if lambdas.iter().any(|l| !l.is_finite()) {
            return Err(Error::InvalidInput(
                "connection coefficients must be finite".into(),
            ));
        }
        Ok(Connection { lambdas })
    }

    pub fn lambdas(&self) -> &[f64] {
        &self.lambdas
    }

    pub fn len(&self) -> usize {
        self.lambdas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lambdas.is_empty()
    }

    /// The same connection with arbitrary complex `t_j`.
    pub fn to_affine(&self) -> AffineConnection {
        AffineConnection {
            t: self
                .lambdas
                .iter()
                .map(|&l| Complex64::new(0.0, l))
                .collect(),
        }
    }
}

/// Connection `∇_j v = t_j v − v·D_j` with unrestricted complex `t_j`.
///
/// Only purely imaginary `t` is compatible with the metric; this type exists
/// to exercise the failing case.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineConnection {
    pub t: Vec<Complex64>,
}

impl AffineConnection {
    fn apply(&self, basis: &LieBasis, j: usize, v: &RowVector) -> RowVector {
        v.scale(self.t[j]).sub(&v.mul_matrix(&basis[j]))
    }
}

fn check_len(what: &str, got: usize, n: usize) -> Result<()> {
    if got != n {
        return Err(Error::DimensionMismatch(format!(
            "{what} has {got} entries, expected {n}"
        )));
    }
    Ok(())
}

/// Accept `phi` as a metric anchor map if every `φ_j` is a real multiple of
/// one unit vector and not all vanish.
pub fn is_metric_anchor(
    pre: &MetricPreCalculus,
    phi: &[RowVector],
    tol: Tolerance,
) -> Option<AnchorMap> {
    if phi.len() != pre.basis.len() || phi.iter().any(|p| p.dim() != pre.basis.ambient_dim()) {
        return None;
    }
    let scale = phi.iter().map(RowVector::norm).fold(0.0, f64::max);
    let pivot = phi.iter().find(|p| p.norm() > tol.threshold(scale))?;
    let v0 = pivot.normalized()?;
    let mut mu = Vec::with_capacity(phi.len());
    for p in phi {
        let c = p.dot_conj(&v0);
        if c.im.abs() > tol.threshold(scale) || p.sub(&v0.scale(c)).norm() > tol.threshold(scale) {
            return None;
        }
        mu.push(c.re);
    }
    AnchorMap::new(v0, mu, tol).ok()
}

/// `∇_j v = iλ_j v − v·D_j` (0-based `j`).
pub fn apply_connection(
    conn: &Connection,
    basis: &LieBasis,
    j: usize,
    v: &RowVector,
) -> Result<RowVector> {
    check_len("connection", conn.len(), basis.len())?;
    let d = basis.get(j)?;
    if v.dim() != d.rows() {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {} for {}x{} matrices",
            v.dim(),
            d.rows(),
            d.rows()
        )));
    }
    Ok(conn.to_affine().apply(basis, j, v))
}

/// Reproducible pairs of unit vectors in `C^dim`.
pub fn sample_pairs(dim: usize, count: usize) -> Vec<(RowVector, RowVector)> {
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
    let draw = |rng: &mut ChaCha8Rng| loop {
        let v = RowVector::new(
            (0..dim)
                .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
                .collect(),
        );
        if let Some(u) = v.normalized() {
            break u;
        }
    };
    (0..count)
        .map(|_| (draw(&mut rng), draw(&mut rng)))
        .collect()
}

/// Max over `j` and sampled `u, v` of
/// `‖[D_j, h(u, v)] − h(∇_j u, v) − h(u, ∇_j v)‖_max`.
pub fn metric_compat_residual(
    pre: &MetricPreCalculus,
    conn: &Connection,
    trials: usize,
) -> Result<f64> {
    check_len("connection", conn.len(), pre.basis.len())?;
    Ok(affine_metric_compat_residual(
        pre,
        &conn.to_affine(),
        trials,
    ))
}

/// [`metric_compat_residual`] for an unrestricted connection.
pub fn affine_metric_compat_residual(
    pre: &MetricPreCalculus,
    conn: &AffineConnection,
    trials: usize,
) -> f64 {
    let basis = &pre.basis;
    let mut worst = 0.0f64;
    for (u, v) in sample_pairs(basis.ambient_dim(), trials) {
        let huv = pre.metric(&u, &v);
        for j in 0..basis.len() {
            let lhs = bracket(&basis[j], &huv).expect("shapes agree");
            let rhs = &pre.metric(&conn.apply(basis, j, &u), &v)
                + &pre.metric(&u, &conn.apply(basis, j, &v));
            worst = worst.max((&lhs - &rhs).max_norm());
        }
    }
    worst
}

fn check_parts(
    pre: &MetricPreCalculus,
    conn: &Connection,
    f: &StructureConstants,
    anchor: &AnchorMap,
) -> Result<()> {
    let n = pre.basis.len();
    check_len("connection", conn.len(), n)?;
    check_len("mu", anchor.mu.len(), n)?;
    if f.dim() != n {
        return Err(Error::DimensionMismatch(format!(
            "structure constants of dim {}, expected {n}",
            f.dim()
        )));
    }
    if anchor.v0.dim() != pre.basis.ambient_dim() {
        return Err(Error::DimensionMismatch(format!(
            "v0 has length {}, expected {}",
            anchor.v0.dim(),
            pre.basis.ambient_dim()
        )));
    }
    Ok(())
}

/// Torsion `T_ij = ∇_i φ(D_j) − ∇_j φ(D_i) − φ([D_i, D_j])`, an `n × n` grid.
pub fn torsion(
    pre: &MetricPreCalculus,
    conn: &Connection,
    f: &StructureConstants,
    anchor: &AnchorMap,
) -> Result<Vec<Vec<RowVector>>> {
    check_parts(pre, conn, f, anchor)?;
    let n = pre.basis.len();
    let affine = conn.to_affine();
    let nabla_v0: Vec<RowVector> = (0..n)
        .map(|i| affine.apply(&pre.basis, i, &anchor.v0))
        .collect();
    let mut t = vec![vec![RowVector::zeros(anchor.v0.dim()); n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let mu = &anchor.mu;
            let tij = nabla_v0[i]
                .scale(Complex64::new(mu[j], 0.0))
                .sub(&nabla_v0[j].scale(Complex64::new(mu[i], 0.0)))
                .sub(&anchor.image_of((0..n).map(|k| f.get(k, i, j))));
            t[j][i] = tij.scale(Complex64::new(-1.0, 0.0));
            t[i][j] = tij;
        }
    }
    Ok(t)
}

/// Largest Euclidean norm among the torsion components.
pub fn torsion_norm(t: &[Vec<RowVector>]) -> f64 {
    t.iter().flatten().map(RowVector::norm).fold(0.0, f64::max)
}

/// `max_j ‖iλ_j v̂₀ − v̂₀·D_j‖`, i.e. how far `∇ v̂₀` is from zero.
pub fn rcc_residual(conn: &Connection, basis: &LieBasis, anchor: &AnchorMap) -> Result<f64> {
    check_len("connection", conn.len(), basis.len())?;
    let affine = conn.to_affine();
    Ok((0..basis.len())
        .map(|j| affine.apply(basis, j, &anchor.v0).norm())
        .fold(0.0, f64::max))
}

/// Whether `(C^N, h, ∇)` is a real connection calculus: `∇ v̂₀ = 0`.
pub fn rcc_check(
    conn: &Connection,
    basis: &LieBasis,
    anchor: &AnchorMap,
    tol: Tolerance,
) -> Result<bool> {
    Ok(rcc_residual(conn, basis, anchor)? <= tol.threshold(basis.max_norm()))
}

/// Max over triples `(a, b, c)` of the max-norm defect in Koszul's formula
///
/// `2h(∇_a e_b, e_c) = ∂_a h(e_b, e_c) + ∂_b h(e_a, e_c) − ∂_c h(e_a, e_b)
///  − h(e_a, φ[∂_b, ∂_c]) + h(e_b, φ[∂_c, ∂_a]) + h(e_c, φ[∂_a, ∂_b])`
///
/// with `e_i = φ(D_i)`.
pub fn koszul_residual(
    pre: &MetricPreCalculus,
    conn: &Connection,
    f: &StructureConstants,
    anchor: &AnchorMap,
) -> Result<f64> {
    check_parts(pre, conn, f, anchor)?;
    let basis = &pre.basis;
    let n = basis.len();
    let affine = conn.to_affine();
    let e: Vec<RowVector> = (0..n).map(|i| anchor.image(i)).collect();
    let phi_br = |i: usize, j: usize| anchor.image_of((0..n).map(|k| f.get(k, i, j)));
    let d = |i: usize, m: &ComplexMatrix| bracket(&basis[i], m).expect("shapes agree");
    let h = |u: &RowVector, v: &RowVector| pre.metric(u, v);
    let mut worst = 0.0f64;
    for a in 0..n {
        for b in 0..n {
            let nab = affine.apply(basis, a, &e[b]);
            for c in 0..n {
                let lhs = h(&nab, &e[c]).scale_real(2.0);
                let rhs = &(&(&(&(&d(a, &h(&e[b], &e[c])) + &d(b, &h(&e[a], &e[c])))
                    - &d(c, &h(&e[a], &e[b])))
                    - &h(&e[a], &phi_br(b, c)))
                    + &h(&e[b], &phi_br(c, a)))
                    + &h(&e[c], &phi_br(a, b));
                worst = worst.max((&lhs - &rhs).max_norm());
            }
        }
    }
    Ok(worst)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    Exists,
    Nonexistent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Reason {
    SemisimpleObstruction,
    NoCommonEigenvector,
    Witness,
}

/// Levi-Civita data proving existence.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    pub anchor: AnchorMap,
    pub connection: Connection,
}

/// Value in an [`ExistenceReport`] diagnostics map.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Diagnostic {
    Flag(bool),
    Count(usize),
    Value(f64),
    Values(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExistenceReport {
    pub status: Status,
    pub reason: Reason,
    pub witness: Option<Witness>,
    pub diagnostics: BTreeMap<String, Diagnostic>,
}

/// Decide whether the pre-calculus admits a pseudo-Riemannian structure and,
/// if so, construct and verify the Levi-Civita witness.
///
/// Existence holds iff `g` is not semisimple and its matrices share a left
/// eigenvector `v̂₀`. The witness takes `φ(D_i) = μ_i v̂₀` with `μ` vanishing
/// on `[g, g]` and `λ_j` the eigenvalues of `v̂₀`.
pub fn decide_existence(pre: &MetricPreCalculus, tol: Tolerance) -> Result<ExistenceReport> {
    let basis = &pre.basis;
    let f = structure_constants(basis, tol)?;
    let killing = killing_form(&f);
    let mut diagnostics = BTreeMap::new();
    let mut put = |k: &str, v: Diagnostic| {
        diagnostics.insert(k.to_string(), v);
    };
    put("killing_spectrum", Diagnostic::Values(killing.spectrum()));
    let nullity = mu_obstruction_space(&f, tol).len();
    put("obstruction_nullity", Diagnostic::Count(nullity));
    put("obstruction_rank", Diagnostic::Count(basis.len() - nullity));
    put("center_dim", Diagnostic::Count(center(&f, tol).len()));
    put(
        "derived_dim",
        Diagnostic::Count(derived_subalgebra(&f, tol).len()),
    );
    put("solvable", Diagnostic::Flag(is_solvable(&f, tol)));
    let semisimple = is_semisimple(&killing, tol);
    put("semisimple", Diagnostic::Flag(semisimple));

    let nonexistent = |reason, diagnostics| ExistenceReport {
        status: Status::Nonexistent,
        reason,
        witness: None,
        diagnostics,
    };
    if semisimple {
        return Ok(nonexistent(Reason::SemisimpleObstruction, diagnostics));
    }
    let Some(eig) = common_left_eigenvector(basis, &f, tol)? else {
        return Ok(nonexistent(Reason::NoCommonEigenvector, diagnostics));
    };
    let mut put = |k: &str, v: Diagnostic| {
        diagnostics.insert(k.to_string(), v);
    };
    put(
        "invariant_subspace_dim",
        Diagnostic::Count(eig.invariant_dim),
    );
    put("joint_eigenspace_dim", Diagnostic::Count(eig.joint_dim));

    let split = levi_split_compact(&f, tol)?;
    let solutions = anchor_solution_space(&split, &f, tol)?;
    let first = solutions.first().ok_or_else(|| {
        Error::WitnessVerificationFailed("no nonzero anchor coefficients on the radical".into())
    })?;
    let s_inv = split
        .adapted_matrix()
        .try_inverse()
        .ok_or_else(|| Error::WitnessVerificationFailed("adapted basis is singular".into()))?;
    let mu: Vec<f64> = (0..basis.len())
        .map(|i| {
            first
                .iter()
                .enumerate()
                .map(|(a, m)| s_inv[(a, i)] * m)
                .sum()
        })
        .collect();
    let anchor = AnchorMap::new(eig.v0.clone(), mu, tol)
        .map_err(|e| Error::WitnessVerificationFailed(e.to_string()))?;
    let connection = Connection::new(eig.eigenvalues.iter().map(|l| l.im).collect())?;

    let slack = tol.scaled(WITNESS_SLACK);
    let x = pre.metric_scale.abs();
    let mu_max = anchor.mu.iter().map(|m| m.abs()).fold(0.0, f64::max);
    let scale = basis.max_norm().max(f.max_abs());
    let checks = [
        (
            "torsion_norm",
            torsion_norm(&torsion(pre, &connection, &f, &anchor)?),
            mu_max * scale,
        ),
        (
            "rcc_residual",
            rcc_residual(&connection, basis, &anchor)?,
            basis.max_norm(),
        ),
        (
            "metric_compat_residual",
            metric_compat_residual(pre, &connection, DEFAULT_TRIALS)?,
            x * basis.max_norm(),
        ),
        (
            "koszul_residual",
            koszul_residual(pre, &connection, &f, &anchor)?,
            x * mu_max * mu_max * scale,
        ),
    ];
    for (name, value, s) in checks {
        put(name, Diagnostic::Value(value));
        if value > slack.threshold(s) {
            return Err(Error::WitnessVerificationFailed(format!(
                "{name} = {value:.3e} exceeds {:.3e}",
                slack.threshold(s)
            )));
        }
    }
    Ok(ExistenceReport {
        status: Status::Exists,
        reason: Reason::Witness,
        witness: Some(Witness { anchor, connection }),
        diagnostics,
    })
}

/// Whether `conn` is a Levi-Civita connection for `anchor` in the real
/// connection calculus sense.
pub fn is_levi_civita(
    pre: &MetricPreCalculus,
    f: &StructureConstants,
    anchor: &AnchorMap,
    conn: &Connection,
    tol: Tolerance,
) -> Result<bool> {
    let scale = pre.basis.max_norm().max(f.max_abs());
    let mu_max = anchor.mu.iter().map(|m| m.abs()).fold(0.0, f64::max);
    Ok(rcc_check(conn, &pre.basis, anchor, tol)?
        && torsion_norm(&torsion(pre, conn, f, anchor)?) <= tol.threshold(mu_max * scale)
        && metric_compat_residual(pre, conn, DEFAULT_TRIALS)?
            <= tol.threshold(pre.metric_scale.abs() * pre.basis.max_norm()))
}

/// Uniqueness of Levi-Civita connections: returns `false` only if both
/// connections pass every check and still differ.
pub fn verify_uniqueness(
    pre: &MetricPreCalculus,
    f: &StructureConstants,
    anchor: &AnchorMap,
    conn1: &Connection,
    conn2: &Connection,
    tol: Tolerance,
) -> Result<bool> {
    if !is_levi_civita(pre, f, anchor, conn1, tol)? || !is_levi_civita(pre, f, anchor, conn2, tol)?
    {
        return Ok(true);
    }
    let scale = conn1
        .lambdas
        .iter()
        .chain(&conn2.lambdas)
        .map(|l| l.abs())
        .fold(0.0, f64::max);
    Ok(conn1
        .lambdas
        .iter()
        .zip(&conn2.lambdas)
        .all(|(a, b)| (a - b).abs() <= tol.threshold(scale)))
}
