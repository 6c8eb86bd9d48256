//! Lie-algebraic analysis of real matrix Lie algebras `g ⊆ su(N)`.
//!
//! Elements of `g` are handled at two levels: as matrices (a [`LieBasis`]) and
//! as real coefficient vectors in that basis, where the bracket is encoded by
//! [`StructureConstants`]. Subspaces of `g` such as the center are
//! returned as orthonormal coefficient vectors.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matlin::{
    antihermitian_eigen, bracket, is_antihermitian_tracefree, left_nullspace_scaled,
    real_column_space, real_matrix_from_columns, real_nullspace_scaled, real_rank, unit,
    ComplexMatrix, RowVector, Tolerance,
};

/// Ordered basis `D_1, …, D_n` of a real Lie algebra `g ⊆ su(N)`.
///
/// Construction checks that every matrix is trace-free and antihermitian and
/// that the matrices are linearly independent over the reals. Closure under
/// brackets is checked by [`structure_constants`].
#[derive(Debug, Clone, PartialEq)]
pub struct LieBasis {
    ambient: usize,
    mats: Vec<ComplexMatrix>,
}

impl LieBasis {
    pub fn new(mats: Vec<ComplexMatrix>, tol: Tolerance) -> Result<Self> {
        let first = mats.first().ok_or_else(|| {
            Error::InvalidInput("a Lie algebra basis needs at least one matrix".into())
        })?;
        let ambient = first.rows();
        for (i, m) in mats.iter().enumerate() {
            if !m.is_square() || m.rows() != ambient {
                return Err(Error::DimensionMismatch(format!(
                    "basis matrix {} is {}x{}, expected {ambient}x{ambient}",
                    i + 1,
                    m.rows(),
                    m.cols()
                )));
            }
            if !is_antihermitian_tracefree(m, tol) {
                return Err(Error::InvalidInput(format!(
                    "basis matrix {} is not trace-free antihermitian",
                    i + 1
                )));
            }
        }
        let basis = LieBasis { ambient, mats };
        let rank = real_rank(&basis.realified(), tol, basis.max_norm());
        if rank < basis.len() {
            return Err(Error::InvalidInput(format!(
                "basis matrices are linearly dependent over R (rank {rank} < {})",
                basis.len()
            )));
        }
        Ok(basis)
    }

    /// Number of basis elements, `dim g`.
    pub fn len(&self) -> usize {
        self.mats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mats.is_empty()
    }

    /// Size `N` of the matrices.
    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn mats(&self) -> &[ComplexMatrix] {
        &self.mats
    }

    pub fn get(&self, i: usize) -> Result<&ComplexMatrix> {
        self.mats.get(i).ok_or(Error::IndexOutOfRange {
            index: i,
            len: self.len(),
        })
    }

    pub fn max_norm(&self) -> f64 {
        self.mats
            .iter()
            .map(ComplexMatrix::max_norm)
            .fold(0.0, f64::max)
    }

    /// `2N² × n` real matrix whose columns are the realified basis matrices.
    pub fn realified(&self) -> DMatrix<f64> {
        let cols: Vec<Vec<f64>> = self.mats.iter().map(ComplexMatrix::realify).collect();
        real_matrix_from_columns(2 * self.ambient * self.ambient, &cols)
    }

    /// Matrix of the element with real coefficients `c` in this basis.
    pub fn element(&self, c: &[f64]) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.ambient, self.ambient);
        for (m, &ci) in self.mats.iter().zip(c) {
            if ci != 0.0 {
                out = out.add_scaled(Complex64::new(ci, 0.0), m);
            }
        }
        out
    }

    /// New basis `D'_a = Σ_i s[(i, a)] D_i`.
    pub fn change_basis(&self, s: &DMatrix<f64>, tol: Tolerance) -> Result<LieBasis> {
        let cols: Vec<ComplexMatrix> = (0..s.ncols())
            .map(|a| self.element(&s.column(a).iter().cloned().collect::<Vec<_>>()))
            .collect();
        LieBasis::new(cols, tol)
    }

    /// Conjugated basis `U† D_i U`. A common left eigenvector `v` of the
    /// original basis corresponds to `v·U` for the new one.
    pub fn conjugate_by(&self, u: &ComplexMatrix, tol: Tolerance) -> Result<LieBasis> {
        let ud = u.adjoint();
        let mats = self.mats.iter().map(|d| &(&ud * d) * u).collect();
        LieBasis::new(mats, tol)
    }
}

impl std::ops::Index<usize> for LieBasis {
    type Output = ComplexMatrix;

    fn index(&self, i: usize) -> &ComplexMatrix {
        &self.mats[i]
    }
}

/// Structure constants `f^k_ij` with `[D_i, D_j] = Σ_k f^k_ij D_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureConstants {
    n: usize,
    f: Vec<f64>,
}

impl StructureConstants {
    pub fn zeros(n: usize) -> Self {
        StructureConstants {
            n,
            f: vec![0.0; n * n * n],
        }
    }

    /// From a nested tensor indexed `[k][i][j]`. Checks antisymmetry and the
    /// Jacobi identity.
    pub fn from_tensor(tensor: &[Vec<Vec<f64>>], tol: Tolerance) -> Result<Self> {
        let n = tensor.len();
        if n == 0 {
            return Err(Error::InvalidInput(
                "structure constants need n >= 1".into(),
            ));
        }
        let mut out = Self::zeros(n);
        for (k, slab) in tensor.iter().enumerate() {
            if slab.len() != n || slab.iter().any(|row| row.len() != n) {
                return Err(Error::DimensionMismatch(format!(
                    "structure constant slab {k} is not {n}x{n}"
                )));
            }
            for (i, row) in slab.iter().enumerate() {
                for (j, &v) in row.iter().enumerate() {
                    if !v.is_finite() {
                        return Err(Error::InvalidInput(
                            "structure constants must be finite".into(),
                        ));
                    }
                    out.set(k, i, j, v);
                }
            }
        }
        let scale = out.max_abs().max(1.0);
        let anti = out.antisymmetry_residual();
        if anti > tol.threshold(scale) {
            return Err(Error::InvalidStructureConstants {
                identity: "antisymmetry",
                residual: anti,
            });
        }
        let jac = out.jacobi_residual();
        if jac > tol.threshold(scale * scale) {
            return Err(Error::InvalidStructureConstants {
                identity: "the Jacobi identity",
                residual: jac,
            });
        }
        Ok(out)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    fn idx(&self, k: usize, i: usize, j: usize) -> usize {
        (k * self.n + i) * self.n + j
    }

    /// `f^k_ij`.
    pub fn get(&self, k: usize, i: usize, j: usize) -> f64 {
        self.f[self.idx(k, i, j)]
    }

    fn set(&mut self, k: usize, i: usize, j: usize, v: f64) {
        let idx = self.idx(k, i, j);
        self.f[idx] = v;
    }

    pub fn to_nested(&self) -> Vec<Vec<Vec<f64>>> {
        (0..self.n)
            .map(|k| {
                (0..self.n)
                    .map(|i| (0..self.n).map(|j| self.get(k, i, j)).collect())
                    .collect()
            })
            .collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.f.iter().map(|x| x.abs()).fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        self.f.iter().all(|&x| x == 0.0)
    }

    /// Bracket of two elements given by coefficient vectors.
    pub fn bracket_coeffs(&self, a: &[f64], b: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut out = vec![0.0; n];
        for i in 0..n {
            if a[i] == 0.0 {
                continue;
            }
            for j in 0..n {
                let w = a[i] * b[j];
                if w == 0.0 {
                    continue;
                }
                for (k, o) in out.iter_mut().enumerate() {
                    *o += w * self.get(k, i, j);
                }
            }
        }
        out
    }

    pub fn antisymmetry_residual(&self) -> f64 {
        let n = self.n;
        let mut worst = 0.0f64;
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    worst = worst.max((self.get(k, i, j) + self.get(k, j, i)).abs());
                }
            }
        }
        worst
    }

    /// Max over `(i, j, k, m)` of `|f^m_il f^l_jk + f^m_jl f^l_ki + f^m_kl f^l_ij|`.
    pub fn jacobi_residual(&self) -> f64 {
        let n = self.n;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for m in 0..n {
                        let s: f64 = (0..n)
                            .map(|l| {
                                self.get(m, i, l) * self.get(l, j, k)
                                    + self.get(m, j, l) * self.get(l, k, i)
                                    + self.get(m, k, l) * self.get(l, i, j)
                            })
                            .sum();
                        worst = worst.max(s.abs());
                    }
                }
            }
        }
        worst
    }

    /// Structure constants in the basis `e'_a = Σ_i s[(i, a)] e_i`:
    /// `f'^c_ab = Σ_k (s⁻¹)_ck Σ_ij f^k_ij s_ia s_jb`.
    pub fn change_basis(&self, s: &DMatrix<f64>) -> Result<StructureConstants> {
        let n = self.n;
        if s.nrows() != n || s.ncols() != n {
            return Err(Error::DimensionMismatch(format!(
                "change of basis must be {n}x{n}"
            )));
        }
        let s_inv = s
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::InvalidInput("change of basis matrix is singular".into()))?;
        let mut out = Self::zeros(n);
        for a in 0..n {
            for b in 0..n {
                let ea: Vec<f64> = s.column(a).iter().cloned().collect();
                let eb: Vec<f64> = s.column(b).iter().cloned().collect();
                let br = self.bracket_coeffs(&ea, &eb);
                for c in 0..n {
                    let v: f64 = (0..n).map(|k| s_inv[(c, k)] * br[k]).sum();
                    out.set(c, a, b, v);
                }
            }
        }
        Ok(out)
    }
}

/// Fit structure constants by least squares on the realified basis.
///
/// Fails with [`Error::ClosureViolation`] (0-based indices) when some bracket
/// is not in the real span of the basis.
pub fn structure_constants(basis: &LieBasis, tol: Tolerance) -> Result<StructureConstants> {
    let n = basis.len();
    let realified = basis.realified();
    let svd = realified.clone().svd(true, true);
    let mut f = StructureConstants::zeros(n);
    let dnorm = basis.max_norm();
    for i in 0..n {
        for j in (i + 1)..n {
            let br = bracket(&basis.mats[i], &basis.mats[j])?;
            let rhs = DMatrix::from_column_slice(realified.nrows(), 1, &br.realify());
            let coeffs = svd
                .solve(&rhs, 0.0)
                .map_err(|e| Error::InvalidInput(format!("least-squares fit failed: {e}")))?;
            let c: Vec<f64> = coeffs.column(0).iter().cloned().collect();
            let fitted = basis.element(&c);
            let residual = (&br - &fitted).max_norm();
            if residual > tol.threshold(br.max_norm().max(dnorm)) {
                return Err(Error::ClosureViolation { i, j, residual });
            }
            for (k, &ck) in c.iter().enumerate() {
                f.set(k, i, j, ck);
                f.set(k, j, i, -ck);
            }
        }
    }
    Ok(f)
}

/// Killing form `B_ij = tr(ad_i ∘ ad_j)` in a fixed basis.
#[derive(Debug, Clone, PartialEq)]
pub struct KillingForm {
    b: DMatrix<f64>,
}

impl KillingForm {
    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.b
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.b[(i, j)]
    }

    pub fn dim(&self) -> usize {
        self.b.nrows()
    }

    /// Eigenvalues in ascending order.
    pub fn spectrum(&self) -> Vec<f64> {
        if self.dim() == 0 {
            return Vec::new();
        }
        let mut ev: Vec<f64> = self
            .b
            .clone()
            .symmetric_eigen()
            .eigenvalues
            .iter()
            .cloned()
            .collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    pub fn singular_values(&self) -> Vec<f64> {
        let mut sv: Vec<f64> = self.spectrum().iter().map(|x| x.abs()).collect();
        sv.sort_by(|a, b| b.total_cmp(a));
        sv
    }

    /// Max over basis triples of `|B([x,y],z) − B(x,[y,z])|`.
    pub fn ad_invariance_residual(&self, f: &StructureConstants) -> f64 {
        let n = self.dim();
        let mut worst = 0.0f64;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let lhs: f64 = (0..n).map(|l| f.get(l, x, y) * self.b[(l, z)]).sum();
                    let rhs: f64 = (0..n).map(|l| f.get(l, y, z) * self.b[(x, l)]).sum();
                    worst = worst.max((lhs - rhs).abs());
                }
            }
        }
        worst
    }
}

pub fn killing_form(f: &StructureConstants) -> KillingForm {
    let n = f.dim();
    let b = DMatrix::from_fn(n, n, |i, j| {
        let mut s = 0.0;
        for k in 0..n {
            for l in 0..n {
                s += f.get(l, i, k) * f.get(k, j, l);
            }
        }
        s
    });
    KillingForm { b }
}

/// Cartan's criterion: `B` nondegenerate relative to its own scale.
pub fn is_semisimple(b: &KillingForm, tol: Tolerance) -> bool {
    let sv = b.singular_values();
    match (sv.first(), sv.last()) {
        (Some(&max), Some(&min)) => min > tol.threshold(max),
        _ => false,
    }
}

/// The `n² × n` system `(i, j) ↦ Σ_k μ_k f^k_ij`; row `i·n + j`.
pub fn mu_obstruction_system(f: &StructureConstants) -> DMatrix<f64> {
    let n = f.dim();
    DMatrix::from_fn(n * n, n, |row, k| f.get(k, row / n, row % n))
}

/// Real `μ` with `Σ_k μ_k f^k_ij = 0` for all `i, j`.
pub fn mu_obstruction_space(f: &StructureConstants, tol: Tolerance) -> Vec<Vec<f64>> {
    real_nullspace_scaled(&mu_obstruction_system(f), tol, f.max_abs())
}

/// Orthonormal coefficient basis of `[g, g] = span{ f^·_ij : i < j }`.
pub fn derived_subalgebra(f: &StructureConstants, tol: Tolerance) -> Vec<Vec<f64>> {
    let n = f.dim();
    let cols: Vec<Vec<f64>> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .map(|(i, j)| (0..n).map(|k| f.get(k, i, j)).collect())
        .collect();
    real_column_space(&real_matrix_from_columns(n, &cols), tol, f.max_abs())
}

/// Coefficient vectors `c` with `Σ_i c_i f^k_ij = 0` for all `j, k`.
pub fn center(f: &StructureConstants, tol: Tolerance) -> Vec<Vec<f64>> {
    let n = f.dim();
    let m = DMatrix::from_fn(n * n, n, |row, i| f.get(row / n, i, row % n));
    real_nullspace_scaled(&m, tol, f.max_abs())
}

/// Direct-sum split `g = center ⊕ [g, g]`, valid for compact `g`.
#[derive(Debug, Clone, PartialEq)]
pub struct LeviSplit {
    pub radical_basis: Vec<Vec<f64>>,
    pub ss_basis: Vec<Vec<f64>>,
}

impl LeviSplit {
    pub fn dim(&self) -> usize {
        self.radical_basis.len() + self.ss_basis.len()
    }

    /// Columns: radical directions first, then the semisimple ones.
    pub fn adapted_matrix(&self) -> DMatrix<f64> {
        let cols: Vec<Vec<f64>> = self
            .radical_basis
            .iter()
            .chain(&self.ss_basis)
            .cloned()
            .collect();
        real_matrix_from_columns(self.dim(), &cols)
    }
}

pub fn levi_split_compact(f: &StructureConstants, tol: Tolerance) -> Result<LeviSplit> {
    let n = f.dim();
    let split = LeviSplit {
        radical_basis: center(f, tol),
        ss_basis: derived_subalgebra(f, tol),
    };
    let inconsistent = Error::SplitInconsistent {
        center: split.radical_basis.len(),
        derived: split.ss_basis.len(),
        n,
    };
    if split.dim() != n {
        return Err(inconsistent);
    }
    if real_rank(&split.adapted_matrix(), tol, 1.0) != n {
        return Err(inconsistent);
    }
    Ok(split)
}

/// Derived series at the coefficient level; solvable iff it reaches `0`.
pub fn is_solvable(f: &StructureConstants, tol: Tolerance) -> bool {
    let n = f.dim();
    let mut current: Vec<Vec<f64>> = (0..n).map(|k| unit(n, k)).collect();
    loop {
        if current.is_empty() {
            return true;
        }
        let mut cols = Vec::new();
        for a in 0..current.len() {
            for b in (a + 1)..current.len() {
                cols.push(f.bracket_coeffs(&current[a], &current[b]));
            }
        }
        let next = real_column_space(&real_matrix_from_columns(n, &cols), tol, f.max_abs());
        if next.len() == current.len() {
            return false;
        }
        current = next;
    }
}

/// Shared left eigenvector of a whole basis together with the eigenvalues.
#[derive(Debug, Clone)]
pub struct CommonEigenvector {
    /// Unit vector, phase chosen so its first non-negligible entry is real positive.
    pub v0: RowVector,
    /// Purely imaginary `λ_i` with `v0·D_i = λ_i v0`.
    pub eigenvalues: Vec<Complex64>,
    /// Dimension of the common left nullspace of `[g, g]`.
    pub invariant_dim: usize,
    /// Dimension of the joint eigenspace `v0` was taken from.
    pub joint_dim: usize,
}

/// Entries of modulus at or below this are treated as absent when picking
/// canonical representatives.
const PICK_CUTOFF: f64 = 1e-6;

/// Find a common left eigenvector of every `D_i`, if one exists.
///
/// Any common eigenvector `v` satisfies `v·[D_i, D_j] = 0`, so it lies in
/// `W = { v : v·X = 0 for all X ∈ [g, g] }`, computed from a basis of the
/// derived algebra. `W` is invariant under every
/// `D ∈ g`: for `v ∈ W`, `(v·D)·[X, Y] = v·[D, [X, Y]] + (v·[X, Y])·D = 0`
/// because `[D, [X, Y]] ∈ [g, g]`. On `W` the restrictions commute, since
/// `v·[D_i, D_j] = 0`, and they are antihermitian, so they are simultaneously
/// diagonalizable: a common eigenvector exists iff `W ≠ 0`. The search
/// intersects eigenspaces of the restrictions one basis element at a time.
///
/// Among several joint eigenspaces the one capturing the most of the lowest
/// index standard basis vector is kept, and the returned vector is the
/// normalized projection of that standard vector. This makes the output
/// deterministic.
pub fn common_left_eigenvector(
    basis: &LieBasis,
    f: &StructureConstants,
    tol: Tolerance,
) -> Result<Option<CommonEigenvector>> {
    let dim = basis.ambient_dim();
    let spanning: Vec<ComplexMatrix> = derived_subalgebra(f, tol)
        .iter()
        .map(|c| basis.element(c))
        .collect();
    let w_rows = left_nullspace_scaled(&spanning, dim, tol, basis.max_norm())?;
    if w_rows.is_empty() {
        return Ok(None);
    }
    let invariant_dim = w_rows.len();
    // Current joint eigenspace as orthonormal rows in C^dim.
    let mut joint = rows_to_matrix(&w_rows);
    for d in basis.mats() {
        if joint.rows() == 1 {
            break;
        }
        let restricted = &(&(&joint * d) * &joint.adjoint());
        let spaces = antihermitian_eigen(restricted, tol.scaled(1e3))?;
        let candidates: Vec<ComplexMatrix> = spaces
            .iter()
            .map(|s| &rows_to_matrix(&s.vectors) * &joint)
            .collect();
        joint = pick_preferred(candidates);
    }

    let joint_dim = joint.rows();
    let v0 = canonical_representative(&joint);
    let eigenvalues = basis
        .mats()
        .iter()
        .map(|d| Complex64::new(0.0, v0.mul_matrix(d).dot_conj(&v0).im))
        .collect();
    Ok(Some(CommonEigenvector {
        v0,
        eigenvalues,
        invariant_dim,
        joint_dim,
    }))
}

pub(crate) fn rows_to_matrix(rows: &[RowVector]) -> ComplexMatrix {
    let data: Vec<Complex64> = rows
        .iter()
        .flat_map(|r| r.entries().iter().cloned())
        .collect();
    ComplexMatrix::from_row_major(rows.len(), rows[0].dim(), data).expect("non-empty rows")
}

/// Squared norm of the projection of `e_k` onto the row space (rows orthonormal).
fn captured(rows: &ComplexMatrix, k: usize) -> f64 {
    (0..rows.rows()).map(|b| rows[(b, k)].norm_sqr()).sum()
}

fn pick_preferred(mut candidates: Vec<ComplexMatrix>) -> ComplexMatrix {
    let dim = candidates[0].cols();
    for k in 0..dim {
        let scores: Vec<f64> = candidates.iter().map(|c| captured(c, k)).collect();
        let best = scores.iter().cloned().fold(0.0, f64::max);
        if best > PICK_CUTOFF * PICK_CUTOFF {
            let idx = scores
                .iter()
                .position(|&s| s >= best - 1e-9)
                .expect("max exists");
            return candidates.swap_remove(idx);
        }
    }
    candidates.swap_remove(0)
}

fn canonical_representative(rows: &ComplexMatrix) -> RowVector {
    let dim = rows.cols();
    let k = (0..dim)
        .find(|&k| captured(rows, k).sqrt() > PICK_CUTOFF)
        .unwrap_or(0);
    // P e_k = Σ_b conj(s_b[k]) s_b
    let mut v = RowVector::zeros(dim);
    for b in 0..rows.rows() {
        v = v.add(&rows.row(b).scale(rows[(b, k)].conj()));
    }
    v.normalized()
        .expect("nonzero projection")
        .with_canonical_phase(PICK_CUTOFF)
}

/// Real `μ` over the radical directions solving `μ_k r^k_ij = 0` and
/// `μ_k s^k_pq = 0`.
///
/// `r` and `s` are the radical components of radical–radical and
/// radical–semisimple brackets, read off from `f` re-expressed in the basis
/// adapted to `split` (radical directions first).
pub fn anchor_solution_space(
    split: &LeviSplit,
    f: &StructureConstants,
    tol: Tolerance,
) -> Result<Vec<Vec<f64>>> {
    let nr = split.radical_basis.len();
    if nr == 0 {
        return Ok(Vec::new());
    }
    let adapted = f.change_basis(&split.adapted_matrix())?;
    let n = adapted.dim();
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for i in 0..nr {
        for j in 0..nr {
            rows.push((0..nr).map(|k| adapted.get(k, i, j)).collect());
        }
    }
    for p in 0..nr {
        for q in nr..n {
            rows.push((0..nr).map(|k| adapted.get(k, p, q)).collect());
        }
    }
    let m = DMatrix::from_fn(rows.len(), nr, |r, c| rows[r][c]);
    Ok(real_nullspace_scaled(&m, tol, f.max_abs()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn su2_f() -> StructureConstants {
        structure_constants(&catalog::su2(), tol()).unwrap()
    }

    #[test]
    fn su2_structure_constants_match_table() {
        let f = su2_f();
        // 0-based: f^3_12 = -2, f^2_13 = 2, f^1_23 = -2.
        assert!((f.get(2, 0, 1) + 2.0).abs() < 1e-12);
        assert!((f.get(1, 0, 2) - 2.0).abs() < 1e-12);
        assert!((f.get(0, 1, 2) + 2.0).abs() < 1e-12);
        assert_eq!(f.antisymmetry_residual(), 0.0);
        assert!(f.jacobi_residual() < 1e-12);
    }

    #[test]
    fn abelian_has_zero_constants() {
        let d3 = catalog::su2()[2].clone();
        let b = LieBasis::new(vec![d3], tol()).unwrap();
        assert!(structure_constants(&b, tol()).unwrap().is_zero());
    }

    #[test]
    fn non_closed_span_is_rejected() {
        let s = catalog::su2();
        let b = LieBasis::new(vec![s[0].clone(), s[1].clone()], tol()).unwrap();
        match structure_constants(&b, tol()) {
            Err(Error::ClosureViolation {
                i: 0,
                j: 1,
                residual,
            }) => assert!(residual > 1.0),
            other => panic!("expected closure violation, got {other:?}"),
        }
    }

    #[test]
    fn basis_validation() {
        assert!(LieBasis::new(vec![], tol()).is_err());
        assert!(LieBasis::new(vec![ComplexMatrix::identity(2)], tol()).is_err());
        let d3 = catalog::su2()[2].clone();
        assert!(LieBasis::new(vec![d3.clone(), d3.scale_real(2.0)], tol()).is_err());
        assert!(LieBasis::new(vec![d3, ComplexMatrix::zeros(3, 3)], tol()).is_err());
    }

    #[test]
    fn killing_form_su2_and_abelian() {
        let b = killing_form(&su2_f());
        for i in 0..3 {
            for j in 0..3 {
                let expected = if i == j { -8.0 } else { 0.0 };
                assert!((b.get(i, j) - expected).abs() < 1e-9);
            }
        }
        assert!(is_semisimple(&b, tol()));
        let z = killing_form(&StructureConstants::zeros(2));
        assert_eq!(z.matrix().max(), 0.0);
        assert!(!is_semisimple(&z, tol()));
    }

    #[test]
    fn gc_killing_has_single_zero_direction() {
        let f = structure_constants(&catalog::su4_gc(), tol()).unwrap();
        let b = killing_form(&f);
        for j in 0..4 {
            assert_eq!(b.get(0, j), 0.0);
            assert_eq!(b.get(j, 0), 0.0);
        }
        let zero_rows = (0..4)
            .filter(|&i| (0..4).all(|j| b.get(i, j).abs() < 1e-12))
            .count();
        assert_eq!(zero_rows, 1);
        assert!(!is_semisimple(&b, tol()));
        let fb = structure_constants(&catalog::su4_gb(), tol()).unwrap();
        assert!(!is_semisimple(&killing_form(&fb), tol()));
    }

    #[test]
    fn mu_obstruction_examples() {
        assert!(mu_obstruction_space(&su2_f(), tol()).is_empty());
        assert_eq!(
            mu_obstruction_space(&StructureConstants::zeros(3), tol()).len(),
            3
        );
        let f = structure_constants(&catalog::su4_gc(), tol()).unwrap();
        let space = mu_obstruction_space(&f, tol());
        assert_eq!(space.len(), 1);
        assert!((space[0][0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn center_and_derived_examples() {
        let f = su2_f();
        assert_eq!(derived_subalgebra(&f, tol()).len(), 3);
        assert!(center(&f, tol()).is_empty());
        let z = StructureConstants::zeros(2);
        assert!(derived_subalgebra(&z, tol()).is_empty());
        assert_eq!(center(&z, tol()).len(), 2);

        let gc = structure_constants(&catalog::su4_gc(), tol()).unwrap();
        let der = derived_subalgebra(&gc, tol());
        assert_eq!(der.len(), 3);
        assert!(der.iter().all(|v| v[0].abs() < 1e-12));
        let cen = center(&gc, tol());
        assert_eq!(cen.len(), 1);
        assert!((cen[0][0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn levi_split_examples() {
        let gc = structure_constants(&catalog::su4_gc(), tol()).unwrap();
        let s = levi_split_compact(&gc, tol()).unwrap();
        assert_eq!((s.radical_basis.len(), s.ss_basis.len()), (1, 3));
        let s = levi_split_compact(&su2_f(), tol()).unwrap();
        assert_eq!((s.radical_basis.len(), s.ss_basis.len()), (0, 3));
        let s = levi_split_compact(&StructureConstants::zeros(2), tol()).unwrap();
        assert_eq!((s.radical_basis.len(), s.ss_basis.len()), (2, 0));
    }

    #[test]
    fn solvability() {
        assert!(is_solvable(&StructureConstants::zeros(3), tol()));
        assert!(!is_solvable(&su2_f(), tol()));
        let gc = structure_constants(&catalog::su4_gc(), tol()).unwrap();
        assert!(!is_solvable(&gc, tol()));
    }

    #[test]
    fn solvable_nonabelian_structure_constants() {
        // Two-dimensional non-abelian algebra [e1, e2] = e2: solvable, not
        // compact, given directly as constants.
        let mut t = vec![vec![vec![0.0; 2]; 2]; 2];
        t[1][0][1] = 1.0;
        t[1][1][0] = -1.0;
        let f = StructureConstants::from_tensor(&t, tol()).unwrap();
        assert!(is_solvable(&f, tol()));
        assert_eq!(derived_subalgebra(&f, tol()).len(), 1);
    }

    #[test]
    fn from_tensor_rejects_bad_constants() {
        let mut t = vec![vec![vec![0.0; 2]; 2]; 2];
        t[0][0][1] = 1.0;
        assert!(matches!(
            StructureConstants::from_tensor(&t, tol()),
            Err(Error::InvalidStructureConstants {
                identity: "antisymmetry",
                ..
            })
        ));
    }

    #[test]
    fn common_eigenvector_examples() {
        let gc = common_left_eigenvector(
            &catalog::su4_gc(),
            &structure_constants(&catalog::su4_gc(), tol()).unwrap(),
            tol(),
        )
        .unwrap()
        .unwrap();
        let expected = RowVector::basis(4, 0);
        assert!(gc.v0.sub(&expected).norm() < 1e-12, "{:?}", gc.v0);
        assert!((gc.eigenvalues[0] - Complex64::new(0.0, 1.0)).norm() < 1e-12);
        for l in &gc.eigenvalues[1..] {
            assert!(l.norm() < 1e-12);
        }
        assert!(common_left_eigenvector(
            &catalog::su4_gb(),
            &structure_constants(&catalog::su4_gb(), tol()).unwrap(),
            tol()
        )
        .unwrap()
        .is_none());
        assert!(common_left_eigenvector(&catalog::su2(), &su2_f(), tol())
            .unwrap()
            .is_none());

        let d3 = LieBasis::new(vec![catalog::su2()[2].clone()], tol()).unwrap();
        let c = common_left_eigenvector(&d3, &StructureConstants::zeros(1), tol())
            .unwrap()
            .unwrap();
        assert!(c.v0.sub(&RowVector::basis(2, 0)).norm() < 1e-12);
        assert!((c.eigenvalues[0] - Complex64::new(0.0, 1.0)).norm() < 1e-12);
    }

    #[test]
    fn ga_has_common_eigenvector_despite_being_semisimple() {
        let c = common_left_eigenvector(
            &catalog::su4_ga(),
            &structure_constants(&catalog::su4_ga(), tol()).unwrap(),
            tol(),
        )
        .unwrap()
        .unwrap();
        assert_eq!(c.invariant_dim, 2);
        for d in catalog::su4_ga().mats() {
            assert!(c.v0.mul_matrix(d).norm() < 1e-12);
        }
    }

    #[test]
    fn anchor_solution_space_examples() {
        let gc = structure_constants(&catalog::su4_gc(), tol()).unwrap();
        let split = levi_split_compact(&gc, tol()).unwrap();
        assert_eq!(anchor_solution_space(&split, &gc, tol()).unwrap().len(), 1);

        let f = su2_f();
        let split = levi_split_compact(&f, tol()).unwrap();
        assert!(anchor_solution_space(&split, &f, tol()).unwrap().is_empty());

        let z = StructureConstants::zeros(3);
        let split = levi_split_compact(&z, tol()).unwrap();
        assert_eq!(anchor_solution_space(&split, &z, tol()).unwrap().len(), 3);
    }

    #[test]
    fn change_basis_round_trip() {
        let f = su2_f();
        let s = DMatrix::from_row_slice(3, 3, &[1.0, 2.0, 0.0, 0.0, 1.0, 0.0, 1.0, 0.0, 3.0]);
        let g = f.change_basis(&s).unwrap();
        let back = g.change_basis(&s.clone().try_inverse().unwrap()).unwrap();
        for k in 0..3 {
            for i in 0..3 {
                for j in 0..3 {
                    assert!((back.get(k, i, j) - f.get(k, i, j)).abs() < 1e-12);
                }
            }
        }
        // f' must agree with fitting the transformed matrices directly.
        let basis2 = catalog::su2().change_basis(&s, tol()).unwrap();
        let direct = structure_constants(&basis2, tol()).unwrap();
        for k in 0..3 {
            for i in 0..3 {
                for j in 0..3 {
                    assert!((direct.get(k, i, j) - g.get(k, i, j)).abs() < 1e-10);
                }
            }
        }
    }
}
