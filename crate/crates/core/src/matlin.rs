//! Small dense complex linear algebra.
//!
//! Everything here is sized for matrices of dimension up to a few dozen.
//! Module elements are *row* vectors acted on from the right (`v·A`), so every
//! eigenproblem in this crate is a left eigenproblem. Decompositions are
//! delegated to `nalgebra`; this module owns the conventions around them,
//! such as thresholds and phase choices.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use nalgebra::{DMatrix, SymmetricEigen, SVD};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
pub const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };
pub const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Relative/absolute threshold pair.
///
/// A quantity is treated as zero when it is at most `abs + rel * scale`,
/// where `scale` is a problem-dependent magnitude (usually a max-norm or the
/// largest singular value).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub rel: f64,
    pub abs: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            rel: 1e-9,
            abs: 1e-12,
        }
    }
}

impl Tolerance {
    pub fn new(rel: f64, abs: f64) -> Result<Self> {
        if !(rel > 0.0 && rel.is_finite()) || !(abs >= 0.0 && abs.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "tolerance needs rel > 0 and abs >= 0 (got rel={rel}, abs={abs})"
            )));
        }
        Ok(Tolerance { rel, abs })
    }

    pub fn threshold(&self, scale: f64) -> f64 {
        self.abs + self.rel * scale
    }

    /// Same tolerance with both components multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Tolerance {
        Tolerance {
            rel: self.rel * factor,
            abs: self.abs * factor,
        }
    }
}

/// Dense complex matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn from_row_major(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidInput(
                "matrix dimensions must be positive".into(),
            ));
        }
        if data.len() != rows * cols {
            return Err(Error::InvalidInput(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                data.len()
            )));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidInput("matrix entries must be finite".into()));
        }
        Ok(ComplexMatrix { rows, cols, data })
    }

    /// Build from nested rows. All rows must have the same length.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidInput("ragged matrix rows".into()));
        }
        Self::from_row_major(rows.len(), cols, rows.concat())
    }

    /// Build from `(re, im)` pairs; handy for literals in tests and examples.
    pub fn from_pairs<const C: usize>(rows: &[[(f64, f64); C]]) -> Self {
        let data = rows
            .iter()
            .flat_map(|r| r.iter().map(|&(re, im)| Complex64::new(re, im)))
            .collect();
        Self::from_row_major(rows.len(), C, data).expect("literal matrix")
    }

    /// Real-valued literal.
    pub fn from_real<const C: usize>(rows: &[[f64; C]]) -> Self {
        let data = rows
            .iter()
            .flat_map(|r| r.iter().map(|&re| Complex64::new(re, 0.0)))
            .collect();
        Self::from_row_major(rows.len(), C, data).expect("literal matrix")
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn diagonal(entries: &[Complex64]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, &z) in entries.iter().enumerate() {
            m[(i, i)] = z;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> RowVector {
        RowVector::new(self.data[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn to_rows(&self) -> Vec<Vec<Complex64>> {
        self.data.chunks(self.cols).map(<[_]>::to_vec).collect()
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// Largest entry modulus.
    pub fn max_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        self.map(|z| z * s)
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.map(|z| z * s)
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| f(z)).collect(),
        }
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs[(k, j)];
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Result<Self> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch(format!(
                "shapes {}x{} and {}x{} differ",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(&a, &b)| f(a, b))
            .collect();
        Ok(ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, |a, b| a - b)
    }

    /// `self + s * rhs`, shapes assumed equal.
    pub fn add_scaled(&self, s: Complex64, rhs: &Self) -> Self {
        self.zip_with(rhs, |a, b| a + s * b)
            .expect("matching shapes")
    }

    pub fn to_nalgebra(&self) -> DMatrix<Complex64> {
        DMatrix::from_row_slice(self.rows, self.cols, &self.data)
    }

    pub fn from_nalgebra(m: &DMatrix<Complex64>) -> Self {
        let mut out = Self::zeros(m.nrows(), m.ncols());
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                out[(i, j)] = m[(i, j)];
            }
        }
        out
    }

    /// Realified column vector `[Re(a_00), Re(a_01), ..., Im(a_00), ...]`.
    pub fn realify(&self) -> Vec<f64> {
        self.data
            .iter()
            .map(|z| z.re)
            .chain(self.data.iter().map(|z| z.im))
            .collect()
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

impl<'a> Mul<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.checked_mul(rhs).expect("matrix shapes")
    }
}

impl<'a> Add<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.checked_add(rhs).expect("matrix shapes")
    }
}

impl<'a> Sub<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.checked_sub(rhs).expect("matrix shapes")
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        self.map(|z| -z)
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for r in self.data.chunks(self.cols) {
            let cells: Vec<String> = r
                .iter()
                .map(|z| format!("{:+.4}{:+.4}i", z.re, z.im))
                .collect();
            writeln!(f, "  {}", cells.join("  "))?;
        }
        write!(f, "]")
    }
}

/// Complex scalars serialize as `[re, im]`.
struct Pair(Complex64);

impl Serialize for Pair {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.0.re, self.0.im].serialize(s)
    }
}

/// Matrices serialize as a list of rows of `[re, im]` pairs.
impl Serialize for ComplexMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.rows))?;
        for i in 0..self.rows {
            let row: Vec<Pair> = (0..self.cols).map(|j| Pair(self[(i, j)])).collect();
            seq.serialize_element(&row)?;
        }
        seq.end()
    }
}

/// Element of `C^N`, written as a row.
#[derive(Debug, Clone, PartialEq)]
pub struct RowVector(Vec<Complex64>);

impl RowVector {
    pub fn new(entries: Vec<Complex64>) -> Self {
        RowVector(entries)
    }

    pub fn zeros(dim: usize) -> Self {
        RowVector(vec![ZERO; dim])
    }

    pub fn basis(dim: usize, k: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[k] = ONE;
        v
    }

    pub fn from_real(entries: &[f64]) -> Self {
        RowVector(entries.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.0
    }

    /// Right action `v·A`.
    pub fn mul_matrix(&self, a: &ComplexMatrix) -> RowVector {
        assert_eq!(
            self.dim(),
            a.rows(),
            "row vector / matrix dimension mismatch"
        );
        let mut out = vec![ZERO; a.cols()];
        for (k, &vk) in self.0.iter().enumerate() {
            if vk == ZERO {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o += vk * a[(k, j)];
            }
        }
        RowVector(out)
    }

    /// Hermitian inner product `self · other†` (conjugate-linear in `other`).
    pub fn dot_conj(&self, other: &RowVector) -> Complex64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b.conj()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn scale(&self, s: Complex64) -> RowVector {
        RowVector(self.0.iter().map(|&z| z * s).collect())
    }

    pub fn add(&self, other: &RowVector) -> RowVector {
        RowVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &RowVector) -> RowVector {
        RowVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn normalized(&self) -> Option<RowVector> {
        let n = self.norm();
        (n > 0.0).then(|| self.scale(Complex64::new(1.0 / n, 0.0)))
    }

    /// Outer product `u† w` (an `N×N` matrix), the building block of `h(u, w)`.
    pub fn outer_adjoint(u: &RowVector, w: &RowVector) -> ComplexMatrix {
        let n = u.dim();
        let m = w.dim();
        let mut out = ComplexMatrix::zeros(n, m);
        for a in 0..n {
            for b in 0..m {
                out[(a, b)] = u.0[a].conj() * w.0[b];
            }
        }
        out
    }

    /// Multiply by a unit phase so that the first entry of modulus above
    /// `cutoff` becomes real and positive.
    pub fn with_canonical_phase(&self, cutoff: f64) -> RowVector {
        match self.0.iter().find(|z| z.norm() > cutoff) {
            Some(z) => self.scale(z.conj() / z.norm()),
            None => self.clone(),
        }
    }
}

impl Serialize for RowVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(|&z| Pair(z)))
    }
}

impl Index<usize> for RowVector {
    type Output = Complex64;
    fn index(&self, i: usize) -> &Complex64 {
        &self.0[i]
    }
}

/// Commutator `ab − ba`.
pub fn bracket(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    if !a.is_square() || !b.is_square() || a.rows() != b.rows() {
        return Err(Error::DimensionMismatch(format!(
            "bracket needs equal square matrices, got {}x{} and {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let ab = a * b;
    let ba = b * a;
    Ok(&ab - &ba)
}

pub fn is_antihermitian_tracefree(a: &ComplexMatrix, tol: Tolerance) -> bool {
    if !a.is_square() {
        return false;
    }
    let threshold = tol.threshold(a.max_norm());
    antihermitian_defect(a) <= threshold && a.trace().norm() <= threshold
}

/// `‖a + a†‖_max`.
pub fn antihermitian_defect(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            worst = worst.max((a[(i, j)] + a[(j, i)].conj()).norm());
        }
    }
    worst
}

/// Right nullspace of a complex matrix, as orthonormal columns of `V`.
///
/// Singular values at or below `tol.threshold(max(σ_max, scale))` count as
/// zero. Wide systems are padded with zero rows so that the SVD returns a
/// complete `V`.
fn complex_right_nullspace(
    m: DMatrix<Complex64>,
    tol: Tolerance,
    scale: f64,
) -> Vec<Vec<Complex64>> {
    let cols = m.ncols();
    if cols == 0 {
        return Vec::new();
    }
    let padded = if m.nrows() < cols {
        m.resize_vertically(cols, ZERO)
    } else {
        m
    };
    let svd = SVD::new(padded, false, true);
    let v_t = svd.v_t.expect("v_t requested");
    let sigma_max = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let threshold = tol.threshold(sigma_max.max(scale));
    (0..cols)
        .filter(|&r| svd.singular_values[r] <= threshold)
        // Row r of V† is the conjugate of column r of V.
        .map(|r| (0..cols).map(|c| v_t[(r, c)].conj()).collect())
        .collect()
}

/// Orthonormal basis of `{ v : v·M ≈ 0 for every M in mats }` in `C^dim`.
///
/// An empty `mats` list yields the standard basis of the whole space.
pub fn left_nullspace(
    mats: &[ComplexMatrix],
    dim: usize,
    tol: Tolerance,
) -> Result<Vec<RowVector>> {
    left_nullspace_scaled(mats, dim, tol, 0.0)
}

pub(crate) fn left_nullspace_scaled(
    mats: &[ComplexMatrix],
    dim: usize,
    tol: Tolerance,
    scale: f64,
) -> Result<Vec<RowVector>> {
    if let Some(bad) = mats.iter().find(|m| !m.is_square() || m.rows() != dim) {
        return Err(Error::DimensionMismatch(format!(
            "left_nullspace expects {dim}x{dim} matrices, got {}x{}",
            bad.rows(),
            bad.cols()
        )));
    }
    if mats.is_empty() {
        return Ok((0..dim).map(|k| RowVector::basis(dim, k)).collect());
    }
    // v·M = 0  <=>  Mᵀ vᵀ = 0; stack the transposes.
    let mut stacked = DMatrix::<Complex64>::zeros(dim * mats.len(), dim);
    for (b, m) in mats.iter().enumerate() {
        for i in 0..dim {
            for j in 0..dim {
                stacked[(b * dim + j, i)] = m[(i, j)];
            }
        }
    }
    Ok(complex_right_nullspace(stacked, tol, scale)
        .into_iter()
        .map(RowVector::new)
        .collect())
}

/// One eigenvalue of an antihermitian matrix together with its left eigenspace.
#[derive(Debug, Clone)]
pub struct EigenSpace {
    /// Purely imaginary eigenvalue (real part is exactly zero).
    pub value: Complex64,
    /// Orthonormal left eigenvectors `v` with `v·a = value·v`.
    pub vectors: Vec<RowVector>,
}

/// Left eigen-decomposition of an antihermitian matrix.
///
/// Solved as the hermitian problem for `i·aᵀ` (so `aᵀ x = λ x` with
/// `λ = −i μ`). Eigenvalues closer than `1e-6·(spectral diameter + 1)` are
/// merged into a single eigenspace. Results are ordered by descending
/// imaginary part.
pub fn antihermitian_eigen(a: &ComplexMatrix, tol: Tolerance) -> Result<Vec<EigenSpace>> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(
            "antihermitian_eigen needs a square matrix".into(),
        ));
    }
    let defect = antihermitian_defect(a);
    if defect > tol.threshold(a.max_norm()) {
        return Err(Error::NotAntihermitian { defect });
    }
    let n = a.rows();
    let herm = a.transpose().scale(I).to_nalgebra();
    // Symmetrize away the rounding-level antihermitian defect.
    let herm = (&herm + herm.adjoint()) * Complex64::new(0.5, 0.0);
    let eig = SymmetricEigen::new(herm);

    // λ = −iμ, so ordering by descending Im λ is ascending μ.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| eig.eigenvalues[x].total_cmp(&eig.eigenvalues[y]));
    let lo = eig.eigenvalues[order[0]];
    let hi = eig.eigenvalues[order[n - 1]];
    let gap = 1e-6 * ((hi - lo) + 1.0);

    let mut groups: Vec<Vec<usize>> = Vec::new();
    for &idx in &order {
        match groups.last_mut() {
            Some(g) if eig.eigenvalues[idx] - eig.eigenvalues[*g.last().unwrap()] <= gap => {
                g.push(idx)
            }
            _ => groups.push(vec![idx]),
        }
    }

    Ok(groups
        .into_iter()
        .map(|g| {
            let mu = g.iter().map(|&k| eig.eigenvalues[k]).sum::<f64>() / g.len() as f64;
            let vectors = g
                .iter()
                .map(|&k| RowVector::new(eig.eigenvectors.column(k).iter().cloned().collect()))
                .collect();
            EigenSpace {
                value: Complex64::new(0.0, -mu),
                vectors,
            }
        })
        .collect())
}

/// Right nullspace of a real matrix as orthonormal vectors.
///
/// Each returned vector has its first entry of modulus above `1e-12` made
/// positive, so output signs are reproducible.
pub fn real_nullspace(m: &DMatrix<f64>, tol: Tolerance) -> Vec<Vec<f64>> {
    real_nullspace_scaled(m, tol, 0.0)
}

pub(crate) fn real_nullspace_scaled(m: &DMatrix<f64>, tol: Tolerance, scale: f64) -> Vec<Vec<f64>> {
    let cols = m.ncols();
    if cols == 0 {
        return Vec::new();
    }
    if m.nrows() == 0 {
        return (0..cols).map(|k| unit(cols, k)).collect();
    }
    let padded = if m.nrows() < cols {
        m.clone().resize_vertically(cols, 0.0)
    } else {
        m.clone()
    };
    let svd = SVD::new(padded, false, true);
    let v_t = svd.v_t.expect("v_t requested");
    let sigma_max = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let threshold = tol.threshold(sigma_max.max(scale));
    (0..cols)
        .filter(|&r| svd.singular_values[r] <= threshold)
        .map(|r| canonical_sign(v_t.row(r).iter().cloned().collect()))
        .collect()
}

/// Orthonormal basis of the column space of a real matrix.
pub(crate) fn real_column_space(m: &DMatrix<f64>, tol: Tolerance, scale: f64) -> Vec<Vec<f64>> {
    if m.ncols() == 0 || m.nrows() == 0 {
        return Vec::new();
    }
    let svd = SVD::new(m.clone(), true, false);
    let u = svd.u.expect("u requested");
    let sigma_max = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let threshold = tol.threshold(sigma_max.max(scale));
    (0..svd.singular_values.len())
        .filter(|&r| svd.singular_values[r] > threshold)
        .map(|r| canonical_sign(u.column(r).iter().cloned().collect()))
        .collect()
}

/// Numerical rank of a real matrix relative to `scale`.
pub(crate) fn real_rank(m: &DMatrix<f64>, tol: Tolerance, scale: f64) -> usize {
    real_column_space(m, tol, scale).len()
}

pub(crate) fn unit(n: usize, k: usize) -> Vec<f64> {
    let mut v = vec![0.0; n];
    v[k] = 1.0;
    v
}

fn canonical_sign(mut v: Vec<f64>) -> Vec<f64> {
    if let Some(&first) = v.iter().find(|x| x.abs() > 1e-12) {
        if first < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
    }
    v
}

/// Columns → real matrix.
pub(crate) fn real_matrix_from_columns(rows: usize, cols: &[Vec<f64>]) -> DMatrix<f64> {
    DMatrix::from_fn(rows, cols.len(), |i, j| cols[j][i])
}
