//! Brute-force reference computations written directly against nalgebra,
//! sharing no numerical code with the library.

use nalgebra::DMatrix;
use num_complex::Complex64;

use realcalc::ComplexMatrix;

type CMat = DMatrix<Complex64>;

const I: Complex64 = Complex64::new(0.0, 1.0);

fn to_na(m: &ComplexMatrix) -> CMat {
    CMat::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)])
}

fn inner(a: &CMat, b: &CMat) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x.conj() * y).re).sum()
}

/// Structure constants `f[k][i][j]` from the Gram system of the real inner
/// product `Re tr(A†B)`.
pub fn structure_constants(mats: &[ComplexMatrix]) -> Vec<Vec<Vec<f64>>> {
    let d: Vec<CMat> = mats.iter().map(to_na).collect();
    let n = d.len();
    let gram = DMatrix::from_fn(n, n, |a, b| inner(&d[a], &d[b]));
    let chol = gram.cholesky().expect("basis is linearly independent");
    let mut f = vec![vec![vec![0.0; n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            let br = &d[i] * &d[j] - &d[j] * &d[i];
            let rhs = nalgebra::DVector::from_fn(n, |a, _| inner(&d[a], &br));
            let c = chol.solve(&rhs);
            for k in 0..n {
                f[k][i][j] = c[k];
            }
        }
    }
    f
}

/// `B_ij = tr(ad_i ad_j)` with `(ad_i)_kj = f^k_ij`, summed entry by entry.
pub fn killing(f: &[Vec<Vec<f64>>]) -> Vec<Vec<f64>> {
    let n = f.len();
    let mut b = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut s = 0.0;
            for k in 0..n {
                for l in 0..n {
                    s += f[k][i][l] * f[l][j][k];
                }
            }
            b[i][j] = s;
        }
    }
    b
}

/// Dimension of `{μ : Σ_k μ_k f^k_ij = 0 ∀ i, j}` by counting small singular values.
pub fn mu_nullity(f: &[Vec<Vec<f64>>]) -> usize {
    mu_nullspace(f).len()
}

/// Real null vectors of the stacked μ-system.
pub fn mu_nullspace(f: &[Vec<Vec<f64>>]) -> Vec<Vec<f64>> {
    let n = f.len();
    let a = DMatrix::from_fn(n * n, n, |row, k| f[k][row / n][row % n]);
    let svd = a.svd(false, true);
    let v_t = svd.v_t.expect("requested");
    let smax = svd.singular_values.max();
    let cutoff = 1e-8 * smax.max(1.0);
    (0..n)
        .filter(|&r| svd.singular_values[r] <= cutoff)
        .map(|r| v_t.row(r).iter().cloned().collect())
        .collect()
}

/// Orthonormal basis (columns) of the null space of `m`, by SVD.
fn nullspace(m: &CMat, cutoff: f64) -> CMat {
    let cols = m.ncols();
    let rows = m.nrows().max(cols);
    let padded = CMat::from_fn(rows, cols, |i, j| {
        if i < m.nrows() {
            m[(i, j)]
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("requested");
    let keep: Vec<usize> = (0..cols)
        .filter(|&r| svd.singular_values[r] <= cutoff)
        .collect();
    let mut out = CMat::zeros(cols, keep.len());
    for (c, &r) in keep.iter().enumerate() {
        for i in 0..cols {
            out[(i, c)] = v_t[(r, i)].conj();
        }
    }
    out
}

/// Distinct eigenvalues of the hermitian matrix `iD`, clustered at `gap`.
fn distinct_eigenvalues(d: &CMat, gap: f64) -> Vec<f64> {
    let h = d * I;
    let h = (&h + h.adjoint()) * Complex64::new(0.5, 0.0);
    let mut ev: Vec<f64> = h.symmetric_eigen().eigenvalues.iter().cloned().collect();
    ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut out: Vec<f64> = Vec::new();
    for e in ev {
        if out.last().is_none_or(|&last| e - last > gap) {
            out.push(e);
        }
    }
    out
}

/// Every nonzero intersection `E_1 ∩ … ∩ E_n` of eigenspaces, one
/// eigenspace per basis element, as orthonormal column bases of right
/// eigenvectors. Left eigenvectors are their conjugate transposes.
pub fn joint_eigenspaces(mats: &[ComplexMatrix]) -> Vec<CMat> {
    let d: Vec<CMat> = mats.iter().map(to_na).collect();
    let dim = d[0].nrows();
    let scale = d
        .iter()
        .map(|m| m.iter().fold(0.0f64, |a, z| a.max(z.norm())))
        .fold(0.0, f64::max);
    let cutoff = 1e-7 * scale.max(1.0);
    let mut spaces = vec![CMat::identity(dim, dim)];
    for di in &d {
        let mut next = Vec::new();
        for q in &spaces {
            for theta in distinct_eigenvalues(di, cutoff) {
                // iD w = θ w  ⇔  D w = −iθ w.
                let shifted = di - CMat::identity(dim, dim) * Complex64::new(0.0, -theta);
                let c = nullspace(&(shifted * q), cutoff);
                if c.ncols() > 0 {
                    next.push(q * c);
                }
            }
        }
        spaces = next;
    }
    spaces
}

/// `2h(∇_a e_b, e_c)` against the right side of Koszul's formula with
/// `h(u, v) = u†v`, `∂_a = [D_a, ·]`, `∇_a v = t_a v − v D_a`, `e_i = μ_i v0`;
/// returns the largest entry-wise defect.
pub fn koszul_defect(
    mats: &[ComplexMatrix],
    f: &[Vec<Vec<f64>>],
    v0: &CMat,
    mu: &[f64],
    t: &[Complex64],
) -> f64 {
    let d: Vec<CMat> = mats.iter().map(to_na).collect();
    let n = d.len();
    let e: Vec<CMat> = mu.iter().map(|&m| v0 * Complex64::new(m, 0.0)).collect();
    let h = |u: &CMat, v: &CMat| u.adjoint() * v;
    let der = |a: usize, m: &CMat| &d[a] * m - m * &d[a];
    let phi_br = |a: usize, b: usize| {
        let s: f64 = (0..n).map(|k| f[k][a][b] * mu[k]).sum();
        v0 * Complex64::new(s, 0.0)
    };
    let mut worst = 0.0f64;
    for a in 0..n {
        for b in 0..n {
            let nab = &e[b] * t[a] - &e[b] * &d[a];
            for c in 0..n {
                let lhs = h(&nab, &e[c]) * Complex64::new(2.0, 0.0);
                let rhs = der(a, &h(&e[b], &e[c])) + der(b, &h(&e[a], &e[c]))
                    - der(c, &h(&e[a], &e[b]))
                    - h(&e[a], &phi_br(b, c))
                    + h(&e[b], &phi_br(c, a))
                    + h(&e[c], &phi_br(a, b));
                worst = worst.max((lhs - rhs).iter().fold(0.0, |m, z| m.max(z.norm())));
            }
        }
    }
    worst
}

/// Existence of a Levi-Civita connection over `C^N`, decided by trying
/// every joint eigenspace as `v0` with a nonzero solution of the μ-system
/// and testing Koszul's formula directly.
pub fn levi_civita_exists(mats: &[ComplexMatrix]) -> bool {
    let f = structure_constants(mats);
    let Some(mu) = mu_nullspace(&f).into_iter().next() else {
        return false;
    };
    let scale = mats
        .iter()
        .map(ComplexMatrix::max_norm)
        .fold(0.0, f64::max)
        .max(1.0);
    joint_eigenspaces(mats).iter().any(|space| {
        let w = space.column(0);
        let v0 = CMat::from_fn(1, w.len(), |_, j| w[j].conj());
        let t: Vec<Complex64> = mats
            .iter()
            .map(|m| {
                let vd = &v0 * to_na(m);
                (vd * v0.adjoint())[(0, 0)]
            })
            .collect();
        koszul_defect(mats, &f, &v0, &mu, &t) <= 1e-8 * scale * scale
    })
}
