//! Levi-Civita criterion for real metric calculi over projective modules.
//!
//! The module is `p(A^n)` for `A = Mat(N)` and a projection `p` with
//! coefficients `p^k_i`; generators are `e_i = ê_k p^k_i`. All grids are
//! indexed `[row][column]` as written in the formulas: `p[k][i] = p^k_i`,
//! `h[i][j] = h_ij`, `h_inv[k][l] = h^{kl}`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::liealg::{LieBasis, StructureConstants};
use crate::matlin::{bracket, ComplexMatrix, RowVector, Tolerance};

/// `n × n` grid of `N × N` matrices.
pub type Grid = Vec<Vec<ComplexMatrix>>;

/// `n × n × n` array of matrices indexed `[k][i][j]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Tensor3 {
    values: Vec<Vec<Vec<ComplexMatrix>>>,
}

/// `Λ^k_ij`.
pub type LambdaTensor = Tensor3;

impl Tensor3 {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize, usize) -> ComplexMatrix) -> Self {
        Tensor3 {
            values: (0..n)
                .map(|k| {
                    (0..n)
                        .map(|i| (0..n).map(|j| f(k, i, j)).collect())
                        .collect()
                })
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn get(&self, k: usize, i: usize, j: usize) -> &ComplexMatrix {
        &self.values[k][i][j]
    }

    pub fn get_mut(&mut self, k: usize, i: usize, j: usize) -> &mut ComplexMatrix {
        &mut self.values[k][i][j]
    }

    pub fn max_norm(&self) -> f64 {
        self.values
            .iter()
            .flatten()
            .flatten()
            .map(ComplexMatrix::max_norm)
            .fold(0.0, f64::max)
    }
}

/// Derivations together with projection and metric coefficients.
#[derive(Debug, Clone)]
pub struct ProjectiveCalculusData {
    derivs: LieBasis,
    f: StructureConstants,
    p: Grid,
    h: Grid,
    h_inv: Grid,
}

fn grid_max(g: &Grid) -> f64 {
    g.iter()
        .flatten()
        .map(ComplexMatrix::max_norm)
        .fold(0.0, f64::max)
}

fn sum_into(acc: &mut ComplexMatrix, term: &ComplexMatrix) {
    *acc = &*acc + term;
}

impl ProjectiveCalculusData {
    /// Validate and assemble the data.
    ///
    /// Checked identities: `Σ_l p^k_l p^l_j = p^k_j`, `h_ij = h_ji†`,
    /// `h_ij = Σ_k h_ik p^k_j`, `Σ_{k,l} p^q_k h^{kl} h_li = p^q_i`,
    /// `Σ_m p^k_m h^{ml} = h^{kl}`, `(h^{ij})† = h^{ji}`, and
    /// `[D_i, D_j] = Σ_k f^k_ij D_k`.
    pub fn new(
        derivs: LieBasis,
        f: StructureConstants,
        p: Grid,
        h: Grid,
        h_inv: Grid,
        tol: Tolerance,
    ) -> Result<Self> {
        let n = derivs.len();
        let dim = derivs.ambient_dim();
        if f.dim() != n {
            return Err(Error::DimensionMismatch(format!(
                "structure constants of dim {}, expected {n}",
                f.dim()
            )));
        }
        for (name, g) in [("p", &p), ("h", &h), ("h_inv", &h_inv)] {
            if g.len() != n || g.iter().any(|row| row.len() != n) {
                return Err(Error::DimensionMismatch(format!(
                    "{name} must be a {n}x{n} grid"
                )));
            }
            if g.iter()
                .flatten()
                .any(|m| m.rows() != dim || m.cols() != dim)
            {
                return Err(Error::DimensionMismatch(format!(
                    "every entry of {name} must be {dim}x{dim}"
                )));
            }
        }
        let data = ProjectiveCalculusData {
            derivs,
            f,
            p,
            h,
            h_inv,
        };
        data.validate(tol)?;
        Ok(data)
    }

    fn validate(&self, tol: Tolerance) -> Result<()> {
        let n = self.n();
        let (pm, hm, him) = (
            grid_max(&self.p).max(1.0),
            grid_max(&self.h).max(1.0),
            grid_max(&self.h_inv).max(1.0),
        );
        let nf = n as f64;
        let check = |identity: &'static str, residual: f64, scale: f64| {
            if residual > tol.threshold(scale) {
                Err(Error::InvariantViolation { identity, residual })
            } else {
                Ok(())
            }
        };
        let worst = |f: &dyn Fn(usize, usize) -> f64| {
            (0..n)
                .flat_map(|a| (0..n).map(move |b| (a, b)))
                .map(|(a, b)| f(a, b))
                .fold(0.0, f64::max)
        };

        let idem = worst(&|k, j| {
            let mut s = self.p[k][j].scale_real(-1.0);
            (0..n).for_each(|l| sum_into(&mut s, &(&self.p[k][l] * &self.p[l][j])));
            s.max_norm()
        });
        check("idempotence of p", idem, nf * pm * pm)?;

        let herm = worst(&|i, j| (&self.h[i][j] - &self.h[j][i].adjoint()).max_norm());
        check("hermiticity h_ij = h_ji†", herm, hm)?;

        let gen = worst(&|i, j| {
            let mut s = self.h[i][j].scale_real(-1.0);
            (0..n).for_each(|k| sum_into(&mut s, &(&self.h[i][k] * &self.p[k][j])));
            s.max_norm()
        });
        check("metric on generators h_ij = h_ik p^k_j", gen, nf * hm * pm)?;

        let inv = worst(&|q, i| {
            let mut s = self.p[q][i].scale_real(-1.0);
            for k in 0..n {
                for l in 0..n {
                    sum_into(
                        &mut s,
                        &(&(&self.p[q][k] * &self.h_inv[k][l]) * &self.h[l][i]),
                    );
                }
            }
            s.max_norm()
        });
        check("inverse metric relation", inv, nf * nf * pm * him * hm)?;

        let compat = worst(&|k, l| {
            let mut s = self.h_inv[k][l].scale_real(-1.0);
            (0..n).for_each(|m| sum_into(&mut s, &(&self.p[k][m] * &self.h_inv[m][l])));
            s.max_norm()
        });
        check("projection compatibility of h_inv", compat, nf * pm * him)?;

        let conj = worst(&|i, j| (&self.h_inv[i][j] - &self.h_inv[j][i].adjoint()).max_norm());
        check("conjugate symmetry of h_inv", conj, him)?;

        let dmax = self.derivs.max_norm();
        let consistent = worst(&|i, j| {
            let mut s = bracket(&self.derivs[i], &self.derivs[j]).expect("square");
            (0..n).for_each(|k| s = s.add_scaled((-self.f.get(k, i, j)).into(), &self.derivs[k]));
            s.max_norm()
        });
        check(
            "structure constants of the derivations",
            consistent,
            dmax * dmax.max(self.f.max_abs() * nf),
        )
    }

    pub fn n(&self) -> usize {
        self.derivs.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.derivs.ambient_dim()
    }

    pub fn derivs(&self) -> &LieBasis {
        &self.derivs
    }

    pub fn structure_constants(&self) -> &StructureConstants {
        &self.f
    }

    pub fn p(&self) -> &Grid {
        &self.p
    }

    pub fn h(&self) -> &Grid {
        &self.h
    }

    pub fn h_inv(&self) -> &Grid {
        &self.h_inv
    }

    fn d(&self, i: usize, a: &ComplexMatrix) -> ComplexMatrix {
        bracket(&self.derivs[i], a).expect("validated shapes")
    }
}

/// `Λ^k_ij = ½ Σ_l h^{kl}(∂_i h_jl + ∂_j h_il − ∂_l h_ij − Σ_q h_jq f^q_il − Σ_q h_iq f^q_jl + Σ_q h_lq f^q_ij)`.
pub fn lambda_tensor(data: &ProjectiveCalculusData) -> LambdaTensor {
    let n = data.n();
    let dim = data.ambient_dim();
    let f = &data.f;
    let h = &data.h;
    let f_term = |a: usize, b: usize, c: usize| {
        // Σ_q h_aq f^q_bc
        let mut s = ComplexMatrix::zeros(dim, dim);
        for q in 0..n {
            let fq = f.get(q, b, c);
            if fq != 0.0 {
                s = s.add_scaled(fq.into(), &h[a][q]);
            }
        }
        s
    };
    // inner[i][j][l]
    let inner: Vec<Vec<Vec<ComplexMatrix>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (0..n)
                        .map(|l| {
                            let t = &(&data.d(i, &h[j][l]) + &data.d(j, &h[i][l]))
                                - &data.d(l, &h[i][j]);
                            let t = &(&t - &f_term(j, i, l)) - &f_term(i, j, l);
                            (&t + &f_term(l, i, j)).scale_real(0.5)
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    Tensor3::from_fn(n, |k, i, j| {
        let mut s = ComplexMatrix::zeros(dim, dim);
        (0..n).for_each(|l| sum_into(&mut s, &(&data.h_inv[k][l] * &inner[i][j][l])));
        s
    })
}

/// Outcome of checking `p^k_l ∂_i(p^l_j) = Λ^k_il(δ^l_j 𝟙 − p^l_j)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LcCheck {
    pub holds: bool,
    pub max_residual: f64,
    /// First `(k, i, j)` (0-based, lexicographic) attaining `max_residual`.
    pub worst_index: (usize, usize, usize),
    /// Max-norm of each residual `R^k_ij`, indexed `[k][i][j]`.
    pub residuals: Vec<Vec<Vec<f64>>>,
}

/// Residuals `R^k_ij = Σ_l p^k_l [D_i, p^l_j] − Σ_l Λ^k_il(δ_lj 𝟙 − p^l_j)`.
pub fn lc_condition_check(data: &ProjectiveCalculusData, tol: Tolerance) -> LcCheck {
    let lambda = lambda_tensor(data);
    lc_check_with(data, &lambda, tol)
}

fn lc_check_with(data: &ProjectiveCalculusData, lambda: &LambdaTensor, tol: Tolerance) -> LcCheck {
    let n = data.n();
    let dim = data.ambient_dim();
    let id = ComplexMatrix::identity(dim);
    let dp: Vec<Vec<Vec<ComplexMatrix>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|l| (0..n).map(|j| data.d(i, &data.p[l][j])).collect())
                .collect()
        })
        .collect();
    let mut residuals = vec![vec![vec![0.0; n]; n]; n];
    let mut max_residual = 0.0;
    let mut worst_index = (0, 0, 0);
    let mut scale = lambda.max_norm().max(grid_max(&data.p));
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let mut r = ComplexMatrix::zeros(dim, dim);
                for l in 0..n {
                    sum_into(&mut r, &(&data.p[k][l] * &dp[i][l][j]));
                    let comp = if l == j {
                        &id - &data.p[l][j]
                    } else {
                        data.p[l][j].scale_real(-1.0)
                    };
                    r = &r - &(lambda.get(k, i, l) * &comp);
                    scale = scale.max(dp[i][l][j].max_norm());
                }
                let norm = r.max_norm();
                residuals[k][i][j] = norm;
                if norm > max_residual {
                    max_residual = norm;
                    worst_index = (k, i, j);
                }
            }
        }
    }
    LcCheck {
        holds: max_residual <= tol.threshold(scale),
        max_residual,
        worst_index,
        residuals,
    }
}

/// Levi-Civita coefficients `C^l_ij` with `∇_i e_j = e_l C^l_ij`:
/// `C^l_ij = Σ_k Γ̃^l_ik p^k_j + [D_i, p^l_j]` where `Γ̃^l_ik = Σ_m Λ^l_im p^m_k`.
///
/// Fails with [`Error::ConditionFails`] if the Levi-Civita condition does not hold.
pub fn lc_connection_coefficients(
    data: &ProjectiveCalculusData,
    tol: Tolerance,
) -> Result<Tensor3> {
    let lambda = lambda_tensor(data);
    let check = lc_check_with(data, &lambda, tol);
    if !check.holds {
        return Err(Error::ConditionFails {
            residual: check.max_residual,
        });
    }
    let n = data.n();
    let dim = data.ambient_dim();
    let gamma = Tensor3::from_fn(n, |l, i, k| {
        let mut s = ComplexMatrix::zeros(dim, dim);
        (0..n).for_each(|m| sum_into(&mut s, &(lambda.get(l, i, m) * &data.p[m][k])));
        s
    });
    Ok(Tensor3::from_fn(n, |l, i, j| {
        let mut s = data.d(i, &data.p[l][j]);
        (0..n).for_each(|k| sum_into(&mut s, &(gamma.get(l, i, k) * &data.p[k][j])));
        s
    }))
}

/// Coefficient form of Koszul's formula:
/// `max_{m,i,j} ‖Σ_l h_ml C^l_ij − Σ_k h_mk Λ^k_ij‖_max`.
pub fn koszul_verify_projective(data: &ProjectiveCalculusData, coeffs: &Tensor3) -> Result<f64> {
    let n = data.n();
    if coeffs.dim() != n {
        return Err(Error::DimensionMismatch(format!(
            "coefficients of dim {}, expected {n}",
            coeffs.dim()
        )));
    }
    let lambda = lambda_tensor(data);
    let dim = data.ambient_dim();
    let mut worst = 0.0f64;
    for m in 0..n {
        for i in 0..n {
            for j in 0..n {
                let mut s = ComplexMatrix::zeros(dim, dim);
                for l in 0..n {
                    sum_into(&mut s, &(&data.h[m][l] * coeffs.get(l, i, j)));
                    s = &s - &(&data.h[m][l] * lambda.get(l, i, j));
                }
                worst = worst.max(s.max_norm());
            }
        }
    }
    Ok(worst)
}

/// Data from generators `X_i` of the module and a right inverse `Y^k`:
/// `p^k_i = Y^k X_i`, `h_ij = X_i† X_j`, `h^{ij} = Y^i (Y^j)†`.
///
/// Each `X_i` is `rN × N` (an element of `Mat(N)^r` viewed as a right
/// `Mat(N)`-module) and each `Y^k` is `N × rN`. The generating condition is
/// `Σ_k X_k Y^k X_i = X_i`, which is `Σ_k X_k Y^k = 𝟙` whenever the `X_i`
/// span the whole module.
pub fn from_module_generators(
    x: &[ComplexMatrix],
    y: &[ComplexMatrix],
    derivs: LieBasis,
    f: StructureConstants,
    tol: Tolerance,
) -> Result<ProjectiveCalculusData> {
    let n = derivs.len();
    let dim = derivs.ambient_dim();
    if x.len() != n || y.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "expected {n} generators X and {n} dual generators Y"
        )));
    }
    let tall = x[0].rows();
    if tall == 0 || !tall.is_multiple_of(dim) {
        return Err(Error::DimensionMismatch(format!(
            "generators must have a multiple of {dim} rows"
        )));
    }
    if x.iter().any(|m| m.rows() != tall || m.cols() != dim)
        || y.iter().any(|m| m.rows() != dim || m.cols() != tall)
    {
        return Err(Error::DimensionMismatch(format!(
            "X must be {tall}x{dim} and Y must be {dim}x{tall}"
        )));
    }
    let mut xy = ComplexMatrix::zeros(tall, tall);
    (0..n).for_each(|k| sum_into(&mut xy, &(&x[k] * &y[k])));
    let scale = x
        .iter()
        .chain(y)
        .map(ComplexMatrix::max_norm)
        .fold(1.0, f64::max);
    let residual = x
        .iter()
        .map(|xi| (&(&xy * xi) - xi).max_norm())
        .fold(0.0, f64::max);
    if residual > tol.threshold(scale.powi(3) * (n * tall) as f64) {
        return Err(Error::NotGenerating { residual });
    }
    let grid = |g: &dyn Fn(usize, usize) -> ComplexMatrix| -> Grid {
        (0..n).map(|a| (0..n).map(|b| g(a, b)).collect()).collect()
    };
    let p = grid(&|k, i| &y[k] * &x[i]);
    let h = grid(&|i, j| &x[i].adjoint() * &x[j]);
    let h_inv = grid(&|i, j| &y[i] * &y[j].adjoint());
    ProjectiveCalculusData::new(derivs, f, p, h, h_inv, tol)
}

/// The simple module `C^N` with anchor `φ(D_i) = μ_i v̂₀` and metric
/// `h(u, v) = x·u†v`, written as the rank-one projection
/// `p^k_i = c_k μ_i P`, `h_ij = x μ_i μ_j P`, `h^{kl} = (c_k c_l / x) P`
/// where `P = v̂₀†v̂₀` and `c = μ / ‖μ‖²`.
pub fn from_simple_module(
    derivs: LieBasis,
    f: StructureConstants,
    v0: &RowVector,
    mu: &[f64],
    metric_scale: f64,
    tol: Tolerance,
) -> Result<ProjectiveCalculusData> {
    let n = derivs.len();
    if mu.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "mu has {} entries, expected {n}",
            mu.len()
        )));
    }
    let norm2: f64 = mu.iter().map(|m| m * m).sum();
    if norm2 == 0.0 || metric_scale == 0.0 {
        return Err(Error::InvalidInput(
            "mu and the metric scale must be nonzero".into(),
        ));
    }
    let v0 = v0
        .normalized()
        .ok_or_else(|| Error::InvalidInput("v0 must be nonzero".into()))?;
    let proj = RowVector::outer_adjoint(&v0, &v0);
    let c: Vec<f64> = mu.iter().map(|m| m / norm2).collect();
    let grid = |g: &dyn Fn(usize, usize) -> f64| -> Grid {
        (0..n)
            .map(|a| (0..n).map(|b| proj.scale_real(g(a, b))).collect())
            .collect()
    };
    let p = grid(&|k, i| c[k] * mu[i]);
    let h = grid(&|i, j| metric_scale * mu[i] * mu[j]);
    let h_inv = grid(&|k, l| c[k] * c[l] / metric_scale);
    ProjectiveCalculusData::new(derivs, f, p, h, h_inv, tol)
}

#[cfg(test)]
mod tests {
    use num_complex::Complex64;

    use super::*;
    use crate::catalog;
    use crate::liealg::structure_constants;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn su2_parts() -> (LieBasis, StructureConstants) {
        let b = catalog::su2();
        let f = structure_constants(&b, tol()).unwrap();
        (b, f)
    }

    fn zero_grid(n: usize, dim: usize) -> Grid {
        vec![vec![ComplexMatrix::zeros(dim, dim); n]; n]
    }

    fn trivial_p(n: usize, dim: usize) -> Grid {
        let mut g = zero_grid(n, dim);
        (0..n).for_each(|k| g[k][k] = ComplexMatrix::identity(dim));
        g
    }

    fn rank1_example() -> ProjectiveCalculusData {
        let (b, f) = su2_parts();
        let z = ComplexMatrix::zeros(2, 2);
        let one = ComplexMatrix::identity(2);
        let x = [one.clone(), z.clone(), z.clone()];
        from_module_generators(&x, &x, b, f, tol()).unwrap()
    }

    #[test]
    fn rank1_example_lambda_and_failure() {
        let data = rank1_example();
        assert_eq!(data.p()[0][0], ComplexMatrix::identity(2));
        let lambda = lambda_tensor(&data);
        assert!((lambda.get(0, 1, 2) + &ComplexMatrix::identity(2)).max_norm() < 1e-12);
        assert!((lambda.get(0, 2, 1) - &ComplexMatrix::identity(2)).max_norm() < 1e-12);
        let check = lc_condition_check(&data, tol());
        assert!(!check.holds);
        assert_eq!(check.worst_index, (0, 1, 2));
        assert!((check.max_residual - 1.0).abs() < 1e-12);
        assert!(matches!(
            lc_connection_coefficients(&data, tol()),
            Err(Error::ConditionFails { .. })
        ));
    }

    #[test]
    fn not_generating_is_rejected() {
        let (b, f) = su2_parts();
        let z = ComplexMatrix::zeros(2, 2);
        let one = ComplexMatrix::identity(2);
        let x = [one.clone(), z.clone(), z.clone()];
        let y = [z.clone(), one.clone(), z.clone()];
        assert!(matches!(
            from_module_generators(&x, &y, b, f, tol()),
            Err(Error::NotGenerating { .. })
        ));
    }

    #[test]
    fn free_module_generators_give_trivial_projection() {
        // Mat(2)^3 as 6x2 columns; X_i = Y^i† = i-th block unit.
        let (b, f) = su2_parts();
        let x: Vec<ComplexMatrix> = (0..3)
            .map(|i| {
                let mut m = ComplexMatrix::zeros(6, 2);
                m[(2 * i, 0)] = 1.0.into();
                m[(2 * i + 1, 1)] = 1.0.into();
                m
            })
            .collect();
        let y: Vec<ComplexMatrix> = x.iter().map(ComplexMatrix::adjoint).collect();
        let data = from_module_generators(&x, &y, b, f, tol()).unwrap();
        assert_eq!(data.p(), &trivial_p(3, 2));
        let check = lc_condition_check(&data, tol());
        assert!(check.holds && check.max_residual == 0.0);
        let c = lc_connection_coefficients(&data, tol()).unwrap();
        let lambda = lambda_tensor(&data);
        assert_eq!(&c, &lambda);
        assert!(koszul_verify_projective(&data, &c).unwrap() < 1e-12);
    }

    #[test]
    fn constant_metric_abelian_gives_zero_lambda() {
        let b = LieBasis::new(catalog::cartan(3), tol()).unwrap();
        let f = StructureConstants::zeros(2);
        let h11 = ComplexMatrix::diagonal(&[2.0.into(), 1.0.into(), 3.0.into()]);
        let h11_inv = ComplexMatrix::diagonal(&[0.5.into(), 1.0.into(), (1.0 / 3.0).into()]);
        let mut p = zero_grid(2, 3);
        p[0][0] = ComplexMatrix::identity(3);
        let mut h = zero_grid(2, 3);
        h[0][0] = h11;
        let mut h_inv = zero_grid(2, 3);
        h_inv[0][0] = h11_inv;
        let data = ProjectiveCalculusData::new(b, f, p, h, h_inv, tol()).unwrap();
        assert_eq!(lambda_tensor(&data).max_norm(), 0.0);
        assert!(lc_condition_check(&data, tol()).holds);
        let c = lc_connection_coefficients(&data, tol()).unwrap();
        assert_eq!(c.max_norm(), 0.0);
        assert_eq!(koszul_verify_projective(&data, &c).unwrap(), 0.0);
    }

    #[test]
    fn identity_metric_zero_constants() {
        let b = LieBasis::new(catalog::cartan(3), tol()).unwrap();
        let data = ProjectiveCalculusData::new(
            b,
            StructureConstants::zeros(2),
            trivial_p(2, 3),
            trivial_p(2, 3),
            trivial_p(2, 3),
            tol(),
        )
        .unwrap();
        assert_eq!(lambda_tensor(&data).max_norm(), 0.0);
    }

    #[test]
    fn invariant_violations_are_named() {
        let b = LieBasis::new(catalog::cartan(3), tol()).unwrap();
        let f = StructureConstants::zeros(2);
        let mut p = trivial_p(2, 3);
        p[0][0] = ComplexMatrix::identity(3).scale_real(2.0);
        let err = ProjectiveCalculusData::new(
            b.clone(),
            f.clone(),
            p,
            trivial_p(2, 3),
            trivial_p(2, 3),
            tol(),
        );
        assert!(matches!(
            err,
            Err(Error::InvariantViolation {
                identity: "idempotence of p",
                ..
            })
        ));

        let mut h = trivial_p(2, 3);
        h[0][1] = ComplexMatrix::identity(3).scale(Complex64::new(0.0, 1.0));
        let err = ProjectiveCalculusData::new(
            b.clone(),
            f.clone(),
            trivial_p(2, 3),
            h,
            trivial_p(2, 3),
            tol(),
        );
        assert!(matches!(
            err,
            Err(Error::InvariantViolation {
                identity: "hermiticity h_ij = h_ji†",
                ..
            })
        ));

        let h_inv = trivial_p(2, 3)
            .into_iter()
            .map(|r| r.into_iter().map(|m| m.scale_real(2.0)).collect())
            .collect();
        let err = ProjectiveCalculusData::new(
            b.clone(),
            f,
            trivial_p(2, 3),
            trivial_p(2, 3),
            h_inv,
            tol(),
        );
        assert!(matches!(
            err,
            Err(Error::InvariantViolation {
                identity: "inverse metric relation",
                ..
            })
        ));

        let mut bad_f = vec![vec![vec![0.0; 2]; 2]; 2];
        bad_f[0][0][1] = 1.0;
        bad_f[0][1][0] = -1.0;
        let bad_f = StructureConstants::from_tensor(&bad_f, tol()).unwrap();
        let err = ProjectiveCalculusData::new(
            b,
            bad_f,
            trivial_p(2, 3),
            trivial_p(2, 3),
            trivial_p(2, 3),
            tol(),
        );
        assert!(matches!(
            err,
            Err(Error::InvariantViolation {
                identity: "structure constants of the derivations",
                ..
            })
        ));
    }

    #[test]
    fn simple_module_matches_existence_on_examples() {
        let gc = catalog::su4_gc();
        let fgc = structure_constants(&gc, tol()).unwrap();
        let v0 = RowVector::basis(4, 0);
        let data = from_simple_module(gc, fgc, &v0, &[1.0, 0.0, 0.0, 0.0], 2.0, tol()).unwrap();
        let check = lc_condition_check(&data, tol());
        assert!(check.holds, "{}", check.max_residual);
        let c = lc_connection_coefficients(&data, tol()).unwrap();
        assert!(koszul_verify_projective(&data, &c).unwrap() < 1e-9);

        let (b, f) = su2_parts();
        let data = from_simple_module(b, f, &RowVector::basis(2, 0), &[1.0, 0.0, 0.0], 1.0, tol())
            .unwrap();
        assert!(!lc_condition_check(&data, tol()).holds);
    }
}
