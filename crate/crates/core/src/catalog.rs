//! Ready-made bases of matrix Lie algebras.

use num_complex::Complex64;

use crate::liealg::LieBasis;
use crate::matlin::{ComplexMatrix, Tolerance};

/// The antihermitian su(2) basis `[[0, i], [i, 0]]`, `[[0, 1], [-1, 0]]`, `diag(i, -i)`.
pub fn sigma() -> [ComplexMatrix; 3] {
    [
        ComplexMatrix::from_pairs(&[[(0., 0.), (0., 1.)], [(0., 1.), (0., 0.)]]),
        ComplexMatrix::from_real(&[[0., 1.], [-1., 0.]]),
        ComplexMatrix::from_pairs(&[[(0., 1.), (0., 0.)], [(0., 0.), (0., -1.)]]),
    ]
}

/// Generalized Gell-Mann basis of `su(n)`, multiplied by `i`.
///
/// For each pair `j < k` the symmetric element `i(E_jk + E_kj)` comes first,
/// then `E_jk − E_kj`; the `n − 1` diagonal elements follow. For `n = 2`
/// this reproduces [`sigma`].
pub fn su(n: usize) -> Vec<ComplexMatrix> {
    let mut out = Vec::with_capacity(n * n - 1);
    for j in 0..n {
        for k in (j + 1)..n {
            let mut s = ComplexMatrix::zeros(n, n);
            s[(j, k)] = Complex64::new(0.0, 1.0);
            s[(k, j)] = Complex64::new(0.0, 1.0);
            out.push(s);
            let mut a = ComplexMatrix::zeros(n, n);
            a[(j, k)] = Complex64::new(1.0, 0.0);
            a[(k, j)] = Complex64::new(-1.0, 0.0);
            out.push(a);
        }
    }
    out.extend(cartan(n));
    out
}

/// Diagonal Cartan subalgebra of `su(n)`:
/// `i·sqrt(2/(l(l+1)))·diag(1, …, 1, −l, 0, …)` for `l = 1, …, n − 1`.
pub fn cartan(n: usize) -> Vec<ComplexMatrix> {
    (1..n)
        .map(|l| {
            let c = (2.0 / (l * (l + 1)) as f64).sqrt();
            let diag: Vec<Complex64> = (0..n)
                .map(|d| match d {
                    d if d < l => Complex64::new(0.0, c),
                    d if d == l => Complex64::new(0.0, -(l as f64) * c),
                    _ => Complex64::new(0.0, 0.0),
                })
                .collect();
            ComplexMatrix::diagonal(&diag)
        })
        .collect()
}

/// Place a square block into an `n × n` zero matrix at `(offset, offset)`.
pub fn embed(block: &ComplexMatrix, n: usize, offset: usize) -> ComplexMatrix {
    assert!(offset + block.rows() <= n, "block does not fit");
    let mut out = ComplexMatrix::zeros(n, n);
    for i in 0..block.rows() {
        for j in 0..block.cols() {
            out[(offset + i, offset + j)] = block[(i, j)];
        }
    }
    out
}

/// Block-diagonal `a ⊕ b`.
pub fn direct_sum(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let n = a.rows() + b.rows();
    &embed(a, n, 0) + &embed(b, n, a.rows())
}

fn basis(mats: Vec<ComplexMatrix>) -> LieBasis {
    LieBasis::new(mats, Tolerance::default()).expect("catalog bases are valid")
}

/// `su(2)` in the basis of [`sigma`].
pub fn su2() -> LieBasis {
    basis(sigma().to_vec())
}

/// `diag(i, i, −i, −i)`.
pub fn su4_d0() -> ComplexMatrix {
    let i = Complex64::new(0.0, 1.0);
    ComplexMatrix::diagonal(&[i, i, -i, -i])
}

/// `σ_j ⊕ σ_j`.
pub fn su4_d(j: usize) -> ComplexMatrix {
    let s = &sigma()[j];
    direct_sum(s, s)
}

/// `0 ⊕ σ_j`.
pub fn su4_d_prime(j: usize) -> ComplexMatrix {
    embed(&sigma()[j], 4, 2)
}

/// `⟨0 ⊕ σ_j⟩ ≅ su(2)` inside `su(4)`.
pub fn su4_ga() -> LieBasis {
    basis((0..3).map(su4_d_prime).collect())
}

/// `⟨D_0, σ_j ⊕ σ_j⟩ ≅ u(1) ⊕ su(2)` inside `su(4)`.
pub fn su4_gb() -> LieBasis {
    basis(std::iter::once(su4_d0()).chain((0..3).map(su4_d)).collect())
}

/// `⟨D_0, 0 ⊕ σ_j⟩ ≅ u(1) ⊕ su(2)` inside `su(4)`.
pub fn su4_gc() -> LieBasis {
    basis(
        std::iter::once(su4_d0())
            .chain((0..3).map(su4_d_prime))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::structure_constants;

    #[test]
    fn su_n_has_right_dimension_and_closes() {
        for n in 2..=4 {
            let b = basis(su(n));
            assert_eq!(b.len(), n * n - 1);
            assert!(structure_constants(&b, Tolerance::default()).is_ok());
        }
    }

    #[test]
    fn su2_matches_sigma() {
        assert_eq!(su(2), sigma().to_vec());
    }

    #[test]
    fn cartan_is_abelian() {
        let f = structure_constants(&basis(cartan(4)), Tolerance::default()).unwrap();
        assert!(f.max_abs() < 1e-15);
    }
}
