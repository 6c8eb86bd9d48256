//! Free modules: the trivial projection always satisfies the Levi-Civita
//! condition, and for abelian derivations with a constant metric on a
//! direct summand the connection vanishes.

use num_complex::Complex64;
use realcalc::catalog;
use realcalc::liealg::structure_constants;
use realcalc::projcalc::{
    koszul_verify_projective, lc_connection_coefficients, Grid, ProjectiveCalculusData,
};
use realcalc::{ComplexMatrix, LieBasis, Tolerance};

fn diag(v: &[f64]) -> ComplexMatrix {
    ComplexMatrix::diagonal(
        &v.iter()
            .map(|&x| Complex64::new(x, 0.0))
            .collect::<Vec<_>>(),
    )
}

fn grid(n: usize, entry: impl Fn(usize, usize) -> ComplexMatrix) -> Grid {
    (0..n)
        .map(|a| (0..n).map(|b| entry(a, b)).collect())
        .collect()
}

fn main() -> realcalc::Result<()> {
    let tol = Tolerance::default();

    let derivs = catalog::su2();
    let f = structure_constants(&derivs, tol)?;
    let h_diag = [[2.0, 1.0], [1.0, 4.0], [2.0, 0.5]];
    let zero = ComplexMatrix::zeros(2, 2);
    let data = ProjectiveCalculusData::new(
        derivs,
        f,
        grid(3, |a, b| {
            if a == b {
                ComplexMatrix::identity(2)
            } else {
                zero.clone()
            }
        }),
        grid(3, |a, b| {
            if a == b {
                diag(&h_diag[a])
            } else {
                zero.clone()
            }
        }),
        grid(3, |a, b| {
            if a == b {
                diag(&h_diag[a].map(|x| 1.0 / x))
            } else {
                zero.clone()
            }
        }),
        tol,
    )?;
    let c = lc_connection_coefficients(&data, tol)?;
    println!(
        "su(2), trivial projection: max |C| = {:.3}, Koszul residual {:.1e}",
        c.max_norm(),
        koszul_verify_projective(&data, &c)?
    );

    let derivs = LieBasis::new(catalog::cartan(3), tol)?;
    let f = structure_constants(&derivs, tol)?;
    let zero = ComplexMatrix::zeros(3, 3);
    let data = ProjectiveCalculusData::new(
        derivs,
        f,
        grid(2, |a, b| {
            if a == 0 && b == 0 {
                ComplexMatrix::identity(3)
            } else {
                zero.clone()
            }
        }),
        grid(2, |a, b| {
            if a == 0 && b == 0 {
                diag(&[2.0, 1.0, 4.0])
            } else {
                zero.clone()
            }
        }),
        grid(2, |a, b| {
            if a == 0 && b == 0 {
                diag(&[0.5, 1.0, 0.25])
            } else {
                zero.clone()
            }
        }),
        tol,
    )?;
    let c = lc_connection_coefficients(&data, tol)?;
    println!("abelian, rank-one summand: max |C| = {:.1e}", c.max_norm());
    Ok(())
}
