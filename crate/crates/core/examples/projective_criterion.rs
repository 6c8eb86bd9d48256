//! `Mat(2)` as a projection of `Mat(2)^3` with `X_1 = 1`, `X_2 = X_3 = 0`:
//! the Levi-Civita condition fails because `Λ¹₂₃ = −1`.

use realcalc::catalog;
use realcalc::liealg::structure_constants;
use realcalc::projcalc::{from_module_generators, lambda_tensor, lc_condition_check};
use realcalc::{ComplexMatrix, Tolerance};

fn main() -> realcalc::Result<()> {
    let tol = Tolerance::default();
    let derivs = catalog::su2();
    let f = structure_constants(&derivs, tol)?;
    let one = ComplexMatrix::identity(2);
    let zero = ComplexMatrix::zeros(2, 2);
    let x = [one.clone(), zero.clone(), zero.clone()];
    let data = from_module_generators(&x, &x, derivs, f, tol)?;
    let lambda = lambda_tensor(&data);
    println!("Λ¹₂₃ = {:?}", lambda.get(0, 1, 2));
    let check = lc_condition_check(&data, tol);
    let (k, i, j) = check.worst_index;
    println!(
        "holds: {}, max residual {} at ({}, {}, {})",
        check.holds,
        check.max_residual,
        k + 1,
        i + 1,
        j + 1
    );
    Ok(())
}
