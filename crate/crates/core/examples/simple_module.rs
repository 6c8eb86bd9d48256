//! `C^N` written as a rank-one projective module: the projective criterion
//! agrees with the direct construction.

use realcalc::catalog;
use realcalc::cncalc::{decide_existence, MetricPreCalculus};
use realcalc::liealg::structure_constants;
use realcalc::projcalc::{from_simple_module, lc_condition_check};
use realcalc::{RowVector, Tolerance};

fn main() -> realcalc::Result<()> {
    let tol = Tolerance::default();
    let gc = catalog::su4_gc();
    let w = decide_existence(&MetricPreCalculus::new(gc.clone(), 1.0)?, tol)?
        .witness
        .expect("g^c has a witness");
    let f = structure_constants(&gc, tol)?;
    let data = from_simple_module(gc, f, w.anchor.v0(), w.anchor.mu(), 1.0, tol)?;
    let check = lc_condition_check(&data, tol);
    println!(
        "g^c with its witness anchor: holds {}, residual {:.1e}",
        check.holds, check.max_residual
    );

    let su2 = catalog::su2();
    let f = structure_constants(&su2, tol)?;
    let data = from_simple_module(su2, f, &RowVector::basis(2, 0), &[1.0, 0.0, 0.0], 1.0, tol)?;
    let check = lc_condition_check(&data, tol);
    println!(
        "su(2) with mu = (1, 0, 0): holds {}, residual {:.1e}",
        check.holds, check.max_residual
    );
    Ok(())
}
