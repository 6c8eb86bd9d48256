//! The Levi-Civita connection of `g^c` is unique: shifting any `λ_j` breaks
//! the real connection calculus condition or creates torsion.

use realcalc::catalog;
use realcalc::cncalc::{
    decide_existence, is_levi_civita, rcc_residual, torsion, torsion_norm, verify_uniqueness,
    Connection, MetricPreCalculus,
};
use realcalc::liealg::structure_constants;
use realcalc::Tolerance;

fn main() -> realcalc::Result<()> {
    let tol = Tolerance::default();
    let pre = MetricPreCalculus::new(catalog::su4_gc(), 1.0)?;
    let f = structure_constants(pre.basis(), tol)?;
    let w = decide_existence(&pre, tol)?
        .witness
        .expect("g^c admits a connection");
    println!("witness lambda = {:?}", w.connection.lambdas());
    for j in 0..w.connection.len() {
        let mut l = w.connection.lambdas().to_vec();
        l[j] += 1e-3;
        let other = Connection::new(l)?;
        println!(
            "shift lambda_{}: rcc residual {:.1e}, torsion {:.1e}, Levi-Civita {}, unique {}",
            j + 1,
            rcc_residual(&other, pre.basis(), &w.anchor)?,
            torsion_norm(&torsion(&pre, &other, &f, &w.anchor)?),
            is_levi_civita(&pre, &f, &w.anchor, &other, tol)?,
            verify_uniqueness(&pre, &f, &w.anchor, &w.connection, &other, tol)?,
        );
    }
    Ok(())
}
