//! `su(2)` has no metric anchor map with vanishing torsion: the μ-system
//! `Σ_k μ_k f^k_ij = 0` only has the zero solution.

use realcalc::catalog;
use realcalc::cncalc::{decide_existence, MetricPreCalculus};
use realcalc::liealg::{mu_obstruction_space, mu_obstruction_system, structure_constants};
use realcalc::Tolerance;

fn main() -> realcalc::Result<()> {
    let tol = Tolerance::default();
    let basis = catalog::su2();
    let f = structure_constants(&basis, tol)?;
    let system = mu_obstruction_system(&f);
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let terms: Vec<String> = system
            .row(i * 3 + j)
            .iter()
            .enumerate()
            .map(|(k, c)| format!("{c:+.1}·μ{}", k + 1))
            .collect();
        println!("(i, j) = ({}, {}): {} = 0", i + 1, j + 1, terms.join(" "));
    }
    println!(
        "solution space dimension: {}",
        mu_obstruction_space(&f, tol).len()
    );
    let report = decide_existence(&MetricPreCalculus::new(basis, 1.0)?, tol)?;
    println!("{:?} ({:?})", report.status, report.reason);
    Ok(())
}
