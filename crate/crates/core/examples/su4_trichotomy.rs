//! Three subalgebras of `su(4)`: semisimple, reductive without a common
//! eigenvector, and reductive with one.

use realcalc::catalog;
use realcalc::cncalc::{decide_existence, MetricPreCalculus};
use realcalc::Tolerance;

fn main() -> realcalc::Result<()> {
    let tol = Tolerance::default();
    for (name, basis) in [
        ("g^a", catalog::su4_ga()),
        ("g^b", catalog::su4_gb()),
        ("g^c", catalog::su4_gc()),
    ] {
        let report = decide_existence(&MetricPreCalculus::new(basis, 1.0)?, tol)?;
        println!("{name}: {:?} ({:?})", report.status, report.reason);
        if let Some(w) = report.witness {
            let v0: Vec<String> = w
                .anchor
                .v0()
                .entries()
                .iter()
                .map(|c| format!("{:+.3}{:+.3}i", c.re, c.im))
                .collect();
            println!("  v0 = ({})", v0.join(", "));
            println!("  mu = {:?}", w.anchor.mu());
            println!("  lambda = {:?}", w.connection.lambdas());
        }
    }
    Ok(())
}
