//! Common left eigenvectors, and how they move under unitary conjugation.

use num_complex::Complex64;
use realcalc::catalog;
use realcalc::liealg::{common_left_eigenvector, structure_constants};
use realcalc::{ComplexMatrix, Tolerance};

fn show(z: &[Complex64]) -> String {
    let parts: Vec<String> = z
        .iter()
        .map(|c| format!("{:+.3}{:+.3}i", c.re, c.im))
        .collect();
    format!("({})", parts.join(", "))
}

fn main() -> realcalc::Result<()> {
    let tol = Tolerance::default();
    let (c, s) = (0.6f64, 0.8f64);
    let u = ComplexMatrix::from_rows(&[
        vec![
            Complex64::new(c, 0.0),
            0.0.into(),
            Complex64::new(0.0, s),
            0.0.into(),
        ],
        vec![0.0.into(), 1.0.into(), 0.0.into(), 0.0.into()],
        vec![
            Complex64::new(0.0, s),
            0.0.into(),
            Complex64::new(c, 0.0),
            0.0.into(),
        ],
        vec![0.0.into(), 0.0.into(), 0.0.into(), 1.0.into()],
    ])?;
    for (name, basis) in [
        ("g^c", catalog::su4_gc()),
        ("U† g^c U", catalog::su4_gc().conjugate_by(&u, tol)?),
    ] {
        let f = structure_constants(&basis, tol)?;
        match common_left_eigenvector(&basis, &f, tol)? {
            Some(ev) => {
                println!("{name}: v0 = {}", show(ev.v0.entries()));
                println!("  eigenvalues {}", show(&ev.eigenvalues));
                println!(
                    "  invariant subspace dim {}, joint eigenspace dim {}",
                    ev.invariant_dim, ev.joint_dim
                );
            }
            None => println!("{name}: none"),
        }
    }
    let gb = catalog::su4_gb();
    let f = structure_constants(&gb, tol)?;
    println!(
        "g^b: {}",
        common_left_eigenvector(&gb, &f, tol)?.map_or("none".into(), |e| show(e.v0.entries()))
    );
    Ok(())
}
