//! Bracket structure of `u(1) ⊕ su(2)` inside `su(4)`.

use realcalc::catalog;
use realcalc::liealg::{
    center, derived_subalgebra, killing_form, levi_split_compact, structure_constants,
};
use realcalc::Tolerance;

fn main() -> realcalc::Result<()> {
    let tol = Tolerance::default();
    let basis = catalog::su4_gc();
    let f = structure_constants(&basis, tol)?;
    let n = f.dim();
    println!("nonzero structure constants f^k_ij (1-based, i < j):");
    for i in 0..n {
        for j in (i + 1)..n {
            for k in 0..n {
                let v = f.get(k, i, j);
                if v.abs() > 1e-12 {
                    println!("  f^{}_{}{} = {v:+.3}", k + 1, i + 1, j + 1);
                }
            }
        }
    }
    let b = killing_form(&f);
    println!("Killing spectrum: {:?}", b.spectrum());
    println!(
        "center dim {}, derived dim {}",
        center(&f, tol).len(),
        derived_subalgebra(&f, tol).len()
    );
    let split = levi_split_compact(&f, tol)?;
    println!("radical directions: {:?}", split.radical_basis);
    Ok(())
}
