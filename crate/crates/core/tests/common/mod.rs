//! Random matrix Lie algebras and helpers shared by the integration tests.

#![allow(dead_code, clippy::needless_range_loop)]

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use realcalc::catalog;
use realcalc::{ComplexMatrix, LieBasis, RowVector, Tolerance};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian(rng: &mut impl Rng) -> f64 {
    rng.sample(StandardNormal)
}

pub fn random_complex_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> ComplexMatrix {
    let data = (0..rows * cols)
        .map(|_| Complex64::new(gaussian(rng), gaussian(rng)))
        .collect();
    ComplexMatrix::from_row_major(rows, cols, data).unwrap()
}

pub fn random_unit_vector(rng: &mut impl Rng, dim: usize) -> RowVector {
    loop {
        let v = RowVector::new(
            (0..dim)
                .map(|_| Complex64::new(gaussian(rng), gaussian(rng)))
                .collect(),
        );
        if let Some(u) = v.normalized() {
            return u;
        }
    }
}

/// Haar-distributed unitary from the QR factorization of a Gaussian matrix.
pub fn random_unitary(rng: &mut impl Rng, n: usize) -> ComplexMatrix {
    let g = random_complex_matrix(rng, n, n).to_nalgebra();
    let qr = g.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 {
            d / d.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    ComplexMatrix::from_nalgebra(&q)
}

/// Real `n × n` matrix with condition number below 100.
pub fn random_basis_change(rng: &mut impl Rng, n: usize) -> DMatrix<f64> {
    loop {
        let s = DMatrix::from_fn(n, n, |_, _| gaussian(rng));
        let sv = s.singular_values();
        if sv.min() > 0.0 && sv.max() / sv.min() < 100.0 {
            return s;
        }
    }
}

/// Random hermitian `n × n` matrix.
pub fn random_hermitian(rng: &mut impl Rng, n: usize) -> ComplexMatrix {
    let a = random_complex_matrix(rng, n, n);
    (&a + &a.adjoint()).scale_real(0.5)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Piece {
    /// `su(k)` on one block.
    Full(usize),
    /// Diagonal Cartan subalgebra of `su(k)` on one block.
    Cartan(usize),
    /// `su(k)` acting identically on two adjacent blocks.
    Twin(usize),
    /// One unused row and column.
    Pad,
}

impl Piece {
    fn size(self) -> usize {
        match self {
            Piece::Full(k) | Piece::Cartan(k) => k,
            Piece::Twin(k) => 2 * k,
            Piece::Pad => 1,
        }
    }
}

/// A member of the random family with what is known about it by construction.
#[derive(Debug, Clone)]
pub struct Sample {
    pub n: usize,
    pub pieces: Vec<Piece>,
    pub has_u1: bool,
    pub basis: LieBasis,
    /// Dimension of the center by construction.
    pub center_dim: usize,
}

impl Sample {
    pub fn semisimple(&self) -> bool {
        self.center_dim == 0
    }

    pub fn label(&self) -> String {
        format!("su({}) pieces {:?} u1 {}", self.n, self.pieces, self.has_u1)
    }
}

fn cartan_block(k: usize) -> Vec<ComplexMatrix> {
    catalog::cartan(k)
}

/// Random subalgebra of `su(n)`: a direct sum of block pieces, optionally
/// with a central `u(1)` that is constant on every block, conjugated by a
/// random unitary and written in a random real basis.
pub fn random_subalgebra(rng: &mut impl Rng, n: usize) -> Sample {
    let mut pieces = Vec::new();
    let mut used = 0;
    while used < n {
        let rem = n - used;
        let piece = match rng.random_range(0..4) {
            0 if rem >= 2 => Piece::Full(rng.random_range(2..=rem)),
            1 if rem >= 2 => Piece::Cartan(rng.random_range(2..=rem)),
            2 if rem >= 4 => Piece::Twin(rng.random_range(2..=rem / 2)),
            _ => Piece::Pad,
        };
        used += piece.size();
        pieces.push(piece);
    }

    let mut mats = Vec::new();
    let mut center_dim = 0;
    let mut offset = 0;
    for &piece in &pieces {
        match piece {
            Piece::Full(k) => {
                mats.extend(catalog::su(k).iter().map(|m| catalog::embed(m, n, offset)))
            }
            Piece::Cartan(k) => {
                center_dim += k - 1;
                mats.extend(cartan_block(k).iter().map(|m| catalog::embed(m, n, offset)));
            }
            Piece::Twin(k) => mats.extend(
                catalog::su(k)
                    .iter()
                    .map(|m| catalog::embed(&catalog::direct_sum(m, m), n, offset)),
            ),
            Piece::Pad => {}
        }
        offset += piece.size();
    }

    let has_u1 = pieces.len() > 1 && (mats.is_empty() || rng.random_bool(0.5));
    if has_u1 {
        let values: Vec<f64> = pieces.iter().map(|_| gaussian(rng)).collect();
        let total: f64 = pieces
            .iter()
            .zip(&values)
            .map(|(p, v)| p.size() as f64 * v)
            .sum();
        let shift = total / n as f64;
        let diag: Vec<Complex64> = pieces
            .iter()
            .zip(&values)
            .flat_map(|(p, v)| std::iter::repeat_n(Complex64::new(0.0, v - shift), p.size()))
            .collect();
        mats.push(ComplexMatrix::diagonal(&diag));
        center_dim += 1;
    }
    if mats.is_empty() {
        // A single Pad piece only occurs for n = 1, which callers avoid.
        mats.push(catalog::cartan(n)[0].clone());
        center_dim += 1;
    }

    let tol = Tolerance::default();
    let raw = LieBasis::new(mats, tol).expect("family members are valid bases");
    let u = random_unitary(rng, n);
    let s = random_basis_change(rng, raw.len());
    let basis = raw
        .conjugate_by(&u, tol)
        .unwrap()
        .change_basis(&s, tol)
        .unwrap();
    Sample {
        n,
        pieces,
        has_u1,
        basis,
        center_dim,
    }
}

pub mod oracle;
