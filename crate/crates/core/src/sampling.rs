//! Random states and distributions for property checks.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Exp1, StandardNormal};

use crate::classical::{JointProbTable, ProbVector};
use crate::error::Result;
use crate::matcore::ComplexMatrix;
use crate::quantum::{DensityMatrix, SeparableSpec};

/// Flat Dirichlet sample (normalized exponential variates).
pub fn dirichlet<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..n).map(|_| rng.sample::<f64, _>(Exp1)).collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|x| x / total).collect()
}

pub fn random_prob_vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ProbVector {
    ProbVector::new(dirichlet(rng, n)).expect("Dirichlet sample is a distribution")
}

/// Joint table drawn uniformly from the simplex.
pub fn random_joint_table<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> JointProbTable {
    JointProbTable::new(rows, cols, dirichlet(rng, rows * cols)).expect("Dirichlet sample is a distribution")
}

fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Haar-random unitary by Gram-Schmidt on complex Gaussian columns.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    while cols.len() < n {
        let mut v: Vec<Complex64> = (0..n).map(|_| complex_gaussian(rng)).collect();
        // Two passes of classical Gram-Schmidt.
        for _ in 0..2 {
            for u in &cols {
                let proj: Complex64 = u.iter().zip(&v).map(|(ui, vi)| ui.conj() * vi).sum();
                for (vi, ui) in v.iter_mut().zip(u) {
                    *vi -= proj * ui;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-8 {
            continue;
        }
        cols.push(v.into_iter().map(|z| z / norm).collect());
    }
    let mut u = ComplexMatrix::zeros(n, n);
    for (j, col) in cols.iter().enumerate() {
        for (i, &z) in col.iter().enumerate() {
            u[(i, j)] = z;
        }
    }
    u
}

/// Hilbert-Schmidt random state `G G^H / Tr(G G^H)`.
pub fn random_density_matrix<R: Rng + ?Sized>(rng: &mut R, dims: (usize, usize)) -> DensityMatrix {
    let n = dims.0 * dims.1;
    let g =
        ComplexMatrix::new(n, n, (0..n * n).map(|_| complex_gaussian(rng)).collect()).expect("finite Gaussian entries");
    let ggh = g.matmul(&g.adjoint()).expect("square");
    let tr = ggh.trace().re;
    DensityMatrix::new(hermitize(&ggh.scale(1.0 / tr)), dims).expect("G G^H is a density matrix")
}

fn hermitize(m: &ComplexMatrix) -> ComplexMatrix {
    (m + &m.adjoint()).scale(0.5)
}

/// `U diag(p) U^H` as a single-system state.
fn rotated_diagonal(u: &ComplexMatrix, p: &[f64]) -> Result<DensityMatrix> {
    let d = ComplexMatrix::from_diag(p);
    let m = u.matmul(&d)?.matmul(&u.adjoint())?;
    DensityMatrix::single(hermitize(&m))
}

/// Separable state whose factors are all diagonal in one random basis per
/// subsystem, with `1..=max_terms` product terms.
pub fn random_separable_shared_basis<R: Rng + ?Sized>(
    rng: &mut R,
    dims: (usize, usize),
    max_terms: usize,
) -> SeparableSpec {
    let terms = rng.random_range(1..=max_terms.max(1));
    let u_a = random_unitary(rng, dims.0);
    let u_b = random_unitary(rng, dims.1);
    let factors = (0..terms)
        .map(|_| {
            let a = rotated_diagonal(&u_a, &dirichlet(rng, dims.0)).expect("valid factor");
            let b = rotated_diagonal(&u_b, &dirichlet(rng, dims.1)).expect("valid factor");
            (a, b)
        })
        .collect();
    SeparableSpec::new(random_prob_vector(rng, terms), factors).expect("consistent spec")
}

/// Separable state with independently random (non-commuting) factors.
pub fn random_separable_general<R: Rng + ?Sized>(rng: &mut R, dims: (usize, usize), max_terms: usize) -> SeparableSpec {
    let terms = rng.random_range(1..=max_terms.max(1));
    let factors = (0..terms)
        .map(|_| {
            (
                random_density_matrix(rng, (dims.0, 1)),
                random_density_matrix(rng, (dims.1, 1)),
            )
        })
        .collect();
    SeparableSpec::new(random_prob_vector(rng, terms), factors).expect("consistent spec")
}
