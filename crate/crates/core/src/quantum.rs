//! Density matrices and their Tsallis / von Neumann entropies.
//!
//! All entropies are evaluated on eigenvalue spectra. Eigenvalues in
//! `[-1e-10, 0)` are clipped to zero when a [`DensityMatrix`] is built; anything
//! more negative is rejected.

use num_complex::Complex64;

use crate::classical::{conditional_of_weights, shannon_of_weights, tsallis_of_weights, ProbVector, QIndex};
use crate::error::{Error, Result, StateViolation};
use crate::matcore::{hermitian_eigenvalues, kron, partial_trace, ComplexMatrix, Subsystem, HERMITIAN_TOL};

/// Trace tolerance for density matrices.
pub const TRACE_TOL: f64 = 1e-10;

/// Most negative eigenvalue still treated as zero.
pub const PSD_TOL: f64 = 1e-10;

/// Tolerance on `<psi|psi> = 1` for pure states.
pub const NORM_TOL: f64 = 1e-10;

/// A Hermitian, positive-semidefinite, unit-trace matrix on `C^{d_A} (x) C^{d_B}`.
///
/// `d_B = 1` marks a single-system state.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
    dims: (usize, usize),
    eigenvalues: Vec<f64>,
}

impl DensityMatrix {
    pub fn new(mat: ComplexMatrix, dims: (usize, usize)) -> Result<Self> {
        let (d_a, d_b) = dims;
        if d_a == 0 || d_b == 0 || !mat.is_square() || mat.rows() != d_a * d_b {
            return Err(Error::NotDensityMatrix(StateViolation::Shape {
                side: mat.rows(),
                d_a,
                d_b,
            }));
        }
        let dev = mat.hermitian_deviation();
        if dev > HERMITIAN_TOL {
            return Err(Error::NotDensityMatrix(StateViolation::Hermitian(dev)));
        }
        let tr = mat.trace().re;
        if (tr - 1.0).abs() > TRACE_TOL {
            return Err(Error::NotDensityMatrix(StateViolation::UnitTrace(tr)));
        }
        let mut eigenvalues = hermitian_eigenvalues(&mat)?;
        for ev in eigenvalues.iter_mut() {
            if *ev < -PSD_TOL {
                return Err(Error::NotDensityMatrix(StateViolation::PositiveSemidefinite(*ev)));
            }
            if *ev < 0.0 {
                *ev = 0.0;
            }
        }
        Ok(Self { mat, dims, eigenvalues })
    }

    /// A state of a single system (`d_B = 1`).
    pub fn single(mat: ComplexMatrix) -> Result<Self> {
        let n = mat.rows();
        Self::new(mat, (n, 1))
    }

    /// `|psi><psi|` for a normalized state vector.
    pub fn from_pure(state: &[Complex64], dims: (usize, usize)) -> Result<Self> {
        let norm_sqr: f64 = state.iter().map(|z| z.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(norm_sqr));
        }
        Self::new(ComplexMatrix::outer(state, state), dims)
    }

    /// `diag(p)` on a single system.
    pub fn diagonal(p: &ProbVector) -> Result<Self> {
        Self::single(ComplexMatrix::from_diag(p.as_slice()))
    }

    /// `I / n`.
    pub fn maximally_mixed(dims: (usize, usize)) -> Result<Self> {
        let n = dims.0 * dims.1;
        Self::new(ComplexMatrix::identity(n).scale(1.0 / n as f64), dims)
    }

    /// `rho_A (x) rho_B` for two single-system states.
    pub fn product(a: &DensityMatrix, b: &DensityMatrix) -> Result<Self> {
        Self::new(kron(&a.mat, &b.mat), (a.side(), b.side()))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn dims(&self) -> (usize, usize) {
        self.dims
    }

    pub fn side(&self) -> usize {
        self.mat.rows()
    }

    pub fn is_bipartite(&self) -> bool {
        self.dims.0 >= 2 && self.dims.1 >= 2
    }

    /// Clipped eigenvalues, descending.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// `Tr rho^2`.
    pub fn purity(&self) -> f64 {
        self.eigenvalues.iter().map(|l| l * l).sum()
    }

    /// Reduced state of `keep`, as a single-system density matrix.
    pub fn reduced(&self, keep: Subsystem) -> Result<DensityMatrix> {
        DensityMatrix::single(partial_trace(&self.mat, self.dims, keep)?)
    }
}

/// Convex combination of product states `sum_l w_l rho_l(A) (x) rho_l(B)`.
#[derive(Debug, Clone)]
pub struct SeparableSpec {
    weights: ProbVector,
    factors: Vec<(DensityMatrix, DensityMatrix)>,
}

impl SeparableSpec {
    pub fn new(weights: ProbVector, factors: Vec<(DensityMatrix, DensityMatrix)>) -> Result<Self> {
        if weights.len() != factors.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} weights for {} product terms",
                weights.len(),
                factors.len()
            )));
        }
        let (first_a, first_b) = &factors[0];
        let (d_a, d_b) = (first_a.side(), first_b.side());
        for (k, (a, b)) in factors.iter().enumerate() {
            if a.dims().1 != 1 || b.dims().1 != 1 {
                return Err(Error::DimensionMismatch(format!(
                    "term {k}: factors must be single-system states"
                )));
            }
            if a.side() != d_a || b.side() != d_b {
                return Err(Error::DimensionMismatch(format!(
                    "term {k}: factor dims ({}, {}) differ from ({d_a}, {d_b})",
                    a.side(),
                    b.side()
                )));
            }
        }
        Ok(Self { weights, factors })
    }

    pub fn weights(&self) -> &ProbVector {
        &self.weights
    }

    pub fn factors(&self) -> &[(DensityMatrix, DensityMatrix)] {
        &self.factors
    }

    pub fn dims(&self) -> (usize, usize) {
        let (a, b) = &self.factors[0];
        (a.side(), b.side())
    }
}

/// Builds the separable state described by `spec`.
pub fn assemble_separable(spec: &SeparableSpec) -> Result<DensityMatrix> {
    let dims = spec.dims();
    let mut acc = ComplexMatrix::zeros(dims.0 * dims.1, dims.0 * dims.1);
    for (&w, (a, b)) in spec.weights.as_slice().iter().zip(&spec.factors) {
        acc = &acc + &kron(a.matrix(), b.matrix()).scale(w);
    }
    DensityMatrix::new(acc, dims)
}

/// `-Tr rho ln rho`.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    shannon_of_weights(rho.eigenvalues())
}

/// `(Tr rho^q - 1) / (1 - q)`; von Neumann entropy on the `q = 1` branch.
pub fn quantum_tsallis(rho: &DensityMatrix, q: &QIndex) -> f64 {
    tsallis_of_weights(rho.eigenvalues(), q)
}

/// Nonadditive conditional entropy of the subsystem other than `given`.
///
/// `given = A` yields `S_q(B|A) = [S_q(A,B) - S_q(A)] / [1 + (1-q) S_q(A)]`.
/// Negative values certify entanglement.
pub fn quantum_conditional_tsallis(rho: &DensityMatrix, given: Subsystem, q: &QIndex) -> Result<f64> {
    if !rho.is_bipartite() {
        let (a, b) = rho.dims();
        return Err(Error::NotBipartite(a, b));
    }
    let marg = rho.reduced(given)?;
    conditional_of_weights(rho.eigenvalues(), marg.eigenvalues(), q)
}

/// `S_q(A,B) - [S_q(A) + S_q(B|A) + (1-q) S_q(A) S_q(B|A)]`.
pub fn quantum_pseudoadditivity_residual(rho: &DensityMatrix, q: &QIndex) -> Result<f64> {
    let s_ab = quantum_tsallis(rho, q);
    let s_a = quantum_tsallis(&rho.reduced(Subsystem::A)?, q);
    let s_b_given_a = quantum_conditional_tsallis(rho, Subsystem::A, q)?;
    Ok(s_ab - (s_a + s_b_given_a + q.one_minus_q() * s_a * s_b_given_a))
}
