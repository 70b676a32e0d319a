//! Small dense complex matrices: Hermitian eigensolver, Kronecker product,
//! partial trace and partial transpose.
//!
//! Composite indices of a bipartite space follow `i = a * d_b + b`, so
//! subsystem A is the slow index. `kron`, `partial_trace` and
//! `partial_transpose` all rely on this layout.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Maximum `|m_ij - conj(m_ji)|` accepted as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Off-diagonal Frobenius norm at which a Jacobi run is considered converged
/// (scaled by the input norm when that exceeds 1).
pub const JACOBI_TOL: f64 = 1e-14;

/// Sweep budget for the Jacobi eigensolver.
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// One side of a bipartite system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Subsystem {
    A,
    B,
}

impl Subsystem {
    pub fn other(self) -> Self {
        match self {
            Subsystem::A => Subsystem::B,
            Subsystem::B => Subsystem::A,
        }
    }
}

/// Row-major dense complex matrix with finite entries.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidMatrix(format!(
                "dimensions must be positive, got {rows}x{cols}"
            )));
        }
        if data.len() != rows * cols {
            return Err(Error::InvalidMatrix(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        if let Some(idx) = data.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidMatrix(format!(
                "non-finite entry at ({}, {})",
                idx / cols,
                idx % cols
            )));
        }
        Ok(Self { rows, cols, data })
    }

    /// Build from a real row-major slice.
    pub fn from_real(rows: usize, cols: usize, data: &[f64]) -> Result<Self> {
        Self::new(rows, cols, data.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Self {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_diag(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(d, 0.0);
        }
        m
    }

    /// Outer product `|u><v|`.
    pub fn outer(u: &[Complex64], v: &[Complex64]) -> Self {
        let mut m = Self::zeros(u.len(), v.len());
        for (i, ui) in u.iter().enumerate() {
            for (j, vj) in v.iter().enumerate() {
                m[(i, j)] = ui * vj.conj();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entrywise `|m_ij - conj(m_ji)|`. Panics on non-square input.
    pub fn hermitian_deviation(&self) -> f64 {
        assert!(self.is_square());
        let n = self.rows;
        let mut dev = 0.0_f64;
        for i in 0..n {
            for j in i..n {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }

    /// Largest entrywise `|self_ij - other_ij|`. Panics on shape mismatch.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        Ok(out)
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Mul<f64> for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: f64) -> ComplexMatrix {
        self.scale(rhs)
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:+.6}{:+.6}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Eigendecomposition of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct Spectrum {
    /// Descending.
    pub eigenvalues: Vec<f64>,
    /// Unitary; column `k` pairs with `eigenvalues[k]`.
    pub eigenvectors: ComplexMatrix,
}

impl Spectrum {
    /// `U diag(lambda) U^H`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.eigenvalues.len();
        let u = &self.eigenvectors;
        let mut out = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = (0..n).map(|k| u[(i, k)] * self.eigenvalues[k] * u[(j, k)].conj()).sum();
            }
        }
        out
    }
}

fn off_diagonal_norm(a: &[Complex64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[i * n + j].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations.
///
/// Each rotation first removes the phase of the pivot `a_pq`, then applies the
/// classical real Jacobi rotation in the `(p, q)` plane. Inputs are rejected,
/// not symmetrized, when `|m - m^H|` exceeds [`HERMITIAN_TOL`].
pub fn hermitian_eigen(m: &ComplexMatrix) -> Result<Spectrum> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let dev = m.hermitian_deviation();
    if dev > HERMITIAN_TOL {
        return Err(Error::NotHermitian(dev));
    }

    let n = m.rows();
    // Work on the Hermitian part; differs from `m` by at most HERMITIAN_TOL.
    let mut a: Vec<Complex64> = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        for j in 0..n {
            a[i * n + j] = (m[(i, j)] + m[(j, i)].conj()) * 0.5;
        }
    }
    let mut v = ComplexMatrix::identity(n);
    let tol = JACOBI_TOL * m.frobenius_norm().max(1.0);

    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(&a, n);
        if off <= tol {
            break;
        }
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps, off_norm: off });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, n, p, q);
            }
        }
    }

    let mut pairs: Vec<(f64, usize)> = (0..n).map(|i| (a[i * n + i].re, i)).collect();
    // Stable: ties keep the solver's order.
    pairs.sort_by(|x, y| y.0.total_cmp(&x.0));

    let mut vecs = ComplexMatrix::zeros(n, n);
    for (col, &(_, src)) in pairs.iter().enumerate() {
        for row in 0..n {
            vecs[(row, col)] = v[(row, src)];
        }
    }
    Ok(Spectrum {
        eigenvalues: pairs.into_iter().map(|(ev, _)| ev).collect(),
        eigenvectors: vecs,
    })
}

/// Eigenvalues only, descending.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    hermitian_eigen(m).map(|s| s.eigenvalues)
}

fn rotate(a: &mut [Complex64], v: &mut ComplexMatrix, n: usize, p: usize, q: usize) {
    let g = a[p * n + q];
    let g_abs = g.norm();
    if g_abs < f64::MIN_POSITIVE {
        return;
    }
    let phase_conj = (g / g_abs).conj();
    let app = a[p * n + p].re;
    let aqq = a[q * n + q].re;
    let tau = (aqq - app) / (2.0 * g_abs);
    let t = if tau >= 0.0 {
        1.0 / (tau + 1.0_f64.hypot(tau))
    } else {
        -1.0 / (-tau + 1.0_f64.hypot(tau))
    };
    let c = 1.0 / 1.0_f64.hypot(t);
    let s = t * c;

    // J = diag(1, e^{-i phi}) * [[c, s], [-s, c]] restricted to (p, q).
    let j_pp = Complex64::new(c, 0.0);
    let j_pq = Complex64::new(s, 0.0);
    let j_qp = phase_conj * (-s);
    let j_qq = phase_conj * c;

    // A <- A J
    for k in 0..n {
        let akp = a[k * n + p];
        let akq = a[k * n + q];
        a[k * n + p] = akp * j_pp + akq * j_qp;
        a[k * n + q] = akp * j_pq + akq * j_qq;
    }
    // A <- J^H A
    for k in 0..n {
        let apk = a[p * n + k];
        let aqk = a[q * n + k];
        a[p * n + k] = j_pp.conj() * apk + j_qp.conj() * aqk;
        a[q * n + k] = j_pq.conj() * apk + j_qq.conj() * aqk;
    }
    a[p * n + q] = Complex64::new(0.0, 0.0);
    a[q * n + p] = Complex64::new(0.0, 0.0);
    a[p * n + p].im = 0.0;
    a[q * n + q].im = 0.0;

    // V <- V J
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * j_pp + vkq * j_qp;
        v[(k, q)] = vkp * j_pq + vkq * j_qq;
    }
}

/// Kronecker product; block `(i, j)` of the result is `a_ij * b`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (ra, ca) = (a.rows(), a.cols());
    let (rb, cb) = (b.rows(), b.cols());
    let mut out = ComplexMatrix::zeros(ra * rb, ca * cb);
    for i in 0..ra {
        for j in 0..ca {
            let aij = a[(i, j)];
            for k in 0..rb {
                for l in 0..cb {
                    out[(i * rb + k, j * cb + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

fn check_bipartite_shape(m: &ComplexMatrix, dims: (usize, usize)) -> Result<()> {
    let (d_a, d_b) = dims;
    if d_a == 0 || d_b == 0 || !m.is_square() || m.rows() != d_a * d_b {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} matrix is not compatible with dims ({d_a}, {d_b})",
            m.rows(),
            m.cols()
        )));
    }
    Ok(())
}

/// Reduced matrix on `keep`, tracing out the other subsystem.
pub fn partial_trace(m: &ComplexMatrix, dims: (usize, usize), keep: Subsystem) -> Result<ComplexMatrix> {
    check_bipartite_shape(m, dims)?;
    let (d_a, d_b) = dims;
    let out = match keep {
        Subsystem::A => {
            let mut out = ComplexMatrix::zeros(d_a, d_a);
            for a in 0..d_a {
                for a2 in 0..d_a {
                    out[(a, a2)] = (0..d_b).map(|b| m[(a * d_b + b, a2 * d_b + b)]).sum();
                }
            }
            out
        }
        Subsystem::B => {
            let mut out = ComplexMatrix::zeros(d_b, d_b);
            for b in 0..d_b {
                for b2 in 0..d_b {
                    out[(b, b2)] = (0..d_a).map(|a| m[(a * d_b + b, a * d_b + b2)]).sum();
                }
            }
            out
        }
    };
    Ok(out)
}

/// Transpose of the indices belonging to subsystem `on`.
pub fn partial_transpose(m: &ComplexMatrix, dims: (usize, usize), on: Subsystem) -> Result<ComplexMatrix> {
    check_bipartite_shape(m, dims)?;
    let (d_a, d_b) = dims;
    let mut out = ComplexMatrix::zeros(m.rows(), m.cols());
    for a in 0..d_a {
        for b in 0..d_b {
            for a2 in 0..d_a {
                for b2 in 0..d_b {
                    let src = match on {
                        Subsystem::A => m[(a2 * d_b + b, a * d_b + b2)],
                        Subsystem::B => m[(a * d_b + b2, a2 * d_b + b)],
                    };
                    out[(a * d_b + b, a2 * d_b + b2)] = src;
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn pauli_x() -> ComplexMatrix {
        ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).unwrap()
    }

    fn singlet_projector() -> ComplexMatrix {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let psi = [c(0.0, 0.0), c(h, 0.0), c(-h, 0.0), c(0.0, 0.0)];
        ComplexMatrix::outer(&psi, &psi)
    }

    fn assert_spectrum_valid(m: &ComplexMatrix, s: &Spectrum) {
        let n = m.rows();
        let u = &s.eigenvectors;
        let uhu = u.adjoint().matmul(u).unwrap();
        assert!(uhu.max_abs_diff(&ComplexMatrix::identity(n)) <= 1e-10);
        assert!(s.reconstruct().max_abs_diff(m) <= 1e-10);
        assert!(s.eigenvalues.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn eigen_identity() {
        let s = hermitian_eigen(&ComplexMatrix::identity(2)).unwrap();
        assert_eq!(s.eigenvalues, vec![1.0, 1.0]);
    }

    #[test]
    fn eigen_diagonal_keeps_basis() {
        let m = ComplexMatrix::from_diag(&[3.0, -1.0]);
        let s = hermitian_eigen(&m).unwrap();
        assert_eq!(s.eigenvalues, vec![3.0, -1.0]);
        assert_eq!(s.eigenvectors, ComplexMatrix::identity(2));
    }

    #[test]
    fn eigen_pauli_x() {
        let m = pauli_x();
        let s = hermitian_eigen(&m).unwrap();
        assert!((s.eigenvalues[0] - 1.0).abs() < 1e-14);
        assert!((s.eigenvalues[1] + 1.0).abs() < 1e-14);
        assert_spectrum_valid(&m, &s);
    }

    #[test]
    fn eigen_complex_pauli_y() {
        let m = ComplexMatrix::new(2, 2, vec![c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)]).unwrap();
        let s = hermitian_eigen(&m).unwrap();
        assert!((s.eigenvalues[0] - 1.0).abs() < 1e-14);
        assert!((s.eigenvalues[1] + 1.0).abs() < 1e-14);
        assert_spectrum_valid(&m, &s);
    }

    #[test]
    fn eigen_rejects_non_square() {
        let m = ComplexMatrix::zeros(2, 3);
        assert!(matches!(
            hermitian_eigen(&m),
            Err(Error::NotSquare { rows: 2, cols: 3 })
        ));
    }

    #[test]
    fn eigen_rejects_non_hermitian() {
        let m = ComplexMatrix::from_real(2, 2, &[1.0, 2.0, 0.0, 1.0]).unwrap();
        assert!(matches!(hermitian_eigen(&m), Err(Error::NotHermitian(_))));
        // within tolerance is accepted
        let m = ComplexMatrix::from_real(2, 2, &[1.0, 0.5, 0.5 + 5e-11, 1.0]).unwrap();
        assert!(hermitian_eigen(&m).is_ok());
    }

    #[test]
    fn eigen_of_larger_complex_matrix() {
        // Hermitian 5x5 with distinct complex off-diagonals.
        let n = 5;
        let mut m = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = c(i as f64 * 0.7 - 1.0, 0.0);
            for j in (i + 1)..n {
                let z = c(((i + 2 * j) as f64).sin(), ((3 * i + j) as f64).cos());
                m[(i, j)] = z;
                m[(j, i)] = z.conj();
            }
        }
        let s = hermitian_eigen(&m).unwrap();
        assert_spectrum_valid(&m, &s);
        let sum: f64 = s.eigenvalues.iter().sum();
        assert!((sum - m.trace().re).abs() < 1e-10);
    }

    #[test]
    fn eigen_degenerate_spectrum() {
        let m = &ComplexMatrix::identity(4).scale(0.25) + &singlet_projector().scale(0.0);
        let s = hermitian_eigen(&m).unwrap();
        assert_spectrum_valid(&m, &s);
        let m = singlet_projector();
        let s = hermitian_eigen(&m).unwrap();
        assert_spectrum_valid(&m, &s);
        assert!((s.eigenvalues[0] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn kron_identities() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(kron(&i2, &i2), ComplexMatrix::identity(4));
        let p0 = ComplexMatrix::from_diag(&[1.0, 0.0]);
        let p1 = ComplexMatrix::from_diag(&[0.0, 1.0]);
        assert_eq!(kron(&p0, &p1), ComplexMatrix::from_diag(&[0.0, 1.0, 0.0, 0.0]));
    }

    #[test]
    fn kron_block_structure() {
        let d = ComplexMatrix::from_diag(&[2.0, 3.0]);
        let k = kron(&pauli_x(), &d);
        #[rustfmt::skip]
        let expected = ComplexMatrix::from_real(4, 4, &[
            0.0, 0.0, 2.0, 0.0,
            0.0, 0.0, 0.0, 3.0,
            2.0, 0.0, 0.0, 0.0,
            0.0, 3.0, 0.0, 0.0,
        ]).unwrap();
        assert_eq!(k, expected);
    }

    #[test]
    fn kron_rectangular_shape() {
        let a = ComplexMatrix::zeros(2, 3);
        let b = ComplexMatrix::zeros(4, 1);
        let k = kron(&a, &b);
        assert_eq!((k.rows(), k.cols()), (8, 3));
    }

    #[test]
    fn partial_trace_of_product() {
        let ra = ComplexMatrix::new(2, 2, vec![c(0.7, 0.), c(0.1, 0.2), c(0.1, -0.2), c(0.3, 0.)]).unwrap();
        let rb = ComplexMatrix::from_diag(&[0.2, 0.5, 0.3]);
        let prod = kron(&ra, &rb);
        assert!(partial_trace(&prod, (2, 3), Subsystem::A).unwrap().max_abs_diff(&ra) < 1e-15);
        assert!(partial_trace(&prod, (2, 3), Subsystem::B).unwrap().max_abs_diff(&rb) < 1e-15);
    }

    #[test]
    fn partial_trace_singlet_is_maximally_mixed() {
        let half = ComplexMatrix::identity(2).scale(0.5);
        let s = singlet_projector();
        assert!(partial_trace(&s, (2, 2), Subsystem::A).unwrap().max_abs_diff(&half) < 1e-12);
        assert!(partial_trace(&s, (2, 2), Subsystem::B).unwrap().max_abs_diff(&half) < 1e-12);
    }

    #[test]
    fn partial_trace_maximally_mixed() {
        let m = ComplexMatrix::identity(4).scale(0.25);
        let r = partial_trace(&m, (2, 2), Subsystem::B).unwrap();
        assert!(r.max_abs_diff(&ComplexMatrix::identity(2).scale(0.5)) < 1e-15);
    }

    #[test]
    fn partial_ops_reject_bad_dims() {
        let m = ComplexMatrix::identity(4);
        assert!(matches!(
            partial_trace(&m, (2, 3), Subsystem::A),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(matches!(
            partial_transpose(&m, (3, 2), Subsystem::B),
            Err(Error::DimensionMismatch(_))
        ));
        let rect = ComplexMatrix::zeros(4, 2);
        assert!(partial_trace(&rect, (2, 2), Subsystem::A).is_err());
    }

    #[test]
    fn partial_transpose_of_product() {
        let ra = ComplexMatrix::new(2, 2, vec![c(0.6, 0.), c(0.0, 0.3), c(0.0, -0.3), c(0.4, 0.)]).unwrap();
        let rb = ComplexMatrix::new(2, 2, vec![c(0.5, 0.), c(0.2, 0.1), c(0.2, -0.1), c(0.5, 0.)]).unwrap();
        let pt = partial_transpose(&kron(&ra, &rb), (2, 2), Subsystem::B).unwrap();
        assert!(pt.max_abs_diff(&kron(&ra, &rb.transpose())) < 1e-15);
        let ev = hermitian_eigenvalues(&pt).unwrap();
        assert!(ev.iter().all(|&x| x > -1e-12));
    }

    #[test]
    fn partial_transpose_singlet() {
        let pt = partial_transpose(&singlet_projector(), (2, 2), Subsystem::B).unwrap();
        // Hand expansion: 1/2 on (1,1),(2,2); -1/2 on (0,3),(3,0).
        #[rustfmt::skip]
        let expected = ComplexMatrix::from_real(4, 4, &[
             0.0, 0.0, 0.0, -0.5,
             0.0, 0.5, 0.0,  0.0,
             0.0, 0.0, 0.5,  0.0,
            -0.5, 0.0, 0.0,  0.0,
        ]).unwrap();
        assert!(pt.max_abs_diff(&expected) < 1e-15);
        let ev = hermitian_eigenvalues(&pt).unwrap();
        assert!((ev[3] + 0.5).abs() < 1e-14);
    }

    #[test]
    fn partial_transpose_is_involution() {
        let mut m = ComplexMatrix::zeros(6, 6);
        for i in 0..6 {
            for j in 0..6 {
                m[(i, j)] = c((i * 7 + j) as f64, (i as f64) - (j as f64));
            }
        }
        for on in [Subsystem::A, Subsystem::B] {
            let twice = partial_transpose(&partial_transpose(&m, (2, 3), on).unwrap(), (2, 3), on).unwrap();
            assert_eq!(twice, m);
        }
        let full = partial_transpose(
            &partial_transpose(&m, (2, 3), Subsystem::A).unwrap(),
            (2, 3),
            Subsystem::B,
        )
        .unwrap();
        assert_eq!(full, m.transpose());
    }

    #[test]
    fn matrix_construction_errors() {
        assert!(ComplexMatrix::new(2, 2, vec![c(0., 0.); 3]).is_err());
        assert!(ComplexMatrix::new(1, 1, vec![c(f64::NAN, 0.)]).is_err());
        assert!(ComplexMatrix::new(0, 1, vec![]).is_err());
    }
}
