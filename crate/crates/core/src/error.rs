use thiserror::Error;

/// Which density-matrix invariant a candidate state failed.
#[derive(Debug, Clone, PartialEq)]
pub enum StateViolation {
    /// Matrix side does not equal `d_A * d_B`.
    Shape { side: usize, d_a: usize, d_b: usize },
    /// Largest `|m_ij - conj(m_ji)|`.
    Hermitian(f64),
    /// Trace found instead of 1.
    UnitTrace(f64),
    /// Most negative eigenvalue.
    PositiveSemidefinite(f64),
}

impl std::fmt::Display for StateViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Shape { side, d_a, d_b } => write!(
                f,
                "shape invariant violated: side {side} but dims ({d_a}, {d_b}) require {}",
                d_a * d_b
            ),
            Self::Hermitian(dev) => {
                write!(f, "Hermiticity invariant violated: max |m - m^H| = {dev:e}")
            }
            Self::UnitTrace(tr) => write!(f, "unit-trace invariant violated: trace = {tr}"),
            Self::PositiveSemidefinite(ev) => write!(f, "positive-semidefinite invariant violated: eigenvalue {ev:e}"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian: max |m - m^H| = {0:e}")]
    NotHermitian(f64),

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid matrix data: {0}")]
    InvalidMatrix(String),

    #[error("invalid probability distribution: {0}")]
    InvalidDistribution(String),

    #[error("invalid entropic index q = {0}: must be a finite positive number")]
    InvalidQ(f64),

    #[error("invalid Renyi order alpha = {0}: must be positive and different from 1")]
    InvalidAlpha(f64),

    #[error("degenerate denominator in conditional entropy: {0:e}")]
    DegenerateDenominator(f64),

    #[error("state vector is not normalized: norm^2 = {0}")]
    NotNormalized(f64),

    #[error("not a density matrix: {0}")]
    NotDensityMatrix(StateViolation),

    #[error("state is not bipartite: dims ({0}, {1}); both subsystems need dimension >= 2")]
    NotBipartite(usize, usize),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("root not bracketed at q = {q}: f({lo}) = {f_lo}, f({hi}) = {f_hi}")]
    RootBracketFailure {
        q: f64,
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
