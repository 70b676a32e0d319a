//! Separability criteria and the two-qubit Werner benchmark.
//!
//! A state with `S_q(B|A) < 0` or `S_q(A|B) < 0` is entangled; nonnegativity is
//! necessary for separability but not sufficient. For the Werner family
//! `rho(x) = (1-x)/4 I + x |Psi-><Psi-|` the conditional entropy has the closed
//! form
//!
//! ```text
//! S_q(B|A) = [ (3/2) ((1-x)/2)^q + (1/2) ((1+3x)/2)^q - 1 ] / (1 - q)
//! ```
//!
//! whose zero `x*(q)` decreases from about 0.7476 at `q = 1` through `1/sqrt(3)`
//! at `q = 2` towards the partial-transpose threshold `1/3` as `q -> infinity`.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use serde::Serialize;

use crate::classical::{ln_power_sum, QIndex};
use crate::error::{Error, Result};
use crate::matcore::{hermitian_eigenvalues, partial_transpose, ComplexMatrix, Subsystem};
use crate::quantum::{quantum_conditional_tsallis, DensityMatrix};

/// Slack under which a conditional entropy or eigenvalue still counts as nonnegative.
pub const VERDICT_SLACK: f64 = 1e-10;

/// Werner threshold from the Bell inequality, `1/sqrt(2)`. Reported only.
pub const BELL_THRESHOLD: f64 = FRAC_1_SQRT_2;

/// Werner threshold from the alpha = 2 Renyi inequality, `1/sqrt(3)`.
pub const RENYI2_THRESHOLD: f64 = 0.577_350_269_189_625_8;

/// Werner threshold from the partial-transpose test, `1/3`.
pub const PPT_THRESHOLD: f64 = 1.0 / 3.0;

/// Bisection bracket and stopping rule for `x*(q)`.
pub const ROOT_BRACKET: (f64, f64) = (1e-9, 1.0 - 1e-9);
pub const ROOT_TOL: f64 = 1e-10;
pub const ROOT_MAX_ITER: usize = 200;

/// Werner mixing parameter `x` in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct WernerParam(f64);

impl WernerParam {
    pub fn new(x: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&x) {
            return Err(Error::OutOfRange(format!("Werner parameter x = {x} is not in [0, 1]")));
        }
        Ok(Self(x))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// The singlet `(|01> - |10>)/sqrt(2)`.
pub fn singlet_vector() -> [Complex64; 4] {
    let h = FRAC_1_SQRT_2;
    [
        Complex64::new(0.0, 0.0),
        Complex64::new(h, 0.0),
        Complex64::new(-h, 0.0),
        Complex64::new(0.0, 0.0),
    ]
}

/// `(1-x)/4 I + x |Psi-><Psi-|` on two qubits.
pub fn werner_state(x: WernerParam) -> Result<DensityMatrix> {
    let psi = singlet_vector();
    let noise = ComplexMatrix::identity(4).scale((1.0 - x.0) / 4.0);
    let singlet = ComplexMatrix::outer(&psi, &psi).scale(x.0);
    DensityMatrix::new(&noise + &singlet, (2, 2))
}

/// `base^q` in log space with `base <= 0` mapped to 0.
fn pow_nonneg(base: f64, q: f64) -> f64 {
    if base <= 0.0 {
        0.0
    } else {
        (q * base.ln()).exp()
    }
}

fn xlnx(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * x.ln()
    }
}

/// Closed-form `S_q(B|A) = S_q(A|B)` of the Werner state.
///
/// Strictly decreasing in `x` for fixed `q`.
pub fn werner_conditional_closed_form(x: WernerParam, q: &QIndex) -> f64 {
    let u = (1.0 - x.0) / 2.0;
    let v = (1.0 + 3.0 * x.0) / 2.0;
    if q.is_limit_one() {
        return -1.5 * xlnx(u) - 0.5 * xlnx(v);
    }
    let qv = q.value();
    (1.5 * pow_nonneg(u, qv) + 0.5 * pow_nonneg(v, qv) - 1.0) / q.one_minus_q()
}

/// Both conditional entropies and the resulting hint.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EntropicVerdict {
    pub s_cond_ba: f64,
    pub s_cond_ab: f64,
    /// Both conditional entropies nonnegative. `false` certifies entanglement;
    /// `true` does not certify separability.
    pub separable_hint: bool,
}

/// Entropic inequality `S_q(B|A) >= 0` and `S_q(A|B) >= 0`.
pub fn entropic_criterion(rho: &DensityMatrix, q: &QIndex) -> Result<EntropicVerdict> {
    let s_cond_ba = quantum_conditional_tsallis(rho, Subsystem::A, q)?;
    let s_cond_ab = quantum_conditional_tsallis(rho, Subsystem::B, q)?;
    Ok(EntropicVerdict {
        s_cond_ba,
        s_cond_ab,
        separable_hint: s_cond_ba >= -VERDICT_SLACK && s_cond_ab >= -VERDICT_SLACK,
    })
}

fn validate_alpha(alpha: f64) -> Result<()> {
    if !alpha.is_finite() || alpha <= 0.0 || (alpha - 1.0).abs() < crate::classical::LIMIT_ONE_TOL {
        return Err(Error::InvalidAlpha(alpha));
    }
    Ok(())
}

/// Renyi entropy `ln(Tr rho^alpha) / (1 - alpha)`.
pub fn renyi_entropy(rho: &DensityMatrix, alpha: f64) -> Result<f64> {
    validate_alpha(alpha)?;
    Ok(ln_power_sum(rho.eigenvalues(), alpha) / (1.0 - alpha))
}

/// `S_alpha(A,B) >= max(S_alpha(A), S_alpha(B))`; `false` certifies entanglement.
pub fn alpha_entropic_criterion(rho: &DensityMatrix, alpha: f64) -> Result<bool> {
    validate_alpha(alpha)?;
    if !rho.is_bipartite() {
        let (a, b) = rho.dims();
        return Err(Error::NotBipartite(a, b));
    }
    let joint = renyi_entropy(rho, alpha)?;
    let s_a = renyi_entropy(&rho.reduced(Subsystem::A)?, alpha)?;
    let s_b = renyi_entropy(&rho.reduced(Subsystem::B)?, alpha)?;
    Ok(joint >= s_a.max(s_b) - VERDICT_SLACK)
}

/// Outcome of the partial-transpose test.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PptResult {
    /// Partial transpose has no eigenvalue below `-VERDICT_SLACK`.
    pub separable: bool,
    pub min_eigenvalue: f64,
    /// PPT is necessary and sufficient for separability (`d_A * d_B <= 6`).
    pub exact: bool,
}

/// Peres partial-transpose test (transpose on B).
pub fn ppt_test(rho: &DensityMatrix) -> Result<PptResult> {
    if !rho.is_bipartite() {
        let (a, b) = rho.dims();
        return Err(Error::NotBipartite(a, b));
    }
    let pt = partial_transpose(rho.matrix(), rho.dims(), Subsystem::B)?;
    let min_eigenvalue = hermitian_eigenvalues(&pt)?.last().copied().expect("non-empty spectrum");
    let (d_a, d_b) = rho.dims();
    Ok(PptResult {
        separable: min_eigenvalue >= -VERDICT_SLACK,
        min_eigenvalue,
        exact: d_a * d_b <= 6,
    })
}

/// All criteria evaluated on one state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CriterionReport {
    pub q: f64,
    pub s_cond_ba: f64,
    pub s_cond_ab: f64,
    pub entropic_separable_hint: bool,
    pub renyi2_hint: bool,
    pub ppt_verdict: bool,
    pub ppt_min_eigenvalue: f64,
}

pub fn criterion_report(rho: &DensityMatrix, q: &QIndex) -> Result<CriterionReport> {
    let entropic = entropic_criterion(rho, q)?;
    let ppt = ppt_test(rho)?;
    Ok(CriterionReport {
        q: q.value(),
        s_cond_ba: entropic.s_cond_ba,
        s_cond_ab: entropic.s_cond_ab,
        entropic_separable_hint: entropic.separable_hint,
        renyi2_hint: alpha_entropic_criterion(rho, 2.0)?,
        ppt_verdict: ppt.separable,
        ppt_min_eigenvalue: ppt.min_eigenvalue,
    })
}

/// Zero `x*(q)` of the Werner closed form, by bisection.
pub fn threshold_at(q: &QIndex) -> Result<f64> {
    let f = |x: f64| werner_conditional_closed_form(WernerParam(x), q);
    let (mut lo, mut hi) = ROOT_BRACKET;
    let (f_lo, f_hi) = (f(lo), f(hi));
    if !(f_lo > 0.0 && f_hi < 0.0) {
        return Err(Error::RootBracketFailure {
            q: q.value(),
            lo,
            hi,
            f_lo,
            f_hi,
        });
    }
    let mut iter = 0;
    while hi - lo > ROOT_TOL && iter < ROOT_MAX_ITER {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        iter += 1;
    }
    Ok(0.5 * (lo + hi))
}

/// One point of the threshold curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvePoint {
    pub q: f64,
    pub x_star: f64,
}

/// `x*(q)` for every value of a strictly increasing grid of positive `q`.
pub fn threshold_curve(q_grid: &[f64]) -> Result<Vec<CurvePoint>> {
    if q_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::OutOfRange("q grid must be strictly increasing".into()));
    }
    q_grid
        .iter()
        .map(|&q| {
            let qi = QIndex::new(q)?;
            Ok(CurvePoint {
                q,
                x_star: threshold_at(&qi)?,
            })
        })
        .collect()
}

/// Whether `|x*(q_large) - 1/3| <= tol`.
///
/// Meaningful for large `q` (the threshold approaches 1/3 roughly as
/// `1/3 + 2 ln 2 / (3 q)`), but any `q > 0` is accepted.
pub fn asymptotic_threshold_check(q_large: f64, tol: f64) -> Result<bool> {
    let x_star = threshold_at(&QIndex::new(q_large)?)?;
    Ok((x_star - PPT_THRESHOLD).abs() <= tol)
}

/// `points` geometrically spaced values from `q_min` to `q_max` inclusive.
///
/// A single point requires `q_min == q_max`.
pub fn geometric_grid(q_min: f64, q_max: f64, points: usize) -> Result<Vec<f64>> {
    if !(q_min.is_finite() && q_max.is_finite()) || q_min <= 0.0 {
        return Err(Error::OutOfRange(format!(
            "grid bounds must be finite and positive, got [{q_min}, {q_max}]"
        )));
    }
    match points {
        0 => Err(Error::OutOfRange("grid needs at least one point".into())),
        1 if q_min == q_max => Ok(vec![q_min]),
        1 => Err(Error::OutOfRange("a single-point grid needs q_min == q_max".into())),
        _ if q_min >= q_max => Err(Error::OutOfRange(format!(
            "q_min = {q_min} must be below q_max = {q_max}"
        ))),
        _ => {
            let (lo, hi) = (q_min.ln(), q_max.ln());
            let step = (hi - lo) / (points - 1) as f64;
            let mut grid: Vec<f64> = (0..points).map(|i| (lo + step * i as f64).exp()).collect();
            grid[0] = q_min;
            grid[points - 1] = q_max;
            Ok(grid)
        }
    }
}

/// Adds `markers` that fall inside the grid range, keeping it sorted and free of duplicates.
pub fn with_markers(mut grid: Vec<f64>, markers: &[f64]) -> Vec<f64> {
    if let (Some(&first), Some(&last)) = (grid.first(), grid.last()) {
        grid.extend(markers.iter().copied().filter(|&m| m >= first && m <= last));
    }
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    grid
}

/// Reference grid for the threshold-curve figure: 120 geometric points on
/// `[0.1, 1000]` plus exact markers at `q = 1` and `q = 2`.
pub fn reference_grid() -> Vec<f64> {
    with_markers(
        geometric_grid(0.1, 1000.0, 120).expect("valid reference grid"),
        &[1.0, 2.0],
    )
}
