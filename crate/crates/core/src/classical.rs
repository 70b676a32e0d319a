//! Classical joint distributions and their Shannon / Tsallis entropies.
//!
//! The nonadditive conditional entropy is
//!
//! ```text
//! S_q(B|A) = [S_q(A,B) - S_q(A)] / [1 + (1-q) S_q(A)]
//! ```
//!
//! which is the escort-weighted average of the row entropies `S_q(B|A_i)` and
//! satisfies the chain rule `S_q(A,B) = S_q(A) + S_q(B|A) + (1-q) S_q(A) S_q(B|A)`.
//!
//! Conventions: `0 ln 0 = 0` and `0^q = 0` for every `q > 0`.

use crate::error::{Error, Result};
use crate::matcore::Subsystem;

/// Tolerance on the total mass of a distribution.
pub const NORMALIZATION_TOL: f64 = 1e-12;

/// `|q - 1|` below which the exact Shannon / von Neumann branch is taken.
pub const LIMIT_ONE_TOL: f64 = 1e-9;

/// The entropic index `q > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QIndex {
    q: f64,
    limit_one: bool,
}

impl QIndex {
    pub fn new(q: f64) -> Result<Self> {
        if !q.is_finite() || q <= 0.0 {
            return Err(Error::InvalidQ(q));
        }
        Ok(Self {
            q,
            limit_one: (q - 1.0).abs() < LIMIT_ONE_TOL,
        })
    }

    /// The exact `q = 1` branch.
    pub fn one() -> Self {
        Self {
            q: 1.0,
            limit_one: true,
        }
    }

    pub fn value(&self) -> f64 {
        self.q
    }

    pub fn is_limit_one(&self) -> bool {
        self.limit_one
    }

    /// `1 - q`, exactly zero on the limit branch.
    pub fn one_minus_q(&self) -> f64 {
        if self.limit_one {
            0.0
        } else {
            1.0 - self.q
        }
    }
}

/// Anything that exposes a normalized list of probabilities.
pub trait Distribution {
    fn probabilities(&self) -> &[f64];
}

fn validate_probabilities(p: &[f64]) -> Result<()> {
    if p.is_empty() {
        return Err(Error::InvalidDistribution("empty distribution".into()));
    }
    if let Some((i, &x)) = p
        .iter()
        .enumerate()
        .find(|(_, x)| !x.is_finite() || **x < 0.0 || **x > 1.0)
    {
        return Err(Error::InvalidDistribution(format!("entry {i} = {x} is outside [0, 1]")));
    }
    let total: f64 = p.iter().sum();
    if (total - 1.0).abs() > NORMALIZATION_TOL {
        return Err(Error::InvalidDistribution(format!(
            "entries sum to {total}, expected 1"
        )));
    }
    Ok(())
}

/// A normalized probability vector.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbVector(Vec<f64>);

impl ProbVector {
    pub fn new(p: Vec<f64>) -> Result<Self> {
        validate_probabilities(&p)?;
        Ok(Self(p))
    }

    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidDistribution("empty distribution".into()));
        }
        Ok(Self(vec![1.0 / n as f64; n]))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl Distribution for ProbVector {
    fn probabilities(&self) -> &[f64] {
        &self.0
    }
}

/// Joint distribution `p_ij(A, B)`; rows index A, columns index B.
#[derive(Debug, Clone, PartialEq)]
pub struct JointProbTable {
    rows: usize,
    cols: usize,
    p: Vec<f64>,
}

impl JointProbTable {
    /// Row-major entries.
    pub fn new(rows: usize, cols: usize, p: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 || p.len() != rows * cols {
            return Err(Error::InvalidDistribution(format!(
                "{rows}x{cols} table needs {} entries, got {}",
                rows * cols,
                p.len()
            )));
        }
        validate_probabilities(&p)?;
        Ok(Self { rows, cols, p })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n_cols) {
            return Err(Error::InvalidDistribution("ragged table rows".into()));
        }
        Self::new(n_rows, n_cols, rows.concat())
    }

    /// Independent table `p_i(A) p_j(B)`.
    pub fn product(a: &ProbVector, b: &ProbVector) -> Result<Self> {
        let p = a
            .as_slice()
            .iter()
            .flat_map(|&x| b.as_slice().iter().map(move |&y| x * y))
            .collect();
        Self::new(a.len(), b.len(), p)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.p[i * self.cols + j]
    }

    /// Swap the roles of A and B.
    pub fn transposed(&self) -> Self {
        let mut p = vec![0.0; self.p.len()];
        for i in 0..self.rows {
            for j in 0..self.cols {
                p[j * self.rows + i] = self.get(i, j);
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            p,
        }
    }
}

impl Distribution for JointProbTable {
    fn probabilities(&self) -> &[f64] {
        &self.p
    }
}

/// Marginal distribution of subsystem `of` (row sums for A, column sums for B).
pub fn marginal(t: &JointProbTable, of: Subsystem) -> ProbVector {
    let m = match of {
        Subsystem::A => (0..t.rows).map(|i| (0..t.cols).map(|j| t.get(i, j)).sum()).collect(),
        Subsystem::B => (0..t.cols).map(|j| (0..t.rows).map(|i| t.get(i, j)).sum()).collect(),
    };
    // Sums of a validated table; re-validation would only repeat rounding checks.
    ProbVector(m)
}

/// Conditional distributions given one subsystem.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionalTable {
    /// `rows[i][j] = p(j | i)` where `i` ranges over the conditioning subsystem.
    pub rows: Vec<Vec<f64>>,
    /// `true` where the conditioning marginal is zero; such rows are all-zero.
    pub zero_marginal: Vec<bool>,
}

/// Bayes factorization `p_ij = p_i p(j|i)`, conditioned on `given`.
pub fn conditional_table(t: &JointProbTable, given: Subsystem) -> ConditionalTable {
    let oriented = match given {
        Subsystem::A => t.clone(),
        Subsystem::B => t.transposed(),
    };
    let marg = marginal(&oriented, Subsystem::A);
    let mut rows = Vec::with_capacity(oriented.rows);
    let mut zero_marginal = Vec::with_capacity(oriented.rows);
    for (i, &pi) in marg.as_slice().iter().enumerate() {
        if pi > 0.0 {
            rows.push((0..oriented.cols).map(|j| oriented.get(i, j) / pi).collect());
            zero_marginal.push(false);
        } else {
            rows.push(vec![0.0; oriented.cols]);
            zero_marginal.push(true);
        }
    }
    ConditionalTable { rows, zero_marginal }
}

/// `ln sum_i w_i^q` over the strictly positive weights, or `-inf` if there are none.
pub(crate) fn ln_power_sum(weights: &[f64], q: f64) -> f64 {
    let logs: Vec<f64> = weights.iter().filter(|&&w| w > 0.0).map(|&w| q * w.ln()).collect();
    let max = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return max;
    }
    max + logs.iter().map(|&l| (l - max).exp()).sum::<f64>().ln()
}

pub(crate) fn shannon_of_weights(weights: &[f64]) -> f64 {
    -weights.iter().filter(|&&w| w > 0.0).map(|&w| w * w.ln()).sum::<f64>()
}

pub(crate) fn tsallis_of_weights(weights: &[f64], q: &QIndex) -> f64 {
    if q.is_limit_one() {
        return shannon_of_weights(weights);
    }
    ln_power_sum(weights, q.value()).exp_m1() / q.one_minus_q()
}

/// `[S_q(joint) - S_q(marg)] / [1 + (1-q) S_q(marg)]` from the two weight lists.
///
/// The denominator equals `sum marg^q`; the ratio is formed in log space so
/// that large `q` does not underflow the marginal power sum.
pub(crate) fn conditional_of_weights(joint: &[f64], marg: &[f64], q: &QIndex) -> Result<f64> {
    if q.is_limit_one() {
        return Ok(shannon_of_weights(joint) - shannon_of_weights(marg));
    }
    let ln_marg = ln_power_sum(marg, q.value());
    if !ln_marg.is_finite() {
        return Err(Error::DegenerateDenominator(ln_marg.exp()));
    }
    let ln_joint = ln_power_sum(joint, q.value());
    Ok((ln_joint - ln_marg).exp_m1() / q.one_minus_q())
}

/// Shannon entropy `-sum p ln p` (nats).
pub fn shannon_entropy(p: &impl Distribution) -> f64 {
    shannon_of_weights(p.probabilities())
}

/// Tsallis entropy `(sum p^q - 1) / (1 - q)`; Shannon entropy on the `q = 1` branch.
pub fn tsallis_entropy(p: &impl Distribution, q: &QIndex) -> f64 {
    tsallis_of_weights(p.probabilities(), q)
}

/// Escort distribution `P_i = p_i^q / sum_k p_k^q`.
pub fn escort(p: &ProbVector, q: &QIndex) -> ProbVector {
    if q.is_limit_one() {
        return p.clone();
    }
    let ln_norm = ln_power_sum(p.as_slice(), q.value());
    ProbVector(
        p.as_slice()
            .iter()
            .map(|&x| {
                if x > 0.0 {
                    (q.value() * x.ln() - ln_norm).exp()
                } else {
                    0.0
                }
            })
            .collect(),
    )
}

/// Normalized q-expectation `sum_i P_i Q_i` under the escort distribution of `p`.
pub fn q_expectation(p: &ProbVector, values: &[f64], q: &QIndex) -> Result<f64> {
    if values.len() != p.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} values for a distribution of length {}",
            values.len(),
            p.len()
        )));
    }
    Ok(escort(p, q)
        .as_slice()
        .iter()
        .zip(values)
        .filter(|(w, _)| **w > 0.0)
        .map(|(w, v)| w * v)
        .sum())
}

/// Nonadditive conditional entropy of the subsystem not in `given`.
///
/// `given = A` yields `S_q(B|A)`. Nonnegative for every classical table.
pub fn conditional_tsallis(t: &JointProbTable, given: Subsystem, q: &QIndex) -> Result<f64> {
    let marg = marginal(t, given);
    conditional_of_weights(t.probabilities(), marg.as_slice(), q)
}

/// `S_q(A,B) - [S_q(A) + S_q(B|A) + (1-q) S_q(A) S_q(B|A)]`; zero up to rounding.
pub fn pseudoadditivity_residual(t: &JointProbTable, q: &QIndex) -> Result<f64> {
    let s_ab = tsallis_entropy(t, q);
    let s_a = tsallis_entropy(&marginal(t, Subsystem::A), q);
    let s_b_given_a = conditional_tsallis(t, Subsystem::A, q)?;
    Ok(s_ab - (s_a + s_b_given_a + q.one_minus_q() * s_a * s_b_given_a))
}
