//! Nonadditive (Tsallis) conditional entropy for classical joint
//! distributions and bipartite density matrices, and the entropic
//! separability criterion built on it.
//!
//! - [`matcore`]: small dense complex linear algebra.
//! - [`classical`]: Shannon / Tsallis entropies of probability tables.
//! - [`quantum`]: density matrices and their entropies.
//! - [`criteria`]: entropic, Renyi and partial-transpose criteria; Werner benchmark.
//! - [`statefile`], [`cli`]: file format and command-line front end.

pub mod classical;
pub mod cli;
pub mod criteria;
pub mod error;
pub mod matcore;
pub mod quantum;
pub mod sampling;
pub mod statefile;

pub use classical::{JointProbTable, ProbVector, QIndex};
pub use error::{Error, Result, StateViolation};
pub use matcore::{ComplexMatrix, Spectrum, Subsystem};
pub use quantum::{DensityMatrix, SeparableSpec};
