//! Closed-form figures of merit for every protocol variant, the conversion of
//! probabilistic schemes into deterministic ones, and resource-state overlaps.
//!
//! Rational formulas are evaluated exactly; anything with square roots or
//! trigonometric terms is evaluated in `f64`, taking exact ratios of the large
//! integers first so that nothing overflows for `N` in the hundreds.

mod analytic;
mod optvec;
mod overlap;
pub mod readings;
mod variant;

use thiserror::Error;

use crate::repcore::RepError;

pub use analytic::{
    conversion_fidelity, converted_fidelity, det_fidelity_nonopt, det_fidelity_nonopt_qubit, failure_overlap, fidelity,
    merit_report, min_fidelity_qubit, success_probability,
};
pub use optvec::{qubit_optimal_eigenvector, OptVector, LOAD_NORM_TOL};
pub use overlap::{
    nonopt_vs_opt_p_as_printed, resource_overlap, resource_overlap_general, resource_overlap_qubit, OverlapPair,
};
pub use variant::ProtocolVariant;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FiguresError {
    #[error("unknown protocol variant {0:?}")]
    UnknownVariant(String),
    #[error("{op} is not defined for {variant}")]
    UnsupportedVariant { variant: ProtocolVariant, op: &'static str },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("{0} needs an optimal-resource vector for d > 2 (pass one with --opt-vector)")]
    MissingOptVector(String),
    #[error("invalid optimal-resource vector: {0}")]
    InvalidOptVector(String),
    #[error("inconsistent inputs: {0}")]
    Consistency(String),
    #[error("{0}")]
    Domain(String),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error("i/o: {0}")]
    Io(String),
}

pub(crate) fn check_args(ports: usize, dim: usize) -> Result<(), FiguresError> {
    if ports == 0 || dim == 0 {
        return Err(FiguresError::Domain(format!(
            "need N ≥ 1 and d ≥ 1, got N = {ports}, d = {dim}"
        )));
    }
    Ok(())
}

/// Checks that `v` matches `(N, d)`.
pub(crate) fn check_vector(v: &OptVector, ports: usize, dim: usize) -> Result<(), FiguresError> {
    if v.ports() != ports || v.dim() != dim {
        return Err(FiguresError::InvalidOptVector(format!(
            "vector is for N = {}, d = {} but N = {ports}, d = {dim} was requested",
            v.ports(),
            v.dim()
        )));
    }
    Ok(())
}
