//! Port-based teleportation toolkit.
//!
//! [`figures`] evaluates closed-form figures of merit from exact Schur–Weyl
//! data in [`repcore`]. [`simulator`] builds the actual states and measurements
//! as dense matrices for small `(N, d)` and evaluates the channels directly, so
//! the two paths can be checked against each other. [`sdc`] covers the
//! superdense-coding quantities derived from the same measurements.

pub mod exec;
pub mod figures;
pub mod repcore;
mod report;
pub mod sdc;
pub mod simulator;

pub use exec::Execution;
pub use figures::ProtocolVariant;
pub use report::{Merit, MeritReport, Provenance};
