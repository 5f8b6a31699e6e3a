//! Exact combinatorics of Young frames and Schur–Weyl irrep data.
//!
//! Everything here works over arbitrary-precision integers and rationals.
//! Partitions are listed in decreasing lexicographic order throughout so that
//! vectors indexed by frames have a stable layout.

mod character;
mod dims;
mod partition;
mod permutation;
mod spectrum;

use thiserror::Error;

pub use character::{character, class_size};
pub(crate) use dims::{binomial, factorial};
pub use dims::{gl_multiplicity, sym_dimension, IrrepData, SpinSector};
pub use partition::{box_neighbors, enumerate_partitions, BoxMove, Partition};
pub use permutation::Permutation;
pub use spectrum::{gamma, gamma_star};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error("rows {0:?} do not form a partition")]
    NotAPartition(Vec<usize>),
    #[error("cannot parse partition from {0:?}")]
    Parse(String),
    #[error("{0:?} is not a permutation")]
    NotAPermutation(Vec<usize>),
    #[error("size mismatch: expected a partition of {expected}, found one of {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("2j = {two_j} is not a spin sector of {ports} qubits")]
    BadSpin { ports: usize, two_j: usize },
    #[error("domain error: {0}")]
    Domain(String),
}
