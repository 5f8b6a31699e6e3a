//! Brute-force construction of PBT states and measurements as dense matrices.
//!
//! Tensor factors are ordered `A_1, …, A_N, C`, with `C` the last factor; the
//! receiver's systems are never built. Everything here is exponential in `N`
//! and guarded by [`Limits`].

mod linalg;
mod measure;
mod operator;
mod perm;
mod povm;
mod spectral;
mod states;

use std::sync::OnceLock;

use thiserror::Error;

use crate::exec::Execution;
use crate::figures::FiguresError;
use crate::repcore::{Partition, Permutation, RepError, SpinSector};

pub use linalg::{inv_sqrt_on_support, sqrt_fidelity, sqrt_psd, trace_distance, DEFAULT_NULL_TOL};
pub use operator::{CMatrix, DenseOperator, Eigh, OperatorDump};
pub use perm::{conjugate_by_permutation, permutation_index_map, permutation_operator, young_projector};
pub use povm::{convert_to_deterministic, PovmSet};
pub use spectral::{SpectralBlock, SpectralDecomposition};

/// Largest Hilbert-space dimension the simulator will build by default.
pub const DEFAULT_MAX_DIM: usize = 4096;
/// Largest number of factors for a Young projector (sum over `n!` terms).
pub const DEFAULT_MAX_PROJECTOR_PARTIES: usize = 7;
/// Environment variable overriding [`DEFAULT_MAX_DIM`].
pub const MAX_DIM_ENV: &str = "PBT_MAX_DIM";

#[derive(Debug, Error)]
pub enum SimError {
    #[error("resource cap: {what} needs {requested}, cap is {cap}")]
    ResourceCap { what: String, requested: usize, cap: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("operator is not positive semidefinite (eigenvalue {min:e}, largest {max:e})")]
    NotPsd { min: f64, max: f64 },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("spectral labelling failed: {0}")]
    Labelling(String),
    #[error("{0}")]
    Domain(String),
    #[error(transparent)]
    Figures(#[from] FiguresError),
    #[error(transparent)]
    Rep(#[from] RepError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_dim: usize,
    pub max_projector_parties: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_dim: DEFAULT_MAX_DIM,
            max_projector_parties: DEFAULT_MAX_PROJECTOR_PARTIES,
        }
    }
}

impl Limits {
    /// Defaults, with `max_dim` taken from `PBT_MAX_DIM` when it parses.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Some(v) = std::env::var(MAX_DIM_ENV).ok().and_then(|s| s.trim().parse().ok()) {
            limits.max_dim = v;
        }
        limits
    }

    pub fn check_dim(&self, local_dim: usize, parties: usize) -> Result<(), SimError> {
        let dim = local_dim.checked_pow(parties as u32).unwrap_or(usize::MAX);
        if dim > self.max_dim {
            return Err(SimError::ResourceCap {
                what: format!("{parties} factors of dimension {local_dim}"),
                requested: dim,
                cap: self.max_dim,
            });
        }
        Ok(())
    }

    pub fn check_projector(&self, parties: usize) -> Result<(), SimError> {
        if parties > self.max_projector_parties {
            return Err(SimError::ResourceCap {
                what: "Young projector factors".into(),
                requested: parties,
                cap: self.max_projector_parties,
            });
        }
        Ok(())
    }
}

/// Operator-level model of `N` ports of local dimension `d`.
///
/// `ρ`, its inverse square root and the square-root measurement are computed
/// once and cached.
#[derive(Debug)]
pub struct Simulator {
    ports: usize,
    dim: usize,
    exec: Execution,
    limits: Limits,
    rho: OnceLock<DenseOperator>,
    rho_inv_sqrt: OnceLock<DenseOperator>,
    srm: OnceLock<Vec<DenseOperator>>,
    pub(crate) spin: OnceLock<Vec<(SpinSector, DenseOperator)>>,
}

impl Simulator {
    pub fn new(ports: usize, dim: usize) -> Result<Self, SimError> {
        Self::with_config(ports, dim, Execution::default(), Limits::default())
    }

    pub fn with_config(ports: usize, dim: usize, exec: Execution, limits: Limits) -> Result<Self, SimError> {
        if ports == 0 || dim < 2 {
            return Err(SimError::Domain(format!(
                "need N ≥ 1 and d ≥ 2, got N = {ports}, d = {dim}"
            )));
        }
        limits.check_dim(dim, ports + 1)?;
        Ok(Simulator {
            ports,
            dim,
            exec,
            limits,
            rho: OnceLock::new(),
            rho_inv_sqrt: OnceLock::new(),
            srm: OnceLock::new(),
            spin: OnceLock::new(),
        })
    }

    pub fn ports(&self) -> usize {
        self.ports
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `N + 1`: the ports plus the input system.
    pub fn parties(&self) -> usize {
        self.ports + 1
    }

    pub fn execution(&self) -> Execution {
        self.exec
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    /// Transposition of ports `a` and `b` (1-based) acting on all `N + 1` factors.
    pub fn port_transposition(&self, a: usize, b: usize) -> Result<Permutation, SimError> {
        self.check_port(a)?;
        self.check_port(b)?;
        Ok(Permutation::transposition(self.parties(), a - 1, b - 1)?)
    }

    pub(crate) fn check_port(&self, i: usize) -> Result<(), SimError> {
        if i == 0 || i > self.ports {
            return Err(SimError::Domain(format!("port {i} is outside 1..={}", self.ports)));
        }
        Ok(())
    }

    /// Young projector on `α.size()` factors of this simulator's local dimension.
    pub fn young_projector(&self, alpha: &Partition) -> Result<DenseOperator, SimError> {
        young_projector(alpha, self.dim, self.exec, &self.limits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn caps_are_enforced() {
        assert!(matches!(Simulator::new(12, 2), Err(SimError::ResourceCap { .. })));
        assert!(Simulator::new(11, 2).is_ok());
        assert!(Simulator::new(6, 3).is_ok());
        assert!(Simulator::new(7, 3).is_err());
        let tight = Limits {
            max_dim: 8,
            max_projector_parties: 7,
        };
        assert!(Simulator::with_config(3, 2, Execution::Sequential, tight).is_err());
        assert!(Limits::default().check_projector(8).is_err());
    }
}
