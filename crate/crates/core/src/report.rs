use std::fmt;

use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::figures::ProtocolVariant;

/// A figure of merit, kept exact when the defining formula is rational.
#[derive(Clone, Debug, PartialEq)]
pub enum Merit {
    Exact(BigRational),
    Real(f64),
}

impl Merit {
    pub fn value(&self) -> f64 {
        match self {
            Merit::Exact(r) => rational_to_f64(r),
            Merit::Real(x) => *x,
        }
    }

    pub fn exact(&self) -> Option<&BigRational> {
        match self {
            Merit::Exact(r) => Some(r),
            Merit::Real(_) => None,
        }
    }

    /// `"p/q"` rendering for exact values.
    pub fn ratio_string(&self) -> Option<String> {
        self.exact().map(|r| {
            if r.is_integer() {
                r.numer().to_string()
            } else {
                format!("{}/{}", r.numer(), r.denom())
            }
        })
    }
}

impl From<BigRational> for Merit {
    fn from(r: BigRational) -> Self {
        Merit::Exact(r)
    }
}

impl From<f64> for Merit {
    fn from(x: f64) -> Self {
        Merit::Real(x)
    }
}

pub(crate) fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Provenance {
    Analytic,
    Simulated,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Analytic => "analytic",
            Provenance::Simulated => "simulated",
        })
    }
}

/// `(p_succ, F, F_det)` for one protocol at one `(N, d)`.
#[derive(Clone, Debug, PartialEq)]
pub struct MeritReport {
    pub variant: ProtocolVariant,
    pub ports: usize,
    pub dim: usize,
    pub p_succ: Merit,
    /// Entanglement fidelity conditioned on success.
    pub fidelity: Option<Merit>,
    /// Unconditioned fidelity `F·p_succ`.
    pub det_fidelity: Option<Merit>,
    pub provenance: Provenance,
}
