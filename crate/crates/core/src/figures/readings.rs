//! The two competing readings of the non-optimal probabilistic success
//! probability.
//!
//! Both are sums over `α ⊢ N-1`. One weighs each block by
//! `m_α² · min_μ d_μ/m_μ`, the other by `m_α d_α / γ*(α)`. With `γ*` taken as a
//! maximum the second is exactly `1/N` times the first. Only
//! [`VALIDATED`] is used by the rest of the crate; the brute-force simulator is
//! what decides between them (see the acceptance tests).

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;

use crate::repcore::{enumerate_partitions, gamma_star, gl_multiplicity, sym_dimension, RepError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SuccessReading {
    /// `(1/d^N) Σ_α m_α² min_{μ∈α} d_μ/m_μ`.
    MinRatio,
    /// `(1/d^N) Σ_α m_α d_α / γ*(α)`.
    InverseGammaStar,
}

pub const VALIDATED: SuccessReading = SuccessReading::MinRatio;

pub const ALL: [SuccessReading; 2] = [SuccessReading::MinRatio, SuccessReading::InverseGammaStar];

pub fn nonopt_success_probability(reading: SuccessReading, ports: usize, dim: usize) -> Result<BigRational, RepError> {
    if ports == 0 {
        return Err(RepError::Domain("need at least one port".into()));
    }
    let mut total = BigRational::zero();
    for alpha in enumerate_partitions(ports - 1, Some(dim)) {
        let m_alpha = BigInt::from(gl_multiplicity(&alpha, dim));
        let term = match reading {
            SuccessReading::MinRatio => {
                let min_ratio = alpha
                    .add_box()
                    .into_iter()
                    .filter(|mu| mu.admissible(dim))
                    .map(|mu| {
                        BigRational::new(
                            BigInt::from(sym_dimension(&mu)),
                            BigInt::from(gl_multiplicity(&mu, dim)),
                        )
                    })
                    .min()
                    .ok_or_else(|| RepError::Domain(format!("{alpha} has no admissible extension")))?;
                BigRational::from_integer(&m_alpha * &m_alpha) * min_ratio
            }
            SuccessReading::InverseGammaStar => {
                let (g, _) = gamma_star(&alpha, ports, dim)?;
                BigRational::from_integer(&m_alpha * BigInt::from(sym_dimension(&alpha))) / g
            }
        };
        total += term;
    }
    Ok(total / BigRational::from_integer(BigInt::from(BigUint::from(dim).pow(ports as u32))))
}
