use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;

use super::analytic::{resolve_vector, scaled_root};
use super::{check_args, FiguresError};
use crate::figures::OptVector;
use crate::repcore::{enumerate_partitions, factorial, gl_multiplicity, sym_dimension, SpinSector};
use crate::report::rational_to_f64;

/// Unordered pairs of resource states whose square-root fidelity is known.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OverlapPair {
    /// Optimal probabilistic vs optimal deterministic resource.
    OptPVsOptD,
    /// Maximally entangled vs optimal probabilistic resource.
    NonOptVsOptP,
    /// Maximally entangled vs optimal deterministic resource.
    NonOptVsOptD,
}

impl OverlapPair {
    pub const ALL: [OverlapPair; 3] = [
        OverlapPair::OptPVsOptD,
        OverlapPair::NonOptVsOptP,
        OverlapPair::NonOptVsOptD,
    ];

    pub fn name(self) -> &'static str {
        match self {
            OverlapPair::OptPVsOptD => "optP_vs_optD",
            OverlapPair::NonOptVsOptP => "nonopt_vs_optP",
            OverlapPair::NonOptVsOptD => "nonopt_vs_optD",
        }
    }

    /// Whether the optimal deterministic resource takes part.
    pub fn needs_vector(self) -> bool {
        !matches!(self, OverlapPair::NonOptVsOptP)
    }
}

impl fmt::Display for OverlapPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OverlapPair {
    type Err = FiguresError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        OverlapPair::ALL
            .into_iter()
            .find(|p| p.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| FiguresError::Domain(format!("unknown overlap pair {s:?}")))
    }
}

/// `g(N) = 1 / Σ_ν m_ν²`.
fn inverse_square_sum(ports: usize, dim: usize) -> f64 {
    let total: BigUint = enumerate_partitions(ports, Some(dim))
        .iter()
        .map(|nu| {
            let m = gl_multiplicity(nu, dim);
            &m * &m
        })
        .sum();
    rational_to_f64(&BigRational::new(1.into(), total.into()))
}

/// √F from the block-diagonal optimiser operators, valid for every `d`.
pub fn resource_overlap_general(
    pair: OverlapPair,
    ports: usize,
    dim: usize,
    v: Option<&OptVector>,
) -> Result<f64, FiguresError> {
    check_args(ports, dim)?;
    let vec = if pair.needs_vector() {
        Some(resolve_vector(v, ports, dim, pair.name())?)
    } else {
        None
    };
    let g = inverse_square_sum(ports, dim);
    let mut total = 0.0;
    for mu in enumerate_partitions(ports, Some(dim)) {
        let d_mu = sym_dimension(&mu);
        let m_mu = gl_multiplicity(&mu, dim);
        let m = rational_to_f64(&BigRational::from_integer(m_mu.clone().into()));
        let v_mu = vec.as_ref().map_or(0.0, |v| v.get(&mu));
        total += match pair {
            OverlapPair::OptPVsOptD => v_mu * m * g.sqrt(),
            OverlapPair::NonOptVsOptP => m * g.sqrt() * scaled_root(&d_mu, &m_mu, ports, dim),
            OverlapPair::NonOptVsOptD => v_mu * scaled_root(&d_mu, &m_mu, ports, dim),
        };
    }
    Ok(total)
}

/// `N! / ((N/2-j)! (N/2+j+1)!)` times `extra`, exactly, as a float.
fn spin_ratio(sector: &SpinSector, extra: BigRational) -> f64 {
    let n = sector.ports;
    let lo = (n - sector.two_j) / 2;
    let hi = (n + sector.two_j) / 2 + 1;
    let r = BigRational::new(BigInt::from(factorial(n)), BigInt::from(factorial(lo) * factorial(hi)));
    rational_to_f64(&(r * extra))
}

fn two_pow(k: usize) -> BigInt {
    BigInt::from(BigUint::from(2u8).pow(k as u32))
}

/// Qubit closed forms written in terms of spin sectors.
pub fn resource_overlap_qubit(pair: OverlapPair, ports: usize) -> f64 {
    let n = ports;
    let sectors = SpinSector::all(n);
    let angle = |s: &SpinSector| PI * s.multiplicity() as f64 / (n + 2) as f64;
    match pair {
        OverlapPair::OptPVsOptD => {
            let pre = 2.0 / (n + 2) as f64 * (6.0 / ((n + 1) * (n + 3)) as f64).sqrt();
            pre * sectors
                .iter()
                .map(|s| s.multiplicity() as f64 * angle(s).sin())
                .sum::<f64>()
        }
        OverlapPair::NonOptVsOptP => {
            let extra = BigRational::new(BigInt::from(6), two_pow(n) * BigInt::from((n + 1) * (n + 2) * (n + 3)));
            sectors
                .iter()
                .map(|s| {
                    let m = s.multiplicity() as f64;
                    m * m * spin_ratio(s, extra.clone()).sqrt()
                })
                .sum()
        }
        OverlapPair::NonOptVsOptD => {
            let extra = BigRational::new(BigInt::from(4), two_pow(n) * BigInt::from(n + 2));
            sectors
                .iter()
                .map(|s| s.multiplicity() as f64 * angle(s).sin() * spin_ratio(s, extra.clone()).sqrt())
                .sum()
        }
    }
}

/// The non-optimal vs optimal probabilistic qubit overlap with the `N!`
/// factor left out of the square root. Kept for comparison only; it is not a
/// fidelity and is far below the true overlap.
pub fn nonopt_vs_opt_p_as_printed(ports: usize) -> f64 {
    let n = ports;
    let extra = BigRational::new(BigInt::from(6), two_pow(n) * BigInt::from((n + 1) * (n + 2) * (n + 3)));
    let n_fact = BigRational::from_integer(BigInt::from(factorial(n)));
    SpinSector::all(n)
        .iter()
        .map(|s| {
            let m = s.multiplicity() as f64;
            m * m * spin_ratio(s, extra.clone() / n_fact.clone()).sqrt()
        })
        .sum()
}

/// √F between two resource states: the spin closed form for qubits when no
/// vector is supplied, the general block sum otherwise.
pub fn resource_overlap(
    pair: OverlapPair,
    ports: usize,
    dim: usize,
    v: Option<&OptVector>,
) -> Result<f64, FiguresError> {
    check_args(ports, dim)?;
    if dim == 2 && v.is_none() {
        return Ok(resource_overlap_qubit(pair, ports));
    }
    resource_overlap_general(pair, ports, dim, v)
}
