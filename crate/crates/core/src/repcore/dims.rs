use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::{Partition, RepError};

pub(crate) fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

pub(crate) fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Dimension of the symmetric-group irrep labelled by `p` (hook-length formula).
pub fn sym_dimension(p: &Partition) -> BigUint {
    let hooks = p
        .boxes()
        .fold(BigUint::one(), |acc, (i, j)| acc * BigUint::from(p.hook(i, j)));
    factorial(p.size()) / hooks
}

/// Dimension of the `GL_dim` irrep labelled by `p` (hook-content formula);
/// zero when `p` has more than `dim` rows.
pub fn gl_multiplicity(p: &Partition, dim: usize) -> BigUint {
    if !p.admissible(dim) {
        return BigUint::zero();
    }
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for (i, j) in p.boxes() {
        // content j - i is at least 1 - dim here
        num *= BigUint::from(dim + j - i);
        den *= BigUint::from(p.hook(i, j));
    }
    num / den
}

/// Dimension/multiplicity pair of one Schur–Weyl block at local dimension `dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrrepData {
    pub partition: Partition,
    pub sym_dim: BigUint,
    pub gl_mult: BigUint,
    pub local_dim: usize,
}

impl IrrepData {
    pub fn new(partition: Partition, local_dim: usize) -> Self {
        let sym_dim = sym_dimension(&partition);
        let gl_mult = gl_multiplicity(&partition, local_dim);
        IrrepData {
            partition,
            sym_dim,
            gl_mult,
            local_dim,
        }
    }
}

/// Qubit spin sector with total spin `j = two_j / 2` of `ports` spin-1/2 particles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SpinSector {
    pub ports: usize,
    pub two_j: usize,
}

impl SpinSector {
    pub fn new(ports: usize, two_j: usize) -> Result<Self, RepError> {
        if two_j > ports || !(ports - two_j).is_multiple_of(2) {
            return Err(RepError::BadSpin { ports, two_j });
        }
        Ok(SpinSector { ports, two_j })
    }

    /// All sectors `j = j_min, ..., N/2`, ascending in `j`.
    pub fn all(ports: usize) -> Vec<SpinSector> {
        (ports % 2..=ports)
            .step_by(2)
            .map(|two_j| SpinSector { ports, two_j })
            .collect()
    }

    pub fn j(&self) -> f64 {
        self.two_j as f64 / 2.0
    }

    /// `m_j = 2j + 1`.
    pub fn multiplicity(&self) -> usize {
        self.two_j + 1
    }

    /// `d_j = (2j+1) N! / ((N/2 - j)! (N/2 + j + 1)!)`.
    pub fn dimension(&self) -> BigUint {
        let lower = (self.ports - self.two_j) / 2;
        let upper = (self.ports + self.two_j) / 2 + 1;
        BigUint::from(self.two_j + 1) * factorial(self.ports) / (factorial(lower) * factorial(upper))
    }

    /// The two-row frame `(N/2 + j, N/2 - j)`.
    pub fn partition(&self) -> Partition {
        Partition::new(vec![(self.ports + self.two_j) / 2, (self.ports - self.two_j) / 2])
            .expect("spin sector rows are decreasing")
    }

    /// Inverse of [`SpinSector::partition`]; `None` for frames taller than two rows.
    pub fn from_partition(p: &Partition) -> Option<SpinSector> {
        if p.height() > 2 {
            return None;
        }
        let rows = p.rows();
        let first = rows.first().copied().unwrap_or(0);
        let second = rows.get(1).copied().unwrap_or(0);
        Some(SpinSector {
            ports: first + second,
            two_j: first - second,
        })
    }
}
