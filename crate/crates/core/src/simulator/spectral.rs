use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::linalg::DEFAULT_NULL_TOL;
use super::operator::{CMatrix, DenseOperator};
use super::{SimError, Simulator};
use crate::repcore::{enumerate_partitions, gamma, gl_multiplicity, sym_dimension, Partition};
use crate::report::rational_to_f64;

/// Relative tolerance for grouping numerical eigenvalues.
const GROUP_TOL: f64 = 1e-9;

/// One eigenspace of `ρ`. `labels` lists every `(α, μ)` whose predicted
/// eigenvalue falls here; it is empty for the null space.
#[derive(Clone, Debug)]
pub struct SpectralBlock {
    pub eigenvalue: f64,
    pub exact: Option<BigRational>,
    pub rank: usize,
    pub projector: DenseOperator,
    pub labels: Vec<(Partition, Partition)>,
}

#[derive(Clone, Debug)]
pub struct SpectralDecomposition {
    pub blocks: Vec<SpectralBlock>,
}

impl SpectralDecomposition {
    /// Total rank of the labelled (non-null) blocks.
    pub fn support_dimension(&self) -> usize {
        self.blocks
            .iter()
            .filter(|b| !b.labels.is_empty())
            .map(|b| b.rank)
            .sum()
    }

    /// `Σ λ P`.
    pub fn reconstruct(&self) -> DenseOperator {
        let first = &self.blocks[0].projector;
        self.blocks
            .iter()
            .fold(DenseOperator::zeros(first.parties(), first.local_dim()), |acc, b| {
                &acc + &b.projector.scale(b.eigenvalue)
            })
    }

    /// `max ‖P_a P_b - δ_ab P_a‖`.
    pub fn orthogonality_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, a) in self.blocks.iter().enumerate() {
            for (j, b) in self.blocks.iter().enumerate() {
                let prod = &a.projector * &b.projector;
                let r = if i == j {
                    prod.max_abs_diff(&a.projector)
                } else {
                    prod.max_abs_diff(&DenseOperator::zeros(prod.parties(), prod.local_dim()))
                };
                worst = worst.max(r);
            }
        }
        worst
    }
}

struct Predicted {
    dimension: BigUint,
    labels: Vec<(Partition, Partition)>,
}

impl Simulator {
    /// Exact eigenvalues `γ_μ(α)/d^N` with their total multiplicities.
    fn predicted_spectrum(&self) -> Result<BTreeMap<BigRational, Predicted>, SimError> {
        let scale = BigRational::from_integer(BigInt::from(BigUint::from(self.dim).pow(self.ports as u32)));
        let mut out: BTreeMap<BigRational, Predicted> = BTreeMap::new();
        for alpha in enumerate_partitions(self.ports - 1, Some(self.dim)) {
            let m_alpha = gl_multiplicity(&alpha, self.dim);
            for mu in alpha.add_box().into_iter().filter(|m| m.admissible(self.dim)) {
                let lambda = gamma(&alpha, &mu, self.ports, self.dim)? / &scale;
                let block = sym_dimension(&mu) * &m_alpha;
                let entry = out.entry(lambda).or_insert_with(|| Predicted {
                    dimension: BigUint::from(0u8),
                    labels: Vec::new(),
                });
                entry.dimension += block;
                entry.labels.push((alpha.clone(), mu));
            }
        }
        Ok(out)
    }

    /// Eigenspaces of `ρ`, each matched to its predicted `(α, μ)` labels.
    pub fn spectral_decompose_rho(&self) -> Result<SpectralDecomposition, SimError> {
        let eig = self.rho()?.eigh();
        let values = eig.values.as_slice();
        let lambda_max = values.iter().copied().fold(0.0, f64::max);
        let mut groups: Vec<(usize, usize)> = Vec::new();
        let mut start = 0;
        for k in 1..=values.len() {
            if k == values.len() || values[k] - values[start] > GROUP_TOL * lambda_max {
                groups.push((start, k));
                start = k;
            }
        }

        let mut predicted = self.predicted_spectrum()?;
        let mut blocks = Vec::with_capacity(groups.len());
        for (lo, hi) in groups {
            let rank = hi - lo;
            let mean = values[lo..hi].iter().sum::<f64>() / rank as f64;
            let mut proj = CMatrix::zeros(values.len(), values.len());
            for k in lo..hi {
                let col = eig.vectors.column(k);
                proj += col * col.adjoint();
            }
            let projector = DenseOperator::from_parts(self.parties(), self.dim, proj);
            if mean.abs() <= DEFAULT_NULL_TOL.max(GROUP_TOL) * lambda_max {
                blocks.push(SpectralBlock {
                    eigenvalue: 0.0,
                    exact: None,
                    rank,
                    projector,
                    labels: Vec::new(),
                });
                continue;
            }
            let hit = predicted
                .iter()
                .find(|(lambda, p)| {
                    (rational_to_f64(lambda) - mean).abs() <= GROUP_TOL * lambda_max
                        && p.dimension.to_usize() == Some(rank)
                })
                .map(|(lambda, _)| lambda.clone());
            let Some(lambda) = hit else {
                return Err(SimError::Labelling(format!(
                    "eigenvalue {mean:.12} with multiplicity {rank} matches no predicted block"
                )));
            };
            let p = predicted.remove(&lambda).expect("key was just found");
            blocks.push(SpectralBlock {
                eigenvalue: mean,
                exact: Some(lambda),
                rank,
                projector,
                labels: p.labels,
            });
        }
        if let Some((lambda, p)) = predicted.into_iter().next() {
            return Err(SimError::Labelling(format!(
                "predicted eigenvalue {lambda} of multiplicity {} was not found",
                p.dimension
            )));
        }
        Ok(SpectralDecomposition { blocks })
    }
}
