use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{gl_multiplicity, sym_dimension, Partition, RepError};

/// `γ_μ(α) = N m_μ d_α / (m_α d_μ)`, the scaled eigenvalue of `ρ` on the
/// block labelled by `α ⊢ N-1` and its single-box extension `μ ⊢ N`.
///
/// The eigenvalue itself is `γ_μ(α) / dim^N`.
pub fn gamma(alpha: &Partition, mu: &Partition, ports: usize, dim: usize) -> Result<BigRational, RepError> {
    if ports == 0 || alpha.size() + 1 != ports || mu.size() != ports {
        return Err(RepError::Domain(format!(
            "gamma needs α ⊢ N-1 and μ ⊢ N with N = {ports}, got α = {alpha}, μ = {mu}"
        )));
    }
    if !alpha.add_box().contains(mu) {
        return Err(RepError::Domain(format!(
            "{mu} is not a single-box extension of {alpha}"
        )));
    }
    let m_alpha = gl_multiplicity(alpha, dim);
    let m_mu = gl_multiplicity(mu, dim);
    if m_alpha.is_zero() {
        return Err(RepError::Domain(format!(
            "{alpha} is not admissible at dimension {dim}"
        )));
    }
    if m_mu.is_zero() {
        return Err(RepError::Domain(format!("{mu} is not admissible at dimension {dim}")));
    }
    let num = BigInt::from(ports) * BigInt::from(m_mu) * BigInt::from(sym_dimension(alpha));
    let den = BigInt::from(m_alpha) * BigInt::from(sym_dimension(mu));
    Ok(BigRational::new(num, den))
}

/// Maximum of [`gamma`] over the admissible single-box extensions of `α`,
/// together with the maximising frame. Ties go to the lexicographically larger
/// frame.
pub fn gamma_star(alpha: &Partition, ports: usize, dim: usize) -> Result<(BigRational, Partition), RepError> {
    let mut best: Option<(BigRational, Partition)> = None;
    // add_box is already in decreasing lexicographic order
    for mu in alpha.add_box().into_iter().filter(|m| m.admissible(dim)) {
        let g = gamma(alpha, &mu, ports, dim)?;
        if best.as_ref().is_none_or(|(b, _)| g > *b) {
            best = Some((g, mu));
        }
    }
    best.ok_or_else(|| RepError::Domain(format!("{alpha} has no admissible extension at dimension {dim}")))
}
