use nalgebra::DVector;
use num_complex::Complex64;

use super::operator::{CMatrix, DenseOperator, Eigh};
use super::SimError;

/// Eigenvalues below this fraction of the largest are treated as zero.
pub const DEFAULT_NULL_TOL: f64 = 1e-12;

const PSD_TOL: f64 = 1e-8;

fn checked_spectrum(a: &DenseOperator) -> Result<(Eigh, f64), SimError> {
    let eig = a.eigh();
    let max = eig.values.iter().copied().fold(0.0, f64::max);
    let min = eig.values.iter().copied().fold(f64::INFINITY, f64::min);
    if min < -PSD_TOL * max.max(min.abs()) {
        return Err(SimError::NotPsd { min, max });
    }
    Ok((eig, max))
}

fn apply_spectral(a: &DenseOperator, eig: &Eigh, f: impl Fn(f64) -> f64) -> DenseOperator {
    let u = &eig.vectors;
    let w = DVector::from_iterator(eig.values.len(), eig.values.iter().map(|&x| Complex64::new(f(x), 0.0)));
    let mut scaled: CMatrix = u.clone();
    for (k, mut col) in scaled.column_iter_mut().enumerate() {
        col *= w[k];
    }
    DenseOperator::from_parts(a.parties(), a.local_dim(), &scaled * u.adjoint())
}

/// `A^{-1/2}` restricted to the support of `A`: eigenvalues below
/// `rel_tol · λ_max` count as the null space and map to zero.
pub fn inv_sqrt_on_support(a: &DenseOperator, rel_tol: f64) -> Result<DenseOperator, SimError> {
    let (eig, max) = checked_spectrum(a)?;
    let cut = rel_tol * max;
    Ok(apply_spectral(a, &eig, |x| {
        if max > 0.0 && x > cut {
            1.0 / x.sqrt()
        } else {
            0.0
        }
    }))
}

/// Positive square root of a PSD operator.
pub fn sqrt_psd(a: &DenseOperator) -> Result<DenseOperator, SimError> {
    let (eig, _) = checked_spectrum(a)?;
    Ok(apply_spectral(a, &eig, |x| x.max(0.0).sqrt()))
}

/// `tr √(√a b √a)`.
pub fn sqrt_fidelity(a: &DenseOperator, b: &DenseOperator) -> Result<f64, SimError> {
    a.check_shape(b)?;
    let s = sqrt_psd(a)?;
    let inner = &(&s * b) * &s;
    let (eig, _) = checked_spectrum(&inner)?;
    Ok(eig.values.iter().map(|&x| x.max(0.0).sqrt()).sum())
}

/// `(1/2) tr|a - b|`.
pub fn trace_distance(a: &DenseOperator, b: &DenseOperator) -> Result<f64, SimError> {
    a.check_shape(b)?;
    let eig = (a - b).eigh();
    Ok(0.5 * eig.values.iter().map(|x| x.abs()).sum::<f64>())
}
