use num_complex::Complex64;

use super::operator::{CMatrix, DenseOperator};
use super::{Limits, SimError};
use crate::exec::Execution;
use crate::repcore::{character, factorial, sym_dimension, Partition, Permutation};
use crate::report::rational_to_f64;

/// Image of basis index `x` under `V(π)`: the content of factor `k` moves to
/// factor `π(k)`.
pub(crate) fn permute_index(pi: &Permutation, local_dim: usize, x: usize) -> usize {
    let n = pi.degree();
    let mut digits = [0usize; 64];
    let mut rest = x;
    for k in (0..n).rev() {
        digits[k] = rest % local_dim;
        rest /= local_dim;
    }
    let mut out = [0usize; 64];
    for k in 0..n {
        out[pi.apply(k)] = digits[k];
    }
    out[..n].iter().fold(0, |acc, &x| acc * local_dim + x)
}

/// `map[x]` is the basis index that `V(π)` sends `x` to.
pub fn permutation_index_map(pi: &Permutation, local_dim: usize) -> Vec<usize> {
    let dim = local_dim.pow(pi.degree() as u32);
    (0..dim).map(|x| permute_index(pi, local_dim, x)).collect()
}

/// The 0/1 matrix `V(π)` on `(ℂ^d)^{⊗n}` with `n = π.degree()`.
pub fn permutation_operator(pi: &Permutation, local_dim: usize, limits: &Limits) -> Result<DenseOperator, SimError> {
    let n = pi.degree();
    limits.check_dim(local_dim, n)?;
    let dim = local_dim.pow(n as u32);
    let mut m = CMatrix::zeros(dim, dim);
    for (x, y) in permutation_index_map(pi, local_dim).into_iter().enumerate() {
        m[(y, x)] = Complex64::new(1.0, 0.0);
    }
    Ok(DenseOperator::from_parts(n, local_dim, m))
}

/// `V(π) A V(π)†` by relabelling entries.
pub fn conjugate_by_permutation(op: &DenseOperator, pi: &Permutation) -> Result<DenseOperator, SimError> {
    if pi.degree() != op.parties() {
        return Err(SimError::DimensionMismatch(format!(
            "permutation of {} factors applied to an operator on {}",
            pi.degree(),
            op.parties()
        )));
    }
    let map = permutation_index_map(pi, op.local_dim());
    let dim = op.dim();
    let src = op.matrix();
    let mut m = CMatrix::zeros(dim, dim);
    for x in 0..dim {
        for y in 0..dim {
            m[(map[x], map[y])] = src[(x, y)];
        }
    }
    Ok(DenseOperator::from_parts(op.parties(), op.local_dim(), m))
}

/// `P_α = (d_α/n!) Σ_σ χ^α(σ^{-1}) V(σ)`, accumulated column by column.
pub fn young_projector(
    alpha: &Partition,
    local_dim: usize,
    exec: Execution,
    limits: &Limits,
) -> Result<DenseOperator, SimError> {
    let n = alpha.size();
    limits.check_projector(n)?;
    limits.check_dim(local_dim, n)?;
    let dim = local_dim.pow(n as u32);
    if alpha.height() > local_dim {
        return Ok(DenseOperator::zeros(n, local_dim));
    }
    let scale = rational_to_f64(&num_rational::BigRational::new(
        sym_dimension(alpha).into(),
        factorial(n).into(),
    ));
    let perms = Permutation::all(n);
    // characters are class functions and real, so χ(σ^{-1}) = χ(σ)
    let coeffs = perms
        .iter()
        .map(|p| Ok(scale * rational_to_f64(&character(alpha, &p.cycle_type())?.into())))
        .collect::<Result<Vec<f64>, SimError>>()?;
    let terms: Vec<(&Permutation, f64)> = perms.iter().zip(coeffs).filter(|(_, c)| *c != 0.0).collect();
    let mut m = CMatrix::zeros(dim, dim);
    exec.for_each_chunk_mut(m.as_mut_slice(), dim, |x, column| {
        for (p, c) in &terms {
            column[permute_index(p, local_dim, x)] += Complex64::new(*c, 0.0);
        }
    });
    Ok(DenseOperator::from_parts(n, local_dim, m))
}
