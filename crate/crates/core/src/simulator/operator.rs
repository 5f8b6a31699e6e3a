use std::ops::{Add, Mul, Sub};

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use serde::Serialize;

use super::SimError;
use crate::exec::Execution;

pub type CMatrix = DMatrix<Complex64>;

/// Square complex matrix on `(ℂ^d)^{⊗n}`. Factor 1 is the most significant
/// digit of the basis index.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseOperator {
    parties: usize,
    local_dim: usize,
    matrix: CMatrix,
}

/// Eigenvalues in ascending order with matching eigenvector columns.
#[derive(Clone, Debug)]
pub struct Eigh {
    pub values: DVector<f64>,
    pub vectors: CMatrix,
}

impl DenseOperator {
    pub fn new(parties: usize, local_dim: usize, matrix: CMatrix) -> Result<Self, SimError> {
        let dim = local_dim.pow(parties as u32);
        if matrix.nrows() != dim || matrix.ncols() != dim {
            return Err(SimError::DimensionMismatch(format!(
                "{}x{} matrix cannot act on {parties} parties of dimension {local_dim}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        Ok(DenseOperator {
            parties,
            local_dim,
            matrix,
        })
    }

    pub(crate) fn from_parts(parties: usize, local_dim: usize, matrix: CMatrix) -> Self {
        debug_assert_eq!(matrix.nrows(), local_dim.pow(parties as u32));
        DenseOperator {
            parties,
            local_dim,
            matrix,
        }
    }

    pub fn identity(parties: usize, local_dim: usize) -> Self {
        let dim = local_dim.pow(parties as u32);
        Self::from_parts(parties, local_dim, CMatrix::identity(dim, dim))
    }

    pub fn zeros(parties: usize, local_dim: usize) -> Self {
        let dim = local_dim.pow(parties as u32);
        Self::from_parts(parties, local_dim, CMatrix::zeros(dim, dim))
    }

    pub fn parties(&self) -> usize {
        self.parties
    }

    pub fn local_dim(&self) -> usize {
        self.local_dim
    }

    /// `d^n`.
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    pub fn same_shape(&self, other: &DenseOperator) -> bool {
        self.parties == other.parties && self.local_dim == other.local_dim
    }

    pub(crate) fn check_shape(&self, other: &DenseOperator) -> Result<(), SimError> {
        if self.same_shape(other) {
            Ok(())
        } else {
            Err(SimError::DimensionMismatch(format!(
                "operators on {}x(C^{}) and {}x(C^{})",
                self.parties, self.local_dim, other.parties, other.local_dim
            )))
        }
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.trace()
    }

    /// `tr(AB)` without forming the product.
    pub fn trace_product(&self, other: &DenseOperator) -> Complex64 {
        let n = self.dim();
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..n {
            for j in 0..n {
                acc += self.matrix[(i, j)] * other.matrix[(j, i)];
            }
        }
        acc
    }

    pub fn adjoint(&self) -> Self {
        Self::from_parts(self.parties, self.local_dim, self.matrix.adjoint())
    }

    pub fn transpose(&self) -> Self {
        Self::from_parts(self.parties, self.local_dim, self.matrix.transpose())
    }

    pub fn conjugate(&self) -> Self {
        Self::from_parts(self.parties, self.local_dim, self.matrix.conjugate())
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self::from_parts(self.parties, self.local_dim, self.matrix.scale(factor))
    }

    /// `(A + A†)/2`.
    pub fn hermitian_part(&self) -> Self {
        let m = (&self.matrix + self.matrix.adjoint()).scale(0.5);
        Self::from_parts(self.parties, self.local_dim, m)
    }

    /// Largest entrywise modulus of `A - B`.
    pub fn max_abs_diff(&self, other: &DenseOperator) -> f64 {
        (&self.matrix - &other.matrix)
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn hermiticity_residual(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    /// Eigendecomposition of the Hermitian part, ascending.
    pub fn eigh(&self) -> Eigh {
        let eig = SymmetricEigen::new(self.hermitian_part().matrix);
        let n = eig.eigenvalues.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let values = DVector::from_iterator(n, order.iter().map(|&k| eig.eigenvalues[k]));
        let mut vectors = CMatrix::zeros(n, n);
        for (dst, &src) in order.iter().enumerate() {
            vectors.set_column(dst, &eig.eigenvectors.column(src));
        }
        Eigh { values, vectors }
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigh().values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// `A ⊗ B`, with `B` on the trailing factors.
    pub fn kron(&self, other: &DenseOperator) -> Result<Self, SimError> {
        if self.local_dim != other.local_dim {
            return Err(SimError::DimensionMismatch(format!(
                "local dimensions {} and {} differ",
                self.local_dim, other.local_dim
            )));
        }
        Ok(Self::from_parts(
            self.parties + other.parties,
            self.local_dim,
            self.matrix.kronecker(&other.matrix),
        ))
    }

    /// `A ⊗ 𝟙` on `extra` more trailing factors.
    pub fn extend(&self, extra: usize) -> Self {
        self.kron(&DenseOperator::identity(extra, self.local_dim))
            .expect("same local dimension")
    }

    /// Product using column blocks spread over `exec`.
    pub fn mul_with(&self, other: &DenseOperator, exec: Execution) -> Self {
        assert!(self.same_shape(other), "operator shapes differ");
        Self::from_parts(self.parties, self.local_dim, matmul(&self.matrix, &other.matrix, exec))
    }

    /// `A X A†`.
    pub fn sandwich(&self, inner: &DenseOperator, exec: Execution) -> Self {
        self.mul_with(inner, exec).mul_with(&self.adjoint(), exec)
    }

    /// Row-major `(re, im)` dump with an `(n, d, label)` header.
    pub fn dump(&self, label: &str) -> OperatorDump {
        let n = self.dim();
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let z = self.matrix[(i, j)];
                entries.push([z.re, z.im]);
            }
        }
        OperatorDump {
            n: self.parties,
            d: self.local_dim,
            label: label.to_string(),
            dim: n,
            entries,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OperatorDump {
    pub n: usize,
    pub d: usize,
    pub label: String,
    pub dim: usize,
    pub entries: Vec<[f64; 2]>,
}

const COLUMN_BLOCK: usize = 16;

/// `A B` with the columns of `B` processed in blocks.
pub(crate) fn matmul(a: &CMatrix, b: &CMatrix, exec: Execution) -> CMatrix {
    let rows = a.nrows();
    let cols = b.ncols();
    if exec.effective() == Execution::Sequential || cols <= COLUMN_BLOCK {
        return a * b;
    }
    let mut out = CMatrix::zeros(rows, cols);
    exec.for_each_chunk_mut(out.as_mut_slice(), rows * COLUMN_BLOCK, |k, chunk| {
        let start = k * COLUMN_BLOCK;
        let width = chunk.len() / rows;
        let block = a * b.columns(start, width);
        chunk.copy_from_slice(block.as_slice());
    });
    out
}

impl Add for &DenseOperator {
    type Output = DenseOperator;

    fn add(self, rhs: &DenseOperator) -> DenseOperator {
        assert!(self.same_shape(rhs), "operator shapes differ");
        DenseOperator::from_parts(self.parties, self.local_dim, &self.matrix + &rhs.matrix)
    }
}

impl Sub for &DenseOperator {
    type Output = DenseOperator;

    fn sub(self, rhs: &DenseOperator) -> DenseOperator {
        assert!(self.same_shape(rhs), "operator shapes differ");
        DenseOperator::from_parts(self.parties, self.local_dim, &self.matrix - &rhs.matrix)
    }
}

impl Mul for &DenseOperator {
    type Output = DenseOperator;

    fn mul(self, rhs: &DenseOperator) -> DenseOperator {
        assert!(self.same_shape(rhs), "operator shapes differ");
        DenseOperator::from_parts(self.parties, self.local_dim, &self.matrix * &rhs.matrix)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn eigh_sorts_ascending() {
        let m = CMatrix::from_diagonal(&DVector::from_vec(vec![c(3.0), c(-1.0), c(2.0), c(0.0)]));
        let op = DenseOperator::new(2, 2, m).unwrap();
        let e = op.eigh();
        assert_eq!(e.values.as_slice(), &[-1.0, 0.0, 2.0, 3.0]);
        assert!((op.min_eigenvalue() + 1.0).abs() < 1e-15);
    }

    #[test]
    fn shape_is_checked() {
        assert!(DenseOperator::new(2, 2, CMatrix::identity(3, 3)).is_err());
        let a = DenseOperator::identity(1, 2);
        assert!(a.check_shape(&DenseOperator::identity(2, 2)).is_err());
        assert_eq!(a.extend(2).dim(), 8);
    }

    #[test]
    fn blocked_product_matches() {
        let n = 40;
        let a = CMatrix::from_fn(n, n, |i, j| {
            Complex64::new((i * 3 + j) as f64 % 7.0, (i as f64 - j as f64) / 5.0)
        });
        let b = CMatrix::from_fn(n, n, |i, j| {
            Complex64::new((i + 2 * j) as f64 % 5.0, 1.0 / (1.0 + (i + j) as f64))
        });
        let seq = matmul(&a, &b, Execution::Sequential);
        let par = matmul(&a, &b, Execution::Parallel);
        assert!((seq - par).iter().all(|z| z.norm() < 1e-12));
    }

    #[test]
    fn trace_product_matches_product_trace() {
        let a = DenseOperator::new(1, 3, CMatrix::from_fn(3, 3, |i, j| Complex64::new(i as f64, j as f64))).unwrap();
        let b = a.adjoint();
        assert!(((&a * &b).trace() - a.trace_product(&b)).norm() < 1e-12);
    }
}
