//! Small dense Hermitian matrices and their eigendecompositions.
//!
//! Everything here is desk scale: the eigensolver contract stops at dim 512,
//! which covers every matrix the library builds (Gram matrices up to 256,
//! ensembles up to dim 512).

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Maximum dimension accepted by [`HermitianMatrix::eigh`].
pub const MAX_EIG_DIM: usize = 512;

const HERMITICITY_TOL: f64 = 1e-12;

/// A complex matrix with `A[i][j] = conj(A[j][i])` enforced at construction.
///
/// The input is validated against a 1e-12 asymmetry tolerance and then
/// symmetrized exactly, so the stored entries satisfy the invariant bit-wise.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    entries: DMatrix<Complex64>,
}

/// Eigendecomposition with real eigenvalues sorted descending and orthonormal
/// eigenvector columns in matching order.
#[derive(Debug, Clone)]
pub struct Eigh {
    pub values: Vec<f64>,
    pub vectors: DMatrix<Complex64>,
}

impl HermitianMatrix {
    /// Validates and wraps a square complex matrix.
    pub fn new(entries: DMatrix<Complex64>) -> Result<Self> {
        if entries.nrows() != entries.ncols() {
            return Err(Error::domain(format!(
                "matrix must be square, got {}x{}",
                entries.nrows(),
                entries.ncols()
            )));
        }
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::domain("matrix entries must be finite".to_string()));
        }
        let mut asym = 0.0f64;
        for i in 0..entries.nrows() {
            for j in i..entries.ncols() {
                let d = entries[(i, j)] - entries[(j, i)].conj();
                asym = asym.max(d.norm());
            }
        }
        if asym > HERMITICITY_TOL {
            return Err(Error::NotHermitian(asym));
        }
        let adjoint = entries.adjoint();
        let entries = (entries + adjoint).scale(0.5);
        Ok(HermitianMatrix { entries })
    }

    /// Wraps a real symmetric matrix.
    pub fn from_real(entries: DMatrix<f64>) -> Result<Self> {
        Self::new(entries.map(|x| Complex64::new(x, 0.0)))
    }

    pub fn identity(dim: usize) -> Self {
        HermitianMatrix {
            entries: DMatrix::identity(dim, dim),
        }
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        HermitianMatrix {
            entries: DMatrix::from_diagonal(&DVector::from_iterator(
                diag.len(),
                diag.iter().map(|&x| Complex64::new(x, 0.0)),
            )),
        }
    }

    /// The rank-one projector-like outer product `v v†`.
    pub fn outer(v: &DVector<Complex64>) -> Self {
        HermitianMatrix {
            entries: v * v.adjoint(),
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.entries
    }

    /// Real trace (the imaginary part is identically zero by the invariant).
    pub fn trace(&self) -> f64 {
        self.entries.trace().re
    }

    /// `⟨v|A|v⟩`, real by Hermiticity.
    pub fn expectation(&self, v: &DVector<Complex64>) -> f64 {
        (v.adjoint() * &self.entries * v)[(0, 0)].re
    }

    /// Eigendecomposition with eigenvalues sorted descending.
    ///
    /// The reconstruction residual is at the 1e-14·‖A‖ level for the dims in
    /// scope; the contract caps the dimension at [`MAX_EIG_DIM`].
    pub fn eigh(&self) -> Result<Eigh> {
        let dim = self.dim();
        if dim == 0 || dim > MAX_EIG_DIM {
            return Err(Error::domain(format!(
                "eigh supports dimensions 1..={MAX_EIG_DIM}, got {dim}"
            )));
        }
        let decomp = self
            .entries
            .clone()
            .try_symmetric_eigen(f64::EPSILON, 0)
            .ok_or_else(|| Error::Eigensolver(format!("no convergence at dim {dim}")))?;
        let mut order: Vec<usize> = (0..dim).collect();
        order.sort_by(|&a, &b| {
            decomp.eigenvalues[b]
                .partial_cmp(&decomp.eigenvalues[a])
                .expect("eigenvalues are finite")
        });
        let values: Vec<f64> = order.iter().map(|&i| decomp.eigenvalues[i]).collect();
        let mut vectors = DMatrix::zeros(dim, dim);
        for (dst, &src) in order.iter().enumerate() {
            vectors.set_column(dst, &decomp.eigenvectors.column(src));
        }
        Ok(Eigh { values, vectors })
    }

    /// Trace norm `Σ |λ_i|`.
    pub fn trace_norm(&self) -> Result<f64> {
        Ok(self.eigh()?.values.iter().map(|l| l.abs()).sum())
    }

    /// Checks PSD (eigenvalues ≥ -tol) and unit trace (within tol).
    pub fn validate_density(&self, tol: f64) -> Result<()> {
        if (self.trace() - 1.0).abs() > tol {
            return Err(Error::NotDensity(format!(
                "trace is {}, expected 1",
                self.trace()
            )));
        }
        let eig = self.eigh()?;
        let min = eig.values.last().copied().unwrap_or(0.0);
        if min < -tol {
            return Err(Error::NotDensity(format!("negative eigenvalue {min}")));
        }
        Ok(())
    }
}

impl Eigh {
    /// Sum of the k largest eigenvalues.
    pub fn top_sum(&self, k: usize) -> f64 {
        self.values.iter().take(k).sum()
    }

    /// Projector onto the eigenvectors whose eigenvalue satisfies `pred`.
    pub fn projector_where(&self, mut pred: impl FnMut(f64) -> bool) -> DMatrix<Complex64> {
        let dim = self.vectors.nrows();
        let mut p = DMatrix::zeros(dim, dim);
        for (i, &value) in self.values.iter().enumerate() {
            if pred(value) {
                let v = self.vectors.column(i);
                p += v * v.adjoint();
            }
        }
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{sample, seeded};

    #[test]
    fn identity_eigenvalues() {
        let eig = HermitianMatrix::identity(3).eigh().unwrap();
        assert_eq!(eig.values, vec![1.0, 1.0, 1.0]);
    }

    #[test]
    fn diagonal_sorted_descending() {
        let eig = HermitianMatrix::from_diagonal(&[3.0, 1.0, 2.0]).eigh().unwrap();
        assert_eq!(eig.values, vec![3.0, 2.0, 1.0]);
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 3.0, 4.0]);
        assert!(matches!(
            HermitianMatrix::from_real(m),
            Err(Error::NotHermitian(_))
        ));
    }

    #[test]
    fn rejects_oversized_eigh() {
        let m = HermitianMatrix::identity(MAX_EIG_DIM + 1);
        assert!(m.eigh().is_err());
    }

    #[test]
    fn random_reconstruction_residual() {
        let mut rng = seeded(11);
        for dim in [2usize, 4, 8, 16] {
            let a = sample::random_hermitian(dim, &mut rng);
            let eig = a.eigh().unwrap();
            let norm = eig.values.iter().fold(0.0f64, |m, l| m.max(l.abs()));
            for i in 0..dim {
                let v = eig.vectors.column(i).clone_owned();
                let residual = (a.matrix() * &v - v.scale(eig.values[i])).norm();
                assert!(
                    residual <= 1e-10 * norm.max(1.0),
                    "dim {dim}: residual {residual} vs norm {norm}"
                );
            }
            // trace identity
            let sum: f64 = eig.values.iter().sum();
            assert!((sum - a.trace()).abs() <= 1e-10 * norm.max(1.0));
            // orthonormal columns
            let gram = eig.vectors.adjoint() * &eig.vectors;
            let id = DMatrix::<Complex64>::identity(dim, dim);
            assert!((gram - id).norm() <= 1e-10);
        }
    }

    #[test]
    fn expectation_is_real_quadratic_form() {
        let a = HermitianMatrix::from_diagonal(&[0.7, 0.3]);
        let v = DVector::from_vec(vec![
            Complex64::new(0.6, 0.0),
            Complex64::new(0.0, 0.8),
        ]);
        let got = a.expectation(&v);
        assert!((got - (0.7 * 0.36 + 0.3 * 0.64)).abs() < 1e-14);
    }
}
