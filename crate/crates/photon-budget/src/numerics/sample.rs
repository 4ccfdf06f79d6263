//! Seeded generators for random matrices, states, and test operators.
//!
//! These feed the property sweeps and oracle cross-checks; they are part of
//! the library because the hypothesis-testing sweeps are a runtime feature,
//! not only a test fixture.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::numerics::matrix::HermitianMatrix;

fn complex_normal(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// A dim×dim matrix of iid complex normals.
pub fn ginibre(dim: usize, rng: &mut impl Rng) -> DMatrix<Complex64> {
    DMatrix::from_fn(dim, dim, |_, _| complex_normal(rng))
}

/// Haar-ish random unitary via QR of a Ginibre matrix with phase-fixed R.
pub fn random_unitary(dim: usize, rng: &mut impl Rng) -> DMatrix<Complex64> {
    let qr = ginibre(dim, rng).qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..dim {
        let d = r[(j, j)];
        if d.norm() > 0.0 {
            let phase = d / d.norm();
            // multiply column j by conj(phase) to make the factorization unique
            for i in 0..dim {
                q[(i, j)] *= phase.conj();
            }
        }
    }
    q
}

/// Random Hermitian matrix with O(1) entries.
pub fn random_hermitian(dim: usize, rng: &mut impl Rng) -> HermitianMatrix {
    let g = ginibre(dim, rng);
    let h = (&g + g.adjoint()).scale(0.5);
    HermitianMatrix::new(h).expect("symmetrized Ginibre is Hermitian")
}

/// Random full-rank density operator `AA† / Tr(AA†)`.
pub fn random_density(dim: usize, rng: &mut impl Rng) -> HermitianMatrix {
    let a = ginibre(dim, rng);
    let w = &a * a.adjoint();
    let trace = w.trace().re;
    HermitianMatrix::new(w.unscale(trace)).expect("Wishart matrix is Hermitian")
}

/// Random unit vector.
pub fn random_unit_vector(dim: usize, rng: &mut impl Rng) -> DVector<Complex64> {
    loop {
        let v = DVector::from_fn(dim, |_, _| complex_normal(rng));
        let n = v.norm();
        if n > 1e-6 {
            return v.unscale(n);
        }
    }
}

/// Random test operator with spectrum in [0, 1]: `V diag(u) V†`, u ~ U[0,1].
pub fn random_contraction(dim: usize, rng: &mut impl Rng) -> DMatrix<Complex64> {
    let v = random_unitary(dim, rng);
    let diag = DMatrix::from_diagonal(&DVector::from_iterator(
        dim,
        (0..dim).map(|_| Complex64::new(rng.random_range(0.0..=1.0), 0.0)),
    ));
    &v * diag * v.adjoint()
}
