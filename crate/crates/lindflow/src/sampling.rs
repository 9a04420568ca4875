//! Seeded random states, operators, and models for validation suites.
//!
//! Random density matrices are normalized G G† with complex Gaussian G.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::bloch::DensityMatrix;

pub fn random_complex_matrix<R: Rng>(dim: usize, rng: &mut R) -> DMatrix<Complex64> {
    DMatrix::from_fn(dim, dim, |_, _| {
        Complex64::new(StandardNormal.sample(rng), StandardNormal.sample(rng))
    })
}

pub fn random_hermitian<R: Rng>(dim: usize, rng: &mut R) -> DMatrix<Complex64> {
    let g = random_complex_matrix(dim, rng);
    (&g + g.adjoint()) * Complex64::new(0.5, 0.0)
}

/// Traceless Hermitian matrix, for gauge-shift probes.
pub fn random_traceless_hermitian<R: Rng>(dim: usize, rng: &mut R) -> DMatrix<Complex64> {
    let h = random_hermitian(dim, rng);
    let shift = h.trace() / dim as f64;
    &h - DMatrix::<Complex64>::identity(dim, dim) * shift
}

pub fn random_density<R: Rng>(dim: usize, rng: &mut R) -> DensityMatrix {
    let g = random_complex_matrix(dim, rng);
    let gg = &g * g.adjoint();
    let tr = gg.trace().re;
    DensityMatrix::new(gg / Complex64::new(tr, 0.0)).expect("G G† normalization is always valid")
}

/// Random jump operators, scaled so generator norms stay O(1).
pub fn random_jumps<R: Rng>(
    dim: usize,
    count: usize,
    hermitian: bool,
    rng: &mut R,
) -> Vec<DMatrix<Complex64>> {
    let scale = Complex64::new(1.0 / (dim as f64).sqrt(), 0.0);
    (0..count)
        .map(|_| {
            let g = random_complex_matrix(dim, rng) * scale;
            if hermitian {
                (&g + g.adjoint()) * Complex64::new(0.5, 0.0)
            } else {
                g
            }
        })
        .collect()
}

pub fn random_real_vector<R: Rng>(len: usize, rng: &mut R) -> DVector<f64> {
    DVector::from_fn(len, |_, _| StandardNormal.sample(rng))
}

pub fn random_complex_vector<R: Rng>(len: usize, rng: &mut R) -> DVector<Complex64> {
    DVector::from_fn(len, |_, _| {
        Complex64::new(StandardNormal.sample(rng), StandardNormal.sample(rng))
    })
}
