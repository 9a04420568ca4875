//! Density matrices, generalized Bloch vectors, and jump vectors.
//!
//! A density matrix ρ maps to a real vector a ∈ ℝ^{D²−1} through
//! ρ = (1/D) I + sqrt((D−1)/(2D)) a_j λ_j, and back via
//! a_j = Tr[ρ λ_j] / sqrt(2 − 2/D). Purity is `Tr[ρ²]` = (1 + (D−1)|a|²)/D.
//!
//! Structural invariants are enforced at 1e−12, spectral checks at 1e−10.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::algebra::{check_len, SuBasis};
use crate::error::{Error, Result};

pub const STRUCTURAL_TOL: f64 = 1e-12;
pub const SPECTRAL_TOL: f64 = 1e-10;

/// Bloch expansion coefficient sqrt((D−1)/(2D)).
pub fn bloch_scale(dim: usize) -> f64 {
    ((dim as f64 - 1.0) / (2.0 * dim as f64)).sqrt()
}

/// Hermitian deviation ‖X − X†‖.
pub fn hermiticity_deviation(m: &DMatrix<Complex64>) -> f64 {
    (m - m.adjoint()).norm()
}

/// A valid density matrix: Hermitian, unit trace, positive semidefinite.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    dim: usize,
    entries: DMatrix<Complex64>,
}

impl DensityMatrix {
    /// Validate and wrap a matrix. Hermiticity and trace are checked at
    /// 1e−12, the minimum eigenvalue at −1e−10.
    pub fn new(entries: DMatrix<Complex64>) -> Result<Self> {
        let dim = entries.nrows();
        if dim < 2 || entries.ncols() != dim {
            return Err(Error::InvalidDensityMatrix(format!(
                "expected square matrix of dimension >= 2, got {}x{}",
                entries.nrows(),
                entries.ncols()
            )));
        }
        let herm = hermiticity_deviation(&entries);
        if herm > STRUCTURAL_TOL {
            return Err(Error::InvalidDensityMatrix(format!(
                "not Hermitian (deviation {herm:.3e})"
            )));
        }
        let tr = entries.trace();
        if (tr - Complex64::new(1.0, 0.0)).norm() > STRUCTURAL_TOL {
            return Err(Error::InvalidDensityMatrix(format!("trace is {tr}, not 1")));
        }
        let (_, min_eig) = positivity_check(&entries)?;
        if min_eig < -SPECTRAL_TOL {
            return Err(Error::InvalidDensityMatrix(format!(
                "minimum eigenvalue {min_eig:.3e} is negative"
            )));
        }
        Ok(DensityMatrix { dim, entries })
    }

    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        if dim < 2 {
            return Err(Error::DimensionTooSmall(dim));
        }
        let entries =
            DMatrix::<Complex64>::identity(dim, dim) * Complex64::new(1.0 / dim as f64, 0.0);
        Ok(DensityMatrix { dim, entries })
    }

    /// Pure state |k⟩⟨k| in the computational basis.
    pub fn basis_state(dim: usize, k: usize) -> Result<Self> {
        if dim < 2 {
            return Err(Error::DimensionTooSmall(dim));
        }
        if k >= dim {
            return Err(Error::InvalidDensityMatrix(format!(
                "state index {k} out of range for dimension {dim}"
            )));
        }
        let mut entries = DMatrix::<Complex64>::zeros(dim, dim);
        entries[(k, k)] = Complex64::new(1.0, 0.0);
        Ok(DensityMatrix { dim, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    /// `Tr[ρ²]`.
    pub fn purity(&self) -> f64 {
        (&self.entries * &self.entries).trace().re
    }
}

/// Generalized Bloch vector. Vectors obtained from valid density matrices
/// satisfy |a| ≤ 1; arbitrary vectors are allowed so the potentials can be
/// probed anywhere.
#[derive(Debug, Clone)]
pub struct BlochVector {
    dim: usize,
    a: DVector<f64>,
}

impl BlochVector {
    pub fn new(dim: usize, a: DVector<f64>) -> Result<Self> {
        if dim < 2 {
            return Err(Error::DimensionTooSmall(dim));
        }
        check_len(dim * dim - 1, a.len(), "Bloch vector length")?;
        Ok(BlochVector { dim, a })
    }

    pub fn zero(dim: usize) -> Result<Self> {
        Self::new(dim, DVector::zeros(dim * dim - 1))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coords(&self) -> &DVector<f64> {
        &self.a
    }

    pub fn norm(&self) -> f64 {
        self.a.norm()
    }

    /// Purity (1 + (D−1)|a|²)/D.
    pub fn purity(&self) -> f64 {
        (1.0 + (self.dim as f64 - 1.0) * self.a.norm_squared()) / self.dim as f64
    }
}

/// Hermitian unit-trace image of a Bloch vector, with positivity diagnostics.
/// For D ≥ 3 a vector inside the unit ball may still fail positivity.
#[derive(Debug, Clone)]
pub struct BlochImage {
    pub matrix: DMatrix<Complex64>,
    pub positive: bool,
    pub min_eigenvalue: f64,
}

impl BlochImage {
    /// Promote to a validated density matrix; errors when not positive.
    pub fn into_density(self) -> Result<DensityMatrix> {
        if !self.positive {
            return Err(Error::InvalidDensityMatrix(format!(
                "Bloch image has negative eigenvalue {:.3e}",
                self.min_eigenvalue
            )));
        }
        DensityMatrix::new(self.matrix)
    }
}

/// Complex jump-vector parametrization B = (`Tr[B]`/D) I + sqrt((D−1)/(2D)) b_j λ_j.
#[derive(Debug, Clone)]
pub struct JumpVector {
    pub dim: usize,
    pub trace_part: Complex64,
    pub b: DVector<Complex64>,
}

impl JumpVector {
    /// Rebuild the jump operator matrix.
    pub fn reconstruct(&self, basis: &SuBasis) -> Result<DMatrix<Complex64>> {
        check_len(self.dim, basis.dim(), "jump vector vs basis")?;
        let id = DMatrix::<Complex64>::identity(self.dim, self.dim);
        let scaled = basis.expand(&(self.b.clone() * Complex64::new(bloch_scale(self.dim), 0.0)))?;
        Ok(id * (self.trace_part / self.dim as f64) + scaled)
    }

    /// Hermitian jumps have real b up to the structural tolerance.
    pub fn is_real(&self) -> bool {
        self.b.iter().all(|z| z.im.abs() <= STRUCTURAL_TOL) && self.trace_part.im.abs() <= STRUCTURAL_TOL
    }
}

/// Adjoint coefficients of any matrix X under the Bloch normalization,
/// x_j = Tr[X λ_j] / sqrt(2 − 2/D). Linear; ignores the trace part.
pub fn bloch_coords(x: &DMatrix<Complex64>, basis: &SuBasis) -> Result<DVector<Complex64>> {
    let dim = basis.dim();
    check_len(dim, x.nrows(), "matrix rows")?;
    check_len(dim, x.ncols(), "matrix cols")?;
    let scale = 1.0 / (2.0 - 2.0 / dim as f64).sqrt();
    let coeffs = basis
        .lambdas()
        .iter()
        .map(|lambda| (x * lambda).trace() * Complex64::new(scale, 0.0))
        .collect::<Vec<_>>();
    Ok(DVector::from_vec(coeffs))
}

/// Real Bloch coordinates of a Hermitian matrix; errors on imaginary residue.
pub fn bloch_coords_real(x: &DMatrix<Complex64>, basis: &SuBasis) -> Result<DVector<f64>> {
    let coords = bloch_coords(x, basis)?;
    let mut out = DVector::<f64>::zeros(coords.len());
    for (idx, z) in coords.iter().enumerate() {
        if z.im.abs() > SPECTRAL_TOL {
            return Err(Error::ImaginaryResidue(z.im.abs()));
        }
        out[idx] = z.re;
    }
    Ok(out)
}

/// Bloch vector of a density matrix.
pub fn to_bloch(rho: &DensityMatrix, basis: &SuBasis) -> Result<BlochVector> {
    check_len(basis.dim(), rho.dim(), "density matrix vs basis")?;
    BlochVector::new(rho.dim(), bloch_coords_real(rho.matrix(), basis)?)
}

/// Hermitian unit-trace matrix of a Bloch vector, with positivity flag.
/// Rejects |a| > 1; positivity is diagnosed, not enforced.
pub fn from_bloch(a: &BlochVector, basis: &SuBasis) -> Result<BlochImage> {
    check_len(basis.dim(), a.dim(), "Bloch vector vs basis")?;
    let norm = a.norm();
    if norm > 1.0 + SPECTRAL_TOL {
        return Err(Error::BlochNormTooLarge(norm));
    }
    let dim = a.dim();
    let coeffs = DVector::from_iterator(
        a.coords().len(),
        a.coords()
            .iter()
            .map(|&x| Complex64::new(x * bloch_scale(dim), 0.0)),
    );
    let matrix = DMatrix::<Complex64>::identity(dim, dim) * Complex64::new(1.0 / dim as f64, 0.0)
        + basis.expand(&coeffs)?;
    let (positive, min_eigenvalue) = positivity_check(&matrix)?;
    Ok(BlochImage {
        matrix,
        positive,
        min_eigenvalue,
    })
}

/// Minimum eigenvalue test for a Hermitian matrix. True iff min ≥ −1e−10.
pub fn positivity_check(m: &DMatrix<Complex64>) -> Result<(bool, f64)> {
    let herm = hermiticity_deviation(m);
    if herm > STRUCTURAL_TOL {
        return Err(Error::NotHermitian(herm));
    }
    let eigs = m.clone().symmetric_eigen().eigenvalues;
    let min_eig = eigs.iter().cloned().fold(f64::INFINITY, f64::min);
    Ok((min_eig >= -SPECTRAL_TOL, min_eig))
}

/// Decompose a jump operator into trace part and complex jump vector.
pub fn jump_to_vector(b: &DMatrix<Complex64>, basis: &SuBasis) -> Result<JumpVector> {
    let dim = basis.dim();
    check_len(dim, b.nrows(), "jump operator rows")?;
    check_len(dim, b.ncols(), "jump operator cols")?;
    let trace = b.trace();
    let scale = 1.0 / (2.0 * bloch_scale(dim));
    let coords = basis
        .lambdas()
        .iter()
        .map(|lambda| (b * lambda).trace() * Complex64::new(scale, 0.0))
        .collect::<Vec<_>>();
    Ok(JumpVector {
        dim,
        trace_part: trace,
        b: DVector::from_vec(coords),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::random_density;
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_distr::{Distribution, StandardNormal};

    #[test]
    fn maximally_mixed_maps_to_zero() {
        for dim in [2, 3, 4] {
            let basis = SuBasis::generate(dim).unwrap();
            let rho = DensityMatrix::maximally_mixed(dim).unwrap();
            let a = to_bloch(&rho, &basis).unwrap();
            assert!(a.norm() < 1e-14);
            assert_abs_diff_eq!(a.purity(), 1.0 / dim as f64, epsilon = 1e-14);
        }
    }

    #[test]
    fn ground_state_qutrit_bloch_vector() {
        let basis = SuBasis::generate(3).unwrap();
        let rho = DensityMatrix::basis_state(3, 0).unwrap();
        let a = to_bloch(&rho, &basis).unwrap();
        let want = [0.0, 0.0, 3f64.sqrt() / 2.0, 0.0, 0.0, 0.0, 0.0, 0.5];
        for (got, want) in a.coords().iter().zip(want) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-14);
        }
        // and back
        let img = from_bloch(&a, &basis).unwrap();
        assert!(img.positive);
        assert!((img.matrix.clone() - rho.matrix()).norm() < 1e-13);
    }

    #[test]
    fn pure_qubit_sits_on_the_sphere() {
        let basis = SuBasis::generate(2).unwrap();
        let rho = DensityMatrix::basis_state(2, 0).unwrap();
        let a = to_bloch(&rho, &basis).unwrap();
        assert_abs_diff_eq!(a.coords()[2], 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(a.norm(), 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(a.purity(), 1.0, epsilon = 1e-14);
    }

    #[test]
    fn positivity_of_reference_states() {
        for dim in [2usize, 3] {
            let mixed = DensityMatrix::maximally_mixed(dim).unwrap();
            let (pos, min_eig) = positivity_check(mixed.matrix()).unwrap();
            assert!(pos);
            assert_abs_diff_eq!(min_eig, 1.0 / dim as f64, epsilon = 1e-14);
        }
        let pure = DensityMatrix::basis_state(3, 0).unwrap();
        let (pos, min_eig) = positivity_check(pure.matrix()).unwrap();
        assert!(pos);
        assert_abs_diff_eq!(min_eig, 0.0, epsilon = 1e-14);
        // rejects a non-Hermitian argument
        let mut skew = DMatrix::<Complex64>::zeros(2, 2);
        skew[(0, 1)] = Complex64::new(1.0, 0.0);
        assert!(matches!(positivity_check(&skew), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn unit_lambda8_vector_is_not_positive() {
        let basis = SuBasis::generate(3).unwrap();
        let mut v = DVector::zeros(8);
        v[7] = 1.0;
        let img = from_bloch(&BlochVector::new(3, v).unwrap(), &basis).unwrap();
        assert!(!img.positive);
        assert!(img.min_eigenvalue < -1e-3);
        assert!(img.clone().into_density().is_err());
        // still Hermitian with unit trace
        assert!(hermiticity_deviation(&img.matrix) < 1e-14);
        assert_abs_diff_eq!(img.matrix.trace().re, 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(img.min_eigenvalue, -1.0 / 3.0, epsilon = 1e-12);
    }

    #[test]
    fn from_bloch_rejects_long_vectors() {
        let basis = SuBasis::generate(2).unwrap();
        let v = DVector::from_vec(vec![1.5, 0.0, 0.0]);
        assert!(matches!(
            from_bloch(&BlochVector::new(2, v).unwrap(), &basis),
            Err(Error::BlochNormTooLarge(_))
        ));
    }

    #[test]
    fn purity_agrees_between_matrix_and_bloch_paths() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for dim in [2usize, 3, 4] {
            let basis = SuBasis::generate(dim).unwrap();
            for _ in 0..100 {
                let rho = random_density(dim, &mut rng);
                let a = to_bloch(&rho, &basis).unwrap();
                assert!(a.norm() <= 1.0 + 1e-10);
                assert_abs_diff_eq!(rho.purity(), a.purity(), epsilon = 1e-12);
                let img = from_bloch(&a, &basis).unwrap();
                assert!((img.matrix.clone() - rho.matrix()).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn half_z_qubit_purity() {
        let basis = SuBasis::generate(2).unwrap();
        let v = DVector::from_vec(vec![0.0, 0.0, 0.5]);
        let a = BlochVector::new(2, v).unwrap();
        assert_abs_diff_eq!(a.purity(), 5.0 / 8.0, epsilon = 1e-15);
        let rho = from_bloch(&a, &basis).unwrap().into_density().unwrap();
        assert_abs_diff_eq!(rho.purity(), 5.0 / 8.0, epsilon = 1e-14);
    }

    #[test]
    fn qubit_positivity_iff_inside_ball() {
        let basis = SuBasis::generate(2).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let dir = DVector::<f64>::from_fn(3, |_, _| StandardNormal.sample(&mut rng));
            let unit = dir.normalize();
            for r in [0.2, 0.7, 0.999, 1.0] {
                let img =
                    from_bloch(&BlochVector::new(2, unit.clone() * r).unwrap(), &basis).unwrap();
                assert!(img.positive, "r={r} should be positive");
            }
        }
    }

    #[test]
    fn amplitude_damping_jump_vector_matches_closed_form() {
        let basis = SuBasis::generate(3).unwrap();
        let gamma = 1.0;
        let mut b = DMatrix::<Complex64>::zeros(3, 3);
        b[(0, 1)] = Complex64::new(gamma, 0.0);
        b[(1, 2)] = Complex64::new(2f64.sqrt() * gamma, 0.0);
        let jv = jump_to_vector(&b, &basis).unwrap();
        assert!(jv.trace_part.norm() < 1e-15);
        let c = 3f64.sqrt() / 2.0 * gamma;
        let want = [
            Complex64::new(c, 0.0),
            Complex64::new(0.0, c),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(2f64.sqrt() * c, 0.0),
            Complex64::new(0.0, 2f64.sqrt() * c),
            Complex64::new(0.0, 0.0),
        ];
        for (got, want) in jv.b.iter().zip(want) {
            assert!((got - want).norm() < 1e-14);
        }
        let back = jv.reconstruct(&basis).unwrap();
        assert!((back - b).norm() < 1e-14);
    }

    #[test]
    fn hermitian_jump_has_real_vector() {
        let basis = SuBasis::generate(3).unwrap();
        let jv = jump_to_vector(&basis.lambdas()[0], &basis).unwrap();
        assert!(jv.is_real());
        assert!(jv.trace_part.norm() < 1e-15);
        let expected = (2.0 * 3.0 / 2.0_f64).sqrt(); // 1/scale for D=3
        assert_abs_diff_eq!(jv.b[0].re, expected, epsilon = 1e-13);
        for z in jv.b.iter().skip(1) {
            assert!(z.norm() < 1e-14);
        }
    }

    #[test]
    fn identity_jump_is_pure_trace() {
        let basis = SuBasis::generate(3).unwrap();
        let id = DMatrix::<Complex64>::identity(3, 3);
        let jv = jump_to_vector(&id, &basis).unwrap();
        assert!((jv.trace_part - Complex64::new(3.0, 0.0)).norm() < 1e-15);
        assert!(jv.b.norm() < 1e-15);
        let back = jv.reconstruct(&basis).unwrap();
        assert!((back - id).norm() < 1e-14);
    }

    #[test]
    fn density_matrix_validation_errors() {
        // non-Hermitian
        let mut m = DMatrix::<Complex64>::identity(2, 2) * Complex64::new(0.5, 0.0);
        m[(0, 1)] = Complex64::new(0.3, 0.0);
        assert!(DensityMatrix::new(m).is_err());
        // wrong trace
        let m = DMatrix::<Complex64>::identity(2, 2);
        assert!(DensityMatrix::new(m).is_err());
        // negative eigenvalue
        let m = DMatrix::<Complex64>::from_diagonal(&DVector::from_vec(vec![
            Complex64::new(1.5, 0.0),
            Complex64::new(-0.5, 0.0),
        ]));
        assert!(DensityMatrix::new(m).is_err());
    }
}
