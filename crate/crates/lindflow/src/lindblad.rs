//! Matrix-space Lindblad generator and its gradient-flow split.
//!
//! The generator L(ρ) = Σ_α [B_α ρ B_α† − ½{B_α†B_α, ρ}] decomposes exactly
//! as L = −∂Φ/∂ρᵀ + R with
//!
//!   Φ(ρ) = ½ Σ_α ( Tr[ρ² B_α†B_α] − Tr[ρ B_α† ρ B_α] )
//!   R(ρ) = ½ Σ_α ( B_α ρ B_α† − B_α† ρ B_α )
//!
//! Matrix derivatives follow the convention [∂f/∂ρᵀ]_ij = ∂f/∂ρ_ji, treating
//! the D² entries as independent complex variables, so that
//! ∂/∂ρᵀ `Tr[XρYρ]` = XρY + YρX and ∂/∂ρᵀ `Tr[ρ²W]` = {W, ρ}. Φ is evaluated in
//! its polynomial (conjugation-free) form, which makes it holomorphic in the
//! entries and finite differences well-posed.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::algebra::{check_len, SuBasis};
use crate::bloch::{hermiticity_deviation, jump_to_vector, JumpVector, SPECTRAL_TOL, STRUCTURAL_TOL};
use crate::error::{Error, Result};

type CMatrix = DMatrix<Complex64>;

/// A Lindblad model: dimension, jump operators, and derived jump vectors.
#[derive(Debug, Clone)]
pub struct LindbladModel {
    dim: usize,
    jumps: Vec<CMatrix>,
    jump_vectors: Vec<JumpVector>,
    hermitian: bool,
}

impl LindbladModel {
    pub fn new(jumps: Vec<CMatrix>, basis: &SuBasis) -> Result<Self> {
        let dim = basis.dim();
        if jumps.is_empty() {
            return Err(Error::Config("a model needs at least one jump operator".into()));
        }
        for b in &jumps {
            check_len(dim, b.nrows(), "jump operator rows")?;
            check_len(dim, b.ncols(), "jump operator cols")?;
        }
        let jump_vectors = jumps
            .iter()
            .map(|b| jump_to_vector(b, basis))
            .collect::<Result<Vec<_>>>()?;
        let hermitian = jumps
            .iter()
            .all(|b| hermiticity_deviation(b) <= STRUCTURAL_TOL);
        Ok(LindbladModel {
            dim,
            jumps,
            jump_vectors,
            hermitian,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn jumps(&self) -> &[CMatrix] {
        &self.jumps
    }

    pub fn jump_vectors(&self) -> &[JumpVector] {
        &self.jump_vectors
    }

    /// True iff every jump operator is Hermitian to 1e−12.
    pub fn is_hermitian(&self) -> bool {
        self.hermitian
    }

    /// True iff every jump operator is traceless to 1e−12.
    pub fn is_traceless(&self) -> bool {
        self.jump_vectors
            .iter()
            .all(|jv| jv.trace_part.norm() <= STRUCTURAL_TOL)
    }

    fn check_state(&self, rho: &CMatrix, context: &'static str) -> Result<()> {
        check_len(self.dim, rho.nrows(), context)?;
        check_len(self.dim, rho.ncols(), context)
    }
}

/// L(ρ) = Σ_α [B_α ρ B_α† − ½{B_α†B_α, ρ}].
pub fn lindbladian(model: &LindbladModel, rho: &CMatrix) -> Result<CMatrix> {
    model.check_state(rho, "lindbladian state")?;
    let mut out = CMatrix::zeros(model.dim, model.dim);
    let half = Complex64::new(0.5, 0.0);
    for b in &model.jumps {
        let bdag = b.adjoint();
        let bdb = &bdag * b;
        out += b * rho * &bdag - (&bdb * rho + rho * &bdb) * half;
    }
    Ok(out)
}

/// Φ(ρ) in its polynomial form, defined for arbitrary complex ρ.
pub fn potential_phi_complex(model: &LindbladModel, rho: &CMatrix) -> Result<Complex64> {
    model.check_state(rho, "potential state")?;
    let mut out = Complex64::new(0.0, 0.0);
    let rho2 = rho * rho;
    for b in &model.jumps {
        let bdag = b.adjoint();
        out += ((&rho2 * &bdag * b).trace() - (rho * &bdag * rho * b).trace()) * 0.5;
    }
    Ok(out)
}

/// Φ(ρ) for (Hermitian) states; errors on imaginary residue above 1e−10.
/// Non-negative for Hermitian models, any sign otherwise.
pub fn potential_phi(model: &LindbladModel, rho: &CMatrix) -> Result<f64> {
    realify(potential_phi_complex(model, rho)?)
}

/// ∂Φ/∂ρᵀ = −½ Σ_α (B_α ρ B_α† + B_α† ρ B_α − {B_α†B_α, ρ}).
pub fn grad_phi(model: &LindbladModel, rho: &CMatrix) -> Result<CMatrix> {
    model.check_state(rho, "gradient state")?;
    let mut out = CMatrix::zeros(model.dim, model.dim);
    let half = Complex64::new(0.5, 0.0);
    for b in &model.jumps {
        let bdag = b.adjoint();
        let bdb = &bdag * b;
        out += ((&bdb * rho + rho * &bdb) - b * rho * &bdag - &bdag * rho * b) * half;
    }
    Ok(out)
}

/// R(ρ) = ½ Σ_α (B_α ρ B_α† − B_α† ρ B_α); vanishes for Hermitian jumps.
pub fn solenoidal_r(model: &LindbladModel, rho: &CMatrix) -> Result<CMatrix> {
    model.check_state(rho, "solenoidal state")?;
    let mut out = CMatrix::zeros(model.dim, model.dim);
    let half = Complex64::new(0.5, 0.0);
    for b in &model.jumps {
        let bdag = b.adjoint();
        out += (b * rho * &bdag - &bdag * rho * b) * half;
    }
    Ok(out)
}

/// Complexified potential F(ρ, σ) = −½ Σ_α Tr[B_α σ B_α† ρ − B_α† σ B_α ρ],
/// with σ playing the role of ρ† as an independent variable. Restricting
/// −∂F/∂ρᵀ to σ = ρ recovers R(ρ).
pub fn potential_f(model: &LindbladModel, rho: &CMatrix, rho_dag: &CMatrix) -> Result<Complex64> {
    model.check_state(rho, "complexified potential, rho")?;
    model.check_state(rho_dag, "complexified potential, rho_dag")?;
    let mut out = Complex64::new(0.0, 0.0);
    for b in &model.jumps {
        let bdag = b.adjoint();
        out -= ((b * rho_dag * &bdag * rho).trace() - (&bdag * rho_dag * b * rho).trace()) * 0.5;
    }
    Ok(out)
}

/// Harmonic gauge potential φ(ρ) = `Tr[ρ²X]`; harmonic when X is traceless.
pub fn gauge_potential(x: &CMatrix, rho: &CMatrix) -> Complex64 {
    (rho * rho * x).trace()
}

/// Its matrix gradient ∂φ/∂ρᵀ = {X, ρ}.
pub fn gauge_gradient(x: &CMatrix, rho: &CMatrix) -> CMatrix {
    x * rho + rho * x
}

/// Which linear map to materialize as a D²×D² matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuperoperatorKind {
    /// ρ ↦ L(ρ)
    Lindbladian,
    /// ρ ↦ ∂Φ/∂ρᵀ
    GradPhiMap,
    /// ρ ↦ R(ρ)
    RMap,
}

/// Dense matrix form of a superoperator in the column-stacking convention
/// vec(AXC) = (Cᵀ ⊗ A) vec(X).
#[derive(Debug, Clone)]
pub struct Superoperator {
    dim: usize,
    kind: SuperoperatorKind,
    matrix: CMatrix,
}

impl Superoperator {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> SuperoperatorKind {
        self.kind
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    /// Matrix divergence of the map, Σ_ij ∂(map ρ)_ij/∂ρ_ij = trace.
    pub fn divergence(&self) -> Complex64 {
        self.matrix.trace()
    }

    /// Apply through vectorization; round-trips the defining operation.
    pub fn apply(&self, x: &CMatrix) -> Result<CMatrix> {
        check_len(self.dim, x.nrows(), "superoperator argument rows")?;
        check_len(self.dim, x.ncols(), "superoperator argument cols")?;
        let v = vec_col(x);
        let out = &self.matrix * v;
        Ok(unvec_col(&out, self.dim))
    }
}

/// Column-stacking vectorization.
pub fn vec_col(x: &CMatrix) -> nalgebra::DVector<Complex64> {
    let (r, c) = x.shape();
    nalgebra::DVector::from_fn(r * c, |k, _| x[(k % r, k / r)])
}

pub fn unvec_col(v: &nalgebra::DVector<Complex64>, dim: usize) -> CMatrix {
    CMatrix::from_fn(dim, dim, |i, j| v[j * dim + i])
}

/// Build the D²×D² matrix of the requested map.
pub fn materialize(kind: SuperoperatorKind, model: &LindbladModel) -> Superoperator {
    let d = model.dim;
    let n2 = d * d;
    let id = CMatrix::identity(d, d);
    let half = Complex64::new(0.5, 0.0);
    let mut k = CMatrix::zeros(n2, n2);
    for b in &model.jumps {
        let bdag = b.adjoint();
        let bdb = &bdag * b;
        let b_conj = b.map(|z| z.conj());
        let sandwich = b_conj.kronecker(b); // vec(B ρ B†)
        let sandwich_swapped = b.transpose().kronecker(&bdag); // vec(B† ρ B)
        let left = id.kronecker(&bdb); // vec(B†B ρ)
        let right = bdb.transpose().kronecker(&id); // vec(ρ B†B)
        match kind {
            SuperoperatorKind::Lindbladian => {
                k += &sandwich - (&left + &right) * half;
            }
            SuperoperatorKind::GradPhiMap => {
                k += ((&left + &right) - &sandwich - &sandwich_swapped) * half;
            }
            SuperoperatorKind::RMap => {
                k += (&sandwich - &sandwich_swapped) * half;
            }
        }
    }
    Superoperator {
        dim: d,
        kind,
        matrix: k,
    }
}

/// Numerical matrix Laplacian Δ_ρ φ = div_ρ ∂φ/∂ρᵀ = Σ_ij ∂²φ/(∂ρ_ij ∂ρ_ji),
/// estimated by second differences and averaged over the probe points.
/// The transpose pairing matches the divergence Σ_ij ∂R_ij/∂ρ_ij applied to
/// the gradient convention [∂φ/∂ρᵀ]_ij = ∂φ/∂ρ_ji, and gives
/// Δ_ρ `Tr[ρ²X]` = 2D `Tr[X]`.
pub fn matrix_laplacian<F>(phi: F, probes: &[CMatrix], step: f64) -> Result<f64>
where
    F: Fn(&CMatrix) -> Complex64,
{
    if probes.is_empty() {
        return Err(Error::Config("matrix Laplacian needs at least one probe".into()));
    }
    let h = Complex64::new(step, 0.0);
    let mut total = Complex64::new(0.0, 0.0);
    for probe in probes {
        let d = probe.nrows();
        let center = phi(probe);
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..d {
            for j in 0..d {
                if i == j {
                    let mut plus = probe.clone();
                    plus[(i, i)] += h;
                    let mut minus = probe.clone();
                    minus[(i, i)] -= h;
                    acc += (phi(&plus) + phi(&minus) - center * 2.0) / (step * step);
                } else {
                    // mixed derivative ∂²φ/(∂ρ_ij ∂ρ_ji), four-point stencil
                    let mut pp = probe.clone();
                    pp[(i, j)] += h;
                    pp[(j, i)] += h;
                    let mut pm = probe.clone();
                    pm[(i, j)] += h;
                    pm[(j, i)] -= h;
                    let mut mp = probe.clone();
                    mp[(i, j)] -= h;
                    mp[(j, i)] += h;
                    let mut mm = probe.clone();
                    mm[(i, j)] -= h;
                    mm[(j, i)] -= h;
                    acc += (phi(&pp) - phi(&pm) - phi(&mp) + phi(&mm)) / (4.0 * step * step);
                }
            }
        }
        total += acc;
    }
    let mean = total / probes.len() as f64;
    if mean.im.abs() > 1e-6 * (1.0 + mean.re.abs()) {
        return Err(Error::ImaginaryResidue(mean.im.abs()));
    }
    Ok(mean.re)
}

fn realify(z: Complex64) -> Result<f64> {
    if z.im.abs() > SPECTRAL_TOL {
        Err(Error::ImaginaryResidue(z.im.abs()))
    } else {
        Ok(z.re)
    }
}

/// Central finite-difference estimate of ∂Φ/∂ρᵀ, the test oracle for
/// `grad_phi`. Perturbs real and imaginary parts of each entry separately
/// and assembles the complex derivative; entry (i, j) of the result is
/// ∂Φ/∂ρ_ji.
pub fn grad_phi_finite_difference(
    model: &LindbladModel,
    rho: &CMatrix,
    step: f64,
) -> Result<CMatrix> {
    model.check_state(rho, "finite-difference state")?;
    let d = model.dim;
    let mut out = CMatrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            let mut plus = rho.clone();
            plus[(j, i)] += Complex64::new(step, 0.0);
            let mut minus = rho.clone();
            minus[(j, i)] -= Complex64::new(step, 0.0);
            let d_re =
                (potential_phi_complex(model, &plus)? - potential_phi_complex(model, &minus)?)
                    / (2.0 * step);
            let mut plus_i = rho.clone();
            plus_i[(j, i)] += Complex64::new(0.0, step);
            let mut minus_i = rho.clone();
            minus_i[(j, i)] -= Complex64::new(0.0, step);
            let d_im =
                (potential_phi_complex(model, &plus_i)? - potential_phi_complex(model, &minus_i)?)
                    / (2.0 * step);
            // holomorphic combination ∂/∂z = ½(∂_x − i ∂_y)
            out[(i, j)] = (d_re - Complex64::new(0.0, 1.0) * d_im) * 0.5;
        }
    }
    Ok(out)
}
