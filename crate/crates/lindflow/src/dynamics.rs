//! Bloch-space form of the dynamics: da/dt = M a + v.
//!
//! For jump vectors b^(α) the generator is
//!
//!   M a = (D−1)/D Σ_α ( Re[b̄ ∧ (b ∧ a)] + Im[b̄ ∧ (b ⋆ a)] )
//!   v   = (2/D) sqrt((D−1)/(2D)) Σ_α Im[b̄ ∧ b]
//!
//! plus, for non-traceless jumps, the wedge correction
//! (1/D) sqrt((D−1)/(2D)) (i(`Tr[B]`* b − `Tr[B]` b̄)) ∧ a folded into M, which
//! keeps the Bloch image exactly consistent with the matrix-space generator
//! for arbitrary models.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::algebra::{check_len, SuBasis};
use crate::bloch::{bloch_scale, BlochVector, STRUCTURAL_TOL};
use crate::error::{Error, Result};
use crate::lindblad::LindbladModel;
use crate::numeric::{eigendecompose, expm, zero_split, ZeroSplit};

/// Threshold below which generator eigenvalues count as zero.
pub const ZERO_EIG_TOL: f64 = 1e-9;

/// Affine generator of the Bloch dynamics.
#[derive(Debug, Clone)]
pub struct BlochGenerator {
    dim: usize,
    m: DMatrix<f64>,
    v: DVector<f64>,
}

impl BlochGenerator {
    pub fn new(dim: usize, m: DMatrix<f64>, v: DVector<f64>) -> Result<Self> {
        let n = dim * dim - 1;
        check_len(n, m.nrows(), "generator matrix rows")?;
        check_len(n, m.ncols(), "generator matrix cols")?;
        check_len(n, v.len(), "generator drift length")?;
        Ok(BlochGenerator { dim, m, v })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.m
    }

    pub fn drift(&self) -> &DVector<f64> {
        &self.v
    }

    /// da/dt at a point.
    pub fn apply(&self, a: &DVector<f64>) -> Result<DVector<f64>> {
        check_len(self.m.ncols(), a.len(), "generator argument")?;
        Ok(&self.m * a + &self.v)
    }

    fn zero_tol(&self) -> f64 {
        ZERO_EIG_TOL * self.m.norm().max(1.0)
    }
}

/// Relaxation spectrum: eigenvalues −Γ sorted by ascending real part
/// (rates descending), ties broken by (Re, Im, index).
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub eigenvalues: Vec<Complex64>,
    pub rates: Vec<f64>,
    /// Right eigenvectors, one column per eigenvalue, same order.
    pub eigenvectors: DMatrix<Complex64>,
}

/// Time grid with Bloch states and per-step diagnostics.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<BlochVector>,
    pub purity: Vec<f64>,
    pub potential: Option<Vec<f64>>,
}

impl Trajectory {
    /// Fill the optional potential column from a scalar field on Bloch space.
    pub fn record_potential<F: Fn(&BlochVector) -> f64>(&mut self, phi: F) {
        self.potential = Some(self.states.iter().map(phi).collect());
    }
}

/// Build (M, v) from the model's jump vectors.
pub fn build_generator(model: &LindbladModel, basis: &SuBasis) -> Result<BlochGenerator> {
    let dim = basis.dim();
    check_len(dim, model.dim(), "model vs basis")?;
    let n = basis.adjoint_len();
    let df = dim as f64;
    let front = (df - 1.0) / df;
    let drift_scale = 2.0 / df * bloch_scale(dim);
    let trace_scale = bloch_scale(dim) / df;

    let mut m = DMatrix::<f64>::zeros(n, n);
    let mut v = DVector::<f64>::zeros(n);
    for jv in model.jump_vectors() {
        let b = &jv.b;
        let b_conj = b.map(|z| z.conj());
        // columns of the double-contraction part
        for j in 0..n {
            let mut ej = DVector::<Complex64>::zeros(n);
            ej[j] = Complex64::new(1.0, 0.0);
            let wedge_inner = basis.wedge(b, &ej)?;
            let wedge_term = basis.wedge(&b_conj, &wedge_inner)?;
            let star_inner = basis.star(b, &ej)?;
            let star_term = basis.wedge(&b_conj, &star_inner)?;
            for i in 0..n {
                m[(i, j)] += front * (wedge_term[i].re + star_term[i].im);
            }
        }
        let drift = basis.wedge(&b_conj, b)?;
        for i in 0..n {
            v[i] += drift_scale * drift[i].im;
        }
        // non-traceless correction: i (Tr[B]* b − Tr[B] b̄) is a real vector
        let tau = jv.trace_part;
        if tau.norm() > STRUCTURAL_TOL {
            let i_unit = Complex64::new(0.0, 1.0);
            let w_complex = (b * tau.conj() - &b_conj * tau) * i_unit;
            let mut w = DVector::<f64>::zeros(n);
            for idx in 0..n {
                if w_complex[idx].im.abs() > 1e-10 {
                    return Err(Error::ImaginaryResidue(w_complex[idx].im.abs()));
                }
                w[idx] = w_complex[idx].re;
            }
            m += basis.wedge_matrix(&w)? * trace_scale;
        }
    }
    BlochGenerator::new(dim, m, v)
}

/// Which code path produced a steady state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SteadyStateMethod {
    /// M invertible: a = −M⁻¹ v.
    DirectSolve,
    /// Singular M: projection onto ker M plus the particular solution.
    KernelProjection,
    /// Oscillatory modes: long-time evolution with a convergence check.
    Relaxation,
}

impl SteadyStateMethod {
    pub fn describe(&self) -> &'static str {
        match self {
            SteadyStateMethod::DirectSolve => "direct solve of M a = -v",
            SteadyStateMethod::KernelProjection => {
                "kernel projection with particular solution"
            }
            SteadyStateMethod::Relaxation => "long-time relaxation with convergence check",
        }
    }
}

/// Long-time state. Invertible M gives −M⁻¹v directly; a singular M needs
/// the initial state and returns the projection onto ker M plus the
/// particular solution on the decaying complement.
pub fn steady_state(gen: &BlochGenerator, a0: Option<&BlochVector>) -> Result<BlochVector> {
    steady_state_detailed(gen, a0).map(|(a, _)| a)
}

/// As [`steady_state`], also reporting which path was taken.
pub fn steady_state_detailed(
    gen: &BlochGenerator,
    a0: Option<&BlochVector>,
) -> Result<(BlochVector, SteadyStateMethod)> {
    let tol = gen.zero_tol();
    let eigs = eigendecompose(&gen.m)?;
    if eigs.values.iter().any(|z| z.re > tol) {
        return Err(Error::Singular(format!(
            "generator has a growing mode (max Re = {:.3e})",
            eigs.values.iter().map(|z| z.re).fold(f64::MIN, f64::max)
        )));
    }
    let oscillatory = eigs
        .values
        .iter()
        .any(|z| z.re.abs() <= tol && z.im.abs() > tol);
    let singular = eigs.values.iter().any(|z| z.norm() <= tol);
    if !singular && !oscillatory {
        let a = gen
            .m
            .clone()
            .full_piv_lu()
            .solve(&(-&gen.v))
            .ok_or_else(|| Error::Singular("generator matrix did not factor".into()))?;
        return Ok((BlochVector::new(gen.dim, a)?, SteadyStateMethod::DirectSolve));
    }
    let a0 = a0.ok_or(Error::SteadyStateNeedsInitial)?;
    check_len(gen.m.ncols(), a0.coords().len(), "initial state length")?;
    if oscillatory {
        let a = steady_state_by_relaxation(gen, a0, tol, &eigs.values)?;
        return Ok((a, SteadyStateMethod::Relaxation));
    }
    let split = zero_split(&gen.m, &gen.v, tol)?;
    let a = &split.projector * a0.coords() + &split.particular;
    Ok((
        BlochVector::new(gen.dim, a)?,
        SteadyStateMethod::KernelProjection,
    ))
}

/// Fallback for persistent oscillations: evolve to t = 10³/Γ_min and check
/// the state stopped moving.
fn steady_state_by_relaxation(
    gen: &BlochGenerator,
    a0: &BlochVector,
    tol: f64,
    values: &[Complex64],
) -> Result<BlochVector> {
    let gamma_min = values
        .iter()
        .filter(|z| z.re < -tol)
        .map(|z| -z.re)
        .fold(f64::INFINITY, f64::min);
    if !gamma_min.is_finite() {
        return Err(Error::Singular(
            "generator has only oscillatory modes; no steady state".into(),
        ));
    }
    let t_end = 1e3 / gamma_min;
    let traj = evolve(gen, a0, &[0.9 * t_end, t_end])?;
    let drift = (traj.states[1].coords() - traj.states[0].coords()).norm();
    if drift > 1e-8 {
        return Err(Error::Singular(format!(
            "state still drifting at t = 10³/Γ_min (‖Δa‖ = {drift:.3e})"
        )));
    }
    Ok(traj.states[1].clone())
}

/// Full eigendecomposition of M, rates Γ = −Re λ in descending order.
pub fn spectrum(gen: &BlochGenerator) -> Result<Spectrum> {
    let eig = eigendecompose(&gen.m)?;
    let n = eig.values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| {
        (eig.values[x].re, eig.values[x].im, x)
            .partial_cmp(&(eig.values[y].re, eig.values[y].im, y))
            .unwrap()
    });
    let eigenvalues: Vec<Complex64> = order.iter().map(|&k| eig.values[k]).collect();
    let rates: Vec<f64> = eigenvalues.iter().map(|z| -z.re).collect();
    let mut eigenvectors = DMatrix::<Complex64>::zeros(n, n);
    for (slot, &k) in order.iter().enumerate() {
        eigenvectors.set_column(slot, &eig.vectors.column(k));
    }
    Ok(Spectrum {
        eigenvalues,
        rates,
        eigenvectors,
    })
}

/// Evolve a(t) on an increasing time grid via the matrix exponential,
/// a(t) = P₀ a0 + x + e^{Mt} ((I − P₀) a0 − x) with x the particular
/// solution on the complement of the kernel subspace.
pub fn evolve(gen: &BlochGenerator, a0: &BlochVector, times: &[f64]) -> Result<Trajectory> {
    check_len(gen.m.ncols(), a0.coords().len(), "initial state length")?;
    if times.is_empty() {
        return Err(Error::Config("time grid is empty".into()));
    }
    if times.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Config("time grid must be strictly increasing".into()));
    }
    if times[0] < 0.0 {
        return Err(Error::Config("time grid must be non-negative".into()));
    }
    let split: ZeroSplit = zero_split(&gen.m, &gen.v, gen.zero_tol())?;
    let fixed = &split.projector * a0.coords();
    let transient0 = a0.coords() - &fixed - &split.particular;
    let mut states = Vec::with_capacity(times.len());
    let mut purity = Vec::with_capacity(times.len());
    for &t in times {
        let propagator = expm(&(&gen.m * t))?;
        let a = &fixed + &split.particular + propagator * &transient0;
        let state = BlochVector::new(gen.dim, a)?;
        purity.push(state.purity());
        states.push(state);
    }
    Ok(Trajectory {
        times: times.to_vec(),
        states,
        purity,
        potential: None,
    })
}

/// Uniform grid helper.
pub fn time_grid(t_start: f64, t_end: f64, steps: usize) -> Result<Vec<f64>> {
    if steps < 1 {
        return Err(Error::Config("steps must be at least 1".into()));
    }
    if t_end <= t_start {
        return Err(Error::Config("t_end must exceed t_start".into()));
    }
    let dt = (t_end - t_start) / steps as f64;
    Ok((0..=steps).map(|k| t_start + dt * k as f64).collect())
}

/// Frobenius norm of [M, S_b] where S_b a = b ⋆ a. Vanishes for a single
/// Hermitian qutrit jump; diagnostic only otherwise.
pub fn qutrit_star_symmetry(
    gen: &BlochGenerator,
    b: &DVector<f64>,
    basis: &SuBasis,
) -> Result<f64> {
    check_len(gen.m.ncols(), b.len(), "jump vector length")?;
    let s = basis.star_matrix(b)?;
    Ok((&gen.m * &s - &s * &gen.m).norm())
}

/// Closed-form spectrum and steady state for a single traceless qubit jump.
#[derive(Debug, Clone)]
pub struct QubitJumpAnalytics {
    /// −Γ values; real because the qubit generator is symmetric.
    pub eigenvalues: [f64; 3],
    /// b × b̄ and b ∓ (b·b/|b·b|) b̄; None in the (near-)Hermitian limit
    /// where the formulas degenerate to zero vectors.
    pub eigenvectors: Option<[DVector<Complex64>; 3]>,
    /// Im[b̄ × b]/(b·b̄); None when M is singular (essentially Hermitian b).
    pub steady_state: Option<DVector<f64>>,
    /// 1 − |b·b|²/(b·b̄)² when the steady state exists.
    pub steady_state_norm_squared: Option<f64>,
}

/// Evaluate the analytic single-jump qubit formulas, flagging the
/// degenerate Hermitian limit where they stop working.
pub fn qubit_single_jump_analytics(b: &DVector<Complex64>) -> Result<QubitJumpAnalytics> {
    check_len(3, b.len(), "qubit jump vector")?;
    let bb_conj = b.dotc(b).re; // b·b̄ = |b|²
    if bb_conj <= 0.0 {
        return Err(Error::AnalyticInapplicable("zero jump vector".into()));
    }
    let q = b.transpose().tr_dot(b); // unconjugated b·b
    let root = q.norm();
    let eigenvalues = [
        -0.5 * bb_conj,
        -0.25 * bb_conj - 0.25 * root,
        -0.25 * bb_conj + 0.25 * root,
    ];
    let b_conj = b.map(|z| z.conj());
    let cross = cross3(b, &b_conj);
    let degenerate = root < 1e-12 * bb_conj || cross.norm() < 1e-12 * bb_conj;
    let eigenvectors = if degenerate {
        None
    } else {
        let phase = q / root;
        Some([
            cross.clone(),
            b - &b_conj * phase,
            b + &b_conj * phase,
        ])
    };
    let invertible = eigenvalues[2] < -1e-12 * bb_conj;
    let (steady_state, steady_state_norm_squared) = if invertible {
        let cross_cb = cross3(&b_conj, b);
        let a_ss = cross_cb.map(|z| z.im) / bb_conj;
        let norm_sq = 1.0 - (root * root) / (bb_conj * bb_conj);
        (Some(a_ss), Some(norm_sq))
    } else {
        (None, None)
    };
    Ok(QubitJumpAnalytics {
        eigenvalues,
        eigenvectors,
        steady_state,
        steady_state_norm_squared,
    })
}

fn cross3(a: &DVector<Complex64>, b: &DVector<Complex64>) -> DVector<Complex64> {
    DVector::from_vec(vec![
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ])
}

/// The three distinct nonzero relaxation rates −Γ of a single Hermitian
/// qutrit jump, r_n = −(2/3)|b|² sin²(arccos(6[(b⋆b)·b]²/|b|⁶ − 1)/6 − πn/3).
/// Each appears twice in the spectrum alongside the double zero.
pub fn qutrit_hermitian_jump_roots(b: &DVector<f64>, basis: &SuBasis) -> Result<[f64; 3]> {
    check_len(8, b.len(), "qutrit jump vector")?;
    check_len(3, basis.dim(), "qutrit basis")?;
    let norm_sq = b.norm_squared();
    if norm_sq <= 0.0 {
        return Err(Error::AnalyticInapplicable("zero jump vector".into()));
    }
    let bsb = basis.star(b, b)?;
    let cubic = bsb.dot(b);
    let mut x = 6.0 * cubic * cubic / norm_sq.powi(3) - 1.0;
    if !(-1.0 - 1e-9..=1.0 + 1e-9).contains(&x) {
        return Err(Error::AnalyticInapplicable(format!(
            "arccos argument {x} outside [−1, 1]"
        )));
    }
    x = x.clamp(-1.0, 1.0);
    let theta = x.acos() / 6.0;
    let mut out = [0.0; 3];
    for (n, slot) in out.iter_mut().enumerate() {
        let s = (theta - std::f64::consts::PI * n as f64 / 3.0).sin();
        *slot = -(2.0 / 3.0) * norm_sq * s * s;
    }
    Ok(out)
}
