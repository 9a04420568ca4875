//! Orthogonal Helmholtz-Hodge decomposition of the Bloch dynamics.
//!
//! The flow M a + v splits into −(P a + p) and (M + P) a + v + p with the
//! two parts orthogonal at every point. That requires
//!
//!   MᵀP + PM + 2P² = 0        (degenerate algebraic Riccati)
//!   Mᵀp + P(v + 2p) = 0
//!   p·(v + p) = 0             (holds automatically; checked)
//!
//! plus `Tr[P]` = −`Tr[M]` from solenoidality. P is extracted from the ordered
//! real Schur form of Z = [[M, 2I], [0, −Mᵀ]]: the strictly positive
//! eigenvalues are sorted into the leading block (decreasing order
//! throughout), the invariant subspace is augmented with the exact kernel
//! eigenvectors (x; 0), x ∈ ker M, and P = U₂₁U₁₁⁻¹. A Newton polish then
//! pushes the residuals toward machine precision. Every output is gated on
//! the residuals, so an invalid P is never returned silently.

use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::check_len;
use crate::bloch::BlochVector;
use crate::dynamics::{BlochGenerator, Trajectory};
use crate::error::{Error, Result};
use crate::numeric::{kernel_basis, real_schur, sort_descending_by_real_part};
use crate::sampling;

/// Residual gate for the decomposition (scaled by the generator size).
pub const HHD_TOL: f64 = 1e-8;
/// Relative eigenvalue threshold for the kernel of M.
pub const KERNEL_TOL: f64 = 1e-9;
/// Condition-number bound on U₁₁ above which the solve is rejected.
pub const U11_CONDITION_LIMIT: f64 = 1e12;

/// Measured residuals of the decomposition, all Frobenius/Euclidean norms.
#[derive(Debug, Clone, Copy)]
pub struct HhdResiduals {
    /// ‖MᵀP + PM + 2P²‖
    pub riccati: f64,
    /// ‖Mᵀp + P(v + 2p)‖
    pub linear: f64,
    /// |p·(v + p)|
    pub scalar: f64,
    /// |Tr P + Tr M|
    pub trace: f64,
    /// max over random probes of the normalized gradient-solenoid overlap
    pub orthogonality: f64,
    /// symmetrization delta ‖P − Pᵀ‖/2 before P was symmetrized
    pub symmetry: f64,
}

impl HhdResiduals {
    pub fn max(&self) -> f64 {
        self.riccati
            .max(self.linear)
            .max(self.scalar)
            .max(self.trace)
            .max(self.orthogonality)
            .max(self.symmetry)
    }
}

/// The orthogonal decomposition data: symmetric P, vector p, diagnostics.
#[derive(Debug, Clone)]
pub struct HHDecomposition {
    dim: usize,
    p_matrix: DMatrix<f64>,
    p_vector: DVector<f64>,
    residuals: HhdResiduals,
}

impl HHDecomposition {
    /// Solve the orthogonality system for a generator and gate the result.
    pub fn compute(gen: &BlochGenerator) -> Result<Self> {
        let p_matrix = solve_riccati(gen)?;
        let p_vector = solve_linear(gen, &p_matrix)?;
        Self::assemble(gen, p_matrix, p_vector)
    }

    /// Wrap externally produced (P, p), measuring and gating the residuals.
    pub fn assemble(
        gen: &BlochGenerator,
        p_matrix: DMatrix<f64>,
        p_vector: DVector<f64>,
    ) -> Result<Self> {
        let n = gen.matrix().nrows();
        check_len(n, p_matrix.nrows(), "P rows")?;
        check_len(n, p_matrix.ncols(), "P cols")?;
        check_len(n, p_vector.len(), "p length")?;
        let symmetry = (&p_matrix - p_matrix.transpose()).norm() / 2.0;
        let p_matrix = (&p_matrix + p_matrix.transpose()) / 2.0;
        let residuals = measure_residuals(gen, &p_matrix, &p_vector, symmetry);
        let scale = gen.matrix().norm().max(1.0);
        let gate = HHD_TOL * scale.powi(2).max(scale);
        if residuals.riccati > gate || residuals.linear > gate {
            return Err(Error::RiccatiInapplicable(format!(
                "residuals exceed tolerance (riccati {:.3e}, linear {:.3e})",
                residuals.riccati, residuals.linear
            )));
        }
        if residuals.trace > HHD_TOL * scale {
            return Err(Error::RiccatiInapplicable(format!(
                "trace constraint failed (|Tr P + Tr M| = {:.3e}); wrong Schur ordering",
                residuals.trace
            )));
        }
        if residuals.scalar > gate || residuals.orthogonality > HHD_TOL {
            return Err(Error::RiccatiInapplicable(format!(
                "orthogonality checks failed (scalar {:.3e}, overlap {:.3e})",
                residuals.scalar, residuals.orthogonality
            )));
        }
        Ok(HHDecomposition {
            dim: gen.dim(),
            p_matrix,
            p_vector,
            residuals,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn p_matrix(&self) -> &DMatrix<f64> {
        &self.p_matrix
    }

    pub fn p_vector(&self) -> &DVector<f64> {
        &self.p_vector
    }

    pub fn residuals(&self) -> &HhdResiduals {
        &self.residuals
    }

    /// Lyapunov potential Φ̃(a) = (D/(D−1)) (½ aᵀPa + pᵀa).
    pub fn potential(&self, a: &BlochVector) -> Result<f64> {
        let x = a.coords();
        check_len(self.p_vector.len(), x.len(), "potential argument")?;
        let quad = (x.transpose() * &self.p_matrix * x)[(0, 0)];
        let lin = self.p_vector.dot(x);
        Ok(self.mobility() * (0.5 * quad + lin))
    }

    /// ∇ₐΦ̃ = (D/(D−1)) (P a + p).
    pub fn potential_gradient(&self, a: &BlochVector) -> Result<DVector<f64>> {
        let x = a.coords();
        check_len(self.p_vector.len(), x.len(), "gradient argument")?;
        Ok((&self.p_matrix * x + &self.p_vector) * self.mobility())
    }

    /// dΦ̃/dt along the flow, −(D/(D−1)) ‖P a + p‖².
    pub fn potential_decay_rate(&self, a: &BlochVector) -> Result<f64> {
        let x = a.coords();
        check_len(self.p_vector.len(), x.len(), "decay-rate argument")?;
        Ok(-self.mobility() * (&self.p_matrix * x + &self.p_vector).norm_squared())
    }

    fn mobility(&self) -> f64 {
        self.dim as f64 / (self.dim as f64 - 1.0)
    }
}

/// Solve MᵀP + PM + 2P² = 0 by the ordered-Schur construction.
pub fn solve_riccati(gen: &BlochGenerator) -> Result<DMatrix<f64>> {
    let m = gen.matrix();
    let n = m.nrows();
    let tol = KERNEL_TOL * m.norm().max(f64::MIN_POSITIVE);

    let mut z = DMatrix::<f64>::zeros(2 * n, 2 * n);
    z.view_mut((0, 0), (n, n)).copy_from(m);
    z.view_mut((n, n), (n, n)).copy_from(&(-m.transpose()));
    for i in 0..n {
        z[(i, n + i)] = 2.0;
    }
    let mut schur = real_schur(&z)?;
    sort_descending_by_real_part(&mut schur, tol)?;

    // ker M is semisimple and its SVD count is reliable; the zero eigenvalues
    // of Z sit in defective pairs and split by O(sqrt(eps)) numerically, so
    // they cannot be counted from the Schur diagonal. The descending sort
    // still puts the n − k genuinely positive eigenvalues first, since the
    // split fakes are orders of magnitude below any physical rate.
    let kernel = kernel_basis(m, tol)?;
    let k = kernel.ncols();
    if k > n {
        return Err(Error::RiccatiInapplicable(format!(
            "kernel dimension {k} exceeds the generator size {n}"
        )));
    }
    let n_pos = n - k;
    let eigs = schur.eigenvalues();
    let strictly_negative = eigs.iter().filter(|l| l.re < -tol).count();
    if strictly_negative < n_pos {
        return Err(Error::RiccatiInapplicable(format!(
            "{strictly_negative} strictly decaying eigenvalues cannot pair with \
             {n_pos} positive ones; spectrum sits too close to the imaginary axis"
        )));
    }

    // invariant subspace: positive Schur vectors plus kernel eigenvectors (x; 0)
    let mut x = DMatrix::<f64>::zeros(2 * n, n);
    x.view_mut((0, 0), (2 * n, n_pos))
        .copy_from(&schur.u.columns(0, n_pos));
    for j in 0..k {
        for i in 0..n {
            x[(i, n_pos + j)] = kernel[(i, j)];
        }
    }
    let x = x.qr().q();

    let u11 = x.view((0, 0), (n, n)).into_owned();
    let u21 = x.view((n, 0), (n, n)).into_owned();
    let svd = u11.clone().svd(false, false);
    let smax = svd.singular_values.max();
    let smin = svd.singular_values.min();
    if smin <= 0.0 || smax / smin > U11_CONDITION_LIMIT {
        return Err(Error::RiccatiInapplicable(format!(
            "U11 is singular or ill-conditioned (cond = {:.3e})",
            if smin > 0.0 { smax / smin } else { f64::INFINITY }
        )));
    }
    // P = U21 U11⁻¹ via U11ᵀ Pᵀ = U21ᵀ
    let p_t = u11
        .transpose()
        .lu()
        .solve(&u21.transpose())
        .ok_or_else(|| Error::RiccatiInapplicable("U11 solve failed".into()))?;
    let p = p_t.transpose();
    let p = (&p + p.transpose()) / 2.0;
    Ok(newton_polish(m, p))
}

/// A few Newton steps on F(P) = MᵀP + PM + 2P², solving the Lyapunov-type
/// correction AΔ + ΔAᵀ = −F with A = Mᵀ + 2P. Skipped silently when A is
/// singular (Hermitian models with kernels); the Schur solution is then
/// already the exact P = −M branch.
fn newton_polish(m: &DMatrix<f64>, p0: DMatrix<f64>) -> DMatrix<f64> {
    let n = m.nrows();
    let residual = |p: &DMatrix<f64>| (m.transpose() * p + p * m + p * p * 2.0).norm();
    let mut best = p0;
    let mut best_res = residual(&best);
    let floor = 1e-14 * m.norm().powi(2).max(1.0);
    let id = DMatrix::<f64>::identity(n, n);
    for _ in 0..4 {
        if best_res <= floor {
            break;
        }
        let a = m.transpose() + &best * 2.0;
        let f = m.transpose() * &best + &best * m + &best * &best * 2.0;
        let system = id.kronecker(&a) + a.kronecker(&id);
        let rhs = DVector::<f64>::from_fn(n * n, |r, _| -f[(r % n, r / n)]);
        let Some(delta_vec) = system.lu().solve(&rhs) else {
            break;
        };
        let delta = DMatrix::<f64>::from_fn(n, n, |i, j| delta_vec[j * n + i]);
        let cand = &best + &delta;
        let cand = (&cand + cand.transpose()) / 2.0;
        let res = residual(&cand);
        if res < best_res {
            best = cand;
            best_res = res;
        } else {
            break;
        }
    }
    best
}

/// Solve Mᵀp + P(v + 2p) = 0 for p, given P from the Riccati step.
pub fn solve_linear(gen: &BlochGenerator, p_matrix: &DMatrix<f64>) -> Result<DVector<f64>> {
    let m = gen.matrix();
    let v = gen.drift();
    let n = m.nrows();
    check_len(n, p_matrix.nrows(), "P rows")?;
    check_len(n, p_matrix.ncols(), "P cols")?;
    if v.norm() <= f64::MIN_POSITIVE {
        return Ok(DVector::zeros(n));
    }
    let a = m.transpose() + p_matrix * 2.0;
    // LU alone misses near-singular systems (pivots round to ~eps, not 0),
    // so rank-check first and report the null space when p is not unique
    let svd = a.clone().svd(false, false);
    let smax = svd.singular_values.max();
    let smin = svd.singular_values.min();
    if smax <= 0.0 || smin <= KERNEL_TOL * smax {
        let null = kernel_basis(&a, KERNEL_TOL * smax.max(f64::MIN_POSITIVE))?;
        return Err(Error::Singular(format!(
            "(Mᵀ + 2P) is singular with a {}-dimensional null space; \
             the linear system for p has no unique solution",
            null.ncols()
        )));
    }
    let rhs = -(p_matrix * v);
    a.full_piv_lu()
        .solve(&rhs)
        .ok_or_else(|| Error::Singular("(Mᵀ + 2P) did not factor".into()))
}

/// Gradient and solenoidal parts of the flow at a point:
/// (−(Pa + p), (M + P)a + v + p). Their sum is M a + v.
pub fn decompose(
    dec: &HHDecomposition,
    gen: &BlochGenerator,
    a: &BlochVector,
) -> Result<(DVector<f64>, DVector<f64>)> {
    let x = a.coords();
    check_len(dec.p_vector.len(), x.len(), "decompose argument")?;
    let grad_part = -(dec.p_matrix() * x + dec.p_vector());
    let flow = gen.apply(x)?;
    let sol_part = flow - &grad_part;
    Ok((grad_part, sol_part))
}

/// Lyapunov diagnostics along a simulated trajectory.
#[derive(Debug, Clone)]
pub struct LyapunovReport {
    /// Φ̃ never increased by more than 1e−10 between grid points.
    pub monotone: bool,
    /// Largest observed increase between successive grid points.
    pub max_increase: f64,
    /// max |dΦ̃/dt (finite differences) + (D/(D−1))‖Pa+p‖²| over interior
    /// points, normalized by the largest rate magnitude.
    pub max_rate_relative_error: f64,
    /// Φ̃ at each grid point.
    pub potentials: Vec<f64>,
}

/// Check Φ̃ is non-increasing along the trajectory and that its decay rate
/// matches −(D/(D−1))‖Pa + p‖².
pub fn lyapunov_check(dec: &HHDecomposition, traj: &Trajectory) -> Result<LyapunovReport> {
    if traj.times.len() < 2 {
        return Err(Error::Config("trajectory too short for a Lyapunov check".into()));
    }
    let potentials: Vec<f64> = traj
        .states
        .iter()
        .map(|s| dec.potential(s))
        .collect::<Result<_>>()?;
    let mut max_increase: f64 = 0.0;
    for w in potentials.windows(2) {
        max_increase = max_increase.max(w[1] - w[0]);
    }
    let rates: Vec<f64> = traj
        .states
        .iter()
        .map(|s| dec.potential_decay_rate(s))
        .collect::<Result<_>>()?;
    let rate_scale = rates.iter().fold(0.0f64, |acc, r| acc.max(r.abs()));
    let mut max_rate_relative_error: f64 = 0.0;
    if rate_scale > 0.0 {
        for k in 1..potentials.len() - 1 {
            let fd = (potentials[k + 1] - potentials[k - 1]) / (traj.times[k + 1] - traj.times[k - 1]);
            max_rate_relative_error =
                max_rate_relative_error.max((fd - rates[k]).abs() / rate_scale);
        }
    }
    Ok(LyapunovReport {
        monotone: max_increase < 1e-10,
        max_increase,
        max_rate_relative_error,
        potentials,
    })
}

fn measure_residuals(
    gen: &BlochGenerator,
    p: &DMatrix<f64>,
    pv: &DVector<f64>,
    symmetry: f64,
) -> HhdResiduals {
    let m = gen.matrix();
    let v = gen.drift();
    let riccati = (m.transpose() * p + p * m + p * p * 2.0).norm();
    let linear = (m.transpose() * pv + p * (v + pv * 2.0)).norm();
    let scalar = pv.dot(&(v + pv)).abs();
    let trace: f64 = (0..m.nrows()).map(|i| p[(i, i)] + m[(i, i)]).sum();
    let mut rng = ChaCha8Rng::seed_from_u64(0x4848_4444);
    let mut orthogonality: f64 = 0.0;
    for _ in 0..20 {
        let a = sampling::random_real_vector(m.nrows(), &mut rng);
        let grad = p * &a + pv;
        let sol = (m + p) * &a + v + pv;
        let overlap = grad.dot(&sol).abs() / (grad.norm() * sol.norm() + 1.0);
        orthogonality = orthogonality.max(overlap);
    }
    HhdResiduals {
        riccati,
        linear,
        scalar,
        trace: trace.abs(),
        orthogonality,
        symmetry,
    }
}
