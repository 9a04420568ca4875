//! The exact split L(ρ) = −∂Φ/∂ρᵀ + R(ρ) for a random non-Hermitian model:
//! residuals of the identity, the purity law dγ/dt = −4Φ, the vanishing
//! divergence of the solenoidal map, and the harmonic gauge freedom.
//!
//!     cargo run --example gradient_split

use lindflow::algebra::SuBasis;
use lindflow::lindblad::{
    gauge_gradient, grad_phi, grad_phi_finite_difference, lindbladian, materialize,
    matrix_laplacian, potential_phi, solenoidal_r, LindbladModel, SuperoperatorKind,
};
use lindflow::sampling::{random_density, random_jumps, random_traceless_hermitian};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> lindflow::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let basis = SuBasis::generate(3)?;
    let model = LindbladModel::new(random_jumps(3, 2, false, &mut rng), &basis)?;
    let rho = random_density(3, &mut rng);

    let l = lindbladian(&model, rho.matrix())?;
    let g = grad_phi(&model, rho.matrix())?;
    let r = solenoidal_r(&model, rho.matrix())?;
    println!("split residual ‖L + ∂Φ/∂ρᵀ − R‖ = {:.3e}", (&l + &g - &r).norm());

    let phi = potential_phi(&model, rho.matrix())?;
    let purity_rate = 2.0 * (rho.matrix() * &l).trace().re;
    println!("purity law: 2 Tr[ρ L(ρ)] = {purity_rate:.12}, −4Φ = {:.12}", -4.0 * phi);

    let fd = grad_phi_finite_difference(&model, rho.matrix(), 1e-5)?;
    println!(
        "finite-difference gradient agreement: {:.3e} (relative)",
        (&g - &fd).norm() / g.norm()
    );

    let r_map = materialize(SuperoperatorKind::RMap, &model);
    println!("divergence of the solenoidal map: {:.3e}", r_map.divergence().norm());

    // gauge freedom: shift Φ by the harmonic Tr[ρ²X], R by {X, ρ}
    let x = random_traceless_hermitian(3, &mut rng);
    let lap = matrix_laplacian(
        |m| (m * m * &x).trace(),
        &[rho.matrix().clone()],
        1e-3,
    )?;
    println!("\nharmonic check: Δ_ρ Tr[ρ²X] = {lap:.3e} for traceless X");
    let shift = gauge_gradient(&x, rho.matrix());
    let rebuilt = (&r + &shift) - (&g + &shift);
    println!(
        "shifted split reproduces L: residual {:.3e}",
        (rebuilt - l).norm()
    );

    // the identity map is not harmonic: Δ_ρ Tr[ρ² I] = 2 D Tr[I] = 2 D²
    let id = nalgebra::DMatrix::<Complex64>::identity(3, 3);
    let lap = matrix_laplacian(|m| (m * m * &id).trace(), &[rho.matrix().clone()], 1e-3)?;
    println!("Δ_ρ Tr[ρ²] with X = I: {lap:.6} (expected 18 at D = 3)");
    Ok(())
}
