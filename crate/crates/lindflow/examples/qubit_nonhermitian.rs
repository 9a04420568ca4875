//! A single non-Hermitian qubit jump: the closed-form eigenvalues, the
//! steady state Im[b̄ × b]/(b·b̄), and its purity — compared against the
//! numerical spectrum of the generator.
//!
//!     cargo run --example qubit_nonhermitian

use lindflow::algebra::SuBasis;
use lindflow::bloch::{bloch_scale, from_bloch, BlochVector};
use lindflow::dynamics::{
    build_generator, qubit_single_jump_analytics, spectrum, steady_state,
};
use lindflow::lindblad::LindbladModel;
use nalgebra::DVector;
use num_complex::Complex64;

fn main() -> lindflow::Result<()> {
    let basis = SuBasis::generate(2)?;
    // jump vector with a genuine imaginary part: a lowering-type channel
    let b = DVector::from_vec(vec![
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, 0.8),
        Complex64::new(0.3, -0.2),
    ]);
    let jump = basis.expand(&(b.clone() * Complex64::new(bloch_scale(2), 0.0)))?;
    let model = LindbladModel::new(vec![jump], &basis)?;
    let gen = build_generator(&model, &basis)?;

    let analytics = qubit_single_jump_analytics(&b)?;
    let spec = spectrum(&gen)?;
    println!("closed-form eigenvalues: {:?}", analytics.eigenvalues);
    println!(
        "numerical eigenvalues:   {:?}",
        spec.eigenvalues.iter().map(|z| z.re).collect::<Vec<_>>()
    );

    let ss = steady_state(&gen, None)?;
    let want = analytics.steady_state.expect("generator is invertible");
    println!("\nsteady state (numeric):  {:?}", ss.coords().as_slice());
    println!("steady state (analytic): {:?}", want.as_slice());
    println!(
        "|a_ss|^2 = {:.12} (formula 1 − |b·b|²/(b·b̄)² = {:.12})",
        ss.coords().norm_squared(),
        analytics.steady_state_norm_squared.unwrap()
    );
    let img = from_bloch(&ss, &basis)?;
    println!(
        "steady-state purity {:.6}; positive = {}",
        ss.purity(),
        img.positive
    );

    // the Hermitian limit degenerates the eigenvector formulas
    let herm = DVector::from_vec(vec![
        Complex64::new(1.0, 0.0),
        Complex64::new(0.5, 0.0),
        Complex64::new(-0.2, 0.0),
    ]);
    let degenerate = qubit_single_jump_analytics(&herm)?;
    println!(
        "\nHermitian b: eigenvector formulas applicable = {}, steady-state formula applicable = {}",
        degenerate.eigenvectors.is_some(),
        degenerate.steady_state.is_some()
    );
    println!("(the generator is singular there; use an initial state instead)");
    let _ = BlochVector::zero(2)?;
    Ok(())
}
