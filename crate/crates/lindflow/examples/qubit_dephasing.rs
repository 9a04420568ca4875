//! Hermitian qubit jumps: pure gradient flow, relaxation rates, and the
//! monotone decay of purity toward the maximally mixed state.
//!
//!     cargo run --example qubit_dephasing

use lindflow::algebra::SuBasis;
use lindflow::bloch::BlochVector;
use lindflow::dynamics::{build_generator, evolve, spectrum, steady_state, time_grid};
use lindflow::lindblad::LindbladModel;
use nalgebra::DVector;

fn main() -> lindflow::Result<()> {
    let basis = SuBasis::generate(2)?;

    // three orthogonal Hermitian jumps: the Pauli matrices themselves
    let jumps = basis.lambdas().to_vec();
    let model = LindbladModel::new(jumps, &basis)?;
    let gen = build_generator(&model, &basis)?;
    let spec = spectrum(&gen)?;
    println!("three orthogonal jumps: rates = {:?}", spec.rates);
    println!("(every Bloch direction relaxes; the center is the attractor)");

    let a0 = BlochVector::new(2, DVector::from_vec(vec![0.6, 0.0, 0.7]))?;
    let times = time_grid(0.0, 1.5, 15)?;
    let traj = evolve(&gen, &a0, &times)?;
    println!("\n   t      |a|        purity");
    for (k, t) in traj.times.iter().enumerate() {
        println!(
            "  {t:4.2}  {:9.6}  {:9.6}",
            traj.states[k].norm(),
            traj.purity[k]
        );
    }

    // a single jump leaves a whole axis invariant
    let single = LindbladModel::new(vec![basis.lambdas()[2].clone()], &basis)?;
    let gen = build_generator(&single, &basis)?;
    let ss = steady_state(&gen, Some(&a0))?;
    println!(
        "\nsingle sigma_z jump from a0 = {:?}:\n  steady state {:?} (projection onto the jump axis)",
        a0.coords().as_slice(),
        ss.coords().as_slice()
    );
    Ok(())
}
