//! The worked D = 3 amplitude-damping channel end to end: jump vector,
//! exact Bloch generator, spectrum, and the pure steady state diag(1,0,0).
//!
//!     cargo run --example amplitude_damping

use lindflow::algebra::SuBasis;
use lindflow::bloch::from_bloch;
use lindflow::dynamics::{build_generator, spectrum, steady_state};
use lindflow::lindblad::LindbladModel;
use nalgebra::DMatrix;
use num_complex::Complex64;

fn main() -> lindflow::Result<()> {
    let gamma = 1.0;
    let basis = SuBasis::generate(3)?;
    let mut b = DMatrix::<Complex64>::zeros(3, 3);
    b[(0, 1)] = Complex64::new(gamma, 0.0);
    b[(1, 2)] = Complex64::new(2f64.sqrt() * gamma, 0.0);
    let model = LindbladModel::new(vec![b], &basis)?;

    let jv = &model.jump_vectors()[0];
    println!("jump vector b (units of γ):");
    for z in jv.b.iter() {
        print!("  {:+.6}{:+.6}i", z.re, z.im);
    }
    println!("\n(= (√3/2)(1, i, 0, 0, 0, √2, √2 i, 0))");

    let gen = build_generator(&model, &basis)?;
    println!("\nBloch generator M (units of γ²):");
    for i in 0..8 {
        print!(" ");
        for j in 0..8 {
            print!(" {:+8.4}", gen.matrix()[(i, j)]);
        }
        println!();
    }
    println!("drift v = {:?}", gen.drift().as_slice());
    println!(
        "det M = {:.12} (exactly 9/8 γ¹⁶)",
        gen.matrix().clone().lu().determinant()
    );

    let spec = spectrum(&gen)?;
    println!("\nrelaxation rates: {:?}", spec.rates);

    let ss = steady_state(&gen, None)?;
    println!("\nsteady state a_ss = {:?}", ss.coords().as_slice());
    println!("(= (0, 0, √3/2, 0, 0, 0, 0, 1/2))");
    let img = from_bloch(&ss, &basis)?;
    println!("as a density matrix (should be diag(1, 0, 0)):");
    for i in 0..3 {
        print!(" ");
        for j in 0..3 {
            print!(" {:+.6}{:+.6}i", img.matrix[(i, j)].re, img.matrix[(i, j)].im);
        }
        println!();
    }
    println!("purity {:.12} — the system settles into the ground state", ss.purity());
    Ok(())
}
