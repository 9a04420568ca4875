//! Single Hermitian qutrit jump: the eight eigenvalues come out of a cubic
//! whose roots have a closed trigonometric form, the kernel is spanned by
//! b and b ⋆ b, and the generator commutes with the star-product map S_b.
//!
//!     cargo run --example qutrit_spectrum

use lindflow::algebra::SuBasis;
use lindflow::bloch::bloch_scale;
use lindflow::dynamics::{
    build_generator, qutrit_hermitian_jump_roots, qutrit_star_symmetry, spectrum,
};
use lindflow::lindblad::LindbladModel;
use lindflow::sampling::random_real_vector;
use nalgebra::DVector;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> lindflow::Result<()> {
    let basis = SuBasis::generate(3)?;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let b = random_real_vector(8, &mut rng);
    let bc = DVector::from_iterator(8, b.iter().map(|&x| Complex64::new(x, 0.0)));
    let jump = basis.expand(&(bc * Complex64::new(bloch_scale(3), 0.0)))?;
    let model = LindbladModel::new(vec![jump], &basis)?;
    let gen = build_generator(&model, &basis)?;

    let roots = qutrit_hermitian_jump_roots(&b, &basis)?;
    println!("closed-form roots (each doubly degenerate): {roots:?}");
    let spec = spectrum(&gen)?;
    println!(
        "numerical spectrum: {:?}",
        spec.eigenvalues.iter().map(|z| z.re).collect::<Vec<_>>()
    );

    let bsb = basis.star(&b, &b)?;
    println!(
        "\nkernel residuals: ‖M b‖ = {:.3e}, ‖M (b ⋆ b)‖ = {:.3e}",
        (gen.matrix() * &b).norm(),
        (gen.matrix() * &bsb).norm()
    );
    println!(
        "star symmetry ‖[M, S_b]‖_F = {:.3e}",
        qutrit_star_symmetry(&gen, &b, &basis)?
    );

    // the symmetry is special to Hermitian jumps
    let other = random_real_vector(8, &mut rng);
    println!(
        "for an unrelated direction w: ‖[M, S_w]‖_F = {:.3e} (no symmetry)",
        qutrit_star_symmetry(&gen, &other, &basis)?
    );
    Ok(())
}
