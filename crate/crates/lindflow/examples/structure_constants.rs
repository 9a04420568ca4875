//! Generate su(D) bases, inspect the f and d tensors, and spot-check the
//! algebraic identities they satisfy.
//!
//!     cargo run --example structure_constants

use lindflow::algebra::SuBasis;
use lindflow::sampling::random_real_vector;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> lindflow::Result<()> {
    for dim in 2..=4 {
        let basis = SuBasis::generate(dim)?;
        println!(
            "su({dim}): {} generators, {} nonzero f entries, {} nonzero d entries",
            basis.adjoint_len(),
            basis.f().entries().len(),
            basis.d().entries().len()
        );
    }

    let basis = SuBasis::generate(3)?;
    println!("\nselected su(3) values (1-based indices):");
    for (j, k, l) in [(1, 2, 3), (4, 5, 8), (6, 7, 8)] {
        println!(
            "  f_{{{j}{k}{l}}} = {:+.12}",
            basis.f().get(j - 1, k - 1, l - 1)
        );
    }
    println!("  d_{{118}} = {:+.12}", basis.d().get(0, 0, 7));

    // Jacobi-like identities on random triples
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let n = basis.adjoint_len();
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let a = random_real_vector(n, &mut rng);
        let b = random_real_vector(n, &mut rng);
        let c = random_real_vector(n, &mut rng);
        let wedge_jacobi = basis.wedge(&basis.wedge(&a, &b)?, &c)?
            + basis.wedge(&basis.wedge(&c, &a)?, &b)?
            + basis.wedge(&basis.wedge(&b, &c)?, &a)?;
        let mixed = basis.wedge(&basis.star(&a, &b)?, &c)?
            + basis.wedge(&basis.star(&c, &a)?, &b)?
            + basis.wedge(&basis.star(&b, &c)?, &a)?;
        worst = worst.max(wedge_jacobi.norm()).max(mixed.norm());
    }
    println!("\nworst Jacobi residual over 100 random su(3) triples: {worst:.3e}");

    // coordinate-list JSON export, 1-based indices
    let entries = basis.f().coordinate_list();
    println!(
        "\nf tensor as JSON (first two of {} entries):\n{}",
        entries.len(),
        serde_json::to_string_pretty(&entries[..2])?
    );
    Ok(())
}
