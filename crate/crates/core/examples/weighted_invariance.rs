//! Arbitrary real weights leave every empty-box Haar coefficient, and hence
//! the certificate, unchanged.
//!
//!     cargo run --example weighted_invariance

use l2disc::{certify, generate, warnock_l2, CertifyOptions, GeneratorKind, GeneratorSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> l2disc::Result<()> {
    let ps = generate(&GeneratorSpec::new(GeneratorKind::RandomUniform, 50, 2).with_seed(9))?;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let weights: Vec<f64> = (0..ps.len()).map(|_| rng.gen_range(-4.0..4.0)).collect();
    let weighted = ps.with_weights(Some(weights))?;

    let opts = CertifyOptions::default();
    let plain = certify(&ps, &opts)?;
    let heavy = certify(&weighted, &opts)?;
    println!("unweighted: ‖D‖² = {:.6}, certified ≥ {:.6}", plain.exact_l2sq, plain.empirical_lower);
    println!("weighted:   ‖D‖² = {:.6}, certified ≥ {:.6}", heavy.exact_l2sq, heavy.empirical_lower);
    println!(
        "certificates bit-identical: {}",
        plain.empirical_lower.to_bits() == heavy.empirical_lower.to_bits()
    );
    println!("weighted norm {:.6}", warnock_l2(&weighted).l2_norm);
    Ok(())
}
