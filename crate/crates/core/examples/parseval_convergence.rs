//! Partial Parseval sums of the Haar spectrum climbing to the exact squared
//! norm as the level cap J grows.
//!
//!     cargo run --example parseval_convergence

use l2disc::{generate, parseval_partial_sum, warnock_l2, GeneratorKind, GeneratorSpec, DEFAULT_BUDGET};

fn main() -> l2disc::Result<()> {
    let ps = generate(&GeneratorSpec::new(GeneratorKind::RandomUniform, 32, 2).with_seed(1))?;
    let exact = warnock_l2(&ps).l2_norm_squared;
    println!("exact {exact:.12}");
    println!("{:>3}  {:>16}  {:>10}", "J", "partial", "gap %");
    for j in -1..=14 {
        let p = parseval_partial_sum(&ps, j, DEFAULT_BUDGET)?;
        println!("{j:>3}  {p:>16.12}  {:>10.5}", 100.0 * (exact - p) / exact);
    }
    Ok(())
}
