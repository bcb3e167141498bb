//! Every generator, written in the plain-text point format.
//!
//!     cargo run --example generate_point_sets

use l2disc::io::format_point_set;
use l2disc::{generate, warnock_l2, GeneratorKind, GeneratorSpec};

fn main() -> l2disc::Result<()> {
    for kind in GeneratorKind::ALL {
        let d = if kind == GeneratorKind::VanDerCorput { 1 } else { 2 };
        let ps = generate(&GeneratorSpec::new(kind, 8, d).with_seed(42))?;
        println!("## {kind}  (‖D‖ = {:.6})", warnock_l2(&ps).l2_norm);
        print!("{}", format_point_set(&ps));
        println!();
    }

    let shifted = GeneratorSpec::new(GeneratorKind::DigitShiftHammersley, 8, 2)
        .with_shift(vec![false, true, true]);
    println!("## explicit shift 011");
    print!("{}", format_point_set(&generate(&shifted)?));
    Ok(())
}
