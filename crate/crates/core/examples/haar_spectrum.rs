//! Haar spectrum of the discrepancy function of an 8-point Hammersley set,
//! split into point and volume parts, with the empty boxes marked.
//!
//!     cargo run --example haar_spectrum

use l2disc::haar::write_spectrum_csv;
use l2disc::{generate, haar_spectrum, GeneratorKind, GeneratorSpec, DEFAULT_BUDGET};

fn main() -> l2disc::Result<()> {
    let ps = generate(&GeneratorSpec::new(GeneratorKind::Hammersley, 8, 2))?;
    let coeffs = haar_spectrum(&ps, 2, DEFAULT_BUDGET, false)?;

    for c in coeffs.iter().filter(|c| c.index.level_sum() == 3) {
        let tag = if c.point_part == 0.0 { "empty" } else { "" };
        println!(
            "j={:?} m={:?}  value={:+.6e}  {tag}",
            c.index.levels(),
            c.index.positions(),
            c.value
        );
    }

    println!("\nfull spectrum up to J = 2 as CSV:");
    write_spectrum_csv(std::io::stdout().lock(), ps.dim(), &coeffs)
}
