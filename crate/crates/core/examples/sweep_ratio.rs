//! Finite-N trajectory of ‖D‖ / √ln N against the proven constant, for
//! Hammersley sets from 4 to 16384 points.
//!
//!     cargo run --release --example sweep_ratio

use l2disc::sweep::write_sweep;
use l2disc::{run_sweep, GeneratorKind, GeneratorSpec, OutputFormat, SweepConfig, DEFAULT_BUDGET};

fn main() -> l2disc::Result<()> {
    let config = SweepConfig {
        generator: GeneratorSpec::new(GeneratorKind::Hammersley, 1, 2),
        n_values: (2..=14).map(|k| 1usize << k).collect(),
        format: OutputFormat::Csv,
        kmax_offset: 20,
        budget: DEFAULT_BUDGET,
    };
    let report = run_sweep(&config)?;
    write_sweep(std::io::stdout().lock(), &report, config.format)?;
    eprintln!(
        "c2 = {:.8}, all certificates pass: {}",
        report.constants.c2,
        report.all_pass()
    );
    Ok(())
}
