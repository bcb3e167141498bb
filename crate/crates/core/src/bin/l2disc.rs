use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use l2disc::certificate::write_levels_csv;
use l2disc::haar::write_spectrum_csv;
use l2disc::sweep::write_sweep;
use l2disc::{
    certify, constants, generate, haar_spectrum, l2_monte_carlo, parseval_partial_sum,
    read_point_set, run_sweep, warnock_l2, write_point_set, CertifyOptions, Error, GeneratorKind,
    GeneratorSpec, OutputFormat, SweepConfig, DEFAULT_BUDGET,
};

const EXIT_CERT_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_IO: u8 = 3;
const EXIT_BUDGET: u8 = 4;
const EXIT_INPUT: u8 = 5;

#[derive(Parser)]
#[command(name = "l2disc", version, about = "L2-discrepancy, Haar spectra and lower-bound certificates")]
struct Cli {
    /// Cap on enumerated boxes / work units.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET as u64)]
    budget: u64,
    /// Worker threads (0 = all cores). Results do not depend on it.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated point set in the text format.
    Generate {
        #[arg(long)]
        kind: GeneratorKind,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long)]
        seed: Option<u64>,
        /// Binary digits XORed onto the radical inverse (digit_shift_hammersley).
        #[arg(long)]
        shift: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact L2-discrepancy, optionally with a Monte Carlo estimate.
    L2 {
        #[arg(long)]
        input: PathBuf,
        /// Monte Carlo sample count.
        #[arg(long)]
        mc: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Haar spectrum CSV up to level J_max, or the Parseval partial sum.
    Haar {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        jmax: i32,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print the Parseval partial sum as JSON instead of the spectrum.
        #[arg(long)]
        parseval: bool,
        /// Enumerate even when the box count exceeds the budget.
        #[arg(long)]
        force: bool,
    },
    /// Empty-box certificate as JSON (or per-level CSV).
    Certify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        kmax: Option<u32>,
        #[arg(long)]
        csv: bool,
        /// Also sum the Parseval terms of occupied boxes.
        #[arg(long)]
        diagnostic: bool,
    },
    /// Generate, measure and certify over a list of N.
    Sweep {
        #[arg(long)]
        kind: GeneratorKind,
        /// Comma-separated, ascending.
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 20)]
        kmax_offset: u32,
    },
    /// Print the constant table.
    Constants {
        #[arg(long, default_value_t = 8)]
        dmax: u32,
    },
}

fn output(path: &Option<PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Io(_) => EXIT_IO,
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        Error::InvalidArgument(_) => EXIT_USAGE,
        _ => EXIT_INPUT,
    }
}

fn run(cli: Cli) -> l2disc::Result<u8> {
    let budget = cli.budget as u128;
    match cli.command {
        Command::Generate {
            kind,
            n,
            d,
            seed,
            shift,
            out,
        } => {
            let mut spec = GeneratorSpec::new(kind, n, d);
            spec.seed = seed;
            spec.shift = shift.as_deref().map(l2disc::generators::parse_shift).transpose()?;
            let ps = generate(&spec)?;
            let mut w = output(&out)?;
            write_point_set(&mut w, &ps)?;
            w.flush()?;
        }
        Command::L2 { input, mc, seed } => {
            let ps = read_point_set(&input)?;
            let v = warnock_l2(&ps);
            let mut doc = json!({
                "n": ps.len(),
                "d": ps.dim(),
                "weighted": ps.is_weighted(),
                "l2": v.l2_norm,
                "l2_squared": v.l2_norm_squared,
            });
            if let Some(samples) = mc {
                let (estimate, std_error) = l2_monte_carlo(&ps, samples, seed)?;
                doc["monte_carlo"] = json!({
                    "samples": samples,
                    "seed": seed,
                    "estimate": estimate,
                    "std_error": std_error,
                });
            }
            println!("{}", serde_json::to_string_pretty(&doc)?);
        }
        Command::Haar {
            input,
            jmax,
            out,
            parseval,
            force,
        } => {
            let ps = read_point_set(&input)?;
            let mut w = output(&out)?;
            if parseval {
                let partial = parseval_partial_sum(&ps, jmax, if force { u128::MAX } else { budget })?;
                let doc = json!({
                    "j_max": jmax,
                    "partial_sum": partial,
                    "l2_squared": warnock_l2(&ps).l2_norm_squared,
                });
                writeln!(w, "{}", serde_json::to_string_pretty(&doc)?)?;
            } else {
                let spectrum = haar_spectrum(&ps, jmax, budget, force)?;
                write_spectrum_csv(&mut w, ps.dim(), &spectrum)?;
            }
            w.flush()?;
        }
        Command::Certify {
            input,
            kmax,
            csv,
            diagnostic,
        } => {
            let ps = read_point_set(&input)?;
            let report = certify(
                &ps,
                &CertifyOptions {
                    k_max: kmax,
                    budget,
                    diagnostic,
                },
            )?;
            let mut w = output(&None)?;
            if csv {
                write_levels_csv(&mut w, &report)?;
            } else {
                writeln!(w, "{}", serde_json::to_string_pretty(&report)?)?;
            }
            w.flush()?;
            if !report.pass {
                return Ok(EXIT_CERT_FAILED);
            }
        }
        Command::Sweep {
            kind,
            n,
            d,
            seed,
            format,
            out,
            kmax_offset,
        } => {
            let mut generator = GeneratorSpec::new(kind, 0, d);
            generator.seed = seed;
            let format = match format {
                Format::Csv => OutputFormat::Csv,
                Format::Json => OutputFormat::Json,
            };
            let config = SweepConfig {
                generator,
                n_values: n,
                format,
                kmax_offset,
                budget,
            };
            let report = run_sweep(&config)?;
            let mut w = output(&out)?;
            write_sweep(&mut w, &report, config.format)?;
            w.flush()?;
            if !report.all_pass() {
                return Ok(EXIT_CERT_FAILED);
            }
        }
        Command::Constants { dmax } => {
            print!("{}", constants::format_table(dmax));
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads > 0 {
        // only fails if a pool already exists
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global();
    }
    if let Err(e) = constants::self_test() {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_INPUT);
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
