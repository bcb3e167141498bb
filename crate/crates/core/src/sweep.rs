//! Sweeps of `‖D‖ / √(ln N)` over a range of `N` for one generator.

use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::certificate::{certify, theoretical_lower_bound, CertifyOptions};
use crate::constants::constants_table;
use crate::error::{Error, Result};
use crate::generators::{generate, GeneratorSpec};
use crate::io::fmt_f64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    /// `n` is overwritten by each entry of `n_values`.
    pub generator: GeneratorSpec,
    pub n_values: Vec<usize>,
    pub format: OutputFormat,
    /// `K_max = M + kmax_offset`.
    pub kmax_offset: u32,
    pub budget: u128,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_values.is_empty() {
            return Err(Error::InvalidArgument("n_values must not be empty".into()));
        }
        if self.n_values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument("n_values must be strictly ascending".into()));
        }
        if self.n_values[0] == 0 {
            return Err(Error::InvalidArgument("n_values must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRecord {
    /// Cardinality of the generated set (may differ from the requested size).
    pub n: usize,
    pub requested_n: usize,
    pub d: usize,
    pub l2: f64,
    /// `‖D‖ / √(ln N)`; absent for `N = 1`.
    pub ratio: Option<f64>,
    /// Squared-norm theorem bound.
    pub theoretical_lower: f64,
    /// Norm form of the theorem bound.
    pub theoretical_lower_norm: f64,
    /// Empty-box Parseval bound on `‖D‖²`.
    pub empirical_lower: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepContext {
    pub c2: f64,
    pub classical_lower: f64,
    pub best_upper: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub generator: String,
    pub constants: SweepContext,
    pub records: Vec<SweepRecord>,
}

impl SweepReport {
    pub fn all_pass(&self) -> bool {
        self.records.iter().all(|r| r.pass)
    }
}

pub fn run_sweep(config: &SweepConfig) -> Result<SweepReport> {
    config.validate()?;
    let records = config
        .n_values
        .par_iter()
        .map(|&n| {
            let mut spec = config.generator.clone();
            spec.n = n;
            let ps = generate(&spec)?;
            let opts = CertifyOptions {
                k_max: Some(crate::certificate::ceil_log2(ps.len()) + config.kmax_offset),
                budget: config.budget,
                diagnostic: false,
            };
            let cert = certify(&ps, &opts)?;
            let l2 = cert.exact_l2sq.max(0.0).sqrt();
            let count = ps.len();
            Ok(SweepRecord {
                n: count,
                requested_n: n,
                d: ps.dim(),
                l2,
                ratio: (count > 1).then(|| l2 / (count as f64).ln().sqrt()),
                theoretical_lower: cert.theoretical_lower,
                theoretical_lower_norm: theoretical_lower_bound(count, ps.dim() as u32)?,
                empirical_lower: cert.empirical_lower,
                pass: cert.pass,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let c = constants_table();
    Ok(SweepReport {
        generator: config.generator.kind.to_string(),
        constants: SweepContext {
            c2: c.c2,
            classical_lower: c.classical_lower,
            best_upper: c.best_upper,
        },
        records,
    })
}

/// Columns `n,d,l2,ratio,theoretical_lower_sq,empirical_lower_sq,pass`.
pub fn write_sweep_csv<W: Write>(mut w: W, report: &SweepReport) -> Result<()> {
    writeln!(w, "n,d,l2,ratio,theoretical_lower_sq,empirical_lower_sq,pass")?;
    for r in &report.records {
        writeln!(
            w,
            "{},{},{},{},{},{},{}",
            r.n,
            r.d,
            fmt_f64(r.l2),
            r.ratio.map(fmt_f64).unwrap_or_default(),
            fmt_f64(r.theoretical_lower),
            fmt_f64(r.empirical_lower),
            r.pass
        )?;
    }
    Ok(())
}

pub fn write_sweep<W: Write>(mut w: W, report: &SweepReport, format: OutputFormat) -> Result<()> {
    match format {
        OutputFormat::Csv => write_sweep_csv(w, report),
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut w, report)?;
            writeln!(w)?;
            Ok(())
        }
    }
}
