//! Test point sets.
//!
//! Random coordinates come from ChaCha8 (`rand_chacha`) seeded through
//! `SeedableRng::seed_from_u64`, drawn point by point, axis by axis, with
//! the `Standard` `f64` distribution (53 random mantissa bits, in `[0,1)`).

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::types::PointSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorKind {
    Hammersley,
    VanDerCorput,
    SymmetrizedHammersley,
    RandomUniform,
    RegularGrid,
    DigitShiftHammersley,
}

impl GeneratorKind {
    pub const ALL: [GeneratorKind; 6] = [
        GeneratorKind::Hammersley,
        GeneratorKind::VanDerCorput,
        GeneratorKind::SymmetrizedHammersley,
        GeneratorKind::RandomUniform,
        GeneratorKind::RegularGrid,
        GeneratorKind::DigitShiftHammersley,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GeneratorKind::Hammersley => "hammersley",
            GeneratorKind::VanDerCorput => "van_der_corput",
            GeneratorKind::SymmetrizedHammersley => "symmetrized_hammersley",
            GeneratorKind::RandomUniform => "random_uniform",
            GeneratorKind::RegularGrid => "regular_grid",
            GeneratorKind::DigitShiftHammersley => "digit_shift_hammersley",
        }
    }
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GeneratorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.replace('-', "_");
        GeneratorKind::ALL
            .into_iter()
            .find(|k| k.name() == norm)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown generator kind {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    pub n: usize,
    pub dim: usize,
    pub seed: Option<u64>,
    /// Binary digits XORed onto the radical inverse, first digit first.
    pub shift: Option<Vec<bool>>,
}

impl GeneratorSpec {
    pub fn new(kind: GeneratorKind, n: usize, dim: usize) -> Self {
        GeneratorSpec {
            kind,
            n,
            dim,
            seed: None,
            shift: None,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn with_shift(mut self, shift: Vec<bool>) -> Self {
        self.shift = Some(shift);
        self
    }
}

/// Base-2 radical inverse: mirrors the binary digits of `n` across the
/// radix point.
pub fn radical_inverse_base2(n: u64) -> f64 {
    // n < 2^53 maps into the top 53 bits, so the conversion is exact
    n.reverse_bits() as f64 * (-64f64).exp2()
}

/// Parses a digit string such as `"1011"` into a shift pattern.
pub fn parse_shift(s: &str) -> Result<Vec<bool>> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(Error::InvalidArgument(format!("shift must be binary digits, got {s:?}"))),
        })
        .collect()
}

/// Alternating `1010…` over the first `⌈log₂ N⌉` digits (at least one).
fn default_shift(n: usize) -> Vec<bool> {
    let digits = (n.next_power_of_two().trailing_zeros() as usize).max(1);
    (0..digits).map(|i| i % 2 == 0).collect()
}

fn shift_mask(shift: &[bool]) -> Result<u64> {
    if shift.len() > 53 {
        return Err(Error::InvalidArgument(format!(
            "shift has {} digits, at most 53 are supported",
            shift.len()
        )));
    }
    Ok(shift
        .iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .fold(0u64, |acc, (i, _)| acc | (1u64 << (63 - i))))
}

pub fn generate(spec: &GeneratorSpec) -> Result<PointSet> {
    let n = spec.n;
    if n < 1 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    if spec.dim < 1 {
        return Err(Error::InvalidDimension(spec.dim));
    }
    let require_dim = |d: usize| {
        if spec.dim != d {
            Err(Error::InvalidArgument(format!(
                "{} requires d = {d}, got {}",
                spec.kind, spec.dim
            )))
        } else {
            Ok(())
        }
    };
    let nf = n as f64;
    let coords: Vec<f64> = match spec.kind {
        GeneratorKind::Hammersley => {
            require_dim(2)?;
            (0..n)
                .flat_map(|i| [i as f64 / nf, radical_inverse_base2(i as u64)])
                .collect()
        }
        GeneratorKind::VanDerCorput => {
            require_dim(1)?;
            (0..n).map(|i| radical_inverse_base2(i as u64)).collect()
        }
        GeneratorKind::SymmetrizedHammersley => {
            require_dim(2)?;
            let below_one = 1.0 - f64::EPSILON / 2.0;
            let mut c: Vec<f64> = (0..n)
                .flat_map(|i| [i as f64 / nf, radical_inverse_base2(i as u64)])
                .collect();
            c.extend((0..n).flat_map(|i| {
                let r = 1.0 - radical_inverse_base2(i as u64);
                [i as f64 / nf, if r >= 1.0 { below_one } else { r }]
            }));
            c
        }
        GeneratorKind::DigitShiftHammersley => {
            require_dim(2)?;
            let shift = spec.shift.clone().unwrap_or_else(|| default_shift(n));
            let mask = shift_mask(&shift)?;
            (0..n)
                .flat_map(|i| {
                    let bits = (i as u64).reverse_bits() ^ mask;
                    [i as f64 / nf, (bits >> 11) as f64 * (-53f64).exp2()]
                })
                .collect()
        }
        GeneratorKind::RandomUniform => {
            let mut rng = ChaCha8Rng::seed_from_u64(spec.seed.unwrap_or(0));
            (0..n * spec.dim).map(|_| rng.gen::<f64>()).collect()
        }
        GeneratorKind::RegularGrid => {
            let side = integer_root(n, spec.dim);
            let count = side.pow(spec.dim as u32);
            let mut c = Vec::with_capacity(count * spec.dim);
            for flat in 0..count {
                let mut rest = flat;
                let mut p = vec![0.0; spec.dim];
                for axis in (0..spec.dim).rev() {
                    p[axis] = ((rest % side) as f64 + 0.5) / side as f64;
                    rest /= side;
                }
                c.extend(p);
            }
            c
        }
    };
    PointSet::from_flat(coords, None, spec.dim)
}

/// `⌊n^(1/d)⌋`, exact.
fn integer_root(n: usize, d: usize) -> usize {
    let mut r = (n as f64).powf(1.0 / d as f64).round() as usize;
    let pow = |r: usize| (r as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
    while r > 1 && pow(r) > n as u128 {
        r -= 1;
    }
    while pow(r + 1) <= n as u128 {
        r += 1;
    }
    r.max(1)
}
