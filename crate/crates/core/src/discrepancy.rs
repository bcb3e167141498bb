//! The (weighted) discrepancy function and its L2 norm.
//!
//! `D_{P,a}(x) = Σ_z a_z 1{z < x} - N |[0,x)|` with strict componentwise
//! inequality; `N` is the cardinality of `P` even for weighted sets.
//!
//! [`warnock_l2`] is the production route. [`l2_exact_grid`] and
//! [`l2_monte_carlo`] are independent oracles for it.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::sum::{pairwise_sum, pairwise_sum_by};
use crate::types::PointSet;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DiscrepancyValue {
    pub l2_norm: f64,
    pub l2_norm_squared: f64,
    pub n_points: usize,
    pub weighted: bool,
}

impl DiscrepancyValue {
    fn from_squared(sq: f64, ps: &PointSet) -> Self {
        DiscrepancyValue {
            l2_norm: sq.max(0.0).sqrt(),
            l2_norm_squared: sq,
            n_points: ps.len(),
            weighted: ps.is_weighted(),
        }
    }
}

/// Evaluates `D_{P,a}` at `x ∈ [0,1]^d`.
pub fn discrepancy_at(ps: &PointSet, x: &[f64]) -> Result<f64> {
    if x.len() != ps.dim() {
        return Err(Error::DimensionMismatch {
            point: 0,
            expected: ps.dim(),
            got: x.len(),
        });
    }
    Ok(discrepancy_unchecked(ps, x))
}

fn discrepancy_unchecked(ps: &PointSet, x: &[f64]) -> f64 {
    let counted = pairwise_sum_by(ps.len(), &|i| {
        let z = ps.point(i);
        if z.iter().zip(x).all(|(zi, xi)| zi < xi) {
            ps.weight(i)
        } else {
            0.0
        }
    });
    let volume: f64 = x.iter().product();
    counted - ps.len() as f64 * volume
}

/// Exact `‖D_{P,a}‖²` through the pairwise expansion
///
/// ```text
/// Σ_{z,z'} a_z a_z' Π_i (1 - max(z_i, z'_i))
///   - 2N Σ_z a_z Π_i (1 - z_i²)/2 + N² 3^-d
/// ```
///
/// `O(N² d)`. Rows are summed in parallel; the reduction over rows is a fixed
/// pairwise tree, so the result does not depend on the thread count.
pub fn warnock_l2(ps: &PointSet) -> DiscrepancyValue {
    let n = ps.len();
    let d = ps.dim();
    let nf = n as f64;

    let rows: Vec<f64> = (0..n)
        .into_par_iter()
        .map(|i| {
            let zi = ps.point(i);
            let row = pairwise_sum_by(n, &|k| {
                let zk = ps.point(k);
                let mut prod = ps.weight(k);
                for (a, b) in zi.iter().zip(zk) {
                    prod *= 1.0 - a.max(*b);
                }
                prod
            });
            ps.weight(i) * row
        })
        .collect();
    let cross = pairwise_sum(&rows);

    let linear = pairwise_sum_by(n, &|i| {
        let mut prod = ps.weight(i);
        for z in ps.point(i) {
            prod *= 0.5 * (1.0 - z * z);
        }
        prod
    });

    let constant = nf * nf * 3f64.powi(-(d as i32));
    DiscrepancyValue::from_squared(cross - 2.0 * nf * linear + constant, ps)
}

/// Plain Monte Carlo estimate of `∫ D²` and its standard error.
///
/// Samples come from ChaCha8 (`rand_chacha`) seeded with `seed_from_u64`;
/// each sample draws its `d` coordinates in axis order with the `Standard`
/// `f64` distribution.
pub fn l2_monte_carlo(ps: &PointSet, samples: usize, seed: u64) -> Result<(f64, f64)> {
    if samples < 2 {
        return Err(Error::InvalidArgument(format!(
            "need at least 2 samples, got {samples}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut x = vec![0.0; ps.dim()];
    let values: Vec<f64> = (0..samples)
        .map(|_| {
            for xi in x.iter_mut() {
                *xi = rng.gen::<f64>();
            }
            discrepancy_unchecked(ps, &x).powi(2)
        })
        .collect();
    let n = samples as f64;
    let mean = pairwise_sum(&values) / n;
    let sq_dev: Vec<f64> = values.iter().map(|v| (v - mean).powi(2)).collect();
    let var = pairwise_sum(&sq_dev) / (n - 1.0);
    Ok((mean, (var / n).sqrt()))
}

/// Largest point count accepted by [`l2_exact_grid`].
pub const GRID_ORACLE_MAX_POINTS: usize = 256;
const GRID_ORACLE_MAX_CELLS: usize = 50_000_000;

/// `‖D_{P,a}‖²` by integrating cell by cell on the grid cut out by the point
/// coordinates. On each open cell the counting part is constant, so the
/// integrand is a polynomial with a closed-form integral.
pub fn l2_exact_grid(ps: &PointSet) -> Result<f64> {
    let n = ps.len();
    if n > GRID_ORACLE_MAX_POINTS {
        return Err(Error::InvalidArgument(format!(
            "grid oracle handles at most {GRID_ORACLE_MAX_POINTS} points, got {n}"
        )));
    }
    let d = ps.dim();

    // breakpoints per axis, including 0 and 1
    let axes: Vec<Vec<f64>> = (0..d)
        .map(|axis| {
            let mut b: Vec<f64> = ps.points().map(|z| z[axis]).collect();
            b.push(0.0);
            b.push(1.0);
            b.sort_by(|a, b| a.partial_cmp(b).unwrap());
            b.dedup();
            b
        })
        .collect();
    let cells_per_axis: Vec<usize> = axes.iter().map(|b| b.len() - 1).collect();
    let total = cells_per_axis
        .iter()
        .try_fold(1usize, |acc, &c| acc.checked_mul(c))
        .filter(|&t| t <= GRID_ORACLE_MAX_CELLS)
        .ok_or_else(|| Error::InvalidArgument("grid oracle cell count too large".into()))?;

    // strides: axis 0 slowest
    let mut strides = vec![1usize; d];
    for axis in (0..d.saturating_sub(1)).rev() {
        strides[axis] = strides[axis + 1] * cells_per_axis[axis + 1];
    }

    // weight mass at the cell whose lower corner is the point, then a
    // cumulative sum along every axis gives the count on each open cell
    let mut count = vec![0.0f64; total];
    for (i, z) in ps.points().enumerate() {
        let mut flat = 0;
        for axis in 0..d {
            let pos = axes[axis]
                .binary_search_by(|b| b.partial_cmp(&z[axis]).unwrap())
                .expect("coordinate is a breakpoint");
            flat += pos * strides[axis];
        }
        count[flat] += ps.weight(i);
    }
    for axis in 0..d {
        let stride = strides[axis];
        let len = cells_per_axis[axis];
        for flat in 0..total {
            let pos = (flat / stride) % len;
            if pos > 0 {
                count[flat] += count[flat - stride];
            }
        }
    }

    let nf = n as f64;
    let cells: Vec<f64> = (0..total)
        .into_par_iter()
        .map(|flat| {
            let mut len = 1.0;
            let mut first = 1.0;
            let mut second = 1.0;
            for axis in 0..d {
                let pos = (flat / strides[axis]) % cells_per_axis[axis];
                let lo = axes[axis][pos];
                let hi = axes[axis][pos + 1];
                len *= hi - lo;
                first *= 0.5 * (hi * hi - lo * lo);
                second *= (hi * hi * hi - lo * lo * lo) / 3.0;
            }
            let s = count[flat];
            s * s * len - 2.0 * s * nf * first + nf * nf * second
        })
        .collect();
    Ok(pairwise_sum(&cells))
}
