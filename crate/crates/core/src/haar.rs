//! Tensor Haar functions and the Haar coefficients of the discrepancy
//! function.
//!
//! Haar functions are `L∞`-normalised: `h_{j,m}` is `+1` on the left half of
//! `I_{j,m}`, `-1` on the right half and `0` elsewhere; `h_{-1,0}` is the
//! indicator of `[0,1)`. With this normalisation Parseval reads
//!
//! ```text
//! ‖f‖² = Σ_j 2^(Σ max(0, j_i)) Σ_m μ_{j,m}²,   μ_{j,m} = ∫ f h_{j,m}.
//! ```
//!
//! The coefficient of `D_{P,a}` splits into a point part
//! `Σ_z a_z Π_i ∫_{z_i}^1 h_{j_i,m_i}` and a volume part
//! `N Π_i ∫_0^1 t h_{j_i,m_i}(t) dt`. The point factor along an axis with
//! `j_i ≥ 0` vanishes unless `z_i` lies in the open support, so at a fixed
//! level vector only the boxes that contain points carry a point part. Level
//! energies are therefore computed in `O(N)` per level vector no matter how
//! many boxes it has.

use std::io::Write;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::io::fmt_f64;
use crate::sum::pairwise_sum;
use crate::types::{check_1d, interval_1d, level_sum, DyadicIndex, PointSet, MAX_LEVEL};

/// Default cap on enumerated `(j, m)` pairs, and on point-level work units.
pub const DEFAULT_BUDGET: u128 = 100_000_000;

/// `L∞`-normalised 1-D Haar function. The midpoint belongs to the right half.
pub fn haar_eval_1d(j: i32, m: u64, t: f64) -> Result<f64> {
    check_1d(j, m)?;
    let (a, b) = interval_1d(j, m);
    if !(t >= a && t < b) {
        return Ok(0.0);
    }
    if j < 0 {
        return Ok(1.0);
    }
    let mid = 0.5 * (a + b);
    Ok(if t < mid { 1.0 } else { -1.0 })
}

/// Tensor Haar function `h_{j,m}(x) = Π_i h_{j_i,m_i}(x_i)`.
pub fn haar_eval(index: &DyadicIndex, x: &[f64]) -> f64 {
    assert_eq!(index.dim(), x.len(), "dimension mismatch");
    index
        .levels()
        .iter()
        .zip(index.positions())
        .zip(x)
        .map(|((&j, &m), &t)| haar_eval_1d(j, m, t).expect("index validated"))
        .product()
}

/// `∫_z^1 h_{j,m}(t) dt` in closed form.
pub fn tail_integral_1d(j: i32, m: u64, z: f64) -> Result<f64> {
    check_1d(j, m)?;
    Ok(tail_unchecked(j, m, z))
}

#[inline]
fn tail_unchecked(j: i32, m: u64, z: f64) -> f64 {
    if j < 0 {
        return 1.0 - z;
    }
    let (a, b) = interval_1d(j, m);
    if z <= a || z >= b {
        return 0.0;
    }
    let half = 0.5 * (b - a);
    let mid = a + half;
    if z < mid {
        (mid - z) - half
    } else {
        -(b - z)
    }
}

/// `∫_0^1 t h_{j,m}(t) dt`: `-2^(-2j-2)` for `j ≥ 0`, independent of `m`,
/// and `1/2` for `j = -1`.
pub fn volume_coeff_1d(j: i32) -> f64 {
    debug_assert!(j >= -1);
    if j < 0 {
        0.5
    } else {
        -(-(2.0 * j as f64) - 2.0).exp2()
    }
}

/// Haar coefficient of `x ↦ Π x_i`.
///
/// The sign is `(-1)^#{i : j_i ≥ 0}`; only the magnitude is level-symmetric.
pub fn volume_coeff(index: &DyadicIndex) -> f64 {
    volume_coeff_levels(index.levels())
}

fn volume_coeff_levels(j: &[i32]) -> f64 {
    j.iter().map(|&ji| volume_coeff_1d(ji)).product()
}

/// Haar coefficient of the indicator of the open box `(z, 1)`.
pub fn point_coeff(index: &DyadicIndex, z: &[f64]) -> f64 {
    assert_eq!(index.dim(), z.len(), "dimension mismatch");
    let mut acc = 1.0;
    for ((&j, &m), &zi) in index.levels().iter().zip(index.positions()).zip(z) {
        acc *= tail_unchecked(j, m, zi);
        if acc == 0.0 {
            break;
        }
    }
    acc
}

/// Haar coefficient of `D_{P,a}` with its two parts;
/// `value = point_part - volume_part`.
#[derive(Clone, Debug, PartialEq)]
pub struct HaarCoefficient {
    pub index: DyadicIndex,
    pub value: f64,
    pub point_part: f64,
    pub volume_part: f64,
}

pub fn discrepancy_haar_coeff(ps: &PointSet, index: &DyadicIndex) -> Result<HaarCoefficient> {
    if index.dim() != ps.dim() {
        return Err(Error::DimensionMismatch {
            point: 0,
            expected: ps.dim(),
            got: index.dim(),
        });
    }
    let terms: Vec<f64> = ps
        .points()
        .enumerate()
        .map(|(i, z)| ps.weight(i) * point_coeff(index, z))
        .collect();
    let point_part = pairwise_sum(&terms);
    let volume_part = ps.len() as f64 * volume_coeff(index);
    Ok(HaarCoefficient {
        index: index.clone(),
        value: point_part - volume_part,
        point_part,
        volume_part,
    })
}

/// Point parts of every box touched by some point at level vector `j`,
/// sorted by box key (lexicographic in `m`). Boxes not listed have point
/// part zero.
pub(crate) fn touched_boxes(ps: &PointSet, j: &[i32]) -> Vec<(u128, f64)> {
    let shifts = key_shifts(j);
    let mut keyed: Vec<(u128, f64)> = ps
        .points()
        .enumerate()
        .map(|(i, z)| {
            let mut key = 0u128;
            let mut coeff = ps.weight(i);
            for (axis, (&ji, &zi)) in j.iter().zip(z).enumerate() {
                let mi = if ji < 0 {
                    0
                } else {
                    (zi * (ji as f64).exp2()).floor() as u64
                };
                key |= (mi as u128) << shifts[axis];
                coeff *= tail_unchecked(ji, mi, zi);
            }
            (key, coeff)
        })
        .collect();
    // stable: ties keep point order, so each group sums deterministically
    keyed.sort_by_key(|&(k, _)| k);

    let mut out = Vec::new();
    let mut start = 0;
    let mut buf = Vec::new();
    while start < keyed.len() {
        let key = keyed[start].0;
        let mut end = start;
        buf.clear();
        while end < keyed.len() && keyed[end].0 == key {
            buf.push(keyed[end].1);
            end += 1;
        }
        out.push((key, pairwise_sum(&buf)));
        start = end;
    }
    out
}

/// Bit offset of each axis in a packed box key; axis 0 is most significant.
pub(crate) fn key_shifts(j: &[i32]) -> Vec<u32> {
    let mut shifts = vec![0u32; j.len()];
    let mut acc = 0u32;
    for axis in (0..j.len()).rev() {
        shifts[axis] = acc;
        acc += j[axis].max(0) as u32;
    }
    shifts
}

fn decode_key(key: u128, j: &[i32], shifts: &[u32]) -> Vec<u64> {
    j.iter()
        .zip(shifts)
        .map(|(&ji, &s)| {
            let bits = ji.max(0) as u32;
            ((key >> s) & ((1u128 << bits) - 1)) as u64
        })
        .collect()
}

/// `2^(Σ max(0,j_i)) Σ_m μ_{j,m}²` for one level vector.
pub fn level_energy(ps: &PointSet, j: &[i32]) -> f64 {
    let vp = ps.len() as f64 * volume_coeff_levels(j);
    let ls = level_sum(j);
    let boxes = (ls as f64).exp2();
    let touched = touched_boxes(ps, j);
    let occupied: Vec<f64> = touched.iter().map(|&(_, pp)| (pp - vp).powi(2)).collect();
    let untouched = (boxes - touched.len() as f64) * vp * vp;
    boxes * (pairwise_sum(&occupied) + untouched)
}

/// All level vectors in `{lo..=hi}^d`, lexicographic.
pub fn level_vectors(d: usize, lo: i32, hi: i32) -> Vec<Vec<i32>> {
    let mut out = Vec::new();
    if hi < lo {
        return out;
    }
    let mut cur = vec![lo; d];
    loop {
        out.push(cur.clone());
        let mut axis = d;
        loop {
            if axis == 0 {
                return out;
            }
            axis -= 1;
            if cur[axis] < hi {
                cur[axis] += 1;
                break;
            }
            cur[axis] = lo;
        }
    }
}

fn check_jmax(d: usize, j_max: i32) -> Result<()> {
    if !(-1..=MAX_LEVEL).contains(&j_max) {
        return Err(Error::InvalidArgument(format!(
            "J_max must lie in -1..={MAX_LEVEL}, got {j_max}"
        )));
    }
    // packed box keys are u128
    if d as u64 * j_max.max(0) as u64 > 127 {
        return Err(Error::InvalidArgument(format!(
            "d * J_max must not exceed 127, got {d} * {j_max}"
        )));
    }
    Ok(())
}

/// Parseval sum over all `j` with every `j_i ∈ {-1,…,J_max}`.
///
/// Nondecreasing in `J_max`, bounded by `‖D_{P,a}‖²`. The budget caps the
/// work `(J_max+2)^d · N`; box count does not enter.
pub fn parseval_partial_sum(ps: &PointSet, j_max: i32, budget: u128) -> Result<f64> {
    let d = ps.dim();
    check_jmax(d, j_max)?;
    let levels = ((j_max + 2) as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
    let work = levels.saturating_mul(ps.len() as u128);
    if work > budget {
        return Err(Error::BudgetExceeded {
            required: work,
            budget,
        });
    }
    let energies: Vec<f64> = level_vectors(d, -1, j_max)
        .par_iter()
        .map(|j| level_energy(ps, j))
        .collect();
    Ok(pairwise_sum(&energies))
}

/// Number of `(j, m)` pairs with every `j_i ∈ {-1,…,J_max}`: `(2^(J_max+1))^d`.
pub fn spectrum_size(d: usize, j_max: i32) -> u128 {
    let per_axis = 1u128 << (j_max + 1).clamp(0, 127);
    per_axis.checked_pow(d as u32).unwrap_or(u128::MAX)
}

/// Every Haar coefficient up to `J_max`, in lexicographic `(j, m)` order.
///
/// Refuses when the number of pairs exceeds `budget` unless `force` is set.
pub fn haar_spectrum(
    ps: &PointSet,
    j_max: i32,
    budget: u128,
    force: bool,
) -> Result<Vec<HaarCoefficient>> {
    let d = ps.dim();
    check_jmax(d, j_max)?;
    let size = spectrum_size(d, j_max);
    if size > budget && !force {
        return Err(Error::BudgetExceeded {
            required: size,
            budget,
        });
    }
    let per_level: Vec<Vec<HaarCoefficient>> = level_vectors(d, -1, j_max)
        .par_iter()
        .map(|j| {
            let vp = ps.len() as f64 * volume_coeff_levels(j);
            let shifts = key_shifts(j);
            let touched = touched_boxes(ps, j);
            let boxes = 1u128 << level_sum(j);
            let mut out = Vec::with_capacity(boxes as usize);
            let mut it = touched.iter().peekable();
            for key in 0..boxes {
                let pp = match it.peek() {
                    Some(&&(k, pp)) if k == key => {
                        it.next();
                        pp
                    }
                    _ => 0.0,
                };
                let index = DyadicIndex::new(j.clone(), decode_key(key, j, &shifts))
                    .expect("enumerated index is valid");
                out.push(HaarCoefficient {
                    index,
                    value: pp - vp,
                    point_part: pp,
                    volume_part: vp,
                });
            }
            out
        })
        .collect();
    Ok(per_level.into_iter().flatten().collect())
}

/// CSV with columns `j_1..j_d, m_1..m_d, value, point_part, volume_part`.
pub fn write_spectrum_csv<W: Write>(mut w: W, dim: usize, coeffs: &[HaarCoefficient]) -> Result<()> {
    let mut header: Vec<String> = (1..=dim).map(|i| format!("j_{i}")).collect();
    header.extend((1..=dim).map(|i| format!("m_{i}")));
    header.extend(["value", "point_part", "volume_part"].map(String::from));
    writeln!(w, "{}", header.join(","))?;
    for c in coeffs {
        let mut row: Vec<String> = c.index.levels().iter().map(|j| j.to_string()).collect();
        row.extend(c.index.positions().iter().map(|m| m.to_string()));
        row.push(fmt_f64(c.value));
        row.push(fmt_f64(c.point_part));
        row.push(fmt_f64(c.volume_part));
        writeln!(w, "{}", row.join(","))?;
    }
    Ok(())
}
