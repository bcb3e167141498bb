//! Quadrature oracles, independent of the closed forms under test.
//!
//! Integrands here are piecewise polynomial with jumps at known
//! breakpoints. Each piece is integrated by adaptive Gauss-Legendre
//! (5-point vs. two 5-point halves), which only samples interior nodes and
//! so never evaluates a jump.

#![allow(dead_code)]

use l2disc::{discrepancy_at, haar_eval_1d, DyadicIndex, PointSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const NODES: [f64; 5] = [
    -0.906_179_845_938_664,
    -0.538_469_310_105_683_1,
    0.0,
    0.538_469_310_105_683_1,
    0.906_179_845_938_664,
];
const WEIGHTS: [f64; 5] = [
    0.236_926_885_056_189_08,
    0.478_628_670_499_366_47,
    0.568_888_888_888_888_9,
    0.478_628_670_499_366_47,
    0.236_926_885_056_189_08,
];

fn gauss5<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    NODES
        .iter()
        .zip(WEIGHTS)
        .map(|(x, w)| w * f(mid + half * x))
        .sum::<f64>()
        * half
}

fn adaptive<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, whole: f64, tol: f64, depth: u32) -> f64 {
    let mid = 0.5 * (a + b);
    let left = gauss5(f, a, mid);
    let right = gauss5(f, mid, b);
    if depth == 0 || (left + right - whole).abs() <= tol {
        return left + right;
    }
    adaptive(f, a, mid, left, tol / 2.0, depth - 1) + adaptive(f, mid, b, right, tol / 2.0, depth - 1)
}

/// `∫_a^b f` with the interval split at `breaks` first.
pub fn integrate_1d<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, breaks: &[f64]) -> f64 {
    let mut pts: Vec<f64> = breaks.iter().copied().filter(|&x| x > a && x < b).collect();
    pts.push(a);
    pts.push(b);
    pts.sort_by(|x, y| x.partial_cmp(y).unwrap());
    pts.dedup();
    pts.windows(2)
        .map(|w| adaptive(&f, w[0], w[1], gauss5(&f, w[0], w[1]), 1e-15, 30))
        .sum()
}

/// Breakpoints of a 1-D Haar function: ends and midpoint of its support.
pub fn haar_breaks(j: i32, m: u64) -> Vec<f64> {
    if j < 0 {
        return vec![0.0, 1.0];
    }
    let len = (-(j as f64)).exp2();
    let a = m as f64 * len;
    vec![a, a + 0.5 * len, a + len]
}

/// `∫_z^1 h_{j,m}` by quadrature.
pub fn tail_by_quadrature(j: i32, m: u64, z: f64) -> f64 {
    integrate_1d(|t| haar_eval_1d(j, m, t).unwrap(), z, 1.0, &haar_breaks(j, m))
}

/// `∫_0^1 t h_{j,m}(t) dt` by quadrature.
pub fn volume_1d_by_quadrature(j: i32, m: u64) -> f64 {
    integrate_1d(|t| t * haar_eval_1d(j, m, t).unwrap(), 0.0, 1.0, &haar_breaks(j, m))
}

fn tensor_haar(index: &DyadicIndex, x: &[f64]) -> f64 {
    index
        .levels()
        .iter()
        .zip(index.positions())
        .zip(x)
        .map(|((&j, &m), &t)| haar_eval_1d(j, m, t).unwrap())
        .product()
}

/// Iterated quadrature of `∫_{[0,1]^2} f(x) h_{j,m}(x) dx` with breakpoints
/// `extra[axis]` added to the Haar breakpoints.
pub fn integrate_2d_against_haar<F: Fn(&[f64]) -> f64>(
    f: F,
    index: &DyadicIndex,
    extra: [&[f64]; 2],
) -> f64 {
    let lv = index.levels();
    let ps = index.positions();
    let mut bx = haar_breaks(lv[0], ps[0]);
    bx.extend_from_slice(extra[0]);
    let mut by = haar_breaks(lv[1], ps[1]);
    by.extend_from_slice(extra[1]);
    integrate_1d(
        |x| {
            integrate_1d(
                |y| {
                    let p = [x, y];
                    f(&p) * tensor_haar(index, &p)
                },
                0.0,
                1.0,
                &by,
            )
        },
        0.0,
        1.0,
        &bx,
    )
}

/// `∫ D_{P,a} h_{j,m}` over `[0,1]^2` by quadrature.
pub fn haar_coeff_by_quadrature(ps: &PointSet, index: &DyadicIndex) -> f64 {
    let xs: Vec<f64> = ps.points().map(|p| p[0]).collect();
    let ys: Vec<f64> = ps.points().map(|p| p[1]).collect();
    integrate_2d_against_haar(|x| discrepancy_at(ps, x).unwrap(), index, [&xs, &ys])
}

/// `∫_{[0,1]^3} x₁x₂x₃ h_{j,m}(x) dx` by iterated quadrature.
pub fn volume_3d_by_quadrature(index: &DyadicIndex) -> f64 {
    let l = index.levels();
    let m = index.positions();
    integrate_1d(
        |x| {
            integrate_1d(
                |y| {
                    integrate_1d(
                        |z| x * y * z * tensor_haar(index, &[x, y, z]),
                        0.0,
                        1.0,
                        &haar_breaks(l[2], m[2]),
                    )
                },
                0.0,
                1.0,
                &haar_breaks(l[1], m[1]),
            )
        },
        0.0,
        1.0,
        &haar_breaks(l[0], m[0]),
    )
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_set(rng: &mut ChaCha8Rng, n: usize, d: usize, weighted: bool) -> PointSet {
    let coords: Vec<f64> = (0..n * d).map(|_| rng.gen::<f64>()).collect();
    let weights = weighted.then(|| (0..n).map(|_| rng.gen_range(-3.0..3.0)).collect());
    PointSet::from_flat(coords, weights, d).unwrap()
}

/// Random valid index with `j_i ∈ {-1,…,max_level}`.
pub fn random_index(rng: &mut ChaCha8Rng, d: usize, max_level: i32) -> DyadicIndex {
    let j: Vec<i32> = (0..d).map(|_| rng.gen_range(-1..=max_level)).collect();
    let m: Vec<u64> = j
        .iter()
        .map(|&ji| if ji < 0 { 0 } else { rng.gen_range(0..(1u64 << ji)) })
        .collect();
    DyadicIndex::new(j, m).unwrap()
}
