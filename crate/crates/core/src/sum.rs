//! Pairwise (tree) summation.
//!
//! Every reduction in this crate that feeds a reported value goes through
//! [`pairwise_sum`]. The tree shape depends only on the slice length, so a
//! caller that computes the leaves in parallel and collects them in index
//! order gets the same bits as a serial run.

const BLOCK: usize = 8;

/// Sums `values` with a fixed binary tree, falling back to a sequential loop
/// on blocks of at most 8 elements.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    if values.len() <= BLOCK {
        let mut acc = 0.0;
        for &v in values {
            acc += v;
        }
        return acc;
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}

/// Pairwise sum of `f(i)` for `i` in `0..n` without materialising the
/// whole leaf vector when `n` is large.
pub fn pairwise_sum_by<F>(n: usize, f: &F) -> f64
where
    F: Fn(usize) -> f64,
{
    fn rec<F: Fn(usize) -> f64>(lo: usize, hi: usize, f: &F) -> f64 {
        let len = hi - lo;
        if len <= BLOCK {
            let mut acc = 0.0;
            for i in lo..hi {
                acc += f(i);
            }
            return acc;
        }
        let mid = lo + len / 2;
        rec(lo, mid, f) + rec(mid, hi, f)
    }
    rec(0, n, f)
}
