//! Three ways to get the squared L2-discrepancy of the same set: the O(N²)
//! pairwise formula, the exact breakpoint-grid integral, and Monte Carlo.
//!
//!     cargo run --example exact_l2

use l2disc::{l2_exact_grid, l2_monte_carlo, warnock_l2, PointSet};

fn main() -> l2disc::Result<()> {
    let ps = PointSet::new(
        vec![vec![0.1, 0.6], vec![0.35, 0.2], vec![0.55, 0.85], vec![0.8, 0.4]],
        None,
        2,
    )?;
    let warnock = warnock_l2(&ps);
    let grid = l2_exact_grid(&ps)?;
    let (mc, se) = l2_monte_carlo(&ps, 200_000, 7)?;

    println!("pairwise formula  {:.15}", warnock.l2_norm_squared);
    println!("grid integral     {grid:.15}");
    println!("monte carlo       {mc:.6} ± {se:.6}");
    println!("norm              {:.15}", warnock.l2_norm);

    // Weights change the counting term only; the volume term keeps N.
    let weighted = ps.with_weights(Some(vec![2.0, 0.5, 1.0, 0.5]))?;
    println!("weighted squared  {:.15}", warnock_l2(&weighted).l2_norm_squared);
    Ok(())
}
