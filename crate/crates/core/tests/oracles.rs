mod common;

use common::*;
use l2disc::certificate::level_sum_brute;
use l2disc::{
    discrepancy_haar_coeff, generate, l2_exact_grid, l2_monte_carlo, level_sum_closed_form,
    parseval_partial_sum, point_coeff, tail_integral_1d, volume_coeff, volume_coeff_1d,
    warnock_l2, DyadicIndex, GeneratorKind, GeneratorSpec, PointSet, DEFAULT_BUDGET,
};
use rand::Rng;

#[test]
fn tail_integral_matches_quadrature() {
    let mut r = rng(1);
    for _ in 0..500 {
        let j = r.gen_range(-1..=8);
        let m = if j < 0 { 0 } else { r.gen_range(0..1u64 << j) };
        let z: f64 = r.gen();
        let exact = tail_integral_1d(j, m, z).unwrap();
        let quad = tail_by_quadrature(j, m, z);
        assert!((exact - quad).abs() < 1e-12, "j={j} m={m} z={z}: {exact} vs {quad}");
    }
    assert!((tail_by_quadrature(2, 1, 0.3) - (-0.05)).abs() < 1e-12);
}

#[test]
fn volume_factor_matches_quadrature() {
    assert!((volume_1d_by_quadrature(0, 0) - (-0.25)).abs() < 1e-14);
    assert!((volume_1d_by_quadrature(1, 1) - (-0.0625)).abs() < 1e-14);
    assert!((volume_1d_by_quadrature(-1, 0) - 0.5).abs() < 1e-14);
    for j in 0..10 {
        for m in [0, (1u64 << j) - 1] {
            assert!((volume_coeff_1d(j) - volume_1d_by_quadrature(j, m)).abs() < 1e-15);
        }
    }
}

#[test]
fn three_dimensional_volume_coefficient_is_negative() {
    let idx = DyadicIndex::new(vec![0, 0, 0], vec![0, 0, 0]).unwrap();
    let quad = volume_3d_by_quadrature(&idx);
    assert!((quad + 2f64.powi(-6)).abs() < 1e-14, "{quad}");
    assert_eq!(volume_coeff(&idx), -(2f64.powi(-6)));
    let idx = DyadicIndex::new(vec![1, -1, 2], vec![1, 0, 3]).unwrap();
    assert!((volume_coeff(&idx) - volume_3d_by_quadrature(&idx)).abs() < 1e-15);
}

#[test]
fn point_coefficient_matches_quadrature() {
    let idx = DyadicIndex::new(vec![0, 0], vec![0, 0]).unwrap();
    let z = [0.5, 0.5];
    let quad = integrate_2d_against_haar(
        |x| if x[0] > z[0] && x[1] > z[1] { 1.0 } else { 0.0 },
        &idx,
        [&[0.5], &[0.5]],
    );
    assert!((quad - 0.25).abs() < 1e-14);
    assert_eq!(point_coeff(&idx, &z), 0.25);
}

#[test]
fn haar_coefficients_match_quadrature() {
    let mut r = rng(2);
    for _ in 0..40 {
        let n = r.gen_range(1..=6);
        let weighted = r.gen_bool(0.5);
        let ps = random_set(&mut r, n, 2, weighted);
        let idx = random_index(&mut r, 2, 4);
        let c = discrepancy_haar_coeff(&ps, &idx).unwrap();
        let quad = haar_coeff_by_quadrature(&ps, &idx);
        assert!((c.value - quad).abs() < 1e-10, "{idx:?}: {} vs {quad}", c.value);
        assert!((c.value - (c.point_part - c.volume_part)).abs() <= f64::EPSILON * c.point_part.abs().max(c.volume_part.abs()));
    }
}

#[test]
fn warnock_agrees_with_grid_oracle() {
    let mut r = rng(3);
    for _ in 0..60 {
        let d = r.gen_range(1..=3);
        let n = r.gen_range(1..=32);
        let weighted = r.gen_bool(0.3);
        let ps = random_set(&mut r, n, d, weighted);
        let w = warnock_l2(&ps).l2_norm_squared;
        let g = l2_exact_grid(&ps).unwrap();
        assert!((w - g).abs() <= 1e-10 * g.abs(), "d={d} n={n}: {w} vs {g}");
    }
}

#[test]
fn grid_oracle_handles_duplicates_and_boundaries() {
    let ps = PointSet::new(
        vec![vec![0.0, 0.5], vec![0.0, 0.5], vec![0.25, 0.0], vec![0.5, 0.75]],
        None,
        2,
    )
    .unwrap();
    let w = warnock_l2(&ps).l2_norm_squared;
    assert!((w - l2_exact_grid(&ps).unwrap()).abs() < 1e-13);
}

#[test]
fn monte_carlo_statistical_self_test() {
    let ps = PointSet::new(vec![vec![0.2, 0.7], vec![0.6, 0.1], vec![0.45, 0.5]], None, 2).unwrap();
    let exact = warnock_l2(&ps).l2_norm_squared;
    let inside = (0..200)
        .filter(|&seed| {
            let (est, se) = l2_monte_carlo(&ps, 4_000, seed).unwrap();
            (est - exact).abs() <= 4.0 * se
        })
        .count();
    assert!(inside >= 198, "{inside}/200 seeds within 4 sigma");
}

#[test]
fn parseval_on_small_hammersley() {
    let ps = generate(&GeneratorSpec::new(GeneratorKind::Hammersley, 4, 2)).unwrap();
    let exact = warnock_l2(&ps).l2_norm_squared;
    let partial = parseval_partial_sum(&ps, 12, DEFAULT_BUDGET).unwrap();
    assert!(partial <= exact + 1e-9);
    assert!((exact - partial) / exact < 0.01, "{partial} vs {exact}");
}

#[test]
fn parseval_root_term_is_mean_squared() {
    let mut r = rng(4);
    let ps = random_set(&mut r, 5, 2, false);
    let mean = discrepancy_haar_coeff(&ps, &DyadicIndex::root(2)).unwrap().value;
    let p = parseval_partial_sum(&ps, -1, DEFAULT_BUDGET).unwrap();
    assert!((p - mean * mean).abs() < 1e-15);
}

#[test]
fn closed_form_level_sums_match_brute_force() {
    assert!((level_sum_brute(4.0, 1, 2, 60) - 7.0 / 9.0).abs() < 1e-15);
    assert!((level_sum_brute(8.0, 2, 2, 40) - 11.0 / 196.0).abs() < 1e-15);
    for q in [2.0, 4.0, 8.0] {
        for m in 1..=20 {
            let c = level_sum_closed_form(q, m).unwrap();
            let b = level_sum_brute(q, m, 2, 200);
            assert!((c - b).abs() <= 1e-12 * c, "q={q} M={m}");
        }
    }
}
