use l2disc::certificate::{ceil_log2, compositions, level_sum_brute};
use l2disc::{
    certify, count_empty_boxes, discrepancy_haar_coeff, generate, parseval_partial_sum,
    point_coeff, radical_inverse_base2, tail_integral_1d, volume_coeff, warnock_l2,
    CertifyOptions, DyadicIndex, GeneratorKind, GeneratorSpec, PointSet, Rational,
    DEFAULT_BUDGET,
};
use proptest::prelude::*;

fn index_strategy(d: usize, max_level: i32) -> impl Strategy<Value = DyadicIndex> {
    prop::collection::vec(-1..=max_level, d).prop_flat_map(|j| {
        let m: Vec<BoxedStrategy<u64>> = j
            .iter()
            .map(|&ji| {
                if ji < 0 {
                    Just(0u64).boxed()
                } else {
                    (0..(1u64 << ji)).boxed()
                }
            })
            .collect();
        (Just(j), m).prop_map(|(j, m)| DyadicIndex::new(j, m).unwrap())
    })
}

fn point_set_strategy(d: usize, max_n: usize) -> impl Strategy<Value = PointSet> {
    prop::collection::vec(prop::collection::vec(0.0..1.0f64, d), 1..=max_n)
        .prop_map(move |pts| PointSet::new(pts, None, d).unwrap())
}

/// Radical inverse by an explicit digit loop.
fn radical_inverse_digits(mut n: u64) -> f64 {
    let mut x = 0.0;
    let mut scale = 0.5;
    while n > 0 {
        if n & 1 == 1 {
            x += scale;
        }
        n >>= 1;
        scale *= 0.5;
    }
    x
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn tail_vanishes_at_and_outside_support_edges(j in 0i32..12, frac in 0.0..1.0f64) {
        let m = ((frac * (1u64 << j) as f64) as u64).min((1u64 << j) - 1);
        let len = (-(j as f64)).exp2();
        let a = m as f64 * len;
        let b = a + len;
        prop_assert_eq!(tail_integral_1d(j, m, a).unwrap(), 0.0);
        if b < 1.0 {
            prop_assert_eq!(tail_integral_1d(j, m, b).unwrap(), 0.0);
        }
        if a > 0.0 {
            prop_assert_eq!(tail_integral_1d(j, m, a * frac).unwrap(), 0.0);
        }
    }

    #[test]
    fn point_coeff_vanishes_off_interior(idx in index_strategy(2, 6), z in prop::collection::vec(0.0..1.0f64, 2)) {
        let inside = idx.levels().iter().enumerate().all(|(axis, &j)| {
            if j < 0 { return true; }
            let (a, b) = idx.interval(axis);
            z[axis] > a && z[axis] < b
        });
        if !inside {
            prop_assert_eq!(point_coeff(&idx, &z), 0.0);
        }
    }

    #[test]
    fn volume_magnitude(j in prop::collection::vec(0i32..15, 1..=4)) {
        let d = j.len();
        let m = vec![0u64; d];
        let s: i32 = j.iter().sum();
        let v = volume_coeff(&DyadicIndex::new(j, m).unwrap());
        prop_assert_eq!(v.abs(), (-(2 * s + 2 * d as i32) as f64).exp2());
        prop_assert_eq!(v < 0.0, d % 2 == 1);
    }

    #[test]
    fn empty_box_coefficient_ignores_weights(
        ps in point_set_strategy(2, 12),
        weights in prop::collection::vec(-5.0..5.0f64, 12),
        idx in index_strategy(2, 5),
    ) {
        prop_assume!(idx.is_proper());
        let occupied = ps.points().any(|z| (0..2).all(|axis| {
            let (a, b) = idx.interval(axis);
            z[axis] > a && z[axis] < b
        }));
        prop_assume!(!occupied);
        let weighted = ps.with_weights(Some(weights[..ps.len()].to_vec())).unwrap();
        let a = discrepancy_haar_coeff(&ps, &idx).unwrap();
        let b = discrepancy_haar_coeff(&weighted, &idx).unwrap();
        prop_assert_eq!(a.value.to_bits(), b.value.to_bits());
        prop_assert_eq!(a.value, -(ps.len() as f64) * volume_coeff(&idx));
    }

    #[test]
    fn parseval_monotone_and_bounded(ps in point_set_strategy(2, 10)) {
        let exact = warnock_l2(&ps).l2_norm_squared;
        let mut prev = 0.0;
        for j in -1..=8 {
            let p = parseval_partial_sum(&ps, j, DEFAULT_BUDGET).unwrap();
            prop_assert!(p >= prev - 1e-15);
            prop_assert!(p <= exact + 1e-9);
            prev = p;
        }
    }

    #[test]
    fn pigeonhole_bound_on_empty_boxes(ps in point_set_strategy(2, 40), k in 0u32..12) {
        for j in compositions(k, 2) {
            let (empty, total) = count_empty_boxes(&ps, &j).unwrap();
            prop_assert!(empty + ps.len() as u64 >= total);
            prop_assert!(empty <= total);
        }
    }

    #[test]
    fn certificate_is_sound(ps in point_set_strategy(2, 40)) {
        let r = certify(&ps, &CertifyOptions::default()).unwrap();
        prop_assert!(r.empirical_lower <= r.exact_l2sq + 1e-9);
        prop_assert!(r.pass);
        prop_assert!(r.t >= 0.0 && r.t < 1.0);
        prop_assert!(r.y > 0.5 && r.y <= 1.0 || ps.len() == 1);
        for l in &r.levels {
            prop_assert!(l.boxes_empty >= l.guaranteed_empty);
            prop_assert!(l.energy >= 0.0);
        }
    }

    #[test]
    fn radical_inverse_matches_digit_loop(n in 0u64..(1u64 << 53)) {
        prop_assert_eq!(radical_inverse_base2(n), radical_inverse_digits(n));
    }

    #[test]
    fn generated_coordinates_are_half_open(n in 1usize..300, seed in any::<u64>()) {
        for kind in GeneratorKind::ALL {
            let d = match kind {
                GeneratorKind::VanDerCorput => 1,
                GeneratorKind::RandomUniform | GeneratorKind::RegularGrid => 3,
                _ => 2,
            };
            let ps = generate(&GeneratorSpec::new(kind, n, d).with_seed(seed)).unwrap();
            prop_assert!(ps.coords().iter().all(|&x| (0.0..1.0).contains(&x)));
        }
    }

    #[test]
    fn rational_ring_identities(a in -1000i64..1000, b in 1i64..1000, c in -1000i64..1000) {
        let x = Rational::new(a, b);
        let y = Rational::new(c, b + 1);
        prop_assert_eq!(&(&x + &y) - &y, x.clone());
        prop_assert_eq!(&x * &y, &y * &x);
    }
}

#[test]
fn hammersley_second_coordinates_are_distinct_dyadics() {
    for m in 1..=10 {
        let n = 1usize << m;
        let ps = generate(&GeneratorSpec::new(GeneratorKind::Hammersley, n, 2)).unwrap();
        let mut ys: Vec<u64> = ps
            .points()
            .enumerate()
            .map(|(i, p)| {
                assert_eq!(p[0], i as f64 / n as f64);
                let scaled = p[1] * n as f64;
                assert_eq!(scaled.fract(), 0.0);
                scaled as u64
            })
            .collect();
        ys.sort_unstable();
        assert_eq!(ys, (0..n as u64).collect::<Vec<_>>());
    }
}

#[test]
fn level_sum_d3_leading_behaviour() {
    // brute / (leading · M²) decreases toward 1
    let mut prev = f64::INFINITY;
    for m in [10u32, 20, 40, 80, 160] {
        let brute = level_sum_brute(2.0, m, 3, 400);
        let lead = l2disc::level_sum_leading_coeff_d(2.0, m, 3).unwrap() * (m as f64).powi(2);
        let ratio = brute / lead;
        assert!(ratio > 1.0 && ratio < prev, "M={m}: {ratio}");
        prev = ratio;
    }
    assert!(prev < 1.04);
}

#[test]
fn ceil_log2_matches_float_definition() {
    for n in 1usize..5000 {
        assert_eq!(ceil_log2(n), (n as f64).log2().ceil() as u32, "n = {n}");
    }
}
