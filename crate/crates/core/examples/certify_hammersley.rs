//! Empty-box lower-bound certificate for Hammersley sets of growing size,
//! with the per-level breakdown for the last one.
//!
//!     cargo run --example certify_hammersley

use l2disc::{certify, generate, CertifyOptions, GeneratorKind, GeneratorSpec};

fn main() -> l2disc::Result<()> {
    println!(
        "{:>6} {:>3} {:>14} {:>14} {:>14} {:>14}",
        "N", "M", "exact", "empirical", "guaranteed", "theoretical"
    );
    let mut last = None;
    for k in 2..=10 {
        let ps = generate(&GeneratorSpec::new(GeneratorKind::Hammersley, 1 << k, 2))?;
        let r = certify(&ps, &CertifyOptions::default())?;
        println!(
            "{:>6} {:>3} {:>14.8} {:>14.8} {:>14.8} {:>14.8}",
            r.n, r.m, r.exact_l2sq, r.empirical_lower, r.guaranteed_lower, r.theoretical_lower
        );
        assert!(r.pass);
        last = Some(r);
    }

    let r = last.unwrap();
    println!("\nN = {}: t = {:.4}, y = {:.4}", r.n, r.t, r.y);
    for (k, level) in (r.m..).zip(&r.levels).take(8) {
        println!(
            "  |j| = {k:>2}: {:>6} of {:>7} boxes empty (at least {:>6}), energy {:.3e}",
            level.boxes_empty, level.boxes_total, level.guaranteed_empty, level.energy
        );
    }
    Ok(())
}
