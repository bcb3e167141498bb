//! Lower- and upper-bound constants for the L2-discrepancy.
//!
//! Rational constants are carried exactly; the rest are `f64` values built
//! from the closed forms. The `sqrt((d-1)!) (ln 2)^((d-1)/2)` factor is shared
//! by the improved and the classical `d`-dimensional constants, so their
//! ratio is checked on the rational prefactors alone.

use serde::Serialize;

use crate::certificate::{gamma_maximize, gamma_objective_d_exact};
use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, Debug, Serialize)]
pub struct Constants {
    /// Optimal constant in `‖D‖² ≥ γ log₂ N`, `d = 2`.
    pub gamma: Rational,
    /// Maximiser of the `γ` objective on `(1/2, 1]`.
    pub y_star: Rational,
    /// `c₂ = 7 / (216 √ln 2)`.
    pub c2: f64,
    /// `√(1 / (2¹⁶ ln 2))`, the classical two-dimensional lower constant.
    pub classical_lower: f64,
    /// `√(278629 / (2811072 ln 22))`, best known upper constant.
    pub best_upper: f64,
    /// `c_d / classical_c_d`, independent of `d`.
    pub improvement: Rational,
}

impl Constants {
    pub fn cd(&self, d: u32) -> f64 {
        cd(d)
    }

    pub fn classical_cd(&self, d: u32) -> f64 {
        classical_cd(d)
    }
}

pub fn constants_table() -> Constants {
    Constants {
        gamma: Rational::new(49, 46656),
        y_star: Rational::new(7, 9),
        c2: 7.0 / (216.0 * std::f64::consts::LN_2.sqrt()),
        classical_lower: (1.0 / (65536.0 * std::f64::consts::LN_2)).sqrt(),
        best_upper: (278629.0 / (2811072.0 * 22f64.ln())).sqrt(),
        improvement: Rational::new(224, 27),
    }
}

pub(crate) fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

/// `sqrt((d-1)!) · (ln 2)^((d-1)/2)`.
fn shared_denominator(d: u32) -> f64 {
    factorial(d - 1).sqrt() * std::f64::consts::LN_2.sqrt().powi(d as i32 - 1)
}

/// Improved constant `c_d = 7 / (27 · 2^(2d-1) · √((d-1)!) · (ln 2)^((d-1)/2))`.
///
/// Panics for `d = 0`.
pub fn cd(d: u32) -> f64 {
    assert!(d >= 1, "dimension must be positive");
    7.0 / (27.0 * (2.0f64).powi(2 * d as i32 - 1) * shared_denominator(d))
}

/// Classical constant `1 / (2^(2d+4) · √((d-1)!) · (ln 2)^((d-1)/2))`.
pub fn classical_cd(d: u32) -> f64 {
    assert!(d >= 1, "dimension must be positive");
    1.0 / ((2.0f64).powi(2 * d as i32 + 4) * shared_denominator(d))
}

/// Rational prefactor of [`cd`]: `7 / (27 · 2^(2d-1))`.
pub fn cd_rational_part(d: u32) -> Rational {
    Rational::new(7, 27) * Rational::pow2(-(2 * d as i32 - 1))
}

/// Rational prefactor of [`classical_cd`]: `2^-(2d+4)`.
pub fn classical_cd_rational_part(d: u32) -> Rational {
    Rational::pow2(-(2 * d as i32 + 4))
}

/// Squared-norm constant `γ_d = (14/27)² / (2^(4d) (d-1)!)`, exact.
pub fn gamma_d(d: u32) -> Rational {
    let fact: i64 = (1..d as i64).product();
    Rational::new(14, 27).powi(2) / (Rational::pow2(4 * d as i32) * Rational::from_integer(fact))
}

/// Plain-text table of every constant, exact rationals as `p/q`, floats
/// with 17 significant digits.
pub fn format_table(d_max: u32) -> String {
    use crate::io::fmt_f64;
    let c = constants_table();
    let mut rows = vec![
        format!("gamma = {} = {}", c.gamma, fmt_f64(c.gamma.to_f64())),
        format!("y_star = {} = {}", c.y_star, fmt_f64(c.y_star.to_f64())),
    ];
    for d in 2..=d_max.max(2) {
        rows.push(format!(
            "c_{d} = {}  (classical {}, gamma_{d} = {})",
            fmt_f64(cd(d)),
            fmt_f64(classical_cd(d)),
            gamma_d(d)
        ));
    }
    rows.push(format!("classical_lower = {}", fmt_f64(c.classical_lower)));
    rows.push(format!("best_upper = {}", fmt_f64(c.best_upper)));
    rows.push(format!(
        "improvement = {} = {}",
        c.improvement,
        fmt_f64(c.improvement.to_f64())
    ));
    let mut out = rows.join("\n");
    out.push('\n');
    out
}

/// Checks every exact identity between the constants. Run at CLI startup.
pub fn self_test() -> Result<()> {
    let c = constants_table();
    let fail = |what: &str| Err(Error::InvalidArgument(format!("constant self-test failed: {what}")));

    if Rational::new(7, 216).powi(2) != c.gamma {
        return fail("(7/216)^2 = gamma");
    }
    let (y, g) = gamma_maximize();
    if y != c.y_star || g != c.gamma {
        return fail("gamma maximiser");
    }
    for d in 2..=12 {
        if &cd_rational_part(d) / &classical_cd_rational_part(d) != c.improvement {
            return fail("improvement ratio");
        }
        if gamma_objective_d_exact(&c.y_star, d) != gamma_d(d) {
            return fail("gamma_d at y*");
        }
    }
    if gamma_d(2) != c.gamma {
        return fail("gamma_2 = gamma");
    }
    if cd(2) != c.c2 {
        return fail("c_2 specialisation");
    }
    if !(c.classical_lower < c.c2 && c.c2 < c.best_upper) {
        return fail("ordering of constants");
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_is_exact() {
        let c = constants_table();
        assert_eq!(c.gamma.to_string(), "49/46656");
        assert_eq!(Rational::new(7, 216).powi(2), c.gamma);
        assert_eq!(c.y_star.to_string(), "7/9");
    }

    #[test]
    fn printed_digits() {
        let c = constants_table();
        // the published values are truncated, not rounded
        let trunc = |x: f64, k: i32| format!("{:.*}", k as usize, (x * 10f64.powi(k)).floor() / 10f64.powi(k));
        assert_eq!(trunc(c.c2, 6), "0.038925");
        assert_eq!(trunc(c.classical_lower, 7), "0.0046918");
        assert_eq!(trunc(c.best_upper, 5), "0.17907");
        assert_eq!(trunc(c.improvement.to_f64(), 6), "8.296296");
    }

    #[test]
    fn c2_is_cd_at_two() {
        let c = constants_table();
        assert_eq!(cd(2) - c.c2, 0.0);
        assert!((classical_cd(2) - c.classical_lower).abs() < 1e-17);
    }

    #[test]
    fn improvement_ratio_holds_numerically() {
        for d in 2..=8 {
            let r = cd(d) / classical_cd(d);
            assert!((r - 224.0 / 27.0).abs() < 1e-12, "d = {d}: {r}");
        }
    }

    #[test]
    fn gamma_d_matches_cd_squared() {
        // c_d² (ln N)^(d-1) = γ_d (log₂ N)^(d-1)
        for d in 2..=6 {
            let lhs = cd(d).powi(2);
            let rhs = gamma_d(d).to_f64() / std::f64::consts::LN_2.powi(d as i32 - 1);
            assert!((lhs - rhs).abs() / rhs < 1e-13, "d = {d}");
        }
    }

    #[test]
    fn table_rows() {
        let t = format_table(8);
        assert!(t.contains("gamma = 49/46656 = 0.0010502400548696846"));
        assert!(t.contains("improvement = 224/27 = 8.2962962962962958"));
        assert!(t.lines().any(|l| l.starts_with("c_2 = 0.038925")));
        assert!(t.lines().any(|l| l.starts_with("c_8 = ")));
    }

    #[test]
    fn startup_self_test_passes() {
        self_test().unwrap();
    }
}
