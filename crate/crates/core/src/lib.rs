//! Exact L2-discrepancy of finite point sets in `[0,1)^d`, the tensor Haar
//! spectrum of the discrepancy function, and empty-box lower-bound
//! certificates with the optimal two-term constants.
//!
//! ```
//! use l2disc::{certify, generate, warnock_l2, CertifyOptions, GeneratorKind, GeneratorSpec};
//!
//! let ps = generate(&GeneratorSpec::new(GeneratorKind::Hammersley, 64, 2)).unwrap();
//! let l2 = warnock_l2(&ps);
//! let report = certify(&ps, &CertifyOptions::default()).unwrap();
//! assert!(report.pass);
//! assert!(report.empirical_lower <= l2.l2_norm_squared);
//! ```

pub mod certificate;
pub mod constants;
pub mod discrepancy;
pub mod error;
pub mod generators;
pub mod haar;
pub mod io;
pub mod rational;
pub mod sum;
pub mod sweep;
pub mod types;

pub use certificate::{
    certify, count_empty_boxes, gamma_maximize, gamma_objective, gamma_objective_d,
    level_sum_closed_form, level_sum_leading_coeff_d, theoretical_lower_bound, CertificateReport,
    CertifyOptions, LevelReport,
};
pub use constants::{constants_table, Constants};
pub use discrepancy::{discrepancy_at, l2_exact_grid, l2_monte_carlo, warnock_l2, DiscrepancyValue};
pub use error::{Error, Result};
pub use generators::{generate, radical_inverse_base2, GeneratorKind, GeneratorSpec};
pub use haar::{
    discrepancy_haar_coeff, haar_eval_1d, haar_spectrum, parseval_partial_sum, point_coeff,
    tail_integral_1d, volume_coeff, volume_coeff_1d, HaarCoefficient, DEFAULT_BUDGET,
};
pub use io::{parse_point_set, read_point_set, write_point_set};
pub use rational::Rational;
pub use sweep::{run_sweep, OutputFormat, SweepConfig, SweepReport};
pub use types::{DyadicIndex, PointSet};
