//! Testing equality of the correlation coefficients of two independent
//! bivariate normal populations.
//!
//! Three tests share one [`TestOutcome`] shape:
//!
//! * [`mslr_test`]: the signed log-likelihood ratio standardized by the mean
//!   and variance of its parametric-bootstrap distribution,
//! * [`fisher_z_test`]: the two-sample Fisher z statistic,
//! * [`gv_test`]: the generalized test variable built from pivotal
//!   quantities of each group's correlation.
//!
//! [`slr_test`] gives the uncorrected signed root with its asymptotic normal
//! p-value. [`simulation`] runs size and power studies over parameter grids.
//!
//! ```
//! use corrtest_core::{fisher_z_test, mslr_test, BootstrapSettings, GroupSummary};
//!
//! let men = GroupSummary::from_correlation(14, 0.641).unwrap();
//! let women = GroupSummary::from_correlation(14, 0.491).unwrap();
//! let fz = fisher_z_test(&men, &women).unwrap();
//! assert!((fz.p_value - 0.6018).abs() < 5e-4);
//!
//! let boot = BootstrapSettings::new(2_000, 7).unwrap();
//! assert!(mslr_test(&men, &women, &boot).unwrap().p_value > 0.5);
//! ```

// `!(x < bound)` checks are intentional: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod estimators;
pub mod hypothesis;
pub mod published;
pub mod rng;
pub mod simulation;

pub use error::{Error, Result};
pub use estimators::{
    bivariate_loglik, common_rho_score, constrained_mles, donner_rosner_rf, fisher_z, inv_fisher_z,
    pearson_common_rho, summarize, summary_loglik, unconstrained_mle, BivariateData,
    BivariateNormalParams, CommonRhoEstimator, ConstrainedFit, GroupSummary, MIN_GROUP_SIZE,
};
pub use hypothesis::{
    fisher_z_test, gv_test, mslr_test, run_method, sample_r_given_rho, slr_p_value, slr_statistic,
    slr_test, two_sided_normal_p, BootstrapSettings, CorrelationSampler, Detail, GvDetail,
    GvSettings, Method, MslrDetail, TestOutcome, DEFAULT_REPLICATIONS, DEFAULT_SEED,
};
pub use rng::{derive_seed, draw_bivariate_normal_sample, ChiSquareSampler, RngStream};
pub use simulation::{run_power_study, run_size_study, CellResult, Scale, StudyResult, StudySpec};
