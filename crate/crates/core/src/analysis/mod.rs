//! Asymptotic series analysis: ratio transforms and intercepts, estimators
//! for stretched-exponential and factorial growth, small linear fits over
//! sliding windows, and synthetic series with known parameters.
//!
//! Everything runs on MPFR floats at a configurable number of decimal digits.
//! Transforms of exact integer input are carried out on exact rationals and
//! rounded once at the end.

mod constants;
mod extrapolate;
mod fit;
mod real;
mod synth;
mod transforms;

use thiserror::Error;

pub use constants::{ReferenceConstant, ReferenceConstants};
pub use extrapolate::{neville_at_zero, Abscissa, InterceptReport};
pub use fit::{
    alpha_trace, factorial_ratio_transforms, fit_ratio4, fit_ratio4_sweep, fit_stirling_log, fit_stirling_log_sweep,
    solve_linear, FactorialTransforms, LinearFitWindow,
};
pub use real::{bits_for_digits, format_fixed, RealSeries, Skip, Trace, DEFAULT_DIGITS};
pub use synth::{synth_factorial, synth_stretched, FactorialFitParams, StretchedFitParams};
pub use transforms::{
    amplitude_trace, cubic_intercepts, egf_ratios, g_estimator, hadamard_quotient, linear_intercepts, mu1_estimator,
    mu1_refined, quadratic_intercepts, ratios, sigma_estimator_ratio, sigma_estimator_root,
    sigma_local_gradient_known_mu, GradientTrace,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AnalysisError {
    #[error("zero coefficient at index {index}")]
    ZeroCoefficient { index: usize },
    #[error("{op} needs at least {needed} terms, got {got}")]
    TooShort { op: &'static str, needed: usize, got: usize },
    #[error("{op} needs positive values; index {index} is not")]
    NonPositive { op: &'static str, index: usize },
    #[error("singular linear system for window k = {k}")]
    Singular { k: usize },
    #[error("window k = {k} is outside the available indices {first}..={last}")]
    WindowOutOfRange { k: usize, first: usize, last: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("series do not overlap")]
    NoOverlap,
}
