//! Series with exactly known asymptotic parameters, for checking estimators.

use rug::ops::Pow;
use rug::Float;

use super::real::{bits_for_digits, fl, RealSeries};
use super::AnalysisError;

/// `c_n ~ C mu^n mu_1^{n^sigma} n^g`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StretchedFitParams {
    pub mu: f64,
    pub sigma: f64,
    pub log_mu1: f64,
    pub g: f64,
    pub c: f64,
}

/// `c_n ~ C (alpha n)! mu^n n^g`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FactorialFitParams {
    pub alpha: f64,
    pub mu: f64,
    pub g: f64,
    pub c: f64,
}

fn check_positive(name: &str, v: f64) -> Result<(), AnalysisError> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(AnalysisError::InvalidParameter(format!("{name} must be positive, got {v}")))
    }
}

fn check_len(n_terms: usize) -> Result<(), AnalysisError> {
    if n_terms < 4 {
        return Err(AnalysisError::TooShort { op: "synth", needed: 4, got: n_terms });
    }
    Ok(())
}

/// Model values for `n = 1..=n_terms`, unrounded beyond the working precision.
pub fn synth_stretched(p: &StretchedFitParams, n_terms: usize, digits: u32) -> Result<RealSeries, AnalysisError> {
    check_len(n_terms)?;
    check_positive("mu", p.mu)?;
    check_positive("C", p.c)?;
    if !(p.sigma > 0.0 && p.sigma < 1.0) {
        return Err(AnalysisError::InvalidParameter(format!("sigma must lie in (0, 1), got {}", p.sigma)));
    }
    let prec = bits_for_digits(digits);
    let log_mu = Float::with_val(prec, p.mu).ln();
    let log_c = Float::with_val(prec, p.c).ln();
    let values = (1..=n_terms)
        .map(|n| {
            let nf = fl(prec, n);
            let e = Float::with_val(prec, &log_mu * n as u64)
                + Float::with_val(prec, nf.clone().pow(p.sigma)) * p.log_mu1
                + Float::with_val(prec, nf.ln_ref()) * p.g
                + &log_c;
            e.exp()
        })
        .collect();
    Ok(RealSeries::new(1, digits, values))
}

pub fn synth_factorial(p: &FactorialFitParams, n_terms: usize, digits: u32) -> Result<RealSeries, AnalysisError> {
    check_len(n_terms)?;
    check_positive("alpha", p.alpha)?;
    check_positive("mu", p.mu)?;
    check_positive("C", p.c)?;
    let prec = bits_for_digits(digits);
    let log_mu = Float::with_val(prec, p.mu).ln();
    let log_c = Float::with_val(prec, p.c).ln();
    let alpha = Float::with_val(prec, p.alpha);
    let values = (1..=n_terms)
        .map(|n| {
            let nf = fl(prec, n);
            let gamma = (Float::with_val(prec, &alpha * &nf) + 1u32).ln_gamma();
            let e = gamma + Float::with_val(prec, &log_mu * n as u64) + Float::with_val(prec, nf.ln_ref()) * p.g + &log_c;
            e.exp()
        })
        .collect();
    Ok(RealSeries::new(1, digits, values))
}
