//! Ratio transforms and the estimators built on them.

use rug::ops::Pow;
use rug::{Float, Rational};

use super::real::{fl, RealSeries, Trace};
use super::AnalysisError;

/// `r_n = c_n / c_{n-1}`.
pub fn ratios(c: &RealSeries) -> Result<RealSeries, AnalysisError> {
    c.require("ratios", 2)?;
    c.nonzero()?;
    Ok(c.pairwise(|_, a, b| Rational::from(a / b), |_, a, b| Float::with_val(a.prec(), a / b)))
}

/// `r_n = c_n / (n c_{n-1})`, the ratios of the exponential generating function.
pub fn egf_ratios(c: &RealSeries) -> Result<RealSeries, AnalysisError> {
    c.require("egf_ratios", 2)?;
    c.nonzero()?;
    Ok(c.pairwise(
        |n, a, b| Rational::from(a / b) / Rational::from(n),
        |n, a, b| Float::with_val(a.prec(), a / b) / n as u64,
    ))
}

/// `l_n = n r_n - (n-1) r_{n-1}`; removes a `c/n` term exactly.
pub fn linear_intercepts(r: &RealSeries) -> Result<RealSeries, AnalysisError> {
    r.require("linear_intercepts", 2)?;
    Ok(r.pairwise(
        |n, a, b| Rational::from(a * n as u64) - Rational::from(b * (n as u64 - 1)),
        |n, a, b| Float::with_val(a.prec(), a * n as u64) - Float::with_val(a.prec(), b * (n as u64 - 1)),
    ))
}

/// `l2_n = (n^2 l_n - (n-1)^2 l_{n-1}) / (2n - 1)`; applied to linear
/// intercepts it also removes a `c/n^2` term from the ratios.
pub fn quadratic_intercepts(l: &RealSeries) -> Result<RealSeries, AnalysisError> {
    l.require("quadratic_intercepts", 2)?;
    Ok(l.pairwise(
        |n, a, b| {
            let (n, m) = (n as u64, n as u64 - 1);
            (Rational::from(a * (n * n)) - Rational::from(b * (m * m))) / (2 * n - 1)
        },
        |n, a, b| {
            let (n, m) = (n as u64, n as u64 - 1);
            (Float::with_val(a.prec(), a * (n * n)) - Float::with_val(a.prec(), b * (m * m))) / (2 * n - 1)
        },
    ))
}

/// `l3_n = n l2_n - (n-1) l2_{n-1}`: linear intercepts of `l2`.
pub fn cubic_intercepts(l2: &RealSeries) -> Result<RealSeries, AnalysisError> {
    linear_intercepts(l2)
}

/// `h_n = a_n / b_n` over the common index range.
pub fn hadamard_quotient(a: &RealSeries, b: &RealSeries) -> Result<RealSeries, AnalysisError> {
    let (Some(la), Some(lb)) = (a.last_index(), b.last_index()) else {
        return Err(AnalysisError::NoOverlap);
    };
    let first = a.first_index().max(b.first_index());
    let last = la.min(lb);
    if first > last {
        return Err(AnalysisError::NoOverlap);
    }
    let digits = a.digits().min(b.digits());
    if let Some(index) = (first..=last).find(|&n| b.get(n).is_some_and(Float::is_zero)) {
        return Err(AnalysisError::ZeroCoefficient { index });
    }
    if a.exact().is_some() && b.exact().is_some() {
        let q = (first..=last)
            .map(|n| Rational::from(a.exact_at(n).expect("exact") / b.exact_at(n).expect("exact")))
            .collect();
        return Ok(RealSeries::from_exact(first, digits, q));
    }
    let prec = a.prec().min(b.prec());
    let v = (first..=last)
        .map(|n| Float::with_val(prec, a.get(n).expect("in range") / b.get(n).expect("in range")))
        .collect();
    Ok(RealSeries::new(first, digits, v))
}

/// A log-log trace and its local gradients.
#[derive(Clone, Debug, PartialEq)]
pub struct GradientTrace {
    /// `log(x_n)` at each usable index.
    pub log_values: Trace,
    /// `(log x_n - log x_{n-1}) / (log n - log(n-1))`.
    pub gradients: Trace,
}

fn log_log(label: &str, prec: u32, xs: impl Iterator<Item = (usize, Float)>) -> GradientTrace {
    let mut log_values = Trace::new(label);
    for (n, x) in xs {
        if x > 0 {
            log_values.push(n, x.ln());
        } else {
            log_values.skip(n, format!("{label}: argument {} is not positive", x.to_f64()));
        }
    }
    let gradients = log_values.local_gradients(&format!("{label} gradient"), |n| fl(prec, n).ln());
    GradientTrace { log_values, gradients }
}

/// `log(r_n / r_{n-1} - 1)` against `log n`; gradients tend to `sigma - 2`.
pub fn sigma_estimator_ratio(r: &RealSeries) -> Result<GradientTrace, AnalysisError> {
    r.require("sigma_estimator_ratio", 2)?;
    r.nonzero()?;
    let prec = r.prec();
    let v = r.values();
    let xs = (1..v.len()).map(|i| (r.first_index() + i, Float::with_val(prec, &v[i] / &v[i - 1]) - 1u32));
    Ok(log_log("log(r_n/r_{n-1}-1)", prec, xs))
}

/// `log(c_n^{1/n} / c_{n-1}^{1/(n-1)} - 1)` against `log n`; gradients tend to
/// `sigma - 2`. Indices below 2 are not used.
pub fn sigma_estimator_root(c: &RealSeries) -> Result<GradientTrace, AnalysisError> {
    c.require("sigma_estimator_root", 3)?;
    let logs = c.logs("sigma_estimator_root")?;
    let prec = c.prec();
    let first = c.first_index();
    let xs = (1..logs.len()).filter(|&i| first + i >= 2).map(|i| {
        let n = (first + i) as u64;
        let e = Float::with_val(prec, &logs[i] / n) - Float::with_val(prec, &logs[i - 1] / (n - 1));
        (first + i, e.exp() - 1u32)
    });
    Ok(log_log("log(a_n-1)", prec, xs))
}

/// `1 + (log|r_n/mu - 1| - log|r_{n-1}/mu - 1|) / (log n - log(n-1))`.
pub fn sigma_local_gradient_known_mu(r: &RealSeries, mu: &Float) -> Result<Trace, AnalysisError> {
    r.require("sigma_local_gradient_known_mu", 2)?;
    if *mu <= 0 {
        return Err(AnalysisError::InvalidParameter("mu must be positive".into()));
    }
    let prec = r.prec();
    let xs = r.iter().map(|(n, v)| (n, (Float::with_val(prec, v / mu) - 1u32).abs()));
    let GradientTrace { gradients, .. } = log_log("log|r_n/mu-1|", prec, xs);
    let mut out = Trace::new("sigma~_n");
    for (n, g) in gradients.points {
        out.push(n, g + 1u32);
    }
    out.skipped = gradients.skipped;
    Ok(out)
}

fn check_sigma(sigma: &Float) -> Result<(), AnalysisError> {
    if *sigma <= 0 || *sigma >= 1 {
        return Err(AnalysisError::InvalidParameter("sigma must lie in (0, 1)".into()));
    }
    Ok(())
}

fn check_mu(mu: &Float) -> Result<(), AnalysisError> {
    if *mu <= 0 {
        return Err(AnalysisError::InvalidParameter("mu must be positive".into()));
    }
    Ok(())
}

/// `(r_n/mu - 1) n^{1-sigma}`, tending to `sigma log mu_1`.
pub fn mu1_estimator(r: &RealSeries, mu: &Float, sigma: &Float) -> Result<Trace, AnalysisError> {
    check_mu(mu)?;
    check_sigma(sigma)?;
    let prec = r.prec();
    let one_minus = Float::with_val(prec, 1u32 - sigma);
    let mut out = Trace::new("(r_n/mu-1)n^(1-sigma)");
    for (n, v) in r.iter() {
        let w = fl(prec, n).pow(&one_minus);
        out.push(n, (Float::with_val(prec, v / mu) - 1u32) * w);
    }
    Ok(out)
}

/// `e_n / sigma` with `e_n = ((n-1)^s log d_n - n^s log d_{n-1}) n^{1-s}` and
/// `d_n = c_n / mu^n`, plus gradients against `log n` that tend to `-g`.
pub fn g_estimator(c: &RealSeries, mu: &Float, sigma: &Float) -> Result<GradientTrace, AnalysisError> {
    check_mu(mu)?;
    check_sigma(sigma)?;
    c.require("g_estimator", 3)?;
    let prec = c.prec();
    let log_mu = Float::with_val(prec, mu.ln_ref());
    let log_d: Vec<Float> = c
        .logs("g_estimator")?
        .into_iter()
        .zip(c.first_index()..)
        .map(|(l, n)| l - Float::with_val(prec, &log_mu * n as u64))
        .collect();
    let mut values = Trace::new("e_n/sigma");
    for i in 1..log_d.len() {
        let n = c.first_index() + i;
        if n < 2 {
            continue;
        }
        let nf = fl(prec, n);
        let mf = fl(prec, n - 1);
        let a = Float::with_val(prec, mf.pow(sigma)) * &log_d[i];
        let b = Float::with_val(prec, nf.clone().pow(sigma)) * &log_d[i - 1];
        let w = nf.pow(Float::with_val(prec, 1u32 - sigma));
        values.push(n, (a - b) * w / sigma);
    }
    let gradients = values.local_gradients("-g estimate", |n| fl(prec, n).ln());
    Ok(GradientTrace { log_values: values, gradients })
}

/// `(log f_n - log f_{n-1}) / (n^s - (n-1)^s)` with `f_n = c_n / (n^g mu^n)`,
/// tending to `log mu_1`.
pub fn mu1_refined(c: &RealSeries, mu: &Float, sigma: &Float, g: &Float) -> Result<Trace, AnalysisError> {
    check_mu(mu)?;
    check_sigma(sigma)?;
    c.require("mu1_refined", 2)?;
    let prec = c.prec();
    let log_mu = Float::with_val(prec, mu.ln_ref());
    let log_f: Vec<(usize, Float)> = c
        .logs("mu1_refined")?
        .into_iter()
        .zip(c.first_index()..)
        .map(|(l, n)| {
            let nf = fl(prec, n);
            let gl = if n == 0 { Float::new(prec) } else { Float::with_val(prec, nf.ln_ref()) * g };
            (n, l - gl - Float::with_val(prec, &log_mu * n as u64))
        })
        .collect();
    let mut out = Trace::new("log mu1");
    for w in log_f.windows(2) {
        let ((_, a), (n, b)) = (&w[0], &w[1]);
        if *n < 2 {
            continue;
        }
        let denom = fl(prec, *n).pow(sigma) - fl(prec, n - 1).pow(sigma);
        out.push(*n, Float::with_val(prec, b - a) / denom);
    }
    Ok(out)
}

/// `c_n / (mu^n mu_1^{n^sigma} n^g)`.
pub fn amplitude_trace(
    c: &RealSeries,
    mu: &Float,
    sigma: &Float,
    log_mu1: &Float,
    g: &Float,
) -> Result<Trace, AnalysisError> {
    check_mu(mu)?;
    let prec = c.prec();
    let log_mu = Float::with_val(prec, mu.ln_ref());
    let mut out = Trace::new("C_n");
    for ((l, n), _) in c.logs("amplitude_trace")?.into_iter().zip(c.first_index()..).zip(c.values()) {
        if n == 0 {
            continue;
        }
        let nf = fl(prec, n);
        let model = Float::with_val(prec, &log_mu * n as u64)
            + Float::with_val(prec, nf.clone().pow(sigma)) * log_mu1
            + Float::with_val(prec, nf.ln_ref()) * g;
        out.push(n, (l - model).exp());
    }
    Ok(out)
}
