//! Differential approximants: inhomogeneous linear ODEs in `theta = z d/dz`
//! with polynomial coefficients, fitted so that their series solution agrees
//! with the known coefficients, and used to locate singularities and to
//! predict further coefficients.
//!
//! An approximant with degrees `N_0..N_M` and inhomogeneous degree `L`
//! satisfies `sum_k Q_k(z) theta^k F(z) = P(z)`. Comparing `z^m` coefficients
//! gives
//!
//! ```text
//! sum_k sum_j q_{k,j} (m - j)^k c_{m-j} = p_m
//! ```
//!
//! which is linear in the unknown polynomial coefficients when `c` is known
//! and a recurrence for `c_m` once the polynomials are fixed.

mod ensemble;
mod extend;
mod linalg;
mod roots;

use std::fmt;
use std::str::FromStr;

use rug::ops::Pow;
use rug::{Float, Integer, Rational};
use thiserror::Error;

pub use ensemble::{aggregate, combine, default_ensemble, fit_ensemble, predict_ensemble, EnsembleOptions, FitOutcome, PredictedTerm, PredictionResult};
pub use extend::{recurrence_extend, recurrence_extend_exact};
pub use linalg::{back_substitute, bareiss_echelon, Echelon};
pub use roots::{aberth_roots, eval, eval_with_derivative, Cx, Roots};

use crate::analysis::{bits_for_digits, RealSeries};
use crate::series::CoefficientSeries;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DaError {
    #[error("approximant {config} needs {needed} terms, only {got} available")]
    InsufficientTerms { config: String, needed: usize, got: usize },
    #[error("series must start at z^0 (first index is {0})")]
    NotFromZero(usize),
    #[error("invalid approximant configuration: {0}")]
    InvalidConfig(String),
    #[error("approximant {0}: no solution with Q_M nonzero at the normalisation anchor")]
    Degenerate(String),
    #[error("recurrence multiplier vanishes at m = {m}")]
    VanishingMultiplier { m: usize, partial: RealSeries },
    #[error("all {0} approximants failed")]
    AllFitsFailed(usize),
    #[error("only {succeeded} approximants succeeded, {needed} required")]
    TooFewFits { succeeded: usize, needed: usize },
}

/// Degrees `N_0..N_M` of `Q_0..Q_M` and the degree `L` of `P` (`-1` for `P = 0`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DAConfig {
    pub degrees: Vec<usize>,
    pub inhomogeneous: i64,
}

impl DAConfig {
    pub fn new(degrees: Vec<usize>, inhomogeneous: i64) -> Result<Self, DaError> {
        let cfg = Self { degrees, inhomogeneous };
        if cfg.degrees.len() < 2 {
            return Err(DaError::InvalidConfig(format!("{cfg}: order must be at least 1")));
        }
        if inhomogeneous < -1 {
            return Err(DaError::InvalidConfig(format!("{cfg}: L must be at least -1")));
        }
        if cfg.terms_needed() == 0 {
            return Err(DaError::InvalidConfig(format!("{cfg}: uses no coefficients")));
        }
        Ok(cfg)
    }

    pub fn order(&self) -> usize {
        self.degrees.len() - 1
    }

    /// `N = L + sum_k (N_k + 1)`, the number of coefficients matched.
    pub fn terms_needed(&self) -> usize {
        let total: i64 = self.degrees.iter().map(|&d| d as i64 + 1).sum::<i64>() + self.inhomogeneous;
        total.max(0) as usize
    }

    fn unknowns(&self) -> usize {
        self.degrees.iter().map(|d| d + 1).sum::<usize>() + (self.inhomogeneous + 1) as usize
    }

    fn q_offset(&self, k: usize) -> usize {
        self.degrees[..k].iter().map(|d| d + 1).sum()
    }

    fn p_offset(&self) -> usize {
        self.q_offset(self.degrees.len())
    }
}

impl fmt::Display for DAConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d: Vec<String> = self.degrees.iter().map(usize::to_string).collect();
        write!(f, "{}/{}", d.join(","), self.inhomogeneous)
    }
}

/// `N_0,N_1,...,N_M[/L]`; `L` defaults to -1.
impl FromStr for DAConfig {
    type Err = DaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || DaError::InvalidConfig(format!("cannot parse {s:?}; expected N0,N1,...[/L]"));
        let (degs, l) = match s.split_once('/') {
            Some((d, l)) => (d, l.trim().parse::<i64>().map_err(|_| bad())?),
            None => (s, -1),
        };
        let degrees = degs.split(',').map(|d| d.trim().parse::<usize>().map_err(|_| bad())).collect::<Result<_, _>>()?;
        Self::new(degrees, l)
    }
}

/// A fitted approximant with exact rational polynomial coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct DifferentialApproximant {
    pub config: DAConfig,
    /// `q[k][j]` is the `z^j` coefficient of `Q_k`.
    pub q: Vec<Vec<Rational>>,
    pub p: Vec<Rational>,
    /// `(k, j)` of the coefficient fixed to 1.
    pub anchor: (usize, usize),
    /// Dimension of the solution space beyond the normalised ray; free
    /// directions are set to zero.
    pub deficiency: usize,
}

/// `(m - j)^k c_{m-j}` with `0^0 = 1`.
fn theta_term(c: &Integer, shift: usize, k: usize) -> Integer {
    if k == 0 {
        c.clone()
    } else {
        Integer::from(shift).pow(k as u32) * c
    }
}

/// Fit `cfg` to the first `N` coefficients of `c`, which must start at `z^0`.
pub fn fit_da(c: &CoefficientSeries, cfg: &DAConfig) -> Result<DifferentialApproximant, DaError> {
    if c.first_index != 0 {
        return Err(DaError::NotFromZero(c.first_index));
    }
    let n = cfg.terms_needed();
    if c.len() < n {
        return Err(DaError::InsufficientTerms { config: cfg.to_string(), needed: n, got: c.len() });
    }
    let u = cfg.unknowns();
    let mut a = vec![vec![Integer::new(); u]; n];
    for (m, row) in a.iter_mut().enumerate() {
        for (k, &deg) in cfg.degrees.iter().enumerate() {
            let off = cfg.q_offset(k);
            for j in 0..=deg.min(m) {
                row[off + j] = theta_term(&c.values[m - j], m - j, k);
            }
        }
        if (m as i64) <= cfg.inhomogeneous {
            row[cfg.p_offset() + m] = Integer::from(-1);
        }
    }
    let m_order = cfg.order();
    let top = cfg.degrees[m_order];
    let mut anchors = vec![(m_order, 0)];
    if top > 0 {
        anchors.push((m_order, top));
    }
    for (k, j) in anchors {
        let pin = cfg.q_offset(k) + j;
        // Move the anchor column to the right-hand side.
        let m: Vec<Vec<Integer>> = a
            .iter()
            .map(|row| {
                let mut r: Vec<Integer> = row.iter().enumerate().filter(|&(i, _)| i != pin).map(|(_, v)| v.clone()).collect();
                r.push(Integer::from(-&row[pin]));
                r
            })
            .collect();
        let e = bareiss_echelon(m, u - 1);
        let Some(mut x) = back_substitute(&e, u - 1, u - 1) else {
            continue;
        };
        x.insert(pin, Rational::from(1));
        let deficiency = u - 1 - e.rank();
        let q = cfg
            .degrees
            .iter()
            .enumerate()
            .map(|(k, &d)| x[cfg.q_offset(k)..=cfg.q_offset(k) + d].to_vec())
            .collect();
        let p = x[cfg.p_offset()..].to_vec();
        return Ok(DifferentialApproximant { config: cfg.clone(), q, p, anchor: (k, j), deficiency });
    }
    Err(DaError::Degenerate(cfg.to_string()))
}

/// A root of `Q_M` and, for simple roots away from the origin, its exponent.
#[derive(Clone, Debug, PartialEq)]
pub struct SingularityReport {
    pub location: Cx,
    /// `gamma` in `F ~ (1 - z/z_c)^{-gamma}`.
    pub exponent: Option<Cx>,
    /// `M - 1 - Q_{M-1}(z_c) / (z_c Q_M'(z_c))`, the exponent `lambda` of
    /// `(1 - z/z_c)^lambda`; equal to `-gamma`.
    pub indicial: Option<Cx>,
    pub multiple: bool,
    pub at_origin: bool,
    /// `|Q_M(z_c)|` relative to the size of the terms summed.
    pub residual: Float,
    pub verified: bool,
}

impl DifferentialApproximant {
    pub fn order(&self) -> usize {
        self.config.order()
    }

    pub fn terms_used(&self) -> usize {
        self.config.terms_needed()
    }

    /// `sum_k q_{k,0} m^k`, the factor multiplying `c_m` in the recurrence.
    pub fn multiplier(&self, m: usize) -> Rational {
        let mut acc = Rational::new();
        for (k, qk) in self.q.iter().enumerate() {
            acc += Rational::from(&qk[0] * Integer::from(m).pow(k as u32));
        }
        acc
    }

    /// Residual of the `z^m` equation for `m < limit` on the given series;
    /// all zero through `N - 1` by construction.
    pub fn residuals(&self, c: &CoefficientSeries, limit: usize) -> Vec<Rational> {
        (0..limit.min(c.len()))
            .map(|m| {
                let mut acc = Rational::new();
                for (k, qk) in self.q.iter().enumerate() {
                    for (j, q) in qk.iter().enumerate().take(m + 1) {
                        acc += Rational::from(q * theta_term(&c.values[m - j], m - j, k));
                    }
                }
                if let Some(p) = self.p.get(m) {
                    acc -= p;
                }
                acc
            })
            .collect()
    }

    /// Roots of `Q_M` at `digits` decimal digits with their exponents.
    pub fn singularities(&self, digits: u32) -> Vec<SingularityReport> {
        let prec = bits_for_digits(digits);
        let qm = &self.q[self.order()];
        let deg = match qm.iter().rposition(|v| !v.is_zero()) {
            Some(d) => d,
            None => return Vec::new(),
        };
        let coeffs: Vec<Float> = qm[..=deg].iter().map(|v| Float::with_val(prec, v)).collect();
        let qm1: Vec<Float> = self.q[self.order() - 1].iter().map(|v| Float::with_val(prec, v)).collect();
        let found = roots::aberth_roots(&coeffs, 2000);
        let roots: Vec<Cx> = found.roots.into_iter().map(|z| polish(&coeffs, z)).collect();
        let tol = Float::with_val(prec, 10u32).pow(-(digits as i32) / 2);
        let cluster = Float::with_val(prec, 10u32).pow(-(digits as i32) / 4);
        let one = Float::with_val(prec, 1u32);
        let m_minus_1 = Float::with_val(prec, self.order() as u32 - 1);
        roots
            .iter()
            .enumerate()
            .map(|(i, z)| {
                let scale = z.norm().max(&one);
                let multiple = roots
                    .iter()
                    .enumerate()
                    .any(|(j, w)| j != i && (z - w).norm() < Float::with_val(prec, &cluster * &scale));
                let at_origin = z.norm() < cluster;
                let (val, der) = eval_with_derivative(&coeffs, z);
                let mut size = Float::new(prec);
                let zn = z.norm();
                let mut pw = Float::with_val(prec, 1u32);
                for c in &coeffs {
                    size += Float::with_val(prec, c.abs_ref()) * &pw;
                    pw *= &zn;
                }
                let residual = val.norm() / size;
                let verified = residual <= tol && found.converged;
                let indicial = (!multiple && !at_origin).then(|| {
                    let ratio = eval(&qm1, z).div(&(z * &der));
                    &Cx::real(m_minus_1.clone()) - &ratio
                });
                let exponent = indicial.as_ref().map(|l| &Cx::zero(prec) - l);
                SingularityReport { location: z.clone(), exponent, indicial, multiple, at_origin, residual, verified }
            })
            .collect()
    }

    /// The verified singularity closest to `target`.
    pub fn singularity_near(&self, target: &Cx, digits: u32) -> Option<SingularityReport> {
        self.singularities(digits)
            .into_iter()
            .filter(|s| s.verified)
            .min_by(|a, b| (&a.location - target).norm().total_cmp(&(&b.location - target).norm()))
    }
}

/// A few Newton steps to sharpen a root from the simultaneous iteration.
fn polish(coeffs: &[Float], mut z: Cx) -> Cx {
    for _ in 0..4 {
        let (p, dp) = eval_with_derivative(coeffs, &z);
        if p.is_zero() || dp.is_zero() {
            break;
        }
        z = &z - &p.div(&dp);
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::closed_forms::catalan;

    fn catalan_series(n: usize) -> CoefficientSeries {
        CoefficientSeries::new(0, (0..n).map(catalan).collect())
    }

    fn geometric(n: usize) -> CoefficientSeries {
        CoefficientSeries::new(0, (0..n as u32).map(|m| Integer::from(1) << m).collect())
    }

    #[test]
    fn config_parsing() {
        let c: DAConfig = "13,15/2".parse().unwrap();
        assert_eq!((c.order(), c.terms_needed()), (1, 32));
        assert_eq!(c.to_string(), "13,15/2");
        assert_eq!("1,1".parse::<DAConfig>().unwrap().inhomogeneous, -1);
        assert!("3".parse::<DAConfig>().is_err());
        assert!("1,x".parse::<DAConfig>().is_err());
        assert!("1,1/-2".parse::<DAConfig>().is_err());
    }

    #[test]
    fn geometric_series_is_recovered() {
        let cfg = DAConfig::new(vec![1, 1], -1).unwrap();
        let da = fit_da(&geometric(6), &cfg).unwrap();
        // (1 - 2z) theta F - 2z F = 0
        assert_eq!(da.q[1], vec![Rational::from(1), Rational::from(-2)]);
        assert_eq!(da.q[0], vec![Rational::new(), Rational::from(-2)]);
        assert_eq!(da.anchor, (1, 0));
        let s = da.singularities(40);
        assert_eq!(s.len(), 1);
        assert!((s[0].location.re.to_f64() - 0.5).abs() < 1e-30);
        let g = s[0].exponent.as_ref().unwrap();
        assert!((g.re.to_f64() - 1.0).abs() < 1e-30 && g.im.to_f64().abs() < 1e-30);
    }

    #[test]
    fn catalan_root_and_exponent() {
        let c = catalan_series(30);
        let cfg = DAConfig::new(vec![9, 9], 9).unwrap();
        let da = fit_da(&c, &cfg).unwrap();
        assert!(da.residuals(&c, 29).iter().all(Rational::is_zero));
        let quarter = Cx::real(Float::with_val(200, 0.25));
        let s = da.singularity_near(&quarter, 60).unwrap();
        assert!((s.location.re.to_f64() - 0.25).abs() < 1e-8);
        assert!((s.exponent.unwrap().re.to_f64() + 0.5).abs() < 1e-6);
    }

    #[test]
    fn errors() {
        let cfg = DAConfig::new(vec![5, 5], 3).unwrap();
        assert!(matches!(fit_da(&geometric(6), &cfg), Err(DaError::InsufficientTerms { needed: 15, .. })));
        let shifted = CoefficientSeries::from_u64s(1, &[1, 2, 3]);
        assert_eq!(fit_da(&shifted, &cfg), Err(DaError::NotFromZero(1)));
    }
}
