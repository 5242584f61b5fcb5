use rug::{Float, Rational};

use super::AnalysisError;
use crate::series::CoefficientSeries;

pub const DEFAULT_DIGITS: u32 = 60;

/// Binary precision carrying `digits` decimal digits plus a few guard bits.
pub fn bits_for_digits(digits: u32) -> u32 {
    (f64::from(digits) * std::f64::consts::LOG2_10).ceil() as u32 + 8
}

/// Plain decimal rendering with `digits` significant digits, never in
/// exponent notation. Trailing fractional zeros are dropped.
pub fn format_fixed(x: &Float, digits: u32) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x.is_sign_negative() { "-inf".into() } else { "inf".into() };
    }
    if x.is_zero() {
        return "0".into();
    }
    let (neg, mantissa, exp) = x.to_sign_string_exp(10, Some(digits.max(1) as usize));
    let exp = exp.unwrap_or(0) as i64;
    let d = mantissa.len() as i64;
    let mut out = String::with_capacity(mantissa.len() + exp.unsigned_abs() as usize + 3);
    if neg {
        out.push('-');
    }
    if exp <= 0 {
        out.push_str("0.");
        out.extend(std::iter::repeat_n('0', (-exp) as usize));
        out.push_str(&mantissa);
    } else if exp < d {
        out.push_str(&mantissa[..exp as usize]);
        out.push('.');
        out.push_str(&mantissa[exp as usize..]);
    } else {
        out.push_str(&mantissa);
        out.extend(std::iter::repeat_n('0', (exp - d) as usize));
    }
    if out.contains('.') {
        let trimmed = out.trim_end_matches('0').trim_end_matches('.').len();
        out.truncate(trimmed);
    }
    out
}

/// Real values indexed from `first_index`, optionally backed by the exact
/// rationals they were rounded from.
#[derive(Clone, Debug, PartialEq)]
pub struct RealSeries {
    first_index: usize,
    digits: u32,
    values: Vec<Float>,
    exact: Option<Vec<Rational>>,
}

impl RealSeries {
    pub fn new(first_index: usize, digits: u32, values: Vec<Float>) -> Self {
        let prec = bits_for_digits(digits);
        let values = values.into_iter().map(|v| Float::with_val(prec, v)).collect();
        Self { first_index, digits, values, exact: None }
    }

    pub fn from_exact(first_index: usize, digits: u32, exact: Vec<Rational>) -> Self {
        let prec = bits_for_digits(digits);
        let values = exact.iter().map(|q| Float::with_val(prec, q)).collect();
        Self { first_index, digits, values, exact: Some(exact) }
    }

    pub fn from_coefficients(c: &CoefficientSeries, digits: u32) -> Self {
        Self::from_exact(c.first_index, digits, c.values.iter().map(|v| Rational::from(v.clone())).collect())
    }

    pub fn from_f64s(first_index: usize, digits: u32, values: &[f64]) -> Self {
        let prec = bits_for_digits(digits);
        Self::new(first_index, digits, values.iter().map(|&v| Float::with_val(prec, v)).collect())
    }

    pub fn first_index(&self) -> usize {
        self.first_index
    }

    pub fn last_index(&self) -> Option<usize> {
        (!self.values.is_empty()).then(|| self.first_index + self.values.len() - 1)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn prec(&self) -> u32 {
        bits_for_digits(self.digits)
    }

    pub fn values(&self) -> &[Float] {
        &self.values
    }

    pub fn exact(&self) -> Option<&[Rational]> {
        self.exact.as_deref()
    }

    pub fn get(&self, n: usize) -> Option<&Float> {
        n.checked_sub(self.first_index).and_then(|i| self.values.get(i))
    }

    pub fn exact_at(&self, n: usize) -> Option<&Rational> {
        let i = n.checked_sub(self.first_index)?;
        self.exact.as_ref()?.get(i)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Float)> {
        self.values.iter().enumerate().map(move |(i, v)| (self.first_index + i, v))
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.values.iter().map(Float::to_f64).collect()
    }

    /// The same values at a different precision (exact backing kept).
    pub fn with_digits(&self, digits: u32) -> Self {
        match &self.exact {
            Some(q) => Self::from_exact(self.first_index, digits, q.clone()),
            None => Self::new(self.first_index, digits, self.values.clone()),
        }
    }

    /// Keep indices `>= from`.
    pub fn from_index(&self, from: usize) -> Self {
        let skip = from.saturating_sub(self.first_index).min(self.values.len());
        Self {
            first_index: self.first_index.max(from),
            digits: self.digits,
            values: self.values[skip..].to_vec(),
            exact: self.exact.as_ref().map(|q| q[skip..].to_vec()),
        }
    }

    pub fn to_trace(&self, label: &str) -> Trace {
        Trace {
            label: label.to_string(),
            points: self.iter().map(|(n, v)| (n, v.clone())).collect(),
            skipped: Vec::new(),
        }
    }

    pub(crate) fn require(&self, op: &'static str, needed: usize) -> Result<(), AnalysisError> {
        if self.len() < needed {
            Err(AnalysisError::TooShort { op, needed, got: self.len() })
        } else {
            Ok(())
        }
    }

    /// Natural logarithms of the values; exact integers go through MPFR
    /// directly so very large coefficients lose nothing.
    pub(crate) fn logs(&self, op: &'static str) -> Result<Vec<Float>, AnalysisError> {
        let prec = self.prec();
        self.iter()
            .map(|(n, v)| {
                if *v <= 0 {
                    return Err(AnalysisError::NonPositive { op, index: n });
                }
                Ok(match self.exact_at(n) {
                    Some(q) if *q.denom() == 1 => Float::with_val(prec, q.numer()).ln(),
                    _ => v.clone().ln(),
                })
            })
            .collect()
    }

    /// Pairwise combination of consecutive entries, exact when possible.
    /// The result starts at `first_index + 1`.
    pub(crate) fn pairwise(
        &self,
        exact: impl Fn(usize, &Rational, &Rational) -> Rational,
        float: impl Fn(usize, &Float, &Float) -> Float,
    ) -> Self {
        let first = self.first_index + 1;
        match &self.exact {
            Some(q) => {
                let out = q.windows(2).enumerate().map(|(i, w)| exact(first + i, &w[1], &w[0])).collect();
                Self::from_exact(first, self.digits, out)
            }
            None => {
                let out = self.values.windows(2).enumerate().map(|(i, w)| float(first + i, &w[1], &w[0])).collect();
                Self::new(first, self.digits, out)
            }
        }
    }

    pub(crate) fn nonzero(&self) -> Result<(), AnalysisError> {
        match self.iter().find(|(_, v)| v.is_zero()) {
            Some((index, _)) => Err(AnalysisError::ZeroCoefficient { index }),
            None => Ok(()),
        }
    }
}

impl From<&CoefficientSeries> for RealSeries {
    fn from(c: &CoefficientSeries) -> Self {
        Self::from_coefficients(c, DEFAULT_DIGITS)
    }
}

/// An index skipped by an estimator, with the reason.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Skip {
    pub index: usize,
    pub reason: String,
}

/// Estimator output: values at (possibly non-contiguous) indices plus the
/// indices that were skipped.
#[derive(Clone, Debug, PartialEq)]
pub struct Trace {
    pub label: String,
    pub points: Vec<(usize, Float)>,
    pub skipped: Vec<Skip>,
}

impl Trace {
    pub fn new(label: &str) -> Self {
        Self { label: label.to_string(), points: Vec::new(), skipped: Vec::new() }
    }

    pub fn push(&mut self, n: usize, v: Float) {
        self.points.push((n, v));
    }

    pub fn skip(&mut self, index: usize, reason: impl Into<String>) {
        self.skipped.push(Skip { index, reason: reason.into() });
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn last(&self) -> Option<&(usize, Float)> {
        self.points.last()
    }

    pub fn get(&self, n: usize) -> Option<&Float> {
        self.points.binary_search_by_key(&n, |p| p.0).ok().map(|i| &self.points[i].1)
    }

    pub fn last_f64(&self) -> Option<f64> {
        self.last().map(|p| p.1.to_f64())
    }

    /// `(y_n - y_{n-1}) / (x(n) - x(n-1))` wherever both neighbours exist.
    pub fn local_gradients(&self, label: &str, x: impl Fn(usize) -> Float) -> Trace {
        let mut out = Trace::new(label);
        for w in self.points.windows(2) {
            let ((m, ym), (n, yn)) = (&w[0], &w[1]);
            if *m + 1 != *n {
                continue;
            }
            let dx = x(*n) - x(*m);
            out.push(*n, Float::with_val(yn.prec(), yn - ym) / dx);
        }
        out.skipped = self.skipped.clone();
        out
    }

    /// Multiply every value by `k`.
    pub fn scaled(&self, label: &str, k: &Float) -> Trace {
        Trace {
            label: label.to_string(),
            points: self.points.iter().map(|(n, v)| (*n, Float::with_val(v.prec(), v * k))).collect(),
            skipped: self.skipped.clone(),
        }
    }
}

/// `Float` from an integer index at `prec` bits.
pub(crate) fn fl(prec: u32, n: usize) -> Float {
    Float::with_val(prec, n)
}
