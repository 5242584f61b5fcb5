//! Reading off intercepts: every trace is reported three ways (the raw
//! trace, polynomial extrapolants in a chosen abscissa, and the last point).

use std::fmt;

use rug::ops::Pow;
use rug::Float;

use super::real::{fl, format_fixed, Trace};

/// The abscissa a trace is extrapolated against: `x = n^{-p}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Abscissa(pub f64);

impl Abscissa {
    pub const INVERSE_N: Abscissa = Abscissa(1.0);
    pub const INVERSE_N_SQUARED: Abscissa = Abscissa(2.0);

    pub fn at(&self, prec: u32, n: usize) -> Float {
        fl(prec, n).pow(Float::with_val(prec, -self.0))
    }
}

impl fmt::Display for Abscissa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 1.0 {
            write!(f, "1/n")
        } else {
            write!(f, "1/n^{}", self.0)
        }
    }
}

/// Value at `x = 0` of the polynomial through `(xs[i], ys[i])`.
pub fn neville_at_zero(xs: &[Float], ys: &[Float]) -> Option<Float> {
    assert_eq!(xs.len(), ys.len());
    let prec = ys.first()?.prec();
    let mut p: Vec<Float> = ys.to_vec();
    let n = p.len();
    for m in 1..n {
        for i in 0..n - m {
            let (xi, xj) = (&xs[i], &xs[i + m]);
            let denom = Float::with_val(prec, xj - xi);
            if denom.is_zero() {
                return None;
            }
            // p_i = (x_j p_i - x_i p_{i+1}) / (x_j - x_i), evaluated at 0.
            let num = Float::with_val(prec, xj * &p[i]) - Float::with_val(prec, xi * &p[i + 1]);
            p[i] = num / denom;
        }
    }
    p.into_iter().next()
}

#[derive(Clone, Debug, PartialEq)]
pub struct InterceptReport {
    pub label: String,
    pub abscissa: Abscissa,
    pub last: Option<(usize, Float)>,
    /// `(degree, extrapolant)` from the last `degree + 1` points.
    pub extrapolants: Vec<(usize, Float)>,
}

impl InterceptReport {
    pub fn extrapolant(&self, degree: usize) -> Option<&Float> {
        self.extrapolants.iter().find(|e| e.0 == degree).map(|e| &e.1)
    }

    pub fn render(&self, digits: u32) -> String {
        let mut out = format!("{} vs {}:", self.label, self.abscissa);
        match &self.last {
            Some((n, v)) => out += &format!(" last(n={n})={}", format_fixed(v, digits)),
            None => out += " empty",
        }
        for (d, v) in &self.extrapolants {
            out += &format!(" neville{d}={}", format_fixed(v, digits));
        }
        out
    }
}

impl Trace {
    /// Three-way intercept report with Neville extrapolants of degree
    /// `1..=max_degree` built on the final points of the trace.
    pub fn intercepts(&self, abscissa: Abscissa, max_degree: usize) -> InterceptReport {
        let last = self.last().cloned();
        let mut extrapolants = Vec::new();
        if let Some((_, v)) = &last {
            let prec = v.prec();
            for d in 1..=max_degree {
                if self.points.len() < d + 1 {
                    break;
                }
                let tail = &self.points[self.points.len() - d - 1..];
                let xs: Vec<Float> = tail.iter().map(|(n, _)| abscissa.at(prec, *n)).collect();
                let ys: Vec<Float> = tail.iter().map(|(_, y)| y.clone()).collect();
                if let Some(e) = neville_at_zero(&xs, &ys) {
                    extrapolants.push((d, e));
                }
            }
        }
        InterceptReport { label: self.label.clone(), abscissa, last, extrapolants }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::real::bits_for_digits;

    #[test]
    fn neville_is_exact_on_polynomials() {
        let prec = bits_for_digits(40);
        let xs: Vec<Float> = (1..5).map(|i| Float::with_val(prec, i) / 7u32).collect();
        let ys: Vec<Float> = xs.iter().map(|x| Float::with_val(prec, 3u32) - Float::with_val(prec, x * 2u32) + Float::with_val(prec, x * x) * 5u32).collect();
        let e = neville_at_zero(&xs, &ys).unwrap();
        assert!((e - 3u32).abs() < 1e-35);
    }

    #[test]
    fn intercept_report_in_inverse_n() {
        let prec = bits_for_digits(40);
        let mut t = Trace::new("y");
        for n in 10..20usize {
            t.push(n, Float::with_val(prec, 2u32) + Float::with_val(prec, 3u32) / n as u32);
        }
        let rep = t.intercepts(Abscissa::INVERSE_N, 3);
        assert_eq!(rep.extrapolants.len(), 3);
        for (_, v) in &rep.extrapolants {
            assert!((v.to_f64() - 2.0).abs() < 1e-30);
        }
        assert_eq!(rep.last.as_ref().unwrap().0, 19);
        assert!(rep.render(10).starts_with("y vs 1/n: last(n=19)=2.157894737"));
    }
}
