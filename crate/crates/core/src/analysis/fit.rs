//! Four-parameter fits over sliding windows and the factorial-growth ratio
//! transforms.

use rayon::prelude::*;
use rug::ops::Pow;
use rug::{Float, Rational};

use super::real::{fl, RealSeries, Trace};
use super::transforms::ratios;
use super::AnalysisError;

/// Solution of one window of a sliding fit.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearFitWindow {
    pub k: usize,
    pub coefficients: Vec<Float>,
    /// Largest absolute residual of the solved system on its own rows.
    pub residual: Float,
}

/// Gaussian elimination with partial pivoting. Returns `None` when a pivot
/// vanishes relative to the column scale.
pub fn solve_linear(mut a: Vec<Vec<Float>>, mut b: Vec<Float>) -> Option<Vec<Float>> {
    let n = b.len();
    let prec = b.first()?.prec();
    let tiny = Float::with_val(prec, Float::i_exp(1, -(prec as i32) + 16));
    for col in 0..n {
        let scale = (0..n).map(|r| a[r][col].clone().abs()).fold(Float::new(prec), |m, v| if v > m { v } else { m });
        let pivot = (col..n).max_by(|&x, &y| a[x][col].cmp_abs(&a[y][col]).expect("finite"))?;
        if a[pivot][col].clone().abs() <= Float::with_val(prec, &scale * &tiny) || a[pivot][col].is_zero() {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for r in col + 1..n {
            let f = Float::with_val(prec, &a[r][col] / &a[col][col]);
            let (top, bottom) = a.split_at_mut(r);
            for (x, p) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                *x -= Float::with_val(prec, &f * p);
            }
            let d = Float::with_val(prec, &f * &b[col]);
            b[r] -= d;
        }
    }
    let mut x = vec![Float::new(prec); n];
    for r in (0..n).rev() {
        let mut acc = b[r].clone();
        for c in r + 1..n {
            acc -= Float::with_val(prec, &a[r][c] * &x[c]);
        }
        x[r] = acc / &a[r][r];
    }
    Some(x)
}

fn solve_window(k: usize, rows: Vec<Vec<Float>>, rhs: Vec<Float>) -> Result<LinearFitWindow, AnalysisError> {
    let coefficients = solve_linear(rows.clone(), rhs.clone()).ok_or(AnalysisError::Singular { k })?;
    let prec = rhs[0].prec();
    let mut residual = Float::new(prec);
    for (row, y) in rows.iter().zip(&rhs) {
        let mut acc = Float::with_val(prec, -y);
        for (a, x) in row.iter().zip(&coefficients) {
            acc += Float::with_val(prec, a * x);
        }
        residual = residual.max(&acc.abs());
    }
    Ok(LinearFitWindow { k, coefficients, residual })
}

fn check_window(s: &RealSeries, k: usize, lo: usize) -> Result<(), AnalysisError> {
    let first = s.first_index();
    let last = s.last_index().unwrap_or(first);
    if k < lo + 2 || k + 1 > last || s.is_empty() {
        return Err(AnalysisError::WindowOutOfRange { k, first, last });
    }
    Ok(())
}

/// Fit `r_n = c1 + c2/n^{1-sigma} + c3/n + c4/n^{2-2sigma}` exactly through
/// `r_{k-2}, .., r_{k+1}`.
pub fn fit_ratio4(r: &RealSeries, sigma: &Float, k: usize) -> Result<LinearFitWindow, AnalysisError> {
    check_window(r, k, r.first_index().max(1))?;
    let prec = r.prec();
    let e1 = Float::with_val(prec, sigma - 1u32);
    let e2 = Float::with_val(prec, &e1 * 2u32);
    let (rows, rhs) = (k - 2..=k + 1)
        .map(|n| {
            let nf = fl(prec, n);
            let row = vec![
                Float::with_val(prec, 1u32),
                nf.clone().pow(&e1),
                Float::with_val(prec, nf.recip_ref()),
                nf.pow(&e2),
            ];
            (row, r.get(n).expect("window checked").clone())
        })
        .unzip();
    solve_window(k, rows, rhs)
}

/// [`fit_ratio4`] at every admissible `k`, in increasing order.
pub fn fit_ratio4_sweep(r: &RealSeries, sigma: &Float) -> Result<Vec<LinearFitWindow>, AnalysisError> {
    let Some(last) = r.last_index() else { return Ok(Vec::new()) };
    let lo = r.first_index().max(1) + 2;
    (lo..last).into_par_iter().map(|k| fit_ratio4(r, sigma, k)).collect()
}

/// Fit `log c_k = e1 k log k + e2 k + e3 log k + e4` through `k = m-2..=m+1`.
pub fn fit_stirling_log(c: &RealSeries, m: usize) -> Result<LinearFitWindow, AnalysisError> {
    check_window(c, m, c.first_index().max(1) + 1)?;
    let prec = c.prec();
    let window = c.from_index(m - 2);
    let logs = window.logs("fit_stirling_log")?;
    let (rows, rhs) = (m - 2..=m + 1)
        .zip(logs)
        .map(|(k, y)| {
            let kf = fl(prec, k);
            let lk = Float::with_val(prec, kf.ln_ref());
            (vec![Float::with_val(prec, &kf * &lk), kf, lk, Float::with_val(prec, 1u32)], y)
        })
        .unzip();
    solve_window(m, rows, rhs)
}

pub fn fit_stirling_log_sweep(c: &RealSeries) -> Result<Vec<LinearFitWindow>, AnalysisError> {
    let Some(last) = c.last_index() else { return Ok(Vec::new()) };
    let lo = c.first_index().max(1) + 3;
    (lo..last).into_par_iter().map(|m| fit_stirling_log(c, m)).collect()
}

/// `r_n = c_n/c_{n-1}`, `s_n = r_n/r_{n-1}`, `t_n = (n^2 s_n - (n-1)^2 s_{n-1})/(2n-1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FactorialTransforms {
    pub r: RealSeries,
    pub s: RealSeries,
    pub t: RealSeries,
}

pub fn factorial_ratio_transforms(c: &RealSeries) -> Result<FactorialTransforms, AnalysisError> {
    c.require("factorial_ratio_transforms", 4)?;
    let r = ratios(c)?;
    let s = ratios(&r)?;
    let t = s.pairwise(
        |n, a, b| {
            let (n, m) = (n as u64, n as u64 - 1);
            (Rational::from(a * (n * n)) - Rational::from(b * (m * m))) / (2 * n - 1)
        },
        |n, a, b| {
            let (n, m) = (n as u64, n as u64 - 1);
            (Float::with_val(a.prec(), a * (n * n)) - Float::with_val(a.prec(), b * (m * m))) / (2 * n - 1)
        },
    );
    Ok(FactorialTransforms { r, s, t })
}

/// Twice the local gradient of `t_n` against `1/n`, which tends to `alpha`.
pub fn alpha_trace(t: &RealSeries) -> Trace {
    let prec = t.prec();
    let g = t.to_trace("t_n").local_gradients("alpha_n", |n| Float::with_val(prec, fl(prec, n).recip_ref()));
    g.scaled("alpha_n", &Float::with_val(prec, 2u32))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::real::bits_for_digits;

    #[test]
    fn ratio_fit_recovers_exact_model() {
        let prec = bits_for_digits(60);
        let sigma = Float::with_val(prec, 0.375);
        let model = |n: usize| {
            let nf = fl(prec, n);
            Float::with_val(prec, 7.295)
                - Float::with_val(prec, 26.5) / nf.clone().pow(0.625)
                - Float::with_val(prec, 20) / &nf
                + Float::with_val(prec, 5) / nf.pow(1.25)
        };
        let r = RealSeries::new(1, 60, (1..30).map(model).collect());
        let w = fit_ratio4(&r, &sigma, 20).unwrap();
        let expect = [7.295, -26.5, -20.0, 5.0];
        for (c, e) in w.coefficients.iter().zip(expect) {
            assert!((c.to_f64() - e).abs() < 1e-40, "{c} vs {e}");
        }
        assert!(w.residual < Float::with_val(prec, 1e-50));
        assert_eq!(fit_ratio4_sweep(&r, &sigma).unwrap().len(), 26);
        assert!(matches!(fit_ratio4(&r, &sigma, 29), Err(AnalysisError::WindowOutOfRange { .. })));
    }

    #[test]
    fn stirling_fit_recovers_exact_model() {
        let prec = bits_for_digits(60);
        let vals = (1..40)
            .map(|k| {
                let kf = fl(prec, k);
                let lk = Float::with_val(prec, kf.ln_ref());
                let y = Float::with_val(prec, 0.75) * &kf * &lk - Float::with_val(prec, 1.35) * &kf
                    + Float::with_val(prec, 2u32) * &lk
                    + 1u32;
                y.exp()
            })
            .collect();
        let c = RealSeries::new(1, 60, vals);
        let w = fit_stirling_log(&c, 30).unwrap();
        for (x, e) in w.coefficients.iter().zip([0.75, -1.35, 2.0, 1.0]) {
            assert!((x.to_f64() - e).abs() < 1e-40);
        }
    }

    #[test]
    fn singular_systems_are_detected() {
        let prec = bits_for_digits(30);
        let one = || Float::with_val(prec, 1u32);
        assert!(solve_linear(vec![vec![one(), one()], vec![one(), one()]], vec![one(), one()]).is_none());
    }

    #[test]
    fn factorial_alpha_is_one() {
        let mut f = rug::Integer::from(1);
        let vals = (1..200u32)
            .map(|n| {
                f *= n;
                f.clone()
            })
            .collect();
        let c = RealSeries::from(&crate::series::CoefficientSeries::new(1, vals));
        let ft = factorial_ratio_transforms(&c).unwrap();
        assert_eq!(ft.t.first_index(), 4);
        let a = alpha_trace(&ft.t);
        assert!((a.last_f64().unwrap() - 1.0).abs() < 0.01);
    }
}
