//! Series extension through the recurrence implied by an approximant.

use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use super::{DaError, DifferentialApproximant};
use crate::analysis::{bits_for_digits, RealSeries};
use crate::series::CoefficientSeries;

/// Coefficients of `c_{m-j}` for `j = 1..` in the `z^m` equation, i.e.
/// `sum_k q_{k,j} (m - j)^k`.
fn lag_weights(da: &DifferentialApproximant, m: usize) -> Vec<Rational> {
    let max_deg = da.config.degrees.iter().copied().max().unwrap_or(0).min(m);
    (1..=max_deg)
        .map(|j| {
            let base = Integer::from(m - j);
            let mut w = Rational::new();
            for (k, qk) in da.q.iter().enumerate() {
                if let Some(q) = qk.get(j) {
                    if !q.is_zero() {
                        w += Rational::from(q * base.clone().pow(k as u32));
                    }
                }
            }
            w
        })
        .collect()
}

fn p_at(da: &DifferentialApproximant, m: usize) -> Rational {
    da.p.get(m).cloned().unwrap_or_default()
}

/// Predict `count` coefficients following the input at `digits` decimal
/// digits. The result starts at `c.end_index()`; earlier coefficients are
/// taken from `c` exactly.
pub fn recurrence_extend(
    da: &DifferentialApproximant,
    c: &CoefficientSeries,
    count: usize,
    digits: u32,
) -> Result<RealSeries, DaError> {
    if c.first_index != 0 {
        return Err(DaError::NotFromZero(c.first_index));
    }
    let prec = bits_for_digits(digits);
    let start = c.len();
    let mut all: Vec<Float> = c.values.iter().map(|v| Float::with_val(prec, v)).collect();
    for m in start..start + count {
        let mult = da.multiplier(m);
        if mult.is_zero() {
            let partial = RealSeries::new(start, digits, all[start..].to_vec());
            return Err(DaError::VanishingMultiplier { m, partial });
        }
        let mut rhs = Float::with_val(prec, &p_at(da, m));
        for (j, w) in lag_weights(da, m).iter().enumerate() {
            if !w.is_zero() {
                rhs -= Float::with_val(prec, w) * &all[m - 1 - j];
            }
        }
        all.push(rhs / Float::with_val(prec, &mult));
    }
    Ok(RealSeries::new(start, digits, all.split_off(start)))
}

/// Exact rational version of [`recurrence_extend`], starting the recurrence
/// at `from` (any index up to `c.len()`). Coefficients before `from` come
/// from `c`; the returned values cover `from..from + count`.
pub fn recurrence_extend_exact(
    da: &DifferentialApproximant,
    c: &CoefficientSeries,
    from: usize,
    count: usize,
) -> Result<Vec<Rational>, DaError> {
    if c.first_index != 0 {
        return Err(DaError::NotFromZero(c.first_index));
    }
    let from = from.min(c.len());
    let mut all: Vec<Rational> = c.values[..from].iter().map(|v| Rational::from(v.clone())).collect();
    for m in from..from + count {
        let mult = da.multiplier(m);
        if mult.is_zero() {
            let partial = RealSeries::from_exact(from, crate::analysis::DEFAULT_DIGITS, all[from..].to_vec());
            return Err(DaError::VanishingMultiplier { m, partial });
        }
        let mut rhs = p_at(da, m);
        for (j, w) in lag_weights(da, m).iter().enumerate() {
            if !w.is_zero() {
                rhs -= Rational::from(w * &all[m - 1 - j]);
            }
        }
        all.push(rhs / mult);
    }
    Ok(all.split_off(from))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::closed_forms::catalan;
    use crate::da::{fit_da, DAConfig};

    #[test]
    fn geometric_predictions_are_exact() {
        let c = CoefficientSeries::new(0, (0..6u32).map(|m| Integer::from(1) << m).collect());
        let da = fit_da(&c, &"1,1".parse::<DAConfig>().unwrap()).unwrap();
        let ext = recurrence_extend(&da, &c, 20, 60).unwrap();
        assert_eq!(ext.first_index(), 6);
        for (m, v) in ext.iter() {
            assert_eq!(*v, Float::with_val(64, Integer::from(1) << m as u32));
        }
        let exact = recurrence_extend_exact(&da, &c, 2, 30).unwrap();
        for (i, v) in exact.iter().enumerate() {
            assert_eq!(*v, Rational::from(Integer::from(1) << (i + 2) as u32));
        }
    }

    #[test]
    fn catalan_continuation() {
        let c = CoefficientSeries::new(0, (0..30).map(catalan).collect());
        let da = fit_da(&c, &"9,9/9".parse::<DAConfig>().unwrap()).unwrap();
        // The fit reproduces the input from its own initial segment.
        let n = da.terms_used();
        let replay = recurrence_extend_exact(&da, &c, 1, n - 1).unwrap();
        for (i, v) in replay.iter().enumerate() {
            assert_eq!(*v, Rational::from(catalan(i + 1)));
        }
        let exact = recurrence_extend_exact(&da, &c, 30, 10).unwrap();
        for (i, v) in exact.iter().enumerate() {
            assert_eq!(*v, Rational::from(catalan(30 + i)));
        }
        let ext = recurrence_extend(&da, &c, 10, 60).unwrap();
        for (m, v) in ext.iter() {
            let truth = Float::with_val(200, catalan(m));
            let rel = Float::with_val(200, v - &truth).abs() / truth;
            assert!(rel.to_f64() < 1e-40);
        }
    }

    #[test]
    fn vanishing_multiplier_stops_with_partial_output() {
        // theta F - 3F = 0 has multiplier m - 3.
        let cfg = DAConfig::new(vec![0, 0], -1).unwrap();
        let da = DifferentialApproximant {
            config: cfg,
            q: vec![vec![Rational::from(-3)], vec![Rational::from(1)]],
            p: Vec::new(),
            anchor: (1, 0),
            deficiency: 0,
        };
        let c = CoefficientSeries::from_u64s(0, &[0, 0]);
        match recurrence_extend(&da, &c, 5, 40) {
            Err(DaError::VanishingMultiplier { m, partial }) => {
                assert_eq!(m, 3);
                assert_eq!((partial.first_index(), partial.len()), (2, 1));
            }
            other => panic!("{other:?}"),
        }
    }
}
