//! Ensembles of approximants: averaged predictions with outlier exclusion.

use rayon::prelude::*;
use rug::Float;

use super::{fit_da, recurrence_extend, DAConfig, DaError, DifferentialApproximant};
use crate::analysis::{bits_for_digits, RealSeries, DEFAULT_DIGITS};
use crate::series::CoefficientSeries;

#[derive(Clone, Debug, PartialEq)]
pub struct EnsembleOptions {
    pub digits: u32,
    /// Values further than this many median absolute deviations from the
    /// median are excluded.
    pub mad_multiple: f64,
    pub min_success: usize,
}

impl Default for EnsembleOptions {
    fn default() -> Self {
        Self { digits: DEFAULT_DIGITS, mad_multiple: 3.0, min_success: 3 }
    }
}

/// One member of the ensemble.
#[derive(Clone, Debug)]
pub struct FitOutcome {
    pub config: DAConfig,
    pub approximant: Option<DifferentialApproximant>,
    pub predictions: Option<RealSeries>,
    pub error: Option<DaError>,
}

impl FitOutcome {
    pub fn succeeded(&self) -> bool {
        self.predictions.is_some()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PredictedTerm {
    pub index: usize,
    pub mean: Float,
    pub std_dev: Float,
    pub agreed_digits: u32,
    /// Configs whose values were averaged.
    pub retained: Vec<DAConfig>,
    /// Configs dropped as outliers at this index.
    pub excluded: Vec<DAConfig>,
}

#[derive(Clone, Debug)]
pub struct PredictionResult {
    pub outcomes: Vec<FitOutcome>,
    pub terms: Vec<PredictedTerm>,
}

impl PredictionResult {
    pub fn successes(&self) -> impl Iterator<Item = &FitOutcome> {
        self.outcomes.iter().filter(|o| o.succeeded())
    }

    pub fn means(&self) -> Vec<Float> {
        self.terms.iter().map(|t| t.mean.clone()).collect()
    }
}

fn run_one(c: &CoefficientSeries, cfg: &DAConfig, count: usize, digits: u32) -> FitOutcome {
    let mut out = FitOutcome { config: cfg.clone(), approximant: None, predictions: None, error: None };
    match fit_da(c, cfg) {
        Ok(da) => {
            match recurrence_extend(&da, c, count, digits) {
                Ok(p) => out.predictions = Some(p),
                Err(e) => out.error = Some(e),
            }
            out.approximant = Some(da);
        }
        Err(e) => out.error = Some(e),
    }
    out
}

fn median(sorted: &[Float]) -> Float {
    let n = sorted.len();
    let prec = sorted[0].prec();
    if n % 2 == 1 {
        sorted[n / 2].clone()
    } else {
        Float::with_val(prec, &sorted[n / 2 - 1] + &sorted[n / 2]) / 2u32
    }
}

/// Number of leading significant decimal digits shared by all values.
pub(crate) fn common_digits(values: &[&Float], digits: u32) -> u32 {
    if values.len() < 2 {
        return 0;
    }
    let render = |v: &Float| v.to_sign_string_exp(10, Some(digits as usize));
    let (neg0, m0, e0) = render(values[0]);
    let mut shared = m0.len();
    for v in &values[1..] {
        let (neg, m, e) = render(v);
        if neg != neg0 || e != e0 {
            return 0;
        }
        shared = shared.min(m0.bytes().zip(m.bytes()).take_while(|(a, b)| a == b).count());
    }
    shared as u32
}

/// Per-index MAD exclusion, mean, spread and digit agreement over member
/// predictions covering `start..start + count`.
pub fn aggregate(
    members: &[(&DAConfig, &RealSeries)],
    start: usize,
    count: usize,
    opts: &EnsembleOptions,
) -> Vec<PredictedTerm> {
    let prec = bits_for_digits(opts.digits);
    let mut terms = Vec::with_capacity(count);
    for m in start..start + count {
        let vals: Vec<(&DAConfig, &Float)> = members.iter().filter_map(|(c, p)| Some((*c, p.get(m)?))).collect();
        if vals.is_empty() {
            break;
        }
        let mut sorted: Vec<Float> = vals.iter().map(|(_, v)| (*v).clone()).collect();
        sorted.sort_by(|a, b| a.total_cmp(b));
        let med = median(&sorted);
        let mut dev: Vec<Float> = sorted.iter().map(|v| Float::with_val(prec, v - &med).abs()).collect();
        dev.sort_by(|a, b| a.total_cmp(b));
        let limit = median(&dev) * opts.mad_multiple;
        let (kept, dropped): (Vec<_>, Vec<_>) =
            vals.into_iter().partition(|(_, v)| Float::with_val(prec, *v - &med).abs() <= limit);
        let k = kept.len() as u32;
        let mut mean = Float::new(prec);
        for (_, v) in &kept {
            mean += *v;
        }
        mean /= k;
        let mut var = Float::new(prec);
        for (_, v) in &kept {
            var += Float::with_val(prec, *v - &mean).square();
        }
        let std_dev = if k > 1 { (var / (k - 1)).sqrt() } else { Float::new(prec) };
        let agreed_digits = common_digits(&kept.iter().map(|(_, v)| *v).collect::<Vec<_>>(), opts.digits);
        terms.push(PredictedTerm {
            index: m,
            mean,
            std_dev,
            agreed_digits,
            retained: kept.into_iter().map(|(c, _)| c.clone()).collect(),
            excluded: dropped.into_iter().map(|(c, _)| c.clone()).collect(),
        });
    }
    terms
}

/// Fit every config (in parallel) and extend each by `count` terms. The
/// outcomes come back sorted by config, independent of input order and
/// thread count.
pub fn fit_ensemble(c: &CoefficientSeries, cfgs: &[DAConfig], count: usize, digits: u32) -> Vec<FitOutcome> {
    let mut cfgs = cfgs.to_vec();
    cfgs.sort();
    cfgs.par_iter().map(|cfg| run_one(c, cfg, count, digits)).collect()
}

/// Aggregate fitted members whose predictions start at `start`.
pub fn combine(
    outcomes: Vec<FitOutcome>,
    start: usize,
    count: usize,
    opts: &EnsembleOptions,
) -> Result<PredictionResult, DaError> {
    let ok: Vec<&FitOutcome> = outcomes.iter().filter(|o| o.succeeded()).collect();
    if ok.is_empty() {
        return Err(DaError::AllFitsFailed(outcomes.len()));
    }
    if ok.len() < opts.min_success {
        return Err(DaError::TooFewFits { succeeded: ok.len(), needed: opts.min_success });
    }
    let members: Vec<(&DAConfig, &RealSeries)> =
        ok.iter().map(|o| (&o.config, o.predictions.as_ref().unwrap())).collect();
    let terms = aggregate(&members, start, count, opts);
    Ok(PredictionResult { outcomes, terms })
}

/// [`fit_ensemble`] followed by [`combine`].
pub fn predict_ensemble(
    c: &CoefficientSeries,
    cfgs: &[DAConfig],
    count: usize,
    opts: &EnsembleOptions,
) -> Result<PredictionResult, DaError> {
    combine(fit_ensemble(c, cfgs, count, opts.digits), c.len(), count, opts)
}

/// Near-balanced configs of the given order: degree vectors with
/// `max - min <= 2` using between `available - 4` and `available` terms,
/// for each inhomogeneous degree in `l_values`.
pub fn default_ensemble(available: usize, order: usize, l_values: &[i64]) -> Vec<DAConfig> {
    let mut out = Vec::new();
    if order == 0 {
        return out;
    }
    let k = order + 1;
    for &l in l_values {
        for used in available.saturating_sub(4)..=available {
            // sum_k (N_k + 1) = used - L
            let Some(s) = (used as i64 - l).checked_sub(k as i64).filter(|s| *s >= 0) else {
                continue;
            };
            let s = s as usize;
            let base = s / k;
            for lo in base.saturating_sub(2)..=base {
                let mut degs = vec![lo; k];
                let mut rest = s - lo * k;
                // Spread the remainder from the highest derivative down,
                // never exceeding lo + 2.
                for d in degs.iter_mut().rev() {
                    let add = rest.min(2);
                    *d += add;
                    rest -= add;
                }
                if rest == 0 {
                    if let Ok(cfg) = DAConfig::new(degs, l) {
                        if cfg.terms_needed() <= available && !out.contains(&cfg) {
                            out.push(cfg);
                        }
                    }
                }
            }
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::closed_forms::catalan;
    use rug::Integer;

    fn catalan_series(n: usize) -> CoefficientSeries {
        CoefficientSeries::new(0, (0..n).map(catalan).collect())
    }

    fn cfgs(list: &[&str]) -> Vec<DAConfig> {
        list.iter().map(|s| s.parse().unwrap()).collect()
    }

    #[test]
    fn catalan_ensemble_agrees() {
        let c = catalan_series(30);
        let r = predict_ensemble(&c, &cfgs(&["5,5/2", "6,6/3", "7,7/1", "8,8/4", "6,7/2"]), 10, &EnsembleOptions::default())
            .unwrap();
        assert_eq!(r.terms.len(), 10);
        assert!(r.terms[0].agreed_digits >= 12);
        for t in &r.terms {
            let truth = Float::with_val(200, catalan(t.index));
            let rel = Float::with_val(200, &t.mean - &truth).abs() / truth;
            assert!(rel.to_f64() < 1e-10, "{}", t.index);
        }
    }

    #[test]
    fn identical_configs_have_zero_spread() {
        let c = catalan_series(20);
        let r = predict_ensemble(&c, &cfgs(&["3,3/1"; 4]), 5, &EnsembleOptions::default()).unwrap();
        assert!(r.terms.iter().all(|t| t.std_dev.is_zero() && t.excluded.is_empty()));
    }

    #[test]
    fn too_few_and_all_failed() {
        let c = catalan_series(8);
        let opts = EnsembleOptions::default();
        assert!(matches!(
            predict_ensemble(&c, &cfgs(&["9,9", "8,8"]), 3, &opts),
            Err(DaError::AllFitsFailed(2))
        ));
        assert!(matches!(
            predict_ensemble(&c, &cfgs(&["1,1/0", "9,9"]), 3, &opts),
            Err(DaError::TooFewFits { succeeded: 1, needed: 3 })
        ));
    }

    #[test]
    fn corrupted_member_is_excluded() {
        let c = catalan_series(30);
        let opts = EnsembleOptions::default();
        let r = predict_ensemble(&c, &cfgs(&["5,5/2", "6,6/3", "7,7/1", "8,8/4", "6,7/2"]), 4, &opts).unwrap();
        let bad_cfg: DAConfig = "1,1".parse().unwrap();
        let bad = RealSeries::new(30, 60, r.means().iter().map(|v| Float::with_val(v.prec(), v * 1.01)).collect());
        let mut members: Vec<(&DAConfig, &RealSeries)> =
            r.successes().map(|o| (&o.config, o.predictions.as_ref().unwrap())).collect();
        members.push((&bad_cfg, &bad));
        let terms = aggregate(&members, 30, 4, &opts);
        for (t, clean) in terms.iter().zip(&r.terms) {
            assert_eq!(t.excluded, vec![bad_cfg.clone()]);
            let shift = Float::with_val(200, &t.mean - &clean.mean).abs();
            assert!(shift <= t.std_dev.clone().max(&clean.std_dev));
        }
    }

    #[test]
    fn digit_agreement() {
        let p = 200;
        let a = Float::with_val(p, 1.23456);
        let b = Float::with_val(p, 1.23499);
        let c = Float::with_val(p, -1.23456);
        assert_eq!(common_digits(&[&a, &b], 20), 4);
        assert_eq!(common_digits(&[&a, &c], 20), 0);
        assert_eq!(common_digits(&[&a], 20), 0);
    }

    #[test]
    fn default_ensemble_is_balanced_and_fits_budget() {
        let e = default_ensemble(40, 2, &[-1, 0, 2]);
        assert!(!e.is_empty());
        for cfg in &e {
            let (lo, hi) = (cfg.degrees.iter().min().unwrap(), cfg.degrees.iter().max().unwrap());
            assert!(hi - lo <= 2 && cfg.terms_needed() <= 40 && cfg.terms_needed() >= 36);
        }
        assert!(e.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn noise_does_not_crash() {
        let mut state = 0x9e3779b97f4a7c15u64;
        let vals: Vec<Integer> = (0..30)
            .map(|_| {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                Integer::from(state % 1000)
            })
            .collect();
        let c = CoefficientSeries::new(0, vals);
        let r = predict_ensemble(&c, &default_ensemble(30, 1, &[-1, 0]), 5, &EnsembleOptions::default());
        if let Ok(r) = r {
            for o in r.successes() {
                let _ = o.approximant.as_ref().unwrap().singularities(30);
            }
        }
    }
}
