//! Desk-scale cross-checks between the enumerators, the exhaustive oracle
//! and the structural facts they should satisfy.

use std::fmt;

use rug::Integer;

use crate::combinatorics::{
    brute_force_avoiders, closed_forms, contains_pattern, is_weak_ascent_sequence, weak_ascent_sequences,
    weak_reverse_complement, Pattern,
};
use crate::dp::{
    cache_repetition_report, check_000_swap_pairs, enumerate, Algorithm, Avoid000, EnumOptions, Memoized,
};
use crate::series::CoefficientSeries;

/// Outcome of one check. `failures` lists the offending indices or keys.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub failures: Vec<String>,
}

impl Check {
    fn new(name: impl Into<String>, failures: Vec<String>, detail: impl Into<String>) -> Self {
        Self { name: name.into(), passed: failures.is_empty(), detail: detail.into(), failures }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {:<34} {}", if self.passed { "PASS" } else { "FAIL" }, self.name, self.detail)?;
        for x in self.failures.iter().take(10) {
            write!(f, "\n     {x}")?;
        }
        if self.failures.len() > 10 {
            write!(f, "\n     ... {} more", self.failures.len() - 10)?;
        }
        Ok(())
    }
}

/// Index and both values at the first disagreement, comparing indices
/// present in both series.
pub fn first_mismatch(a: &CoefficientSeries, b: &CoefficientSeries) -> Option<(usize, Integer, Integer)> {
    a.iter().find_map(|(n, x)| match b.get(n) {
        Some(y) if x != y => Some((n, x.clone(), y.clone())),
        _ => None,
    })
}

fn pattern(s: &str) -> Pattern {
    s.parse().expect("built-in pattern")
}

/// Sizes used by [`run_all`]. `quick(n)` caps every length at `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyScale {
    pub oracle: usize,
    pub oracle_120: usize,
    pub exp_vs_poly: usize,
    pub closed_form: usize,
    pub weak_counts: usize,
    pub weak_map: usize,
    pub supermultiplicative: usize,
    pub swap_pairs_n: u32,
    pub swap_pairs_a: i32,
    pub repetition_terms: usize,
}

impl Default for VerifyScale {
    fn default() -> Self {
        Self {
            oracle: 12,
            oracle_120: 14,
            exp_vs_poly: 20,
            closed_form: 12,
            weak_counts: 10,
            weak_map: 8,
            supermultiplicative: 14,
            swap_pairs_n: 14,
            swap_pairs_a: 5,
            repetition_terms: 18,
        }
    }
}

impl VerifyScale {
    pub fn quick(max_n: usize) -> Self {
        let d = Self::default();
        Self {
            oracle: d.oracle.min(max_n),
            oracle_120: d.oracle_120.min(max_n),
            exp_vs_poly: d.exp_vs_poly.min(max_n),
            closed_form: d.closed_form.min(max_n),
            weak_counts: d.weak_counts.min(max_n),
            weak_map: d.weak_map.min(max_n),
            supermultiplicative: d.supermultiplicative.min(max_n),
            swap_pairs_n: d.swap_pairs_n.min(max_n as u32),
            swap_pairs_a: d.swap_pairs_a.min(max_n as i32 / 2),
            repetition_terms: d.repetition_terms.min(max_n),
        }
    }
}

fn dp_series(algorithm: Algorithm, n: usize) -> CoefficientSeries {
    enumerate(algorithm, n, &EnumOptions::overriding()).expect("overridden caps")
}

pub fn check_oracle(name: &str, algorithm: Algorithm, pat: Option<&str>, n: usize) -> Check {
    let dp = dp_series(algorithm, n);
    let oracle = match pat {
        Some(p) => brute_force_avoiders(&pattern(p), n, false).expect("within oracle cap"),
        None => CoefficientSeries::new(
            1,
            (1..=n).map(|k| Integer::from(crate::combinatorics::ascent_sequences(k).len())).collect(),
        ),
    };
    let failures = match first_mismatch(&dp, &oracle) {
        Some((i, x, y)) => vec![format!("n={i}: dp {x} oracle {y}")],
        None if dp.len() != oracle.len() => vec![format!("lengths differ: {} vs {}", dp.len(), oracle.len())],
        None => Vec::new(),
    };
    Check::new(format!("oracle {name}"), failures, format!("{algorithm} vs brute force, n <= {n}"))
}

pub fn check_000_algorithms(n: usize) -> Check {
    let a = dp_series(Algorithm::Avoid000Exponential, n);
    let b = dp_series(Algorithm::Avoid000Polynomial, n);
    let failures = first_mismatch(&a, &b).map(|(i, x, y)| format!("n={i}: {x} vs {y}")).into_iter().collect();
    Check::new("000 exponential = polynomial", failures, format!("n <= {n}"))
}

pub fn check_closed_forms(n: usize) -> Check {
    type ClosedForm = fn(usize) -> Integer;
    let cases: [(&str, ClosedForm); 7] = [
        ("001", closed_forms::powers_of_two),
        ("010", closed_forms::powers_of_two),
        ("011", closed_forms::powers_of_two),
        ("012", closed_forms::powers_of_two),
        ("102", |k| closed_forms::three_pow_plus_one_halved(k - 1)),
        ("101", closed_forms::catalan),
        ("021", closed_forms::catalan),
    ];
    let mut failures = Vec::new();
    for (p, f) in cases {
        let s = brute_force_avoiders(&pattern(p), n, false).expect("within oracle cap");
        let bad = s.iter().find(|(k, v)| **v != f(*k)).map(|(k, v)| (k, v.clone()));
        if let Some((k, v)) = bad {
            failures.push(format!("{p} n={k}: {v} vs {}", f(k)));
        }
    }
    Check::new("closed forms", failures, format!("001 010 011 012 102 101 021, n <= {n}"))
}

pub fn check_weak_counts(n: usize) -> Check {
    let a = brute_force_avoiders(&pattern("120"), n, true).expect("within oracle cap");
    let b = brute_force_avoiders(&pattern("201"), n, true).expect("within oracle cap");
    let failures = first_mismatch(&a, &b).map(|(i, x, y)| format!("k={i}: {x} vs {y}")).into_iter().collect();
    Check::new("weak 120 = weak 201", failures, format!("k <= {n}"))
}

pub fn check_weak_map(n: usize) -> Check {
    let (p120, p201) = (pattern("120"), pattern("201"));
    let mut failures = Vec::new();
    let mut seen = 0usize;
    for k in 1..=n {
        for s in weak_ascent_sequences(k) {
            seen += 1;
            let m = weak_reverse_complement(&s).expect("non-empty");
            let back = weak_reverse_complement(&m).expect("non-empty");
            let ok = back == s
                && is_weak_ascent_sequence(&m)
                && crate::combinatorics::ascent_count(&m) == crate::combinatorics::ascent_count(&s)
                && contains_pattern(&s, &p120) == contains_pattern(&m, &p201);
            if !ok {
                failures.push(format!("{s:?} -> {m:?}"));
            }
        }
    }
    Check::new("weak reverse-complement", failures, format!("{seen} weak sequences, length <= {n}"))
}

pub fn check_lower_bounds(super_n: usize) -> Check {
    let mut failures = Vec::new();
    let c120 = dp_series(Algorithm::Avoid120, super_n);
    for total in 2..=super_n {
        for m in 1..total {
            let (a, b, c) = (c120.get(m).unwrap(), c120.get(total - m).unwrap(), c120.get(total).unwrap());
            if *c < Integer::from(a * b) {
                failures.push(format!("120: c_{total} < c_{m} c_{}", total - m));
            }
        }
    }
    let fact = |k: usize| Integer::from(Integer::factorial(k as u32));
    let c000 = dp_series(Algorithm::Avoid000Polynomial, 12);
    let c100 = dp_series(Algorithm::Avoid100, 12);
    let c110 = dp_series(Algorithm::Avoid110, 12);
    for k in 1..=6 {
        for (name, s) in [("000", &c000), ("100", &c100)] {
            if *s.get(2 * k).unwrap() < fact(k) {
                failures.push(format!("{name}: c_{} < {k}!", 2 * k));
            }
        }
        if k <= 4 && *c110.get(3 * k).unwrap() < fact(k) {
            failures.push(format!("110: c_{} < {k}!", 3 * k));
        }
    }
    Check::new("lower bounds", failures, format!("120 supermultiplicative to {super_n}; factorial bounds"))
}

pub fn check_cache_repetition(n_terms: usize, swap_n: u32, swap_a: i32) -> Vec<Check> {
    let mut memo = Memoized::new(Avoid000);
    memo.series(n_terms);
    let coarse = cache_repetition_report(memo.cache(), "(n,a,l,|S|)", |n, s| (n, s.a, s.l, s.extra.len()))
        .expect("populated cache");
    let fine = cache_repetition_report(memo.cache(), "(n,a,l,|S<=l|,S>l)", |n, s| {
        let low = s.extra.iter().filter(|&x| x <= s.l).count();
        let high: Vec<i32> = s.extra.iter().filter(|&x| x > s.l).collect();
        (n, s.a, s.l, low, high)
    })
    .expect("populated cache");
    let fine_failures = if fine.single_valued_fraction() == 1.0 {
        Vec::new()
    } else {
        vec![fine.summary()]
    };
    let swaps = check_000_swap_pairs(swap_n, swap_a);
    let swap_failures = swaps
        .mismatches
        .iter()
        .map(|(n, a, l, t, i)| format!("n={n} a={a} l={l} T={t:?} i={i}"))
        .collect();
    vec![
        Check::new("000 cache by (n,a,l,|S<=l|,S>l)", fine_failures, format!("{}; {}", fine.summary(), coarse.summary())),
        Check::new("000 swap pairs", swap_failures, format!("{} pairs, n <= {swap_n}, a <= {swap_a}", swaps.pairs)),
    ]
}

/// Every check at the given scale, in a fixed order.
pub fn run_all(scale: &VerifyScale) -> Vec<Check> {
    let mut out = vec![
        check_oracle("ascent", Algorithm::Ascent, None, scale.oracle.min(10)),
        check_oracle("000", Algorithm::Avoid000Polynomial, Some("000"), scale.oracle),
        check_oracle("000 (exponential)", Algorithm::Avoid000Exponential, Some("000"), scale.oracle),
        check_oracle("100", Algorithm::Avoid100, Some("100"), scale.oracle),
        check_oracle("110", Algorithm::Avoid110, Some("110"), scale.oracle),
        check_oracle("120", Algorithm::Avoid120, Some("120"), scale.oracle_120),
        check_000_algorithms(scale.exp_vs_poly),
        check_closed_forms(scale.closed_form),
        check_weak_counts(scale.weak_counts),
        check_weak_map(scale.weak_map),
        check_lower_bounds(scale.supermultiplicative),
    ];
    out.extend(check_cache_repetition(scale.repetition_terms, scale.swap_pairs_n, scale.swap_pairs_a));
    out
}

/// Compare a series against the enumerator for `algorithm`.
pub fn check_series(s: &CoefficientSeries, algorithm: Algorithm, opts: &EnumOptions) -> Result<Check, crate::dp::DpError> {
    let reference = enumerate(algorithm, s.end_index().saturating_sub(1), opts)?;
    let mut failures = Vec::new();
    if s.first_index != 1 {
        failures.push(format!("series starts at n={}, expected 1", s.first_index));
    } else if let Some((i, x, y)) = first_mismatch(s, &reference) {
        failures.push(format!("first mismatch at n={i}: file {x}, {algorithm} gives {y}"));
    }
    Ok(Check::new(format!("series vs {algorithm}"), failures, format!("{} terms", s.len())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_scale_passes() {
        for c in run_all(&VerifyScale::quick(7)) {
            assert!(c.passed, "{c}");
        }
    }

    #[test]
    fn corrupted_series_reports_first_bad_index() {
        let mut s = dp_series(Algorithm::Avoid120, 10);
        s.values[6] += 1;
        s.values[8] += 1;
        let c = check_series(&s, Algorithm::Avoid120, &EnumOptions::default()).unwrap();
        assert!(!c.passed);
        assert!(c.failures[0].starts_with("first mismatch at n=7:"), "{}", c.failures[0]);
    }

    #[test]
    fn mismatch_only_on_shared_indices() {
        let a = CoefficientSeries::from_u64s(1, &[1, 2, 3]);
        let b = CoefficientSeries::from_u64s(2, &[2, 4]);
        assert_eq!(first_mismatch(&a, &b), Some((3, Integer::from(3), Integer::from(4))));
    }
}
