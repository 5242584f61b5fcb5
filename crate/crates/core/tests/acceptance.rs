//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero when a part fails that is not listed as a known red result.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use ascentlab::analysis::{
    alpha_trace, bits_for_digits, cubic_intercepts, egf_ratios, factorial_ratio_transforms, fit_ratio4_sweep,
    fit_stirling_log_sweep, format_fixed, g_estimator, hadamard_quotient, linear_intercepts, mu1_refined,
    quadratic_intercepts, ratios, synth_factorial, synth_stretched, Abscissa, FactorialFitParams, RealSeries,
    ReferenceConstant, StretchedFitParams,
};
use ascentlab::combinatorics::closed_forms::catalan;
use ascentlab::da::{default_ensemble, fit_da, predict_ensemble, recurrence_extend, Cx, DAConfig, EnsembleOptions};
use ascentlab::dp::{
    cache_repetition_report, check_000_swap_pairs, enumerate, enumerate_000_polynomial, enumerate_100,
    enumerate_ascent, Algorithm, Ascent, Avoid000, Avoid120, DpState, EnumOptions, Memoized, StateSet,
};
use ascentlab::series::CoefficientSeries;
use ascentlab::verify::{
    check_000_algorithms, check_closed_forms, check_lower_bounds, check_oracle, check_weak_counts, check_weak_map,
    Check,
};
use rug::{Float, Integer};

struct Part {
    name: String,
    pass: bool,
    /// A faithful implementation of a claim that does not hold.
    known_red: bool,
    detail: String,
}

fn part(name: &str, pass: bool, detail: impl Into<String>) -> Part {
    Part { name: name.into(), pass, known_red: false, detail: detail.into() }
}

fn from_check(c: &Check) -> Part {
    let mut detail = c.detail.clone();
    if let Some(f) = c.failures.first() {
        write!(detail, "; {f}").unwrap();
    }
    part(&c.name, c.passed, detail)
}

#[derive(Default)]
struct Outcome {
    parts: Vec<Part>,
    /// Serialized results, compared across runs for determinism.
    artifact: String,
}

impl Outcome {
    fn push(&mut self, p: Part) {
        self.parts.push(p);
    }

    fn record(&mut self, label: &str, value: impl std::fmt::Display) {
        writeln!(self.artifact, "{label}: {value}").unwrap();
    }
}

fn secs(d: Duration) -> String {
    format!("{:.1}s", d.as_secs_f64())
}

fn f(x: &Float) -> String {
    format_fixed(x, 30)
}

fn series_of(s: &CoefficientSeries) -> Vec<Integer> {
    s.values.clone()
}

fn c1_oracle() -> Outcome {
    let mut o = Outcome::default();
    let t = Instant::now();
    let checks = [
        check_oracle("000", Algorithm::Avoid000Polynomial, Some("000"), 12),
        check_oracle("000 (exponential)", Algorithm::Avoid000Exponential, Some("000"), 12),
        check_oracle("100", Algorithm::Avoid100, Some("100"), 12),
        check_oracle("110", Algorithm::Avoid110, Some("110"), 12),
        check_oracle("120", Algorithm::Avoid120, Some("120"), 14),
    ];
    let elapsed = t.elapsed();
    for c in &checks {
        o.push(from_check(c));
        o.record(&c.name, c.passed);
    }
    o.push(part("runtime", elapsed <= Duration::from_secs(600), format!("{} <= 600s", secs(elapsed))));
    o
}

fn c2_golden() -> Outcome {
    let mut o = Outcome::default();
    let ascent = enumerate_ascent(6).with_constant_term(Integer::from(1));
    let want: Vec<Integer> = [1, 1, 2, 5, 15, 53, 217].map(Integer::from).to_vec();
    o.push(part("ascent 1,1,2,5,15,53,217", ascent.values == want, format!("{:?}", ascent.values)));

    let f40 = Memoized::new(Ascent).eval(4, DpState::new(0, 0, ()));
    o.push(part("f(4,0,0) = 53", f40 == 53, f40.to_string()));

    let c000 = enumerate_000_polynomial(7);
    let want: Vec<Integer> = [1, 2, 4, 10, 27, 83, 277].map(Integer::from).to_vec();
    o.push(part("c000 1,2,4,10,27,83,277", c000.values == want, format!("{:?}", c000.values)));

    let mut m = Memoized::new(Avoid120);
    m.series(12);
    let set = |xs: &[i32]| xs.iter().fold(StateSet::empty(), |s, &i| s.insert(i));
    let want: Vec<Integer> = [1, 6, 32, 160, 778, 3747].map(Integer::from).to_vec();
    for xs in [[0, 1, 2, 4], [0, 1, 3, 4], [0, 2, 3, 4]] {
        let vals: Vec<Integer> = (0..6).map(|n| m.eval(n, DpState::new(4, 0, set(&xs)))).collect();
        o.push(part(&format!("f120 trace {xs:?}"), vals == want, format!("{vals:?}")));
        o.record("f120 trace", format!("{vals:?}"));
    }
    o.record("ascent", format!("{:?}", series_of(&ascent)));
    o.record("c000", format!("{:?}", series_of(&c000)));
    o
}

fn c3_closed_forms() -> Outcome {
    let mut o = Outcome::default();
    let c = check_closed_forms(12);
    o.push(from_check(&c));
    o.record("closed forms", c.passed);
    o
}

fn c4_scale() -> Outcome {
    let mut o = Outcome::default();
    let c = check_000_algorithms(28);
    o.push(from_check(&c));

    let t = Instant::now();
    let poly = enumerate_000_polynomial(200);
    let dt = t.elapsed();
    o.push(part(
        "dp-poly 000 to n=200",
        poly.len() == 200 && dt <= Duration::from_secs(300),
        format!("{} <= 300s", secs(dt)),
    ));

    let t = Instant::now();
    let c100 = enumerate_100(300);
    let dt = t.elapsed();
    o.push(part(
        "dp 100 to n=300",
        c100.len() == 300 && dt <= Duration::from_secs(600),
        format!("{} <= 600s", secs(dt)),
    ));
    o.record("000 poly 200", poly.to_bfile());
    o.record("100 300", c100.to_bfile());
    o
}

fn c5_cache_repetition() -> Outcome {
    let mut o = Outcome::default();
    let mut memo = Memoized::new(Avoid000);
    memo.series(18);
    let coarse =
        cache_repetition_report(memo.cache(), "(n,a,l,|S|)", |n, s| (n, s.a, s.l, s.extra.len())).expect("cache");
    let frac = coarse.single_valued_fraction();
    o.push(Part {
        name: "(n,a,l,|S|) single-valued at 18 terms".into(),
        pass: frac == 1.0,
        // f(3,1,0,{0}) = 37 but f(3,1,0,{1}) = 35.
        known_red: true,
        detail: coarse.summary(),
    });
    let swaps = check_000_swap_pairs(14, 5);
    o.push(part(
        "swap pairs (i < l), n <= 14",
        swaps.mismatches.is_empty() && swaps.pairs > 0,
        format!("{} pairs, {} mismatches", swaps.pairs, swaps.mismatches.len()),
    ));
    o.record("coarse", coarse.summary());
    o.record("swap pairs", swaps.pairs);
    o
}

fn c6_weak() -> Outcome {
    let mut o = Outcome::default();
    for c in [check_weak_counts(10), check_weak_map(8)] {
        o.push(from_check(&c));
        o.record(&c.name, &c.detail);
    }
    o
}

fn c7_bounds() -> Outcome {
    let mut o = Outcome::default();
    let c = check_lower_bounds(14);
    o.push(from_check(&c));
    o.record("bounds", c.passed);
    o
}

fn c8_synthetic() -> Outcome {
    let mut o = Outcome::default();
    let digits = 60;
    let prec = bits_for_digits(digits);
    let p = StretchedFitParams { mu: 7.2958969, sigma: 0.375, log_mu1: -9.675, g: 2.0, c: 3700.0 };
    let s = synth_stretched(&p, 300, digits).unwrap();
    let sigma = Float::with_val(prec, 0.375);
    let mu = Float::with_val(prec, p.mu);

    let sweep = fit_ratio4_sweep(&ratios(&s).unwrap(), &sigma).unwrap();
    let w = sweep.last().unwrap();
    let c1 = w.coefficients[0].to_f64();
    o.push(part("fit_ratio4 mu within 0.1%", (c1 / p.mu - 1.0).abs() < 1e-3, format!("c1={c1:.7} (k={})", w.k)));
    o.record("c1", f(&w.coefficients[0]));

    let g = g_estimator(&s, &mu, &sigma).unwrap();
    let g_last = -g.gradients.last_f64().unwrap();
    o.push(part("g_estimator g = 2 +- 0.1", (g_last - 2.0).abs() <= 0.1, format!("g={g_last:.5}")));
    o.record("g", f(&g.gradients.last().unwrap().1));

    let m1 = mu1_refined(&s, &mu, &sigma, &Float::with_val(prec, p.g)).unwrap();
    let lm = m1.last_f64().unwrap();
    o.push(part("mu1_refined log mu1 within 1%", (lm / p.log_mu1 - 1.0).abs() < 0.01, format!("log mu1={lm:.6}")));
    o.record("log mu1", f(&m1.last().unwrap().1));

    let fp = FactorialFitParams { alpha: 0.75, mu: 1.5, g: 0.0, c: 1.0 };
    let fs = synth_factorial(&fp, 300, digits).unwrap();
    let alpha = alpha_trace(&factorial_ratio_transforms(&fs).unwrap().t);
    let a = alpha.last_f64().unwrap();
    o.push(part("t_n gradient alpha = 0.75 +- 0.01", (a - 0.75).abs() <= 0.01, format!("alpha={a:.6}")));
    let st = fit_stirling_log_sweep(&fs).unwrap();
    let e1 = st.last().unwrap().coefficients[0].to_f64();
    o.push(part("fit_stirling_log e1 = 0.75 +- 0.01", (e1 - 0.75).abs() <= 0.01, format!("e1={e1:.6}")));
    o.record("alpha", f(&alpha.last().unwrap().1));
    o.record("e1", f(&st.last().unwrap().coefficients[0]));
    o
}

/// Degree-2 Neville extrapolant of the cubic intercepts against `1/n^2`.
fn l3_extrapolant(r: &RealSeries, label: &str) -> Float {
    let l3 = cubic_intercepts(&quadratic_intercepts(&linear_intercepts(r).unwrap()).unwrap()).unwrap();
    l3.to_trace(label).intercepts(Abscissa::INVERSE_N_SQUARED, 3).extrapolant(2).unwrap().clone()
}

fn c9_000_analysis() -> Outcome {
    let mut o = Outcome::default();
    let c000 = RealSeries::from(&enumerate_000_polynomial(200));
    let ascent = RealSeries::from(&enumerate_ascent(200));
    let mu = l3_extrapolant(&egf_ratios(&c000).unwrap(), "egf_l3");
    let m = mu.to_f64();
    o.push(part("e.g.f. mu in [0.2700, 0.2704]", (0.2700..=0.2704).contains(&m), format!("mu={m:.7}")));
    let lambda = l3_extrapolant(&ratios(&hadamard_quotient(&c000, &ascent).unwrap()).unwrap(), "hadamard_l3");
    let l = lambda.to_f64();
    o.push(part("Hadamard lambda in [0.435, 0.455]", (0.435..=0.455).contains(&l), format!("lambda={l:.7}")));
    o.record("mu", f(&mu));
    o.record("lambda", f(&lambda));
    o
}

fn rel_err(x: &Float, truth: &Integer) -> f64 {
    let t = Float::with_val(x.prec(), truth);
    (Float::with_val(x.prec(), x - &t).abs() / t).to_f64()
}

fn c10_da() -> Outcome {
    let mut o = Outcome::default();
    let cat = CoefficientSeries::new(0, (0..30).map(catalan).collect());
    let da = fit_da(&cat, &DAConfig::new(vec![9, 9], 9).unwrap()).unwrap();
    let quarter = Cx::real(Float::with_val(200, 0.25));
    match da.singularity_near(&quarter, 60) {
        Some(s) => {
            let dz = (&s.location - &quarter).norm().to_f64();
            o.push(part("Catalan z_c = 0.25 within 1e-8", dz < 1e-8, format!("|z - 1/4|={dz:.1e}")));
            let g = s.exponent.map(|e| e.re.to_f64()).unwrap_or(f64::NAN);
            o.push(part("Catalan exponent -0.5 within 1e-6", (g + 0.5).abs() < 1e-6, format!("gamma={g:.9}")));
            o.record("z_c", f(&s.location.re));
        }
        None => o.push(part("Catalan singularity", false, "no verified singularity")),
    }

    let cfgs = default_ensemble(cat.len(), 4, &[-1, 0, 2, 5]);
    match predict_ensemble(&cat, &cfgs, 10, &EnsembleOptions::default()) {
        Ok(r) => {
            let worst = r.terms.iter().map(|t| rel_err(&t.mean, &catalan(t.index))).fold(0.0, f64::max);
            o.push(part(
                "10 predicted Catalan terms to >= 10 digits",
                r.terms.len() == 10 && worst < 1e-10,
                format!("{} fits, worst relative error {worst:.1e}", r.successes().count()),
            ));
            for t in &r.terms {
                o.record(&format!("catalan {}", t.index), format!("{} {}", f(&t.mean), t.agreed_digits));
            }
        }
        Err(e) => o.push(part("10 predicted Catalan terms", false, e.to_string())),
    }

    let geo = CoefficientSeries::new(0, (0..12u32).map(|m| Integer::from(1) << m).collect());
    let da = fit_da(&geo, &DAConfig::new(vec![1, 1], -1).unwrap()).unwrap();
    let ext = recurrence_extend(&da, &geo, 20, 60).unwrap();
    let exact = ext.iter().all(|(m, v)| *v == Integer::from(1) << m as u32);
    let root = da.singularity_near(&Cx::real(Float::with_val(200, 0.5)), 60).map(|s| s.location.re);
    let root_exact = root.as_ref().is_some_and(|r| *r == 0.5);
    o.push(part("geometric series exact", exact && root_exact, format!("20 predictions exact: {exact}; z_c = 1/2: {root_exact}")));
    o.record("geometric", exact && root_exact);
    o
}

fn c11_120() -> Outcome {
    let mut o = Outcome::default();
    let cubic = ReferenceConstant::CubicRoot120.value(60);
    let shown = format_fixed(&cubic, 30);
    o.push(part("cubic root 7.2958969432397 (13 decimals)", shown.starts_with("7.2958969432397"), shown.clone()));

    let t = Instant::now();
    let s = enumerate(Algorithm::Avoid120, 50, &EnumOptions::overriding()).unwrap();
    let enum_time = t.elapsed();
    let c = s.with_constant_term(Integer::from(1));
    let cfgs = default_ensemble(c.len(), 4, &[-1, 0, 2, 5]);
    let t = Instant::now();
    match predict_ensemble(&c, &cfgs, 50, &EnsembleOptions::default()) {
        Ok(r) => {
            let prec = bits_for_digits(60);
            let mut vals: Vec<Float> = c.values.iter().map(|v| Float::with_val(prec, v)).collect();
            vals.extend(r.means());
            let rs = RealSeries::new(0, 60, vals).from_index(1);
            let sweep = fit_ratio4_sweep(&ratios(&rs).unwrap(), &Float::with_val(prec, 0.375)).unwrap();
            let top: Vec<(usize, f64)> = sweep.iter().rev().take(4).map(|w| (w.k, w.coefficients[0].to_f64())).collect();
            let ok = top.len() == 4 && top.iter().all(|(_, v)| (7.2..=7.4).contains(v));
            let shown: Vec<String> = top.iter().map(|(k, v)| format!("k={k}:{v:.4}")).collect();
            o.push(part(
                "fit_ratio4 c1 in [7.2, 7.4], 4 largest windows",
                ok,
                format!(
                    "{}; {} of {} fits; enumerate {}, extend {}",
                    shown.join(" "),
                    r.successes().count(),
                    cfgs.len(),
                    secs(enum_time),
                    secs(t.elapsed())
                ),
            ));
            for w in &sweep {
                o.record(&format!("c1 k={}", w.k), f(&w.coefficients[0]));
            }
        }
        Err(e) => o.push(part("120 extension", false, e.to_string())),
    }
    o.record("cubic", shown);
    o.record("c120", s.to_bfile());
    o
}

type Criterion = fn() -> Outcome;

const CRITERIA: [(&str, Criterion); 11] = [
    ("oracle equivalence", c1_oracle),
    ("golden values", c2_golden),
    ("closed forms", c3_closed_forms),
    ("000 polynomial vs exponential; scale", c4_scale),
    ("cache repetition", c5_cache_repetition),
    ("weak-sequence theorem", c6_weak),
    ("supermultiplicativity and lower bounds", c7_bounds),
    ("synthetic estimator recovery", c8_synthetic),
    ("000 analysis at 200 terms", c9_000_analysis),
    ("differential approximants", c10_da),
    ("120 growth constant", c11_120),
];

fn in_pool<T: Send>(threads: usize, job: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().expect("thread pool").install(job)
}

fn main() {
    let mut unexpected = 0;
    let mut red = 0;
    let mut first_run = Vec::new();
    for (i, (name, run)) in CRITERIA.iter().enumerate() {
        let t = Instant::now();
        let out = in_pool(1, run);
        let pass = out.parts.iter().all(|p| p.pass);
        let details: Vec<String> = out
            .parts
            .iter()
            .map(|p| format!("[{}{}] {}: {}", if p.pass { "ok" } else { "FAIL" }, if !p.pass && p.known_red { ", known red" } else { "" }, p.name, p.detail))
            .collect();
        println!("{} {:>2} {name} ({}) {}", if pass { "PASS" } else { "FAIL" }, i + 1, secs(t.elapsed()), details.join(" | "));
        unexpected += out.parts.iter().filter(|p| !p.pass && !p.known_red).count();
        red += out.parts.iter().filter(|p| !p.pass && p.known_red).count();
        first_run.push(out.artifact);
    }

    let t = Instant::now();
    let mut differing = Vec::new();
    for (i, (_, run)) in CRITERIA.iter().enumerate() {
        let again = in_pool(4, run);
        if again.artifact != first_run[i] {
            differing.push((i + 1).to_string());
        }
    }
    let same = differing.is_empty();
    println!(
        "{} 12 determinism ({}) artifacts of criteria 1-11 byte-identical between a 1-thread and a 4-thread run: {}",
        if same { "PASS" } else { "FAIL" },
        secs(t.elapsed()),
        if same { "all".to_string() } else { format!("differ for {}", differing.join(",")) }
    );
    if !same {
        unexpected += 1;
    }
    println!("{unexpected} unexpected failing parts, {red} known red");
    if unexpected > 0 {
        std::process::exit(1);
    }
}
