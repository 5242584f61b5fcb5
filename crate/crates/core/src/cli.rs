//! Command-line front end: enumerate, analyze, extend and verify.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rug::{Float, Integer};
use thiserror::Error;

use crate::analysis::{self, bits_for_digits, format_fixed, Abscissa, AnalysisError, RealSeries, Trace};
use crate::combinatorics::{ascent_sequences, brute_force_avoiders_capped, CombinatoricsError, DEFAULT_ORACLE_CAP};
use crate::da::{self, DAConfig, DaError, EnsembleOptions, FitOutcome};
use crate::dp::{self, Algorithm, DpError, EnumOptions};
use crate::series::{ApproxTerm, BFile, CoefficientSeries, ParseError};
use crate::verify::{self, VerifyScale};

pub const MIN_PRECISION: u32 = 30;
/// Inhomogeneous degrees used by the default ensemble.
pub const DEFAULT_L_VALUES: [i64; 4] = [-1, 0, 2, 5];

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("cap: {0}; pass --override-caps to proceed")]
    Cap(String),
    #[error("enumerate: {0}")]
    Enumerate(String),
    #[error("parse: {path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error("io: {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("analysis: {0}")]
    Analysis(#[from] AnalysisError),
    #[error("approximant input: {0}")]
    ApproxInput(String),
    #[error("extend: {0}")]
    Extend(DaError),
    #[error("vanishing multiplier: {0}; partial output written")]
    Vanishing(DaError),
    #[error("verify: {0} check(s) failed")]
    Verify(usize),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Cap(_) => 3,
            CliError::Enumerate(_) => 4,
            CliError::Parse { .. } => 5,
            CliError::Io { .. } => 6,
            CliError::Analysis(_) => 7,
            CliError::ApproxInput(_) => 8,
            CliError::Extend(_) => 9,
            CliError::Vanishing(_) => 10,
            CliError::Verify(_) => 1,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "ascentlab", version, about = "Enumerate and analyse pattern-avoiding ascent sequences")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Count avoiders and write a b-file.
    Enumerate(EnumerateArgs),
    /// Estimator traces (CSV) plus an intercept summary.
    Analyze(AnalyzeArgs),
    /// Predict further coefficients with an ensemble of differential approximants.
    Extend(ExtendArgs),
    /// Cross-check enumerators, oracles and structural facts.
    Verify(VerifyArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum PatternArg {
    None,
    #[value(name = "000")]
    P000,
    #[value(name = "100")]
    P100,
    #[value(name = "110")]
    P110,
    #[value(name = "120")]
    P120,
}

impl PatternArg {
    fn letters(self) -> Option<&'static str> {
        match self {
            PatternArg::None => None,
            PatternArg::P000 => Some("000"),
            PatternArg::P100 => Some("100"),
            PatternArg::P110 => Some("110"),
            PatternArg::P120 => Some("120"),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum AlgoArg {
    Brute,
    Dp,
    DpExp,
    DpPoly,
}

/// The enumerator for a pattern/algorithm pair; `None` means brute force.
pub fn resolve_algorithm(pattern: PatternArg, algo: AlgoArg) -> Result<Option<Algorithm>, CliError> {
    use AlgoArg::{Brute, Dp, DpExp, DpPoly};
    let a = match (pattern, algo) {
        (_, Brute) => return Ok(None),
        (PatternArg::None, Dp | DpPoly) => Algorithm::Ascent,
        (PatternArg::P000, Dp | DpPoly) => Algorithm::Avoid000Polynomial,
        (PatternArg::P000, DpExp) => Algorithm::Avoid000Exponential,
        (PatternArg::P100, Dp | DpPoly) => Algorithm::Avoid100,
        (PatternArg::P110, Dp | DpExp) => Algorithm::Avoid110,
        (PatternArg::P120, Dp | DpExp) => Algorithm::Avoid120,
        (p, a) => {
            let name = a.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
            let pat = p.letters().unwrap_or("none");
            return Err(CliError::Usage(format!("--algo {name} is not available for --pattern {pat}")));
        }
    };
    Ok(Some(a))
}

#[derive(Args, Debug)]
pub struct EnumerateArgs {
    #[arg(long, value_enum)]
    pub pattern: PatternArg,
    #[arg(long, value_enum, default_value = "dp")]
    pub algo: AlgoArg,
    #[arg(long)]
    pub terms: usize,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long)]
    pub override_caps: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Model {
    Power,
    Stretched,
    Factorial,
    #[value(name = "factorial-egf")]
    FactorialEgf,
}

#[derive(Args, Debug)]
pub struct AnalyzeArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "power")]
    pub model: Model,
    #[arg(long)]
    pub sigma: Option<f64>,
    #[arg(long)]
    pub mu: Option<f64>,
    #[arg(long)]
    pub g: Option<f64>,
    #[arg(long, default_value_t = analysis::DEFAULT_DIGITS)]
    pub precision: u32,
    /// CSV path; the summary goes next to it with a `.summary.txt` suffix.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ExtendArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Number of coefficients to predict.
    #[arg(long)]
    pub predict: usize,
    /// Order of the default ensemble.
    #[arg(long, default_value_t = 4)]
    pub order: usize,
    /// Explicit approximants `N0,N1,..[/L]`, separated by `;` or repeated.
    #[arg(long, value_delimiter = ';')]
    pub degrees: Vec<String>,
    #[arg(long, default_value_t = analysis::DEFAULT_DIGITS)]
    pub precision: u32,
    /// Extended b-file; diagnostics go next to it with a `.diagnostics.txt` suffix.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Cap every length used by the checks.
    #[arg(long)]
    pub max_n: Option<usize>,
    /// Check a series file against the enumerator instead.
    #[arg(long, requires = "pattern")]
    pub input: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub pattern: Option<PatternArg>,
    #[arg(long, value_enum, default_value = "dp")]
    pub algo: AlgoArg,
    #[arg(long)]
    pub override_caps: bool,
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn sidecar(path: &Path, suffix: &str) -> PathBuf {
    let mut s = path.as_os_str().to_os_string();
    s.push(suffix);
    PathBuf::from(s)
}

fn read_bfile(path: &Path) -> Result<BFile, CliError> {
    read(path)?.parse().map_err(|source| CliError::Parse { path: path.display().to_string(), source })
}

fn check_precision(p: u32) -> Result<(), CliError> {
    if p < MIN_PRECISION {
        return Err(CliError::Usage(format!("--precision must be at least {MIN_PRECISION}")));
    }
    Ok(())
}

/// Everything printed to stdout is returned; files are written directly.
pub fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Enumerate(a) => cmd_enumerate(&a),
        Command::Analyze(a) => cmd_analyze(&a),
        Command::Extend(a) => cmd_extend(&a),
        Command::Verify(a) => cmd_verify(&a),
    }
}

fn emit(output: Option<&Path>, text: String) -> Result<String, CliError> {
    match output {
        Some(p) => write(p, &text).map(|_| String::new()),
        None => Ok(text),
    }
}

pub fn enumerate_series(pattern: PatternArg, algo: AlgoArg, terms: usize, override_caps: bool) -> Result<CoefficientSeries, CliError> {
    if terms == 0 {
        return Err(CliError::Usage("--terms must be at least 1".into()));
    }
    match resolve_algorithm(pattern, algo)? {
        Some(alg) => {
            let opts = EnumOptions { override_caps, ..EnumOptions::default() };
            match opts.check(alg, terms) {
                Ok(true) => eprintln!("warning: {terms} terms exceeds the {alg} cap; proceeding"),
                Ok(false) => {}
                Err(e @ DpError::CapExceeded { .. }) => return Err(CliError::Cap(e.to_string())),
                Err(e) => return Err(CliError::Enumerate(e.to_string())),
            }
            dp::enumerate(alg, terms, &opts).map_err(|e| CliError::Enumerate(e.to_string()))
        }
        None => {
            let cap = if override_caps { usize::MAX } else { DEFAULT_ORACLE_CAP };
            let cap_err = |requested, cap| {
                CliError::Cap(format!("brute force: requested {requested} terms, cap {cap}"))
            };
            match pattern.letters() {
                Some(p) => {
                    let pat = p.parse().expect("built-in pattern");
                    brute_force_avoiders_capped(&pat, terms, false, cap).map_err(|e| match e {
                        CombinatoricsError::CapExceeded { requested, cap } => cap_err(requested, cap),
                        e => CliError::Enumerate(e.to_string()),
                    })
                }
                None => {
                    if terms > cap {
                        return Err(cap_err(terms, cap));
                    }
                    Ok(CoefficientSeries::new(1, (1..=terms).map(|k| Integer::from(ascent_sequences(k).len())).collect()))
                }
            }
        }
    }
}

fn cmd_enumerate(a: &EnumerateArgs) -> Result<String, CliError> {
    let s = enumerate_series(a.pattern, a.algo, a.terms, a.override_caps)?;
    emit(a.output.as_deref(), s.to_bfile())
}

/// Exact terms and predicted `~` terms as one real series.
pub fn bfile_to_real(b: &BFile, digits: u32) -> Result<RealSeries, CliError> {
    if b.approx.is_empty() {
        return Ok(RealSeries::from_coefficients(&b.exact, digits));
    }
    let prec = bits_for_digits(digits);
    let mut values: Vec<Float> = b.exact.values.iter().map(|v| Float::with_val(prec, v)).collect();
    for t in &b.approx {
        let v = Float::parse(&t.value)
            .map_err(|e| CliError::Usage(format!("predicted term {}: {e}", t.index)))?;
        values.push(Float::with_val(prec, v));
    }
    Ok(RealSeries::new(b.exact.first_index, digits, values))
}

struct Column {
    name: String,
    points: Vec<(usize, Float)>,
    /// Abscissas to extrapolate against in the summary.
    abscissas: Vec<Abscissa>,
}

impl Column {
    fn from_trace(name: &str, t: &Trace, abscissas: &[Abscissa]) -> Self {
        Self { name: name.into(), points: t.points.clone(), abscissas: abscissas.to_vec() }
    }

    fn from_series(name: &str, s: &RealSeries, abscissas: &[Abscissa]) -> Self {
        Self { name: name.into(), points: s.iter().map(|(n, v)| (n, v.clone())).collect(), abscissas: abscissas.to_vec() }
    }

    fn trace(&self) -> Trace {
        let mut t = Trace::new(&self.name);
        t.points = self.points.clone();
        t
    }
}

const BY_N: [Abscissa; 1] = [Abscissa::INVERSE_N];
const BY_N_AND_N2: [Abscissa; 2] = [Abscissa::INVERSE_N, Abscissa::INVERSE_N_SQUARED];

fn analysis_columns(
    c: &RealSeries,
    model: Model,
    sigma: Option<&Float>,
    mu: Option<&Float>,
    g: Option<&Float>,
) -> Result<Vec<Column>, CliError> {
    let mut cols = Vec::new();
    let r = analysis::ratios(c)?;
    cols.push(Column::from_series("r_n", &r, &BY_N));
    match model {
        Model::Power => {
            let l = analysis::linear_intercepts(&r)?;
            let l2 = analysis::quadratic_intercepts(&l)?;
            let l3 = analysis::cubic_intercepts(&l2)?;
            cols.push(Column::from_series("l_n", &l, &BY_N));
            cols.push(Column::from_series("l2_n", &l2, &BY_N_AND_N2));
            cols.push(Column::from_series("l3_n", &l3, &BY_N_AND_N2));
        }
        Model::Stretched => {
            let sr = analysis::sigma_estimator_ratio(&r)?;
            let sq = analysis::sigma_estimator_root(c)?;
            cols.push(Column::from_trace("sigma_ratio_log", &sr.log_values, &[]));
            cols.push(Column::from_trace("sigma_ratio_grad", &sr.gradients, &BY_N));
            cols.push(Column::from_trace("sigma_root_log", &sq.log_values, &[]));
            cols.push(Column::from_trace("sigma_root_grad", &sq.gradients, &BY_N));
            if let Some(mu) = mu {
                let t = analysis::sigma_local_gradient_known_mu(&r, mu)?;
                cols.push(Column::from_trace("sigma_mu_grad", &t, &BY_N));
            }
            if let (Some(mu), Some(sigma)) = (mu, sigma) {
                let m1 = analysis::mu1_estimator(&r, mu, sigma)?;
                cols.push(Column::from_trace("mu1_n", &m1, &BY_N));
                let ge = analysis::g_estimator(c, mu, sigma)?;
                cols.push(Column::from_trace("e_n", &ge.log_values, &[]));
                cols.push(Column::from_trace("minus_g_n", &ge.gradients, &BY_N));
                if let Some(g) = g {
                    let lm = analysis::mu1_refined(c, mu, sigma, g)?;
                    cols.push(Column::from_trace("log_mu1_n", &lm, &BY_N));
                }
            }
            if let Some(sigma) = sigma {
                let sweep = analysis::fit_ratio4_sweep(&r, sigma)?;
                for i in 0..4 {
                    let mut t = Trace::new("fit");
                    for w in &sweep {
                        t.push(w.k, w.coefficients[i].clone());
                    }
                    cols.push(Column::from_trace(&format!("fit_c{}", i + 1), &t, &BY_N));
                }
            }
        }
        Model::Factorial | Model::FactorialEgf => {
            let ft = analysis::factorial_ratio_transforms(c)?;
            cols.push(Column::from_series("s_n", &ft.s, &[]));
            cols.push(Column::from_series("t_n", &ft.t, &[]));
            cols.push(Column::from_trace("alpha_n", &analysis::alpha_trace(&ft.t), &BY_N));
            let sweep = analysis::fit_stirling_log_sweep(c)?;
            for i in 0..4 {
                let mut t = Trace::new("stirling");
                for w in &sweep {
                    t.push(w.k, w.coefficients[i].clone());
                }
                cols.push(Column::from_trace(&format!("stirling_e{}", i + 1), &t, &BY_N));
            }
            let e = analysis::egf_ratios(c)?;
            let l = analysis::linear_intercepts(&e)?;
            let l2 = analysis::quadratic_intercepts(&l)?;
            let l3 = analysis::cubic_intercepts(&l2)?;
            cols.push(Column::from_series("egf_r_n", &e, &BY_N));
            cols.push(Column::from_series("egf_l_n", &l, &BY_N));
            cols.push(Column::from_series("egf_l2_n", &l2, &BY_N_AND_N2));
            cols.push(Column::from_series("egf_l3_n", &l3, &BY_N_AND_N2));
        }
    }
    Ok(cols)
}

fn assumption(name: &str, v: Option<f64>) -> String {
    match v {
        Some(x) => format!("{name}={x}"),
        None => format!("{name}=unset"),
    }
}

fn cmd_analyze(a: &AnalyzeArgs) -> Result<String, CliError> {
    check_precision(a.precision)?;
    let b = read_bfile(&a.input)?;
    let digits = a.precision;
    let prec = bits_for_digits(digits);
    let c = bfile_to_real(&b, digits)?;
    let to_f = |v: Option<f64>| v.map(|x| Float::with_val(prec, x));
    let (sigma, mu, g) = (to_f(a.sigma), to_f(a.mu), to_f(a.g));
    let cols = analysis_columns(&c, a.model, sigma.as_ref(), mu.as_ref(), g.as_ref())?;

    let model = a.model.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
    let header = format!(
        "# input={} model={model} {} {} {} precision={digits} exact_terms={} predicted_terms={}",
        a.input.display(),
        assumption("sigma", a.sigma),
        assumption("mu", a.mu),
        assumption("g", a.g),
        b.exact.len(),
        b.approx.len()
    );
    let mut csv = String::new();
    writeln!(csv, "{header}").unwrap();
    let names: Vec<&str> = std::iter::once("n").chain(cols.iter().map(|c| c.name.as_str())).collect();
    writeln!(csv, "{}", names.join(",")).unwrap();
    let indices: BTreeSet<usize> = cols.iter().flat_map(|c| c.points.iter().map(|p| p.0)).collect();
    let lookups: Vec<std::collections::HashMap<usize, &Float>> =
        cols.iter().map(|c| c.points.iter().map(|(n, v)| (*n, v)).collect()).collect();
    for n in indices {
        let mut row = n.to_string();
        for l in &lookups {
            row.push(',');
            if let Some(v) = l.get(&n) {
                row.push_str(&format_fixed(v, digits));
            }
        }
        writeln!(csv, "{row}").unwrap();
    }

    let mut summary = String::new();
    writeln!(summary, "{header}").unwrap();
    writeln!(summary, "# intercepts: last value, then Neville extrapolants of degree 1..3 over the final points").unwrap();
    for col in &cols {
        let t = col.trace();
        for ab in &col.abscissas {
            writeln!(summary, "{}", t.intercepts(*ab, 3).render(12)).unwrap();
        }
    }
    match &a.output {
        Some(p) => {
            write(p, &csv)?;
            write(&sidecar(p, ".summary.txt"), &summary)?;
            Ok(String::new())
        }
        None => {
            eprint!("{summary}");
            Ok(csv)
        }
    }
}

fn fmt_outcome(o: &FitOutcome) -> String {
    match (&o.approximant, &o.error) {
        (Some(da), None) => format!("{} ok anchor={:?} deficiency={}", o.config, da.anchor, da.deficiency),
        (_, Some(e)) => format!("{} failed: {e}", o.config),
        (None, None) => format!("{} no result", o.config),
    }
}

fn cmd_extend(a: &ExtendArgs) -> Result<String, CliError> {
    check_precision(a.precision)?;
    if a.predict == 0 {
        return Err(CliError::Usage("--predict must be at least 1".into()));
    }
    let b = read_bfile(&a.input)?;
    if let Some(t) = b.approx.first() {
        return Err(CliError::ApproxInput(format!(
            "{} contains predicted (~) terms from index {}; fit on exact terms only",
            a.input.display(),
            t.index
        )));
    }
    let (series, note) = match b.exact.first_index {
        0 => (b.exact.clone(), "series given from c_0"),
        1 => (b.exact.with_constant_term(Integer::from(1)), "c_0 = 1 prepended"),
        k => return Err(CliError::ApproxInput(format!("series starts at index {k}; expected 0 or 1"))),
    };
    let cfgs: Vec<DAConfig> = if a.degrees.is_empty() {
        da::default_ensemble(series.len(), a.order, &DEFAULT_L_VALUES)
    } else {
        a.degrees.iter().map(|d| d.parse()).collect::<Result<_, DaError>>().map_err(|e| CliError::Usage(e.to_string()))?
    };
    if cfgs.is_empty() {
        return Err(CliError::Usage(format!("no approximant of order {} fits {} terms", a.order, series.len())));
    }
    let opts = EnsembleOptions { digits: a.precision, min_success: cfgs.len().min(3), ..EnsembleOptions::default() };
    let start = series.len();
    let outcomes = da::fit_ensemble(&series, &cfgs, a.predict, a.precision);

    let mut diag = String::new();
    writeln!(
        diag,
        "# input={} exact_terms={} ({note}) predict={} precision={} outlier_rule=|x-median|>{}*MAD",
        a.input.display(),
        b.exact.len(),
        a.predict,
        a.precision,
        opts.mad_multiple
    )
    .unwrap();
    writeln!(diag, "# approximants: {}", cfgs.len()).unwrap();
    for o in &outcomes {
        writeln!(diag, "{}", fmt_outcome(o)).unwrap();
    }

    let (terms, failure) = match da::combine(outcomes.clone(), start, a.predict, &opts) {
        Ok(r) => (r.terms, None),
        Err(e) => {
            // Members that stopped early still give a partial continuation.
            let partial: Vec<(&DAConfig, &RealSeries)> = outcomes
                .iter()
                .filter_map(|o| match &o.error {
                    Some(DaError::VanishingMultiplier { partial, .. }) if !partial.is_empty() => Some((&o.config, partial)),
                    _ => None,
                })
                .collect();
            let vanishing = outcomes.iter().find_map(|o| match &o.error {
                Some(v @ DaError::VanishingMultiplier { .. }) => Some(v.clone()),
                _ => None,
            });
            match vanishing {
                Some(v) => (da::aggregate(&partial, start, a.predict, &opts), Some(CliError::Vanishing(v))),
                None => return Err(CliError::Extend(e)),
            }
        }
    };
    writeln!(diag, "# index mean std_dev agreed_digits retained excluded").unwrap();
    let mut out = BFile::exact_only(b.exact.clone());
    for t in &terms {
        let excluded: Vec<String> = t.excluded.iter().map(DAConfig::to_string).collect();
        writeln!(
            diag,
            "{} {} {} {} {} [{}]",
            t.index,
            format_fixed(&t.mean, a.precision),
            format_fixed(&t.std_dev, 6),
            t.agreed_digits,
            t.retained.len(),
            excluded.join(" ")
        )
        .unwrap();
        out.approx.push(ApproxTerm {
            index: t.index,
            value: format_fixed(&t.mean, a.precision),
            agreed_digits: t.agreed_digits,
        });
    }
    let text = out.render();
    let stdout = match &a.output {
        Some(p) => {
            write(p, &text)?;
            write(&sidecar(p, ".diagnostics.txt"), &diag)?;
            String::new()
        }
        None => {
            eprint!("{diag}");
            text
        }
    };
    match failure {
        Some(e) => {
            if a.output.is_none() {
                print!("{stdout}");
            }
            Err(e)
        }
        None => Ok(stdout),
    }
}

fn cmd_verify(a: &VerifyArgs) -> Result<String, CliError> {
    let mut out = String::new();
    let checks = match (&a.input, a.pattern) {
        (Some(path), Some(pattern)) => {
            let b = read_bfile(path)?;
            if !b.approx.is_empty() {
                writeln!(out, "note: {} predicted (~) terms ignored", b.approx.len()).unwrap();
            }
            let alg = resolve_algorithm(pattern, a.algo)?
                .ok_or_else(|| CliError::Usage("verify --input needs a dp algorithm".into()))?;
            let opts = EnumOptions { override_caps: a.override_caps, ..EnumOptions::default() };
            let check = verify::check_series(&b.exact, alg, &opts).map_err(|e| match e {
                e @ DpError::CapExceeded { .. } => CliError::Cap(e.to_string()),
                e => CliError::Enumerate(e.to_string()),
            })?;
            vec![check]
        }
        _ => {
            let scale = a.max_n.map_or_else(VerifyScale::default, VerifyScale::quick);
            verify::run_all(&scale)
        }
    };
    for c in &checks {
        writeln!(out, "{c}").unwrap();
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    writeln!(out, "{} passed, {failed} failed", checks.len() - failed).unwrap();
    if failed > 0 {
        print!("{out}");
        return Err(CliError::Verify(failed));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn algorithm_resolution() {
        assert_eq!(resolve_algorithm(PatternArg::P000, AlgoArg::DpPoly).unwrap(), Some(Algorithm::Avoid000Polynomial));
        assert_eq!(resolve_algorithm(PatternArg::P120, AlgoArg::Brute).unwrap(), None);
        assert!(matches!(resolve_algorithm(PatternArg::P110, AlgoArg::DpPoly), Err(CliError::Usage(_))));
        assert!(matches!(resolve_algorithm(PatternArg::P100, AlgoArg::DpExp), Err(CliError::Usage(_))));
    }

    #[test]
    fn error_prefixes_and_codes_are_distinct() {
        let errs = [
            CliError::Usage(String::new()),
            CliError::Cap(String::new()),
            CliError::Enumerate(String::new()),
            CliError::Parse { path: String::new(), source: ParseError::Empty },
            CliError::Io { path: String::new(), source: std::io::Error::other("x") },
            CliError::Analysis(AnalysisError::NoOverlap),
            CliError::ApproxInput(String::new()),
            CliError::Extend(DaError::AllFitsFailed(0)),
            CliError::Vanishing(DaError::AllFitsFailed(0)),
            CliError::Verify(1),
        ];
        let prefixes: BTreeSet<String> = errs.iter().map(|e| e.to_string().split(':').next().unwrap().to_string()).collect();
        let codes: BTreeSet<i32> = errs.iter().map(CliError::exit_code).collect();
        assert_eq!(prefixes.len(), errs.len());
        assert_eq!(codes.len(), errs.len());
        assert!(!codes.contains(&0));
    }

    #[test]
    fn brute_none_counts_ascent_sequences() {
        let s = enumerate_series(PatternArg::None, AlgoArg::Brute, 5, false).unwrap();
        assert_eq!(s, CoefficientSeries::from_u64s(1, &[1, 2, 5, 15, 53]));
        assert!(matches!(enumerate_series(PatternArg::None, AlgoArg::Brute, 40, false), Err(CliError::Cap(_))));
    }

    #[test]
    fn approx_lines_become_reals() {
        let b: BFile = "1 1\n2 2\n3 ~4.5 3\n".parse().unwrap();
        let r = bfile_to_real(&b, 40).unwrap();
        assert_eq!(r.to_f64(), vec![1.0, 2.0, 4.5]);
    }
}
