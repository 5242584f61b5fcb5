//! Memoized dynamic-programming enumerators for pattern-avoiding ascent
//! sequences.
//!
//! Every enumerator counts suffixes from a compressed state: the number of
//! ascents so far `a`, the last letter `l`, and whatever the pattern needs
//! (a set of letters, the maximum so far, or a cardinality). Letters that can
//! no longer be used without creating the pattern are erased and the rest
//! renumbered, which is why `a` and `l` may reach -1.
//!
//! Two evaluation strategies share the same [`Recursion`] definitions:
//! [`Memoized`] evaluates top-down and keeps every value for inspection,
//! [`sweep`] runs forward one letter at a time and keeps two layers. The
//! polynomial recursions also have dense evaluators in [`dense`].

pub mod dense;
pub mod memo;
pub mod recursions;
pub mod repetition;
pub mod state;
pub mod sweep;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use memo::{MemoCache, Memoized};
pub use recursions::{Ascent, Avoid000, Avoid000Compact, Avoid100, Avoid110, Avoid120, Recursion};
pub use repetition::{
    cache_repetition_report, check_000_swap_pairs, repeated_large_values, RepetitionReport, SwapPairCheck,
};
pub use state::{chi, DpState, StateSet};
pub use sweep::{sweep, Sweep};

use crate::series::CoefficientSeries;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DpError {
    #[error("{algorithm}: {requested} terms exceeds the configured cap of {cap}")]
    CapExceeded { algorithm: Algorithm, requested: usize, cap: usize },
    #[error("{algorithm}: {requested} terms needs letter sets wider than {width} bits")]
    WidthExceeded { algorithm: Algorithm, requested: usize, width: u32 },
    #[error("memo cache is empty")]
    EmptyCache,
    #[error("unknown algorithm {0:?}")]
    UnknownAlgorithm(String),
}

/// The enumeration routes the crate offers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    Ascent,
    Avoid000Exponential,
    Avoid000Polynomial,
    Avoid100,
    Avoid110,
    Avoid120,
}

impl Algorithm {
    pub const ALL: [Algorithm; 6] = [
        Algorithm::Ascent,
        Algorithm::Avoid000Exponential,
        Algorithm::Avoid000Polynomial,
        Algorithm::Avoid100,
        Algorithm::Avoid110,
        Algorithm::Avoid120,
    ];

    fn uses_state_set(self) -> bool {
        matches!(self, Self::Avoid000Exponential | Self::Avoid110 | Self::Avoid120)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Ascent => "ascent",
            Self::Avoid000Exponential => "000-exponential",
            Self::Avoid000Polynomial => "000-polynomial",
            Self::Avoid100 => "100",
            Self::Avoid110 => "110",
            Self::Avoid120 => "120",
        })
    }
}

impl FromStr for Algorithm {
    type Err = DpError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL.into_iter().find(|a| a.to_string() == s).ok_or_else(|| DpError::UnknownAlgorithm(s.to_string()))
    }
}

/// Term-count caps for the exponential-state enumerators. These reflect
/// desk-scale feasibility, not correctness limits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub avoid_000_exponential: usize,
    pub avoid_110: usize,
    pub avoid_120: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Self { avoid_000_exponential: 30, avoid_110: 36, avoid_120: 60 }
    }
}

impl Caps {
    pub fn cap(&self, algorithm: Algorithm) -> Option<usize> {
        match algorithm {
            Algorithm::Avoid000Exponential => Some(self.avoid_000_exponential),
            Algorithm::Avoid110 => Some(self.avoid_110),
            Algorithm::Avoid120 => Some(self.avoid_120),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EnumOptions {
    pub caps: Caps,
    pub override_caps: bool,
}

impl EnumOptions {
    pub fn overriding() -> Self {
        Self { override_caps: true, ..Self::default() }
    }

    /// Ok(true) when the cap is exceeded but overridden.
    pub fn check(&self, algorithm: Algorithm, n_terms: usize) -> Result<bool, DpError> {
        if algorithm.uses_state_set() && n_terms + 1 >= StateSet::WIDTH as usize {
            return Err(DpError::WidthExceeded { algorithm, requested: n_terms, width: StateSet::WIDTH });
        }
        match self.caps.cap(algorithm) {
            Some(cap) if n_terms > cap && !self.override_caps => {
                Err(DpError::CapExceeded { algorithm, requested: n_terms, cap })
            }
            Some(cap) => Ok(n_terms > cap),
            None => Ok(false),
        }
    }
}

/// Number of ascent sequences of each length `1..=n_terms`.
pub fn enumerate_ascent(n_terms: usize) -> CoefficientSeries {
    dense::count_ascent(n_terms)
}

/// 000-avoiders through the set-valued recursion.
pub fn enumerate_000_exponential(n_terms: usize, opts: &EnumOptions) -> Result<CoefficientSeries, DpError> {
    opts.check(Algorithm::Avoid000Exponential, n_terms)?;
    Ok(sweep(&Avoid000, n_terms).series)
}

/// 000-avoiders through the cardinality-only recursion.
pub fn enumerate_000_polynomial(n_terms: usize) -> CoefficientSeries {
    dense::count_000_compact(n_terms)
}

pub fn enumerate_100(n_terms: usize) -> CoefficientSeries {
    dense::count_100(n_terms)
}

pub fn enumerate_110(n_terms: usize, opts: &EnumOptions) -> Result<CoefficientSeries, DpError> {
    opts.check(Algorithm::Avoid110, n_terms)?;
    Ok(sweep(&Avoid110, n_terms).series)
}

pub fn enumerate_120(n_terms: usize, opts: &EnumOptions) -> Result<CoefficientSeries, DpError> {
    opts.check(Algorithm::Avoid120, n_terms)?;
    Ok(sweep(&Avoid120, n_terms).series)
}

pub fn enumerate(algorithm: Algorithm, n_terms: usize, opts: &EnumOptions) -> Result<CoefficientSeries, DpError> {
    match algorithm {
        Algorithm::Ascent => Ok(enumerate_ascent(n_terms)),
        Algorithm::Avoid000Exponential => enumerate_000_exponential(n_terms, opts),
        Algorithm::Avoid000Polynomial => Ok(enumerate_000_polynomial(n_terms)),
        Algorithm::Avoid100 => Ok(enumerate_100(n_terms)),
        Algorithm::Avoid110 => enumerate_110(n_terms, opts),
        Algorithm::Avoid120 => enumerate_120(n_terms, opts),
    }
}
