//! Ascent sequences, weak ascent sequences and pattern containment, plus an
//! exhaustive enumeration oracle used to check the dynamic-programming
//! enumerators.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use rug::Integer;
use thiserror::Error;

use crate::series::CoefficientSeries;

/// Default largest length the exhaustive oracle will enumerate.
pub const DEFAULT_ORACLE_CAP: usize = 15;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CombinatoricsError {
    #[error("oracle cap exceeded: requested length {requested}, cap {cap}")]
    CapExceeded { requested: usize, cap: usize },
    #[error("operation needs a non-empty sequence")]
    EmptySequence,
    #[error("not an ascent sequence: {0:?}")]
    NotAscentSequence(Vec<u32>),
    #[error("invalid pattern {0:?}: letters must form the set 0..k after deduplication")]
    InvalidPattern(String),
}

/// Number of positions `j` with `s[j] < s[j + 1]`.
pub fn ascent_count(s: &[u32]) -> usize {
    s.windows(2).filter(|w| w[0] < w[1]).count()
}

/// `s[0] = 0` and every later letter is at most one more than the number of
/// ascents before it. The empty sequence qualifies.
pub fn is_ascent_sequence(s: &[u32]) -> bool {
    let Some((&first, _)) = s.split_first() else {
        return true;
    };
    if first != 0 {
        return false;
    }
    let mut asc = 0u32;
    for w in s.windows(2) {
        if w[1] > asc + 1 {
            return false;
        }
        if w[0] < w[1] {
            asc += 1;
        }
    }
    true
}

/// The largest letter does not exceed the total number of ascents.
pub fn is_weak_ascent_sequence(s: &[u32]) -> bool {
    s.iter().max().is_none_or(|&m| m as usize <= ascent_count(s))
}

/// A word over `0..k` in which every letter of `0..k` occurs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern {
    letters: Vec<u32>,
}

impl Pattern {
    pub fn new(letters: Vec<u32>) -> Result<Self, CombinatoricsError> {
        let mut distinct = letters.clone();
        distinct.sort_unstable();
        distinct.dedup();
        let contiguous = distinct.iter().enumerate().all(|(i, &v)| v as usize == i);
        if letters.is_empty() || !contiguous {
            return Err(CombinatoricsError::InvalidPattern(
                letters.iter().map(u32::to_string).collect::<Vec<_>>().join(""),
            ));
        }
        Ok(Self { letters })
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// No split point leaves every prefix letter strictly below every
    /// suffix letter.
    pub fn is_sum_indecomposable(&self) -> bool {
        (1..self.letters.len()).all(|i| {
            let head = self.letters[..i].iter().max();
            let tail = self.letters[i..].iter().min();
            head >= tail
        })
    }
}

impl FromStr for Pattern {
    type Err = CombinatoricsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let letters = s
            .chars()
            .map(|c| c.to_digit(10).ok_or_else(|| CombinatoricsError::InvalidPattern(s.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(letters)
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Occurrences counted with equalities preserved: chosen letters compare
/// exactly as the corresponding pattern letters do.
pub fn contains_pattern(s: &[u32], p: &Pattern) -> bool {
    let mut chosen = Vec::with_capacity(p.len());
    occurrences(s, p.letters(), 0, &mut chosen, true) > 0
}

/// Number of index sets at which `p` occurs in `s`.
pub fn count_occurrences(s: &[u32], p: &Pattern) -> usize {
    let mut chosen = Vec::with_capacity(p.len());
    occurrences(s, p.letters(), 0, &mut chosen, false)
}

fn occurrences(s: &[u32], p: &[u32], start: usize, chosen: &mut Vec<u32>, stop_at_first: bool) -> usize {
    let depth = chosen.len();
    if depth == p.len() {
        return 1;
    }
    let mut total = 0;
    for (i, &x) in s.iter().enumerate().skip(start) {
        if s.len() - i < p.len() - depth {
            break;
        }
        let fits = chosen.iter().zip(p).all(|(&y, &q)| y.cmp(&x) == q.cmp(&p[depth]));
        if fits {
            chosen.push(x);
            total += occurrences(s, p, i + 1, chosen, stop_at_first);
            chosen.pop();
            if stop_at_first && total > 0 {
                return total;
            }
        }
    }
    total
}

/// `m[j] = max(s) + min(s) - s[k-1-j]`: reverse and complement within the
/// value range. Preserves ascents, maximum and minimum, and swaps 120 with 201.
pub fn weak_reverse_complement(s: &[u32]) -> Result<Vec<u32>, CombinatoricsError> {
    let max = *s.iter().max().ok_or(CombinatoricsError::EmptySequence)?;
    let min = *s.iter().min().expect("non-empty");
    Ok(s.iter().rev().map(|&v| max + min - v).collect())
}

/// `c1` followed by `c2` shifted up by `max(c1)`.
pub fn direct_sum_concat(c1: &[u32], c2: &[u32]) -> Result<Vec<u32>, CombinatoricsError> {
    for c in [c1, c2] {
        if !is_ascent_sequence(c) {
            return Err(CombinatoricsError::NotAscentSequence(c.to_vec()));
        }
    }
    let shift = c1.iter().copied().max().unwrap_or(0);
    Ok(c1.iter().copied().chain(c2.iter().map(|&v| v + shift)).collect())
}

/// Mask of letters `x` with `x.cmp(&v) == ord`, for `v < 64`.
fn cmp_mask(v: u32, ord: Ordering) -> u64 {
    let below = (1u64 << v) - 1;
    match ord {
        Ordering::Less => below,
        Ordering::Equal => 1u64 << v,
        Ordering::Greater => !(below | (1u64 << v)),
    }
}

/// Depth-first walker over prefixes. For length-3 patterns the set of letters
/// that would complete an occurrence is kept as a bit mask per prefix length.
#[derive(Clone)]
struct Walker<'p> {
    pattern: &'p [u32],
    seq: Vec<u32>,
    asc: Vec<u32>,
    forbidden: Vec<u64>,
}

impl<'p> Walker<'p> {
    fn new(pattern: &'p [u32]) -> Self {
        Self { pattern, seq: Vec::new(), asc: vec![0], forbidden: vec![0] }
    }

    fn ascents(&self) -> u32 {
        *self.asc.last().expect("root entry")
    }

    fn allows(&self, x: u32) -> bool {
        if self.pattern.len() == 3 {
            self.forbidden.last().expect("root entry") & (1u64 << x) == 0
        } else {
            let mut chosen = Vec::with_capacity(self.pattern.len());
            let p = self.pattern;
            let last = p.len() - 1;
            // Only occurrences that use x as their final letter are new.
            !ending_with(&self.seq, p, x, last, 0, &mut chosen)
        }
    }

    fn push(&mut self, x: u32) {
        let asc = self.ascents() + u32::from(self.seq.last().is_some_and(|&l| l < x));
        let mut mask = *self.forbidden.last().expect("root entry");
        if self.pattern.len() == 3 {
            let [p0, p1, p2] = [self.pattern[0], self.pattern[1], self.pattern[2]];
            let pair = p0.cmp(&p1);
            for &u in &self.seq {
                if u.cmp(&x) == pair {
                    mask |= cmp_mask(u, p2.cmp(&p0)) & cmp_mask(x, p2.cmp(&p1));
                }
            }
        }
        self.seq.push(x);
        self.asc.push(asc);
        self.forbidden.push(mask);
    }

    fn pop(&mut self) {
        self.seq.pop();
        self.asc.pop();
        self.forbidden.pop();
    }
}

fn ending_with(s: &[u32], p: &[u32], x: u32, last: usize, start: usize, chosen: &mut Vec<u32>) -> bool {
    let depth = chosen.len();
    if depth == last {
        return chosen.iter().zip(p).all(|(&y, &q)| y.cmp(&x) == q.cmp(&p[last]));
    }
    for i in start..s.len() {
        let y = s[i];
        if chosen.iter().zip(p).all(|(&z, &q)| z.cmp(&y) == q.cmp(&p[depth])) {
            chosen.push(y);
            let found = ending_with(s, p, x, last, i + 1, chosen);
            chosen.pop();
            if found {
                return true;
            }
        }
    }
    false
}

/// Counts of pattern-avoiding ascent sequences (or weak ascent sequences)
/// of each length `1..=n`, by exhaustive prefix extension.
pub fn brute_force_avoiders(p: &Pattern, n: usize, weak: bool) -> Result<CoefficientSeries, CombinatoricsError> {
    brute_force_avoiders_capped(p, n, weak, DEFAULT_ORACLE_CAP)
}

pub fn brute_force_avoiders_capped(
    p: &Pattern,
    n: usize,
    weak: bool,
    cap: usize,
) -> Result<CoefficientSeries, CombinatoricsError> {
    // Letters stay below n, and the 3-letter fast path keeps them in a u64.
    let cap = cap.min(64);
    if n > cap {
        return Err(CombinatoricsError::CapExceeded { requested: n, cap });
    }
    let values = if weak {
        (1..=n).map(|k| count_weak(p.letters(), k)).collect()
    } else {
        count_ascent(p.letters(), n)
    };
    Ok(CoefficientSeries::from_u64s(1, &values))
}

const SPLIT_DEPTH: usize = 4;

fn count_ascent(p: &[u32], n: usize) -> Vec<u64> {
    let mut counts = vec![0u64; n + 1];
    let mut frontier = Vec::new();
    let mut w = Walker::new(p);
    if n > 0 && w.allows(0) {
        w.push(0);
        collect_ascent(&mut w, n, &mut counts, &mut frontier);
    }
    let deeper: Vec<Vec<u64>> = frontier
        .into_par_iter()
        .map(|mut w| {
            let mut c = vec![0u64; n + 1];
            let mut none = Vec::new();
            extend_ascent(&mut w, n, &mut c, &mut none, usize::MAX);
            c
        })
        .collect();
    for c in deeper {
        for (t, v) in counts.iter_mut().zip(c) {
            *t += v;
        }
    }
    counts.split_off(1)
}

fn collect_ascent<'p>(w: &mut Walker<'p>, n: usize, counts: &mut [u64], frontier: &mut Vec<Walker<'p>>) {
    extend_ascent(w, n, counts, frontier, SPLIT_DEPTH);
}

/// Counts the current node, then either recurses or, at `split` letters,
/// hands the node to `frontier` for parallel continuation.
fn extend_ascent<'p>(w: &mut Walker<'p>, n: usize, counts: &mut [u64], frontier: &mut Vec<Walker<'p>>, split: usize) {
    let len = w.seq.len();
    if len == split && len < n {
        frontier.push(w.clone());
        return;
    }
    counts[len] += 1;
    if len == n {
        return;
    }
    for x in 0..=w.ascents() + 1 {
        if w.allows(x) {
            w.push(x);
            extend_ascent(w, n, counts, frontier, split);
            w.pop();
        }
    }
}

fn count_weak(p: &[u32], k: usize) -> u64 {
    let mut roots = Vec::new();
    for x in 0..k as u32 {
        let mut w = Walker::new(p);
        if w.allows(x) {
            w.push(x);
            roots.push(w);
        }
    }
    roots.into_par_iter().map(|mut w| extend_weak(&mut w, k)).sum()
}

fn extend_weak(w: &mut Walker<'_>, k: usize) -> u64 {
    let len = w.seq.len();
    let max = *w.seq.iter().max().expect("non-empty");
    // Each remaining letter adds at most one ascent.
    if max as usize > w.ascents() as usize + (k - len) {
        return 0;
    }
    if len == k {
        return u64::from(max <= w.ascents());
    }
    let mut total = 0;
    for x in 0..k as u32 {
        if w.allows(x) {
            w.push(x);
            total += extend_weak(w, k);
            w.pop();
        }
    }
    total
}

/// Every ascent sequence of length `len`, in lexicographic order.
pub fn ascent_sequences(len: usize) -> Vec<Vec<u32>> {
    fn go(cur: &mut Vec<u32>, asc: u32, len: usize, out: &mut Vec<Vec<u32>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        let top = if cur.is_empty() { 0 } else { asc + 1 };
        for x in 0..=top {
            let bump = u32::from(cur.last().is_some_and(|&l| l < x));
            cur.push(x);
            go(cur, asc + bump, len, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::with_capacity(len), 0, len, &mut out);
    out
}

/// Every weak ascent sequence of length `len`, in lexicographic order.
pub fn weak_ascent_sequences(len: usize) -> Vec<Vec<u32>> {
    fn go(cur: &mut Vec<u32>, asc: usize, max: u32, len: usize, out: &mut Vec<Vec<u32>>) {
        if max as usize > asc + (len - cur.len()) {
            return;
        }
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for x in 0..len as u32 {
            let bump = usize::from(cur.last().is_some_and(|&l| l < x));
            cur.push(x);
            go(cur, asc + bump, max.max(x), len, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if len == 0 {
        out.push(Vec::new());
    } else {
        go(&mut Vec::with_capacity(len), 0, 0, len, &mut out);
    }
    out
}

/// Reference values that have closed forms, for `n >= 1`.
pub mod closed_forms {
    use super::*;

    pub fn powers_of_two(n: usize) -> Integer {
        Integer::from(1) << (n as u32 - 1)
    }

    /// `(3^n + 1) / 2`; the 102-avoiders of length `n` number
    /// `three_pow_plus_one_halved(n - 1)`.
    pub fn three_pow_plus_one_halved(n: usize) -> Integer {
        (Integer::from(Integer::u_pow_u(3, n as u32)) + 1u32) / 2u32
    }

    pub fn catalan(n: usize) -> Integer {
        Integer::from(Integer::binomial_u(2 * n as u32, n as u32)) / (n as u32 + 1)
    }
}
