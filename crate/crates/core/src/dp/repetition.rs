//! Looking for repeated values in a memo cache. When many keys that differ
//! only in part of their state carry the same value, the recursion is
//! tracking more state than the count depends on.

use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;

use rug::Integer;

use super::memo::{MemoCache, Memoized};
use super::recursions::Avoid000;
use super::state::{DpState, StateSet};
use super::DpError;

/// Fraction of non-trivial groups that must be single-valued for a
/// projection to be listed as a collision candidate.
pub const CANDIDATE_THRESHOLD: f64 = 0.99;

#[derive(Clone, Debug)]
pub struct Group {
    /// Distinct values with the number of keys carrying each.
    pub values: Vec<(Integer, usize)>,
}

impl Group {
    pub fn keys(&self) -> usize {
        self.values.iter().map(|(_, m)| m).sum()
    }

    pub fn is_single_valued(&self) -> bool {
        self.values.len() == 1
    }
}

#[derive(Clone, Debug)]
pub struct RepetitionReport<P> {
    pub projection: String,
    pub groups: BTreeMap<P, Group>,
}

impl<P> RepetitionReport<P> {
    /// Groups holding at least two keys; a lone key is trivially single-valued.
    pub fn nontrivial_groups(&self) -> impl Iterator<Item = &Group> {
        self.groups.values().filter(|g| g.keys() > 1)
    }

    pub fn single_valued_fraction(&self) -> f64 {
        let (single, total) = self
            .nontrivial_groups()
            .fold((0usize, 0usize), |(s, t), g| (s + usize::from(g.is_single_valued()), t + 1));
        if total == 0 {
            1.0
        } else {
            single as f64 / total as f64
        }
    }

    pub fn is_collision_candidate(&self) -> bool {
        self.single_valued_fraction() >= CANDIDATE_THRESHOLD
    }

    pub fn summary(&self) -> String {
        let nontrivial = self.nontrivial_groups().count();
        format!(
            "{}: {} groups ({} with >1 key), single-valued fraction {:.4}{}",
            self.projection,
            self.groups.len(),
            nontrivial,
            self.single_valued_fraction(),
            if self.is_collision_candidate() { " [collision candidate]" } else { "" }
        )
    }
}

/// Group every cached `(n, state)` by `project` and tabulate the distinct
/// values in each group.
pub fn cache_repetition_report<E, P, F>(
    cache: &MemoCache<E>,
    projection: &str,
    project: F,
) -> Result<RepetitionReport<P>, DpError>
where
    E: Copy + Eq + Hash,
    P: Ord + Clone,
    F: Fn(u32, &DpState<E>) -> P,
{
    if cache.is_empty() {
        return Err(DpError::EmptyCache);
    }
    let mut raw: BTreeMap<P, Vec<&Integer>> = BTreeMap::new();
    for ((n, s), v) in cache.iter() {
        raw.entry(project(*n, s)).or_default().push(v);
    }
    let groups = raw
        .into_iter()
        .map(|(k, mut vals)| {
            vals.sort();
            let mut values: Vec<(Integer, usize)> = Vec::new();
            for v in vals {
                match values.last_mut() {
                    Some((last, m)) if *last == *v => *m += 1,
                    _ => values.push((v.clone(), 1)),
                }
            }
            (k, Group { values })
        })
        .collect();
    Ok(RepetitionReport { projection: projection.to_string(), groups })
}

/// Values of at least `min_value` that occur under more than one key with the
/// same `n`, most repeated first. This is the raw signal that suggests a
/// coarser state might suffice.
pub fn repeated_large_values<E: Copy + Eq + Hash>(
    cache: &MemoCache<E>,
    min_value: &Integer,
) -> Vec<(u32, Integer, usize)> {
    let mut counts: HashMap<(u32, &Integer), usize> = HashMap::new();
    for ((n, _), v) in cache.iter() {
        if v >= min_value {
            *counts.entry((*n, v)).or_default() += 1;
        }
    }
    let mut out: Vec<_> = counts.into_iter().filter(|&(_, c)| c > 1).map(|((n, v), c)| (n, v.clone(), c)).collect();
    out.sort_by(|x, y| y.2.cmp(&x.2).then_with(|| y.1.cmp(&x.1)).then_with(|| x.0.cmp(&y.0)));
    out
}

/// Outcome of [`check_000_swap_pairs`].
#[derive(Clone, Debug, Default)]
pub struct SwapPairCheck {
    pub pairs: usize,
    /// `(n, a, l, T, i)` where the two values differ.
    pub mismatches: Vec<(u32, i32, i32, StateSet, i32)>,
}

/// For the exponential 000 recursion, compare `f(n, a, l, T + {i})` with
/// `f(n, a, l, T + {i+1})` whenever `i < l` and neither `i` nor `i + 1` is in
/// `T`, over `n <= max_n`, `0 <= l <= a <= max_a` and `T` inside `{0..=a}`.
pub fn check_000_swap_pairs(max_n: u32, max_a: i32) -> SwapPairCheck {
    let mut memo = Memoized::new(Avoid000);
    let mut out = SwapPairCheck::default();
    for a in 0..=max_a {
        for l in 1..=a {
            for i in 0..l {
                for bits in 0u128..1 << (a + 1) {
                    let t = StateSet::from_bits(bits);
                    if t.contains(i) || t.contains(i + 1) {
                        continue;
                    }
                    for n in 0..=max_n {
                        let x = memo.eval(n, DpState::new(a, l, t.insert(i)));
                        let y = memo.eval(n, DpState::new(a, l, t.insert(i + 1)));
                        out.pairs += 1;
                        if x != y {
                            out.mismatches.push((n, a, l, t, i));
                        }
                    }
                }
            }
        }
    }
    out
}
