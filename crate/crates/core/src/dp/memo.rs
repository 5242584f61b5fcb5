use std::collections::HashMap;

use rug::Integer;

use super::recursions::Recursion;
use super::state::DpState;
use crate::series::CoefficientSeries;

pub type MemoKey<E> = (u32, DpState<E>);

/// Values of `f(n, state)` computed so far. Entries are never overwritten.
#[derive(Clone, Debug)]
pub struct MemoCache<E> {
    values: HashMap<MemoKey<E>, Integer>,
    hits: u64,
    misses: u64,
    log: Option<Vec<MemoKey<E>>>,
}

impl<E: Copy + Eq + std::hash::Hash> MemoCache<E> {
    pub fn new() -> Self {
        Self { values: HashMap::new(), hits: 0, misses: 0, log: None }
    }

    /// Also record every key in insertion order.
    pub fn with_log() -> Self {
        Self { log: Some(Vec::new()), ..Self::new() }
    }

    pub fn get(&self, n: u32, s: &DpState<E>) -> Option<&Integer> {
        self.values.get(&(n, *s))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn hits(&self) -> u64 {
        self.hits
    }

    pub fn misses(&self) -> u64 {
        self.misses
    }

    pub fn insertion_log(&self) -> Option<&[MemoKey<E>]> {
        self.log.as_deref()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&MemoKey<E>, &Integer)> {
        self.values.iter()
    }

    fn insert(&mut self, key: MemoKey<E>, value: Integer) {
        if let Some(log) = &mut self.log {
            log.push(key);
        }
        let previous = self.values.insert(key, value);
        debug_assert!(previous.is_none(), "memo entry rewritten");
    }
}

impl<E: Copy + Eq + std::hash::Hash> Default for MemoCache<E> {
    fn default() -> Self {
        Self::new()
    }
}

/// Top-down evaluation of a recursion, exactly as written, with every
/// computed value kept in a [`MemoCache`].
pub struct Memoized<R: Recursion> {
    recursion: R,
    cache: MemoCache<R::Extra>,
}

impl<R: Recursion> Memoized<R> {
    pub fn new(recursion: R) -> Self {
        Self { recursion, cache: MemoCache::new() }
    }

    pub fn with_cache(recursion: R, cache: MemoCache<R::Extra>) -> Self {
        Self { recursion, cache }
    }

    pub fn cache(&self) -> &MemoCache<R::Extra> {
        &self.cache
    }

    pub fn into_cache(self) -> MemoCache<R::Extra> {
        self.cache
    }

    /// Number of length-`n` suffixes from state `s`.
    pub fn eval(&mut self, n: u32, s: DpState<R::Extra>) -> Integer {
        if let Some(v) = self.cache.values.get(&(n, s)) {
            self.cache.hits += 1;
            return v.clone();
        }
        self.cache.misses += 1;
        let value = if n == 0 {
            Integer::from(1)
        } else {
            let mut next = Vec::new();
            self.recursion.successors(&s, &mut next);
            let mut acc = Integer::new();
            for t in next {
                acc += self.eval(n - 1, t);
            }
            acc
        };
        self.cache.insert((n, s), value.clone());
        value
    }

    /// `c_k = f(k - 1, root)` for `k = 1..=n_terms`.
    pub fn series(&mut self, n_terms: usize) -> CoefficientSeries {
        let root = self.recursion.root();
        let values = (0..n_terms as u32).map(|n| self.eval(n, root)).collect();
        CoefficientSeries::new(1, values)
    }
}
