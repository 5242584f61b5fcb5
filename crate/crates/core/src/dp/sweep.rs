//! Forward evaluation one layer (one appended letter) at a time. Each layer
//! maps a state to the number of prefixes that reach it, so only two layers
//! are ever held in memory and the layer total is the next series term.

use std::collections::HashMap;
use std::hash::{BuildHasher, Hash};

use rayon::prelude::*;
use rug::Integer;

use super::recursions::Recursion;
use super::state::DpState;
use crate::series::CoefficientSeries;

/// Result of a sweep: the series plus the number of distinct states per layer.
#[derive(Clone, Debug)]
pub struct Sweep {
    pub series: CoefficientSeries,
    pub states_per_layer: Vec<usize>,
}

const SHARDS: usize = 64;
const PARALLEL_THRESHOLD: usize = 4096;

pub fn sweep<R: Recursion>(recursion: &R, n_terms: usize) -> Sweep {
    let mut layer: HashMap<DpState<R::Extra>, Integer> = HashMap::new();
    let mut values = Vec::with_capacity(n_terms);
    let mut states_per_layer = Vec::with_capacity(n_terms);
    if n_terms == 0 {
        return Sweep { series: CoefficientSeries::new(1, values), states_per_layer };
    }
    layer.insert(recursion.root(), Integer::from(1));
    loop {
        values.push(layer_total(&layer));
        states_per_layer.push(layer.len());
        if values.len() == n_terms {
            break;
        }
        layer = if layer.len() < PARALLEL_THRESHOLD { step_serial(recursion, &layer) } else { step_parallel(recursion, layer) };
    }
    Sweep { series: CoefficientSeries::new(1, values), states_per_layer }
}

fn layer_total<K>(layer: &HashMap<K, Integer>) -> Integer {
    let mut total = Integer::new();
    for v in layer.values() {
        total += v;
    }
    total
}

fn step_serial<R: Recursion>(
    recursion: &R,
    layer: &HashMap<DpState<R::Extra>, Integer>,
) -> HashMap<DpState<R::Extra>, Integer> {
    let mut next: HashMap<DpState<R::Extra>, Integer> = HashMap::with_capacity(layer.len() * 2);
    let mut buf = Vec::new();
    for (s, count) in layer {
        buf.clear();
        recursion.successors(s, &mut buf);
        for t in &buf {
            *next.entry(*t).or_default() += count;
        }
    }
    next
}

/// Successor states are routed to shards by hash so that each shard can be
/// merged independently; sums are exact, so the result does not depend on
/// scheduling.
fn step_parallel<R: Recursion>(
    recursion: &R,
    layer: HashMap<DpState<R::Extra>, Integer>,
) -> HashMap<DpState<R::Extra>, Integer> {
    let hasher = std::collections::hash_map::RandomState::new();
    let entries: Vec<_> = layer.into_iter().collect();
    let chunk = entries.len().div_ceil(rayon::current_num_threads() * 4).max(256);
    let partials: Vec<Vec<HashMap<DpState<R::Extra>, Integer>>> = entries
        .par_chunks(chunk)
        .map(|part| {
            let mut shards: Vec<HashMap<_, Integer>> = (0..SHARDS).map(|_| HashMap::new()).collect();
            let mut buf = Vec::new();
            for (s, count) in part {
                buf.clear();
                recursion.successors(s, &mut buf);
                for t in &buf {
                    *shards[shard_of(&hasher, t)].entry(*t).or_default() += count;
                }
            }
            shards
        })
        .collect();
    drop(entries);
    let mut by_shard: Vec<Vec<HashMap<_, Integer>>> = (0..SHARDS).map(|_| Vec::new()).collect();
    for shards in partials {
        for (i, m) in shards.into_iter().enumerate() {
            by_shard[i].push(m);
        }
    }
    let merged: Vec<HashMap<_, Integer>> = by_shard
        .into_par_iter()
        .map(|maps| {
            let mut it = maps.into_iter();
            let mut acc = it.next().unwrap_or_default();
            for m in it {
                for (k, v) in m {
                    *acc.entry(k).or_default() += v;
                }
            }
            acc
        })
        .collect();
    let total = merged.iter().map(HashMap::len).sum();
    let mut next = HashMap::with_capacity(total);
    for m in merged {
        next.extend(m);
    }
    next
}

fn shard_of<K: Hash, S: BuildHasher>(hasher: &S, key: &K) -> usize {
    (hasher.hash_one(key) % SHARDS as u64) as usize
}
