//! The suffix-counting recursions. Each recursion describes, for a state
//! `(a, l, extra)`, the states reached by appending each admissible next
//! letter `i` in `0..=a+1`; the count of length-`n` suffixes is then
//! `f(0, s) = 1`, `f(n, s) = sum over successors t of f(n - 1, t)`.

use std::fmt::Debug;
use std::hash::Hash;

use super::state::{chi, DpState, StateSet};

pub trait Recursion: Sync {
    type Extra: Copy + Eq + Hash + Ord + Debug + Send + Sync;

    /// State after the mandatory first letter 0; `c_k = f(k - 1, root)`.
    fn root(&self) -> DpState<Self::Extra>;

    fn successors(&self, s: &DpState<Self::Extra>, out: &mut Vec<DpState<Self::Extra>>);
}

/// Letters `0..=a+1`, empty when `a < -1`.
fn letters(a: i32) -> std::ops::RangeInclusive<i32> {
    0..=a + 1
}

/// Unrestricted ascent sequences.
#[derive(Clone, Copy, Debug, Default)]
pub struct Ascent;

impl Recursion for Ascent {
    type Extra = ();

    fn root(&self) -> DpState<()> {
        DpState::new(0, 0, ())
    }

    fn successors(&self, s: &DpState<()>, out: &mut Vec<DpState<()>>) {
        out.extend(letters(s.a).map(|i| DpState::new(s.a + chi(s.l, i), i, ())));
    }
}

/// 000-avoiders. `extra` holds the letters seen exactly once; letters seen
/// twice are erased and the remaining letters renumbered.
#[derive(Clone, Copy, Debug, Default)]
pub struct Avoid000;

impl Recursion for Avoid000 {
    type Extra = StateSet;

    fn root(&self) -> DpState<StateSet> {
        DpState::new(0, 0, StateSet::empty().insert(0))
    }

    fn successors(&self, s: &DpState<StateSet>, out: &mut Vec<DpState<StateSet>>) {
        for i in letters(s.a) {
            let x = chi(s.l, i);
            if s.extra.contains(i) {
                out.push(DpState::new(s.a + x - 1, i - 1, s.extra.remove(i).renumber_remove(i)));
            } else {
                out.push(DpState::new(s.a + x, i, s.extra.insert(i)));
            }
        }
    }
}

/// 000-avoiders over compacted sets `{0, .., card - 1}`, represented by
/// their cardinality.
#[derive(Clone, Copy, Debug, Default)]
pub struct Avoid000Compact;

impl Recursion for Avoid000Compact {
    type Extra = u32;

    fn root(&self) -> DpState<u32> {
        DpState::new(0, 0, 1)
    }

    fn successors(&self, s: &DpState<u32>, out: &mut Vec<DpState<u32>>) {
        let card = s.extra as i32;
        for i in letters(s.a) {
            let x = chi(s.l, i);
            if i < card {
                out.push(DpState::new(s.a + x - 1, i - 1, s.extra - 1));
            } else {
                out.push(DpState::new(s.a + x, i, s.extra + 1));
            }
        }
    }
}

/// 100-avoiders. `extra` is the largest letter seen so far; any smaller
/// letter is erased as soon as it is used.
#[derive(Clone, Copy, Debug, Default)]
pub struct Avoid100;

impl Recursion for Avoid100 {
    type Extra = i32;

    fn root(&self) -> DpState<i32> {
        DpState::new(0, 0, 0)
    }

    fn successors(&self, s: &DpState<i32>, out: &mut Vec<DpState<i32>>) {
        let m = s.extra;
        for i in letters(s.a) {
            let x = chi(s.l, i);
            if i < m {
                out.push(DpState::new(s.a + x - 1, i - 1, m - 1));
            } else {
                out.push(DpState::new(s.a + x, i, i));
            }
        }
    }
}

/// 110-avoiders. `extra` holds the letters seen before; repeating one erases
/// every letter below it.
#[derive(Clone, Copy, Debug, Default)]
pub struct Avoid110;

impl Recursion for Avoid110 {
    type Extra = StateSet;

    fn root(&self) -> DpState<StateSet> {
        DpState::new(0, 0, StateSet::empty().insert(0))
    }

    fn successors(&self, s: &DpState<StateSet>, out: &mut Vec<DpState<StateSet>>) {
        for i in letters(s.a) {
            let x = chi(s.l, i);
            if s.extra.contains(i) {
                out.push(DpState::new(s.a + x - i, 0, s.extra.renumber_floor(i)));
            } else {
                out.push(DpState::new(s.a + x, i, s.extra.insert(i)));
            }
        }
    }
}

/// 120-avoiders. Appending `i` erases every letter below the largest seen
/// letter under `i`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Avoid120;

impl Recursion for Avoid120 {
    type Extra = StateSet;

    fn root(&self) -> DpState<StateSet> {
        DpState::new(0, 0, StateSet::empty().insert(0))
    }

    fn successors(&self, s: &DpState<StateSet>, out: &mut Vec<DpState<StateSet>>) {
        for i in letters(s.a) {
            let floor = s.extra.largest_below(i);
            let set = s.extra.renumber_floor(floor).insert(i - floor);
            out.push(DpState::new(s.a + chi(s.l, i) - floor, i - floor, set));
        }
    }
}
