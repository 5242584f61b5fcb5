use std::fmt;

/// Small set of non-negative integers stored as a bit mask (bit `i` set iff
/// `i` is a member). Elements must stay below [`StateSet::WIDTH`].
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateSet(u128);

impl StateSet {
    pub const WIDTH: u32 = 128;

    pub const fn empty() -> Self {
        Self(0)
    }

    pub fn from_bits(bits: u128) -> Self {
        Self(bits)
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    pub fn contains(self, i: i32) -> bool {
        (0..Self::WIDTH as i32).contains(&i) && self.0 >> i & 1 == 1
    }

    pub fn insert(self, i: i32) -> Self {
        assert!((0..Self::WIDTH as i32).contains(&i), "element {i} outside set width");
        Self(self.0 | 1 << i)
    }

    pub fn remove(self, i: i32) -> Self {
        if self.contains(i) {
            Self(self.0 & !(1 << i))
        } else {
            self
        }
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn max(self) -> Option<i32> {
        (self.0 != 0).then(|| (127 - self.0.leading_zeros()) as i32)
    }

    pub fn iter(self) -> impl Iterator<Item = i32> {
        (0..Self::WIDTH as i32).filter(move |&i| self.0 >> i & 1 == 1)
    }

    /// Elements above `i` move down by one; `i` itself is dropped.
    pub fn renumber_remove(self, i: i32) -> Self {
        if i < 0 {
            return Self(self.0 >> 1);
        }
        let i = i as u32;
        if i >= Self::WIDTH {
            return self;
        }
        let low = self.0 & low_mask(i);
        let high = if i + 1 >= Self::WIDTH { 0 } else { (self.0 >> (i + 1)) << i };
        Self(low | high)
    }

    /// `{ e - i : e in S, e >= i }`.
    pub fn renumber_floor(self, i: i32) -> Self {
        match i {
            i if i <= 0 => self,
            i if i as u32 >= Self::WIDTH => Self(0),
            i => Self(self.0 >> i),
        }
    }

    /// Largest element strictly below `i`, or 0 when there is none.
    pub fn largest_below(self, i: i32) -> i32 {
        if i <= 0 {
            return 0;
        }
        let below = self.0 & low_mask(i.min(Self::WIDTH as i32) as u32);
        if below == 0 {
            0
        } else {
            (127 - below.leading_zeros()) as i32
        }
    }
}

fn low_mask(i: u32) -> u128 {
    if i >= 128 {
        u128::MAX
    } else {
        (1u128 << i) - 1
    }
}

impl FromIterator<i32> for StateSet {
    fn from_iter<T: IntoIterator<Item = i32>>(iter: T) -> Self {
        iter.into_iter().fold(Self::empty(), Self::insert)
    }
}

impl fmt::Debug for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// 1 if `l < i`, else 0: whether appending `i` after `l` creates an ascent.
pub fn chi(l: i32, i: i32) -> i32 {
    i32::from(l < i)
}

/// Memo key payload: prior ascent count `a` (after renumbering, may be -1),
/// last letter `l` (may be -1) and the pattern-specific extra state.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DpState<E> {
    pub a: i32,
    pub l: i32,
    pub extra: E,
}

impl<E> DpState<E> {
    pub fn new(a: i32, l: i32, extra: E) -> Self {
        Self { a, l, extra }
    }
}

impl<E: fmt::Debug> fmt::Debug for DpState<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(a={}, l={}, {:?})", self.a, self.l, self.extra)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[i32]) -> StateSet {
        xs.iter().copied().collect()
    }

    #[test]
    fn chi_values() {
        assert_eq!(chi(0, 1), 1);
        assert_eq!(chi(1, 1), 0);
        assert_eq!(chi(-1, 0), 1);
    }

    #[test]
    fn renumber_remove_examples() {
        assert_eq!(set(&[0, 2]).renumber_remove(1), set(&[0, 1]));
        assert_eq!(StateSet::empty().renumber_remove(5), StateSet::empty());
        assert_eq!(set(&[0, 1, 3]).renumber_remove(2), set(&[0, 1, 2]));
        assert_eq!(set(&[0, 1, 3]).renumber_remove(0), set(&[0, 2]));
        assert_eq!(set(&[127]).renumber_remove(126), set(&[126]));
    }

    #[test]
    fn renumber_floor_examples() {
        assert_eq!(set(&[0, 1, 3]).renumber_floor(2), set(&[1]));
        assert_eq!(set(&[0, 4]).renumber_floor(0), set(&[0, 4]));
        assert_eq!(set(&[0]).renumber_floor(1), StateSet::empty());
    }

    #[test]
    fn largest_below_examples() {
        assert_eq!(set(&[0, 2, 5]).largest_below(4), 2);
        assert_eq!(StateSet::empty().largest_below(3), 0);
        assert_eq!(set(&[0, 1]).largest_below(0), 0);
        assert_eq!(set(&[3]).largest_below(3), 0);
    }

    #[test]
    fn set_basics() {
        let s = set(&[1, 4]);
        assert!(s.contains(4) && !s.contains(-1) && !s.contains(2));
        assert_eq!(s.len(), 2);
        assert_eq!(s.max(), Some(4));
        assert_eq!(s.remove(4), set(&[1]));
        assert_eq!(format!("{s:?}"), "{1, 4}");
    }
}
