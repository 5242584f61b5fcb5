//! Dense evaluators for the two polynomial recursions (compacted 000 and
//! 100). Layer `n` stores `f(n, a, l, x)` for every state that is reachable
//! early enough to matter, i.e. `a <= n_terms - 1 - n`. The successors of a
//! state split into at most four runs of consecutive letters, each landing on
//! consecutive `l` values of one `(a', x')` row, so every value is a handful
//! of prefix-sum differences and a term costs O(n^3) bigint additions.

use rayon::prelude::*;
use rug::Integer;

use crate::series::CoefficientSeries;

/// Prefix sums of one layer: `rows[r][k]` is the sum of the first `k + 1`
/// entries of row `r`.
struct Prefix {
    rows: Vec<Vec<Integer>>,
}

impl Prefix {
    fn from_rows(mut rows: Vec<Vec<Integer>>) -> Self {
        rows.par_iter_mut().for_each(|row| {
            for k in 1..row.len() {
                let (done, rest) = row.split_at_mut(k);
                rest[0] += &done[k - 1];
            }
        });
        Self { rows }
    }

    /// Sum of entries `lo..=hi` of row `r`, clamped to the row.
    fn range(&self, r: Option<usize>, lo: i64, hi: i64, acc: &mut Integer) {
        let Some(row) = r.and_then(|r| self.rows.get(r)) else {
            return;
        };
        let lo = lo.max(0);
        let hi = hi.min(row.len() as i64 - 1);
        if lo > hi {
            return;
        }
        *acc += &row[hi as usize];
        if lo > 0 {
            *acc -= &row[lo as usize - 1];
        }
    }
}

/// Number of ascent sequences of each length `1..=n_terms`. Rows are indexed
/// by `a` and hold `l in 0..=a`.
pub fn count_ascent(n_terms: usize) -> CoefficientSeries {
    let mut values = Vec::with_capacity(n_terms);
    if n_terms == 0 {
        return CoefficientSeries::new(1, values);
    }
    let mut rows: Vec<Vec<Integer>> = (0..n_terms).map(|a| vec![Integer::from(1); a + 1]).collect();
    for n in 0..n_terms {
        values.push(rows[0][0].clone());
        if n + 1 == n_terms {
            break;
        }
        let prev = Prefix::from_rows(rows);
        let a_max = n_terms - 2 - n;
        rows = (0..=a_max)
            .into_par_iter()
            .map(|a| {
                let (a, top) = (a as i64, a as i64 + 1);
                (0..=a)
                    .map(|l| {
                        let mut acc = Integer::new();
                        prev.range(Some(a as usize), 0, l, &mut acc);
                        prev.range(Some(top as usize), l + 1, top, &mut acc);
                        acc
                    })
                    .collect()
            })
            .collect();
    }
    CoefficientSeries::new(1, values)
}

/// Compacted 000 layout: rows indexed by `(a, c)` with `a in -2..=a_max`,
/// `c in 0..=a+2`; each row holds `l in -1..=a+1`.
struct Layout000 {
    a_max: i64,
}

impl Layout000 {
    fn row(&self, a: i64, c: i64) -> Option<usize> {
        if a < -2 || a > self.a_max || c < 0 || c > a + 2 {
            return None;
        }
        // Rows for a' < a: sum over a' of (a' + 3).
        let before = (a + 2) * (a + 3) / 2;
        Some((before + c) as usize)
    }

    fn row_len(a: i64) -> usize {
        (a + 3) as usize
    }
}

/// Number of 000-avoiding ascent sequences of each length `1..=n_terms`.
pub fn count_000_compact(n_terms: usize) -> CoefficientSeries {
    let n_terms = n_terms as i64;
    let mut values = Vec::with_capacity(n_terms as usize);
    if n_terms == 0 {
        return CoefficientSeries::new(1, values);
    }
    let mut layout = Layout000 { a_max: n_terms - 1 };
    let mut rows: Vec<Vec<Integer>> = Vec::new();
    for a in -2..=layout.a_max {
        for _c in 0..=a + 2 {
            rows.push(vec![Integer::from(1); Layout000::row_len(a)]);
        }
    }
    for n in 0..n_terms {
        values.push(rows[layout.row(0, 1).expect("root row")][1].clone());
        if n + 1 == n_terms {
            break;
        }
        let prev = Prefix::from_rows(rows);
        let prev_layout = Layout000 { a_max: layout.a_max };
        layout.a_max -= 1;
        let keys: Vec<(i64, i64)> = (-2..=layout.a_max).flat_map(|a| (0..=a + 2).map(move |c| (a, c))).collect();
        rows = keys
            .into_par_iter()
            .map(|(a, c)| {
                (-1..=a + 1)
                    .map(|l| {
                        let mut acc = Integer::new();
                        let top = a + 1;
                        // Repeated letter i < c, erased: (a + chi - 1, i - 1, c - 1).
                        let hi = (c - 1).min(l);
                        prev.range(prev_layout.row(a - 1, c - 1), -1 + 1, hi - 1 + 1, &mut acc);
                        prev.range(prev_layout.row(a, c - 1), l + 1, (c - 1).min(top), &mut acc);
                        // New letter i >= c: (a + chi, i, c + 1).
                        prev.range(prev_layout.row(a, c + 1), c + 1, l.min(top) + 1, &mut acc);
                        prev.range(prev_layout.row(a + 1, c + 1), c.max(l + 1) + 1, top + 1, &mut acc);
                        acc
                    })
                    .collect()
            })
            .collect();
    }
    CoefficientSeries::new(1, values)
}

/// 100 layout: rows indexed by `(a, m)` with `a in -1..=a_max`,
/// `m in 0..=a+1`; each row holds `l in -1..=m`. A second prefix table runs
/// along the diagonal `l = m` of each `a`.
struct Layout100 {
    a_max: i64,
}

impl Layout100 {
    fn row(&self, a: i64, m: i64) -> Option<usize> {
        if a < -1 || a > self.a_max || m < 0 || m > a + 1 {
            return None;
        }
        // Rows for a' < a: sum over a' in -1..a of (a' + 2).
        let before = (a + 1) * (a + 2) / 2;
        Some((before + m) as usize)
    }

    fn diag(&self, a: i64) -> Option<usize> {
        (a >= -1 && a <= self.a_max).then_some((a + 1) as usize)
    }
}

/// Number of 100-avoiding ascent sequences of each length `1..=n_terms`.
pub fn count_100(n_terms: usize) -> CoefficientSeries {
    let n_terms = n_terms as i64;
    let mut values = Vec::with_capacity(n_terms as usize);
    if n_terms == 0 {
        return CoefficientSeries::new(1, values);
    }
    let mut layout = Layout100 { a_max: n_terms - 1 };
    let mut rows: Vec<Vec<Integer>> = Vec::new();
    for a in -1..=layout.a_max {
        for m in 0..=a + 1 {
            rows.push(vec![Integer::from(1); (m + 2) as usize]);
        }
    }
    for n in 0..n_terms {
        values.push(rows[layout.row(0, 0).expect("root row")][1].clone());
        if n + 1 == n_terms {
            break;
        }
        let prev_layout = Layout100 { a_max: layout.a_max };
        let diagonals: Vec<Vec<Integer>> = (-1..=prev_layout.a_max)
            .map(|a| (0..=a + 1).map(|m| rows[prev_layout.row(a, m).expect("row")][(m + 1) as usize].clone()).collect())
            .collect();
        let diag = Prefix::from_rows(diagonals);
        let prev = Prefix::from_rows(rows);
        layout.a_max -= 1;
        let keys: Vec<(i64, i64)> = (-1..=layout.a_max).flat_map(|a| (0..=a + 1).map(move |m| (a, m))).collect();
        rows = keys
            .into_par_iter()
            .map(|(a, m)| {
                (-1..=m)
                    .map(|l| {
                        let mut acc = Integer::new();
                        let top = a + 1;
                        // i < m is erased: (a + chi - 1, i - 1, m - 1).
                        let hi = l.min(m - 1);
                        prev.range(prev_layout.row(a - 1, m - 1), 0, hi, &mut acc);
                        prev.range(prev_layout.row(a, m - 1), l + 1, (m - 1).min(top), &mut acc);
                        // i = m = l repeats the maximum without an ascent.
                        if l == m && m <= top {
                            prev.range(prev_layout.row(a, m), m + 1, m + 1, &mut acc);
                        }
                        // i > l, i >= m becomes the new maximum: (a + 1, i, i).
                        diag.range(prev_layout.diag(a + 1), m.max(l + 1), top, &mut acc);
                        acc
                    })
                    .collect()
            })
            .collect();
    }
    CoefficientSeries::new(1, values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dp::memo::Memoized;
    use crate::dp::recursions::{Ascent, Avoid000Compact, Avoid100};

    #[test]
    fn compact_000_matches_memoized_recursion() {
        let dense = count_000_compact(16);
        let memo = Memoized::new(Avoid000Compact).series(16);
        assert_eq!(dense, memo);
        assert_eq!(dense.values[..7], [1, 2, 4, 10, 27, 83, 277]);
    }

    #[test]
    fn dense_100_matches_memoized_recursion() {
        assert_eq!(count_100(16), Memoized::new(Avoid100).series(16));
        assert_eq!(count_100(2).values, vec![1, 2]);
    }

    #[test]
    fn dense_ascent_matches_memoized_recursion() {
        assert_eq!(count_ascent(16), Memoized::new(Ascent).series(16));
    }

    #[test]
    fn degenerate_lengths() {
        assert!(count_ascent(0).is_empty());
        assert_eq!(count_ascent(1).values, vec![1]);
        assert!(count_000_compact(0).is_empty());
        assert_eq!(count_000_compact(1).values, vec![1]);
        assert_eq!(count_100(1).values, vec![1]);
    }
}
