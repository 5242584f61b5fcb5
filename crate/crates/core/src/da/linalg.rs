//! Fraction-free (Bareiss) elimination over the integers.

use rug::{Integer, Rational};

/// Row echelon form produced by [`bareiss_echelon`].
pub struct Echelon {
    pub rows: Vec<Vec<Integer>>,
    /// Pivot column of each of the first `pivots.len()` rows.
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Reduce `m` to row echelon form, considering only columns `0..cols` as
/// pivot candidates. Remaining columns are carried along. Every entry stays
/// an integer because each one is a minor of the input.
pub fn bareiss_echelon(mut m: Vec<Vec<Integer>>, cols: usize) -> Echelon {
    let n_rows = m.len();
    let width = m.first().map_or(0, Vec::len);
    let mut prev = Integer::from(1);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        if r == n_rows {
            break;
        }
        let Some(p) = (r..n_rows).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(r, p);
        let (top, rest) = m.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in rest.iter_mut() {
            let factor = row[col].clone();
            for j in col + 1..width {
                let mut v = Integer::from(&pivot_row[col] * &row[j]);
                v -= Integer::from(&factor * &pivot_row[j]);
                v.div_exact_mut(&prev);
                row[j] = v;
            }
            row[col] = Integer::new();
        }
        // Rows above the pivot rows are left alone; rows below that were
        // skipped in earlier columns are still scaled consistently.
        prev = m[r][col].clone();
        pivots.push(col);
        r += 1;
    }
    Echelon { rows: m, pivots }
}

/// Solve the echelon system for the carried column `rhs_col`, setting every
/// free variable to zero. `None` if the system is inconsistent.
pub fn back_substitute(e: &Echelon, cols: usize, rhs_col: usize) -> Option<Vec<Rational>> {
    let rank = e.rank();
    if e.rows[rank..].iter().any(|row| row[rhs_col] != 0) {
        return None;
    }
    let mut x = vec![Rational::new(); cols];
    for r in (0..rank).rev() {
        let pc = e.pivots[r];
        let mut acc = Rational::from(&e.rows[r][rhs_col]);
        for &c in &e.pivots[r + 1..] {
            if !x[c].is_zero() {
                acc -= Rational::from(&e.rows[r][c] * &x[c]);
            }
        }
        x[pc] = acc / &e.rows[r][pc];
    }
    Some(x)
}
