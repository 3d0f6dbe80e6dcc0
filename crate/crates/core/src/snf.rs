//! Smith normal form over the integers with transforms.
//!
//! Pivoting is deterministic: at each stage the entry of least absolute value
//! in the remaining block is chosen, first in row-major order on ties.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::matrix::IntMatrix;

/// `U * M * V = D` with `U`, `V` unimodular and `D` diagonal, `d_i | d_{i+1}`.
#[derive(Debug, Clone)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    /// Inverse of `v`, maintained alongside it.
    pub v_inv: IntMatrix,
    pub rank: usize,
}

impl SmithDecomposition {
    /// Nonzero diagonal entries, all positive.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d.get(i, i).clone()).collect()
    }
}

struct Work {
    a: IntMatrix,
    u: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    /// `row[dst] += f * row[src]`
    fn row_op(&mut self, dst: usize, src: usize, f: &BigInt) {
        self.a.add_row_multiple(dst, src, f);
        self.u.add_row_multiple(dst, src, f);
    }

    /// `col[dst] += f * col[src]`; the inverse gets `row[src] -= f * row[dst]`.
    fn col_op(&mut self, dst: usize, src: usize, f: &BigInt) {
        self.a.add_col_multiple(dst, src, f);
        self.v.add_col_multiple(dst, src, f);
        self.v_inv.add_row_multiple(src, dst, &-f);
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let (rows, cols) = (m.rows(), m.cols());
    let mut w = Work {
        a: m.clone(),
        u: IntMatrix::identity(rows),
        v: IntMatrix::identity(cols),
        v_inv: IntMatrix::identity(cols),
    };
    let mut rank = 0;

    for t in 0..rows.min(cols) {
        let Some((pr, pc)) = smallest_in_block(&w.a, t..rows, t..cols) else {
            break;
        };
        w.swap_rows(t, pr);
        w.swap_cols(t, pc);

        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if !w.a.get(i, t).is_zero() {
                    let q = w.a.get(i, t).div_floor(w.a.get(t, t));
                    w.row_op(i, t, &-q);
                    clean &= w.a.get(i, t).is_zero();
                }
            }
            for j in t + 1..cols {
                if !w.a.get(t, j).is_zero() {
                    let q = w.a.get(t, j).div_floor(w.a.get(t, t));
                    w.col_op(j, t, &-q);
                    clean &= w.a.get(t, j).is_zero();
                }
            }
            if !clean {
                // a remainder is smaller than the pivot; move it into place
                let (pr, pc) = smallest_in_cross(&w.a, t, rows, cols);
                w.swap_rows(t, pr);
                w.swap_cols(t, pc);
                continue;
            }
            let pivot = w.a.get(t, t).clone();
            let offender = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !w.a.get(i, j).is_multiple_of(&pivot)));
            match offender {
                Some(i) => w.row_op(t, i, &BigInt::from(1)),
                None => break,
            }
        }
        if w.a.get(t, t).is_negative() {
            w.a.negate_row(t);
            w.u.negate_row(t);
        }
        rank += 1;
    }

    SmithDecomposition {
        u: w.u,
        d: w.a,
        v: w.v,
        v_inv: w.v_inv,
        rank,
    }
}

fn smallest_in_block(
    a: &IntMatrix,
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for i in rows {
        for j in cols.clone() {
            let v = a.get(i, j);
            if v.is_zero() {
                continue;
            }
            let mag = v.abs();
            if best.as_ref().is_none_or(|(_, b)| mag < *b) {
                best = Some(((i, j), mag));
            }
        }
    }
    best.map(|(p, _)| p)
}

/// Smallest nonzero entry in row `t` or column `t` (the pivot included).
fn smallest_in_cross(a: &IntMatrix, t: usize, rows: usize, cols: usize) -> (usize, usize) {
    let col = smallest_in_block(a, t..rows, t..t + 1);
    let row = smallest_in_block(a, t..t + 1, t..cols);
    match (col, row) {
        (Some(c), Some(r)) => {
            if a.get(r.0, r.1).abs() < a.get(c.0, c.1).abs() {
                r
            } else {
                c
            }
        }
        (Some(p), None) | (None, Some(p)) => p,
        (None, None) => (t, t),
    }
}
