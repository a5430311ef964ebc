//! Gauss-Jordan elimination over exact fields.

use super::{RankFactorization, StarMatrix};

pub(super) struct Rref {
    pub matrix: StarMatrix,
    pub pivots: Vec<usize>,
}

/// Reduced row echelon form. Pivot rule: scan columns left to right and take
/// the first row at or below the current one with a nonzero entry.
pub(super) fn rref(a: &StarMatrix) -> Rref {
    let mut m = a.clone();
    let (rows, cols) = m.shape();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m.get(i, c).is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                m.data.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = m.get(r, c).inv().expect("nonzero pivot in a field");
        for j in c..cols {
            let v = m.get(r, j) * &inv;
            *m.get_mut(r, j) = v;
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = m.get(i, c).clone();
            if f.is_zero() {
                continue;
            }
            for j in c..cols {
                let v = m.get(i, j) - &(&f * m.get(r, j));
                *m.get_mut(i, j) = v;
            }
        }
        pivots.push(c);
        r += 1;
    }
    Rref { matrix: m, pivots }
}

pub(super) fn factorize(a: &StarMatrix) -> RankFactorization {
    let red = rref(a);
    let rank = red.pivots.len();
    let rows: Vec<usize> = (0..rank).collect();
    RankFactorization {
        f: a.select_columns(&red.pivots),
        g: red.matrix.select_rows(&rows),
        rank,
    }
}

pub(super) fn solve_right(a: &StarMatrix, b: &StarMatrix) -> Option<StarMatrix> {
    let aug = a.hstack(b).expect("checked by caller");
    let red = rref(&aug);
    let n = a.cols();
    if red.pivots.iter().any(|&p| p >= n) {
        return None;
    }
    let mut x = StarMatrix::zeros(a.domain(), n, b.cols());
    for (i, &p) in red.pivots.iter().enumerate() {
        for j in 0..b.cols() {
            *x.get_mut(p, j) = red.matrix.get(i, n + j).clone();
        }
    }
    Some(x)
}
