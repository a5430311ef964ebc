//! Linear systems over Z/nZ with composite n, solved by enumeration.

use super::StarMatrix;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Largest number of candidate columns tried per right-hand side column.
pub const SEARCH_LIMIT: u128 = 1 << 22;

fn residue(s: &Scalar) -> u64 {
    match s {
        Scalar::Residue(r) => r.value,
        _ => unreachable!("residue domain"),
    }
}

pub(super) fn solve_right(a: &StarMatrix, b: &StarMatrix) -> Result<Option<StarMatrix>> {
    let domain = a.domain();
    let n = domain.modulus().expect("residue domain");
    let (m, k) = a.shape();
    let space = (n as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if space > SEARCH_LIMIT {
        return Err(Error::TooLarge(format!(
            "solving over {domain} with {k} unknowns per column needs {n}^{k} candidates"
        )));
    }
    let av: Vec<u64> = a.data().iter().map(residue).collect();
    let mut x = StarMatrix::zeros(domain, k, b.cols());
    for j in 0..b.cols() {
        let target: Vec<u64> = (0..m).map(|i| residue(b.get(i, j))).collect();
        let mut cand = vec![0u64; k];
        let found = loop {
            let hit = (0..m).all(|i| {
                let s = (0..k).fold(0u128, |acc, l| {
                    acc + av[i * k + l] as u128 * cand[l] as u128
                });
                (s % n as u128) as u64 == target[i]
            });
            if hit {
                break true;
            }
            // Odometer increment; wrapping past the last digit ends the search.
            let mut pos = 0;
            while pos < k {
                cand[pos] += 1;
                if cand[pos] < n {
                    break;
                }
                cand[pos] = 0;
                pos += 1;
            }
            if pos == k {
                break false;
            }
        };
        if !found {
            return Ok(None);
        }
        for (l, &v) in cand.iter().enumerate() {
            *x.get_mut(l, j) = domain.from_i64(v as i64);
        }
    }
    Ok(Some(x))
}
