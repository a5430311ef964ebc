//! Random matrix generators shared by integration tests.
#![allow(dead_code)]

use ginv::scalar::Gaussian;
use ginv::{Domain, Scalar, StarMatrix, Tolerance};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn complex(rng: &mut TestRng, rows: usize, cols: usize) -> StarMatrix {
    StarMatrix::from_fn(Domain::ComplexFloat, rows, cols, |_, _| {
        Scalar::complex(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    })
}

/// A square complex matrix of rank `rank` (almost surely).
pub fn complex_with_rank(rng: &mut TestRng, n: usize, rank: usize) -> StarMatrix {
    if rank == 0 {
        return StarMatrix::zeros(Domain::ComplexFloat, n, n);
    }
    &complex(rng, n, rank) * &complex(rng, rank, n)
}

pub fn gaussian(rng: &mut TestRng, rows: usize, cols: usize, range: i64) -> StarMatrix {
    StarMatrix::from_fn(Domain::GaussianRational, rows, cols, |_, _| {
        Scalar::Gaussian(Gaussian::from_ints(
            rng.random_range(-range..=range),
            rng.random_range(-range..=range),
        ))
    })
}

/// A square Gaussian-rational matrix of rank at most `rank`.
pub fn gaussian_with_rank(rng: &mut TestRng, n: usize, rank: usize, range: i64) -> StarMatrix {
    if rank == 0 {
        return StarMatrix::zeros(Domain::GaussianRational, n, n);
    }
    &gaussian(rng, n, rank, range) * &gaussian(rng, rank, n, range)
}

pub fn rational(rng: &mut TestRng, rows: usize, cols: usize, range: i64) -> StarMatrix {
    let values: Vec<i64> = (0..rows * cols).map(|_| rng.random_range(-range..=range)).collect();
    StarMatrix::from_i64(Domain::Rational, rows, cols, &values)
}

pub fn rational_with_rank(rng: &mut TestRng, n: usize, rank: usize, range: i64) -> StarMatrix {
    if rank == 0 {
        return StarMatrix::zeros(Domain::Rational, n, n);
    }
    &rational(rng, n, rank, range) * &rational(rng, rank, n, range)
}

/// A well-conditioned invertible complex matrix.
pub fn complex_invertible(rng: &mut TestRng, n: usize) -> StarMatrix {
    let shift = StarMatrix::identity(Domain::ComplexFloat, n).scale(&Scalar::complex(3.0, 0.0));
    &complex(rng, n, n) + &shift
}

/// `P diag(N, B) P^{-1}` where `N` is a nilpotent Jordan block of size
/// `index` and `B` is invertible, so the Drazin index is exactly `index`.
pub fn complex_with_index(rng: &mut TestRng, n: usize, index: usize) -> StarMatrix {
    let tail = complex_invertible(rng, n - index);
    let block = StarMatrix::from_fn(Domain::ComplexFloat, n, n, |i, j| {
        if i < index && j < index {
            Scalar::complex(if j == i + 1 { 1.0 } else { 0.0 }, 0.0)
        } else if i >= index && j >= index {
            tail.get(i - index, j - index).clone()
        } else {
            Scalar::complex(0.0, 0.0)
        }
    });
    let p = complex_invertible(rng, n);
    let p_inv = p.inverse(&Tolerance::default()).unwrap().unwrap();
    &(&p * &block) * &p_inv
}

/// A group-invertible complex matrix of rank `rank`.
pub fn complex_group_invertible(rng: &mut TestRng, n: usize, rank: usize) -> StarMatrix {
    let core = complex_invertible(rng, rank);
    let block = StarMatrix::from_fn(Domain::ComplexFloat, n, n, |i, j| {
        if i < rank && j < rank {
            core.get(i, j).clone()
        } else {
            Scalar::complex(0.0, 0.0)
        }
    });
    let p = complex_invertible(rng, n);
    let p_inv = p.inverse(&Tolerance::default()).unwrap().unwrap();
    &(&p * &block) * &p_inv
}

/// Matrix over GF(p) from a ring label such as `[[0,1],[1,0]]`.
pub fn from_label(label: &str, domain: Domain) -> StarMatrix {
    let rows: Vec<Vec<i64>> = serde_json::from_str(label).expect("matrix label");
    let flat: Vec<i64> = rows.iter().flatten().copied().collect();
    StarMatrix::from_i64(domain, rows.len(), rows[0].len(), &flat)
}

pub fn rel_dist(p: &StarMatrix, q: &StarMatrix) -> f64 {
    p.relative_distance(q)
}
