//! Complex float kernels backed by faer's SVD.

use faer::{c64, Mat};

use super::{RankFactorization, StarMatrix, Tolerance};
use crate::error::{Error, Result};
use crate::scalar::{Domain, Scalar};

fn to_mat(a: &StarMatrix) -> Mat<c64> {
    Mat::from_fn(a.rows(), a.cols(), |i, j| a.get(i, j).to_complex())
}

fn from_mat(m: &Mat<c64>) -> StarMatrix {
    StarMatrix::from_fn(Domain::ComplexFloat, m.nrows(), m.ncols(), |i, j| Scalar::Complex(m[(i, j)]))
}

pub(super) fn mul(a: &StarMatrix, b: &StarMatrix) -> StarMatrix {
    from_mat(&(to_mat(a) * to_mat(b)))
}

/// Thin SVD (singular values in decreasing order) with the numerical rank
/// decided.
struct Thin {
    u: Mat<c64>,
    sigma: Vec<f64>,
    v: Mat<c64>,
    rank: usize,
}

fn thin_svd(a: &StarMatrix, tol: &Tolerance) -> Result<Thin> {
    let (m, n) = a.shape();
    if m == 0 || n == 0 {
        return Ok(Thin {
            u: Mat::zeros(m, 0),
            sigma: Vec::new(),
            v: Mat::zeros(n, 0),
            rank: 0,
        });
    }
    let svd = to_mat(a)
        .thin_svd()
        .map_err(|e| Error::PreconditionFailed(format!("SVD did not converge: {e:?}")))?;
    let sigma: Vec<f64> = svd.S().column_vector().iter().map(|s| s.re).collect();
    let cutoff = sigma.first().copied().unwrap_or(0.0) * tol.rank_rel_tol * m.max(n) as f64;
    let rank = sigma.iter().take_while(|&&s| s > cutoff && s > 0.0).count();
    Ok(Thin {
        u: svd.U().to_owned(),
        sigma,
        v: svd.V().to_owned(),
        rank,
    })
}

pub(super) fn rank(a: &StarMatrix, tol: &Tolerance) -> Result<usize> {
    Ok(thin_svd(a, tol)?.rank)
}

pub(super) fn factorize(a: &StarMatrix, tol: &Tolerance) -> Result<RankFactorization> {
    let t = thin_svd(a, tol)?;
    let r = t.rank;
    let f = Mat::from_fn(t.u.nrows(), r, |i, k| t.u[(i, k)] * t.sigma[k]);
    let g = Mat::from_fn(r, t.v.nrows(), |k, j| t.v[(j, k)].conj());
    Ok(RankFactorization {
        f: from_mat(&f),
        g: from_mat(&g),
        rank: r,
    })
}

pub(super) fn range_bases(a: &StarMatrix, tol: &Tolerance) -> Result<(StarMatrix, StarMatrix)> {
    let t = thin_svd(a, tol)?;
    let r = t.rank;
    let u = Mat::from_fn(t.u.nrows(), r, |i, k| t.u[(i, k)]);
    let v = Mat::from_fn(t.v.nrows(), r, |j, k| t.v[(j, k)]);
    Ok((from_mat(&u), from_mat(&v)))
}

pub(super) fn pinv(a: &StarMatrix, tol: &Tolerance) -> Result<StarMatrix> {
    let t = thin_svd(a, tol)?;
    let r = t.rank;
    let scaled_v = Mat::from_fn(t.v.nrows(), r, |j, k| t.v[(j, k)] / t.sigma[k]);
    let u_r = Mat::from_fn(r, t.u.nrows(), |k, i| t.u[(i, k)].conj());
    Ok(from_mat(&(scaled_v * u_r)))
}

pub(super) fn solve_right(a: &StarMatrix, b: &StarMatrix, tol: &Tolerance) -> Result<Option<StarMatrix>> {
    let x = &pinv(a, tol)? * b;
    let resid = (&(a * &x) - b).frobenius_norm();
    let scale = a.frobenius_norm() * x.frobenius_norm() + b.frobenius_norm();
    Ok((resid <= tol.residual_rel_tol * scale).then_some(x))
}

pub(super) fn inverse(a: &StarMatrix, tol: &Tolerance) -> Result<Option<StarMatrix>> {
    if rank(a, tol)? < a.rows() {
        return Ok(None);
    }
    Ok(Some(pinv(a, tol)?))
}
