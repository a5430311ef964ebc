//! Dense matrices over a [`Domain`] with conjugate transpose as involution.
//!
//! Exact domains use Gauss-Jordan elimination with a fixed pivot rule (first
//! nonzero column, then first nonzero row), so factorizations and particular
//! solutions are reproducible. Residue rings with composite modulus have no
//! elimination; linear systems there are solved by exhaustive search over
//! small unknown spaces. The float domain routes every rank decision through
//! singular values.

mod exact;
mod float;
mod modular;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{Domain, Scalar};

/// Thresholds for decisions in the float domain. Exact domains ignore them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    /// Singular values at or below `rank_rel_tol * sigma_max * max(rows, cols)`
    /// count as zero.
    pub rank_rel_tol: f64,
    /// Relative residual accepted when certifying an equation.
    pub residual_rel_tol: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            rank_rel_tol: 1e-10,
            residual_rel_tol: 1e-8,
        }
    }
}

impl Tolerance {
    pub fn new(rank_rel_tol: f64, residual_rel_tol: f64) -> Result<Self> {
        if !(rank_rel_tol > 0.0 && residual_rel_tol > 0.0)
            || !rank_rel_tol.is_finite()
            || !residual_rel_tol.is_finite()
        {
            return Err(Error::PreconditionFailed(
                "tolerances must be positive and finite".into(),
            ));
        }
        Ok(Tolerance {
            rank_rel_tol,
            residual_rel_tol,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StarMatrix {
    rows: usize,
    cols: usize,
    domain: Domain,
    data: Vec<Scalar>,
}

/// `A = F G` with `F` of full column rank and `G` of full row rank.
#[derive(Debug, Clone)]
pub struct RankFactorization {
    pub f: StarMatrix,
    pub g: StarMatrix,
    pub rank: usize,
}

impl StarMatrix {
    pub fn new(domain: Domain, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Parse(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|s| s.domain() != domain) {
            return Err(Error::DomainMismatch(domain, bad.domain()));
        }
        Ok(StarMatrix {
            rows,
            cols,
            domain,
            data,
        })
    }

    pub fn from_rows(domain: Domain, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Parse("ragged rows".into()));
        }
        StarMatrix::new(domain, r, c, rows.into_iter().flatten().collect())
    }

    /// Integer entries in row-major order.
    ///
    /// # Panics
    /// If `values.len() != rows * cols`.
    pub fn from_i64(domain: Domain, rows: usize, cols: usize, values: &[i64]) -> Self {
        assert_eq!(values.len(), rows * cols, "entry count");
        StarMatrix {
            rows,
            cols,
            domain,
            data: values.iter().map(|&v| domain.from_i64(v)).collect(),
        }
    }

    pub fn from_fn(
        domain: Domain,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let s = f(i, j);
                debug_assert_eq!(s.domain(), domain);
                data.push(s);
            }
        }
        StarMatrix {
            rows,
            cols,
            domain,
            data,
        }
    }

    pub fn zeros(domain: Domain, rows: usize, cols: usize) -> Self {
        let z = domain.zero();
        StarMatrix {
            rows,
            cols,
            domain,
            data: vec![z; rows * cols],
        }
    }

    pub fn identity(domain: Domain, n: usize) -> Self {
        let (z, o) = (domain.zero(), domain.one());
        StarMatrix::from_fn(domain, n, n, |i, j| if i == j { o.clone() } else { z.clone() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub(crate) fn get_mut(&mut self, i: usize, j: usize) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }

    pub fn data(&self) -> &[Scalar] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub(crate) fn require_square(&self, op: &'static str) -> Result<()> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                op,
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(())
    }

    fn check_domain(&self, other: &StarMatrix) -> Result<()> {
        if self.domain != other.domain {
            return Err(Error::DomainMismatch(self.domain, other.domain));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &StarMatrix) -> Result<StarMatrix> {
        self.check_domain(other)?;
        if self.shape() != other.shape() {
            return Err(Error::ShapeMismatch {
                op: "add",
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn try_sub(&self, other: &StarMatrix) -> Result<StarMatrix> {
        self.check_domain(other)?;
        if self.shape() != other.shape() {
            return Err(Error::ShapeMismatch {
                op: "sub",
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(self.zip_with(other, |a, b| a - b))
    }

    pub fn try_mul(&self, other: &StarMatrix) -> Result<StarMatrix> {
        self.check_domain(other)?;
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch {
                op: "mul",
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(self.mul_unchecked(other))
    }

    pub fn try_scale(&self, s: &Scalar) -> Result<StarMatrix> {
        if s.domain() != self.domain {
            return Err(Error::DomainMismatch(self.domain, s.domain()));
        }
        Ok(self.map(|x| x * s))
    }

    /// # Panics
    /// On a domain mismatch.
    pub fn scale(&self, s: &Scalar) -> StarMatrix {
        self.try_scale(s).expect("scalar in matrix domain")
    }

    fn zip_with(&self, other: &StarMatrix, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> StarMatrix {
        StarMatrix {
            rows: self.rows,
            cols: self.cols,
            domain: self.domain,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        }
    }

    fn map(&self, f: impl Fn(&Scalar) -> Scalar) -> StarMatrix {
        StarMatrix {
            rows: self.rows,
            cols: self.cols,
            domain: self.domain,
            data: self.data.iter().map(f).collect(),
        }
    }

    fn mul_unchecked(&self, other: &StarMatrix) -> StarMatrix {
        if self.domain.is_float() {
            return float::mul(self, other);
        }
        let (m, k, n) = (self.rows, self.cols, other.cols);
        let mut data = Vec::with_capacity(m * n);
        for i in 0..m {
            for j in 0..n {
                let mut acc = self.domain.zero();
                for l in 0..k {
                    let a = self.get(i, l);
                    if a.is_zero() {
                        continue;
                    }
                    let b = other.get(l, j);
                    if b.is_zero() {
                        continue;
                    }
                    acc = &acc + &(a * b);
                }
                data.push(acc);
            }
        }
        StarMatrix {
            rows: m,
            cols: n,
            domain: self.domain,
            data,
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> StarMatrix {
        StarMatrix::from_fn(self.domain, self.cols, self.rows, |i, j| self.get(j, i).star())
    }

    /// Plain transpose, no conjugation.
    pub fn transpose(&self) -> StarMatrix {
        StarMatrix::from_fn(self.domain, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// `self^k`, with `self^0 = I`.
    ///
    /// # Panics
    /// If the matrix is not square.
    pub fn pow(&self, k: usize) -> StarMatrix {
        assert!(self.is_square(), "pow of non-square matrix");
        let mut out = StarMatrix::identity(self.domain, self.rows);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data
            .iter()
            .map(|s| {
                let m = s.magnitude();
                m * m
            })
            .sum::<f64>()
            .sqrt()
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &StarMatrix) -> Result<StarMatrix> {
        self.check_domain(other)?;
        if self.rows != other.rows {
            return Err(Error::ShapeMismatch {
                op: "hstack",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let cols = self.cols + other.cols;
        Ok(StarMatrix::from_fn(self.domain, self.rows, cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        }))
    }

    pub fn select_columns(&self, cols: &[usize]) -> StarMatrix {
        StarMatrix::from_fn(self.domain, self.rows, cols.len(), |i, j| {
            self.get(i, cols[j]).clone()
        })
    }

    pub fn select_rows(&self, rows: &[usize]) -> StarMatrix {
        StarMatrix::from_fn(self.domain, rows.len(), self.cols, |i, j| {
            self.get(rows[i], j).clone()
        })
    }

    /// Re-express every entry in `target` (see [`Scalar::convert`]).
    pub fn convert(&self, target: Domain) -> Result<StarMatrix> {
        let data = self
            .data
            .iter()
            .map(|s| s.convert(target))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        StarMatrix::new(target, self.rows, self.cols, data)
    }

    /// Exact equality in exact domains. In the float domain,
    /// `||A - B||_F <= residual_rel_tol * max(||A||_F, ||B||_F, 1)`.
    pub fn approx_eq(&self, other: &StarMatrix, tol: &Tolerance) -> bool {
        if self.shape() != other.shape() || self.domain != other.domain {
            return false;
        }
        if self.domain.is_exact() {
            return self == other;
        }
        let scale = self.frobenius_norm().max(other.frobenius_norm()).max(1.0);
        (self - other).frobenius_norm() <= tol.residual_rel_tol * scale
    }

    /// Relative Frobenius distance `||A - B|| / max(||A||, ||B||)`; zero when
    /// both are negligible.
    pub fn relative_distance(&self, other: &StarMatrix) -> f64 {
        let scale = self.frobenius_norm().max(other.frobenius_norm());
        let diff = (self - other).frobenius_norm();
        if scale < 1e-14 {
            diff
        } else {
            diff / scale
        }
    }

    pub fn rank(&self, tol: &Tolerance) -> Result<usize> {
        match self.domain {
            Domain::ComplexFloat => float::rank(self, tol),
            d if d.is_field() => Ok(exact::rref(self).pivots.len()),
            d => Err(Error::UnsupportedDomain { op: "rank", domain: d }),
        }
    }

    /// Deterministic full-rank factorization. Exact domains take `F` as the
    /// pivot columns of `A` and `G` as the nonzero rows of its reduced row
    /// echelon form; the float domain takes `F = U_r S_r`, `G = V_r^*`.
    pub fn full_rank_factorize(&self, tol: &Tolerance) -> Result<RankFactorization> {
        match self.domain {
            Domain::ComplexFloat => float::factorize(self, tol),
            d if d.is_field() => Ok(exact::factorize(self)),
            d => Err(Error::UnsupportedDomain {
                op: "full_rank_factorize",
                domain: d,
            }),
        }
    }

    /// A particular solution of `self * X = rhs`, or `None` when the system
    /// is inconsistent. Float solutions are minimum-norm and are accepted only
    /// if `||AX - B|| <= residual_rel_tol * (||A|| ||X|| + ||B||)`.
    pub fn solve_right(&self, rhs: &StarMatrix, tol: &Tolerance) -> Result<Option<StarMatrix>> {
        self.check_domain(rhs)?;
        if self.rows != rhs.rows {
            return Err(Error::ShapeMismatch {
                op: "solve_right",
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        match self.domain {
            Domain::ComplexFloat => float::solve_right(self, rhs, tol),
            d if d.is_field() => Ok(exact::solve_right(self, rhs)),
            _ => modular::solve_right(self, rhs),
        }
    }

    /// A particular solution of `X * self = rhs`, or `None`.
    pub fn solve_left(&self, rhs: &StarMatrix, tol: &Tolerance) -> Result<Option<StarMatrix>> {
        self.check_domain(rhs)?;
        if self.cols != rhs.cols {
            return Err(Error::ShapeMismatch {
                op: "solve_left",
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        Ok(self
            .transpose()
            .solve_right(&rhs.transpose(), tol)?
            .map(|x| x.transpose()))
    }

    /// Two-sided inverse of a square matrix, or `None` if singular.
    pub fn inverse(&self, tol: &Tolerance) -> Result<Option<StarMatrix>> {
        self.require_square("inverse")?;
        match self.domain {
            Domain::ComplexFloat => float::inverse(self, tol),
            _ => {
                let id = StarMatrix::identity(self.domain, self.rows);
                // AX = I forces XA = I for square matrices over a commutative ring.
                self.solve_right(&id, tol)
            }
        }
    }

    /// Orthonormal bases `(U_r, V_r)` of the column and row spaces from the
    /// truncated SVD `A = U_r S_r V_r^*` (float domain only).
    pub(crate) fn svd_range_bases(&self, tol: &Tolerance) -> Result<(StarMatrix, StarMatrix)> {
        debug_assert!(self.domain.is_float());
        float::range_bases(self, tol)
    }

    /// Moore-Penrose inverse from the truncated SVD (float domain only).
    pub(crate) fn svd_pinv(&self, tol: &Tolerance) -> Result<StarMatrix> {
        debug_assert!(self.domain.is_float());
        float::pinv(self, tol)
    }

    /// `P = P^2 = P^*`.
    pub fn is_projection(&self, tol: &Tolerance) -> bool {
        if !self.is_square() {
            return false;
        }
        let sq = self * self;
        sq.approx_eq(self, tol) && self.adjoint().approx_eq(self, tol)
    }

    /// `a <=_L b` iff `a = x b` for some `x`; `a <=_R b` iff `a = b y`.
    pub fn leq_left(&self, b: &StarMatrix, tol: &Tolerance) -> Result<bool> {
        Ok(b.solve_left(self, tol)?.is_some())
    }

    pub fn leq_right(&self, b: &StarMatrix, tol: &Tolerance) -> Result<bool> {
        Ok(b.solve_right(self, tol)?.is_some())
    }
}

impl Add for &StarMatrix {
    type Output = StarMatrix;
    fn add(self, rhs: &StarMatrix) -> StarMatrix {
        self.try_add(rhs).expect("conformable matrices")
    }
}

impl Sub for &StarMatrix {
    type Output = StarMatrix;
    fn sub(self, rhs: &StarMatrix) -> StarMatrix {
        self.try_sub(rhs).expect("conformable matrices")
    }
}

impl Mul for &StarMatrix {
    type Output = StarMatrix;
    fn mul(self, rhs: &StarMatrix) -> StarMatrix {
        self.try_mul(rhs).expect("conformable matrices")
    }
}

impl Neg for &StarMatrix {
    type Output = StarMatrix;
    fn neg(self) -> StarMatrix {
        self.map(|x| -x)
    }
}

impl fmt::Display for StarMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Product of a nonempty list of conformable matrices.
pub fn product(factors: &[&StarMatrix]) -> StarMatrix {
    let (first, rest) = factors.split_first().expect("at least one factor");
    rest.iter().fold((*first).clone(), |acc, m| &acc * m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(rows: usize, cols: usize, v: &[i64]) -> StarMatrix {
        StarMatrix::from_i64(Domain::Rational, rows, cols, v)
    }

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn adjoint_of_nilpotent() {
        let n = q(2, 2, &[0, 1, 0, 0]);
        assert_eq!(n.adjoint(), q(2, 2, &[0, 0, 1, 0]));
    }

    #[test]
    fn product_example() {
        let a = q(2, 2, &[3, 6, 1, 0]);
        let b = q(2, 2, &[0, 1, 0, 0]);
        assert_eq!(&a * &b, q(2, 2, &[0, 3, 0, 1]));
    }

    #[test]
    fn shape_and_domain_errors() {
        let a = q(2, 3, &[1, 2, 3, 4, 5, 6]);
        assert!(matches!(a.try_mul(&a), Err(Error::ShapeMismatch { .. })));
        let b = StarMatrix::from_i64(Domain::PrimeField(5), 2, 3, &[0; 6]);
        assert!(matches!(a.try_add(&b), Err(Error::DomainMismatch(..))));
    }

    #[test]
    fn ranks() {
        assert_eq!(q(2, 2, &[0, 1, 0, 0]).rank(&tol()).unwrap(), 1);
        assert_eq!(StarMatrix::identity(Domain::Rational, 3).rank(&tol()).unwrap(), 3);
        assert_eq!(q(2, 2, &[1, 2, 2, 4]).rank(&tol()).unwrap(), 1);
        assert_eq!(q(2, 2, &[0, 0, 0, 0]).rank(&tol()).unwrap(), 0);
        let c = q(2, 2, &[1, 2, 2, 4]).convert(Domain::ComplexFloat).unwrap();
        assert_eq!(c.rank(&tol()).unwrap(), 1);
        let z6 = StarMatrix::from_i64(Domain::IntegerMod(6), 1, 1, &[3]);
        assert!(z6.rank(&tol()).is_err());
    }

    #[test]
    fn factorize_examples() {
        let n = q(2, 2, &[0, 1, 0, 0]);
        let rf = n.full_rank_factorize(&tol()).unwrap();
        assert_eq!(rf.f, q(2, 1, &[1, 0]));
        assert_eq!(rf.g, q(1, 2, &[0, 1]));
        let z = q(2, 3, &[0; 6]);
        let rf = z.full_rank_factorize(&tol()).unwrap();
        assert_eq!(rf.rank, 0);
        assert_eq!(rf.f.shape(), (2, 0));
        assert_eq!(rf.g.shape(), (0, 3));
        let i = StarMatrix::identity(Domain::Rational, 2);
        let rf = i.full_rank_factorize(&tol()).unwrap();
        assert_eq!(rf.f, i);
        assert_eq!(rf.g, i);
    }

    #[test]
    fn solve_examples() {
        let i = StarMatrix::identity(Domain::Rational, 2);
        let b = q(2, 2, &[5, -1, 2, 7]);
        assert_eq!(i.solve_right(&b, &tol()).unwrap().unwrap(), b);

        let n = q(2, 2, &[0, 1, 0, 0]);
        let x = n.solve_right(&n, &tol()).unwrap().unwrap();
        assert_eq!(x, q(2, 2, &[0, 0, 0, 1]));
        assert_eq!(&n * &x, n);

        let zero = q(2, 2, &[0; 4]);
        assert!(zero.solve_right(&b, &tol()).unwrap().is_none());
    }

    #[test]
    fn solve_left_example() {
        let a = q(2, 2, &[1, 2, 0, 0]);
        let b = q(1, 2, &[3, 6]);
        let x = a.solve_left(&b, &tol()).unwrap().unwrap();
        assert_eq!(&x * &a, b);
        assert!(a.solve_left(&q(1, 2, &[0, 1]), &tol()).unwrap().is_none());
    }

    #[test]
    fn projections() {
        assert!(q(2, 2, &[1, 0, 0, 0]).is_projection(&tol()));
        assert!(!q(2, 2, &[1, 1, 0, 0]).is_projection(&tol()));
        assert!(StarMatrix::identity(Domain::Rational, 3).is_projection(&tol()));
    }

    #[test]
    fn modular_solve_and_inverse() {
        let r = Domain::IntegerMod(6);
        let a = StarMatrix::from_i64(r, 1, 1, &[3]);
        let x = a.solve_right(&a, &tol()).unwrap().unwrap();
        assert_eq!(&a * &x, a);
        assert!(a.inverse(&tol()).unwrap().is_none());
        let u = StarMatrix::from_i64(r, 2, 2, &[1, 2, 0, 5]);
        let ui = u.inverse(&tol()).unwrap().unwrap();
        assert_eq!(&u * &ui, StarMatrix::identity(r, 2));
    }

    #[test]
    fn float_inverse_and_singular() {
        let a = q(2, 2, &[2, 1, 1, 1]).convert(Domain::ComplexFloat).unwrap();
        let ai = a.inverse(&tol()).unwrap().unwrap();
        assert!((&a * &ai).approx_eq(&StarMatrix::identity(Domain::ComplexFloat, 2), &tol()));
        let s = q(2, 2, &[1, 2, 2, 4]).convert(Domain::ComplexFloat).unwrap();
        assert!(s.inverse(&tol()).unwrap().is_none());
    }
}
