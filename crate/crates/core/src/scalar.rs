//! Scalar *-rings: exact rationals, Gaussian rationals, residue rings and
//! double-precision complex numbers.
//!
//! Every [`Scalar`] carries enough information to recover its [`Domain`], so
//! mixing values from different domains is detected at runtime rather than
//! silently coerced.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("domain mismatch: {left} vs {right}")]
    DomainMismatch { left: Domain, right: Domain },
    #[error("{0} is not invertible")]
    NotInvertible(String),
    #[error("invalid modulus {0}: {1}")]
    InvalidModulus(u64, &'static str),
    #[error("cannot parse scalar: {0}")]
    Parse(String),
}

/// The involution carried by a domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Involution {
    Identity,
    Conjugation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Domain {
    Rational,
    GaussianRational,
    /// GF(p), p prime.
    PrimeField(u64),
    /// Z/nZ, n >= 2. Not a field unless n happens to be prime.
    IntegerMod(u64),
    ComplexFloat,
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Rational => write!(f, "Q"),
            Domain::GaussianRational => write!(f, "Q(i)"),
            Domain::PrimeField(p) => write!(f, "GF({p})"),
            Domain::IntegerMod(n) => write!(f, "Z/{n}Z"),
            Domain::ComplexFloat => write!(f, "C(f64)"),
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Domain {
    pub fn prime_field(p: u64) -> Result<Self, ScalarError> {
        if !is_prime(p) {
            return Err(ScalarError::InvalidModulus(p, "prime field modulus must be prime"));
        }
        Ok(Domain::PrimeField(p))
    }

    pub fn integer_mod(n: u64) -> Result<Self, ScalarError> {
        if n < 2 {
            return Err(ScalarError::InvalidModulus(n, "modulus must be at least 2"));
        }
        if n > u32::MAX as u64 {
            return Err(ScalarError::InvalidModulus(n, "modulus too large"));
        }
        Ok(Domain::IntegerMod(n))
    }

    pub fn involution(self) -> Involution {
        match self {
            Domain::GaussianRational | Domain::ComplexFloat => Involution::Conjugation,
            _ => Involution::Identity,
        }
    }

    pub fn is_exact(self) -> bool {
        !matches!(self, Domain::ComplexFloat)
    }

    pub fn is_float(self) -> bool {
        matches!(self, Domain::ComplexFloat)
    }

    /// Whether every nonzero element is invertible.
    pub fn is_field(self) -> bool {
        match self {
            Domain::IntegerMod(n) => is_prime(n),
            _ => true,
        }
    }

    /// Whether `x* x = 0` forces `x = 0` for vectors over this domain, i.e.
    /// conjugate transpose behaves like the adjoint of an inner product.
    /// Rank criteria that rely on `rank(A* A) = rank(A)` only hold here.
    pub fn has_positive_involution(self) -> bool {
        matches!(
            self,
            Domain::Rational | Domain::GaussianRational | Domain::ComplexFloat
        )
    }

    pub fn modulus(self) -> Option<u64> {
        match self {
            Domain::PrimeField(p) => Some(p),
            Domain::IntegerMod(n) => Some(n),
            _ => None,
        }
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, v: i64) -> Scalar {
        match self {
            Domain::Rational => Scalar::Rational(BigRational::from_integer(v.into())),
            Domain::GaussianRational => Scalar::Gaussian(Gaussian::new(
                BigRational::from_integer(v.into()),
                BigRational::zero(),
            )),
            Domain::PrimeField(m) | Domain::IntegerMod(m) => {
                let r = v.rem_euclid(m as i64) as u64;
                Scalar::Residue(Residue { value: r, domain: self })
            }
            Domain::ComplexFloat => Scalar::Complex(Complex64::new(v as f64, 0.0)),
        }
    }
}

/// An element of Q(i), stored as a pair of reduced rationals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Gaussian {
    pub re: BigRational,
    pub im: BigRational,
}

impl Gaussian {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Gaussian { re, im }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        Gaussian::new(
            BigRational::from_integer(re.into()),
            BigRational::from_integer(im.into()),
        )
    }

    fn norm_sq(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }
}

/// A canonical residue in `[0, modulus)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Residue {
    pub value: u64,
    pub domain: Domain,
}

impl Residue {
    fn modulus(&self) -> u64 {
        self.domain.modulus().expect("residue domain has a modulus")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Rational(BigRational),
    Gaussian(Gaussian),
    Residue(Residue),
    Complex(Complex64),
}

pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Inverse of `x` modulo `m`, if `gcd(x, m) = 1`.
pub fn mod_inverse(x: u64, m: u64) -> Option<u64> {
    let e = (x as i128).extended_gcd(&(m as i128));
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(m as i128) as u64)
}

impl Scalar {
    pub fn domain(&self) -> Domain {
        match self {
            Scalar::Rational(_) => Domain::Rational,
            Scalar::Gaussian(_) => Domain::GaussianRational,
            Scalar::Residue(r) => r.domain,
            Scalar::Complex(_) => Domain::ComplexFloat,
        }
    }

    pub fn complex(re: f64, im: f64) -> Scalar {
        Scalar::Complex(Complex64::new(re, im))
    }

    pub fn gaussian(re: BigRational, im: BigRational) -> Scalar {
        Scalar::Gaussian(Gaussian::new(re, im))
    }

    fn check_same(&self, other: &Scalar) -> Result<(), ScalarError> {
        let (l, r) = (self.domain(), other.domain());
        if l != r {
            return Err(ScalarError::DomainMismatch { left: l, right: r });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check_same(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Gaussian(a), Scalar::Gaussian(b)) => {
                Scalar::gaussian(&a.re + &b.re, &a.im + &b.im)
            }
            (Scalar::Residue(a), Scalar::Residue(b)) => {
                let m = a.modulus();
                let v = ((a.value as u128 + b.value as u128) % m as u128) as u64;
                Scalar::Residue(Residue { value: v, domain: a.domain })
            }
            (Scalar::Complex(a), Scalar::Complex(b)) => Scalar::Complex(a + b),
            _ => unreachable!("domains checked"),
        })
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check_same(other)?;
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check_same(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Gaussian(a), Scalar::Gaussian(b)) => Scalar::gaussian(
                &a.re * &b.re - &a.im * &b.im,
                &a.re * &b.im + &a.im * &b.re,
            ),
            (Scalar::Residue(a), Scalar::Residue(b)) => {
                let m = a.modulus();
                let v = ((a.value as u128 * b.value as u128) % m as u128) as u64;
                Scalar::Residue(Residue { value: v, domain: a.domain })
            }
            (Scalar::Complex(a), Scalar::Complex(b)) => Scalar::Complex(a * b),
            _ => unreachable!("domains checked"),
        })
    }

    pub fn try_div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check_same(other)?;
        self.try_mul(&other.inv()?)
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Gaussian(a) => Scalar::gaussian(-&a.re, -&a.im),
            Scalar::Residue(a) => {
                let m = a.modulus();
                Scalar::Residue(Residue { value: (m - a.value) % m, domain: a.domain })
            }
            Scalar::Complex(a) => Scalar::Complex(-a),
        }
    }

    /// Multiplicative inverse. Fails on zero, and on zero-divisors in Z/nZ.
    /// In the float domain only an exact zero is rejected.
    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::NotInvertible(self.to_string()));
        }
        match self {
            Scalar::Rational(a) => Ok(Scalar::Rational(a.recip())),
            Scalar::Gaussian(a) => {
                let n = a.norm_sq();
                Ok(Scalar::gaussian(&a.re / &n, -&a.im / &n))
            }
            Scalar::Residue(a) => mod_inverse(a.value, a.modulus())
                .map(|v| Scalar::Residue(Residue { value: v, domain: a.domain }))
                .ok_or_else(|| ScalarError::NotInvertible(self.to_string())),
            Scalar::Complex(a) => Ok(Scalar::Complex(a.inv())),
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.inv().is_ok()
    }

    /// The domain involution: complex conjugation or the identity.
    pub fn star(&self) -> Scalar {
        match self {
            Scalar::Gaussian(a) => Scalar::gaussian(a.re.clone(), -&a.im),
            Scalar::Complex(a) => Scalar::Complex(a.conj()),
            other => other.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(a) => a.is_zero(),
            Scalar::Gaussian(a) => a.re.is_zero() && a.im.is_zero(),
            Scalar::Residue(a) => a.value == 0,
            Scalar::Complex(a) => a.re == 0.0 && a.im == 0.0,
        }
    }

    /// Magnitude used for norms. Residues have no absolute value; a nonzero
    /// residue counts as 1 so that norms of residue matrices count support.
    pub fn magnitude(&self) -> f64 {
        match self {
            Scalar::Rational(a) => rat_to_f64(a).abs(),
            Scalar::Gaussian(a) => rat_to_f64(&a.re).hypot(rat_to_f64(&a.im)),
            Scalar::Residue(a) => {
                if a.value == 0 {
                    0.0
                } else {
                    1.0
                }
            }
            Scalar::Complex(a) => a.norm(),
        }
    }

    /// Lossy conversion to a complex float.
    pub fn to_complex(&self) -> Complex64 {
        match self {
            Scalar::Rational(a) => Complex64::new(rat_to_f64(a), 0.0),
            Scalar::Gaussian(a) => Complex64::new(rat_to_f64(&a.re), rat_to_f64(&a.im)),
            Scalar::Residue(a) => Complex64::new(a.value as f64, 0.0),
            Scalar::Complex(a) => *a,
        }
    }

    /// Re-express this value in `target`. Rationals map into every domain
    /// (denominators must be invertible modulo the target modulus), Gaussian
    /// rationals map into the complex domains, residues lift to integers.
    pub fn convert(&self, target: Domain) -> Result<Scalar, ScalarError> {
        if self.domain() == target {
            return Ok(self.clone());
        }
        let not_representable =
            || ScalarError::Parse(format!("{} cannot be represented in {}", self, target));
        match (self, target) {
            (Scalar::Rational(a), Domain::Rational) => Ok(Scalar::Rational(a.clone())),
            (Scalar::Rational(a), Domain::GaussianRational) => {
                Ok(Scalar::gaussian(a.clone(), BigRational::zero()))
            }
            (Scalar::Rational(a), Domain::PrimeField(m) | Domain::IntegerMod(m)) => {
                let num = bigint_mod(a.numer(), m);
                let den = bigint_mod(a.denom(), m);
                let den_inv = mod_inverse(den, m).ok_or_else(not_representable)?;
                let v = ((num as u128 * den_inv as u128) % m as u128) as u64;
                Ok(Scalar::Residue(Residue { value: v, domain: target }))
            }
            (Scalar::Rational(_) | Scalar::Gaussian(_), Domain::ComplexFloat) => {
                Ok(Scalar::Complex(self.to_complex()))
            }
            (Scalar::Gaussian(g), _) if g.im.is_zero() => {
                Scalar::Rational(g.re.clone()).convert(target)
            }
            (Scalar::Residue(r), _) => {
                Scalar::Rational(BigRational::from_integer(r.value.into())).convert(target)
            }
            _ => Err(not_representable()),
        }
    }
}

fn bigint_mod(x: &BigInt, m: u64) -> u64 {
    let r = x.mod_floor(&BigInt::from(m));
    r.to_u64().expect("reduced residue fits")
}

pub fn rat_to_f64(a: &BigRational) -> f64 {
    a.to_f64().unwrap_or_else(|| {
        // Huge numerators/denominators: fall back to a scaled quotient.
        let n = a.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = a.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

fn fmt_rational(a: &BigRational) -> String {
    if a.is_integer() {
        a.numer().to_string()
    } else {
        format!("{}/{}", a.numer(), a.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(a) => write!(f, "{}", fmt_rational(a)),
            Scalar::Gaussian(a) => {
                if a.im.is_zero() {
                    write!(f, "{}", fmt_rational(&a.re))
                } else if a.re.is_zero() {
                    write!(f, "{}i", fmt_rational(&a.im))
                } else if a.im.is_negative() {
                    write!(f, "{}-{}i", fmt_rational(&a.re), fmt_rational(&-&a.im))
                } else {
                    write!(f, "{}+{}i", fmt_rational(&a.re), fmt_rational(&a.im))
                }
            }
            Scalar::Residue(a) => write!(f, "{}", a.value),
            Scalar::Complex(a) => write!(f, "{}", a),
        }
    }
}

/// Parse "p", "-p" or "p/q" into a reduced rational.
pub fn parse_rational(s: &str) -> Result<BigRational, ScalarError> {
    let bad = || ScalarError::Parse(s.to_string());
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

// Operator impls for same-domain arithmetic inside matrix kernels, where the
// matrix invariant already guarantees a shared domain. Mismatches panic.

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.try_add(rhs).expect("scalar domains agree")
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.try_sub(rhs).expect("scalar domains agree")
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.try_mul(rhs).expect("scalar domains agree")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

impl Scalar {
    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(a) => a.is_one(),
            Scalar::Gaussian(a) => a.re.is_one() && a.im.is_zero(),
            Scalar::Residue(a) => a.value == 1,
            Scalar::Complex(a) => a.re == 1.0 && a.im == 0.0,
        }
    }
}
