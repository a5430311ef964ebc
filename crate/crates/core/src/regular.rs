//! Inner, {1,3}, {1,4} and Moore-Penrose inverses.

use crate::certificate::{env, finish, witnesses, InverseKind, InverseResult, Outcome};
use crate::error::{Error, Result};
use crate::matrix::{StarMatrix, Tolerance};

/// Deterministic inner inverse `G^R F^L` from the full-rank factorization
/// `a = F G`, where `F^L F = I` and `G G^R = I`.
pub fn inner_inverse(a: &StarMatrix, tol: &Tolerance) -> Result<InverseResult> {
    if !a.domain().is_field() {
        return Err(Error::UnsupportedDomain {
            op: "inner_inverse",
            domain: a.domain(),
        });
    }
    let rf = a.full_rank_factorize(tol)?;
    let id = StarMatrix::identity(a.domain(), rf.rank);
    let f_left = rf
        .f
        .solve_left(&id, tol)?
        .ok_or_else(|| Error::InvariantViolation("factor F lacks a left inverse".into()))?;
    let g_right = rf
        .g
        .solve_right(&id, tol)?
        .ok_or_else(|| Error::InvariantViolation("factor G lacks a right inverse".into()))?;
    let value = &g_right * &f_left;
    finish(
        InverseKind::Inner,
        &env(&[('a', a)]),
        value,
        None,
        "rank_factorization",
        witnesses(vec![("F", rf.f), ("G", rf.g)]),
        tol,
    )
}

/// `x^*` where `x a^* a = a`.
pub fn one_three_inverse(a: &StarMatrix, tol: &Tolerance) -> Result<Outcome<InverseResult>> {
    let gram = &a.adjoint() * a;
    let Some(x) = gram.solve_left(a, tol)? else {
        return Ok(Outcome::NotExists("a is not in S a*a".into()));
    };
    let value = x.adjoint();
    finish(
        InverseKind::OneThree,
        &env(&[('a', a)]),
        value,
        None,
        "solve_left",
        witnesses(vec![("x", x)]),
        tol,
    )
    .map(Outcome::Exists)
}

/// `y^*` where `a a^* y = a`.
pub fn one_four_inverse(a: &StarMatrix, tol: &Tolerance) -> Result<Outcome<InverseResult>> {
    let gram = a * &a.adjoint();
    let Some(y) = gram.solve_right(a, tol)? else {
        return Ok(Outcome::NotExists("a is not in a a* S".into()));
    };
    let value = y.adjoint();
    finish(
        InverseKind::OneFour,
        &env(&[('a', a)]),
        value,
        None,
        "solve_right",
        witnesses(vec![("y", y)]),
        tol,
    )
    .map(Outcome::Exists)
}

/// Moore-Penrose inverse. Floats use the truncated SVD; exact domains solve
/// `a = y a a^* a` and `a = a a^* a x` and return `(y a)^*`.
pub fn mp_inverse(a: &StarMatrix, tol: &Tolerance) -> Result<Outcome<InverseResult>> {
    let ops = env(&[('a', a)]);
    if a.domain().is_float() {
        let value = a.svd_pinv(tol)?;
        return finish(InverseKind::MoorePenrose, &ops, value, None, "svd", Default::default(), tol)
            .map(Outcome::Exists);
    }
    let core = &(a * &a.adjoint()) * a;
    let Some(y) = core.solve_left(a, tol)? else {
        return Ok(Outcome::NotExists("a is not in S a a* a".into()));
    };
    let Some(x) = core.solve_right(a, tol)? else {
        return Ok(Outcome::NotExists("a is not in a a* a S".into()));
    };
    let value = (&y * a).adjoint();
    if value != (a * &x).adjoint() {
        return Err(Error::InvariantViolation(
            "(ya)* and (ax)* differ for the Moore-Penrose inverse".into(),
        ));
    }
    finish(
        InverseKind::MoorePenrose,
        &ops,
        value,
        None,
        "ideal_solve",
        witnesses(vec![("x", x), ("y", y)]),
        tol,
    )
    .map(Outcome::Exists)
}

/// The Moore-Penrose inverse when it exists, else the solve-based
/// {1,3}-inverse.
pub fn canonical_one_three(a: &StarMatrix, tol: &Tolerance) -> Result<Outcome<StarMatrix>> {
    if let Outcome::Exists(r) = mp_inverse(a, tol)? {
        return Ok(Outcome::Exists(r.value));
    }
    Ok(one_three_inverse(a, tol)?.map(|r| r.value))
}

/// Dual of [`canonical_one_three`].
pub fn canonical_one_four(a: &StarMatrix, tol: &Tolerance) -> Result<Outcome<StarMatrix>> {
    if let Outcome::Exists(r) = mp_inverse(a, tol)? {
        return Ok(Outcome::Exists(r.value));
    }
    Ok(one_four_inverse(a, tol)?.map(|r| r.value))
}

/// `(u^{-1} a)^*` with `u = a a^* + 1 - a a^-`. A singular `u` means `a` has
/// no Moore-Penrose inverse.
pub fn mp_via_unit(
    a: &StarMatrix,
    a_inner: &StarMatrix,
    tol: &Tolerance,
) -> Result<Outcome<InverseResult>> {
    let aia = &(a * a_inner) * a;
    if !aia.approx_eq(a, tol) {
        return Err(Error::PreconditionFailed("a_inner is not an inner inverse of a".into()));
    }
    let id = StarMatrix::identity(a.domain(), a.rows());
    let u = &(&(a * &a.adjoint()) + &id) - &(a * a_inner);
    let Some(u_inv) = u.inverse(tol)? else {
        return Ok(Outcome::NotExists("u = aa* + 1 - aa^- is not invertible".into()));
    };
    let value = (&u_inv * a).adjoint();
    finish(
        InverseKind::MoorePenrose,
        &env(&[('a', a)]),
        value,
        None,
        "unit",
        witnesses(vec![("u", u)]),
        tol,
    )
    .map(Outcome::Exists)
}
