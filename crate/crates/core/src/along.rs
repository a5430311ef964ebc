//! Inverses along an element, (b,c)-inverses, Green's preorders and the
//! Jacobson partner.

use crate::certificate::{env, finish, witnesses, InverseKind, InverseResult, Outcome};
use crate::classical::group_inverse;
use crate::error::{Error, Result};
use crate::exists_or_return;
use crate::matrix::{StarMatrix, Tolerance};
use crate::regular::inner_inverse;
use crate::word::Green;

pub fn green_leq(a: &StarMatrix, b: &StarMatrix, relation: Green, tol: &Tolerance) -> Result<bool> {
    if a.shape() != b.shape() {
        return Err(Error::ShapeMismatch {
            op: "green_leq",
            left: a.shape(),
            right: b.shape(),
        });
    }
    Ok(match relation {
        Green::L => a.leq_left(b, tol)?,
        Green::R => a.leq_right(b, tol)?,
        Green::H => a.leq_left(b, tol)? && a.leq_right(b, tol)?,
    })
}

fn along_ops(a: &StarMatrix, d: &StarMatrix) -> crate::certificate::Env {
    env(&[('a', a), ('d', d)])
}

fn check_pair(a: &StarMatrix, d: &StarMatrix) -> Result<()> {
    a.require_square("inverse_along")?;
    if a.shape() != d.shape() {
        return Err(Error::ShapeMismatch {
            op: "inverse_along",
            left: a.shape(),
            right: d.shape(),
        });
    }
    Ok(())
}

/// `a^∥d = d x = y d` where `d = d a d x = y d a d`. Floats use the SVD
/// `d = U S V^*` instead: `a^∥d = U (V^* a U)^{-1} V^*`.
pub fn inverse_along(a: &StarMatrix, d: &StarMatrix, tol: &Tolerance) -> Result<Outcome<InverseResult>> {
    check_pair(a, d)?;
    if a.domain().is_float() {
        return inverse_along_float(a, d, tol);
    }
    let dad = &(d * a) * d;
    let Some(x) = dad.solve_right(d, tol)? else {
        return Ok(Outcome::NotExists("d is not in dad S".into()));
    };
    let Some(y) = dad.solve_left(d, tol)? else {
        return Ok(Outcome::NotExists("d is not in S dad".into()));
    };
    let value = d * &x;
    if value != &y * d {
        return Err(Error::InvariantViolation("dx and yd differ for the inverse along d".into()));
    }
    finish(
        InverseKind::Along,
        &along_ops(a, d),
        value,
        None,
        "green_solve",
        witnesses(vec![("x", x), ("y", y)]),
        tol,
    )
    .map(Outcome::Exists)
}

/// `U (V^* a U)^{-1} V^*` for `d = U S V^*`, with the compressed matrix, or
/// `None` when it is singular.
pub(crate) fn svd_compression(
    a: &StarMatrix,
    d: &StarMatrix,
    tol: &Tolerance,
) -> Result<Option<(StarMatrix, StarMatrix)>> {
    let (u, v) = d.svd_range_bases(tol)?;
    let compressed = &(&v.adjoint() * a) * &u;
    Ok(compressed
        .inverse(tol)?
        .map(|inv| (&(&u * &inv) * &v.adjoint(), compressed)))
}

fn inverse_along_float(a: &StarMatrix, d: &StarMatrix, tol: &Tolerance) -> Result<Outcome<InverseResult>> {
    let Some((value, compressed)) = svd_compression(a, d, tol)? else {
        return Ok(Outcome::NotExists("V^* a U is singular for d = U S V^*".into()));
    };
    finish(
        InverseKind::Along,
        &along_ops(a, d),
        value,
        None,
        "svd_compression",
        witnesses(vec![("m", compressed)]),
        tol,
    )
    .map(Outcome::Exists)
}

/// `a^∥d = u^{-1} d = d v^{-1}` with `u = da + 1 - d d^-`, `v = ad + 1 - d^- d`.
pub fn inverse_along_via_unit(
    a: &StarMatrix,
    d: &StarMatrix,
    d_inner: &StarMatrix,
    tol: &Tolerance,
) -> Result<Outcome<InverseResult>> {
    check_pair(a, d)?;
    if !(&(d * d_inner) * d).approx_eq(d, tol) {
        return Err(Error::PreconditionFailed("d_inner is not an inner inverse of d".into()));
    }
    let id = StarMatrix::identity(a.domain(), a.rows());
    let u = &(&(d * a) + &id) - &(d * d_inner);
    let v = &(&(a * d) + &id) - &(d_inner * d);
    let u_inv = u.inverse(tol)?;
    let v_inv = v.inverse(tol)?;
    let (u_inv, v_inv) = match (u_inv, v_inv) {
        (Some(ui), Some(vi)) => (ui, vi),
        (None, None) => return Ok(Outcome::NotExists("u = da + 1 - dd^- is not invertible".into())),
        (ui, _) => {
            let msg = format!(
                "u invertible: {}, v invertible: {}",
                ui.is_some(),
                ui.is_none()
            );
            if a.domain().is_exact() {
                return Err(Error::InvariantViolation(msg));
            }
            return Ok(Outcome::NotExists(format!("borderline units ({msg})")));
        }
    };
    let value = &u_inv * d;
    if !value.approx_eq(&(d * &v_inv), tol) {
        return Err(Error::InvariantViolation("u^{-1} d and d v^{-1} differ".into()));
    }
    finish(
        InverseKind::Along,
        &along_ops(a, d),
        value,
        None,
        "unit",
        witnesses(vec![("u", u), ("v", v)]),
        tol,
    )
    .map(Outcome::Exists)
}

/// `1^∥a = a a^#`.
pub fn one_along_a(a: &StarMatrix, tol: &Tolerance) -> Result<Outcome<StarMatrix>> {
    let g = exists_or_return!(group_inverse(a, tol)?, "no group inverse");
    let value = a * &g.value;
    let id = StarMatrix::identity(a.domain(), a.rows());
    let along = inverse_along(&id, a, tol)?;
    match along.value() {
        Some(r) if r.value.approx_eq(&value, tol) => Ok(Outcome::Exists(value)),
        _ => Err(Error::InvariantViolation("a a^# differs from 1 along a".into())),
    }
}

/// `w^∥a = a (wa)^# = (aw)^# a`.
pub fn group_formula_along(w: &StarMatrix, a: &StarMatrix, tol: &Tolerance) -> Result<Outcome<StarMatrix>> {
    check_pair(w, a)?;
    let aw = a * w;
    let wa = w * a;
    let right = aw.solve_right(a, tol)?.is_some();
    let left = wa.solve_left(a, tol)?.is_some();
    let g_aw = group_inverse(&aw, tol)?.into_value();
    let g_wa = group_inverse(&wa, tol)?.into_value();
    let via_aw = (right && g_aw.is_some()).then(|| &g_aw.as_ref().expect("checked").value * a);
    let via_wa = (left && g_wa.is_some()).then(|| a * &g_wa.as_ref().expect("checked").value);
    match (via_aw, via_wa) {
        (Some(p), Some(q)) => {
            if !p.approx_eq(&q, tol) {
                return Err(Error::InvariantViolation("a(wa)^# and (aw)^# a differ".into()));
            }
            Ok(Outcome::Exists(q))
        }
        (None, None) => Ok(Outcome::NotExists(
            "neither aw R a with aw group invertible nor wa L a with wa group invertible".into(),
        )),
        _ if a.domain().is_float() => Ok(Outcome::NotExists("borderline group invertibility".into())),
        _ => Err(Error::InvariantViolation(
            "the two group-inverse criteria for w along a disagree".into(),
        )),
    }
}

/// The (b,c)-inverse `y = b (cab)^- c`, existing iff
/// `rank(cab) = rank(b) = rank(c)`.
pub fn bc_inverse(
    a: &StarMatrix,
    b: &StarMatrix,
    c: &StarMatrix,
    tol: &Tolerance,
) -> Result<Outcome<InverseResult>> {
    a.require_square("bc_inverse")?;
    for m in [b, c] {
        if m.shape() != a.shape() {
            return Err(Error::ShapeMismatch {
                op: "bc_inverse",
                left: a.shape(),
                right: m.shape(),
            });
        }
    }
    if !a.domain().is_field() {
        return Err(Error::UnsupportedDomain {
            op: "bc_inverse",
            domain: a.domain(),
        });
    }
    let cab = &(c * a) * b;
    let (rc, rb, rcab) = (c.rank(tol)?, b.rank(tol)?, cab.rank(tol)?);
    if !(rcab == rb && rb == rc) {
        return Ok(Outcome::NotExists(format!(
            "rank(cab) = {rcab}, rank(b) = {rb}, rank(c) = {rc}"
        )));
    }
    let inner = inner_inverse(&cab, tol)?.value;
    let value = &(b * &inner) * c;
    finish(
        InverseKind::Bc,
        &env(&[('a', a), ('b', b), ('c', c)]),
        value,
        None,
        "rank_inner",
        witnesses(vec![("cab_inner", inner)]),
        tol,
    )
    .map(Outcome::Exists)
}

/// `(1 - ba)^{-1} = 1 + b (1 - ab)^{-1} a`.
pub fn jacobson_partner(
    a: &StarMatrix,
    b: &StarMatrix,
    alpha_inv: &StarMatrix,
    tol: &Tolerance,
) -> Result<StarMatrix> {
    let ab = a.try_mul(b)?;
    let ba = b.try_mul(a)?;
    let id_m = StarMatrix::identity(a.domain(), ab.rows());
    let id_n = StarMatrix::identity(a.domain(), ba.rows());
    let alpha = &id_m - &ab;
    let ok = alpha_inv
        .try_mul(&alpha)
        .map(|p| p.approx_eq(&id_m, tol))
        .unwrap_or(false)
        && alpha
            .try_mul(alpha_inv)
            .map(|p| p.approx_eq(&id_m, tol))
            .unwrap_or(false);
    if !ok {
        return Err(Error::PreconditionFailed("alpha_inv is not the inverse of 1 - ab".into()));
    }
    let beta_inv = &id_n + &(&(b * alpha_inv) * a);
    let beta = &id_n - &ba;
    if !((&beta * &beta_inv).approx_eq(&id_n, tol) && (&beta_inv * &beta).approx_eq(&id_n, tol)) {
        return Err(Error::InvariantViolation("Jacobson partner is not an inverse".into()));
    }
    Ok(beta_inv)
}
