//! Group, Drazin, core, dual-core and core-EP inverses.

use crate::along::svd_compression;
use crate::certificate::{env, finish, witnesses, InverseKind, InverseResult, Outcome};
use crate::error::{Error, Result};
use crate::exists_or_return;
use crate::matrix::{StarMatrix, Tolerance};
use crate::regular::{canonical_one_four, canonical_one_three};

/// `a^# = y a x` where `a = a^2 x = y a^2`; floats compress onto the SVD
/// bases of `a` instead, since `a^# = a^∥a`.
pub fn group_inverse(a: &StarMatrix, tol: &Tolerance) -> Result<Outcome<InverseResult>> {
    a.require_square("group_inverse")?;
    if a.domain().is_float() {
        let Some((value, compressed)) = svd_compression(a, a, tol)? else {
            return Ok(Outcome::NotExists("a is not invertible on its range".into()));
        };
        return finish(
            InverseKind::Group,
            &env(&[('a', a)]),
            value,
            None,
            "svd_compression",
            witnesses(vec![("m", compressed)]),
            tol,
        )
        .map(Outcome::Exists);
    }
    let a2 = a * a;
    let Some(x) = a2.solve_right(a, tol)? else {
        return Ok(Outcome::NotExists("a is not in a^2 S".into()));
    };
    let Some(y) = a2.solve_left(a, tol)? else {
        return Ok(Outcome::NotExists("a is not in S a^2".into()));
    };
    let value = &(&y * a) * &x;
    finish(
        InverseKind::Group,
        &env(&[('a', a)]),
        value,
        None,
        "ideal_solve",
        witnesses(vec![("x", x), ("y", y)]),
        tol,
    )
    .map(Outcome::Exists)
}

/// Smallest `k >= 1` with `a^k` in `a^{k+1} S ∩ S a^{k+1}`. Over fields this
/// is the first `k` with `rank(a^k) = rank(a^{k+1})`.
pub fn drazin_index(a: &StarMatrix, tol: &Tolerance) -> Result<usize> {
    a.require_square("drazin_index")?;
    let n = a.rows();
    if a.domain().is_field() {
        let mut prev = a.clone();
        let mut prev_rank = prev.rank(tol)?;
        for k in 1..=n.max(1) {
            let next = &prev * a;
            let next_rank = next.rank(tol)?;
            if next_rank == prev_rank {
                return Ok(k);
            }
            prev = next;
            prev_rank = next_rank;
        }
        return Ok(n.max(1));
    }
    // Nilpotent parts over Z/mZ can need up to n * log2(m) steps.
    let bits = 64 - a.domain().modulus().expect("residue ring").leading_zeros() as usize;
    let cap = n * bits + 1;
    let mut ak = a.clone();
    for k in 1..=cap {
        let next = &ak * a;
        if next.solve_right(&ak, tol)?.is_some() && next.solve_left(&ak, tol)?.is_some() {
            return Ok(k);
        }
        ak = next;
    }
    Err(Error::InvariantViolation(format!(
        "no Drazin index up to {cap} in a finite ring"
    )))
}

/// `a^D = a^{k-1} (a^k)^#` with `k` the Drazin index.
pub fn drazin_inverse(a: &StarMatrix, tol: &Tolerance) -> Result<InverseResult> {
    let k = drazin_index(a, tol)?;
    let ak = a.pow(k);
    let g = match group_inverse(&ak, tol)? {
        Outcome::Exists(r) => r.value,
        Outcome::NotExists(r) => {
            return Err(Error::InvariantViolation(format!(
                "a^{k} has no group inverse at the Drazin index: {r}"
            )))
        }
    };
    let value = &a.pow(k - 1) * &g;
    finish(
        InverseKind::Drazin,
        &env(&[('a', a)]),
        value,
        Some(k),
        "power_group",
        witnesses(vec![("power_group_inverse", g)]),
        tol,
    )
}

/// `a^⊕ = a^# a a^(1,3)`.
pub fn core_inverse(a: &StarMatrix, tol: &Tolerance) -> Result<Outcome<InverseResult>> {
    a.require_square("core_inverse")?;
    let g = exists_or_return!(group_inverse(a, tol)?, "no group inverse");
    let t = exists_or_return!(canonical_one_three(a, tol)?, "no {1,3}-inverse");
    let value = &(&g.value * a) * &t;
    finish(
        InverseKind::Core,
        &env(&[('a', a)]),
        value,
        None,
        "group_times_13",
        witnesses(vec![("group", g.value), ("one_three", t)]),
        tol,
    )
    .map(Outcome::Exists)
}

/// `a_⊕ = a^(1,4) a a^#`.
pub fn dual_core_inverse(a: &StarMatrix, tol: &Tolerance) -> Result<Outcome<InverseResult>> {
    a.require_square("dual_core_inverse")?;
    let g = exists_or_return!(group_inverse(a, tol)?, "no group inverse");
    let t = exists_or_return!(canonical_one_four(a, tol)?, "no {1,4}-inverse");
    let value = &(&t * a) * &g.value;
    finish(
        InverseKind::DualCore,
        &env(&[('a', a)]),
        value,
        None,
        "14_times_group",
        witnesses(vec![("group", g.value), ("one_four", t)]),
        tol,
    )
    .map(Outcome::Exists)
}

/// `a^ⓓ = a^D a^m (a^m)^(1,3)` with `m` the Drazin index, which is also the
/// pseudo-core index.
pub fn core_ep_inverse(a: &StarMatrix, tol: &Tolerance) -> Result<Outcome<InverseResult>> {
    let d = drazin_inverse(a, tol)?;
    let m = d.index.expect("indexed");
    let am = a.pow(m);
    let t = exists_or_return!(canonical_one_three(&am, tol)?, format!("a^{m} has no {{1,3}}-inverse"));
    let value = &(&d.value * &am) * &t;
    finish(
        InverseKind::CoreEp,
        &env(&[('a', a)]),
        value,
        Some(m),
        "drazin_power_13",
        witnesses(vec![("drazin", d.value), ("power_one_three", t)]),
        tol,
    )
    .map(Outcome::Exists)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Domain;

    fn q(v: &[i64]) -> StarMatrix {
        StarMatrix::from_i64(Domain::Rational, 2, 2, v)
    }

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    const NIL: [i64; 4] = [0, 1, 0, 0];

    fn block_nil_one() -> StarMatrix {
        StarMatrix::from_i64(Domain::Rational, 3, 3, &[0, 1, 0, 0, 0, 0, 0, 0, 1])
    }

    fn diag001() -> StarMatrix {
        StarMatrix::from_i64(Domain::Rational, 3, 3, &[0, 0, 0, 0, 0, 0, 0, 0, 1])
    }

    #[test]
    fn group_examples() {
        let e = q(&[1, 0, 0, 0]);
        assert_eq!(group_inverse(&e, &tol()).unwrap().unwrap().value, e);
        assert!(!group_inverse(&q(&NIL), &tol()).unwrap().exists());
        let z6 = StarMatrix::from_i64(Domain::IntegerMod(6), 1, 1, &[3]);
        assert_eq!(group_inverse(&z6, &tol()).unwrap().unwrap().value, z6);
    }

    #[test]
    fn drazin_examples() {
        let r = drazin_inverse(&q(&NIL), &tol()).unwrap();
        assert_eq!((r.value.clone(), r.index), (q(&[0; 4]), Some(2)));
        let a = q(&[2, 1, 1, 1]);
        let r = drazin_inverse(&a, &tol()).unwrap();
        assert_eq!(r.value, a.inverse(&tol()).unwrap().unwrap());
        assert_eq!(r.index, Some(1));
        let r = drazin_inverse(&block_nil_one(), &tol()).unwrap();
        assert_eq!((r.value, r.index), (diag001(), Some(2)));
    }

    #[test]
    fn drazin_over_composite_ring() {
        let z4 = StarMatrix::from_i64(Domain::IntegerMod(4), 1, 1, &[2]);
        let r = drazin_inverse(&z4, &tol()).unwrap();
        assert_eq!(r.index, Some(2));
        assert!(r.value.is_zero());
    }

    #[test]
    fn core_examples() {
        let e = q(&[1, 0, 0, 0]);
        assert_eq!(core_inverse(&e, &tol()).unwrap().unwrap().value, e);
        assert!(!core_inverse(&q(&NIL), &tol()).unwrap().exists());
        let i = StarMatrix::identity(Domain::Rational, 2);
        assert_eq!(core_inverse(&i, &tol()).unwrap().unwrap().value, i);
        assert_eq!(dual_core_inverse(&e, &tol()).unwrap().unwrap().value, e);
        assert!(!dual_core_inverse(&q(&NIL), &tol()).unwrap().exists());
        assert_eq!(dual_core_inverse(&i, &tol()).unwrap().unwrap().value, i);
    }

    #[test]
    fn core_ep_examples() {
        let r = core_ep_inverse(&q(&NIL), &tol()).unwrap().unwrap();
        assert_eq!((r.value, r.index), (q(&[0; 4]), Some(2)));
        let a = q(&[2, 1, 1, 1]);
        let r = core_ep_inverse(&a, &tol()).unwrap().unwrap();
        assert_eq!(r.value, a.inverse(&tol()).unwrap().unwrap());
        let r = core_ep_inverse(&block_nil_one(), &tol()).unwrap().unwrap();
        assert_eq!((r.value, r.index), (diag001(), Some(2)));
    }

    #[test]
    fn core_ep_can_fail_over_gf5() {
        // a^2 = a, so ind(a) = 1, but a has no {1,3}-inverse: a* a = 5 e11 = 0.
        let a = StarMatrix::from_i64(Domain::PrimeField(5), 2, 2, &[1, 0, 2, 0]);
        assert_eq!(drazin_index(&a, &tol()).unwrap(), 1);
        assert!(!core_ep_inverse(&a, &tol()).unwrap().exists());
    }
}
