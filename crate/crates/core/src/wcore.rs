//! The w-core inverse and the dual v-core inverse.
//!
//! `x` is the w-core inverse of `a` when `awx^2 = x`, `xawa = a` and
//! `(awx)^* = awx`; `y` is the dual v-core inverse when `y^2va = y`,
//! `avay = a` and `(yva)^* = yva`. Each is computed along several
//! independent routes which are cross-checked against each other and then
//! re-certified against the defining equations.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::along::{bc_inverse, inverse_along};
use crate::certificate::{
    env, finish, Env, InverseKind, InverseResult, Outcome, RouteRecord, RouteStatus,
};
use crate::classical::{core_ep_inverse, core_inverse, dual_core_inverse, group_inverse};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::matrix::{product, StarMatrix, Tolerance};
use crate::regular::{canonical_one_four, canonical_one_three, inner_inverse, mp_inverse};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Route {
    /// `w^∥a a^(1,3)` (dual: `a^(1,4) v^∥a`).
    Mary13,
    /// `(aw)^⊕` once `a ∈ awS` (dual: `(va)_⊕` once `a ∈ Sva`).
    CoreOfAw,
    /// `u^{-1}(1 - p)` with `p = 1 - aw(aw)^⊕`, `u = p + aw`.
    ProjectionUnit,
    /// `A(AWA)^† A A^†` (dual: `A^† A (AVA)^† A`).
    RankFormula,
    /// `t^{-1} a a^*` with `t = aa^*aw + 1 - aa^-` (dual: `a^*a s^{-1}`).
    Section3Unit,
    /// `(aw)^∥(aa^*)` (dual: `(va)^∥(a^*a)`).
    Along,
    /// The `(a, a^*)`-inverse of `aw` (dual: the `(a^*, a)`-inverse of `va`).
    Bc,
}

impl Route {
    pub const ALL: [Route; 7] = [
        Route::Mary13,
        Route::CoreOfAw,
        Route::ProjectionUnit,
        Route::RankFormula,
        Route::Section3Unit,
        Route::Along,
        Route::Bc,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Route::Mary13 => "mary_13",
            Route::CoreOfAw => "core_of_aw",
            Route::ProjectionUnit => "projection_unit",
            Route::RankFormula => "rank_formula",
            Route::Section3Unit => "section3_unit",
            Route::Along => "along",
            Route::Bc => "bc",
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Route {
    type Err = Error;
    fn from_str(s: &str) -> Result<Route> {
        Route::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown route `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RouteSelector {
    #[default]
    All,
    Only(Route),
}

impl FromStr for RouteSelector {
    type Err = Error;
    fn from_str(s: &str) -> Result<RouteSelector> {
        if s == "all" {
            Ok(RouteSelector::All)
        } else {
            s.parse().map(RouteSelector::Only)
        }
    }
}

impl RouteSelector {
    fn routes(self) -> Vec<Route> {
        match self {
            RouteSelector::All => Route::ALL.to_vec(),
            RouteSelector::Only(r) => vec![r],
        }
    }
}

/// Relative Frobenius distance below which two float results count as equal.
pub fn agreement_tol(tol: &Tolerance) -> f64 {
    tol.residual_rel_tol * 100.0
}

fn agree(p: &StarMatrix, q: &StarMatrix, tol: &Tolerance) -> bool {
    if p.shape() != q.shape() {
        return false;
    }
    if p.domain().is_exact() {
        return p == q;
    }
    p.relative_distance(q) <= agreement_tol(tol)
}

/// Record a failed identity: a fault in exact domains, a warning in floats.
fn expect_agree(
    label: &str,
    p: &StarMatrix,
    q: &StarMatrix,
    tol: &Tolerance,
    warnings: &mut Vec<String>,
) -> Result<()> {
    if agree(p, q, tol) {
        return Ok(());
    }
    if p.domain().is_exact() {
        return Err(Error::InvariantViolation(format!("{label}: {p} != {q}")));
    }
    warnings.push(format!(
        "ToleranceWarning: {label} differs by {:.3e}",
        p.relative_distance(q)
    ));
    Ok(())
}

fn expect_same_existence(
    label: &str,
    left: bool,
    right: bool,
    float: bool,
    warnings: &mut Vec<String>,
) -> Result<()> {
    if left == right {
        return Ok(());
    }
    let msg = format!("{label}: existence {left} vs {right}");
    if float {
        warnings.push(format!("ToleranceWarning: {msg}"));
        return Ok(());
    }
    Err(Error::InvariantViolation(msg))
}

type Witnesses = Vec<(&'static str, StarMatrix)>;

enum RouteValue {
    Value(StarMatrix, Witnesses),
    NotExists(String),
    NotApplicable(String),
}

macro_rules! need {
    ($e:expr, $msg:expr) => {
        match $e {
            Outcome::Exists(v) => v,
            Outcome::NotExists(r) => return Ok(RouteValue::NotExists(format!("{}: {}", $msg, r))),
        }
    };
}

fn check_pair(a: &StarMatrix, w: &StarMatrix, op: &'static str) -> Result<()> {
    a.require_square(op)?;
    if a.shape() != w.shape() {
        return Err(Error::ShapeMismatch {
            op,
            left: a.shape(),
            right: w.shape(),
        });
    }
    if a.domain() != w.domain() {
        return Err(Error::DomainMismatch(a.domain(), w.domain()));
    }
    Ok(())
}

fn identity_like(a: &StarMatrix) -> StarMatrix {
    StarMatrix::identity(a.domain(), a.rows())
}

/// Which side of the duality a computation is on.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    /// w-core: weight multiplies on the right of `a`.
    Core,
    /// dual v-core: weight multiplies on the left of `a`.
    Dual,
}

impl Side {
    fn kind(self) -> InverseKind {
        match self {
            Side::Core => InverseKind::WCore,
            Side::Dual => InverseKind::DualVCore,
        }
    }

    fn weight_symbol(self) -> char {
        match self {
            Side::Core => 'w',
            Side::Dual => 'v',
        }
    }
}

fn run_route(side: Side, route: Route, a: &StarMatrix, w: &StarMatrix, tol: &Tolerance) -> Result<RouteValue> {
    let domain = a.domain();
    let id = identity_like(a);
    let a_star = a.adjoint();
    match (side, route) {
        (Side::Core, Route::Mary13) => {
            let along = need!(inverse_along(w, a, tol)?, "w is not invertible along a").value;
            let t = need!(canonical_one_three(a, tol)?, "a has no {1,3}-inverse");
            Ok(RouteValue::Value(&along * &t, vec![("w_along_a", along), ("one_three", t)]))
        }
        (Side::Dual, Route::Mary13) => {
            let along = need!(inverse_along(w, a, tol)?, "v is not invertible along a").value;
            let t = need!(canonical_one_four(a, tol)?, "a has no {1,4}-inverse");
            Ok(RouteValue::Value(&t * &along, vec![("v_along_a", along), ("one_four", t)]))
        }
        (Side::Core, Route::CoreOfAw) => {
            let aw = a * w;
            if aw.solve_right(a, tol)?.is_none() {
                return Ok(RouteValue::NotExists("a is not in awS".into()));
            }
            let c = need!(core_inverse(&aw, tol)?, "aw is not core invertible").value;
            Ok(RouteValue::Value(c, vec![]))
        }
        (Side::Dual, Route::CoreOfAw) => {
            let va = w * a;
            if va.solve_left(a, tol)?.is_none() {
                return Ok(RouteValue::NotExists("a is not in Sva".into()));
            }
            let c = need!(dual_core_inverse(&va, tol)?, "va is not dual core invertible").value;
            Ok(RouteValue::Value(c, vec![]))
        }
        (Side::Core, Route::ProjectionUnit) => {
            let aw = a * w;
            let c = need!(core_inverse(&aw, tol)?, "aw is not core invertible").value;
            let p = &id - &(&aw * &c);
            projection_sanity(&p, tol)?;
            if !negligible(&(&p * a), a, &aw, &c, tol) {
                return Ok(RouteValue::NotExists("pa != 0 for p = 1 - aw(aw)^⊕".into()));
            }
            let u = &p + &aw;
            let Some(u_inv) = u.inverse(tol)? else {
                return Ok(RouteValue::NotExists("u = p + aw is not invertible".into()));
            };
            let value = &u_inv * &(&id - &p);
            Ok(RouteValue::Value(value, vec![("p", p), ("u", u)]))
        }
        (Side::Dual, Route::ProjectionUnit) => {
            let va = w * a;
            let c = need!(dual_core_inverse(&va, tol)?, "va is not dual core invertible").value;
            let p = &id - &(&c * &va);
            projection_sanity(&p, tol)?;
            if !negligible(&(a * &p), a, &va, &c, tol) {
                return Ok(RouteValue::NotExists("ap != 0 for p = 1 - (va)_⊕ va".into()));
            }
            let u = &p + &va;
            let Some(u_inv) = u.inverse(tol)? else {
                return Ok(RouteValue::NotExists("u = p + va is not invertible".into()));
            };
            let value = &(&id - &p) * &u_inv;
            Ok(RouteValue::Value(value, vec![("p", p), ("u", u)]))
        }
        (side, Route::RankFormula) => {
            if !domain.has_positive_involution() {
                return Ok(RouteValue::NotApplicable(format!(
                    "the rank criterion needs a positive involution, not {domain}"
                )));
            }
            let awa = product(&[a, w, a]);
            let (ra, rawa) = (a.rank(tol)?, awa.rank(tol)?);
            if ra != rawa {
                return Ok(RouteValue::NotExists(format!(
                    "rank(a) = {ra} != {rawa} = rank(a{}a)",
                    side.weight_symbol()
                )));
            }
            let awa_mp = need!(mp_inverse(&awa, tol)?, "no Moore-Penrose inverse").value;
            let a_mp = need!(mp_inverse(a, tol)?, "no Moore-Penrose inverse").value;
            let value = match side {
                Side::Core => product(&[a, &awa_mp, a, &a_mp]),
                Side::Dual => product(&[&a_mp, a, &awa_mp, a]),
            };
            Ok(RouteValue::Value(value, vec![("mp", a_mp)]))
        }
        (side, Route::Section3Unit) => {
            if !domain.is_field() {
                return Ok(RouteValue::NotApplicable(format!("no canonical inner inverse over {domain}")));
            }
            let a_inner = inner_inverse(a, tol)?.value;
            let gram = match side {
                Side::Core => a * &a_star,
                Side::Dual => &a_star * a,
            };
            let unit = match side {
                Side::Core => &(&product(&[&gram, a, w]) + &id) - &(a * &a_inner),
                Side::Dual => &(&product(&[w, a, &gram]) + &id) - &(&a_inner * a),
            };
            let Some(unit_inv) = unit.inverse(tol)? else {
                return Ok(RouteValue::NotApplicable(
                    "unit is singular; this criterion only detects the intersection with the dual inverse"
                        .into(),
                ));
            };
            let value = match side {
                Side::Core => &unit_inv * &gram,
                Side::Dual => &gram * &unit_inv,
            };
            let name = if side == Side::Core { "t" } else { "s" };
            Ok(RouteValue::Value(value, vec![(name, unit), ("inner", a_inner)]))
        }
        (side, Route::Along) => {
            if !mp_inverse(a, tol)?.exists() {
                return Ok(RouteValue::NotApplicable("a is not Moore-Penrose invertible".into()));
            }
            let (elem, d) = match side {
                Side::Core => (a * w, a * &a_star),
                Side::Dual => (w * a, &a_star * a),
            };
            let r = need!(inverse_along(&elem, &d, tol)?, "not invertible along the Gram element");
            Ok(RouteValue::Value(r.value, vec![]))
        }
        (side, Route::Bc) => {
            if !domain.is_field() {
                return Ok(RouteValue::NotApplicable(format!("(b,c) rank test needs a field, not {domain}")));
            }
            let r = match side {
                Side::Core => bc_inverse(&(a * w), a, &a_star, tol)?,
                Side::Dual => bc_inverse(&(w * a), &a_star, a, tol)?,
            };
            let r = need!(r, "no (b,c)-inverse");
            Ok(RouteValue::Value(r.value, vec![]))
        }
    }
}

/// Whether a residual built from `a`, `m` and `m`'s (dual) core inverse `c`
/// vanishes, measured against `||a|| (1 + ||m|| ||c||)` for floats.
fn negligible(residual: &StarMatrix, a: &StarMatrix, m: &StarMatrix, c: &StarMatrix, tol: &Tolerance) -> bool {
    if residual.domain().is_exact() {
        return residual.is_zero();
    }
    let scale = a.frobenius_norm() * (1.0 + m.frobenius_norm() * c.frobenius_norm());
    residual.frobenius_norm() <= tol.residual_rel_tol * scale
}

fn projection_sanity(p: &StarMatrix, tol: &Tolerance) -> Result<()> {
    if p.domain().is_exact() && !p.is_projection(tol) {
        return Err(Error::InvariantViolation(format!("p = {p} is not a projection")));
    }
    Ok(())
}

fn rank_exists(a: &StarMatrix, w: &StarMatrix, tol: &Tolerance) -> Result<bool> {
    Ok(a.rank(tol)? == product(&[a, w, a]).rank(tol)?)
}

fn drive(
    side: Side,
    a: &StarMatrix,
    w: &StarMatrix,
    selector: RouteSelector,
    tol: &Tolerance,
) -> Result<Outcome<InverseResult>> {
    let float = a.domain().is_float();
    let mut records = Vec::new();
    let mut values: Vec<(Route, StarMatrix, Witnesses)> = Vec::new();
    let mut absent: Vec<(Route, String)> = Vec::new();
    let mut skipped: Vec<(Route, String)> = Vec::new();
    for route in selector.routes() {
        let status = match run_route(side, route, a, w, tol)? {
            RouteValue::Value(v, wit) => {
                values.push((route, v, wit));
                RouteStatus::Value
            }
            RouteValue::NotExists(r) => {
                absent.push((route, r.clone()));
                RouteStatus::NotExists(r)
            }
            RouteValue::NotApplicable(r) => {
                skipped.push((route, r.clone()));
                RouteStatus::NotApplicable(r)
            }
        };
        records.push(RouteRecord {
            name: route.name().into(),
            status,
        });
    }

    let mut warnings = Vec::new();
    let exists = if float {
        let e = rank_exists(a, w, tol)?;
        for (r, v, _) in &values {
            if !e {
                warnings.push(format!("ToleranceWarning: {r} returned a value at borderline rank"));
            } else if let Some((first, fv, _)) = values.first() {
                if !agree(fv, v, tol) {
                    warnings.push(format!(
                        "ToleranceWarning: {r} differs from {first} by {:.3e}",
                        fv.relative_distance(v)
                    ));
                }
            }
        }
        if e {
            for (r, why) in &absent {
                warnings.push(format!("ToleranceWarning: {r} reports NotExists at borderline rank ({why})"));
            }
        }
        e
    } else {
        if let (Some((rv, _, _)), Some((rn, why))) = (values.first(), absent.first()) {
            return Err(Error::RouteDisagreement(format!(
                "{rv} returned a value but {rn} reports NotExists ({why})"
            )));
        }
        if let Some((first, fv, _)) = values.first() {
            for (r, v, _) in &values[1..] {
                if v != fv {
                    return Err(Error::RouteDisagreement(format!("{first} gives {fv}, {r} gives {v}")));
                }
            }
        }
        if values.is_empty() && absent.is_empty() {
            let (r, why) = &skipped[0];
            return Err(Error::PreconditionFailed(format!("route {r} is not applicable: {why}")));
        }
        !values.is_empty()
    };

    if !exists {
        let reason = if float {
            format!("rank(a) != rank(a{}a)", side.weight_symbol())
        } else {
            absent
                .first()
                .map(|(r, why)| format!("{r}: {why}"))
                .unwrap_or_default()
        };
        return Ok(Outcome::NotExists(reason));
    }

    let (route, value) = match values
        .iter()
        .find(|(r, _, _)| *r == Route::RankFormula)
        .or(values.first())
    {
        Some((r, v, _)) => (*r, v.clone()),
        None => match run_route(side, Route::RankFormula, a, w, tol)? {
            RouteValue::Value(v, _) => (Route::RankFormula, v),
            _ => return Ok(Outcome::NotExists("rank criterion holds but no route produced a value".into())),
        },
    };

    let mut wit = BTreeMap::new();
    for (r, _, ws) in values {
        for (k, v) in ws {
            wit.insert(format!("{r}.{k}"), v);
        }
    }
    let ops: Env = env(&[('a', a), (side.weight_symbol(), w)]);
    let mut result = finish(side.kind(), &ops, value, None, route.name(), wit, tol)?;
    result.certificate.routes = records;
    result.certificate.warnings.extend(warnings);
    Ok(Outcome::Exists(result))
}

/// The w-core inverse of `a`.
pub fn w_core(
    a: &StarMatrix,
    w: &StarMatrix,
    selector: RouteSelector,
    tol: &Tolerance,
) -> Result<Outcome<InverseResult>> {
    check_pair(a, w, "w_core")?;
    drive(Side::Core, a, w, selector, tol)
}

/// The dual v-core inverse of `a`.
pub fn dual_v_core(
    a: &StarMatrix,
    v: &StarMatrix,
    selector: RouteSelector,
    tol: &Tolerance,
) -> Result<Outcome<InverseResult>> {
    check_pair(a, v, "dual_v_core")?;
    drive(Side::Dual, a, v, selector, tol)
}

/// What one route produced, without cross-checking against the others.
#[derive(Debug, Clone, PartialEq)]
pub enum RouteVerdict {
    Value(StarMatrix),
    NotExists(String),
    NotApplicable(String),
}

impl From<RouteValue> for RouteVerdict {
    fn from(v: RouteValue) -> Self {
        match v {
            RouteValue::Value(m, _) => RouteVerdict::Value(m),
            RouteValue::NotExists(r) => RouteVerdict::NotExists(r),
            RouteValue::NotApplicable(r) => RouteVerdict::NotApplicable(r),
        }
    }
}

fn verdicts(side: Side, a: &StarMatrix, w: &StarMatrix, tol: &Tolerance) -> Result<Vec<(Route, RouteVerdict)>> {
    Route::ALL
        .iter()
        .map(|&r| Ok((r, run_route(side, r, a, w, tol)?.into())))
        .collect()
}

/// Every w-core route evaluated on its own.
pub fn w_core_routes(a: &StarMatrix, w: &StarMatrix, tol: &Tolerance) -> Result<Vec<(Route, RouteVerdict)>> {
    check_pair(a, w, "w_core_routes")?;
    verdicts(Side::Core, a, w, tol)
}

/// Every dual v-core route evaluated on its own.
pub fn dual_v_core_routes(a: &StarMatrix, v: &StarMatrix, tol: &Tolerance) -> Result<Vec<(Route, RouteVerdict)>> {
    check_pair(a, v, "dual_v_core_routes")?;
    verdicts(Side::Dual, a, v, tol)
}

/// Existence test. The algebraic criterion (`w^∥a` and `a^(1,3)` exist) is
/// always evaluated; over Q, Q(i) and C the rank criterion
/// `rank(a) = rank(awa)` is evaluated as well and must agree in exact
/// domains. In floats the rank answer is returned.
pub fn w_core_exists(a: &StarMatrix, w: &StarMatrix, tol: &Tolerance) -> Result<bool> {
    check_pair(a, w, "w_core_exists")?;
    let algebraic =
        inverse_along(w, a, tol)?.exists() && canonical_one_three(a, tol)?.exists();
    if !a.domain().has_positive_involution() {
        return Ok(algebraic);
    }
    let by_rank = rank_exists(a, w, tol)?;
    if a.domain().is_exact() && by_rank != algebraic {
        return Err(Error::RouteDisagreement(format!(
            "rank criterion says {by_rank}, algebraic criterion says {algebraic}"
        )));
    }
    Ok(by_rank)
}

/// Theorem-level construction through the projection `p = 1 - aw(aw)^⊕`.
pub fn w_core_via_projection(a: &StarMatrix, w: &StarMatrix, tol: &Tolerance) -> Result<Outcome<InverseResult>> {
    w_core(a, w, RouteSelector::Only(Route::ProjectionUnit), tol)
}

/// `(a_w^⊕)^* = (a^*)_{w^*,⊕}`, existence included.
pub fn star_duality_check(a: &StarMatrix, w: &StarMatrix, tol: &Tolerance) -> Result<bool> {
    let left = w_core(a, w, RouteSelector::All, tol)?;
    let right = dual_v_core(&a.adjoint(), &w.adjoint(), RouteSelector::All, tol)?;
    Ok(match (left, right) {
        (Outcome::Exists(l), Outcome::Exists(r)) => agree(&l.value.adjoint(), &r.value, tol),
        (Outcome::NotExists(_), Outcome::NotExists(_)) => true,
        _ => false,
    })
}

/// `(a_w^⊕)^⊕`, checked against `(aw)^2 a_w^⊕`.
pub fn w_core_of_w_core(a: &StarMatrix, w: &StarMatrix, tol: &Tolerance) -> Result<StarMatrix> {
    let x = match w_core(a, w, RouteSelector::All, tol)? {
        Outcome::Exists(r) => r.value,
        Outcome::NotExists(r) => {
            return Err(Error::PreconditionFailed(format!("a is not w-core invertible: {r}")))
        }
    };
    let c = match core_inverse(&x, tol)? {
        Outcome::Exists(r) => r.value,
        Outcome::NotExists(r) => {
            return Err(Error::InvariantViolation(format!(
                "the w-core inverse is not core invertible: {r}"
            )))
        }
    };
    let aw = a * w;
    let expect = product(&[&aw, &aw, &x]);
    let mut warnings = Vec::new();
    expect_agree("(a_w^⊕)^⊕ = (aw)^2 a_w^⊕", &c, &expect, tol, &mut warnings)?;
    Ok(c)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpecialCase {
    /// `a_a^⊕`, with `a^⊕ = a a_a^⊕` and `a_a^⊕ = a^# a^⊕`.
    ACore,
    /// `a_{a^*}^⊕ = (a^†)^* a^†`.
    AStarCore,
    /// `a_{a^*,⊕} = a^† (a^†)^*`.
    DualAStarCore,
    /// `a^ⓓ = a^{n-1}(a^n)^⊕ = a^n (a^n)_a^⊕` at `n = I(a)`.
    PseudoPower,
}

impl FromStr for SpecialCase {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "a_core" => SpecialCase::ACore,
            "astar_core" => SpecialCase::AStarCore,
            "dual_astar_core" => SpecialCase::DualAStarCore,
            "pseudo_power" => SpecialCase::PseudoPower,
            _ => return Err(Error::Parse(format!("unknown special case `{s}`"))),
        })
    }
}

pub fn special_cases(a: &StarMatrix, which: SpecialCase, tol: &Tolerance) -> Result<Outcome<InverseResult>> {
    a.require_square("special_cases")?;
    let float = a.domain().is_float();
    let mut warnings = Vec::new();
    let out = match which {
        SpecialCase::ACore => {
            let r = w_core(a, a, RouteSelector::All, tol)?;
            let core = core_inverse(a, tol)?;
            expect_same_existence("a-core vs core", r.exists(), core.exists(), float, &mut warnings)?;
            if let (Outcome::Exists(r), Outcome::Exists(c)) = (&r, &core) {
                let g = group_inverse(a, tol)?.unwrap().value;
                expect_agree("a^⊕ = a a_a^⊕", &c.value, &(a * &r.value), tol, &mut warnings)?;
                expect_agree("a_a^⊕ = a^# a^⊕", &r.value, &(&g * &c.value), tol, &mut warnings)?;
            }
            r
        }
        SpecialCase::AStarCore | SpecialCase::DualAStarCore => {
            let a_star = a.adjoint();
            let r = if which == SpecialCase::AStarCore {
                w_core(a, &a_star, RouteSelector::All, tol)?
            } else {
                dual_v_core(a, &a_star, RouteSelector::All, tol)?
            };
            let mp = mp_inverse(a, tol)?;
            expect_same_existence("a*-core vs Moore-Penrose", r.exists(), mp.exists(), float, &mut warnings)?;
            if let (Outcome::Exists(r), Outcome::Exists(m)) = (&r, &mp) {
                let (expect, label) = if which == SpecialCase::AStarCore {
                    (&m.value.adjoint() * &m.value, "a_{a*}^⊕ = (a^†)^* a^†")
                } else {
                    (&m.value * &m.value.adjoint(), "a_{a*,⊕} = a^† (a^†)^*")
                };
                expect_agree(label, &r.value, &expect, tol, &mut warnings)?;
            }
            r
        }
        SpecialCase::PseudoPower => {
            let ep = core_ep_inverse(a, tol)?;
            if let Outcome::Exists(ep) = &ep {
                let n = ep.index.expect("indexed");
                let an = a.pow(n);
                match core_inverse(&an, tol)? {
                    Outcome::Exists(c) => expect_agree(
                        "a^ⓓ = a^{n-1}(a^n)^⊕",
                        &ep.value,
                        &(&a.pow(n - 1) * &c.value),
                        tol,
                        &mut warnings,
                    )?,
                    Outcome::NotExists(_) => {
                        expect_same_existence("a^n core vs pseudo-core", false, true, float, &mut warnings)?
                    }
                }
                match w_core(&an, a, RouteSelector::All, tol)? {
                    Outcome::Exists(r) => expect_agree(
                        "a^ⓓ = a^n (a^n)_a^⊕",
                        &ep.value,
                        &(&an * &r.value),
                        tol,
                        &mut warnings,
                    )?,
                    Outcome::NotExists(_) => {
                        expect_same_existence("a^n a-core vs pseudo-core", false, true, float, &mut warnings)?
                    }
                }
            }
            ep
        }
    };
    Ok(out.map(|mut r| {
        r.certificate.warnings.extend(warnings);
        r
    }))
}

fn compare_with_w_core(
    label: &str,
    got: &Outcome<StarMatrix>,
    reference: &Outcome<InverseResult>,
    tol: &Tolerance,
) -> Result<()> {
    let mut warnings = Vec::new();
    let float = tol_is_float(got, reference);
    expect_same_existence(label, got.exists(), reference.exists(), float, &mut warnings)?;
    if let (Outcome::Exists(g), Outcome::Exists(r)) = (got, reference) {
        expect_agree(label, g, &r.value, tol, &mut warnings)?;
    }
    Ok(())
}

fn tol_is_float(got: &Outcome<StarMatrix>, reference: &Outcome<InverseResult>) -> bool {
    got.value()
        .map(|m| m.domain().is_float())
        .or_else(|| reference.value().map(|r| r.value.domain().is_float()))
        .unwrap_or(false)
}

/// `(aw)^∥(aa^*)`, which equals the w-core inverse when `a^†` exists.
pub fn wcore_as_along(a: &StarMatrix, w: &StarMatrix, tol: &Tolerance) -> Result<Outcome<StarMatrix>> {
    check_pair(a, w, "wcore_as_along")?;
    if !mp_inverse(a, tol)?.exists() {
        return Err(Error::HypothesisUnmet("a is not Moore-Penrose invertible".into()));
    }
    let got = inverse_along(&(a * w), &(a * &a.adjoint()), tol)?.map(|r| r.value);
    let reference = w_core(a, w, RouteSelector::All, tol)?;
    compare_with_w_core("(aw)^∥(aa*) vs w-core", &got, &reference, tol)?;
    Ok(got)
}

/// The `(a, a^*)`-inverse of `aw`.
pub fn wcore_as_bc(a: &StarMatrix, w: &StarMatrix, tol: &Tolerance) -> Result<Outcome<StarMatrix>> {
    check_pair(a, w, "wcore_as_bc")?;
    let got = bc_inverse(&(a * w), a, &a.adjoint(), tol)?.map(|r| r.value);
    let reference = w_core(a, w, RouteSelector::All, tol)?;
    compare_with_w_core("(a,a*)-inverse of aw vs w-core", &got, &reference, tol)?;
    Ok(got)
}

/// The `(a^*, a)`-inverse of `va`.
pub fn dual_v_core_as_bc(a: &StarMatrix, v: &StarMatrix, tol: &Tolerance) -> Result<Outcome<StarMatrix>> {
    check_pair(a, v, "dual_v_core_as_bc")?;
    let got = bc_inverse(&(v * a), &a.adjoint(), a, tol)?.map(|r| r.value);
    let reference = dual_v_core(a, v, RouteSelector::All, tol)?;
    compare_with_w_core("(a*,a)-inverse of va vs dual v-core", &got, &reference, tol)?;
    Ok(got)
}

#[derive(Debug, Clone, PartialEq)]
pub struct UnitStatus {
    pub name: &'static str,
    pub expression: &'static str,
    pub invertible: bool,
}

/// Invertibility of the unit expressions from the joint w/v criteria, with
/// the formulas they produce.
#[derive(Debug, Clone)]
pub struct UnitReport {
    /// Whether `v` is invertible along `a`.
    pub hypothesis_met: bool,
    /// `u = awavaa^* + 1 - aa^-`, `r = avawaa^* + 1 - aa^-`,
    /// `s = wavaa^*a + 1 - a^-a`, `t = vawaa^*a + 1 - a^-a`.
    pub joint_units: Vec<UnitStatus>,
    /// `u = awaa^* + 1 - aa^-`, `r = a^*awa + 1 - a^-a`,
    /// `s = waa^*a + 1 - a^-a`, `t = aa^*aw + 1 - aa^-`.
    pub single_units: Vec<UnitStatus>,
    pub w_core_exists: bool,
    pub dual_v_core_exists: bool,
    pub dual_w_core_exists: bool,
    pub mp_exists: bool,
    pub w_along_a: bool,
    /// `avaa^*a s^{-1} (u^{-1}awava)^*` when the joint units are invertible.
    pub joint_w_core: Option<StarMatrix>,
    /// `(u^{-1}awava)^* awaa^*a t^{-1}`.
    pub joint_dual_v_core: Option<StarMatrix>,
    /// `t^{-1} aa^*` from the single-weight units.
    pub single_w_core: Option<StarMatrix>,
    /// `a^*a s^{-1}`, the dual w-core inverse.
    pub single_dual_w_core: Option<StarMatrix>,
    pub notes: Vec<String>,
}

/// Evaluate the joint and single-weight unit criteria for `(a, w, v)` and
/// assert their equivalences with existence, plus the displayed formulas.
/// Matrix rings over fields are Dedekind-finite, so the joint equivalence is
/// asserted even when `v` is not invertible along `a`; the report records
/// whether that hypothesis held.
pub fn section3_units(
    a: &StarMatrix,
    w: &StarMatrix,
    v: &StarMatrix,
    a_inner: &StarMatrix,
    tol: &Tolerance,
) -> Result<UnitReport> {
    check_pair(a, w, "section3_units")?;
    check_pair(a, v, "section3_units")?;
    check_pair(a, a_inner, "section3_units")?;
    if !product(&[a, a_inner, a]).approx_eq(a, tol) {
        return Err(Error::PreconditionFailed("a_inner is not an inner inverse of a".into()));
    }
    let float = a.domain().is_float();
    let id = identity_like(a);
    let s_ = a.adjoint();
    let left_proj = &id - &(a * a_inner);
    let right_proj = &id - &(a_inner * a);
    let unit = |body: StarMatrix, right: bool| -> StarMatrix {
        &body + if right { &right_proj } else { &left_proj }
    };
    let joint_exprs: [(&'static str, &'static str, StarMatrix, bool); 4] = [
        ("u", "awavaa*+1-aa^-", product(&[a, w, a, v, a, &s_]), false),
        ("r", "avawaa*+1-aa^-", product(&[a, v, a, w, a, &s_]), false),
        ("s", "wavaa*a+1-a^-a", product(&[w, a, v, a, &s_, a]), true),
        ("t", "vawaa*a+1-a^-a", product(&[v, a, w, a, &s_, a]), true),
    ];
    let single_exprs: [(&'static str, &'static str, StarMatrix, bool); 4] = [
        ("u", "awaa*+1-aa^-", product(&[a, w, a, &s_]), false),
        ("r", "a*awa+1-a^-a", product(&[&s_, a, w, a]), true),
        ("s", "waa*a+1-a^-a", product(&[w, a, &s_, a]), true),
        ("t", "aa*aw+1-aa^-", product(&[a, &s_, a, w]), false),
    ];
    let eval = |exprs: [(&'static str, &'static str, StarMatrix, bool); 4]| -> Result<Vec<(UnitStatus, StarMatrix, Option<StarMatrix>)>> {
        exprs
            .into_iter()
            .map(|(name, expression, body, right)| {
                let u = unit(body, right);
                let inv = u.inverse(tol)?;
                Ok((
                    UnitStatus {
                        name,
                        expression,
                        invertible: inv.is_some(),
                    },
                    u,
                    inv,
                ))
            })
            .collect()
    };
    let joint = eval(joint_exprs)?;
    let single = eval(single_exprs)?;

    let w_core_r = w_core(a, w, RouteSelector::All, tol)?;
    let dual_v = dual_v_core(a, v, RouteSelector::All, tol)?;
    let dual_w = dual_v_core(a, w, RouteSelector::All, tol)?;
    let mp = mp_inverse(a, tol)?;
    let w_along = inverse_along(w, a, tol)?.exists();
    let hypothesis_met = inverse_along(v, a, tol)?.exists();

    let mut notes = Vec::new();
    let mut warnings = Vec::new();
    let both_wv = w_core_r.exists() && dual_v.exists();
    let both_ww = w_core_r.exists() && dual_w.exists();

    for (st, _, _) in &joint {
        expect_same_existence(
            &format!("joint unit {} vs w-core and dual v-core", st.name),
            st.invertible,
            both_wv,
            float,
            &mut warnings,
        )?;
    }
    for (st, _, _) in &single {
        expect_same_existence(
            &format!("single unit {} vs w-core and dual w-core", st.name),
            st.invertible,
            both_ww,
            float,
            &mut warnings,
        )?;
        expect_same_existence(
            &format!("single unit {} vs w along a and a^†", st.name),
            st.invertible,
            w_along && mp.exists(),
            float,
            &mut warnings,
        )?;
    }
    if !hypothesis_met {
        notes.push(
            "v is not invertible along a; joint criterion checked in its Dedekind-finite form".into(),
        );
    }

    let mut joint_w_core = None;
    let mut joint_dual_v_core = None;
    if let [(_, _, Some(u_inv)), _, (_, _, Some(s_inv)), (_, _, Some(t_inv))] = &joint[..] {
        let mp_part = product(&[u_inv, a, w, a, v, a]).adjoint();
        let xw = product(&[a, v, a, &s_, a, s_inv, &mp_part]);
        let yv = product(&[&mp_part, a, w, a, &s_, a, t_inv]);
        if let Outcome::Exists(r) = &w_core_r {
            expect_agree("joint formula for the w-core inverse", &xw, &r.value, tol, &mut warnings)?;
        }
        if let Outcome::Exists(r) = &dual_v {
            expect_agree("joint formula for the dual v-core inverse", &yv, &r.value, tol, &mut warnings)?;
        }
        joint_w_core = Some(xw);
        joint_dual_v_core = Some(yv);
    }
    let mut single_w_core = None;
    let mut single_dual_w_core = None;
    if let [_, _, (_, _, Some(s_inv)), (_, _, Some(t_inv))] = &single[..] {
        let xw = product(&[t_inv, a, &s_]);
        let yw = product(&[&s_, a, s_inv]);
        if let Outcome::Exists(r) = &w_core_r {
            expect_agree("t^{-1}aa* vs w-core", &xw, &r.value, tol, &mut warnings)?;
        }
        if let Outcome::Exists(r) = &dual_w {
            expect_agree("a*as^{-1} vs dual w-core", &yw, &r.value, tol, &mut warnings)?;
        }
        single_w_core = Some(xw);
        single_dual_w_core = Some(yw);
    }
    notes.extend(warnings);

    Ok(UnitReport {
        hypothesis_met,
        joint_units: joint.into_iter().map(|(s, _, _)| s).collect(),
        single_units: single.into_iter().map(|(s, _, _)| s).collect(),
        w_core_exists: w_core_r.exists(),
        dual_v_core_exists: dual_v.exists(),
        dual_w_core_exists: dual_w.exists(),
        mp_exists: mp.exists(),
        w_along_a: w_along,
        joint_w_core,
        joint_dual_v_core,
        single_w_core,
        single_dual_w_core,
        notes,
    })
}

/// The w-core inverse of each pair, in input order.
pub fn w_core_batch(
    pairs: &[(StarMatrix, StarMatrix)],
    selector: RouteSelector,
    tol: &Tolerance,
    exec: Execution,
) -> Vec<Result<Outcome<InverseResult>>> {
    exec.map(pairs, |(a, w)| w_core(a, w, selector, tol))
}
