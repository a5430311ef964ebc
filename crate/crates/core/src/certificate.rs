//! Outcomes, certificates and equation checking for matrices.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::matrix::{StarMatrix, Tolerance};
use crate::scalar::Domain;
use crate::word::{self, systems, Constraint, Green, StarAlgebra, System, Word};

/// Result of asking for a generalized inverse: either it exists, or it does
/// not and the reason names the failing criterion.
#[derive(Debug, Clone, PartialEq)]
pub enum Outcome<T> {
    Exists(T),
    NotExists(String),
}

impl<T> Outcome<T> {
    pub fn exists(&self) -> bool {
        matches!(self, Outcome::Exists(_))
    }

    pub fn value(&self) -> Option<&T> {
        match self {
            Outcome::Exists(v) => Some(v),
            Outcome::NotExists(_) => None,
        }
    }

    pub fn into_value(self) -> Option<T> {
        match self {
            Outcome::Exists(v) => Some(v),
            Outcome::NotExists(_) => None,
        }
    }

    pub fn reason(&self) -> Option<&str> {
        match self {
            Outcome::Exists(_) => None,
            Outcome::NotExists(r) => Some(r),
        }
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Outcome<U> {
        match self {
            Outcome::Exists(v) => Outcome::Exists(f(v)),
            Outcome::NotExists(r) => Outcome::NotExists(r),
        }
    }

    /// # Panics
    /// If the inverse does not exist.
    #[track_caller]
    pub fn unwrap(self) -> T {
        match self {
            Outcome::Exists(v) => v,
            Outcome::NotExists(r) => panic!("inverse does not exist: {r}"),
        }
    }
}

/// Unwrap an `Outcome`, returning early with the same non-existence reason.
#[macro_export]
macro_rules! exists_or_return {
    ($e:expr) => {
        match $e {
            $crate::Outcome::Exists(v) => v,
            $crate::Outcome::NotExists(r) => return Ok($crate::Outcome::NotExists(r)),
        }
    };
    ($e:expr, $ctx:expr) => {
        match $e {
            $crate::Outcome::Exists(v) => v,
            $crate::Outcome::NotExists(r) => {
                return Ok($crate::Outcome::NotExists(format!("{}: {}", $ctx, r)))
            }
        }
    };
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InverseKind {
    Inner,
    OneThree,
    OneFour,
    MoorePenrose,
    Group,
    Drazin,
    Core,
    DualCore,
    CoreEp,
    Along,
    WCore,
    DualVCore,
    Bc,
}

impl InverseKind {
    pub const ALL: [InverseKind; 13] = [
        InverseKind::Inner,
        InverseKind::OneThree,
        InverseKind::OneFour,
        InverseKind::MoorePenrose,
        InverseKind::Group,
        InverseKind::Drazin,
        InverseKind::Core,
        InverseKind::DualCore,
        InverseKind::CoreEp,
        InverseKind::Along,
        InverseKind::WCore,
        InverseKind::DualVCore,
        InverseKind::Bc,
    ];

    pub fn name(self) -> &'static str {
        match self {
            InverseKind::Inner => "one",
            InverseKind::OneThree => "one3",
            InverseKind::OneFour => "one4",
            InverseKind::MoorePenrose => "mp",
            InverseKind::Group => "group",
            InverseKind::Drazin => "drazin",
            InverseKind::Core => "core",
            InverseKind::DualCore => "dual-core",
            InverseKind::CoreEp => "core-ep",
            InverseKind::Along => "along",
            InverseKind::WCore => "w-core",
            InverseKind::DualVCore => "dual-v-core",
            InverseKind::Bc => "bc",
        }
    }

    /// Operands besides `a` that the kind needs.
    pub fn extra_operands(self) -> &'static [char] {
        match self {
            InverseKind::Along => &['d'],
            InverseKind::WCore => &['w'],
            InverseKind::DualVCore => &['v'],
            InverseKind::Bc => &['b', 'c'],
            _ => &[],
        }
    }

    pub fn is_indexed(self) -> bool {
        matches!(self, InverseKind::Drazin | InverseKind::CoreEp)
    }

    /// The defining equations, plus derived ones that must also hold.
    pub fn system(self, index: Option<usize>) -> Vec<String> {
        let own = |s: &[&str]| s.iter().map(|e| e.to_string()).collect::<Vec<_>>();
        let k = index.unwrap_or(1).max(1);
        match self {
            InverseKind::Inner => own(systems::INNER),
            InverseKind::OneThree => own(systems::ONE_THREE),
            InverseKind::OneFour => own(systems::ONE_FOUR),
            InverseKind::MoorePenrose => own(systems::PENROSE),
            InverseKind::Group => own(systems::GROUP),
            InverseKind::Drazin => {
                let mut v = systems::drazin(k);
                v.extend(systems::drazin_minimality(k));
                v
            }
            InverseKind::Core => merge(systems::CORE, systems::CORE_FIVE),
            InverseKind::DualCore => merge(systems::DUAL_CORE, systems::DUAL_CORE_FIVE),
            InverseKind::CoreEp => {
                let mut v = systems::core_ep(k);
                v.extend(systems::core_ep_minimality(k));
                v
            }
            InverseKind::Along => own(systems::ALONG),
            InverseKind::WCore => merge(systems::W_CORE, systems::W_CORE_DERIVED),
            InverseKind::DualVCore => merge(systems::DUAL_V_CORE, systems::DUAL_V_CORE_DERIVED),
            InverseKind::Bc => own(systems::BC),
        }
    }
}

fn merge(a: &[&str], b: &[&str]) -> Vec<String> {
    let mut out: Vec<String> = a.iter().map(|s| s.to_string()).collect();
    for s in b {
        if !out.iter().any(|o| o == s) {
            out.push(s.to_string());
        }
    }
    out
}

impl fmt::Display for InverseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for InverseKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        InverseKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown inverse kind `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EquationCheck {
    pub label: String,
    /// Zero on success in exact domains. In the float domain, the relative
    /// residual `||L - R|| / (scale(L) + scale(R))` where a word's scale is
    /// the product of its factors' Frobenius norms. Relations that are
    /// decided by solving report 0 or 1.
    pub residual: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub enum RouteStatus {
    Value,
    NotExists(String),
    NotApplicable(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RouteRecord {
    pub name: String,
    pub status: RouteStatus,
}

#[derive(Debug, Clone)]
pub struct Certificate {
    pub kind: InverseKind,
    /// The route whose value was returned.
    pub route: String,
    pub routes: Vec<RouteRecord>,
    pub checks: Vec<EquationCheck>,
    pub witnesses: BTreeMap<String, StarMatrix>,
    pub warnings: Vec<String>,
}

impl Certificate {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed_checks(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.label.as_str())
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct InverseResult {
    pub value: StarMatrix,
    /// Drazin index or pseudo-core index where applicable.
    pub index: Option<usize>,
    pub certificate: Certificate,
}

/// Named matrices that words are evaluated against.
pub type Env = BTreeMap<char, StarMatrix>;

pub fn env(pairs: &[(char, &StarMatrix)]) -> Env {
    pairs.iter().map(|(c, m)| (*c, (*m).clone())).collect()
}

struct MatrixAlgebra {
    domain: Domain,
    n: Option<usize>,
}

impl StarAlgebra for MatrixAlgebra {
    type Elem = StarMatrix;

    fn one(&self) -> Result<StarMatrix> {
        let n = self
            .n
            .ok_or_else(|| Error::Parse("`1` needs a square operand to fix its size".into()))?;
        Ok(StarMatrix::identity(self.domain, n))
    }

    fn zero(&self) -> Result<StarMatrix> {
        let n = self
            .n
            .ok_or_else(|| Error::Parse("`0` needs a square operand to fix its size".into()))?;
        Ok(StarMatrix::zeros(self.domain, n, n))
    }

    fn mul(&self, a: &StarMatrix, b: &StarMatrix) -> Result<StarMatrix> {
        a.try_mul(b)
    }

    fn star(&self, a: &StarMatrix) -> StarMatrix {
        a.adjoint()
    }
}

fn word_scale(word: &Word, env: &Env, n: Option<usize>) -> f64 {
    match word {
        Word::Zero => 0.0,
        Word::Product(ls) if ls.is_empty() => (n.unwrap_or(1) as f64).sqrt(),
        Word::Product(ls) => ls
            .iter()
            .map(|l| env.get(&l.symbol).map_or(0.0, StarMatrix::frobenius_norm))
            .product(),
    }
}

fn compare(
    alg: &MatrixAlgebra,
    l: &Word,
    r: &Word,
    env: &Env,
    tol: &Tolerance,
) -> Result<(f64, bool)> {
    let lv = word::eval(alg, l, |c| env.get(&c));
    let rv = word::eval(alg, r, |c| env.get(&c));
    let (lv, rv) = match (lv, rv) {
        (Ok(lv), Ok(rv)) => (lv, rv),
        (Err(Error::ShapeMismatch { .. }), _) | (_, Err(Error::ShapeMismatch { .. })) => {
            return Ok((f64::INFINITY, false))
        }
        (Err(e), _) | (_, Err(e)) => return Err(e),
    };
    if lv.shape() != rv.shape() {
        return Ok((f64::INFINITY, false));
    }
    let diff = (&lv - &rv).frobenius_norm();
    if alg.domain.is_exact() {
        let eq = lv == rv;
        return Ok((if eq { 0.0 } else { diff }, eq));
    }
    let scale = word_scale(l, env, alg.n) + word_scale(r, env, alg.n);
    let residual = if scale > 0.0 { diff / scale } else { diff };
    Ok((residual, residual <= tol.residual_rel_tol))
}

fn green_leq(
    alg: &MatrixAlgebra,
    g: Green,
    l: &Word,
    r: &Word,
    env: &Env,
    tol: &Tolerance,
) -> Result<bool> {
    let lv = word::eval(alg, l, |c| env.get(&c))?;
    let rv = word::eval(alg, r, |c| env.get(&c))?;
    let left = || -> Result<bool> {
        if lv.cols() != rv.cols() {
            return Ok(false);
        }
        lv.leq_left(&rv, tol)
    };
    let right = || -> Result<bool> {
        if lv.rows() != rv.rows() {
            return Ok(false);
        }
        lv.leq_right(&rv, tol)
    };
    Ok(match g {
        Green::L => left()?,
        Green::R => right()?,
        Green::H => left()? && right()?,
    })
}

/// Evaluate every constraint of `lines` against `env`.
pub fn check_system<S: AsRef<str>>(
    lines: &[S],
    env: &Env,
    tol: &Tolerance,
) -> Result<Vec<EquationCheck>> {
    let system = System::parse("check", lines)?;
    let domain = env
        .values()
        .next()
        .map(StarMatrix::domain)
        .ok_or_else(|| Error::Parse("empty environment".into()))?;
    if let Some(m) = env.values().find(|m| m.domain() != domain) {
        return Err(Error::DomainMismatch(domain, m.domain()));
    }
    let n = env
        .get(&'a')
        .filter(|m| m.is_square())
        .or_else(|| env.values().find(|m| m.is_square()))
        .map(StarMatrix::rows);
    let alg = MatrixAlgebra { domain, n };
    let mut out = Vec::with_capacity(system.constraints.len());
    for (label, c) in &system.constraints {
        let (residual, passed) = match c {
            Constraint::Eq(l, r) => compare(&alg, l, r, env, tol)?,
            Constraint::NotEq(l, r) => {
                let (res, eq) = compare(&alg, l, r, env, tol)?;
                (res, !eq)
            }
            Constraint::Leq(g, l, r) => {
                let ok = green_leq(&alg, *g, l, r, env, tol)?;
                (if ok { 0.0 } else { 1.0 }, ok)
            }
            Constraint::Equiv(g, l, r) => {
                let ok = green_leq(&alg, *g, l, r, env, tol)?
                    && green_leq(&alg, *g, r, l, env, tol)?;
                (if ok { 0.0 } else { 1.0 }, ok)
            }
        };
        out.push(EquationCheck {
            label: label.clone(),
            residual,
            passed,
        });
    }
    Ok(out)
}

/// Re-certify `candidate` as an inverse of kind `kind` for the operands in
/// `operands` (which must bind `a` and the kind's extra operands). Indexed
/// kinds use `index` when given and the Drazin index of `a` otherwise.
pub fn certify_candidate(
    kind: InverseKind,
    operands: &Env,
    candidate: &StarMatrix,
    index: Option<usize>,
    tol: &Tolerance,
) -> Result<Certificate> {
    for sym in std::iter::once(&'a').chain(kind.extra_operands()) {
        if !operands.contains_key(sym) {
            return Err(Error::PreconditionFailed(format!(
                "{kind} needs operand `{sym}`"
            )));
        }
    }
    let index = match (kind.is_indexed(), index) {
        (false, _) => None,
        (true, Some(k)) => Some(k),
        (true, None) => Some(crate::classical::drazin_index(&operands[&'a'], tol)?),
    };
    let mut env = operands.clone();
    env.insert('x', candidate.clone());
    let checks = check_system(&kind.system(index), &env, tol)?;
    Ok(Certificate {
        kind,
        route: "candidate".into(),
        routes: Vec::new(),
        checks,
        witnesses: BTreeMap::new(),
        warnings: Vec::new(),
    })
}

/// Build the result for a computed value: run the defining equations and
/// treat a failure as a fault in exact domains, a warning in floats.
pub(crate) fn finish(
    kind: InverseKind,
    operands: &Env,
    value: StarMatrix,
    index: Option<usize>,
    route: &str,
    witnesses: BTreeMap<String, StarMatrix>,
    tol: &Tolerance,
) -> Result<InverseResult> {
    let mut cert = certify_candidate(kind, operands, &value, index, tol)?;
    cert.route = route.to_string();
    cert.witnesses = witnesses;
    if !cert.passed() {
        let failed = cert.failed_checks().join(", ");
        if value.domain().is_exact() {
            return Err(Error::InvariantViolation(format!(
                "{kind} via {route} fails {failed}"
            )));
        }
        cert.warnings
            .push(format!("ToleranceWarning: residual above tolerance for {failed}"));
    }
    Ok(InverseResult {
        value,
        index,
        certificate: cert,
    })
}

pub(crate) fn witnesses(pairs: Vec<(&str, StarMatrix)>) -> BTreeMap<String, StarMatrix> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}
