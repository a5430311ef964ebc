//! Catalog of statements checked exhaustively on finite *-rings.
//!
//! Every check receives one tuple of ring elements, evaluates each side of
//! each equivalence independently by brute force, and records a
//! counterexample whenever two sides disagree or a displayed formula gives a
//! different element. Statements quantified over inner inverses are checked
//! for every inner inverse found by the scan.

use fixedbitset::FixedBitSet;

use super::facts::Facts;
use super::ring::{Elem, FiniteStarRing};
use super::solve::Bindings;

/// How many ring elements a statement quantifies over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Arity {
    One,
    Two,
    Three,
}

impl Arity {
    pub fn count(self) -> usize {
        match self {
            Arity::One => 1,
            Arity::Two => 2,
            Arity::Three => 3,
        }
    }
}

/// Whether findings count against the statement or are only reported.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Verify,
    Search,
}

/// Accumulated findings for one statement on one ring.
#[derive(Debug, Clone, Default)]
pub struct Tally {
    pub instances: u64,
    pub skipped: u64,
    pub counterexample_count: u64,
    pub counterexamples: Vec<String>,
    pub observation_count: u64,
    pub observations: Vec<String>,
}

/// Stored findings per list; the counts keep the totals.
pub const KEEP: usize = 20;

impl Tally {
    pub fn instance(&mut self) {
        self.instances += 1;
    }

    pub fn skip(&mut self) {
        self.skipped += 1;
    }

    pub fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        if !ok {
            self.counterexample_count += 1;
            if self.counterexamples.len() < KEEP {
                self.counterexamples.push(msg());
            }
        }
    }

    pub fn observe(&mut self, msg: impl FnOnce() -> String) {
        self.observation_count += 1;
        if self.observations.len() < KEEP {
            self.observations.push(msg());
        }
    }

    pub fn merge(&mut self, other: Tally) {
        self.instances += other.instances;
        self.skipped += other.skipped;
        self.counterexample_count += other.counterexample_count;
        self.observation_count += other.observation_count;
        for c in other.counterexamples {
            if self.counterexamples.len() < KEEP {
                self.counterexamples.push(c);
            }
        }
        for o in other.observations {
            if self.observations.len() < KEEP {
                self.observations.push(o);
            }
        }
    }
}

pub type CheckFn = fn(&Facts, &[Elem], &mut Tally);

pub struct Theorem {
    pub id: &'static str,
    pub statement: &'static str,
    pub arity: Arity,
    pub mode: Mode,
    pub check: CheckFn,
}

fn show(r: &FiniteStarRing, names: &str, vals: &[Elem]) -> String {
    names
        .chars()
        .zip(vals)
        .map(|(n, &v)| format!("{n}={}", r.label(v)))
        .collect::<Vec<_>>()
        .join(", ")
}

fn show_opt(r: &FiniteStarRing, v: Option<Elem>) -> String {
    v.map_or_else(|| "none".to_string(), |e| r.label(e).to_string())
}

/// `body + 1 - proj`.
fn unit_expr(r: &FiniteStarRing, body: Elem, proj: Elem) -> Elem {
    r.sub(r.add(body, r.one()), proj)
}

fn all_equal(flags: &[bool]) -> bool {
    flags.windows(2).all(|w| w[0] == w[1])
}

fn flags_text(flags: &[bool]) -> String {
    flags.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

fn solutions(f: &Facts, sys: &super::solve::CompiledSystem, bound: &[(char, Elem)]) -> Vec<Elem> {
    sys.solve(f.ring, &Bindings::of(f.ring, bound), 'x')
}

// Uniqueness and the derived equations.

fn uniqueness(f: &Facts, t: &[Elem], tally: &mut Tally) {
    let (a, w) = (t[0], t[1]);
    tally.instance();
    let xs = f.w_core_all(a, w);
    tally.check(xs.len() <= 1, || format!("{}: {} w-core inverses", show(f.ring, "aw", t), xs.len()));
    let ys = f.dual_v_core_all(a, w);
    tally.check(ys.len() <= 1, || format!("{}: {} dual w-core inverses", show(f.ring, "aw", t), ys.len()));
}

fn added_lemma(f: &Facts, t: &[Elem], tally: &mut Tally) {
    let r = f.ring;
    let (a, w) = (t[0], t[1]);
    tally.instance();
    if let Some(x) = f.w_core(a, w) {
        let env = Bindings::of(r, &[('a', a), ('w', w), ('x', x)]);
        let fail = f.sys.w_core_derived.first_failure(r, &env).map(str::to_string);
        tally.check(fail.is_none(), || format!("{}: derived `{}` fails", show(r, "aw", t), fail.unwrap_or_default()));
        let wx = r.mul(w, x);
        let inner = f.sys.one_three.holds(r, &Bindings::of(r, &[('a', a), ('x', wx)]));
        let outer = r.prod(&[wx, a, wx]) == wx;
        tally.check(inner && outer, || format!("{}: wx is not a {{1,2,3}}-inverse", show(r, "aw", t)));
    }
    if let Some(y) = f.dual_v_core(a, w) {
        let env = Bindings::of(r, &[('a', a), ('v', w), ('x', y)]);
        let fail = f.sys.dual_v_core_derived.first_failure(r, &env).map(str::to_string);
        tally.check(fail.is_none(), || format!("{}: dual derived `{}` fails", show(r, "av", t), fail.unwrap_or_default()));
    }
}

// Characterizations through equations, ideals and annihilators.

/// Existence of `x` with the inner condition and annihilator conditions.
fn exists_annihilator(
    f: &Facts,
    inner: &super::solve::CompiledSystem,
    bound: &[(char, Elem)],
    test: impl Fn(Elem) -> bool,
) -> bool {
    solutions(f, inner, bound).into_iter().any(test)
}

fn left_ann(r: &FiniteStarRing, x: Elem) -> &FixedBitSet {
    r.left_annihilator(x)
}

fn right_ann(r: &FiniteStarRing, x: Elem) -> &FixedBitSet {
    r.right_annihilator(x)
}

fn characteristic_ew(f: &Facts, t: &[Elem], tally: &mut Tally) {
    let r = f.ring;
    let (a, w) = (t[0], t[1]);
    tally.instance();
    let bound = [('a', a), ('w', w)];
    let a_star = r.star(a);
    let flags = [
        f.w_core(a, w).is_some(),
        !solutions(f, &f.sys.w_core_five, &bound).is_empty(),
        !solutions(f, &f.sys.w_core_ideal, &bound).is_empty(),
        exists_annihilator(f, &f.sys.w_core_inner, &bound, |x| {
            left_ann(r, x) == left_ann(r, a) && right_ann(r, x) == right_ann(r, a_star)
        }),
        exists_annihilator(f, &f.sys.w_core_inner, &bound, |x| {
            left_ann(r, x) == left_ann(r, a) && right_ann(r, a_star).is_subset(right_ann(r, x))
        }),
    ];
    tally.check(all_equal(&flags), || format!("{}: (i)..(v) = {}", show(r, "aw", t), flags_text(&flags)));
}

fn characteristic_vf(f: &Facts, t: &[Elem], tally: &mut Tally) {
    let r = f.ring;
    let (a, v) = (t[0], t[1]);
    tally.instance();
    let bound = [('a', a), ('v', v)];
    let a_star = r.star(a);
    let flags = [
        f.dual_v_core(a, v).is_some(),
        !solutions(f, &f.sys.dual_v_core_five, &bound).is_empty(),
        !solutions(f, &f.sys.dual_v_core_ideal, &bound).is_empty(),
        exists_annihilator(f, &f.sys.dual_v_core_inner, &bound, |y| {
            left_ann(r, y) == left_ann(r, a_star) && right_ann(r, y) == right_ann(r, a)
        }),
        exists_annihilator(f, &f.sys.dual_v_core_inner, &bound, |y| {
            left_ann(r, a_star).is_subset(left_ann(r, y)) && right_ann(r, y) == right_ann(r, a)
        }),
    ];
    tally.check(all_equal(&flags), || format!("{}: (i)..(v) = {}", show(r, "av", t), flags_text(&flags)));
}

fn core_char(f: &Facts, t: &[Elem], tally: &mut Tally) {
    let r = f.ring;
    let a = t[0];
    tally.instance();
    let bound = [('a', a)];
    let a_star = r.star(a);
    let flags = [
        f.core(a).is_some(),
        !solutions(f, &f.sys.core_five, &bound).is_empty(),
        !solutions(f, &f.sys.core_ideal, &bound).is_empty(),
        exists_annihilator(f, &f.sys.inner, &bound, |x| {
            left_ann(r, x) == left_ann(r, a) && right_ann(r, x) == right_ann(r, a_star)
        }),
        exists_annihilator(f, &f.sys.inner, &bound, |x| {
            left_ann(r, x) == left_ann(r, a) && right_ann(r, a_star).is_subset(right_ann(r, x))
        }),
    ];
    tally.check(all_equal(&flags), || format!("{}: (i)..(v) = {}", show(r, "a", t), flags_text(&flags)));
}

fn ideal_condition(r: &FiniteStarRing, a: Elem, w: Elem, n: usize) -> bool {
    let aw = r.mul(a, w);
    let left = r.mul(r.pow(r.star(aw), n), a);
    let right = r.mul(r.pow(aw, n - 1), a);
    r.leq_l(a, left) && r.leq_l(a, right)
}

fn ideal_form(f: &Facts, t: &[Elem], tally: &mut Tally) {
    let r = f.ring;
    let (a, w) = (t[0], t[1]);
    let aw = r.mul(a, w);
    let x = f.w_core(a, w);
    let third = r.leq_r(a, aw) && f.core(aw).is_some();
    for n in [2, 3] {
        tally.instance();
        let flags = [x.is_some(), ideal_condition(r, a, w, n), third];
        tally.check(all_equal(&flags), || format!("{}, n={n}: (i)..(iii) = {}", show(r, "aw", t), flags_text(&flags)));
    }
    if let Some(x) = x {
        tally.check(f.core(aw) == Some(x), || format!("{}: a_w != (aw)^core", show(r, "aw", t)));
        let along = f.along(w, a);
        tally.check(along.is_some(), || format!("{}: w not invertible along a", show(r, "aw", t)));
        if let Some(g) = along {
            for &t13 in f.one_three(aw) {
                tally.check(r.prod(&[g, w, t13]) == x, || {
                    format!("{}: w^|a w (aw)^(1,3) != a_w for (1,3)-inverse {}", show(r, "aw", t), r.label(t13))
                });
            }
        }
    }
}

fn ideal_form_n1(f: &Facts, t: &[Elem], tally: &mut Tally) {
    let r = f.ring;
    let (a, w) = (t[0], t[1]);
    tally.instance();
    let exists = f.w_core(a, w).is_some();
    let cond = ideal_condition(r, a, w, 1);
    tally.check(!exists || cond, || format!("{}: w-core invertible but a not in S(aw)*a", show(r, "aw", t)));
    if cond && !exists {
        tally.observe(|| format!("{}: a in S(aw)*a ∩ Sa without a w-core inverse", show(r, "aw", t)));
    }
}

// Relations to inverses along an element.

fn relate_to_mary(f: &Facts, t: &[Elem], tally: &mut Tally) {
    let r = f.ring;
    let (a, w) = (t[0], t[1]);
    tally.instance();
    let x = f.w_core(a, w);
    let along = f.along(w, a);
    let criterion = along.is_some() && !f.one_three(a).is_empty();
    tally.check(x.is_some() == criterion, || {
        format!("{}: w-core exists {} but w^|a and a^(1,3) exist {}", show(r, "aw", t), x.is_some(), criterion)
    });
    if let (Some(x), Some(g)) = (x, along) {
        for &t13 in f.one_three(a) {
            tally.check(r.mul(g, t13) == x, || {
                format!("{}: w^|a a^(1,3) != a_w for (1,3)-inverse {}", show(r, "aw", t), r.label(t13))
            });
        }
        tally.check(r.mul(x, a) == g, || format!("{}: a_w a != w^|a", show(r, "aw", t)));
    }
}

fn relate_to_dual_mary(f: &Facts, t: &[Elem], tally: &mut Tally) {
    let r = f.ring;
    let (a, v) = (t[0], t[1]);
    tally.instance();
    let y = f.dual_v_core(a, v);
    let along = f.along(v, a);
    let criterion = along.is_some() && !f.one_four(a).is_empty();
    tally.check(y.is_some() == criterion, || {
        format!("{}: dual v-core exists {} but v^|a and a^(1,4) exist {}", show(r, "av", t), y.is_some(), criterion)
    });
    if let (Some(y), Some(g)) = (y, along) {
        let (va, av) = (r.mul(v, a), r.mul(a, v));
        let (gva, gav) = (f.group(va), f.group(av));
        tally.check(gva.is_some() && gav.is_some(), || format!("{}: va or av lacks a group inverse", show(r, "av", t)));
        for &t14 in f.one_four(a) {
            let mut ok = r.mul(t14, g) == y;
            if let (Some(gva), Some(gav)) = (gva, gav) {
                ok &= r.prod(&[t14, a, gva]) == y && r.prod(&[t14, gav, a]) == y;
            }
            tally.check(ok, || format!("{}: formula fails for (1,4)-inverse {}", show(r, "av", t), r.label(t14)));
        }
    }
}

fn group_result(f: &Facts, t: &[Elem], tally: &mut Tally) {
    let r = f.ring;
    let (a, w) = (t[0], t[1]);
    tally.instance();
    let (aw, wa) = (r.mul(a, w), r.mul(w, a));
    let along = f.along(w, a);
    let flags = [
        along.is_some(),
        r.green_relations(aw, a).r && f.group(aw).is_some(),
        r.green_relations(wa, a).l && f.group(wa).is_some(),
    ];
    tally.check(all_equal(&flags), || format!("{}: (i)..(iii) = {}", show(r, "aw", t), flags_text(&flags)));
    if let (Some(g), Some(gwa), Some(gaw)) = (along, f.group(wa), f.group(aw)) {
        tally.check(r.mul(a, gwa) == g && r.mul(gaw, a) == g, || {
            format!("{}: w^|a differs from a(wa)^# or (aw)^# a", show(r, "aw", t))
        });
    }
}

fn extended_repre(f: &Facts, t: &[Elem], tally: &mut Tally) {
    let r = f.ring;
    let (a, w) = (t[0], t[1]);
    tally.instance();
    let Some(x) = f.w_core(a, w) else { return };
    let (gwa, gaw) = (f.group(r.mul(w, a)), f.group(r.mul(a, w)));
    tally.check(gwa.is_some() && gaw.is_some(), || format!("{}: wa or aw lacks a group inverse", show(r, "aw", t)));
    let (Some(gwa), Some(gaw)) = (gwa, gaw) else { return };
    for &t13 in f.one_three(a) {
        tally.check(r.prod(&[a, gwa, t13]) == x && r.prod(&[gaw, a, t13]) == x, || {
            format!("{}: formula fails for (1,3)-inverse {}", show(r, "aw", t), r.label(t13))
        });
    }
}

// Special cases.

fn core_another(f: &Facts, t: &[Elem], tally: &mut Tally) {
    let r = f.ring;
    let a = t[0];
    tally.instance();
    let core = f.core(a);
    let a_core = f.w_core(a, a);
    let flags = [
        core.is_some(),
        f.group(a).is_some() && !f.one_three(a).is_empty(),
        a_core.is_some(),
        !solutions(f, &f.sys.core_cubed, &[('a', a)]).is_empty(),
    ];
    tally.check(all_equal(&flags), || format!("{}: (i)..(iv) = {}", show(r, "a", t), flags_text(&flags)));
    if let (Some(c), Some(x), Some(g)) = (core, a_core, f.group(a)) {
        tally.check(r.mul(a, x) == c && r.mul(g, c) == x, || format!("{}: value identities fail", show(r, "a", t)));
    }
}

fn core_another_1(f: &Facts, t: &[Elem], tally: &mut Tally) {
    let r = f.ring;
    let a = t[0];
    let ep = f.core_ep(a);
    for n in 1..=4 {
        tally.instance();
        let an = r.pow(a, n);
        let a_core = f.w_core(an, a);
        let core = f.core(an);
        tally.check(a_core.is_some() == core.is_some(), || {
            format!("{}, n={n}: a^n a-core invertible {} vs core invertible {}", show(r, "a", t), a_core.is_some(), core.is_some())
        });
        let reaches = ep.is_some_and(|(_, index)| index <= n);
        tally.check(core.is_some() == reaches, || {
            format!("{}, n={n}: a^n core invertible {} but pseudo-core index <= n is {}", show(r, "a", t), core.is_some(), reaches)
        });
        let exact = ep.is_some_and(|(_, index)| index == n);
        if core.is_some() != exact {
            tally.observe(|| {
                format!(
                    "{}, n={n}: a^n core invertible is {} while the index equals n is {}",
                    show(r, "a", t),
                    core.is_some(),
                    exact
                )
            });
        }
        if let (Some((d, _)), Some(c), Some(x)) = (ep, core, a_core) {
            tally.check(r.mul(r.pow(a, n - 1), c) == d && r.mul(an, x) == d, || {
                format!("{}, n={n}: core-EP formulas fail", show(r, "a", t))
            });
        }
    }
}

fn star_core_another(f: &Facts, t: &[Elem], tally: &mut Tally) {
    let r = f.ring;
    let a = t[0];
    tally.instance();
    let a_star = r.star(a);
    let x = f.w_core(a, a_star);
    let y = f.dual_v_core(a, a_star);
    let mp = f.mp(a);
    let flags = [x.is_some(), mp.is_some(), y.is_some()];
    tally.check(all_equal(&flags), || format!("{}: (i)..(iii) = {}", show(r, "a", t), flags_text(&flags)));
    if let (Some(x), Some(y), Some(m)) = (x, y, mp) {
        let ms = r.star(m);
        let ok = r.star(r.mul(x, a)) == m
            && r.star(r.mul(a, y)) == m
            && r.mul(ms, m) == x
            && r.mul(m, ms) == y;
        tally.check(ok, || format!("{}: value identities fail", show(r, "a", t)));
    }
}

fn wv_core_char(f: &Facts, t: &[Elem], tally: &mut Tally) {
    let r = f.ring;
    let (a, w, v) = (t[0], t[1], t[2]);
    tally.instance();
    let left = f.w_core(a, w).is_some() && f.dual_v_core(a, v).is_some();
    let right = f.along(w, a).is_some() && f.along(v, a).is_some() && f.mp(a).is_some();
    tally.check(left == right, || format!("{}: {left} vs {right}", show(r, "awv", t)));
}

fn star_duality(f: &Facts, t: &[Elem], tally: &mut Tally) {
    let r = f.ring;
    let (a, w) = (t[0], t[1]);
    tally.instance();
    let x = f.w_core(a, w);
    let y = f.dual_v_core(r.star(a), r.star(w));
    tally.check(x.map(|x| r.star(x)) == y, || {
        format!("{}: (a_w)* = {} but (a*)_(w*) = {}", show(r, "aw", t), show_opt(r, x.map(|x| r.star(x))), show_opt(r, y))
    });
}

fn wcore_of_wcore(f: &Facts, t: &[Elem], tally: &mut Tally) {
    let r = f.ring;
    let (a, w) = (t[0], t[1]);
    tally.instance();
    let Some(x) = f.w_core(a, w) else { return };
    let aw = r.mul(a, w);
    let c = f.core(x);
    tally.check(c == Some(r.prod(&[aw, aw, x])), || {
        format!("{}: (a_w)^core = {}", show(r, "aw", t), show_opt(r, c))
    });
}

fn wv_mary(f: &Facts, t: &[Elem], tally: &mut Tally) {
    let r = f.ring;
    let (a, w) = (t[0], t[1]);
    if f.mp(a).is_none() {
        tally.skip();
        return;
    }
    tally.instance();
    let a_star = r.star(a);
    let x = f.w_core(a, w);
    let g = f.along(r.mul(a, w), r.mul(a, a_star));
    tally.check(x == g, || format!("{}: a_w = {} but (aw)^|(aa*) = {}", show(r, "aw", t), show_opt(r, x), show_opt(r, g)));
    let y = f.dual_v_core(a, w);
    let h = f.along(r.mul(w, a), r.mul(a_star, a));
    tally.check(y == h, || format!("{}: dual = {} but (va)^|(a*a) = {}", show(r, "av", t), show_opt(r, y), show_opt(r, h)));
}

fn relations_bc(f: &Facts, t: &[Elem], tally: &mut Tally) {
    let r = f.ring;
    let (a, w) = (t[0], t[1]);
    tally.instance();
    let a_star = r.star(a);
    let x = f.w_core(a, w);
    let b = f.bc(r.mul(a, w), a, a_star);
    tally.check(x == b, || format!("{}: a_w = {} but (a,a*)-inverse = {}", show(r, "aw", t), show_opt(r, x), show_opt(r, b)));
    let y = f.dual_v_core(a, w);
    let c = f.bc(r.mul(w, a), a_star, a);
    tally.check(y == c, || format!("{}: dual = {} but (a*,a)-inverse = {}", show(r, "av", t), show_opt(r, y), show_opt(r, c)));
}

fn green_drazin(f: &Facts, t: &[Elem], tally: &mut Tally) {
    let r = f.ring;
    let (a, b) = (t[0], t[1]);
    tally.instance();
    let g = r.green_relations(a, b);
    if g.leq_r {
        tally.check(left_ann(r, b).is_subset(left_ann(r, a)), || format!("{}: a <=R b but 0b not in 0a", show(r, "ab", t)));
    }
    if g.leq_l {
        tally.check(right_ann(r, b).is_subset(right_ann(r, a)), || format!("{}: a <=L b but b0 not in a0", show(r, "ab", t)));
    }
    if g.r {
        tally.check(left_ann(r, a) == left_ann(r, b), || format!("{}: a R b but 0a != 0b", show(r, "ab", t)));
    }
    if g.l {
        tally.check(right_ann(r, a) == right_ann(r, b), || format!("{}: a L b but a0 != b0", show(r, "ab", t)));
    }
}

fn idempotent(f: &Facts, t: &[Elem], tally: &mut Tally) {
    let r = f.ring;
    let (a, w) = (t[0], t[1]);
    tally.instance();
    let aw = r.mul(a, w);
    let good: Vec<Elem> = r
        .projections()
        .into_iter()
        .filter(|&p| r.mul(p, a) == r.zero() && r.is_unit(r.add(p, aw)))
        .collect();
    let x = f.w_core(a, w);
    let flags = [x.is_some(), good.len() == 1, !good.is_empty()];
    tally.check(all_equal(&flags), || {
        format!("{}: (i)..(iii) = {} with {} projections", show(r, "aw", t), flags_text(&flags), good.len())
    });
    if let Some(x) = x {
        for &p in &good {
            let u_inv = r.inverse(r.add(p, aw)).expect("unit");
            tally.check(r.mul(u_inv, r.sub(r.one(), p)) == x, || {
                format!("{}: u^-1(1-p) != a_w for p = {}", show(r, "aw", t), r.label(p))
            });
        }
        if let Some(c) = f.core(aw) {
            let p = r.sub(r.one(), r.mul(aw, c));
            tally.check(good == [p], || format!("{}: 1 - aw(aw)^core is not the projection", show(r, "aw", t)));
        }
    }
}

// Unit criteria.

fn jacobson(f: &Facts, t: &[Elem], tally: &mut Tally) {
    let r = f.ring;
    let (a, b) = (t[0], t[1]);
    tally.instance();
    let alpha = r.sub(r.one(), r.mul(a, b));
    let beta = r.sub(r.one(), r.mul(b, a));
    tally.check(r.is_unit(alpha) == r.is_unit(beta), || format!("{}: 1-ab and 1-ba disagree", show(r, "ab", t)));
    if let (Some(ai), Some(bi)) = (r.inverse(alpha), r.inverse(beta)) {
        tally.check(r.add(r.one(), r.prod(&[b, ai, a])) == bi, || format!("{}: inverse formula fails", show(r, "ab", t)));
    }
}

fn mary_unit(f: &Facts, t: &[Elem], tally: &mut Tally) {
    let r = f.ring;
    let (a, d) = (t[0], t[1]);
    let inners = f.inner(d);
    if inners.is_empty() {
        tally.skip();
        return;
    }
    let along = f.along(a, d);
    for &di in inners {
        tally.instance();
        let u = unit_expr(r, r.mul(d, a), r.mul(d, di));
        let v = unit_expr(r, r.mul(a, d), r.mul(di, d));
        let flags = [along.is_some(), r.is_unit(u), r.is_unit(v)];
        tally.check(all_equal(&flags), || {
            format!("{}, d^-={}: (i)..(iii) = {}", show(r, "ad", t), r.label(di), flags_text(&flags))
        });
        if let (Some(g), Some(ui), Some(vi)) = (along, r.inverse(u), r.inverse(v)) {
            tally.check(r.mul(ui, d) == g && r.mul(d, vi) == g, || {
                format!("{}, d^-={}: u^-1 d or d v^-1 differs from a^|d", show(r, "ad", t), r.label(di))
            });
        }
    }
}

fn classical_mp(f: &Facts, t: &[Elem], tally: &mut Tally) {
    let r = f.ring;
    let a = t[0];
    let inners = f.inner(a);
    if inners.is_empty() {
        tally.skip();
        return;
    }
    let a_star = r.star(a);
    let mp = f.mp(a);
    for &ai in inners {
        tally.instance();
        let u = unit_expr(r, r.mul(a, a_star), r.mul(a, ai));
        let v = unit_expr(r, r.mul(a_star, a), r.mul(ai, a));
        let flags = [mp.is_some(), r.is_unit(u), r.is_unit(v)];
        tally.check(all_equal(&flags), || {
            format!("{}, a^-={}: (i)..(iii) = {}", show(r, "a", t), r.label(ai), flags_text(&flags))
        });
        if let (Some(m), Some(ui), Some(vi)) = (mp, r.inverse(u), r.inverse(v)) {
            tally.check(r.star(r.mul(ui, a)) == m && r.star(r.mul(a, vi)) == m, || {
                format!("{}, a^-={}: MP formulas fail", show(r, "a", t), r.label(ai))
            });
        }
    }
}

/// Units `u, r, s, t` for a pair of weights.
fn joint_units(r: &FiniteStarRing, a: Elem, w: Elem, v: Elem, ai: Elem) -> [Elem; 4] {
    let s = r.star(a);
    let left = r.mul(a, ai);
    let right = r.mul(ai, a);
    [
        unit_expr(r, r.prod(&[a, w, a, v, a, s]), left),
        unit_expr(r, r.prod(&[a, v, a, w, a, s]), left),
        unit_expr(r, r.prod(&[w, a, v, a, s, a]), right),
        unit_expr(r, r.prod(&[v, a, w, a, s, a]), right),
    ]
}

/// Check the displayed formulas for `a_w` and `a_{v,⊕}` from the joint units.
fn joint_formulas(f: &Facts, t: &[Elem], ai: Elem, units: [Elem; 4], tally: &mut Tally) {
    let r = f.ring;
    let (a, w, v) = (t[0], t[1], t[2]);
    let s = r.star(a);
    let (Some(ui), Some(si), Some(ti)) = (r.inverse(units[0]), r.inverse(units[2]), r.inverse(units[3])) else {
        return;
    };
    let m = r.star(r.prod(&[ui, a, w, a, v, a]));
    let x = r.prod(&[a, v, a, s, a, si, m]);
    let y = r.prod(&[m, a, w, a, s, a, ti]);
    tally.check(f.w_core(a, w) == Some(x) && f.dual_v_core(a, v) == Some(y), || {
        format!("{}, a^-={}: unit formulas fail", show(r, "awv", t), r.label(ai))
    });
}

fn vw_intersect(f: &Facts, t: &[Elem], tally: &mut Tally) {
    let r = f.ring;
    let (a, w, v) = (t[0], t[1], t[2]);
    let inners = f.inner(a);
    if f.along(v, a).is_none() || inners.is_empty() {
        tally.skip();
        return;
    }
    let first = f.w_core(a, w).is_some() && f.dual_v_core(a, v).is_some();
    let second = f.along(w, a).is_some() && f.mp(a).is_some();
    for &ai in inners {
        tally.instance();
        let units = joint_units(r, a, w, v, ai);
        let mut flags = vec![first, second];
        flags.extend(units.iter().map(|&u| r.is_unit(u)));
        tally.check(all_equal(&flags), || {
            format!("{}, a^-={}: (i)..(vi) = {}", show(r, "awv", t), r.label(ai), flags_text(&flags))
        });
        if first {
            joint_formulas(f, t, ai, units, tally);
        }
    }
}

fn vw_intersect_dedekind(f: &Facts, t: &[Elem], tally: &mut Tally) {
    let r = f.ring;
    let (a, w, v) = (t[0], t[1], t[2]);
    let inners = f.inner(a);
    if inners.is_empty() {
        tally.skip();
        return;
    }
    let mp = f.mp(a).is_some();
    let first = f.w_core(a, w).is_some() && f.dual_v_core(a, v).is_some();
    let second = f.along(r.prod(&[w, a, v]), a).is_some() && mp;
    let third = f.along(r.prod(&[v, a, w]), a).is_some() && mp;
    for &ai in inners {
        tally.instance();
        let units = joint_units(r, a, w, v, ai);
        let mut flags = vec![first, second, third];
        flags.extend(units.iter().map(|&u| r.is_unit(u)));
        tally.check(all_equal(&flags), || {
            format!("{}, a^-={}: (i)..(vii) = {}", show(r, "awv", t), r.label(ai), flags_text(&flags))
        });
        if first {
            joint_formulas(f, t, ai, units, tally);
        }
    }
}

fn product_along(f: &Facts, t: &[Elem], tally: &mut Tally) {
    let r = f.ring;
    let (a, w, v) = (t[0], t[1], t[2]);
    tally.instance();
    let left = f.along(w, a).is_some() && f.along(v, a).is_some();
    let right = f.along(r.prod(&[w, a, v]), a).is_some();
    tally.check(left == right, || format!("{}: {left} vs {right}", show(r, "awv", t)));
}

fn vw_corollary(f: &Facts, t: &[Elem], tally: &mut Tally) {
    let r = f.ring;
    let (a, w, v) = (t[0], t[1], t[2]);
    if f.along(v, a).is_none() {
        tally.skip();
        return;
    }
    tally.instance();
    let s = r.star(a);
    let x = f.w_core(a, w);
    let y = f.dual_v_core(a, v);
    let flags = [
        x.is_some() && y.is_some(),
        f.along(w, a).is_some() && f.along(s, a).is_some(),
        f.along(r.prod(&[w, a, v, a, s]), a).is_some(),
        f.along(r.prod(&[v, a, w, a, s]), a).is_some(),
    ];
    tally.check(all_equal(&flags), || format!("{}: (i)..(iv) = {}", show(r, "awv", t), flags_text(&flags)));
    let (Some(x), Some(y)) = (x, y) else { return };
    let k = r.prod(&[a, w, a, v, a, s, a]);
    let rights: Vec<Elem> = r.elements().filter(|&p| r.mul(k, p) == a).collect();
    let lefts: Vec<Elem> = r.elements().filter(|&q| r.mul(q, k) == a).collect();
    for &p in &rights {
        for &q in &lefts {
            let value = r.prod(&[a, v, a, s, a, p, r.star(r.prod(&[q, a, w, a, v, a]))]);
            tally.check(value == x, || format!("{}: a_w formula fails", show(r, "awv", t)));
        }
    }
    let kk = r.prod(&[a, v, a, w, a, s, a]);
    let rights: Vec<Elem> = r.elements().filter(|&p| r.mul(kk, p) == a).collect();
    let lefts: Vec<Elem> = r.elements().filter(|&q| r.mul(q, kk) == a).collect();
    for &p in &rights {
        for &q in &lefts {
            let value = r.prod(&[r.star(r.prod(&[q, a, v, a, w, a])), a, w, a, s, a, p]);
            tally.check(value == y, || format!("{}: a_(v) formula fails", show(r, "awv", t)));
        }
    }
}

fn referee_suggest(f: &Facts, t: &[Elem], tally: &mut Tally) {
    let r = f.ring;
    let (a, w, v) = (t[0], t[1], t[2]);
    let inners = f.inner(a);
    if inners.is_empty() {
        tally.skip();
        return;
    }
    let s = r.star(a);
    let v_along = f.along(v, a).is_some();
    let x = f.w_core(a, w);
    let first = x.is_some() && f.dual_v_core(a, v).is_some();
    let second = f.along(w, a).is_some() && v_along && f.mp(a).is_some();
    for &ai in inners {
        tally.instance();
        let (left, right) = (r.mul(a, ai), r.mul(ai, a));
        let units = [
            unit_expr(r, r.prod(&[a, w, a, s]), left),
            unit_expr(r, r.prod(&[a, s, a, w]), left),
            unit_expr(r, r.prod(&[w, a, s, a]), right),
            unit_expr(r, r.prod(&[s, a, w, a]), right),
        ];
        let mut flags = vec![first, second];
        flags.extend(units.iter().map(|&u| v_along && r.is_unit(u)));
        tally.check(all_equal(&flags), || {
            format!("{}, a^-={}: (i)..(vi) = {}", show(r, "awv", t), r.label(ai), flags_text(&flags))
        });
        if let (true, Some(ui), Some(si)) = (first, r.inverse(units[0]), r.inverse(units[2])) {
            let value = r.prod(&[a, s, a, si, r.star(r.prod(&[ui, a, w, a]))]);
            tally.check(Some(value) == x, || format!("{}, a^-={}: a_w formula fails", show(r, "awv", t), r.label(ai)));
        }
    }
}

fn intersect(f: &Facts, t: &[Elem], tally: &mut Tally) {
    let r = f.ring;
    let (a, w) = (t[0], t[1]);
    let inners = f.inner(a);
    if inners.is_empty() {
        tally.skip();
        return;
    }
    let s = r.star(a);
    let x = f.w_core(a, w);
    let y = f.dual_v_core(a, w);
    let base = [
        x.is_some() && y.is_some(),
        f.along(w, a).is_some() && f.mp(a).is_some(),
        x.is_some() && f.dual_v_core(a, s).is_some(),
    ];
    for &ai in inners {
        tally.instance();
        let (left, right) = (r.mul(a, ai), r.mul(ai, a));
        let units = [
            unit_expr(r, r.prod(&[a, w, a, s]), left),
            unit_expr(r, r.prod(&[s, a, w, a]), right),
            unit_expr(r, r.prod(&[w, a, s, a]), right),
            unit_expr(r, r.prod(&[a, s, a, w]), left),
        ];
        let mut flags = base.to_vec();
        flags.extend(units.iter().map(|&u| r.is_unit(u)));
        tally.check(all_equal(&flags), || {
            format!("{}, a^-={}: (i)..(vii) = {}", show(r, "aw", t), r.label(ai), flags_text(&flags))
        });
        if let (Some(x), Some(y), Some(si), Some(ti)) = (x, y, r.inverse(units[2]), r.inverse(units[3])) {
            tally.check(r.prod(&[ti, a, s]) == x && r.prod(&[s, a, si]) == y, || {
                format!("{}, a^-={}: t^-1 aa* or a*a s^-1 formula fails", show(r, "aw", t), r.label(ai))
            });
        }
    }
}

fn chen_corollary(f: &Facts, t: &[Elem], tally: &mut Tally) {
    let r = f.ring;
    let a = t[0];
    let inners = f.inner(a);
    if inners.is_empty() {
        tally.skip();
        return;
    }
    let s = r.star(a);
    let (core, dual) = (f.core(a), f.dual_core(a));
    let base = [
        core.is_some() && dual.is_some(),
        f.group(a).is_some() && f.mp(a).is_some(),
    ];
    for &ai in inners {
        tally.instance();
        let (left, right) = (r.mul(a, ai), r.mul(ai, a));
        let units = [
            unit_expr(r, r.prod(&[a, a, s]), left),
            unit_expr(r, r.prod(&[s, a, a]), right),
            unit_expr(r, r.prod(&[a, s, a]), right),
            unit_expr(r, r.prod(&[a, s, a]), left),
        ];
        let mut flags = base.to_vec();
        flags.extend(units.iter().map(|&u| r.is_unit(u)));
        tally.check(all_equal(&flags), || {
            format!("{}, a^-={}: (i)..(vi) = {}", show(r, "a", t), r.label(ai), flags_text(&flags))
        });
        if let (Some(c), Some(d), Some(si), Some(ti)) = (core, dual, r.inverse(units[2]), r.inverse(units[3])) {
            tally.check(r.prod(&[ti, a, s]) == c && r.prod(&[s, a, si]) == d, || {
                format!("{}, a^-={}: core formulas fail", show(r, "a", t), r.label(ai))
            });
        }
    }
}

fn rakic(f: &Facts, t: &[Elem], tally: &mut Tally) {
    let r = f.ring;
    let a = t[0];
    if f.mp(a).is_none() {
        tally.skip();
        return;
    }
    tally.instance();
    let core = f.core(a);
    let along = f.along(a, r.mul(a, r.star(a)));
    tally.check(core == along, || format!("{}: core {} vs a^|(aa*) {}", show(r, "a", t), show_opt(r, core), show_opt(r, along)));
}

fn mp_ideal(f: &Facts, t: &[Elem], tally: &mut Tally) {
    let r = f.ring;
    let a = t[0];
    tally.instance();
    let k = r.prod(&[a, r.star(a), a]);
    let rights: Vec<Elem> = r.elements().filter(|&p| r.mul(k, p) == a).collect();
    let lefts: Vec<Elem> = r.elements().filter(|&q| r.mul(q, k) == a).collect();
    let mp = f.mp(a);
    let flags = [mp.is_some(), !rights.is_empty(), !lefts.is_empty()];
    tally.check(all_equal(&flags), || format!("{}: (i)..(iii) = {}", show(r, "a", t), flags_text(&flags)));
    if let Some(m) = mp {
        tally.check(rights.iter().all(|&p| r.star(r.mul(a, p)) == m), || format!("{}: (ax)* != a^+", show(r, "a", t)));
        tally.check(lefts.iter().all(|&q| r.star(r.mul(q, a)) == m), || format!("{}: (ya)* != a^+", show(r, "a", t)));
    }
}

fn one_along(f: &Facts, t: &[Elem], tally: &mut Tally) {
    let r = f.ring;
    let a = t[0];
    tally.instance();
    let along = f.along(r.one(), a);
    let expect = f.group(a).map(|g| r.mul(a, g));
    tally.check(along == expect, || format!("{}: 1^|a = {} vs aa^# = {}", show(r, "a", t), show_opt(r, along), show_opt(r, expect)));
}

macro_rules! theorem {
    ($id:literal, $arity:ident, $check:ident, $statement:literal) => {
        Theorem {
            id: $id,
            statement: $statement,
            arity: Arity::$arity,
            mode: Mode::Verify,
            check: $check,
        }
    };
}

pub static CATALOG: &[Theorem] = &[
    theorem!("uniqueness", Two, uniqueness, "a has at most one w-core and at most one dual w-core inverse"),
    theorem!("added_lemma", Two, added_lemma, "a w-core inverse x satisfies awxa = a, xawx = x, and wx is a {1,2,3}-inverse"),
    theorem!("characteristic_ew", Two, characteristic_ew, "w-core invertibility via five equations, ideals and annihilators"),
    theorem!("characteristic_vf", Two, characteristic_vf, "dual v-core invertibility via five equations, ideals and annihilators"),
    theorem!("core_char", One, core_char, "core invertibility via five equations, ideals and annihilators"),
    theorem!("ideal_form", Two, ideal_form, "a_w exists iff a in S[(aw)*]^n a ∩ S(aw)^(n-1) a (n = 2, 3) iff a in awS and aw core invertible"),
    Theorem {
        id: "ideal_form_n1",
        statement: "search for a finite ring where a in S(aw)*a ∩ Sa without a w-core inverse",
        arity: Arity::Two,
        mode: Mode::Search,
        check: ideal_form_n1,
    },
    theorem!("relate_to_mary", Two, relate_to_mary, "a_w exists iff w^|a and a^(1,3) exist; a_w = w^|a a^(1,3), w^|a = a_w a"),
    theorem!("relate_to_dual_mary", Two, relate_to_dual_mary, "a_(v) exists iff v^|a and a^(1,4) exist; a_(v) = a^(1,4) v^|a"),
    theorem!("group_result", Two, group_result, "w^|a exists iff aw R a with aw group invertible iff wa L a with wa group invertible"),
    theorem!("extended_repre", Two, extended_repre, "a_w = a(wa)^# a^(1,3) = (aw)^# a a^(1,3)"),
    theorem!("core_another", One, core_another, "core invertible iff group and {1,3} invertible iff a-core invertible"),
    theorem!("core_another_1", One, core_another_1, "a^n a-core invertible iff a^n core invertible iff pseudo-core index <= n"),
    theorem!("star_core_another", One, star_core_another, "a* -core, dual a*-core and Moore-Penrose invertibility coincide"),
    theorem!("wv_core_char", Three, wv_core_char, "a_w and a_(v) exist iff w, v invertible along a and a^+ exists"),
    theorem!("star_duality", Two, star_duality, "(a_w)* = (a*)_(w*) including existence"),
    theorem!("wcore_of_wcore", Two, wcore_of_wcore, "(a_w)^core = (aw)^2 a_w"),
    theorem!("wv_mary", Two, wv_mary, "for a^+ existing: a_w = (aw)^|(aa*) and a_(v) = (va)^|(a*a)"),
    theorem!("relations_bc", Two, relations_bc, "a_w is the (a,a*)-inverse of aw; a_(v) is the (a*,a)-inverse of va"),
    theorem!("green_drazin", Two, green_drazin, "a <=R b implies 0b ⊆ 0a; a <=L b implies b0 ⊆ a0"),
    theorem!("idempotent", Two, idempotent, "a_w exists iff a unique projection p has pa = 0 and p + aw a unit"),
    theorem!("jacobson", Two, jacobson, "1 - ab is a unit iff 1 - ba is, with (1-ba)^-1 = 1 + b(1-ab)^-1 a"),
    theorem!("mary_unit", Two, mary_unit, "a^|d exists iff da + 1 - dd^- is a unit iff ad + 1 - d^-d is a unit"),
    theorem!("classical_mp", One, classical_mp, "a^+ exists iff aa* + 1 - aa^- is a unit iff a*a + 1 - a^-a is a unit"),
    theorem!("vw_intersect", Three, vw_intersect, "for v invertible along a: joint existence iff each of four units"),
    theorem!("vw_corollary", Three, vw_corollary, "for v invertible along a: joint existence iff w, a* along a iff wavaa* along a"),
    theorem!("referee_suggest", Three, referee_suggest, "joint existence iff v along a and one of four single-weight units"),
    theorem!("vw_intersect_dedekind", Three, vw_intersect_dedekind, "joint existence iff wav along a with a^+ iff each of four units"),
    theorem!("product_along", Three, product_along, "w and v invertible along a iff wav invertible along a"),
    theorem!("intersect", Two, intersect, "a_w and a_(w) exist iff w along a with a^+ iff each of four units; a_w = t^-1 aa*"),
    theorem!("chen_corollary", One, chen_corollary, "core and dual core exist iff group and MP exist iff each of four units"),
    theorem!("rakic", One, rakic, "for a^+ existing: a^core = a^|(aa*)"),
    theorem!("mp_ideal", One, mp_ideal, "a^+ exists iff a in aa*aS iff a in Saa*a, with a^+ = (ax)* = (ya)*"),
    theorem!("one_along", One, one_along, "1^|a exists iff a^# exists, and 1^|a = aa^#"),
];

pub fn find(id: &str) -> Option<&'static Theorem> {
    CATALOG.iter().find(|t| t.id == id)
}
