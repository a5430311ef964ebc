//! Finite *-rings given by full operation tables.

use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::spec::RingSpec;
use crate::error::{Error, Result};

/// Element handle: an index into the ring's element list.
pub type Elem = u16;

/// Largest ring that will be enumerated unless a larger cap is requested.
pub const DEFAULT_CAP: usize = 6561;

/// Axioms are checked on every triple up to this size, on a sample above it.
pub const EXHAUSTIVE_AXIOM_LIMIT: usize = 256;

const AXIOM_SAMPLES: usize = 200_000;

pub struct FiniteStarRing {
    spec: RingSpec,
    size: usize,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    star: Vec<Elem>,
    inverse: Vec<Option<Elem>>,
    zero: Elem,
    one: Elem,
    labels: Vec<String>,
    left_ideals: OnceLock<Vec<FixedBitSet>>,
    right_ideals: OnceLock<Vec<FixedBitSet>>,
    left_annihilators: OnceLock<Vec<FixedBitSet>>,
    right_annihilators: OnceLock<Vec<FixedBitSet>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GreenRelations {
    pub leq_l: bool,
    pub leq_r: bool,
    pub leq_h: bool,
    pub l: bool,
    pub r: bool,
    pub h: bool,
}

/// Raw tables before the derived data is filled in.
struct Tables {
    size: usize,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    star: Vec<Elem>,
    zero: Elem,
    one: Elem,
    labels: Vec<String>,
}

fn zmod_tables(n: usize) -> Tables {
    let mut add = vec![0; n * n];
    let mut mul = vec![0; n * n];
    for x in 0..n {
        for y in 0..n {
            add[x * n + y] = ((x + y) % n) as Elem;
            mul[x * n + y] = ((x * y) % n) as Elem;
        }
    }
    Tables {
        size: n,
        add,
        mul,
        star: (0..n as Elem).collect(),
        zero: 0,
        one: (1 % n) as Elem,
        labels: (0..n).map(|x| x.to_string()).collect(),
    }
}

fn mat_tables(k: usize, p: usize) -> Tables {
    let entries = k * k;
    let n = p.pow(entries as u32);
    let decode = |mut x: usize| -> Vec<usize> {
        let mut d = vec![0; entries];
        for slot in d.iter_mut() {
            *slot = x % p;
            x /= p;
        }
        d
    };
    let encode = |d: &[usize]| -> Elem { d.iter().rev().fold(0usize, |acc, &v| acc * p + v) as Elem };
    let digits: Vec<Vec<usize>> = (0..n).map(decode).collect();
    let mut add = vec![0; n * n];
    let mut mul = vec![0; n * n];
    let mut buf = vec![0; entries];
    for x in 0..n {
        for y in 0..n {
            let (dx, dy) = (&digits[x], &digits[y]);
            for i in 0..entries {
                buf[i] = (dx[i] + dy[i]) % p;
            }
            add[x * n + y] = encode(&buf);
            for i in 0..k {
                for j in 0..k {
                    buf[i * k + j] = (0..k).map(|l| dx[i * k + l] * dy[l * k + j]).sum::<usize>() % p;
                }
            }
            mul[x * n + y] = encode(&buf);
        }
    }
    let star = digits
        .iter()
        .map(|d| {
            let t: Vec<usize> = (0..entries).map(|idx| d[(idx % k) * k + idx / k]).collect();
            encode(&t)
        })
        .collect();
    let identity: Vec<usize> = (0..entries).map(|idx| usize::from(idx / k == idx % k)).collect();
    let labels = digits
        .iter()
        .map(|d| {
            let rows: Vec<String> = (0..k)
                .map(|i| {
                    let row: Vec<String> = (0..k).map(|j| d[i * k + j].to_string()).collect();
                    format!("[{}]", row.join(","))
                })
                .collect();
            format!("[{}]", rows.join(","))
        })
        .collect();
    Tables {
        size: n,
        add,
        mul,
        star,
        zero: 0,
        one: encode(&identity),
        labels,
    }
}

fn product_tables(l: &Tables, r: &Tables) -> Tables {
    let (nl, nr) = (l.size, r.size);
    let n = nl * nr;
    let split = |x: usize| (x / nr, x % nr);
    let join = |a: Elem, b: Elem| (a as usize * nr + b as usize) as Elem;
    let mut add = vec![0; n * n];
    let mut mul = vec![0; n * n];
    for x in 0..n {
        let (xl, xr) = split(x);
        for y in 0..n {
            let (yl, yr) = split(y);
            add[x * n + y] = join(l.add[xl * nl + yl], r.add[xr * nr + yr]);
            mul[x * n + y] = join(l.mul[xl * nl + yl], r.mul[xr * nr + yr]);
        }
    }
    let star = (0..n)
        .map(|x| {
            let (xl, xr) = split(x);
            join(l.star[xl], r.star[xr])
        })
        .collect();
    let labels = (0..n)
        .map(|x| {
            let (xl, xr) = split(x);
            format!("({}, {})", l.labels[xl], r.labels[xr])
        })
        .collect();
    Tables {
        size: n,
        add,
        mul,
        star,
        zero: join(l.zero, r.zero),
        one: join(l.one, r.one),
        labels,
    }
}

fn tables(spec: &RingSpec) -> Tables {
    match spec {
        RingSpec::Zmod(n) => zmod_tables(*n as usize),
        RingSpec::Mat { size, prime } => mat_tables(*size, *prime as usize),
        RingSpec::Prod(l, r) => product_tables(&tables(l), &tables(r)),
    }
}

/// Enumerate the ring with the default size cap.
pub fn enumerate_ring(spec: &RingSpec) -> Result<FiniteStarRing> {
    enumerate_ring_with_cap(spec, DEFAULT_CAP)
}

pub fn enumerate_ring_with_cap(spec: &RingSpec, cap: usize) -> Result<FiniteStarRing> {
    let card = spec.cardinality();
    if card > cap as u128 || card > Elem::MAX as u128 {
        return Err(Error::TooLarge(format!("{spec} has {card} elements, cap is {cap}")));
    }
    let t = tables(spec);
    let n = t.size;
    let neg = (0..n)
        .map(|x| {
            (0..n)
                .find(|&y| t.add[x * n + y] == t.zero)
                .expect("additive inverse") as Elem
        })
        .collect();
    let inverse = (0..n)
        .map(|x| {
            (0..n)
                .find(|&y| t.mul[x * n + y] == t.one && t.mul[y * n + x] == t.one)
                .map(|y| y as Elem)
        })
        .collect();
    let ring = FiniteStarRing {
        spec: spec.clone(),
        size: n,
        add: t.add,
        mul: t.mul,
        neg,
        star: t.star,
        inverse,
        zero: t.zero,
        one: t.one,
        labels: t.labels,
        left_ideals: OnceLock::new(),
        right_ideals: OnceLock::new(),
        left_annihilators: OnceLock::new(),
        right_annihilators: OnceLock::new(),
    };
    ring.check_axioms()?;
    Ok(ring)
}

impl FiniteStarRing {
    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        0..self.size as Elem
    }

    #[inline]
    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        self.add[x as usize * self.size + y as usize]
    }

    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        self.mul[x as usize * self.size + y as usize]
    }

    #[inline]
    pub fn neg(&self, x: Elem) -> Elem {
        self.neg[x as usize]
    }

    #[inline]
    pub fn sub(&self, x: Elem, y: Elem) -> Elem {
        self.add(x, self.neg(y))
    }

    #[inline]
    pub fn star(&self, x: Elem) -> Elem {
        self.star[x as usize]
    }

    pub fn zero(&self) -> Elem {
        self.zero
    }

    pub fn one(&self) -> Elem {
        self.one
    }

    /// Product of a list of elements, left to right.
    pub fn prod(&self, xs: &[Elem]) -> Elem {
        xs.iter().fold(self.one, |acc, &x| self.mul(acc, x))
    }

    pub fn pow(&self, x: Elem, k: usize) -> Elem {
        (0..k).fold(self.one, |acc, _| self.mul(acc, x))
    }

    pub fn inverse(&self, x: Elem) -> Option<Elem> {
        self.inverse[x as usize]
    }

    pub fn is_unit(&self, x: Elem) -> bool {
        self.inverse[x as usize].is_some()
    }

    pub fn is_projection(&self, p: Elem) -> bool {
        self.star(p) == p && self.mul(p, p) == p
    }

    pub fn projections(&self) -> Vec<Elem> {
        self.elements().filter(|&p| self.is_projection(p)).collect()
    }

    pub fn label(&self, x: Elem) -> &str {
        &self.labels[x as usize]
    }

    fn set_table(&self, f: impl Fn(Elem, Elem) -> bool) -> Vec<FixedBitSet> {
        self.elements()
            .map(|q| {
                let mut set = FixedBitSet::with_capacity(self.size);
                for r in self.elements() {
                    if f(q, r) {
                        set.insert(r as usize);
                    }
                }
                set
            })
            .collect()
    }

    fn multiples(&self, left: bool) -> Vec<FixedBitSet> {
        self.elements()
            .map(|q| {
                let mut set = FixedBitSet::with_capacity(self.size);
                for s in self.elements() {
                    let m = if left { self.mul(s, q) } else { self.mul(q, s) };
                    set.insert(m as usize);
                }
                set
            })
            .collect()
    }

    /// `Sq`.
    pub fn left_ideal(&self, q: Elem) -> &FixedBitSet {
        &self.left_ideals.get_or_init(|| self.multiples(true))[q as usize]
    }

    /// `qS`.
    pub fn right_ideal(&self, q: Elem) -> &FixedBitSet {
        &self.right_ideals.get_or_init(|| self.multiples(false))[q as usize]
    }

    /// `{r : r q = 0}`.
    pub fn left_annihilator(&self, q: Elem) -> &FixedBitSet {
        &self
            .left_annihilators
            .get_or_init(|| self.set_table(|q, r| self.mul(r, q) == self.zero))[q as usize]
    }

    /// `{r : q r = 0}`.
    pub fn right_annihilator(&self, q: Elem) -> &FixedBitSet {
        &self
            .right_annihilators
            .get_or_init(|| self.set_table(|q, r| self.mul(q, r) == self.zero))[q as usize]
    }

    /// `p = s q` for some `s`.
    pub fn leq_l(&self, p: Elem, q: Elem) -> bool {
        self.left_ideal(q).contains(p as usize)
    }

    /// `p = q s` for some `s`.
    pub fn leq_r(&self, p: Elem, q: Elem) -> bool {
        self.right_ideal(q).contains(p as usize)
    }

    pub fn green_relations(&self, a: Elem, b: Elem) -> GreenRelations {
        let (leq_l, leq_r) = (self.leq_l(a, b), self.leq_r(a, b));
        let (geq_l, geq_r) = (self.leq_l(b, a), self.leq_r(b, a));
        GreenRelations {
            leq_l,
            leq_r,
            leq_h: leq_l && leq_r,
            l: leq_l && geq_l,
            r: leq_r && geq_r,
            h: leq_l && leq_r && geq_l && geq_r,
        }
    }

    fn check_triple(&self, x: Elem, y: Elem, z: Elem) -> Option<String> {
        let (m, a) = (|p, q| self.mul(p, q), |p, q| self.add(p, q));
        let lbl = |e: Elem| self.label(e).to_string();
        let fail = |law: &str| Some(format!("{law} fails at ({}, {}, {})", lbl(x), lbl(y), lbl(z)));
        if m(m(x, y), z) != m(x, m(y, z)) {
            return fail("associativity of *");
        }
        if a(a(x, y), z) != a(x, a(y, z)) {
            return fail("associativity of +");
        }
        if m(x, a(y, z)) != a(m(x, y), m(x, z)) || m(a(x, y), z) != a(m(x, z), m(y, z)) {
            return fail("distributivity");
        }
        None
    }

    fn check_pair(&self, x: Elem, y: Elem) -> Option<String> {
        let fail = |law: &str| Some(format!("{law} fails at ({}, {})", self.label(x), self.label(y)));
        if self.add(x, y) != self.add(y, x) {
            return fail("commutativity of +");
        }
        if self.star(self.mul(x, y)) != self.mul(self.star(y), self.star(x)) {
            return fail("(xy)* = y*x*");
        }
        if self.star(self.add(x, y)) != self.add(self.star(x), self.star(y)) {
            return fail("(x+y)* = x*+y*");
        }
        None
    }

    fn check_single(&self, x: Elem) -> Option<String> {
        let fail = |law: &str| Some(format!("{law} fails at {}", self.label(x)));
        if self.add(x, self.zero) != x {
            return fail("x + 0 = x");
        }
        if self.add(x, self.neg(x)) != self.zero {
            return fail("x + (-x) = 0");
        }
        if self.mul(x, self.one) != x || self.mul(self.one, x) != x {
            return fail("1x = x1 = x");
        }
        if self.star(self.star(x)) != x {
            return fail("x** = x");
        }
        None
    }

    /// Ring and involution axioms: exhaustive for small rings, sampled with a
    /// fixed seed above [`EXHAUSTIVE_AXIOM_LIMIT`].
    pub fn check_axioms(&self) -> Result<()> {
        let violation = |msg: String| Error::InvariantViolation(format!("{}: {msg}", self.spec));
        for x in self.elements() {
            if let Some(msg) = self.check_single(x) {
                return Err(violation(msg));
            }
        }
        if self.size <= EXHAUSTIVE_AXIOM_LIMIT {
            for x in self.elements() {
                for y in self.elements() {
                    if let Some(msg) = self.check_pair(x, y) {
                        return Err(violation(msg));
                    }
                    for z in self.elements() {
                        if let Some(msg) = self.check_triple(x, y, z) {
                            return Err(violation(msg));
                        }
                    }
                }
            }
            return Ok(());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let n = self.size as Elem;
        for _ in 0..AXIOM_SAMPLES {
            let (x, y, z) = (rng.random_range(0..n), rng.random_range(0..n), rng.random_range(0..n));
            if let Some(msg) = self.check_pair(x, y).or_else(|| self.check_triple(x, y, z)) {
                return Err(violation(msg));
            }
        }
        Ok(())
    }

    /// Look up an element by its label.
    pub fn find(&self, label: &str) -> Option<Elem> {
        let compact: String = label.chars().filter(|c| !c.is_whitespace()).collect();
        self.elements().find(|&e| {
            let l: String = self.label(e).chars().filter(|c| !c.is_whitespace()).collect();
            l == compact
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(s: &str) -> FiniteStarRing {
        enumerate_ring(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn sizes_and_involutions() {
        assert_eq!(ring("zmod:6").size(), 6);
        let m = ring("mat:2:gf2");
        assert_eq!(m.size(), 16);
        let e12 = m.find("[[0,1],[0,0]]").unwrap();
        assert_eq!(m.label(m.star(e12)), "[[0,0],[1,0]]");
        assert_eq!(m.label(m.one()), "[[1,0],[0,1]]");
        assert_eq!(ring("mat:2:gf3").size(), 81);
        let p = ring("prod(zmod:2,zmod:3)");
        assert_eq!(p.size(), 6);
        assert_eq!(p.label(p.one()), "(1, 1)");
    }

    #[test]
    fn units_and_projections() {
        let z = ring("zmod:6");
        let units: Vec<Elem> = z.elements().filter(|&x| z.is_unit(x)).collect();
        assert_eq!(units, vec![1, 5]);
        assert_eq!(z.projections(), vec![0, 1, 3, 4]);
        let m = ring("mat:2:gf2");
        assert_eq!(m.elements().filter(|&x| m.is_unit(x)).count(), 6);
    }

    #[test]
    fn green_examples() {
        let z = ring("zmod:6");
        let g = z.green_relations(2, 4);
        assert!(g.leq_l && g.l && g.h);
        let g = z.green_relations(0, 1);
        assert!(g.leq_l && g.leq_r && g.leq_h);
        assert!(!g.l && !g.r && !g.h);
        let g = z.green_relations(3, 3);
        assert!(g.l && g.r && g.h);
    }

    #[test]
    fn annihilators() {
        let z = ring("zmod:6");
        let ann: Vec<usize> = z.right_annihilator(3).ones().collect();
        assert_eq!(ann, vec![0, 2, 4]);
    }

    #[test]
    fn too_large() {
        let spec: RingSpec = "mat:3:gf3".parse().unwrap();
        assert!(matches!(enumerate_ring(&spec), Err(Error::TooLarge(_))));
    }
}
