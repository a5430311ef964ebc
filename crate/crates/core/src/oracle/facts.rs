//! Brute-force inverses in a finite *-ring, cached per element.

use std::sync::OnceLock;

use super::ring::{Elem, FiniteStarRing};
use super::solve::{Bindings, CompiledSystem};
use crate::error::Result;
use crate::word::systems;

/// Every defining system used by the oracle, compiled once.
pub struct Systems {
    pub inner: CompiledSystem,
    pub one_three: CompiledSystem,
    pub one_four: CompiledSystem,
    pub penrose: CompiledSystem,
    pub group: CompiledSystem,
    pub core: CompiledSystem,
    pub core_five: CompiledSystem,
    pub dual_core: CompiledSystem,
    pub along: CompiledSystem,
    pub bc: CompiledSystem,
    pub w_core: CompiledSystem,
    pub w_core_derived: CompiledSystem,
    pub dual_v_core: CompiledSystem,
    pub dual_v_core_derived: CompiledSystem,
    pub core_ep: Vec<CompiledSystem>,
    /// The five w-core equations.
    pub w_core_five: CompiledSystem,
    /// `awxa = a`, `xS = aS`, `Sx = Sa*`.
    pub w_core_ideal: CompiledSystem,
    pub w_core_inner: CompiledSystem,
    pub dual_v_core_five: CompiledSystem,
    /// `axva = a`, `xS = a*S`, `Sx = Sa`.
    pub dual_v_core_ideal: CompiledSystem,
    pub dual_v_core_inner: CompiledSystem,
    /// `axa = a`, `xS = aS`, `Sx = Sa*`.
    pub core_ideal: CompiledSystem,
    /// `a^2x^2 = x`, `xa^3 = a`, `(a^2x)* = a^2x`.
    pub core_cubed: CompiledSystem,
}

impl Systems {
    fn new(max_index: usize) -> Result<Systems> {
        Ok(Systems {
            inner: CompiledSystem::new("inner", systems::INNER)?,
            one_three: CompiledSystem::new("one3", systems::ONE_THREE)?,
            one_four: CompiledSystem::new("one4", systems::ONE_FOUR)?,
            penrose: CompiledSystem::new("mp", systems::PENROSE)?,
            group: CompiledSystem::new("group", systems::GROUP)?,
            core: CompiledSystem::new("core", systems::CORE)?,
            core_five: CompiledSystem::new("core-five", systems::CORE_FIVE)?,
            dual_core: CompiledSystem::new("dual-core", systems::DUAL_CORE)?,
            along: CompiledSystem::new("along", systems::ALONG)?,
            bc: CompiledSystem::new("bc", systems::BC)?,
            w_core: CompiledSystem::new("w-core", systems::W_CORE)?,
            w_core_derived: CompiledSystem::new("w-core-derived", systems::W_CORE_DERIVED)?,
            dual_v_core: CompiledSystem::new("dual-v-core", systems::DUAL_V_CORE)?,
            dual_v_core_derived: CompiledSystem::new("dual-v-core-derived", systems::DUAL_V_CORE_DERIVED)?,
            core_ep: (1..=max_index)
                .map(|m| CompiledSystem::new("core-ep", &systems::core_ep(m)))
                .collect::<Result<_>>()?,
            w_core_five: CompiledSystem::new(
                "w-core-five",
                &["awxa=a", "xawx=x", "(awx)*=awx", "xawa=a", "awx^2=x"],
            )?,
            w_core_ideal: CompiledSystem::new("w-core-ideal", &["awxa=a", "x~Ra", "x~La*"])?,
            w_core_inner: CompiledSystem::new("w-core-inner", &["awxa=a"])?,
            dual_v_core_five: CompiledSystem::new(
                "dual-v-core-five",
                &["axva=a", "xvax=x", "(xva)*=xva", "avax=a", "x^2va=x"],
            )?,
            dual_v_core_ideal: CompiledSystem::new("dual-v-core-ideal", &["axva=a", "x~Ra*", "x~La"])?,
            dual_v_core_inner: CompiledSystem::new("dual-v-core-inner", &["axva=a"])?,
            core_ideal: CompiledSystem::new("core-ideal", &["axa=a", "x~Ra", "x~La*"])?,
            core_cubed: CompiledSystem::new("core-cubed", &["a^2x^2=x", "xa^3=a", "(a^2x)*=a^2x"])?,
        })
    }
}

type PerElement<T> = OnceLock<Vec<T>>;

/// Lazily computed solution sets for one ring.
pub struct Facts<'r> {
    pub ring: &'r FiniteStarRing,
    pub sys: Systems,
    inner: PerElement<Vec<Elem>>,
    one_three: PerElement<Vec<Elem>>,
    one_four: PerElement<Vec<Elem>>,
    mp: PerElement<Option<Elem>>,
    group: PerElement<Option<Elem>>,
    core: PerElement<Option<Elem>>,
    dual_core: PerElement<Option<Elem>>,
    core_ep: PerElement<Option<(Elem, usize)>>,
}

fn unique(v: Vec<Elem>) -> Option<Elem> {
    v.first().copied()
}

impl<'r> Facts<'r> {
    pub fn new(ring: &'r FiniteStarRing) -> Result<Facts<'r>> {
        Ok(Facts {
            ring,
            // Strictly descending chains of right ideals have length at most
            // log2 |R|, which bounds every index.
            sys: Systems::new((usize::BITS - ring.size().leading_zeros()) as usize + 1)?,
            inner: OnceLock::new(),
            one_three: OnceLock::new(),
            one_four: OnceLock::new(),
            mp: OnceLock::new(),
            group: OnceLock::new(),
            core: OnceLock::new(),
            dual_core: OnceLock::new(),
            core_ep: OnceLock::new(),
        })
    }

    fn solve_a(&self, sys: &CompiledSystem, a: Elem) -> Vec<Elem> {
        sys.solve(self.ring, &Bindings::of(self.ring, &[('a', a)]), 'x')
    }

    pub fn inner(&self, a: Elem) -> &[Elem] {
        &self.inner.get_or_init(|| self.ring.elements().map(|e| self.solve_a(&self.sys.inner, e)).collect())[a as usize]
    }

    pub fn one_three(&self, a: Elem) -> &[Elem] {
        &self
            .one_three
            .get_or_init(|| self.ring.elements().map(|e| self.solve_a(&self.sys.one_three, e)).collect())[a as usize]
    }

    pub fn one_four(&self, a: Elem) -> &[Elem] {
        &self
            .one_four
            .get_or_init(|| self.ring.elements().map(|e| self.solve_a(&self.sys.one_four, e)).collect())[a as usize]
    }

    pub fn mp(&self, a: Elem) -> Option<Elem> {
        self.mp
            .get_or_init(|| self.ring.elements().map(|e| unique(self.solve_a(&self.sys.penrose, e))).collect())
            [a as usize]
    }

    pub fn group(&self, a: Elem) -> Option<Elem> {
        self.group
            .get_or_init(|| self.ring.elements().map(|e| unique(self.solve_a(&self.sys.group, e))).collect())
            [a as usize]
    }

    pub fn core(&self, a: Elem) -> Option<Elem> {
        self.core
            .get_or_init(|| self.ring.elements().map(|e| unique(self.solve_a(&self.sys.core, e))).collect())
            [a as usize]
    }

    pub fn dual_core(&self, a: Elem) -> Option<Elem> {
        self.dual_core
            .get_or_init(|| self.ring.elements().map(|e| unique(self.solve_a(&self.sys.dual_core, e))).collect())
            [a as usize]
    }

    /// Core-EP inverse and pseudo-core index: the least `m` for which the
    /// core-EP system has a solution.
    pub fn core_ep(&self, a: Elem) -> Option<(Elem, usize)> {
        self.core_ep.get_or_init(|| {
            self.ring
                .elements()
                .map(|e| {
                    self.sys
                        .core_ep
                        .iter()
                        .enumerate()
                        .find_map(|(i, sys)| unique(self.solve_a(sys, e)).map(|x| (x, i + 1)))
                })
                .collect()
        })[a as usize]
    }

    /// Force every per-element cache, so parallel workers only read.
    pub fn warm(&self) {
        for a in self.ring.elements() {
            self.inner(a);
            self.one_three(a);
            self.one_four(a);
            self.mp(a);
            self.group(a);
            self.core(a);
            self.dual_core(a);
        }
        self.ring.left_ideal(0);
        self.ring.right_ideal(0);
        self.ring.left_annihilator(0);
        self.ring.right_annihilator(0);
    }

    /// All w-core inverses of `a` (at most one).
    pub fn w_core_all(&self, a: Elem, w: Elem) -> Vec<Elem> {
        self.sys.w_core.solve(self.ring, &Bindings::of(self.ring, &[('a', a), ('w', w)]), 'x')
    }

    pub fn w_core(&self, a: Elem, w: Elem) -> Option<Elem> {
        self.sys.w_core.solve_one(self.ring, &Bindings::of(self.ring, &[('a', a), ('w', w)]), 'x')
    }

    pub fn dual_v_core_all(&self, a: Elem, v: Elem) -> Vec<Elem> {
        self.sys.dual_v_core.solve(self.ring, &Bindings::of(self.ring, &[('a', a), ('v', v)]), 'x')
    }

    pub fn dual_v_core(&self, a: Elem, v: Elem) -> Option<Elem> {
        self.sys.dual_v_core.solve_one(self.ring, &Bindings::of(self.ring, &[('a', a), ('v', v)]), 'x')
    }

    /// The inverse of `elem` along `d`.
    pub fn along(&self, elem: Elem, d: Elem) -> Option<Elem> {
        self.sys.along.solve_one(self.ring, &Bindings::of(self.ring, &[('a', elem), ('d', d)]), 'x')
    }

    /// The `(b, c)`-inverse of `a`.
    pub fn bc(&self, a: Elem, b: Elem, c: Elem) -> Option<Elem> {
        self.sys.bc.solve_one(self.ring, &Bindings::of(self.ring, &[('a', a), ('b', b), ('c', c)]), 'x')
    }

    /// Some `s` with `p = q s`.
    pub fn right_divide(&self, p: Elem, q: Elem) -> Option<Elem> {
        self.ring.elements().find(|&s| self.ring.mul(q, s) == p)
    }

    /// Some `s` with `p = s q`.
    pub fn left_divide(&self, p: Elem, q: Elem) -> Option<Elem> {
        self.ring.elements().find(|&s| self.ring.mul(s, q) == p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::ring::enumerate_ring;

    #[test]
    fn z6_facts() {
        let ring = enumerate_ring(&"zmod:6".parse().unwrap()).unwrap();
        let f = Facts::new(&ring).unwrap();
        assert_eq!(f.core(3), Some(3));
        assert_eq!(f.mp(2), Some(2));
        assert_eq!(f.group(4), Some(4));
        assert_eq!(f.core_ep(3), Some((3, 1)));
        assert_eq!(f.inner(3), &[1, 3, 5]);
        assert_eq!(f.along(1, 3), Some(3));
    }

    #[test]
    fn z4_nilpotent() {
        let ring = enumerate_ring(&"zmod:4".parse().unwrap()).unwrap();
        let f = Facts::new(&ring).unwrap();
        assert_eq!(f.group(2), None);
        assert_eq!(f.core_ep(2), Some((0, 2)));
        assert!(f.inner(2).is_empty());
    }
}
