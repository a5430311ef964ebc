//! Running catalog entries over a ring and collecting reports.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::facts::Facts;
use super::ring::{Elem, FiniteStarRing};
use super::theorems::{self, Arity, Mode, Tally, Theorem, CATALOG};
use crate::error::{Error, Result};
use crate::exec::Execution;

/// Largest ring on which triple-quantified statements are enumerated.
pub const TRIPLE_CAP: usize = 16;
/// Largest ring on which pair-quantified statements are enumerated.
pub const PAIR_CAP: usize = 128;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub theorem_id: String,
    pub statement: String,
    pub ring: String,
    pub mode: String,
    pub instances_checked: u64,
    pub skipped_instances: u64,
    pub counterexample_count: u64,
    pub counterexamples: Vec<String>,
    pub observation_count: u64,
    pub observations: Vec<String>,
    /// Set when the ring exceeds the enumeration cap for this statement.
    pub skipped: Option<String>,
    pub elapsed_ms: f64,
}

impl TheoremReport {
    /// True unless a checked statement found a counterexample.
    pub fn passed(&self) -> bool {
        self.counterexample_count == 0
    }
}

fn cap_for(arity: Arity) -> Option<usize> {
    match arity {
        Arity::One => None,
        Arity::Two => Some(PAIR_CAP),
        Arity::Three => Some(TRIPLE_CAP),
    }
}

fn run_one(facts: &Facts, theorem: &Theorem, exec: Execution) -> TheoremReport {
    let ring = facts.ring;
    let start = Instant::now();
    let n = ring.size();
    let mut tally = Tally::default();
    let skipped = match cap_for(theorem.arity) {
        Some(cap) if n > cap => Some(format!(
            "ring has {n} elements; {}-element tuples are enumerated only up to {cap}",
            theorem.arity.count()
        )),
        _ => None,
    };
    if skipped.is_none() {
        let parts = exec.map_range(n, |first| sweep(facts, theorem, first as Elem));
        for part in parts {
            tally.merge(part);
        }
    }
    TheoremReport {
        theorem_id: theorem.id.to_string(),
        statement: theorem.statement.to_string(),
        ring: ring.spec().to_string(),
        mode: match theorem.mode {
            Mode::Verify => "verify",
            Mode::Search => "search",
        }
        .to_string(),
        instances_checked: tally.instances,
        skipped_instances: tally.skipped,
        counterexample_count: tally.counterexample_count,
        counterexamples: tally.counterexamples,
        observation_count: tally.observation_count,
        observations: tally.observations,
        skipped,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    }
}

/// All tuples whose first entry is `first`.
fn sweep(facts: &Facts, theorem: &Theorem, first: Elem) -> Tally {
    let ring = facts.ring;
    let mut tally = Tally::default();
    match theorem.arity {
        Arity::One => (theorem.check)(facts, &[first], &mut tally),
        Arity::Two => {
            for second in ring.elements() {
                (theorem.check)(facts, &[first, second], &mut tally);
            }
        }
        Arity::Three => {
            for second in ring.elements() {
                for third in ring.elements() {
                    (theorem.check)(facts, &[first, second, third], &mut tally);
                }
            }
        }
    }
    tally
}

/// Check one catalog entry on an enumerated ring.
pub fn verify_theorem(ring: &FiniteStarRing, theorem_id: &str, exec: Execution) -> Result<TheoremReport> {
    let theorem = theorems::find(theorem_id).ok_or_else(|| Error::UnknownTheorem(theorem_id.to_string()))?;
    let facts = Facts::new(ring)?;
    facts.warm();
    Ok(run_one(&facts, theorem, exec))
}

/// Check every catalog entry on an enumerated ring, in catalog order.
pub fn verify_all(ring: &FiniteStarRing, exec: Execution) -> Result<Vec<TheoremReport>> {
    let facts = Facts::new(ring)?;
    facts.warm();
    Ok(CATALOG.iter().map(|t| run_one(&facts, t, exec)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::ring::enumerate_ring;

    fn ring(spec: &str) -> FiniteStarRing {
        enumerate_ring(&spec.parse().unwrap()).unwrap()
    }

    #[test]
    fn documented_examples() {
        let z6 = ring("zmod:6");
        let r = verify_theorem(&z6, "uniqueness", Execution::Sequential).unwrap();
        assert_eq!((r.instances_checked, r.counterexample_count), (36, 0));
        let m = ring("mat:2:gf2");
        let r = verify_theorem(&m, "idempotent", Execution::Parallel).unwrap();
        assert_eq!((r.instances_checked, r.counterexample_count), (256, 0));
        let z2 = ring("zmod:2");
        let r = verify_theorem(&z2, "jacobson", Execution::Sequential).unwrap();
        assert_eq!((r.instances_checked, r.counterexample_count), (4, 0));
    }

    #[test]
    fn unknown_id() {
        assert!(matches!(
            verify_theorem(&ring("zmod:2"), "nope", Execution::Sequential),
            Err(Error::UnknownTheorem(_))
        ));
    }

    #[test]
    fn modes_agree() {
        let z12 = ring("zmod:12");
        let seq = verify_all(&z12, Execution::Sequential).unwrap();
        let par = verify_all(&z12, Execution::Parallel).unwrap();
        for (s, p) in seq.iter().zip(&par) {
            assert_eq!(s.instances_checked, p.instances_checked, "{}", s.theorem_id);
            assert_eq!(s.counterexamples, p.counterexamples, "{}", s.theorem_id);
            assert_eq!(s.observations, p.observations, "{}", s.theorem_id);
        }
    }

    #[test]
    fn whole_catalog_small_rings() {
        for spec in ["zmod:4", "zmod:6", "mat:2:gf2"] {
            for r in verify_all(&ring(spec), Execution::Parallel).unwrap() {
                assert!(r.passed(), "{} on {spec}: {:?}", r.theorem_id, r.counterexamples);
            }
        }
    }
}
