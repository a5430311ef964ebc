//! The matrix library against exhaustive solving in the same finite rings.

mod common;

use ginv::along::inverse_along;
use ginv::classical::{core_inverse, group_inverse};
use ginv::oracle::facts::Facts;
use ginv::oracle::{enumerate_ring, FiniteStarRing, RingSpec};
use ginv::regular::mp_inverse;
use ginv::{dual_v_core, w_core, Domain, Outcome, RouteSelector, StarMatrix, Tolerance};

fn matrices(ring: &FiniteStarRing, domain: Domain) -> Vec<StarMatrix> {
    ring.elements().map(|e| common::from_label(ring.label(e), domain)).collect()
}

fn value(out: Outcome<ginv::InverseResult>) -> Option<StarMatrix> {
    out.into_value().map(|r| r.value)
}

fn check_ring(spec: &str, prime: u64) {
    let spec: RingSpec = spec.parse().unwrap();
    let ring = enumerate_ring(&spec).unwrap();
    let facts = Facts::new(&ring).unwrap();
    let domain = Domain::PrimeField(prime);
    let mats = matrices(&ring, domain);
    let tol = Tolerance::default();
    let as_matrix = |e: Option<u16>| e.map(|e| mats[e as usize].clone());
    for a in ring.elements() {
        let am = &mats[a as usize];
        assert_eq!(value(mp_inverse(am, &tol).unwrap()), as_matrix(facts.mp(a)), "mp of {am}");
        assert_eq!(value(group_inverse(am, &tol).unwrap()), as_matrix(facts.group(a)), "group of {am}");
        assert_eq!(value(core_inverse(am, &tol).unwrap()), as_matrix(facts.core(a)), "core of {am}");
        for w in ring.elements() {
            let wm = &mats[w as usize];
            let sols = facts.w_core_all(a, w);
            assert!(sols.len() <= 1);
            let got = value(w_core(am, wm, RouteSelector::All, &tol).unwrap());
            assert_eq!(got, as_matrix(sols.first().copied()), "w-core of a={am}, w={wm}");
            let got = value(dual_v_core(am, wm, RouteSelector::All, &tol).unwrap());
            assert_eq!(got, as_matrix(facts.dual_v_core(a, w)), "dual v-core of a={am}, v={wm}");
            let got = value(inverse_along(wm, am, &tol).unwrap());
            assert_eq!(got, as_matrix(facts.along(w, a)), "{wm} along {am}");
        }
    }
}

#[test]
fn gf2_matrices_match_the_oracle() {
    check_ring("mat:2:gf2", 2);
}

#[test]
fn gf3_matrices_match_the_oracle() {
    check_ring("mat:2:gf3", 3);
}

#[test]
fn prime_residues_match_the_oracle() {
    for p in [2, 3, 5, 7] {
        check_ring(&format!("mat:1:gf{p}"), p);
    }
}

#[test]
fn composite_residues_match_the_oracle() {
    let tol = Tolerance::default();
    for n in [4u64, 6, 8, 9, 12] {
        let ring = enumerate_ring(&RingSpec::Zmod(n)).unwrap();
        let facts = Facts::new(&ring).unwrap();
        let m = |e: u16| StarMatrix::from_i64(Domain::IntegerMod(n), 1, 1, &[e as i64]);
        for a in ring.elements() {
            for w in ring.elements() {
                let got = w_core(&m(a), &m(w), RouteSelector::All, &tol);
                match got {
                    Ok(out) => assert_eq!(value(out), facts.w_core(a, w).map(m), "Z/{n}: a={a}, w={w}"),
                    Err(e) => panic!("Z/{n}: a={a}, w={w}: {e}"),
                }
            }
        }
    }
}
