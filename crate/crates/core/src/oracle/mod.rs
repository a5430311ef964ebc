//! Exhaustive checks on small finite rings with involution.

pub mod facts;
pub mod report;
pub mod ring;
pub mod solve;
pub mod spec;
pub mod theorems;

pub use report::{verify_all, verify_theorem, TheoremReport};
pub use ring::{enumerate_ring, enumerate_ring_with_cap, FiniteStarRing};
pub use spec::RingSpec;
