//! Invariants of virtual link diagrams.
//!
//! The crate works with combinatorial crossing codes ([`diagram`]), computes
//! a two-variable Conway-type determinant polynomial ([`conway`]) and the
//! Alexander polynomial via Wirtinger presentations and free differential
//! calculus ([`alexander`]), and can deform diagrams by oriented Reidemeister
//! moves ([`moves`]) to exercise invariance directly.
//!
//! Everything is exact (arbitrary-precision integer coefficients) and
//! deterministic: random generation is backed by a fixed, documented
//! generator ([`rng`]), so seeds mean the same thing everywhere, forever.

pub mod alexander;
pub mod conway;
pub mod diagram;
pub mod fixtures;
pub mod laurent;
pub mod moves;
pub mod report;
pub mod rng;

pub use diagram::{
    parse_gauss, parse_vld, random_code, serialize_vld, Crossing, DiagramCode, EdgeLabel, PassRole,
    Sign, StrandPass,
};
pub use laurent::{LPoly1, LPoly2};
