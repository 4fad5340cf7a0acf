//! Exact synthesis and verification of contraction structures for
//! finitely presented self-maps.
//!
//! Given a self-map `T` on a countable set, presented as in-trees rooted at
//! fixed points plus integer chains with grafted trees ([`space`]), this
//! crate builds:
//!
//! * a complete metric under which `T` contracts distances by a chosen
//!   factor `alpha` ([`metrics::SynthMetric`]), when `T` has exactly one
//!   fixed point, and
//! * a partial metric, complete in the relevant sense, under which `T`
//!   satisfies the max-type contraction bound
//!   `p(Tx, Ty) <= max(alpha * p(x, y), p(x, x), p(y, y))`
//!   ([`metrics::SynthPartialMetric`]), when `T` has one designated fixed
//!   point and finitely many further ones,
//!
//! and then checks every axiom and every contraction inequality by
//! exhaustive exact rational arithmetic ([`verify`]), with witness-bearing
//! reports. Iteration utilities ([`iterate`]) follow orbits and certify
//! their convergence behaviour. Everything is deterministic: same input,
//! same report, byte for byte.

pub mod dot;
pub mod error;
pub mod gen;
pub mod io;
pub mod iterate;
pub mod metrics;
pub mod potential;
pub mod rational;
pub mod space;
pub mod verify;

pub use error::{Error, Result};
pub use rational::Rational;
pub use space::{
    Addr, Component, Graft, HypothesisViolation, Instance, Point, PointRef, ValidationMode,
    ViolationKind,
};
