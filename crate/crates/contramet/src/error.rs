//! Library-wide error type.

use num::bigint::BigInt;
use thiserror::Error;

use crate::space::HypothesisViolation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A point address does not resolve inside its instance.
    #[error("invalid point address {point}: {reason}")]
    Address { point: String, reason: String },

    /// A component fails a structural invariant that the orbit calculus
    /// relies on (detected lazily; `validate` reports these up front).
    #[error("component {component} is malformed: {detail}")]
    Malformed { component: usize, detail: String },

    /// `first_entry_index` was asked for a landing that never happens.
    #[error("the orbit of {from} never meets the orbit of {target}")]
    OrbitNeverMeets { from: String, target: String },

    /// The instance fails the hypotheses required by the requested
    /// construction; carries one witnessed finding per violated clause.
    #[error("instance violates required hypotheses ({0:?})")]
    Hypotheses(Vec<HypothesisViolation>),

    /// An exponent magnitude exceeded the configured guard.
    #[error("exponent {exponent} exceeds the guard |e| <= {guard}")]
    ExponentGuard { exponent: BigInt, guard: u64 },

    #[error("zero denominator")]
    ZeroDenominator,

    #[error("cannot raise zero to a negative power")]
    ZeroToNegativePower,

    /// A construction was handed a potential built for the other fixed-point
    /// regime.
    #[error("{context} requires a {expected} potential")]
    ModeMismatch {
        context: &'static str,
        expected: &'static str,
    },

    /// Finite enumeration was requested for an instance with a chain
    /// component.
    #[error("instance is not finite: component {component} is a chain")]
    NotFinite { component: usize },

    #[error("index {index} out of range for a table of size {n}")]
    IndexOutOfRange { index: usize, n: usize },

    /// The space carries no self-map, so map-dependent checks cannot run.
    #[error("the space carries no self-map")]
    NoMap,

    /// A `SpacePoint` of the wrong kind was handed to a space (an index into
    /// a synthesized space, or an address into a bare table).
    #[error("point does not match the space: {detail}")]
    PointKind { detail: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A property the synthesis promises unconditionally failed to hold;
    /// seeing this means a bug, not a bad input.
    #[error("synthesis contract violated: {0}")]
    ContractViolation(String),
}
