//! Follow orbits and certify where they converge.
//!
//! Tree points reach the fixed point in exactly their depth many steps.
//! Chain points never arrive, but once an orbit is marching along the
//! chain its remaining distances are exactly geometric, so after a few
//! recorded steps the trace closes with a certificate: the limit, the
//! current distance to it, and the ratio every further step multiplies
//! that distance by.
//!
//! Run with: cargo run --example iterate_orbit

use std::sync::Arc;

use num::bigint::BigInt;

use contramet::iterate::{classify_orbit_sequence, iterate, Outcome};
use contramet::metrics::{DistanceSpace, SpacePoint, SynthMetric};
use contramet::potential::Potential;
use contramet::{Component, Graft, Instance, Point, PointRef, Rational, Result, ValidationMode};

fn main() -> Result<()> {
    let inst = Instance::new(
        Rational::new(1, 2)?,
        vec![
            Component::Tree { parent: vec![0, 0, 1, 2] },
            Component::Chain {
                two_sided: true,
                grafts: vec![Graft { anchor: BigInt::from(2), parent: vec![0, 0] }],
            },
        ],
        PointRef { component: 0, node: 0 },
    );
    let pot = Potential::new(Arc::new(inst), ValidationMode::SingleFixedPoint)?;
    let space = DistanceSpace::Metric(SynthMetric::new(pot)?);

    for start in [
        Point::tree(0, 3),       // depth 3: arrives in exactly 3 steps
        Point::coord(1, -5),     // marches along the chain forever
        Point::graft(1, 0, 1),   // graft node: two steps to the chain, then marches
    ] {
        let trace = iterate(&space, &SpacePoint::from(start.clone()), 48)?;
        println!("orbit of {start}:");
        for step in trace.steps.iter().take(5) {
            let to = step
                .to_candidate
                .as_ref()
                .map(|d| format!(", d to fixed point {d}"))
                .unwrap_or_default();
            println!("  step {:>2}: {}{}", step.n, step.point, to);
        }
        if trace.steps.len() > 5 {
            println!("  ... ({} steps recorded)", trace.steps.len());
        }
        match &trace.outcome {
            Outcome::ReachedFixedPoint { point, at_step } => {
                println!("  => reached fixed point {point} at step {at_step}");
            }
            Outcome::ConvergingTo { limit, value, ratio } => {
                println!("  => converging to {limit}: from the last recorded step,");
                println!("     distance = {value}, shrinking by {ratio} per step, exactly");
            }
            Outcome::Inconclusive { steps_used } => {
                println!("  => inconclusive after {steps_used} steps");
            }
        }
        let class = classify_orbit_sequence(&space, &SpacePoint::from(start), 48)?;
        println!("  orbit class: {class:?}\n");
    }
    Ok(())
}
