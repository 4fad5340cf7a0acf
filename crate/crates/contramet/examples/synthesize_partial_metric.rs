//! Synthesize a partial metric for a map with several fixed points.
//!
//! With more than one fixed point no metric can make the map a strict
//! contraction (the two fixed points would have to get closer to
//! themselves). A partial metric sidesteps this: points may carry positive
//! self-distance, and the contraction bound becomes
//!
//!     p(Tx, Ty) <= max(alpha * p(x, y), p(x, x), p(y, y)).
//!
//! The designated fixed point keeps self-distance 0; every other fixed
//! point and its basin floats at a positive level strictly between alpha
//! and 1, scaled down the tree by powers of alpha.
//!
//! Run with: cargo run --example synthesize_partial_metric

use std::sync::Arc;

use contramet::iterate::minimal_fixed_point;
use contramet::metrics::{DistanceSpace, SynthPartialMetric};
use contramet::potential::Potential;
use contramet::verify::{
    check_contraction, check_pmetric_axioms, CheckConfig, ContractionMode, SampleSpec,
};
use contramet::{Component, Instance, Point, PointRef, Rational, Result, ValidationMode};

fn main() -> Result<()> {
    // Three fixed points: the designated root of component 0, and the
    // roots of two further trees. A chain feeds the designated basin.
    let inst = Instance::new(
        Rational::new(1, 2)?,
        vec![
            Component::Tree { parent: vec![0, 0] },
            Component::Tree { parent: vec![0, 0, 1] },
            Component::Tree { parent: vec![0] },
            Component::Chain { two_sided: false, grafts: vec![] },
        ],
        PointRef { component: 0, node: 0 },
    );
    let pot = Potential::new(Arc::new(inst), ValidationMode::MultiFixedPoint)?;
    let pm = SynthPartialMetric::new(pot)?;

    println!("self-distances (positive off the designated basin):");
    for p in [
        Point::tree(0, 0),
        Point::tree(0, 1),
        Point::tree(1, 0),
        Point::tree(1, 2),
        Point::tree(2, 0),
        Point::coord(3, 4),
    ] {
        println!("  p({p}, {p}) = {}", pm.self_dist(&p)?);
    }
    println!("\nsome pairwise values:");
    let a = Point::tree(1, 0);
    let b = Point::tree(2, 0);
    let c = Point::tree(0, 0);
    println!("  p({a}, {b}) = {}", pm.dist(&a, &b)?);
    println!("  p({a}, {c}) = {}", pm.dist(&a, &c)?);

    // The minimum self-distance over a window is 0, attained exactly by
    // the designated basin; its unique fixed attainer is the designated
    // fixed point.
    let sample = SampleSpec::new(10).sample(pm.instance());
    let (floor, attainers) = pm.min_self_distance(&sample)?;
    println!("\nminimum self-distance over the window: {floor}");
    println!("attained by {} points; first few:", attainers.len());
    for p in attainers.iter().take(4) {
        println!("  {p}");
    }
    let minimal = minimal_fixed_point(&pm, &sample)?;
    println!("unique fixed point with minimal self-distance: {minimal}");

    let space = DistanceSpace::PartialMetric(pm);
    let spec = SampleSpec::new(12);
    let cfg = CheckConfig::default();
    let report = check_pmetric_axioms(&space, &spec, &cfg)?.merge(check_contraction(
        &space,
        None,
        ContractionMode::MaxCondition,
        &spec,
        &cfg,
    )?);
    println!("\nverification: {}", report.verdict());
    for check in &report.checks {
        println!("  {:>20}: {}", check.name, if check.pass() { "ok" } else { "VIOLATED" });
    }
    assert!(report.pass());
    Ok(())
}
