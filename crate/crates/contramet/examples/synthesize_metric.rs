//! Synthesize a complete metric for a map with a single fixed point.
//!
//! The space: a 4-node in-tree rooted at the fixed point, plus a two-sided
//! chain whose points all march toward the root after entering the tree's
//! basin. Every distance is an exact rational, and the map shrinks every
//! pair by exactly the chosen factor or better.
//!
//! Run with: cargo run --example synthesize_metric

use std::sync::Arc;

use contramet::metrics::{DistanceSpace, SynthMetric};
use contramet::potential::Potential;
use contramet::verify::{check_contraction, check_metric_axioms, CheckConfig, ContractionMode, SampleSpec};
use contramet::{Component, Instance, Point, PointRef, Rational, Result, ValidationMode};

fn main() -> Result<()> {
    // Node 0 is the root (its own parent); 1 and 2 feed it, 3 feeds 1.
    // The chain walks ... -> -1 -> 0 -> 1 -> ... forever; the synthesized
    // metric places coordinate c at distance alpha^c from the root's
    // orbit, so the whole line is Cauchy toward the fixed point.
    let inst = Instance::new(
        Rational::new(1, 2)?,
        vec![
            Component::Tree { parent: vec![0, 0, 0, 1] },
            Component::Chain { two_sided: true, grafts: vec![] },
        ],
        PointRef { component: 0, node: 0 },
    );
    let pot = Potential::new(Arc::new(inst), ValidationMode::SingleFixedPoint)?;
    let metric = SynthMetric::new(pot)?;

    let root = Point::tree(0, 0);
    let deep = Point::tree(0, 3);
    let far_out = Point::coord(1, -20);
    let far_in = Point::coord(1, 30);
    println!("exact distances under the synthesized metric:");
    for (a, b) in [(&deep, &root), (&far_out, &root), (&far_out, &far_in), (&far_in, &root)] {
        println!("  d({a}, {b}) = {}", metric.dist(a, b)?);
    }

    // One application shrinks those distances by at least the factor 1/2.
    let space = DistanceSpace::Metric(metric);
    let spec = SampleSpec::new(25);
    let cfg = CheckConfig::default();
    let report = check_metric_axioms(&space, &spec, &cfg)?
        .merge(check_contraction(&space, None, ContractionMode::Banach, &spec, &cfg)?);
    println!("\nverification over a window of 25 coordinates each way:");
    for check in &report.checks {
        println!(
            "  {:>20}: {} ({} pairs, {} triples)",
            check.name,
            if check.pass() { "ok" } else { "VIOLATED" },
            check.pairs,
            check.triples
        );
    }
    assert!(report.pass());
    println!("\nverdict: {}", report.verdict());
    Ok(())
}
