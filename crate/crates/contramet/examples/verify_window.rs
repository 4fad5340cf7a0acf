//! Windowed verification of a countable space, and what the report says.
//!
//! The space is countable, so the checker samples it: all finite points
//! (tree and graft nodes) plus every chain coordinate within a window of
//! the origin. Axioms are checked on all pairs and triples of the sample
//! by exact rational arithmetic; the report records the coverage, the
//! counts, and a witness for every violation found.
//!
//! Run with: cargo run --example verify_window

use std::sync::Arc;

use num::bigint::BigInt;

use contramet::metrics::{DistanceSpace, SynthPartialMetric};
use contramet::potential::Potential;
use contramet::verify::{
    check_contraction, check_pmetric_axioms, CheckConfig, ContractionMode, SampleSpec,
};
use contramet::{Component, Graft, Instance, PointRef, Rational, Result, ValidationMode};

fn main() -> Result<()> {
    // A chain with two grafted trees, one anchored far to the left, plus
    // an extra fixed point.
    let inst = Instance::new(
        Rational::new(2, 3)?,
        vec![
            Component::Tree { parent: vec![0, 0] },
            Component::Tree { parent: vec![0] },
            Component::Chain {
                two_sided: true,
                grafts: vec![
                    Graft { anchor: BigInt::from(-9), parent: vec![0, 0, 1] },
                    Graft { anchor: BigInt::from(3), parent: vec![0] },
                ],
            },
        ],
        PointRef { component: 0, node: 0 },
    );
    let pot = Potential::new(Arc::new(inst), ValidationMode::MultiFixedPoint)?;
    let space = DistanceSpace::PartialMetric(SynthPartialMetric::new(pot)?);
    let cfg = CheckConfig::default();

    for window in [5u64, 20, 60] {
        let spec = SampleSpec::new(window);
        let report = check_pmetric_axioms(&space, &spec, &cfg)?.merge(check_contraction(
            &space,
            None,
            ContractionMode::MaxCondition,
            &spec,
            &cfg,
        )?);
        let pairs: u64 = report.checks.iter().map(|c| c.pairs).sum();
        let triples: u64 = report.checks.iter().map(|c| c.triples).sum();
        println!(
            "window {window:>2}: {} ({pairs} pair checks, {triples} triple checks)",
            report.verdict()
        );
        assert!(report.pass());
    }

    // The full report serializes to JSON, witnesses and all.
    let spec = SampleSpec::new(5);
    let report = check_pmetric_axioms(&space, &spec, &cfg)?;
    println!("\nreport for the smallest window:\n");
    println!("{}", serde_json::to_string_pretty(&report).expect("reports serialize"));
    Ok(())
}
