//! Materialize a finite space as a table, ship it as JSON, check it again.
//!
//! A finite instance (trees only) can be written out extensionally: the
//! full matrix of exact values plus the map as an index array. Anyone can
//! re-verify such a file without the synthesis machinery, and the checker
//! pinpoints exactly what breaks when a value is tampered with.
//!
//! Run with: cargo run --example table_roundtrip

use std::sync::Arc;

use contramet::io::{parse_space, to_pretty_json, SpaceFile, SpaceKind};
use contramet::metrics::{DistanceSpace, SynthPartialMetric};
use contramet::potential::Potential;
use contramet::verify::{check_pmetric_axioms, CheckConfig, SampleSpec};
use contramet::{Component, Instance, PointRef, Rational, Result, ValidationMode};

fn main() -> Result<()> {
    let inst = Instance::new(
        Rational::new(1, 2)?,
        vec![
            Component::Tree { parent: vec![0, 0, 1] },
            Component::Tree { parent: vec![0, 0] },
        ],
        PointRef { component: 0, node: 0 },
    );
    let pot = Potential::new(Arc::new(inst), ValidationMode::MultiFixedPoint)?;
    let table = SynthPartialMetric::new(pot)?.to_table()?;
    let file = SpaceFile::from_table(SpaceKind::PartialMetric, Rational::new(1, 2)?, table);
    let text = to_pretty_json(&file);
    println!("serialized space file ({} bytes):\n{text}", text.len());

    // Round-trip: parse the JSON back and verify it as a standalone table.
    let loaded = parse_space(&text).expect("file parses").load()?;
    let spec = SampleSpec::new(0);
    let cfg = CheckConfig::default();
    let report = check_pmetric_axioms(&loaded.space, &spec, &cfg)?;
    println!("re-verified from JSON: {}", report.verdict());
    assert!(report.pass());

    // Tamper with one off-diagonal entry; the report names the pair.
    let mut table = match loaded.space {
        DistanceSpace::Table(t) => t,
        _ => unreachable!("table files load as tables"),
    };
    let bumped = table.value(1, 2)?.clone() + Rational::one();
    table.set_value(1, 2, bumped)?;
    let corrupted = DistanceSpace::Table(table);
    let report = check_pmetric_axioms(&corrupted, &spec, &cfg)?;
    println!("after tampering with p(1, 2): {}", report.verdict());
    for check in &report.checks {
        for v in &check.violations {
            println!(
                "  {} violated at {:?}: lhs {} vs rhs {}",
                check.name, v.witness, v.lhs, v.rhs
            );
        }
    }
    assert!(!report.pass());
    Ok(())
}
