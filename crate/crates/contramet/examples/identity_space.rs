//! The identity map: every point fixed, yet still "contracting".
//!
//! Under the identity map nothing moves, so for any metric
//! d(Tx, Ty) = d(x, y) and no contraction factor below 1 can work the
//! moment there are two points. The partial-metric regime absorbs this:
//! give point i self-distance s_i with 0 = s_0 < s_1 < ... < 1/2 and set
//! p(i, j) = max(s_i, s_j) off the diagonal. Then
//!
//!     p(Tx, Ty) = p(x, y) <= max(p(x, x), p(y, y))   for x != y,
//!
//! which is even stronger than the alpha-scaled bound, and on the
//! diagonal p(Tx, Tx) = p(x, x) holds with equality. Self-distances grow
//! strictly, so the space separates points despite the map doing nothing.
//!
//! Run with: cargo run --example identity_space

use contramet::metrics::{identity_partial_metric, DistanceSpace};
use contramet::verify::{
    check_contraction, check_pmetric_axioms, check_strong_condition, CheckConfig,
    ContractionMode, SampleSpec,
};
use contramet::{Rational, Result};

fn main() -> Result<()> {
    let alpha = Rational::new(1, 2)?;
    let table = identity_partial_metric(6, &alpha)?;

    println!("self-distances for 6 identity points (strictly increasing):");
    for i in 0..table.n() {
        println!("  p({i}, {i}) = {}", table.value(i, i)?);
    }
    println!("\noff-diagonal values are the max of the two self-distances:");
    println!("  p(1, 4) = {}", table.value(1, 4)?);
    println!("  p(0, 5) = {}", table.value(0, 5)?);

    let spec = SampleSpec::new(0);
    let cfg = CheckConfig::default();
    let space = DistanceSpace::Table(table.clone());
    let mut report = check_pmetric_axioms(&space, &spec, &cfg)?;
    report = report.merge(check_contraction(
        &space,
        Some(&alpha),
        ContractionMode::MaxCondition,
        &spec,
        &cfg,
    )?);
    // The identity table satisfies the strong bound with alpha nowhere in
    // sight, and distinct points never share a self-distance.
    report = report.merge(check_strong_condition(&table)?);
    for check in &report.checks {
        println!(
            "  {:>25}: {}",
            check.name,
            if check.pass() { "ok" } else { "VIOLATED" }
        );
    }
    assert!(report.pass());
    println!("\nverdict: {}", report.verdict());
    Ok(())
}
