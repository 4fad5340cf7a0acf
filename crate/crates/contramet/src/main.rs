//! Command-line front end.
//!
//! Thin argument-parsing shell over the library: every subcommand reads
//! JSON (file or stdin), calls one library entry point, and writes JSON or
//! dot (file or stdout). Exit codes are part of the interface:
//!
//! * 0 - success; for `verify`, every check passed
//! * 1 - verification ran and found violations
//! * 2 - unreadable input: I/O failure, malformed JSON, bad arguments
//! * 3 - input parsed but violates the structural hypotheses; the
//!   violations are printed as JSON

use std::process::ExitCode;
use std::str::FromStr;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};

use contramet::dot::{render_dot, DotOptions};
use contramet::gen::{generate, GenSpec};
use contramet::io::{
    attach_map, parse_json, parse_space, read_input, to_pretty_json, write_output, LoadedSpace,
    ParseError, SpaceFile, SpaceKind,
};
use contramet::iterate::{classify_orbit_sequence, iterate};
use contramet::metrics::{
    identity_partial_metric, DistanceSpace, SynthMetric, SynthPartialMetric,
};
use contramet::potential::Potential;
use contramet::verify::{
    check_contraction, check_metric_axioms, check_pmetric_axioms, check_strong_condition,
    CheckConfig, ContractionMode, SampleSpec,
};
use contramet::{Error, Instance, Point, Rational, ValidationMode};

#[derive(Parser)]
#[command(
    name = "contramet",
    version,
    about = "Synthesize and verify contraction metrics for finitely presented self-maps"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a random valid instance from a seed.
    Gen(GenArgs),
    /// Check the structural hypotheses of an instance.
    Validate(ValidateArgs),
    /// Synthesize a metric or partial metric for an instance.
    Synth(SynthArgs),
    /// Verify axioms and contraction bounds for a synthesized space.
    Verify(VerifyArgs),
    /// Follow an orbit and certify where it converges.
    Iterate(IterateArgs),
    /// Build the partial-metric table for the identity map on m points.
    Identity(IdentityArgs),
    /// Render an instance in Graphviz dot syntax.
    Dot(DotArgs),
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of tree components (at least 1).
    #[arg(long, default_value_t = 1)]
    trees: usize,
    /// Number of chain components.
    #[arg(long, default_value_t = 1)]
    chains: usize,
    /// Contraction factor, e.g. 1/2.
    #[arg(long, default_value = "1/2")]
    alpha: Rational,
    /// Tree sizes, an inclusive range like 1..8.
    #[arg(long, default_value = "1..8", value_parser = parse_range)]
    tree_size: (usize, usize),
    /// Grafts per chain, an inclusive range like 0..2.
    #[arg(long, default_value = "0..2", value_parser = parse_range)]
    grafts: (usize, usize),
    /// Graft sizes, an inclusive range like 1..4.
    #[arg(long, default_value = "1..4", value_parser = parse_range)]
    graft_size: (usize, usize),
    /// Largest anchor magnitude.
    #[arg(long, default_value_t = 8)]
    anchor_range: u64,
    /// Probability that a chain is two-sided, e.g. 1/2.
    #[arg(long, default_value = "1/2")]
    two_sided_prob: Rational,
    /// Output path; stdout when absent.
    #[arg(short, long)]
    out: Option<String>,
}

#[derive(Args)]
struct ValidateArgs {
    /// Instance JSON; a path, or - for stdin.
    input: Option<String>,
    /// single: exactly one fixed point; multi: one designated plus others.
    #[arg(long, default_value = "multi", value_parser = parse_mode)]
    mode: ValidationMode,
}

#[derive(Args)]
struct SynthArgs {
    /// Instance JSON; a path, or - for stdin.
    input: Option<String>,
    /// metric (single fixed point) or pmetric (several fixed points).
    #[arg(long, default_value = "pmetric", value_parser = parse_kind)]
    kind: SpaceKind,
    /// Write the space extensionally as a table; only finite instances
    /// (no chains) can be. Finite instances are tabled by default.
    #[arg(long)]
    table: bool,
    #[arg(short, long)]
    out: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Space JSON (table or params form); a path, or - for stdin.
    input: Option<String>,
    /// Override the axiom family to check.
    #[arg(long, value_parser = parse_kind)]
    kind: Option<SpaceKind>,
    /// Instance JSON supplying the map when the space file has none.
    #[arg(long)]
    instance: Option<String>,
    /// Chain coordinates sampled on each side of the origin.
    #[arg(long, default_value_t = 40)]
    window: u64,
    /// Largest point count for the cubic triangle sweep.
    #[arg(long, default_value_t = 300)]
    triple_cap: usize,
    /// Contraction factor when the space file does not carry one.
    #[arg(long)]
    alpha: Option<Rational>,
    /// Also check the strong bound p(Tx,Ty) <= max(p(x,x), p(y,y)).
    #[arg(long)]
    strong: bool,
    /// Write the full report here as JSON (stdout always gets it too).
    #[arg(long)]
    report: Option<String>,
}

#[derive(Args)]
struct IterateArgs {
    /// Space JSON (table or params form); a path, or - for stdin.
    input: Option<String>,
    /// Start point: a point like 1:coord:-3, or an index like #5 for tables.
    #[arg(long)]
    from: String,
    #[arg(long, default_value_t = 64)]
    max_steps: u64,
    /// Axiom family for params files (metric or pmetric).
    #[arg(long, value_parser = parse_kind)]
    kind: Option<SpaceKind>,
    /// Also classify the orbit's Cauchy behaviour within this horizon.
    #[arg(long)]
    classify: bool,
    #[arg(short, long)]
    out: Option<String>,
}

#[derive(Args)]
struct IdentityArgs {
    /// Number of points.
    #[arg(long)]
    size: usize,
    #[arg(long, default_value = "1/2")]
    alpha: Rational,
    #[arg(short, long)]
    out: Option<String>,
}

#[derive(Args)]
struct DotArgs {
    /// Instance JSON; a path, or - for stdin.
    input: Option<String>,
    /// Coordinates drawn on each side of the origin.
    #[arg(long, default_value_t = 5)]
    window: i64,
    #[arg(short, long)]
    out: Option<String>,
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| format!("expected LO..HI (inclusive), got {s:?}"))?;
    let lo = lo.trim().parse().map_err(|e| format!("bad lower bound: {e}"))?;
    let hi = hi.trim().parse().map_err(|e| format!("bad upper bound: {e}"))?;
    Ok((lo, hi))
}

fn parse_mode(s: &str) -> Result<ValidationMode, String> {
    match s {
        "single" => Ok(ValidationMode::SingleFixedPoint),
        "multi" => Ok(ValidationMode::MultiFixedPoint),
        other => Err(format!("expected single or multi, got {other:?}")),
    }
}

fn parse_kind(s: &str) -> Result<SpaceKind, String> {
    match s {
        "metric" => Ok(SpaceKind::Metric),
        "pmetric" | "partial_metric" => Ok(SpaceKind::PartialMetric),
        other => Err(format!("expected metric or pmetric, got {other:?}")),
    }
}

/// Everything a run can end as, ordered by severity of the exit code.
enum Failure {
    /// Verification found violations (exit 1).
    Violations,
    /// Unreadable or invalid input (exit 2).
    Input(String),
    /// Structural hypotheses rejected, with the findings as JSON (exit 3).
    Hypotheses(String),
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Hypotheses(findings) => {
                Failure::Hypotheses(to_pretty_json(&findings))
            }
            other => Failure::Input(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.cmd {
        Cmd::Gen(a) => run_gen(a),
        Cmd::Validate(a) => run_validate(a),
        Cmd::Synth(a) => run_synth(a),
        Cmd::Verify(a) => run_verify(a),
        Cmd::Iterate(a) => run_iterate(a),
        Cmd::Identity(a) => run_identity(a),
        Cmd::Dot(a) => run_dot(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violations) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Hypotheses(json)) => {
            eprintln!("error: instance violates the structural hypotheses");
            print!("{json}");
            ExitCode::from(3)
        }
    }
}

fn read_instance(path: Option<&str>) -> Result<Instance, Failure> {
    let text = read_input(path)?;
    Ok(parse_json("instance", &text)?)
}

fn run_gen(a: GenArgs) -> Result<(), Failure> {
    let num = u32::try_from(a.two_sided_prob.numer().clone())
        .map_err(|_| Failure::Input("two-sided probability numerator too large".into()))?;
    let den = u32::try_from(a.two_sided_prob.denom().clone())
        .map_err(|_| Failure::Input("two-sided probability denominator too large".into()))?;
    let spec = GenSpec {
        seed: a.seed,
        trees: a.trees,
        tree_size: a.tree_size,
        chains: a.chains,
        two_sided_odds: (num, den),
        grafts_per_chain: a.grafts,
        graft_size: a.graft_size,
        anchor_range: a.anchor_range,
        alpha: a.alpha,
    };
    let inst = generate(&spec)?;
    write_output(a.out.as_deref(), &to_pretty_json(&inst))?;
    Ok(())
}

fn run_validate(a: ValidateArgs) -> Result<(), Failure> {
    let inst = read_instance(a.input.as_deref())?;
    let findings = inst.validate(a.mode);
    if findings.is_empty() {
        println!("valid ({} components)", inst.components().len());
        Ok(())
    } else {
        Err(Failure::Hypotheses(to_pretty_json(&findings)))
    }
}

fn run_synth(a: SynthArgs) -> Result<(), Failure> {
    let inst = read_instance(a.input.as_deref())?;
    let alpha = inst.alpha().clone();
    let finite = inst
        .components()
        .iter()
        .all(|c| matches!(c, contramet::Component::Tree { .. }));
    if a.table && !finite {
        return Err(Failure::Input(
            "only finite instances (trees, no chains) can be written as tables".into(),
        ));
    }
    let file = if finite {
        let inst = Arc::new(inst);
        let table = match a.kind {
            SpaceKind::Metric => {
                let pot = Potential::new(inst, ValidationMode::SingleFixedPoint)?;
                SynthMetric::new(pot)?.to_table()?
            }
            SpaceKind::PartialMetric => {
                let pot = Potential::new(inst, ValidationMode::MultiFixedPoint)?;
                SynthPartialMetric::new(pot)?.to_table()?
            }
        };
        SpaceFile::from_table(a.kind, alpha, table)
    } else {
        // Synthesize eagerly so hypothesis violations surface now, then
        // store the parameters; the space is rebuilt on load.
        let mode = match a.kind {
            SpaceKind::Metric => ValidationMode::SingleFixedPoint,
            SpaceKind::PartialMetric => ValidationMode::MultiFixedPoint,
        };
        Potential::new(Arc::new(inst.clone()), mode)?;
        SpaceFile::from_instance(a.kind, inst)
    };
    write_output(a.out.as_deref(), &to_pretty_json(&file))?;
    Ok(())
}

fn load_space(a: &VerifyArgs) -> Result<LoadedSpace, Failure> {
    let text = read_input(a.input.as_deref())?;
    let file = parse_space(&text)?;
    let mut loaded = file.load()?;
    if let Some(kind) = a.kind {
        loaded.kind = kind;
    }
    if let Some(alpha) = &a.alpha {
        loaded.alpha = Some(alpha.clone());
    }
    Ok(loaded)
}

fn run_verify(a: VerifyArgs) -> Result<(), Failure> {
    let loaded = load_space(&a)?;
    if a.instance.is_some() && loaded.space.has_map() {
        eprintln!("note: space already carries its map; --instance ignored");
    }
    let needs_map = !loaded.space.has_map();
    let space = if needs_map {
        if let (DistanceSpace::Table(t), Some(path)) = (&loaded.space, &a.instance) {
            let inst = read_instance(Some(path.as_str()))?;
            DistanceSpace::Table(attach_map(t, &inst)?)
        } else {
            loaded.space
        }
    } else {
        loaded.space
    };
    let spec = SampleSpec::new(a.window);
    let cfg = CheckConfig { triple_cap: a.triple_cap };
    let mut report = match loaded.kind {
        SpaceKind::Metric => check_metric_axioms(&space, &spec, &cfg)?,
        SpaceKind::PartialMetric => check_pmetric_axioms(&space, &spec, &cfg)?,
    };
    if space.has_map() {
        let mode = match loaded.kind {
            SpaceKind::Metric => ContractionMode::Banach,
            SpaceKind::PartialMetric => ContractionMode::MaxCondition,
        };
        report =
            report.merge(check_contraction(&space, loaded.alpha.as_ref(), mode, &spec, &cfg)?);
        if a.strong {
            if let DistanceSpace::Table(t) = &space {
                report = report.merge(check_strong_condition(t)?);
            } else {
                return Err(Failure::Input(
                    "--strong only applies to table spaces".into(),
                ));
            }
        }
    } else if a.strong {
        return Err(Failure::Input("--strong needs a space with a map".into()));
    }
    let json = to_pretty_json(&report);
    if let Some(path) = &a.report {
        write_output(Some(path), &json)?;
    }
    print!("{json}");
    if report.pass() {
        Ok(())
    } else {
        Err(Failure::Violations)
    }
}

fn run_iterate(a: IterateArgs) -> Result<(), Failure> {
    let text = read_input(a.input.as_deref())?;
    let file = parse_space(&text)?;
    let mut loaded = file.load()?;
    if let Some(kind) = a.kind {
        loaded.kind = kind;
    }
    let start = parse_start(&a.from, &loaded)?;
    let trace = iterate(&loaded.space, &start, a.max_steps)?;
    let mut out = serde_json::to_value(&trace)
        .map_err(|e| Failure::Input(format!("cannot serialize trace: {e}")))?;
    if a.classify {
        let class = classify_orbit_sequence(&loaded.space, &start, a.max_steps)?;
        let class_value = serde_json::to_value(&class)
            .map_err(|e| Failure::Input(format!("cannot serialize classification: {e}")))?;
        out.as_object_mut()
            .expect("trace serializes as an object")
            .insert("orbit_class".into(), class_value);
    }
    write_output(a.out.as_deref(), &to_pretty_json(&out))?;
    Ok(())
}

fn parse_start(
    from: &str,
    loaded: &LoadedSpace,
) -> Result<contramet::metrics::SpacePoint, Failure> {
    use contramet::metrics::SpacePoint;
    let from = from.trim();
    if let Some(idx) = from.strip_prefix('#') {
        let index: usize = idx
            .parse()
            .map_err(|e| Failure::Input(format!("bad index {from:?}: {e}")))?;
        return Ok(SpacePoint::Index(index));
    }
    if let Ok(point) = Point::from_str(from) {
        return Ok(SpacePoint::Addr(point));
    }
    // A bare integer names a table index, or a chain coordinate when the
    // space knows its instance and has a single chain.
    if let Ok(index) = from.parse::<usize>() {
        if matches!(loaded.space, DistanceSpace::Table(_)) {
            return Ok(SpacePoint::Index(index));
        }
    }
    Err(Failure::Input(format!(
        "cannot parse start point {from:?}; use component:kind:node, or #index for tables"
    )))
}

fn run_identity(a: IdentityArgs) -> Result<(), Failure> {
    let table = identity_partial_metric(a.size, &a.alpha)?;
    let (values, map) = table.into_parts();
    let file = SpaceFile::Table {
        kind: SpaceKind::PartialMetric,
        alpha: Some(a.alpha),
        n: values.len(),
        p: values,
        map,
        points: None,
    };
    write_output(a.out.as_deref(), &to_pretty_json(&file))?;
    Ok(())
}

fn run_dot(a: DotArgs) -> Result<(), Failure> {
    let inst = read_instance(a.input.as_deref())?;
    let dot = render_dot(&inst, &DotOptions { chain_window: a.window });
    write_output(a.out.as_deref(), &dot)?;
    Ok(())
}
