//! Exhaustive exact verification with witness-bearing reports.
//!
//! Every check here evaluates its inequality in exact rational arithmetic
//! over an explicitly enumerated set of points: all of them for a finite
//! space, a chain window plus every finite part for a countable one. A
//! failed inequality is reported as a [`Violation`] carrying the witness
//! points and both sides of the inequality, re-evaluable through the public
//! distance functions.
//!
//! Triple sweeps are cubic, so the triangle checks first map every distance
//! to a dense integer rank (order-preserving, since the value pool is sorted
//! and deduplicated exactly) and decide almost every triple with a couple of
//! integer comparisons whose truth provably implies the inequality; only
//! triples the ranks cannot settle fall back to full rational arithmetic.
//! The fast path is an implication, never an assumption, so the result is
//! identical to the all-rational sweep.
//!
//! Everything is sequential and index-ordered: the same input yields the
//! same report, byte for byte.

use std::collections::{BTreeMap, BTreeSet};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::metrics::{DistanceSpace, SpacePoint, TableSpace};
use crate::rational::Rational;
use crate::space::{Component, Instance, Point};

/// How the point set for verification is drawn from an instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampleSpec {
    /// Chain coordinates from `-K..=K` (two-sided) or `0..=K` are sampled.
    pub chain_window: u64,
    /// Include every tree node and graft node (default). Without it only
    /// the chain windows are sampled.
    pub include_all_finite: bool,
}

impl SampleSpec {
    pub fn new(chain_window: u64) -> Self {
        SampleSpec { chain_window, include_all_finite: true }
    }

    pub fn without_finite_parts(mut self) -> Self {
        self.include_all_finite = false;
        self
    }

    /// The sampled points, in canonical order.
    pub fn sample(&self, inst: &Instance) -> Vec<Point> {
        let mut out = Vec::new();
        for (i, comp) in inst.components().iter().enumerate() {
            match comp {
                Component::Tree { parent } => {
                    if self.include_all_finite {
                        out.extend((0..parent.len()).map(|n| Point::tree(i, n)));
                    }
                }
                Component::Chain { two_sided, grafts } => {
                    if *two_sided {
                        for c in (1..=self.chain_window).rev() {
                            out.push(Point::coord(i, -num::BigInt::from(c)));
                        }
                    }
                    for c in 0..=self.chain_window {
                        out.push(Point::coord(i, c));
                    }
                    if self.include_all_finite {
                        for (g, graft) in grafts.iter().enumerate() {
                            out.extend(
                                (0..graft.parent.len()).map(|n| Point::graft(i, g, n)),
                            );
                        }
                    }
                }
            }
        }
        debug_assert!(out.windows(2).all(|w| w[0] < w[1]));
        out
    }

    /// Whether sampling this instance covers every point.
    pub fn covers_everything(&self, inst: &Instance) -> bool {
        self.include_all_finite
            && inst
                .components()
                .iter()
                .all(|c| matches!(c, Component::Tree { .. }))
    }
}

/// Caps for the cubic sweeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckConfig {
    /// Triangle checks run over the first `triple_cap` sampled points.
    pub triple_cap: usize,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig { triple_cap: 300 }
    }
}

/// Whether a report covers the whole space or a window of it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coverage {
    Exhaustive,
    Windowed { chain_window: u64 },
}

impl Serialize for Coverage {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Coverage::Exhaustive => serializer.serialize_str("exhaustive"),
            Coverage::Windowed { chain_window } => {
                serializer.serialize_str(&format!("sampled (window {chain_window})"))
            }
        }
    }
}

impl<'de> Deserialize<'de> for Coverage {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        if s == "exhaustive" {
            return Ok(Coverage::Exhaustive);
        }
        s.strip_prefix("sampled (window ")
            .and_then(|rest| rest.strip_suffix(')'))
            .and_then(|k| k.parse().ok())
            .map(|chain_window| Coverage::Windowed { chain_window })
            .ok_or_else(|| D::Error::custom(format!("unknown coverage {s:?}")))
    }
}

mod rat_string {
    use super::*;

    pub fn serialize<S: Serializer>(
        v: &Rational,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(D::Error::custom)
    }
}

/// One failed inequality: the witness points in the order the check names
/// them, and both exact sides.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub witness: Vec<SpacePoint>,
    #[serde(with = "rat_string")]
    pub lhs: Rational,
    #[serde(with = "rat_string")]
    pub rhs: Rational,
}

/// Tight-versus-strict tally for an inequality that holds.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EqualityStats {
    /// Evaluations where both sides were exactly equal.
    pub tight: u64,
    /// Evaluations where the inequality was strict.
    pub strict: u64,
}

/// The outcome of one named check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub pairs: u64,
    pub triples: u64,
    pub violations: Vec<Violation>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub equality: Option<EqualityStats>,
}

impl CheckResult {
    fn new(name: &str) -> Self {
        CheckResult {
            name: name.into(),
            pairs: 0,
            triples: 0,
            violations: Vec::new(),
            equality: None,
        }
    }

    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A bundle of check results over one sampled point set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub coverage: Coverage,
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(CheckResult::pass)
    }

    pub fn verdict(&self) -> &'static str {
        if self.pass() {
            "pass"
        } else {
            "fail"
        }
    }

    pub fn violations(&self) -> impl Iterator<Item = (&str, &Violation)> {
        self.checks
            .iter()
            .flat_map(|c| c.violations.iter().map(move |v| (c.name.as_str(), v)))
    }

    /// Appends the checks of `other`, keeping the weaker coverage label.
    pub fn merge(mut self, other: VerificationReport) -> VerificationReport {
        if let Coverage::Windowed { .. } = other.coverage {
            self.coverage = other.coverage;
        }
        self.checks.extend(other.checks);
        self
    }
}

impl Serialize for VerificationReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("VerificationReport", 3)?;
        st.serialize_field("coverage", &self.coverage)?;
        st.serialize_field("checks", &self.checks)?;
        st.serialize_field("verdict", self.verdict())?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for VerificationReport {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            coverage: Coverage,
            checks: Vec<CheckResult>,
            #[serde(default)]
            #[allow(dead_code)]
            verdict: Option<String>,
        }
        let repr = Repr::deserialize(deserializer)?;
        Ok(VerificationReport { coverage: repr.coverage, checks: repr.checks })
    }
}

/// Which contraction inequality to check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ContractionMode {
    /// `d(Tx, Ty) <= alpha * d(x, y)`.
    Banach,
    /// `p(Tx, Ty) <= max(alpha * p(x, y), p(x, x), p(y, y))`.
    MaxCondition,
}

/// The evaluation view the checks run over: either the max-type form of a
/// synthesized space (weights plus self-distances) or a materialized table.
enum Eval<'a> {
    Max {
        labels: Vec<Point>,
        weight: Vec<Rational>,
        selfd: Vec<Rational>,
    },
    Table(&'a TableSpace),
}

impl Eval<'_> {
    fn n(&self) -> usize {
        match self {
            Eval::Max { labels, .. } => labels.len(),
            Eval::Table(t) => t.n(),
        }
    }

    fn label(&self, i: usize) -> SpacePoint {
        match self {
            Eval::Max { labels, .. } => SpacePoint::Addr(labels[i].clone()),
            Eval::Table(_) => SpacePoint::Index(i),
        }
    }

    fn dist(&self, i: usize, j: usize) -> Rational {
        match self {
            Eval::Max { weight, selfd, .. } => {
                if i == j {
                    selfd[i].clone()
                } else {
                    Rational::max_of(&weight[i], &weight[j])
                }
            }
            Eval::Table(t) => t.values()[i][j].clone(),
        }
    }
}

fn build_eval<'a>(space: &'a DistanceSpace, spec: &SampleSpec) -> Result<(Eval<'a>, Coverage)> {
    let max_view = |inst: &Instance,
                    weight: &dyn Fn(&Point) -> Result<Rational>,
                    selfd: &dyn Fn(&Point) -> Result<Rational>|
     -> Result<(Eval<'a>, Coverage)> {
        let labels = spec.sample(inst);
        let coverage = if spec.covers_everything(inst) {
            Coverage::Exhaustive
        } else {
            Coverage::Windowed { chain_window: spec.chain_window }
        };
        let w = labels.iter().map(weight).collect::<Result<Vec<_>>>()?;
        let s = labels.iter().map(selfd).collect::<Result<Vec<_>>>()?;
        Ok((Eval::Max { labels, weight: w, selfd: s }, coverage))
    };
    match space {
        DistanceSpace::Metric(m) => {
            max_view(m.instance(), &|x| m.weight(x), &|x| m.self_dist(x))
        }
        DistanceSpace::PartialMetric(p) => {
            max_view(p.instance(), &|x| p.weight(x), &|x| p.self_dist(x))
        }
        DistanceSpace::Table(t) => Ok((Eval::Table(t), Coverage::Exhaustive)),
    }
}

/// Dense order-preserving ranks over an exact value pool: equal rationals
/// get equal ranks, smaller rationals smaller ranks. Comparing ranks is
/// equivalent to comparing the underlying values.
fn rank_pool<'a>(values: impl Iterator<Item = &'a Rational>) -> BTreeMap<&'a Rational, u32> {
    let pool: BTreeSet<&Rational> = values.collect();
    pool.into_iter().zip(0..).collect()
}

fn check_nonnegativity(ev: &Eval) -> CheckResult {
    let mut out = CheckResult::new("nonnegativity");
    let n = ev.n();
    for i in 0..n {
        for j in i..n {
            out.pairs += 1;
            let d = ev.dist(i, j);
            if d.is_negative() {
                out.violations.push(Violation {
                    witness: vec![ev.label(i), ev.label(j)],
                    lhs: d,
                    rhs: Rational::zero(),
                });
            }
        }
    }
    out
}

/// Metric axiom: every self-distance is exactly zero.
fn check_identity_self_zero(ev: &Eval) -> CheckResult {
    let mut out = CheckResult::new("identity_self_zero");
    for i in 0..ev.n() {
        out.pairs += 1;
        let d = ev.dist(i, i);
        if !d.is_zero() {
            out.violations.push(Violation {
                witness: vec![ev.label(i)],
                lhs: d,
                rhs: Rational::zero(),
            });
        }
    }
    out
}

/// Metric axiom: distinct points are at positive distance.
fn check_metric_separation(ev: &Eval) -> CheckResult {
    let mut out = CheckResult::new("separation");
    let n = ev.n();
    for i in 0..n {
        for j in (i + 1)..n {
            out.pairs += 1;
            let d = ev.dist(i, j);
            if d.is_zero() {
                out.violations.push(Violation {
                    witness: vec![ev.label(i), ev.label(j)],
                    lhs: d,
                    rhs: Rational::zero(),
                });
            }
        }
    }
    out
}

/// Partial-metric axiom: distinct points cannot share self-distances and
/// distance all in one value.
fn check_pmetric_separation(ev: &Eval) -> CheckResult {
    let mut out = CheckResult::new("separation");
    let n = ev.n();
    for i in 0..n {
        for j in (i + 1)..n {
            out.pairs += 1;
            let d = ev.dist(i, j);
            let si = ev.dist(i, i);
            if si == d && ev.dist(j, j) == d {
                out.violations.push(Violation {
                    witness: vec![ev.label(i), ev.label(j)],
                    lhs: d,
                    rhs: si,
                });
            }
        }
    }
    out
}

/// Partial-metric axiom: `p(x, x) <= p(x, y)` for every ordered pair.
fn check_self_bound(ev: &Eval) -> CheckResult {
    let mut out = CheckResult::new("self_bound");
    let n = ev.n();
    for i in 0..n {
        let si = ev.dist(i, i);
        for j in 0..n {
            if i == j {
                continue;
            }
            out.pairs += 1;
            let d = ev.dist(i, j);
            if si > d {
                out.violations.push(Violation {
                    witness: vec![ev.label(i), ev.label(j)],
                    lhs: si.clone(),
                    rhs: d,
                });
            }
        }
    }
    out
}

fn check_symmetry(ev: &Eval) -> CheckResult {
    let mut out = CheckResult::new("symmetry");
    let n = ev.n();
    for i in 0..n {
        for j in (i + 1)..n {
            out.pairs += 1;
            let a = ev.dist(i, j);
            let b = ev.dist(j, i);
            if a != b {
                out.violations.push(Violation {
                    witness: vec![ev.label(i), ev.label(j)],
                    lhs: a,
                    rhs: b,
                });
            }
        }
    }
    out
}

/// Triangle inequality, in the partial-metric form
/// `p(x, y) <= p(x, z) + p(z, y) - p(z, z)` when `subtract_self` is set and
/// the plain metric form otherwise.
fn check_triangle(ev: &Eval, subtract_self: bool, cap: usize) -> CheckResult {
    let mut out = CheckResult::new("triangle");
    match ev {
        Eval::Max { labels, weight, selfd } => {
            // For a max-type space d(x, y) ranks at max(rank x, rank y), so
            // d(x, y) never exceeds the larger of d(x, z), d(z, y); the
            // subtracted d(z, z) passes iff it ranks below the smaller one.
            // (Metric spaces reach here with an all-zero selfd, for which
            // the subtraction is vacuous and the same implication holds.)
            let nt = labels.len().min(cap);
            let ranks = rank_pool(weight.iter().chain(selfd.iter()));
            let wr: Vec<u32> = weight.iter().map(|v| ranks[v]).collect();
            let sr: Vec<u32> = selfd.iter().map(|v| ranks[v]).collect();
            for i in 0..nt {
                for j in (i + 1)..nt {
                    let lo = wr[i].min(wr[j]);
                    for z in 0..nt {
                        if z == i || z == j {
                            continue;
                        }
                        out.triples += 1;
                        if sr[z] <= wr[z].max(lo) {
                            continue;
                        }
                        let pxy = Rational::max_of(&weight[i], &weight[j]);
                        let sum = &Rational::max_of(&weight[i], &weight[z])
                            + &Rational::max_of(&weight[z], &weight[j]);
                        let slack = if subtract_self {
                            &sum - &selfd[z]
                        } else {
                            sum
                        };
                        if pxy > slack {
                            out.violations.push(Violation {
                                witness: vec![ev.label(i), ev.label(j), ev.label(z)],
                                lhs: pxy,
                                rhs: slack,
                            });
                        }
                    }
                }
            }
        }
        Eval::Table(t) => {
            let nt = t.n().min(cap);
            let values = t.values();
            let zero = Rational::zero();
            let ranks = rank_pool(
                values[..nt]
                    .iter()
                    .flat_map(|row| row[..nt].iter())
                    .chain(std::iter::once(&zero)),
            );
            let rank_of_zero = ranks[&zero];
            let r: Vec<Vec<u32>> = values[..nt]
                .iter()
                .map(|row| row[..nt].iter().map(|v| ranks[v]).collect())
                .collect();
            for x in 0..nt {
                for y in 0..nt {
                    if y == x {
                        continue;
                    }
                    for z in 0..nt {
                        if z == x || z == y {
                            continue;
                        }
                        out.triples += 1;
                        let (a, b) = (r[x][z], r[z][y]);
                        let sub = if subtract_self { r[z][z] } else { rank_of_zero };
                        // Rank implication: d(x, y) below the larger leg and
                        // the subtracted term below the smaller leg together
                        // force the inequality.
                        if r[x][y] <= a.max(b) && sub <= a.min(b) {
                            continue;
                        }
                        let sum = &values[x][z] + &values[z][y];
                        let slack = if subtract_self {
                            &sum - &values[z][z]
                        } else {
                            sum
                        };
                        if values[x][y] > slack {
                            out.violations.push(Violation {
                                witness: vec![ev.label(x), ev.label(y), ev.label(z)],
                                lhs: values[x][y].clone(),
                                rhs: slack,
                            });
                        }
                    }
                }
            }
        }
    }
    out
}

/// Checks the four metric axioms (plus nonnegativity) over the sample.
pub fn check_metric_axioms(
    space: &DistanceSpace,
    spec: &SampleSpec,
    cfg: &CheckConfig,
) -> Result<VerificationReport> {
    let (ev, coverage) = build_eval(space, spec)?;
    Ok(VerificationReport {
        coverage,
        checks: vec![
            check_nonnegativity(&ev),
            check_identity_self_zero(&ev),
            check_metric_separation(&ev),
            check_symmetry(&ev),
            check_triangle(&ev, false, cfg.triple_cap),
        ],
    })
}

/// Checks the four partial-metric axioms (plus nonnegativity) over the
/// sample.
pub fn check_pmetric_axioms(
    space: &DistanceSpace,
    spec: &SampleSpec,
    cfg: &CheckConfig,
) -> Result<VerificationReport> {
    let (ev, coverage) = build_eval(space, spec)?;
    Ok(VerificationReport {
        coverage,
        checks: vec![
            check_nonnegativity(&ev),
            check_pmetric_separation(&ev),
            check_self_bound(&ev),
            check_symmetry(&ev),
            check_triangle(&ev, true, cfg.triple_cap),
        ],
    })
}

fn max3<'a>(a: &'a Rational, b: &'a Rational, c: &'a Rational) -> &'a Rational {
    let ab = if a >= b { a } else { b };
    if ab >= c {
        ab
    } else {
        c
    }
}

/// Checks the contraction inequality for `mode` on every sampled pair,
/// including each pair with itself. The sample is closed under one
/// application of the map so that both sides are always defined; pairs are
/// drawn from the original sample. `alpha` falls back to the space's own
/// contraction factor, and must be in `(0, 1)`.
pub fn check_contraction(
    space: &DistanceSpace,
    alpha: Option<&Rational>,
    mode: ContractionMode,
    spec: &SampleSpec,
    cfg: &CheckConfig,
) -> Result<VerificationReport> {
    let _ = cfg;
    let alpha = alpha
        .or_else(|| space.alpha())
        .ok_or_else(|| {
            Error::InvalidArgument("a contraction factor is required for a bare table".into())
        })?
        .clone();
    if !alpha.is_positive() || alpha >= Rational::one() {
        return Err(Error::InvalidArgument(format!(
            "contraction factor {alpha} is not strictly between 0 and 1"
        )));
    }
    let name = match mode {
        ContractionMode::Banach => "contraction_banach",
        ContractionMode::MaxCondition => "contraction_max",
    };
    let mut out = CheckResult::new(name);
    let mut stats = EqualityStats::default();
    let coverage;

    match space {
        DistanceSpace::Table(t) => {
            let map = t.map().ok_or(Error::NoMap)?;
            coverage = Coverage::Exhaustive;
            let values = t.values();
            let n = t.n();
            for i in 0..n {
                for j in i..n {
                    out.pairs += 1;
                    let lhs = &values[map[i]][map[j]];
                    let scaled = &values[i][j] * &alpha;
                    let rhs = match mode {
                        ContractionMode::Banach => &scaled,
                        ContractionMode::MaxCondition => {
                            max3(&scaled, &values[i][i], &values[j][j])
                        }
                    };
                    record_pair(&mut out, &mut stats, lhs, rhs, || {
                        vec![SpacePoint::Index(i), SpacePoint::Index(j)]
                    });
                }
            }
        }
        DistanceSpace::Metric(_) | DistanceSpace::PartialMetric(_) => {
            let inst = space.instance().expect("synthesized spaces carry an instance");
            let base = spec.sample(inst);
            coverage = if spec.covers_everything(inst) {
                Coverage::Exhaustive
            } else {
                Coverage::Windowed { chain_window: spec.chain_window }
            };
            // Close the label set under one application so images have
            // cached weights too.
            let mut all: BTreeSet<Point> = base.iter().cloned().collect();
            let images: Vec<Point> = base
                .iter()
                .map(|x| inst.apply(x))
                .collect::<Result<_>>()?;
            all.extend(images.iter().cloned());
            let labels: Vec<Point> = all.into_iter().collect();
            let index: BTreeMap<&Point, usize> = labels.iter().zip(0..).collect();
            let eval = |x: &Point| -> Result<(Rational, Rational)> {
                match space {
                    DistanceSpace::Metric(m) => Ok((m.weight(x)?, m.self_dist(x)?)),
                    DistanceSpace::PartialMetric(p) => Ok((p.weight(x)?, p.self_dist(x)?)),
                    DistanceSpace::Table(_) => unreachable!(),
                }
            };
            let mut weight = Vec::with_capacity(labels.len());
            let mut selfd = Vec::with_capacity(labels.len());
            for x in &labels {
                let (w, s) = eval(x)?;
                weight.push(w);
                selfd.push(s);
            }
            let scaled_weight: Vec<Rational> =
                weight.iter().map(|w| w * &alpha).collect();
            let scaled_selfd: Vec<Rational> =
                selfd.iter().map(|s| s * &alpha).collect();
            let base_idx: Vec<usize> = base.iter().map(|x| index[x]).collect();
            let img_idx: Vec<usize> = images.iter().map(|x| index[x]).collect();

            for a in 0..base_idx.len() {
                for b in a..base_idx.len() {
                    out.pairs += 1;
                    let (i, j) = (base_idx[a], base_idx[b]);
                    let (ti, tj) = (img_idx[a], img_idx[b]);
                    let lhs = if ti == tj {
                        &selfd[ti]
                    } else if weight[ti] >= weight[tj] {
                        &weight[ti]
                    } else {
                        &weight[tj]
                    };
                    let scaled = if i == j {
                        &scaled_selfd[i]
                    } else if scaled_weight[i] >= scaled_weight[j] {
                        &scaled_weight[i]
                    } else {
                        &scaled_weight[j]
                    };
                    let rhs = match mode {
                        ContractionMode::Banach => scaled,
                        ContractionMode::MaxCondition => max3(scaled, &selfd[i], &selfd[j]),
                    };
                    record_pair(&mut out, &mut stats, lhs, rhs, || {
                        vec![
                            SpacePoint::Addr(labels[i].clone()),
                            SpacePoint::Addr(labels[j].clone()),
                        ]
                    });
                }
            }
        }
    }
    out.equality = Some(stats);
    Ok(VerificationReport { coverage, checks: vec![out] })
}

fn record_pair(
    out: &mut CheckResult,
    stats: &mut EqualityStats,
    lhs: &Rational,
    rhs: &Rational,
    witness: impl FnOnce() -> Vec<SpacePoint>,
) {
    match lhs.cmp(rhs) {
        std::cmp::Ordering::Less => stats.strict += 1,
        std::cmp::Ordering::Equal => stats.tight += 1,
        std::cmp::Ordering::Greater => out.violations.push(Violation {
            witness: witness(),
            lhs: lhs.clone(),
            rhs: rhs.clone(),
        }),
    }
}

/// Checks the two extra properties an identity-map table enjoys: every
/// off-diagonal entry equals the larger of the two self-distances, bounded
/// form `p(x, y) <= max(p(x, x), p(y, y))`, and self-distances are pairwise
/// distinct.
pub fn check_strong_condition(table: &TableSpace) -> Result<VerificationReport> {
    let values = table.values();
    let n = table.n();
    let mut bound = CheckResult::new("strong_max_bound");
    let mut inj = CheckResult::new("self_distance_injective");
    for i in 0..n {
        for j in (i + 1)..n {
            bound.pairs += 1;
            let cap = Rational::max_of(&values[i][i], &values[j][j]);
            if values[i][j] > cap {
                bound.violations.push(Violation {
                    witness: vec![SpacePoint::Index(i), SpacePoint::Index(j)],
                    lhs: values[i][j].clone(),
                    rhs: cap,
                });
            }
            inj.pairs += 1;
            if values[i][i] == values[j][j] {
                inj.violations.push(Violation {
                    witness: vec![SpacePoint::Index(i), SpacePoint::Index(j)],
                    lhs: values[i][i].clone(),
                    rhs: values[j][j].clone(),
                });
            }
        }
    }
    Ok(VerificationReport {
        coverage: Coverage::Exhaustive,
        checks: vec![bound, inj],
    })
}
