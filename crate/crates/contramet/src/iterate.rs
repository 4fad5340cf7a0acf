//! Orbit iteration with certified outcomes.
//!
//! [`iterate`] follows the orbit of a starting point, recording the exact
//! self-distance, step distance, and distance to the convergence candidate
//! at every step. It stops early with a certificate whenever the tail is
//! fully understood:
//!
//! * the orbit hits a fixed point, or
//! * (synthesized spaces) the orbit is running along a chain line, where
//!   every further step provably scales the distance to the designated
//!   fixed point by exactly `alpha`, so the whole tail is the recorded
//!   value times a geometric factor.
//!
//! Anything else within the step budget ends [`Outcome::Inconclusive`]:
//! honest for arbitrary tables, which may cycle.
//!
//! [`classify_orbit_sequence`] decides the limiting behaviour of the
//! distance sequence `p(x_n, x_m)` instead: eventually constant, Cauchy
//! with zero or positive limit, or undecided within the horizon. For a
//! finite table it settles the question exactly by evaluating all pairs
//! along the orbit's eventual cycle.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics::{DistanceSpace, SpacePoint, SynthPartialMetric};
use crate::rational::Rational;
use crate::space::{Addr, Point};

/// After this many consecutive recorded chain-line steps the geometric tail
/// is certified and iteration stops.
pub const CHAIN_CERTIFICATE_STEPS: u64 = 16;

/// One recorded iteration step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub n: u64,
    pub point: SpacePoint,
    /// `p(x_n, x_n)`.
    pub self_dist: Rational,
    /// `p(x_n, x_{n+1})`.
    pub step_dist: Rational,
    /// `p(x_n, candidate)`, when a candidate limit exists.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub to_candidate: Option<Rational>,
}

/// How an iteration ended.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Outcome {
    /// The orbit reached a point with `T(x) = x` at the given step.
    ReachedFixedPoint { point: SpacePoint, at_step: u64 },
    /// The orbit runs along a chain: from the last recorded step `N` on,
    /// `p(x_(N+k), limit) = value * ratio^k` exactly, for every `k >= 0`.
    ConvergingTo {
        limit: SpacePoint,
        value: Rational,
        ratio: Rational,
    },
    /// The budget ran out with no certificate; nothing is claimed.
    Inconclusive { steps_used: u64 },
}

/// A recorded orbit with its outcome.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IterationTrace {
    pub start: SpacePoint,
    /// The limit the trace measures distances against: the designated fixed
    /// point of a synthesized space, or the least-self-distance fixed row
    /// of a table.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub candidate: Option<SpacePoint>,
    pub steps: Vec<TraceStep>,
    pub outcome: Outcome,
}

fn candidate_for(space: &DistanceSpace) -> Result<Option<SpacePoint>> {
    match space {
        DistanceSpace::Metric(m) => {
            Ok(Some(SpacePoint::Addr(m.instance().designated_point())))
        }
        DistanceSpace::PartialMetric(p) => {
            Ok(Some(SpacePoint::Addr(p.instance().designated_point())))
        }
        DistanceSpace::Table(t) => {
            let Some(map) = t.map() else { return Ok(None) };
            let mut best: Option<(Rational, usize)> = None;
            for (i, &ti) in map.iter().enumerate() {
                if ti != i {
                    continue;
                }
                let s = t.value(i, i)?.clone();
                if best.as_ref().is_none_or(|(bs, _)| s < *bs) {
                    best = Some((s, i));
                }
            }
            Ok(best.map(|(_, i)| SpacePoint::Index(i)))
        }
    }
}

fn on_chain_line(space: &DistanceSpace, x: &SpacePoint) -> bool {
    matches!(space, DistanceSpace::Metric(_) | DistanceSpace::PartialMetric(_))
        && matches!(x, SpacePoint::Addr(Point { addr: Addr::Coord(_), .. }))
}

/// Follows the orbit of `start` for at most `max_steps` recorded steps.
pub fn iterate(
    space: &DistanceSpace,
    start: &SpacePoint,
    max_steps: u64,
) -> Result<IterationTrace> {
    if max_steps == 0 {
        return Err(Error::InvalidArgument("max_steps must be at least 1".into()));
    }
    let candidate = candidate_for(space)?;
    let mut steps = Vec::new();
    let mut cur = start.clone();
    let mut chain_run = 0u64;
    let mut outcome = None;

    for n in 0..max_steps {
        let next = space.apply(&cur)?;
        let to_candidate = candidate
            .as_ref()
            .map(|c| space.dist(&cur, c))
            .transpose()?;
        steps.push(TraceStep {
            n,
            point: cur.clone(),
            self_dist: space.self_dist(&cur)?,
            step_dist: space.dist(&cur, &next)?,
            to_candidate,
        });
        if next == cur {
            outcome = Some(Outcome::ReachedFixedPoint { point: cur.clone(), at_step: n });
            break;
        }
        if on_chain_line(space, &cur) {
            chain_run += 1;
            if chain_run >= CHAIN_CERTIFICATE_STEPS {
                break;
            }
        } else {
            chain_run = 0;
        }
        cur = next;
    }

    let outcome = outcome.unwrap_or_else(|| {
        let last = steps.last().expect("max_steps >= 1 records at least one step");
        match (&candidate, &last.to_candidate) {
            (Some(limit), Some(value)) if on_chain_line(space, &last.point) => {
                Outcome::ConvergingTo {
                    limit: limit.clone(),
                    value: value.clone(),
                    ratio: space
                        .alpha()
                        .expect("chain lines only exist in synthesized spaces")
                        .clone(),
                }
            }
            _ => Outcome::Inconclusive { steps_used: steps.len() as u64 },
        }
    });
    Ok(IterationTrace { start: start.clone(), candidate, steps, outcome })
}

/// The unique fixed point in the sample whose self-distance attains the
/// sampled minimum. For a correctly synthesized space this is the
/// designated fixed point, with self-distance (and sampled minimum) zero;
/// anything else is reported as a contract violation.
pub fn minimal_fixed_point(
    space: &SynthPartialMetric,
    sample: &[Point],
) -> Result<Point> {
    let (floor, attained) = space.min_self_distance(sample)?;
    let mut fixed_attainers = Vec::new();
    for x in &attained {
        if space.instance().is_fixed(x)? {
            fixed_attainers.push(x.clone());
        }
    }
    match fixed_attainers.len() {
        1 => Ok(fixed_attainers.remove(0)),
        0 => Err(Error::ContractViolation(format!(
            "no sampled fixed point attains the minimal self-distance {floor}"
        ))),
        k => Err(Error::ContractViolation(format!(
            "{k} sampled fixed points attain the minimal self-distance {floor}"
        ))),
    }
}

/// The limiting behaviour of the double sequence `p(x_n, x_m)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum OrbitClass {
    /// The orbit is eventually constant at a point of self-distance zero.
    EventuallyConstant { point: SpacePoint, at_step: u64 },
    /// `p(x_n, x_m) -> 0` as `n, m` grow.
    CauchyToZero,
    /// `p(x_n, x_m)` converges to the given positive value.
    CauchyToPositive { limit_value: Rational },
    /// No certificate within the horizon; nothing is claimed.
    NotCauchyWithinHorizon,
}

/// Classifies the orbit of `start` by exact evaluation, walking at most
/// `horizon` steps.
pub fn classify_orbit_sequence(
    space: &DistanceSpace,
    start: &SpacePoint,
    horizon: u64,
) -> Result<OrbitClass> {
    let mut seen: Vec<SpacePoint> = Vec::new();
    let mut cur = start.clone();
    for n in 0..=horizon {
        let next = space.apply(&cur)?;
        if next == cur {
            let s = space.self_dist(&cur)?;
            return Ok(if s.is_zero() {
                OrbitClass::EventuallyConstant { point: cur, at_step: n }
            } else {
                OrbitClass::CauchyToPositive { limit_value: s }
            });
        }
        if on_chain_line(space, &cur) {
            // The tail runs along the chain: distances scale by alpha each
            // step, so all pairwise distances far out tend to zero.
            return Ok(OrbitClass::CauchyToZero);
        }
        if let Some(first) = seen.iter().position(|p| *p == cur) {
            // A cycle of length >= 2: the limit of p(x_n, x_m) exists iff
            // every pair on the cycle (self-pairs included) shares one
            // value.
            let cycle = &seen[first..];
            let mut common: Option<Rational> = None;
            for a in cycle {
                for b in cycle {
                    let d = space.dist(a, b)?;
                    match &common {
                        None => common = Some(d),
                        Some(c) if *c == d => {}
                        Some(_) => return Ok(OrbitClass::NotCauchyWithinHorizon),
                    }
                }
            }
            let v = common.expect("a cycle has at least one pair");
            return Ok(if v.is_zero() {
                OrbitClass::CauchyToZero
            } else {
                OrbitClass::CauchyToPositive { limit_value: v }
            });
        }
        seen.push(cur);
        cur = next;
    }
    Ok(OrbitClass::NotCauchyWithinHorizon)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::{SynthMetric, TableSpace};
    use crate::potential::Potential;
    use crate::space::{Component, Graft, Instance, PointRef, ValidationMode};
    use num::bigint::BigInt;
    use std::sync::Arc;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn metric_space() -> DistanceSpace {
        let inst = Instance::new(
            r("1/2"),
            vec![
                Component::Tree { parent: vec![0, 0, 1, 2] },
                Component::Chain { two_sided: true, grafts: vec![] },
            ],
            PointRef { component: 0, node: 0 },
        );
        let pot = Potential::new(Arc::new(inst), ValidationMode::SingleFixedPoint).unwrap();
        DistanceSpace::Metric(SynthMetric::new(pot).unwrap())
    }

    fn pmetric() -> SynthPartialMetric {
        let inst = Instance::new(
            r("1/2"),
            vec![
                Component::Tree { parent: vec![0] },
                Component::Tree { parent: vec![0, 0] },
                Component::Chain {
                    two_sided: false,
                    grafts: vec![Graft { anchor: BigInt::from(2), parent: vec![0] }],
                },
            ],
            PointRef { component: 0, node: 0 },
        );
        let pot = Potential::new(Arc::new(inst), ValidationMode::MultiFixedPoint).unwrap();
        SynthPartialMetric::new(pot).unwrap()
    }

    #[test]
    fn depth_three_start_reaches_the_root_at_step_three() {
        let space = metric_space();
        let trace = iterate(&space, &Point::tree(0, 3).into(), 50).unwrap();
        assert_eq!(
            trace.outcome,
            Outcome::ReachedFixedPoint { point: Point::tree(0, 0).into(), at_step: 3 }
        );
        assert_eq!(trace.steps.len(), 4);
        // Distances to the candidate halve: 8, 4, 2, 0.
        let to_cand: Vec<Rational> = trace
            .steps
            .iter()
            .map(|s| s.to_candidate.clone().unwrap())
            .collect();
        assert_eq!(to_cand, vec![r("8"), r("4"), r("2"), r("0")]);
        assert!(trace.steps.iter().all(|s| s.self_dist.is_zero()));
    }

    #[test]
    fn starting_at_a_fixed_point_stops_immediately() {
        let space = DistanceSpace::PartialMetric(pmetric());
        let a1 = Point::tree(1, 0);
        let trace = iterate(&space, &a1.clone().into(), 10).unwrap();
        assert_eq!(
            trace.outcome,
            Outcome::ReachedFixedPoint { point: a1.into(), at_step: 0 }
        );
        // Self-distance of the secondary root: half its level 3/4.
        assert_eq!(trace.steps[0].self_dist, r("3/8"));
    }

    #[test]
    fn chain_orbits_get_a_geometric_certificate() {
        let space = metric_space();
        let trace = iterate(&space, &Point::coord(1, -3).into(), 1000).unwrap();
        // Certified well before the budget.
        assert_eq!(trace.steps.len(), CHAIN_CERTIFICATE_STEPS as usize);
        let last = trace.steps.last().unwrap();
        match &trace.outcome {
            Outcome::ConvergingTo { limit, value, ratio } => {
                assert_eq!(*limit, Point::tree(0, 0).into());
                assert_eq!(*ratio, r("1/2"));
                assert_eq!(value, last.to_candidate.as_ref().unwrap());
                // The recorded tail already scales geometrically.
                let prev = &trace.steps[trace.steps.len() - 2];
                assert_eq!(
                    last.to_candidate.clone().unwrap(),
                    &prev.to_candidate.clone().unwrap() * &r("1/2")
                );
            }
            other => panic!("expected a convergence certificate, got {other:?}"),
        }
    }

    #[test]
    fn budget_exhaustion_on_a_cycling_table_is_inconclusive() {
        let two_cycle = TableSpace::new(
            vec![vec![r("0"), r("1")], vec![r("1"), r("0")]],
            Some(vec![1, 0]),
        )
        .unwrap();
        let space = DistanceSpace::Table(two_cycle);
        let trace = iterate(&space, &SpacePoint::Index(0), 7).unwrap();
        assert_eq!(trace.outcome, Outcome::Inconclusive { steps_used: 7 });
        assert_eq!(trace.candidate, None);
        assert!(iterate(&space, &SpacePoint::Index(0), 0).is_err());
    }

    #[test]
    fn table_candidate_is_the_least_self_distance_fixed_row() {
        let t = TableSpace::new(
            vec![
                vec![r("1/2"), r("1"), r("1")],
                vec![r("1"), r("1/4"), r("1")],
                vec![r("1"), r("1"), r("1")],
            ],
            Some(vec![0, 1, 1]),
        )
        .unwrap();
        let space = DistanceSpace::Table(t);
        let trace = iterate(&space, &SpacePoint::Index(2), 10).unwrap();
        assert_eq!(trace.candidate, Some(SpacePoint::Index(1)));
        assert_eq!(
            trace.outcome,
            Outcome::ReachedFixedPoint { point: SpacePoint::Index(1), at_step: 1 }
        );
    }

    #[test]
    fn minimal_fixed_point_is_the_designated_one() {
        let space = pmetric();
        let sample = vec![
            Point::tree(0, 0),
            Point::tree(1, 0),
            Point::tree(1, 1),
            Point::coord(2, 0),
            Point::coord(2, 1),
        ];
        assert_eq!(minimal_fixed_point(&space, &sample).unwrap(), Point::tree(0, 0));
        // Without the designated point no fixed point attains the floor.
        let sample = vec![Point::tree(1, 0), Point::coord(2, 0)];
        assert!(matches!(
            minimal_fixed_point(&space, &sample),
            Err(Error::ContractViolation(_))
        ));
    }

    #[test]
    fn classification_by_region() {
        let space = DistanceSpace::PartialMetric(pmetric());
        // Designated basin: eventually constant at self-distance zero.
        assert_eq!(
            classify_orbit_sequence(&space, &Point::tree(0, 0).into(), 10).unwrap(),
            OrbitClass::EventuallyConstant { point: Point::tree(0, 0).into(), at_step: 0 }
        );
        // Secondary basin: Cauchy with the root's positive self-distance.
        assert_eq!(
            classify_orbit_sequence(&space, &Point::tree(1, 1).into(), 10).unwrap(),
            OrbitClass::CauchyToPositive { limit_value: r("3/8") }
        );
        // Chain: Cauchy to zero, certified instantly even far out.
        assert_eq!(
            classify_orbit_sequence(&space, &Point::coord(2, 0).into(), 10).unwrap(),
            OrbitClass::CauchyToZero
        );
        assert_eq!(
            classify_orbit_sequence(&space, &Point::graft(2, 0, 0).into(), 10).unwrap(),
            OrbitClass::CauchyToZero
        );
    }

    #[test]
    fn cycling_tables_classify_by_their_cycle_values() {
        // All pairwise distances on the cycle equal: the sequence converges.
        let constant = TableSpace::new(
            vec![vec![r("2/3"), r("2/3")], vec![r("2/3"), r("2/3")]],
            Some(vec![1, 0]),
        )
        .unwrap();
        assert_eq!(
            classify_orbit_sequence(&DistanceSpace::Table(constant), &SpacePoint::Index(0), 50)
                .unwrap(),
            OrbitClass::CauchyToPositive { limit_value: r("2/3") }
        );
        // Distances oscillate: no limit.
        let oscillating = TableSpace::new(
            vec![vec![r("0"), r("1")], vec![r("1"), r("0")]],
            Some(vec![1, 0]),
        )
        .unwrap();
        assert_eq!(
            classify_orbit_sequence(&DistanceSpace::Table(oscillating), &SpacePoint::Index(0), 50)
                .unwrap(),
            OrbitClass::NotCauchyWithinHorizon
        );
    }

    #[test]
    fn trace_json_round_trips() {
        let space = metric_space();
        let trace = iterate(&space, &Point::coord(1, 5).into(), 3).unwrap();
        let text = serde_json::to_string_pretty(&trace).unwrap();
        let back: IterationTrace = serde_json::from_str(&text).unwrap();
        assert_eq!(back, trace);
        assert!(text.contains("\"type\""));
    }
}
