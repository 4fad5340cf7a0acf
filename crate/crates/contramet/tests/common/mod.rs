//! Brute-force reimplementations used to cross-check the closed forms.
//!
//! Everything here works by literally applying the map step by step and
//! comparing points, never by coordinate arithmetic or path shortcuts, so
//! agreement with the library is evidence the closed forms are right.

use std::collections::BTreeSet;

use contramet::potential::Potential;
use contramet::{Instance, Point, Rational};

/// A step budget comfortably past anything the test instances need: the
/// largest tree is a handful of nodes and sampled chain coordinates stay
/// within two digits of the anchors.
pub const BUDGET: u64 = 512;

fn step(inst: &Instance, p: &Point) -> Point {
    inst.apply(p).expect("oracle points are valid")
}

/// The orbit of `start` as an explicit set, walked for `BUDGET` steps.
fn orbit_set(inst: &Instance, start: &Point) -> BTreeSet<Point> {
    let mut seen = BTreeSet::new();
    let mut cur = start.clone();
    for _ in 0..=BUDGET {
        if !seen.insert(cur.clone()) {
            break;
        }
        cur = step(inst, &cur);
    }
    seen
}

/// First `n` with the `n`-th iterate of `x` inside the walked orbit of
/// `target`; `None` if that does not happen within the budget.
pub fn first_entry(inst: &Instance, x: &Point, target: &Point) -> Option<u64> {
    let target_orbit = orbit_set(inst, target);
    let mut cur = x.clone();
    for n in 0..=BUDGET {
        if target_orbit.contains(&cur) {
            return Some(n);
        }
        cur = step(inst, &cur);
    }
    None
}

/// The `n`-th iterate of `x`, by applying the map `n` times.
pub fn iterate_n(inst: &Instance, x: &Point, n: u64) -> Point {
    let mut cur = x.clone();
    for _ in 0..n {
        cur = step(inst, &cur);
    }
    cur
}

/// Number of steps for `x` to become fixed; panics past the budget.
fn steps_to_fixed(inst: &Instance, x: &Point) -> u64 {
    let mut cur = x.clone();
    for n in 0..=BUDGET {
        let next = step(inst, &cur);
        if next == cur {
            return n;
        }
        cur = next;
    }
    panic!("{x} does not reach a fixed point within the budget");
}

/// The potential recomputed from its definition by walking orbits.
pub fn potential_value(pot: &Potential, x: &Point) -> Rational {
    let inst = pot.instance();
    let alpha = pot.alpha();
    if let Some(level) = pot.level_of(x.component) {
        // Secondary basin: the level scaled up by one factor per step the
        // point is away from its root.
        let depth = steps_to_fixed(inst, x);
        return alpha.pow(-(depth as i64)).expect("small exponent") * level.clone();
    }
    if x == pot.designated_point() {
        return Rational::zero();
    }
    // Primary region: walk x onto the orbit of the component's basepoint,
    // then walk the basepoint to the meeting point and compare arrivals.
    let rep = inst.component_rep(x).expect("valid point");
    let entry = first_entry(inst, x, &rep).expect("primary orbits meet their basepoint");
    let met_at = iterate_n(inst, x, entry);
    let mut rep_entry = 0u64;
    let mut cur = rep.clone();
    while cur != met_at {
        cur = step(inst, &cur);
        rep_entry += 1;
        assert!(rep_entry <= BUDGET, "basepoint never reaches {met_at}");
    }
    alpha
        .pow(rep_entry as i64 - entry as i64)
        .expect("small exponent")
}

/// Whether `x` is fixed, by applying the map once.
pub fn is_fixed(inst: &Instance, x: &Point) -> bool {
    step(inst, x) == *x
}

/// The synthesized metric recomputed from the oracle potential.
pub fn metric_dist(pot: &Potential, x: &Point, y: &Point) -> Rational {
    if x == y {
        return Rational::zero();
    }
    Rational::max_of(&potential_value(pot, x), &potential_value(pot, y))
}

fn pm_weight(pot: &Potential, x: &Point) -> Rational {
    let v = potential_value(pot, x);
    if is_fixed(pot.instance(), x) {
        v * Rational::new(1, 2).expect("2 is nonzero")
    } else {
        v
    }
}

/// The synthesized partial metric recomputed from the oracle potential.
pub fn pm_dist(pot: &Potential, x: &Point, y: &Point) -> Rational {
    if x == y {
        if pot.in_secondary_basin(x) {
            potential_value(pot, x) * Rational::new(1, 2).expect("2 is nonzero")
        } else {
            Rational::zero()
        }
    } else {
        Rational::max_of(&pm_weight(pot, x), &pm_weight(pot, y))
    }
}
