//! The contraction potential.
//!
//! A [`Potential`] assigns every point `x` of a validated instance an exact
//! positive rational weight, zero exactly at the designated fixed point, such
//! that one application of the map scales the weight by `alpha` whenever the
//! step moves (and never increases it otherwise). The synthesized metric and
//! partial metric in [`crate::metrics`] are both read off this single
//! function.
//!
//! On the region draining to the designated fixed point (its own tree, and
//! every chain) the weight of `x` is `alpha^(q - e)`, where `e` is the first
//! index at which the orbit of `x` enters the orbit of its component
//! representative and `q` is the first index at which the representative's
//! orbit enters the shared tail; both come from the exact orbit calculus.
//! The entry indices are exact integers of any size; turning one into a
//! weight is guarded by an exponent bound, since `alpha^e` for astronomical
//! `e` has astronomically many digits.
//!
//! Each non-designated tree is instead pinned at a level strictly between
//! `alpha` and 1 (see [`fixed_point_levels`]); a node at depth `d` there
//! weighs `alpha^(-d)` times its root's level. Distinct levels keep the
//! self-distances of distinct fixed points distinct, which the partial
//! metric needs.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num::bigint::BigInt;
use num::ToPrimitive;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::space::{Instance, Point, ValidationMode};

/// Default bound on the magnitude of exponents fed to [`Rational::pow`].
pub const DEFAULT_EXPONENT_GUARD: u64 = 1_000_000;

/// `count` pairwise distinct rationals strictly between `alpha` and 1, in
/// increasing order: level `i` is `alpha + (i + 1) * (1 - alpha) / (count + 1)`.
pub fn fixed_point_levels(count: usize, alpha: &Rational) -> Vec<Rational> {
    let step = &(&Rational::one() - alpha)
        * &Rational::new(1, count as i64 + 1).expect("count + 1 is nonzero");
    (0..count)
        .map(|i| alpha + &(&step * &Rational::from_int(i as i64 + 1)))
        .collect()
}

/// The potential of a validated instance.
#[derive(Clone, Debug)]
pub struct Potential {
    inst: Arc<Instance>,
    mode: ValidationMode,
    designated: Point,
    /// Components that are non-designated trees, each with its level.
    levels: BTreeMap<usize, Rational>,
    exponent_guard: u64,
}

impl Potential {
    /// Validates the instance for `mode` and prepares the potential. All
    /// hypothesis violations are returned at once on failure.
    pub fn new(inst: Arc<Instance>, mode: ValidationMode) -> Result<Self> {
        let violations = inst.validate(mode);
        if !violations.is_empty() {
            return Err(Error::Hypotheses(violations));
        }
        let designated = inst.designated_point();
        let secondary: Vec<usize> = inst
            .fixed_points()
            .iter()
            .map(|p| p.component)
            .filter(|&c| c != designated.component)
            .collect();
        let levels = fixed_point_levels(secondary.len(), inst.alpha())
            .into_iter()
            .zip(&secondary)
            .map(|(level, &comp)| (comp, level))
            .collect();
        Ok(Potential {
            inst,
            mode,
            designated,
            levels,
            exponent_guard: DEFAULT_EXPONENT_GUARD,
        })
    }

    /// Replaces the exponent guard (default [`DEFAULT_EXPONENT_GUARD`]).
    pub fn with_exponent_guard(mut self, guard: u64) -> Self {
        self.exponent_guard = guard;
        self
    }

    pub fn instance(&self) -> &Arc<Instance> {
        &self.inst
    }

    pub fn mode(&self) -> ValidationMode {
        self.mode
    }

    pub fn alpha(&self) -> &Rational {
        self.inst.alpha()
    }

    pub fn designated_point(&self) -> &Point {
        &self.designated
    }

    /// All fixed points: the designated one first, then the secondary tree
    /// roots in component order.
    pub fn fixed_points(&self) -> Vec<Point> {
        let mut out = vec![self.designated.clone()];
        out.extend(self.levels.keys().map(|&c| Point::tree(c, 0)));
        out
    }

    /// The level of a secondary fixed-point component, if `component` is one.
    pub fn level_of(&self, component: usize) -> Option<&Rational> {
        self.levels.get(&component)
    }

    /// Component ids of the secondary (non-designated) trees.
    pub fn secondary_components(&self) -> BTreeSet<usize> {
        self.levels.keys().copied().collect()
    }

    /// Whether `x` lies in the basin of a secondary fixed point.
    pub fn in_secondary_basin(&self, x: &Point) -> bool {
        self.levels.contains_key(&x.component)
    }

    /// Whether `x` is a fixed point (the root of some tree).
    pub fn is_fixed(&self, x: &Point) -> Result<bool> {
        self.inst.is_fixed(x)
    }

    fn guarded_pow(&self, exponent: &BigInt) -> Result<Rational> {
        if exponent.magnitude().to_u64().is_none_or(|m| m > self.exponent_guard) {
            return Err(Error::ExponentGuard {
                exponent: exponent.clone(),
                guard: self.exponent_guard,
            });
        }
        let e = exponent.to_i64().expect("guarded exponents fit in i64");
        self.alpha().pow(e)
    }

    /// The potential value at `x`.
    pub fn value(&self, x: &Point) -> Result<Rational> {
        self.inst.check_point(x)?;
        if let Some(level) = self.levels.get(&x.component) {
            // Secondary basin: alpha^(-depth) * level of the root.
            let depth = self
                .inst
                .first_entry_index(x, &Point::tree(x.component, 0))?
                .expect("a tree node reaches its own root");
            return Ok(&self.guarded_pow(&-depth)? * level);
        }
        if *x == self.designated {
            return Ok(Rational::zero());
        }
        // Primary region: the exponent is determined by where the orbit of x
        // meets the orbit of the component representative.
        let rep = self.inst.component_rep(x)?;
        let entry = self
            .inst
            .first_entry_index(x, &rep)?
            .expect("a point reaches its component representative's orbit");
        let met_at = self.inst.landing_point(x, &rep)?;
        let rep_entry = self
            .inst
            .first_entry_index(&rep, &met_at)?
            .expect("the representative reaches the shared tail");
        self.guarded_pow(&(rep_entry - entry))
    }
}
