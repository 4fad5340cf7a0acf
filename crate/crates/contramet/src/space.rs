//! Finitely presented self-maps and their orbit calculus.
//!
//! An [`Instance`] presents a countable set `X` with a self-map `T : X -> X`
//! as a disjoint union of components of two kinds:
//!
//! * [`Component::Tree`]: a finite in-tree given by a parent array. `T` sends
//!   every node to its parent and the root (node 0) to itself, so each tree
//!   root is a fixed point.
//! * [`Component::Chain`]: a copy of the integers (`two_sided`) or of the
//!   non-negative integers under the successor map, with finitely many finite
//!   in-trees ("grafts") attached. A graft root maps to the chain point at
//!   its anchor coordinate; chain components contain no fixed or periodic
//!   points.
//!
//! The orbit calculus ([`Instance::apply`], [`Instance::first_entry_index`],
//! [`Instance::landing_point`], [`Instance::component_rep`]) is exact: every
//! quantity is produced in closed form or by a walk bounded by the size of
//! one finite part, so chain coordinates may be astronomically large without
//! cost.
//!
//! All operations except [`Instance::validate`] assume a validated instance;
//! on malformed input they either fail with a structural error or compute
//! mechanically from the arrays.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num::bigint::BigInt;
use num::{Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{bigint_json, Rational};

/// Address of a point within its component.
///
/// The derived ordering (tree nodes, then chain coordinates, then graft
/// nodes) is the canonical point order used everywhere determinism matters:
/// samples, reports, witness lists.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Addr {
    /// Node of a tree component.
    TreeNode(usize),
    /// Coordinate on the chain line.
    Coord(BigInt),
    /// Node of the `graft`-th graft of a chain component.
    GraftNode { graft: usize, node: usize },
}

/// A point of an instance: a component id plus an address within it.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pub component: usize,
    pub addr: Addr,
}

impl Point {
    pub fn tree(component: usize, node: usize) -> Self {
        Point { component, addr: Addr::TreeNode(node) }
    }

    pub fn coord(component: usize, coord: impl Into<BigInt>) -> Self {
        Point { component, addr: Addr::Coord(coord.into()) }
    }

    pub fn graft(component: usize, graft: usize, node: usize) -> Self {
        Point { component, addr: Addr::GraftNode { graft, node } }
    }
}

impl fmt::Display for Point {
    /// `component:kind:address`, e.g. `0:tree:5`, `1:coord:-4`, `1:graft:0:3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.addr {
            Addr::TreeNode(n) => write!(f, "{}:tree:{}", self.component, n),
            Addr::Coord(c) => write!(f, "{}:coord:{}", self.component, c),
            Addr::GraftNode { graft, node } => {
                write!(f, "{}:graft:{}:{}", self.component, graft, node)
            }
        }
    }
}

impl FromStr for Point {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("not a point address: {s:?}"));
        let parts: Vec<&str> = s.split(':').collect();
        let component: usize = parts
            .first()
            .and_then(|p| p.parse().ok())
            .ok_or_else(bad)?;
        match (parts.len(), parts.get(1).copied()) {
            (3, Some("tree")) => Ok(Point::tree(component, parts[2].parse().map_err(|_| bad())?)),
            (3, Some("coord")) => Ok(Point::coord(
                component,
                BigInt::from_str(parts[2]).map_err(|_| bad())?,
            )),
            (4, Some("graft")) => Ok(Point::graft(
                component,
                parts[2].parse().map_err(|_| bad())?,
                parts[3].parse().map_err(|_| bad())?,
            )),
            _ => Err(bad()),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct PointRepr {
    component: usize,
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    node: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    coord: Option<serde_json::Number>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    graft: Option<usize>,
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::Error as _;
        let repr = match &self.addr {
            Addr::TreeNode(n) => PointRepr {
                component: self.component,
                kind: "tree".into(),
                node: Some(*n),
                coord: None,
                graft: None,
            },
            Addr::Coord(c) => PointRepr {
                component: self.component,
                kind: "coord".into(),
                node: None,
                coord: Some(
                    serde_json::Number::from_str(&c.to_string())
                        .map_err(|_| S::Error::custom("coordinate is not a JSON number"))?,
                ),
                graft: None,
            },
            Addr::GraftNode { graft, node } => PointRepr {
                component: self.component,
                kind: "graft".into(),
                node: Some(*node),
                coord: None,
                graft: Some(*graft),
            },
        };
        repr.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = PointRepr::deserialize(deserializer)?;
        let missing = |field: &str| D::Error::custom(format!("point is missing \"{field}\""));
        match repr.kind.as_str() {
            "tree" => Ok(Point::tree(repr.component, repr.node.ok_or_else(|| missing("node"))?)),
            "coord" => {
                let c = repr.coord.ok_or_else(|| missing("coord"))?;
                let c = BigInt::from_str(&c.to_string())
                    .map_err(|_| D::Error::custom("\"coord\" must be an integer"))?;
                Ok(Point::coord(repr.component, c))
            }
            "graft" => Ok(Point::graft(
                repr.component,
                repr.graft.ok_or_else(|| missing("graft"))?,
                repr.node.ok_or_else(|| missing("node"))?,
            )),
            other => Err(D::Error::custom(format!("unknown point kind {other:?}"))),
        }
    }
}

/// Reference to a tree node by component and node id, used for the
/// designated fixed point in the instance encoding.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointRef {
    pub component: usize,
    pub node: usize,
}

/// A finite in-tree attached to a chain: its root maps to `Coord(anchor)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graft {
    #[serde(with = "bigint_json")]
    pub anchor: BigInt,
    /// Parent array with the convention `parent[0] == 0`; node 0 is the
    /// graft root, and node 0's actual image is `Coord(anchor)`.
    pub parent: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Component {
    /// Finite in-tree; node 0 is the root and a fixed point.
    Tree { parent: Vec<usize> },
    /// Successor map on all integers (`two_sided`) or on the non-negative
    /// integers, with finitely many grafts.
    Chain {
        two_sided: bool,
        #[serde(default)]
        grafts: Vec<Graft>,
    },
}

/// A finitely presented self-map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    alpha: Rational,
    components: Vec<Component>,
    designated: PointRef,
}

/// Which fixed-point regime an instance is validated for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ValidationMode {
    /// Exactly one fixed point: a single tree component.
    SingleFixedPoint,
    /// One designated fixed point plus any number of further tree roots.
    MultiFixedPoint,
}

/// One violated hypothesis, with a witness point where one exists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypothesisViolation {
    pub kind: ViolationKind,
    pub witness: Option<Point>,
    pub detail: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    /// The contraction factor is not strictly between 0 and 1.
    AlphaOutOfRange,
    /// No tree component, hence no fixed point at all.
    NoFixedPoint,
    /// A tree root other than the designated one, in single-fixed-point mode.
    ExtraFixedPoint,
    /// The designated reference does not name the root of a tree component.
    DesignatedNotRoot,
    /// A tree or graft has an empty parent array.
    EmptyComponent,
    /// A parent entry points outside its component.
    ParentOutOfRange,
    /// `parent[0] != 0` in a tree or graft.
    RootNotSelfParented,
    /// A node that never reaches node 0, i.e. a periodic orbit off the root.
    PeriodicPoint,
    /// A one-sided chain whose graft anchors at a negative coordinate.
    NegativeAnchor,
}

impl fmt::Display for HypothesisViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}: {}", self.kind, self.detail)?;
        if let Some(w) = &self.witness {
            write!(f, " (witness {w})")?;
        }
        Ok(())
    }
}

impl Instance {
    pub fn new(alpha: Rational, components: Vec<Component>, designated: PointRef) -> Self {
        Instance { alpha, components, designated }
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn designated(&self) -> PointRef {
        self.designated
    }

    /// The designated fixed point as a [`Point`].
    pub fn designated_point(&self) -> Point {
        Point::tree(self.designated.component, self.designated.node)
    }

    /// Roots of all tree components, in component order. For a validated
    /// instance these are exactly the fixed points of the map.
    pub fn fixed_points(&self) -> Vec<Point> {
        self.components
            .iter()
            .enumerate()
            .filter(|(_, c)| matches!(c, Component::Tree { .. }))
            .map(|(i, _)| Point::tree(i, 0))
            .collect()
    }

    fn component(&self, id: usize, point: &Point) -> Result<&Component> {
        self.components.get(id).ok_or_else(|| Error::Address {
            point: point.to_string(),
            reason: format!("component {id} does not exist"),
        })
    }

    /// Checks that `p` names a point of this instance.
    pub fn check_point(&self, p: &Point) -> Result<()> {
        let bad = |reason: String| Error::Address { point: p.to_string(), reason };
        match (self.component(p.component, p)?, &p.addr) {
            (Component::Tree { parent }, Addr::TreeNode(n)) => {
                if *n < parent.len() {
                    Ok(())
                } else {
                    Err(bad(format!("tree has {} nodes", parent.len())))
                }
            }
            (Component::Chain { two_sided, .. }, Addr::Coord(c)) => {
                if *two_sided || !c.is_negative() {
                    Ok(())
                } else {
                    Err(bad("chain is one-sided, coordinates start at 0".into()))
                }
            }
            (Component::Chain { grafts, .. }, Addr::GraftNode { graft, node }) => {
                let g = grafts
                    .get(*graft)
                    .ok_or_else(|| bad(format!("chain has {} grafts", grafts.len())))?;
                if *node < g.parent.len() {
                    Ok(())
                } else {
                    Err(bad(format!("graft {graft} has {} nodes", g.parent.len())))
                }
            }
            (Component::Tree { .. }, _) => Err(bad("component is a tree".into())),
            (Component::Chain { .. }, Addr::TreeNode(_)) => {
                Err(bad("component is a chain".into()))
            }
        }
    }

    fn parent_of(&self, component: usize, parent: &[usize], node: usize) -> Result<usize> {
        let q = parent[node];
        if q < parent.len() {
            Ok(q)
        } else {
            Err(Error::Malformed {
                component,
                detail: format!("parent of node {node} is {q}, out of range"),
            })
        }
    }

    /// One application of the map.
    pub fn apply(&self, p: &Point) -> Result<Point> {
        self.check_point(p)?;
        match (&self.components[p.component], &p.addr) {
            (Component::Tree { parent }, Addr::TreeNode(n)) => {
                Ok(Point::tree(p.component, self.parent_of(p.component, parent, *n)?))
            }
            (Component::Chain { .. }, Addr::Coord(c)) => Ok(Point::coord(p.component, c + 1)),
            (Component::Chain { two_sided, grafts }, Addr::GraftNode { graft, node }) => {
                let g = &grafts[*graft];
                if *node == 0 {
                    if !two_sided && g.anchor.is_negative() {
                        return Err(Error::Malformed {
                            component: p.component,
                            detail: format!(
                                "graft {graft} anchors at {} on a one-sided chain",
                                g.anchor
                            ),
                        });
                    }
                    Ok(Point::coord(p.component, g.anchor.clone()))
                } else {
                    let q = self.parent_of(p.component, &g.parent, *node)?;
                    Ok(Point::graft(p.component, *graft, q))
                }
            }
            _ => unreachable!("check_point rules out mismatched address kinds"),
        }
    }

    /// Whether `p` is a fixed point, computed mechanically as `T(p) == p`.
    pub fn is_fixed(&self, p: &Point) -> Result<bool> {
        Ok(self.apply(p)? == *p)
    }

    /// The canonical representative of the component of `p`: the tree root,
    /// or coordinate 0 of the chain.
    pub fn component_rep(&self, p: &Point) -> Result<Point> {
        self.check_point(p)?;
        match &self.components[p.component] {
            Component::Tree { .. } => Ok(Point::tree(p.component, 0)),
            Component::Chain { .. } => Ok(Point::coord(p.component, 0)),
        }
    }

    /// Steps from `node` to node 0 along the parent array. Fails on a cycle
    /// that avoids node 0.
    fn depth_in(&self, component: usize, parent: &[usize], node: usize) -> Result<usize> {
        let mut cur = node;
        let mut depth = 0usize;
        while cur != 0 {
            if depth >= parent.len() {
                return Err(Error::Malformed {
                    component,
                    detail: format!("node {node} never reaches node 0"),
                });
            }
            cur = self.parent_of(component, parent, cur)?;
            depth += 1;
        }
        Ok(depth)
    }

    /// The path `node, parent(node), ..., 0`, inclusive on both ends.
    fn path_to_root(&self, component: usize, parent: &[usize], node: usize) -> Result<Vec<usize>> {
        let mut path = vec![node];
        let mut cur = node;
        while cur != 0 {
            if path.len() > parent.len() {
                return Err(Error::Malformed {
                    component,
                    detail: format!("node {node} never reaches node 0"),
                });
            }
            cur = self.parent_of(component, parent, cur)?;
            path.push(cur);
        }
        Ok(path)
    }

    /// Where the orbit of a chain-component point first lands on the chain
    /// line, and how many steps that takes.
    fn chain_landing(&self, p: &Point) -> Result<(BigInt, BigInt)> {
        match (&self.components[p.component], &p.addr) {
            (Component::Chain { .. }, Addr::Coord(c)) => Ok((c.clone(), BigInt::zero())),
            (Component::Chain { grafts, .. }, Addr::GraftNode { graft, node }) => {
                let g = &grafts[*graft];
                let depth = self.depth_in(p.component, &g.parent, *node)?;
                Ok((g.anchor.clone(), BigInt::from(depth) + 1))
            }
            _ => unreachable!("chain_landing is only called on chain points"),
        }
    }

    /// The first `n >= 0` with `T^n(x)` on the orbit of `target`, or `None`
    /// when the two points live in different components and no such `n`
    /// exists.
    pub fn first_entry_index(&self, x: &Point, target: &Point) -> Result<Option<BigInt>> {
        self.check_point(x)?;
        self.check_point(target)?;
        if x.component != target.component {
            return Ok(None);
        }
        let comp = &self.components[x.component];
        match comp {
            Component::Tree { parent } => {
                let Addr::TreeNode(from) = x.addr else { unreachable!() };
                let Addr::TreeNode(to) = target.addr else { unreachable!() };
                let orbit: HashSet<usize> = self
                    .path_to_root(x.component, parent, to)?
                    .into_iter()
                    .collect();
                let mut cur = from;
                let mut steps = 0usize;
                loop {
                    if orbit.contains(&cur) {
                        return Ok(Some(BigInt::from(steps)));
                    }
                    if steps >= parent.len() {
                        return Err(Error::Malformed {
                            component: x.component,
                            detail: format!("node {from} never reaches node 0"),
                        });
                    }
                    cur = self.parent_of(x.component, parent, cur)?;
                    steps += 1;
                }
            }
            Component::Chain { grafts, .. } => {
                // Same graft: the orbits can meet inside the graft itself.
                if let (Addr::GraftNode { graft: gx, node: nx }, Addr::GraftNode { graft: gt, node: nt }) =
                    (&x.addr, &target.addr)
                {
                    if gx == gt {
                        let g = &grafts[*gx];
                        let orbit: HashSet<usize> = self
                            .path_to_root(x.component, &g.parent, *nt)?
                            .into_iter()
                            .collect();
                        let mut cur = *nx;
                        let mut steps = 0usize;
                        loop {
                            if orbit.contains(&cur) {
                                return Ok(Some(BigInt::from(steps)));
                            }
                            if steps >= g.parent.len() {
                                return Err(Error::Malformed {
                                    component: x.component,
                                    detail: format!("graft node {nx} never reaches node 0"),
                                });
                            }
                            cur = self.parent_of(x.component, &g.parent, cur)?;
                            steps += 1;
                        }
                    }
                }
                // Otherwise both orbits meet on the chain line: x reaches the
                // line after `steps` at coordinate `from`, and the orbit of
                // `target` covers every coordinate from `entry` on.
                let (from, steps) = self.chain_landing(x)?;
                let (entry, _) = self.chain_landing(target)?;
                let wait = entry - from;
                let wait = if wait.is_negative() { BigInt::zero() } else { wait };
                Ok(Some(steps + wait))
            }
        }
    }

    /// `T^n(x)` for `n = first_entry_index(x, target)`: the point where the
    /// orbit of `x` first lands on the orbit of `target`. Fails when the
    /// orbits never meet.
    pub fn landing_point(&self, x: &Point, target: &Point) -> Result<Point> {
        let n = self
            .first_entry_index(x, target)?
            .ok_or_else(|| Error::OrbitNeverMeets {
                from: x.to_string(),
                target: target.to_string(),
            })?;
        let comp = &self.components[x.component];
        match (comp, &x.addr) {
            (Component::Tree { parent }, Addr::TreeNode(from)) => {
                let n = n.to_usize().expect("tree walks are bounded by the tree size");
                let mut cur = *from;
                for _ in 0..n {
                    cur = self.parent_of(x.component, parent, cur)?;
                }
                Ok(Point::tree(x.component, cur))
            }
            (Component::Chain { .. }, Addr::Coord(c)) => Ok(Point::coord(x.component, c + n)),
            (Component::Chain { grafts, .. }, Addr::GraftNode { graft, node }) => {
                let g = &grafts[*graft];
                let (anchor, steps) = self.chain_landing(x)?;
                if n < steps {
                    let n = n.to_usize().expect("graft walks are bounded by the graft size");
                    let mut cur = *node;
                    for _ in 0..n {
                        cur = self.parent_of(x.component, &g.parent, cur)?;
                    }
                    Ok(Point::graft(x.component, *graft, cur))
                } else {
                    Ok(Point::coord(x.component, anchor + (n - steps)))
                }
            }
            _ => unreachable!("check_point rules out mismatched address kinds"),
        }
    }

    /// Every point of the instance, in canonical order. Fails if any
    /// component is a chain.
    pub fn enumerate_finite(&self) -> Result<Vec<Point>> {
        let mut points = Vec::new();
        for (i, comp) in self.components.iter().enumerate() {
            match comp {
                Component::Tree { parent } => {
                    points.extend((0..parent.len()).map(|n| Point::tree(i, n)));
                }
                Component::Chain { .. } => return Err(Error::NotFinite { component: i }),
            }
        }
        Ok(points)
    }

    /// Checks every hypothesis the synthesis relies on and returns all
    /// findings. An empty result means the instance is valid for `mode`.
    pub fn validate(&self, mode: ValidationMode) -> Vec<HypothesisViolation> {
        let mut out = Vec::new();
        let one = Rational::one();
        if !self.alpha.is_positive() || self.alpha >= one {
            out.push(HypothesisViolation {
                kind: ViolationKind::AlphaOutOfRange,
                witness: None,
                detail: format!("alpha = {} is not strictly between 0 and 1", self.alpha),
            });
        }

        for (i, comp) in self.components.iter().enumerate() {
            match comp {
                Component::Tree { parent } => {
                    self.validate_parent_array(i, parent, None, &mut out);
                }
                Component::Chain { two_sided, grafts } => {
                    for (g, graft) in grafts.iter().enumerate() {
                        self.validate_parent_array(i, &graft.parent, Some(g), &mut out);
                        if !two_sided && graft.anchor.is_negative() {
                            out.push(HypothesisViolation {
                                kind: ViolationKind::NegativeAnchor,
                                witness: Some(Point::graft(i, g, 0)),
                                detail: format!(
                                    "graft {g} of one-sided chain {i} anchors at {}",
                                    graft.anchor
                                ),
                            });
                        }
                    }
                }
            }
        }

        let trees: Vec<usize> = self
            .components
            .iter()
            .enumerate()
            .filter(|(_, c)| matches!(c, Component::Tree { .. }))
            .map(|(i, _)| i)
            .collect();
        if trees.is_empty() {
            out.push(HypothesisViolation {
                kind: ViolationKind::NoFixedPoint,
                witness: None,
                detail: "no tree component, so the map has no fixed point".into(),
            });
        }

        let designated_ok = matches!(
            self.components.get(self.designated.component),
            Some(Component::Tree { .. })
        ) && self.designated.node == 0;
        if !designated_ok {
            out.push(HypothesisViolation {
                kind: ViolationKind::DesignatedNotRoot,
                witness: Some(Point::tree(self.designated.component, self.designated.node)),
                detail: format!(
                    "designated point (component {}, node {}) is not the root of a tree",
                    self.designated.component, self.designated.node
                ),
            });
        }

        if mode == ValidationMode::SingleFixedPoint {
            for &t in &trees {
                if !designated_ok || t != self.designated.component {
                    out.push(HypothesisViolation {
                        kind: ViolationKind::ExtraFixedPoint,
                        witness: Some(Point::tree(t, 0)),
                        detail: format!(
                            "tree {t} adds a second fixed point, but the map must have exactly one"
                        ),
                    });
                }
            }
        }
        out
    }

    fn validate_parent_array(
        &self,
        component: usize,
        parent: &[usize],
        graft: Option<usize>,
        out: &mut Vec<HypothesisViolation>,
    ) {
        let place = match graft {
            Some(g) => format!("graft {g} of component {component}"),
            None => format!("component {component}"),
        };
        let point = |node: usize| match graft {
            Some(g) => Point::graft(component, g, node),
            None => Point::tree(component, node),
        };
        if parent.is_empty() {
            out.push(HypothesisViolation {
                kind: ViolationKind::EmptyComponent,
                witness: None,
                detail: format!("{place} has an empty parent array"),
            });
            return;
        }
        let mut in_range = true;
        for (n, &q) in parent.iter().enumerate() {
            if q >= parent.len() {
                in_range = false;
                out.push(HypothesisViolation {
                    kind: ViolationKind::ParentOutOfRange,
                    witness: Some(point(n)),
                    detail: format!("{place}: parent of node {n} is {q}, out of range"),
                });
            }
        }
        if parent[0] != 0 {
            out.push(HypothesisViolation {
                kind: ViolationKind::RootNotSelfParented,
                witness: Some(point(0)),
                detail: format!("{place}: parent[0] = {}, so node 0 is not a root", parent[0]),
            });
            return;
        }
        if !in_range {
            return;
        }
        // First node (in id order) that never reaches the root witnesses a
        // periodic orbit; one finding per parent array is enough.
        for n in 0..parent.len() {
            if self.depth_in(component, parent, n).is_err() {
                out.push(HypothesisViolation {
                    kind: ViolationKind::PeriodicPoint,
                    witness: Some(point(n)),
                    detail: format!(
                        "{place}: node {n} never reaches the root, so its orbit is periodic"
                    ),
                });
                break;
            }
        }
    }
}
