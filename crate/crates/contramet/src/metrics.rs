//! Synthesized distance structures.
//!
//! Both synthesized spaces are max-type readings of one [`Potential`]:
//!
//! * [`SynthMetric`] (single fixed point): `d(x, y) = max(w(x), w(y))` for
//!   `x != y` and `d(x, x) = 0`, where `w` is the potential value. Under it
//!   the map is an `alpha`-contraction in the classical sense.
//! * [`SynthPartialMetric`] (designated plus finitely many further fixed
//!   points): the same max formula, except that a fixed point enters
//!   off-diagonal maxima at half its potential value, and a point in a
//!   secondary basin keeps the positive self-distance `w(x) / 2`. Under it
//!   the map satisfies `p(Tx, Ty) <= max(alpha * p(x, y), p(x, x), p(y, y))`.
//!
//! A [`TableSpace`] is the finite, fully materialized form: an `n x n`
//! matrix of exact rationals with an optional self-map given index-wise.
//! Synthesized spaces over finite instances can be exported to tables, and
//! externally supplied tables can be verified against the same axioms.
//!
//! [`DistanceSpace`] is the common interface the verifier and the iteration
//! utilities consume.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::potential::Potential;
use crate::rational::Rational;
use crate::space::{Instance, Point, ValidationMode};

/// A point of a [`DistanceSpace`]: an address into a synthesized space, or a
/// row index into a table.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SpacePoint {
    Addr(Point),
    Index(usize),
}

impl From<Point> for SpacePoint {
    fn from(p: Point) -> Self {
        SpacePoint::Addr(p)
    }
}

impl fmt::Display for SpacePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpacePoint::Addr(p) => p.fmt(f),
            SpacePoint::Index(i) => write!(f, "#{i}"),
        }
    }
}

impl Serialize for SpacePoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct IndexRepr {
            index: usize,
        }
        match self {
            SpacePoint::Addr(p) => p.serialize(serializer),
            SpacePoint::Index(i) => IndexRepr { index: *i }.serialize(serializer),
        }
    }
}

impl<'de> Deserialize<'de> for SpacePoint {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let value = serde_json::Value::deserialize(deserializer)?;
        if let Some(obj) = value.as_object() {
            if obj.len() == 1 {
                if let Some(i) = obj.get("index") {
                    let i = i
                        .as_u64()
                        .ok_or_else(|| D::Error::custom("\"index\" must be a non-negative integer"))?;
                    return Ok(SpacePoint::Index(i as usize));
                }
            }
        }
        let p = Point::deserialize(value).map_err(D::Error::custom)?;
        Ok(SpacePoint::Addr(p))
    }
}

/// The metric synthesized for a map with exactly one fixed point.
#[derive(Clone, Debug)]
pub struct SynthMetric {
    pot: Potential,
}

impl SynthMetric {
    /// Requires a potential built in single-fixed-point mode.
    pub fn new(pot: Potential) -> Result<Self> {
        if pot.mode() != ValidationMode::SingleFixedPoint {
            return Err(Error::ModeMismatch {
                context: "metric synthesis",
                expected: "single-fixed-point",
            });
        }
        Ok(SynthMetric { pot })
    }

    pub fn potential(&self) -> &Potential {
        &self.pot
    }

    pub fn instance(&self) -> &Instance {
        self.pot.instance()
    }

    pub fn alpha(&self) -> &Rational {
        self.pot.alpha()
    }

    /// The off-diagonal weight: `dist(x, y) = max(weight(x), weight(y))` for
    /// distinct points.
    pub fn weight(&self, x: &Point) -> Result<Rational> {
        self.pot.value(x)
    }

    /// Self-distances vanish identically in a metric.
    pub fn self_dist(&self, x: &Point) -> Result<Rational> {
        self.pot.instance().check_point(x)?;
        Ok(Rational::zero())
    }

    pub fn dist(&self, x: &Point, y: &Point) -> Result<Rational> {
        if x == y {
            return self.self_dist(x);
        }
        Ok(Rational::max_of(&self.weight(x)?, &self.weight(y)?))
    }

    /// Materializes the space as a table; requires a finite instance.
    pub fn to_table(&self) -> Result<FiniteTable> {
        finite_table(self.pot.instance(), |x| self.weight(x), |x| self.self_dist(x))
    }
}

/// The partial metric synthesized for a map with one designated fixed point
/// and finitely many further ones.
#[derive(Clone, Debug)]
pub struct SynthPartialMetric {
    pot: Potential,
}

impl SynthPartialMetric {
    /// Requires a potential built in multi-fixed-point mode.
    pub fn new(pot: Potential) -> Result<Self> {
        if pot.mode() != ValidationMode::MultiFixedPoint {
            return Err(Error::ModeMismatch {
                context: "partial-metric synthesis",
                expected: "multi-fixed-point",
            });
        }
        Ok(SynthPartialMetric { pot })
    }

    pub fn potential(&self) -> &Potential {
        &self.pot
    }

    pub fn instance(&self) -> &Instance {
        self.pot.instance()
    }

    pub fn alpha(&self) -> &Rational {
        self.pot.alpha()
    }

    /// The off-diagonal weight: `dist(x, y) = max(weight(x), weight(y))` for
    /// distinct points. Fixed points contribute at half their potential
    /// value; every other point contributes it in full.
    pub fn weight(&self, x: &Point) -> Result<Rational> {
        let v = self.pot.value(x)?;
        if self.pot.is_fixed(x)? {
            Ok(&v * &half())
        } else {
            Ok(v)
        }
    }

    /// Points in a secondary basin keep self-distance `value / 2`; the
    /// primary region has self-distance 0.
    pub fn self_dist(&self, x: &Point) -> Result<Rational> {
        if self.pot.in_secondary_basin(x) {
            Ok(&self.pot.value(x)? * &half())
        } else {
            self.pot.instance().check_point(x)?;
            Ok(Rational::zero())
        }
    }

    pub fn dist(&self, x: &Point, y: &Point) -> Result<Rational> {
        if x == y {
            return self.self_dist(x);
        }
        Ok(Rational::max_of(&self.weight(x)?, &self.weight(y)?))
    }

    /// The least self-distance over `sample`, with every sampled point
    /// attaining it (in sample order). For a correctly synthesized space the
    /// value is 0, attained exactly by the sampled primary region.
    pub fn min_self_distance(&self, sample: &[Point]) -> Result<(Rational, Vec<Point>)> {
        if sample.is_empty() {
            return Err(Error::InvalidArgument(
                "min_self_distance needs a non-empty sample".into(),
            ));
        }
        let selfd: Vec<Rational> = sample
            .iter()
            .map(|x| self.self_dist(x))
            .collect::<Result<_>>()?;
        let min = selfd.iter().min().expect("sample is non-empty").clone();
        let attained = sample
            .iter()
            .zip(&selfd)
            .filter(|(_, v)| **v == min)
            .map(|(x, _)| x.clone())
            .collect();
        Ok((min, attained))
    }

    /// Materializes the space as a table; requires a finite instance.
    pub fn to_table(&self) -> Result<FiniteTable> {
        finite_table(self.pot.instance(), |x| self.weight(x), |x| self.self_dist(x))
    }
}

fn half() -> Rational {
    Rational::new(1, 2).expect("2 is nonzero")
}

fn finite_table(
    inst: &Instance,
    weight: impl Fn(&Point) -> Result<Rational>,
    self_dist: impl Fn(&Point) -> Result<Rational>,
) -> Result<FiniteTable> {
    let points = inst.enumerate_finite()?;
    let index: BTreeMap<&Point, usize> = points.iter().zip(0..).collect();
    let weights: Vec<Rational> = points.iter().map(&weight).collect::<Result<_>>()?;
    let values: Vec<Vec<Rational>> = points
        .iter()
        .enumerate()
        .map(|(i, x)| {
            (0..points.len())
                .map(|j| {
                    if i == j {
                        self_dist(x)
                    } else {
                        Ok(Rational::max_of(&weights[i], &weights[j]))
                    }
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    let map = points
        .iter()
        .map(|x| {
            let tx = inst.apply(x)?;
            Ok(index[&tx])
        })
        .collect::<Result<Vec<usize>>>()?;
    Ok(FiniteTable {
        points,
        table: TableSpace::new(values, Some(map))?,
    })
}

/// A synthesized space materialized over a finite instance: the table plus
/// the point each row stands for.
#[derive(Clone, Debug)]
pub struct FiniteTable {
    pub points: Vec<Point>,
    pub table: TableSpace,
}

/// An `n x n` table of exact distances with an optional index-wise self-map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableSpace {
    values: Vec<Vec<Rational>>,
    map: Option<Vec<usize>>,
}

impl TableSpace {
    pub fn new(values: Vec<Vec<Rational>>, map: Option<Vec<usize>>) -> Result<Self> {
        let n = values.len();
        for (i, row) in values.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidArgument(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
        }
        if let Some(m) = &map {
            if m.len() != n {
                return Err(Error::InvalidArgument(format!(
                    "map has {} entries, expected {n}",
                    m.len()
                )));
            }
            for (i, &t) in m.iter().enumerate() {
                if t >= n {
                    return Err(Error::InvalidArgument(format!(
                        "map sends {i} to {t}, out of range for size {n}"
                    )));
                }
            }
        }
        Ok(TableSpace { values, map })
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[Vec<Rational>] {
        &self.values
    }

    pub fn map(&self) -> Option<&[usize]> {
        self.map.as_deref()
    }

    pub fn value(&self, i: usize, j: usize) -> Result<&Rational> {
        let n = self.n();
        let row = self.values.get(i).ok_or(Error::IndexOutOfRange { index: i, n })?;
        row.get(j).ok_or(Error::IndexOutOfRange { index: j, n })
    }

    pub fn into_parts(self) -> (Vec<Vec<Rational>>, Option<Vec<usize>>) {
        (self.values, self.map)
    }

    /// Overwrites one entry; handy for corruption experiments.
    pub fn set_value(&mut self, i: usize, j: usize, v: Rational) -> Result<()> {
        let n = self.n();
        let row = self
            .values
            .get_mut(i)
            .ok_or(Error::IndexOutOfRange { index: i, n })?;
        let slot = row.get_mut(j).ok_or(Error::IndexOutOfRange { index: j, n })?;
        *slot = v;
        Ok(())
    }
}

/// The partial metric table for the identity map on `m` points: self-map
/// `i -> i`, pairwise distances read off the synthesis for `m` singleton
/// trees.
pub fn identity_partial_metric(m: usize, alpha: &Rational) -> Result<TableSpace> {
    if m == 0 {
        return Err(Error::InvalidArgument(
            "an identity space needs at least one point".into(),
        ));
    }
    let inst = Instance::new(
        alpha.clone(),
        (0..m)
            .map(|_| crate::space::Component::Tree { parent: vec![0] })
            .collect(),
        crate::space::PointRef { component: 0, node: 0 },
    );
    let pot = Potential::new(std::sync::Arc::new(inst), ValidationMode::MultiFixedPoint)?;
    let space = SynthPartialMetric::new(pot)?;
    Ok(space.to_table()?.table)
}

/// Any space the verifier and the iteration utilities can drive.
#[derive(Clone, Debug)]
pub enum DistanceSpace {
    Metric(SynthMetric),
    PartialMetric(SynthPartialMetric),
    Table(TableSpace),
}

impl DistanceSpace {
    /// `"metric"`, `"partial_metric"`, or `"table"`.
    pub fn kind(&self) -> &'static str {
        match self {
            DistanceSpace::Metric(_) => "metric",
            DistanceSpace::PartialMetric(_) => "partial_metric",
            DistanceSpace::Table(_) => "table",
        }
    }

    pub fn alpha(&self) -> Option<&Rational> {
        match self {
            DistanceSpace::Metric(m) => Some(m.alpha()),
            DistanceSpace::PartialMetric(p) => Some(p.alpha()),
            DistanceSpace::Table(_) => None,
        }
    }

    pub fn instance(&self) -> Option<&Instance> {
        match self {
            DistanceSpace::Metric(m) => Some(m.instance()),
            DistanceSpace::PartialMetric(p) => Some(p.instance()),
            DistanceSpace::Table(_) => None,
        }
    }

    fn addr<'a>(&self, x: &'a SpacePoint) -> Result<&'a Point> {
        match x {
            SpacePoint::Addr(p) => Ok(p),
            SpacePoint::Index(i) => Err(Error::PointKind {
                detail: format!("index #{i} into a synthesized space; use a point address"),
            }),
        }
    }

    fn index(&self, x: &SpacePoint, n: usize) -> Result<usize> {
        match x {
            SpacePoint::Index(i) if *i < n => Ok(*i),
            SpacePoint::Index(i) => Err(Error::IndexOutOfRange { index: *i, n }),
            SpacePoint::Addr(p) => Err(Error::PointKind {
                detail: format!("address {p} into a bare table; use a row index"),
            }),
        }
    }

    pub fn dist(&self, x: &SpacePoint, y: &SpacePoint) -> Result<Rational> {
        match self {
            DistanceSpace::Metric(m) => m.dist(self.addr(x)?, self.addr(y)?),
            DistanceSpace::PartialMetric(p) => p.dist(self.addr(x)?, self.addr(y)?),
            DistanceSpace::Table(t) => {
                let i = self.index(x, t.n())?;
                let j = self.index(y, t.n())?;
                Ok(t.value(i, j)?.clone())
            }
        }
    }

    pub fn self_dist(&self, x: &SpacePoint) -> Result<Rational> {
        self.dist(x, x)
    }

    /// One application of the self-map. Fails with [`Error::NoMap`] on a
    /// table that does not carry one.
    pub fn apply(&self, x: &SpacePoint) -> Result<SpacePoint> {
        match self {
            DistanceSpace::Metric(m) => {
                Ok(SpacePoint::Addr(m.instance().apply(self.addr(x)?)?))
            }
            DistanceSpace::PartialMetric(p) => {
                Ok(SpacePoint::Addr(p.instance().apply(self.addr(x)?)?))
            }
            DistanceSpace::Table(t) => {
                let map = t.map().ok_or(Error::NoMap)?;
                Ok(SpacePoint::Index(map[self.index(x, t.n())?]))
            }
        }
    }

    pub fn has_map(&self) -> bool {
        match self {
            DistanceSpace::Table(t) => t.map().is_some(),
            _ => true,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{Component, Graft, PointRef};
    use num::bigint::BigInt;
    use std::sync::Arc;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn path_metric() -> SynthMetric {
        let inst = Instance::new(
            r("1/2"),
            vec![Component::Tree { parent: vec![0, 0, 1] }],
            PointRef { component: 0, node: 0 },
        );
        let pot = Potential::new(Arc::new(inst), ValidationMode::SingleFixedPoint).unwrap();
        SynthMetric::new(pot).unwrap()
    }

    fn two_tree_pmetric() -> SynthPartialMetric {
        // Designated singleton, one secondary path of depth 1, one chain.
        let inst = Instance::new(
            r("1/2"),
            vec![
                Component::Tree { parent: vec![0] },
                Component::Tree { parent: vec![0, 0] },
                Component::Chain {
                    two_sided: true,
                    grafts: vec![Graft { anchor: BigInt::from(0), parent: vec![0] }],
                },
            ],
            PointRef { component: 0, node: 0 },
        );
        let pot = Potential::new(Arc::new(inst), ValidationMode::MultiFixedPoint).unwrap();
        SynthPartialMetric::new(pot).unwrap()
    }

    #[test]
    fn metric_distances_on_a_path() {
        let m = path_metric();
        let x0 = Point::tree(0, 0);
        let x1 = Point::tree(0, 1);
        let x2 = Point::tree(0, 2);
        assert_eq!(m.dist(&x0, &x0).unwrap(), Rational::zero());
        assert_eq!(m.dist(&x2, &x2).unwrap(), Rational::zero());
        assert_eq!(m.dist(&x1, &x2).unwrap(), r("4"));
        assert_eq!(m.dist(&x0, &x2).unwrap(), r("4"));
        assert_eq!(m.dist(&x0, &x1).unwrap(), r("2"));
        // One step contracts the pair exactly by alpha here.
        let (t1, t2) = (Point::tree(0, 0), Point::tree(0, 1));
        assert_eq!(m.dist(&t1, &t2).unwrap(), r("2"));
    }

    #[test]
    fn metric_requires_single_mode() {
        let inst = Instance::new(
            r("1/2"),
            vec![Component::Tree { parent: vec![0] }],
            PointRef { component: 0, node: 0 },
        );
        let pot = Potential::new(Arc::new(inst), ValidationMode::MultiFixedPoint).unwrap();
        assert!(matches!(
            SynthMetric::new(pot),
            Err(Error::ModeMismatch { .. })
        ));
    }

    #[test]
    fn pmetric_weights_halve_fixed_points_only() {
        let p = two_tree_pmetric();
        let designated = Point::tree(0, 0);
        let a1 = Point::tree(1, 0);
        let u = Point::tree(1, 1);
        // Single secondary root: level 3/4.
        assert_eq!(p.self_dist(&a1).unwrap(), r("3/8"));
        assert_eq!(p.self_dist(&u).unwrap(), r("3/4"));
        assert_eq!(p.self_dist(&designated).unwrap(), Rational::zero());
        assert_eq!(p.dist(&u, &a1).unwrap(), r("3/2"));
        assert_eq!(p.dist(&a1, &designated).unwrap(), r("3/8"));
        assert_eq!(p.dist(&u, &designated).unwrap(), r("3/2"));
        // Chain points sit in the primary region: self-distance 0.
        assert_eq!(p.self_dist(&Point::coord(2, 5)).unwrap(), Rational::zero());
        assert_eq!(p.dist(&Point::coord(2, 0), &designated).unwrap(), r("1"));
    }

    #[test]
    fn min_self_distance_finds_the_primary_region() {
        let p = two_tree_pmetric();
        let sample = vec![
            Point::tree(0, 0),
            Point::tree(1, 0),
            Point::tree(1, 1),
            Point::coord(2, -1),
            Point::coord(2, 3),
            Point::graft(2, 0, 0),
        ];
        let (min, attained) = p.min_self_distance(&sample).unwrap();
        assert_eq!(min, Rational::zero());
        assert_eq!(
            attained,
            vec![
                Point::tree(0, 0),
                Point::coord(2, -1),
                Point::coord(2, 3),
                Point::graft(2, 0, 0),
            ]
        );
        assert!(p.min_self_distance(&[]).is_err());
    }

    #[test]
    fn tables_from_finite_instances() {
        let m = path_metric();
        let ft = m.to_table().unwrap();
        assert_eq!(ft.points.len(), 3);
        let t = &ft.table;
        assert_eq!(t.n(), 3);
        assert_eq!(t.value(0, 0).unwrap(), &Rational::zero());
        assert_eq!(t.value(1, 2).unwrap(), &r("4"));
        assert_eq!(t.value(2, 1).unwrap(), &r("4"));
        assert_eq!(t.map(), Some(&[0usize, 0, 1][..]));
    }

    #[test]
    fn table_shape_is_checked() {
        assert!(TableSpace::new(vec![vec![r("0")], vec![r("0")]], None).is_err());
        assert!(TableSpace::new(vec![vec![r("0")]], Some(vec![1])).is_err());
        assert!(TableSpace::new(vec![vec![r("0")]], Some(vec![0, 0])).is_err());
        let t = TableSpace::new(vec![vec![r("0")]], Some(vec![0])).unwrap();
        assert_eq!(t.n(), 1);
    }

    #[test]
    fn identity_table_matches_known_values() {
        let t = identity_partial_metric(3, &r("1/2")).unwrap();
        assert_eq!(t.n(), 3);
        // Self-distances 0, 1/3, 5/12; off-diagonal entries are maxima of
        // the halved levels.
        assert_eq!(t.value(0, 0).unwrap(), &Rational::zero());
        assert_eq!(t.value(1, 1).unwrap(), &r("1/3"));
        assert_eq!(t.value(2, 2).unwrap(), &r("5/12"));
        assert_eq!(t.value(1, 2).unwrap(), &r("5/12"));
        assert_eq!(t.value(0, 1).unwrap(), &r("1/3"));
        assert_eq!(t.value(0, 2).unwrap(), &r("5/12"));
        assert_eq!(t.map(), Some(&[0usize, 1, 2][..]));
        assert!(identity_partial_metric(0, &r("1/2")).is_err());
        assert!(identity_partial_metric(2, &r("3/2")).is_err());
    }

    #[test]
    fn distance_space_dispatch_and_point_kinds() {
        let p = two_tree_pmetric();
        let space = DistanceSpace::PartialMetric(p);
        let a1: SpacePoint = Point::tree(1, 0).into();
        let u: SpacePoint = Point::tree(1, 1).into();
        assert_eq!(space.dist(&u, &a1).unwrap(), r("3/2"));
        assert_eq!(space.apply(&u).unwrap(), a1);
        assert!(space.dist(&SpacePoint::Index(0), &a1).is_err());

        let table = identity_partial_metric(2, &r("1/2")).unwrap();
        let space = DistanceSpace::Table(table);
        assert_eq!(
            space.dist(&SpacePoint::Index(0), &SpacePoint::Index(1)).unwrap(),
            r("3/8")
        );
        assert_eq!(
            space.apply(&SpacePoint::Index(1)).unwrap(),
            SpacePoint::Index(1)
        );
        assert!(space.dist(&a1, &SpacePoint::Index(0)).is_err());
        assert!(space.dist(&SpacePoint::Index(5), &SpacePoint::Index(0)).is_err());

        let mapless = DistanceSpace::Table(
            TableSpace::new(vec![vec![Rational::zero()]], None).unwrap(),
        );
        assert!(!mapless.has_map());
        assert!(matches!(
            mapless.apply(&SpacePoint::Index(0)),
            Err(Error::NoMap)
        ));
    }

    #[test]
    fn space_point_json_forms() {
        let a: SpacePoint = Point::coord(1, -4).into();
        let i = SpacePoint::Index(7);
        let ja = serde_json::to_string(&a).unwrap();
        let ji = serde_json::to_string(&i).unwrap();
        assert_eq!(ji, r#"{"index":7}"#);
        assert!(ja.contains("\"coord\":-4"));
        assert_eq!(serde_json::from_str::<SpacePoint>(&ja).unwrap(), a);
        assert_eq!(serde_json::from_str::<SpacePoint>(&ji).unwrap(), i);
    }
}
