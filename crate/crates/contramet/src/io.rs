//! On-disk formats and loading helpers.
//!
//! Two JSON shapes describe a synthesized space:
//!
//! * **table** — a finite space given extensionally: the value matrix `p`,
//!   the map `T` as an index array when present, and optionally the named
//!   points each index stands for. A bare object with just `n`/`p`/`T`
//!   keys (no `form` tag) is accepted as a table too, so matrices produced
//!   by other tools can be checked directly.
//! * **params** — a countable space given intensionally: the instance it
//!   was synthesized from plus the regime, from which the distance
//!   function is reconstructed on load.
//!
//! Loading returns a [`LoadedSpace`] wrapping a [`DistanceSpace`], ready
//! for verification or iteration regardless of which shape it came from.

use std::fmt;
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics::{DistanceSpace, FiniteTable, SynthMetric, SynthPartialMetric, TableSpace};
use crate::potential::Potential;
use crate::rational::Rational;
use crate::space::{Instance, Point, ValidationMode};

/// Which family of axioms a space is meant to satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpaceKind {
    Metric,
    PartialMetric,
}

impl fmt::Display for SpaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceKind::Metric => write!(f, "metric"),
            SpaceKind::PartialMetric => write!(f, "partial_metric"),
        }
    }
}

/// Serialized form of a synthesized space.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum SpaceFile {
    Table {
        kind: SpaceKind,
        #[serde(skip_serializing_if = "Option::is_none")]
        alpha: Option<Rational>,
        n: usize,
        p: Vec<Vec<Rational>>,
        #[serde(rename = "T", skip_serializing_if = "Option::is_none")]
        map: Option<Vec<usize>>,
        #[serde(skip_serializing_if = "Option::is_none")]
        points: Option<Vec<Point>>,
    },
    Params {
        kind: SpaceKind,
        instance: Instance,
    },
}

/// An untagged table, as other tools tend to write them.
#[derive(Deserialize)]
struct BareTable {
    n: usize,
    p: Vec<Vec<Rational>>,
    #[serde(rename = "T", default)]
    map: Option<Vec<usize>>,
    #[serde(default)]
    points: Option<Vec<Point>>,
    #[serde(default)]
    kind: Option<SpaceKind>,
    #[serde(default)]
    alpha: Option<Rational>,
}

/// A space reconstructed from a [`SpaceFile`].
#[derive(Debug)]
pub struct LoadedSpace {
    pub space: DistanceSpace,
    pub kind: SpaceKind,
    /// Contraction factor carried by the file, when it has one.
    pub alpha: Option<Rational>,
    /// Names for the table indices, when the file carried them.
    pub points: Option<Vec<Point>>,
}

impl SpaceFile {
    /// Captures a finite synthesized space extensionally.
    pub fn from_table(kind: SpaceKind, alpha: Rational, ft: FiniteTable) -> Self {
        let (values, map) = ft.table.into_parts();
        SpaceFile::Table {
            kind,
            alpha: Some(alpha),
            n: values.len(),
            p: values,
            map,
            points: Some(ft.points),
        }
    }

    /// Captures a countable synthesized space intensionally.
    pub fn from_instance(kind: SpaceKind, instance: Instance) -> Self {
        SpaceFile::Params { kind, instance }
    }

    /// Rebuilds the distance space this file describes.
    pub fn load(self) -> Result<LoadedSpace> {
        match self {
            SpaceFile::Table { kind, alpha, n, p, map, points } => {
                if p.len() != n || p.iter().any(|row| row.len() != n) {
                    return Err(Error::InvalidArgument(format!("matrix is not {n} x {n}")));
                }
                if let Some(pts) = &points {
                    if pts.len() != n {
                        return Err(Error::InvalidArgument(format!(
                            "{} point names for {n} indices",
                            pts.len()
                        )));
                    }
                }
                let table = TableSpace::new(p, map)?;
                Ok(LoadedSpace { space: DistanceSpace::Table(table), kind, alpha, points })
            }
            SpaceFile::Params { kind, instance } => {
                let alpha = instance.alpha().clone();
                let inst = Arc::new(instance);
                let space = match kind {
                    SpaceKind::Metric => {
                        let pot = Potential::new(inst, ValidationMode::SingleFixedPoint)?;
                        DistanceSpace::Metric(SynthMetric::new(pot)?)
                    }
                    SpaceKind::PartialMetric => {
                        let pot = Potential::new(inst, ValidationMode::MultiFixedPoint)?;
                        DistanceSpace::PartialMetric(SynthPartialMetric::new(pot)?)
                    }
                };
                Ok(LoadedSpace { space, kind, alpha: Some(alpha), points: None })
            }
        }
    }
}

/// Pairs a mapless table with an instance whose finite points supply the
/// map, index-aligned with the instance's canonical enumeration.
pub fn attach_map(table: &TableSpace, inst: &Instance) -> Result<TableSpace> {
    let points = inst.enumerate_finite()?;
    if points.len() != table.n() {
        return Err(Error::InvalidArgument(format!(
            "instance has {} finite points but the table has {} rows",
            points.len(),
            table.n()
        )));
    }
    let index: std::collections::BTreeMap<&Point, usize> =
        points.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let map = points
        .iter()
        .map(|p| {
            let image = inst.apply(p)?;
            index.get(&image).copied().ok_or_else(|| {
                Error::InvalidArgument(format!("image {image} of {p} is not a finite point"))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    TableSpace::new(table.values().to_vec(), Some(map))
}

/// Parses a [`SpaceFile`] leniently: the tagged forms first, then a bare
/// `{"n", "p", "T"}` table, which defaults to partial-metric axioms unless
/// it says otherwise.
pub fn parse_space(text: &str) -> std::result::Result<SpaceFile, ParseError> {
    match serde_json::from_str::<SpaceFile>(text) {
        Ok(file) => Ok(file),
        Err(tagged_err) => match serde_json::from_str::<BareTable>(text) {
            Ok(bare) => Ok(SpaceFile::Table {
                kind: bare.kind.unwrap_or(SpaceKind::PartialMetric),
                alpha: bare.alpha,
                n: bare.n,
                p: bare.p,
                map: bare.map,
                points: bare.points,
            }),
            Err(_) => Err(ParseError::from_json("space", &tagged_err)),
        },
    }
}

/// A diagnostic for unreadable input: what failed, and where in the text
/// when that is known.
#[derive(Debug, thiserror::Error)]
pub enum ParseError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid {what} at line {line}, column {column}: {message}")]
    Json { what: String, line: usize, column: usize, message: String },
}

impl ParseError {
    pub fn from_json(what: &str, err: &serde_json::Error) -> Self {
        ParseError::Json {
            what: what.into(),
            line: err.line(),
            column: err.column(),
            message: err.to_string(),
        }
    }
}

/// Reads a whole input: a path, or stdin when `path` is `None` or `"-"`.
pub fn read_input(path: Option<&str>) -> std::result::Result<String, ParseError> {
    use std::io::Read;
    match path {
        None | Some("-") => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|source| ParseError::Io { path: "<stdin>".into(), source })?;
            Ok(buf)
        }
        Some(p) => std::fs::read_to_string(p)
            .map_err(|source| ParseError::Io { path: p.into(), source }),
    }
}

/// Parses JSON with positioned diagnostics; `what` names the expected
/// content for the error message.
pub fn parse_json<T: DeserializeOwned>(what: &str, text: &str) -> std::result::Result<T, ParseError> {
    serde_json::from_str(text).map_err(|e| ParseError::from_json(what, &e))
}

/// Writes `text` to a path, or stdout when `path` is `None` or `"-"`.
pub fn write_output(path: Option<&str>, text: &str) -> std::result::Result<(), ParseError> {
    use std::io::Write;
    match path {
        None | Some("-") => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|source| ParseError::Io { path: "<stdout>".into(), source }),
        Some(p) => std::fs::write(p, text)
            .map_err(|source| ParseError::Io { path: p.into(), source }),
    }
}

/// Serializes any value as pretty JSON with a trailing newline.
pub fn to_pretty_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("serialization cannot fail");
    text.push('\n');
    text
}
