//! Points, labels, datasets, and index sets.
//!
//! All coordinates are exact rationals. A [`LabeledDataset`] is the shared
//! universe every other module indexes into; subsets of it are passed
//! around as [`IndexSet`]s so that outputs stay small, canonical, and
//! comparable.

use crate::rational::{parse_rational, rational_to_string, ParseRationalError};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;
use thiserror::Error;

/// A point with exact rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    coords: Vec<BigRational>,
}

impl Point {
    /// Wraps a coordinate vector.
    pub fn new(coords: Vec<BigRational>) -> Self {
        Point { coords }
    }

    /// Builds a point from integer coordinates.
    pub fn from_ints(coords: &[i64]) -> Self {
        Point::new(coords.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    /// Parses a point from coordinate literals such as `["2.4", "1/3"]`.
    pub fn parse(coords: &[&str]) -> Result<Self, ParseRationalError> {
        Ok(Point::new(coords.iter().map(|s| parse_rational(s)).collect::<Result<_, _>>()?))
    }

    /// Number of coordinates.
    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// The exact coordinates.
    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    /// Exact dot product with another point of the same dimension.
    pub fn dot(&self, other: &Point) -> BigRational {
        debug_assert_eq!(self.dim(), other.dim());
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a * b)
            .sum()
    }

    /// Coordinates converted to `f64` (nearest double).
    pub fn to_f64(&self) -> Vec<f64> {
        self.coords
            .iter()
            .map(|c| c.to_f64().expect("rational convertible to f64"))
            .collect()
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", rational_to_string(c))?;
        }
        write!(f, ")")
    }
}

/// A binary label: positive (+1) or negative (-1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Label {
    Plus,
    Minus,
}

impl Label {
    /// The conventional integer encoding: +1 or -1.
    pub fn as_i8(self) -> i8 {
        match self {
            Label::Plus => 1,
            Label::Minus => -1,
        }
    }

    /// The label as a float sign, +1.0 or -1.0.
    pub fn as_f64(self) -> f64 {
        self.as_i8() as f64
    }

    /// Parses the integer encoding.
    pub fn from_i8(v: i8) -> Option<Label> {
        match v {
            1 => Some(Label::Plus),
            -1 => Some(Label::Minus),
            _ => None,
        }
    }

    /// The opposite label.
    pub fn flip(self) -> Label {
        match self {
            Label::Plus => Label::Minus,
            Label::Minus => Label::Plus,
        }
    }
}

impl Serialize for Label {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_i8(self.as_i8())
    }
}

impl<'de> Deserialize<'de> for Label {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = i8::deserialize(d)?;
        Label::from_i8(v).ok_or_else(|| serde::de::Error::custom("label must be 1 or -1"))
    }
}

/// A sorted, duplicate-free set of indices into a dataset.
///
/// Serializes as a sorted JSON array, which makes set-valued outputs
/// canonical: equal sets produce byte-identical encodings.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IndexSet {
    indices: BTreeSet<usize>,
}

impl IndexSet {
    /// The empty set.
    pub fn new() -> Self {
        IndexSet::default()
    }

    /// Builds a set from any iterator of indices (duplicates collapse).
    pub fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        IndexSet {
            indices: iter.into_iter().collect(),
        }
    }

    /// The full set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        IndexSet::from_iter(0..n)
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.contains(&i)
    }

    pub fn insert(&mut self, i: usize) {
        self.indices.insert(i);
    }

    pub fn remove(&mut self, i: usize) {
        self.indices.remove(&i);
    }

    /// Iterates indices in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.indices.iter().copied()
    }

    /// Set union.
    pub fn union(&self, other: &IndexSet) -> IndexSet {
        IndexSet {
            indices: self.indices.union(&other.indices).copied().collect(),
        }
    }

    /// Set difference `self \ other`.
    pub fn difference(&self, other: &IndexSet) -> IndexSet {
        IndexSet {
            indices: self.indices.difference(&other.indices).copied().collect(),
        }
    }

    /// Set intersection.
    pub fn intersection(&self, other: &IndexSet) -> IndexSet {
        IndexSet {
            indices: self.indices.intersection(&other.indices).copied().collect(),
        }
    }

    /// True if every element of `self` is in `other`.
    pub fn is_subset(&self, other: &IndexSet) -> bool {
        self.indices.is_subset(&other.indices)
    }

    /// Complement within the universe `{0, .., n-1}`.
    pub fn complement(&self, n: usize) -> IndexSet {
        IndexSet::from_iter((0..n).filter(|i| !self.contains(*i)))
    }

    /// The indices as a sorted vector.
    pub fn to_vec(&self) -> Vec<usize> {
        self.indices.iter().copied().collect()
    }
}

impl FromIterator<usize> for IndexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        IndexSet::from_iter(iter)
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

/// Error constructing or loading a dataset.
#[derive(Debug, Error)]
pub enum DatasetError {
    #[error("dataset has {points} points but {labels} labels")]
    LengthMismatch { points: usize, labels: usize },
    #[error("point {index} has dimension {got}, expected {expected}")]
    DimensionMismatch {
        index: usize,
        got: usize,
        expected: usize,
    },
    #[error("points {first} and {second} coincide but carry opposite labels")]
    ConflictingDuplicate { first: usize, second: usize },
    #[error("invalid coordinate: {0}")]
    BadCoordinate(#[from] ParseRationalError),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed dataset file: {0}")]
    Json(#[from] serde_json::Error),
}

/// A finite universe of labeled points.
///
/// Construction enforces uniform dimension, matching lengths, and the
/// absence of coincident points with opposite labels (such a dataset is
/// trivially inseparable and almost always indicates an input error).
/// Coincident points with *equal* labels are allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledDataset {
    points: Vec<Point>,
    labels: Vec<Label>,
    dim: usize,
}

/// On-disk JSON schema: coordinates as exact literals, labels as +1/-1.
#[derive(Serialize, Deserialize)]
struct DatasetFile {
    dim: usize,
    points: Vec<Vec<String>>,
    labels: Vec<Label>,
}

impl LabeledDataset {
    /// Builds a dataset, validating the structural invariants.
    pub fn new(points: Vec<Point>, labels: Vec<Label>) -> Result<Self, DatasetError> {
        if points.len() != labels.len() {
            return Err(DatasetError::LengthMismatch {
                points: points.len(),
                labels: labels.len(),
            });
        }
        let dim = points.first().map_or(0, Point::dim);
        for (i, p) in points.iter().enumerate() {
            if p.dim() != dim {
                return Err(DatasetError::DimensionMismatch {
                    index: i,
                    got: p.dim(),
                    expected: dim,
                });
            }
        }
        // Detect coincident points with opposite labels via a sorted sweep.
        let mut order: Vec<usize> = (0..points.len()).collect();
        order.sort_by(|&a, &b| points[a].cmp(&points[b]).then(a.cmp(&b)));
        for w in order.windows(2) {
            let (a, b) = (w[0], w[1]);
            if points[a] == points[b] && labels[a] != labels[b] {
                return Err(DatasetError::ConflictingDuplicate { first: a, second: b });
            }
        }
        Ok(LabeledDataset { points, labels, dim })
    }

    /// Builds a dataset from coordinate literals and +1/-1 labels.
    pub fn parse(points: &[&[&str]], labels: &[i8]) -> Result<Self, DatasetError> {
        let pts = points
            .iter()
            .map(|c| Point::parse(c))
            .collect::<Result<Vec<_>, _>>()?;
        let labs = labels
            .iter()
            .map(|&v| Label::from_i8(v).expect("labels must be 1 or -1"))
            .collect();
        LabeledDataset::new(pts, labs)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Coordinate dimension (0 for an empty dataset).
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn point(&self, i: usize) -> &Point {
        &self.points[i]
    }

    pub fn label(&self, i: usize) -> Label {
        self.labels[i]
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    /// Indices of all positive points, sorted.
    pub fn positives(&self) -> IndexSet {
        IndexSet::from_iter(
            (0..self.len()).filter(|&i| self.labels[i] == Label::Plus),
        )
    }

    /// Indices of all negative points, sorted.
    pub fn negatives(&self) -> IndexSet {
        IndexSet::from_iter(
            (0..self.len()).filter(|&i| self.labels[i] == Label::Minus),
        )
    }

    /// The points selected by an index set, in index order.
    pub fn select(&self, set: &IndexSet) -> Vec<Point> {
        set.iter().map(|i| self.points[i].clone()).collect()
    }

    /// A copy with the same points and the given labels.
    pub fn relabeled(&self, labels: Vec<Label>) -> Result<Self, DatasetError> {
        LabeledDataset::new(self.points.clone(), labels)
    }

    /// The sub-dataset at the given indices (in index order).
    pub fn subset(&self, set: &IndexSet) -> Result<Self, DatasetError> {
        let pts = self.select(set);
        let labs = set.iter().map(|i| self.labels[i]).collect();
        LabeledDataset::new(pts, labs)
    }

    /// Reads the JSON dataset schema from a file.
    pub fn load(path: &Path) -> Result<Self, DatasetError> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text)
    }

    /// Parses the JSON dataset schema.
    pub fn from_json(text: &str) -> Result<Self, DatasetError> {
        let file: DatasetFile = serde_json::from_str(text)?;
        let points = file
            .points
            .iter()
            .map(|coords| {
                Ok(Point::new(
                    coords
                        .iter()
                        .map(|s| parse_rational(s))
                        .collect::<Result<Vec<_>, _>>()?,
                ))
            })
            .collect::<Result<Vec<_>, DatasetError>>()?;
        let ds = LabeledDataset::new(points, file.labels)?;
        if !ds.is_empty() && ds.dim() != file.dim {
            return Err(DatasetError::DimensionMismatch {
                index: 0,
                got: ds.dim(),
                expected: file.dim,
            });
        }
        Ok(ds)
    }

    /// Serializes to the JSON dataset schema (pretty-printed, trailing newline).
    pub fn to_json(&self) -> String {
        let file = DatasetFile {
            dim: self.dim(),
            points: self
                .points
                .iter()
                .map(|p| p.coords().iter().map(rational_to_string).collect())
                .collect(),
            labels: self.labels.clone(),
        };
        let mut s = serde_json::to_string_pretty(&file).expect("dataset serializes");
        s.push('\n');
        s
    }

    /// Writes the JSON dataset schema to a file.
    pub fn save(&self, path: &Path) -> Result<(), DatasetError> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }
}
