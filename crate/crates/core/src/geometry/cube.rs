use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{GeometryError, Interval};

/// A hyperrectangle: one non-empty interval per coordinate.
///
/// Cubes order lexicographically on `(lo₁, hi₁, lo₂, hi₂, …)`, which is the
/// canonical order of cubes inside an [`Area`](super::Area).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Cube(Vec<Interval>);

impl Cube {
    pub fn new(intervals: Vec<Interval>) -> Self {
        Cube(intervals)
    }

    /// `[0,∞[ᴺ`
    pub fn full(dim: usize) -> Self {
        Cube(vec![Interval::full(); dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.0
    }

    /// Whether `inner` is a subset of `self`.
    pub fn contains(&self, inner: &Cube) -> Result<bool, GeometryError> {
        check_dim(self.dim(), inner.dim())?;
        Ok(self.covers(inner))
    }

    pub(crate) fn covers(&self, inner: &Cube) -> bool {
        self.0.iter().zip(&inner.0).all(|(o, i)| o.contains(i))
    }

    pub fn intersect(&self, other: &Cube) -> Result<Option<Cube>, GeometryError> {
        check_dim(self.dim(), other.dim())?;
        Ok(self.meet(other))
    }

    pub(crate) fn meet(&self, other: &Cube) -> Option<Cube> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.intersect(b))
            .collect::<Option<Vec<_>>>()
            .map(Cube)
    }

    pub(crate) fn meets(&self, other: &Cube) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a.intersect(b).is_some())
    }

    pub fn contains_point(&self, point: &[u32]) -> bool {
        self.0.len() == point.len() && self.0.iter().zip(point).all(|(i, &t)| i.contains_point(t))
    }

    /// Word concatenation: the cube `self × other`.
    pub fn concat(&self, other: &Cube) -> Cube {
        let mut v = Vec::with_capacity(self.dim() + other.dim());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Cube(v)
    }

    /// Keeps the coordinates listed in `coords` (0-based), in that order.
    pub(crate) fn select(&self, coords: &[usize]) -> Cube {
        Cube(coords.iter().map(|&k| self.0[k]).collect())
    }

    /// The maximal cubes of the complement of `self` in `[0,∞[ᴺ`: for each
    /// coordinate, the slab below and the slab above the interval.
    pub(crate) fn complement_slabs(&self) -> Vec<Cube> {
        let mut slabs = Vec::with_capacity(2 * self.dim());
        for (k, iv) in self.0.iter().enumerate() {
            for part in [iv.below(), iv.above()].into_iter().flatten() {
                let mut slab = Cube::full(self.dim());
                slab.0[k] = part;
                slabs.push(slab);
            }
        }
        slabs
    }

    /// Largest finite endpoint, 0 if there is none.
    pub fn max_finite_endpoint(&self) -> u32 {
        self.0
            .iter()
            .map(|i| i.hi().finite().unwrap_or(0).max(i.lo()))
            .max()
            .unwrap_or(0)
    }
}

fn check_dim(expected: usize, found: usize) -> Result<(), GeometryError> {
    if expected == found {
        Ok(())
    } else {
        Err(GeometryError::DimensionMismatch { expected, found })
    }
}

impl From<Vec<Interval>> for Cube {
    fn from(v: Vec<Interval>) -> Self {
        Cube(v)
    }
}

impl fmt::Display for Cube {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, iv) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            write!(f, "{iv}")?;
        }
        Ok(())
    }
}

impl FromStr for Cube {
    type Err = GeometryError;

    /// Parses `*`-joined intervals, e.g. `[0,1[*[4,-[`. The empty string is
    /// the 0-dimensional cube.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Cube(Vec::new()));
        }
        s.split('*').map(str::parse).collect::<Result<_, _>>().map(Cube)
    }
}
