use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::GeometryError;

/// Upper endpoint of an interval: a natural number or `∞`.
///
/// The derived order puts `Infinite` after every finite value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Bound {
    Finite(u32),
    Infinite,
}

impl Bound {
    pub fn finite(self) -> Option<u32> {
        match self {
            Bound::Finite(v) => Some(v),
            Bound::Infinite => None,
        }
    }

    fn exceeds(self, value: u32) -> bool {
        match self {
            Bound::Finite(v) => v > value,
            Bound::Infinite => true,
        }
    }
}

impl From<Option<u32>> for Bound {
    fn from(value: Option<u32>) -> Self {
        value.map_or(Bound::Infinite, Bound::Finite)
    }
}

/// Non-empty half-open interval `[lo, hi[` of the non-negative line.
///
/// Serialized as the pair `[lo, hi]` with `null` standing for `∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "(u32, Option<u32>)", into = "(u32, Option<u32>)")]
pub struct Interval {
    lo: u32,
    hi: Bound,
}

impl Interval {
    pub fn new(lo: u32, hi: Bound) -> Result<Self, GeometryError> {
        if hi.exceeds(lo) {
            Ok(Interval { lo, hi })
        } else {
            Err(GeometryError::EmptyInterval { lo, hi: hi.finite() })
        }
    }

    /// `[lo, hi[`, panicking when `lo >= hi`.
    pub fn finite(lo: u32, hi: u32) -> Self {
        Self::new(lo, Bound::Finite(hi)).expect("empty interval")
    }

    /// `[lo, ∞[`
    pub const fn from(lo: u32) -> Self {
        Interval { lo, hi: Bound::Infinite }
    }

    /// `[0, ∞[`
    pub const fn full() -> Self {
        Self::from(0)
    }

    pub fn lo(&self) -> u32 {
        self.lo
    }

    pub fn hi(&self) -> Bound {
        self.hi
    }

    pub fn is_full(&self) -> bool {
        self.lo == 0 && self.hi == Bound::Infinite
    }

    /// `[max lo, min hi[`, or `None` when that is empty.
    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        hi.exceeds(lo).then_some(Interval { lo, hi })
    }

    pub fn contains(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn contains_point(&self, t: u32) -> bool {
        self.lo <= t && self.hi.exceeds(t)
    }

    /// The part of `[0,∞[` below this interval, if any.
    pub(crate) fn below(&self) -> Option<Interval> {
        (self.lo > 0).then(|| Interval::finite(0, self.lo))
    }

    /// The part of `[0,∞[` above this interval, if any.
    pub(crate) fn above(&self) -> Option<Interval> {
        self.hi.finite().map(Interval::from)
    }
}

impl TryFrom<(u32, Option<u32>)> for Interval {
    type Error = GeometryError;

    fn try_from((lo, hi): (u32, Option<u32>)) -> Result<Self, Self::Error> {
        Interval::new(lo, hi.into())
    }
}

impl From<Interval> for (u32, Option<u32>) {
    fn from(i: Interval) -> Self {
        (i.lo, i.hi.finite())
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.hi {
            Bound::Finite(hi) => write!(f, "[{},{}[", self.lo, hi),
            Bound::Infinite => write!(f, "[{},-[", self.lo),
        }
    }
}

impl FromStr for Interval {
    type Err = GeometryError;

    /// Parses `[a,b[` or `[a,-[`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || GeometryError::Syntax(s.to_string());
        let body = s
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix('['))
            .ok_or_else(bad)?;
        let (lo, hi) = body.split_once(',').ok_or_else(bad)?;
        let lo = lo.trim().parse().map_err(|_| bad())?;
        let hi = match hi.trim() {
            "-" => Bound::Infinite,
            v => Bound::Finite(v.parse().map_err(|_| bad())?),
        };
        Interval::new(lo, hi)
    }
}
