//! Half-open intervals, cubes and canonical cubical areas.

mod area;
mod cube;
mod interval;
mod permutation;

pub use area::Area;
pub(crate) use area::maximal_antichain;
pub use cube::Cube;
pub use interval::{Bound, Interval};
pub use permutation::Permutation;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("empty interval [{lo},{}[", .hi.map_or("-".to_string(), |h| h.to_string()))]
    EmptyInterval { lo: u32, hi: Option<u32> },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("{0:?} is not a permutation")]
    NotAPermutation(Vec<usize>),
    #[error("permutation of size {permutation} applied to dimension {dimension}")]
    PermutationSize { permutation: usize, dimension: usize },
    #[error("cannot parse {0:?}")]
    Syntax(String),
}
