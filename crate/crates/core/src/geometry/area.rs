use std::fmt;

use super::{Cube, GeometryError, Permutation};
use crate::Exec;

/// A cubical area of `[0,∞[ᴺ` in canonical form.
///
/// The cube list is exactly the set of maximal cubes of the area, sorted.
/// Two areas are therefore equal as sets of points iff they are equal as
/// values. Dimension 0 has the unit `{ε}` (one empty cube); at any
/// dimension, no cubes at all is the empty area.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Area {
    dim: usize,
    cubes: Vec<Cube>,
}

impl Area {
    /// The neutral element of the product: dimension 0, `{ε}`.
    pub fn unit() -> Self {
        Area { dim: 0, cubes: vec![Cube::full(0)] }
    }

    pub fn empty(dim: usize) -> Self {
        Area { dim, cubes: Vec::new() }
    }

    /// `[0,∞[ᴺ`
    pub fn full(dim: usize) -> Self {
        Area { dim, cubes: vec![Cube::full(dim)] }
    }

    /// `[0,∞[ᴺ` minus the union of `forbidden`, as its maximal cubes.
    pub fn complement_of(dim: usize, forbidden: &[Cube]) -> Result<Self, GeometryError> {
        Self::complement_of_with(dim, forbidden, Exec::default())
    }

    /// Slab distribution: the complement of one cube is the union of its
    /// (at most `2N`) slabs, and the maximal cubes of an intersection of
    /// unions are the maximal pairwise intersections of maximal cubes. The
    /// running antichain is pruned after every forbidden cube.
    pub fn complement_of_with(dim: usize, forbidden: &[Cube], exec: Exec) -> Result<Self, GeometryError> {
        for c in forbidden {
            if c.dim() != dim {
                return Err(GeometryError::DimensionMismatch { expected: dim, found: c.dim() });
            }
        }
        // Removing a cube already covered by another removed cube is a no-op.
        let forbidden = maximal_antichain(forbidden.to_vec(), exec);

        let mut current = vec![Cube::full(dim)];
        for hole in &forbidden {
            let slabs = hole.complement_slabs();
            let (hit, untouched): (Vec<Cube>, Vec<Cube>) = current.into_iter().partition(|c| c.meets(hole));
            if hit.is_empty() {
                current = untouched;
                continue;
            }
            // Pieces of a hit cube lie inside it, so they never dominate an
            // untouched cube; only the pieces need pruning.
            let mut pieces = exec.flat_map(&hit, |c| slabs.iter().filter_map(|s| c.meet(s)).collect::<Vec<_>>());
            pieces.sort_unstable();
            pieces.dedup();
            let pieces = {
                let all = &pieces;
                let untouched = &untouched;
                exec.filter(pieces.clone(), |p| {
                    !untouched.iter().any(|u| u.covers(p)) && !all.iter().any(|q| q != p && q.covers(p))
                })
            };
            current = untouched;
            current.extend(pieces);
        }
        current.sort_unstable();
        Ok(Area { dim, cubes: current })
    }

    /// Canonical form of the union of an arbitrary cover, computed as the
    /// complement of its complement.
    pub fn from_cover(dim: usize, cover: Vec<Cube>) -> Result<Self, GeometryError> {
        Self::from_cover_with(dim, cover, Exec::default())
    }

    pub fn from_cover_with(dim: usize, cover: Vec<Cube>, exec: Exec) -> Result<Self, GeometryError> {
        let outside = Self::complement_of_with(dim, &cover, exec)?;
        Self::complement_of_with(dim, &outside.cubes, exec)
    }

    /// Wraps cubes already known to be the maximal cubes of their union.
    pub(crate) fn from_maximal(dim: usize, mut cubes: Vec<Cube>) -> Self {
        cubes.sort_unstable();
        cubes.dedup();
        debug_assert!(cubes.iter().all(|c| c.dim() == dim));
        Area { dim, cubes }
    }

    /// Re-runs normalization on this area's own cube list.
    pub fn recanonicalize(&self) -> Self {
        Self::from_cover(self.dim, self.cubes.clone()).expect("cubes share the area's dimension")
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn cubes(&self) -> &[Cube] {
        &self.cubes
    }

    pub fn len(&self) -> usize {
        self.cubes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cubes.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.dim == 0 && !self.cubes.is_empty()
    }

    pub fn contains_point(&self, point: &[u32]) -> bool {
        self.cubes.iter().any(|c| c.contains_point(point))
    }

    pub fn max_finite_endpoint(&self) -> u32 {
        self.cubes.iter().map(Cube::max_finite_endpoint).max().unwrap_or(0)
    }

    /// Cartesian product. Pairwise concatenations of maximal cubes are the
    /// maximal cubes of the product, so only re-sorting is needed.
    pub fn product(&self, other: &Area) -> Area {
        let cubes = self.cubes.iter().flat_map(|a| other.cubes.iter().map(move |b| a.concat(b))).collect();
        Area::from_maximal(self.dim + other.dim, cubes)
    }

    /// `σ·X`: coordinate `k` of each result cube is coordinate `σ(k)` of the
    /// original.
    pub fn permute(&self, sigma: &Permutation) -> Result<Area, GeometryError> {
        if sigma.len() != self.dim {
            return Err(GeometryError::PermutationSize { permutation: sigma.len(), dimension: self.dim });
        }
        let cubes = self.cubes.iter().map(|c| c.select(sigma.images0())).collect();
        Ok(Area::from_maximal(self.dim, cubes))
    }

    /// Parses a listing in the [`Display`](fmt::Display) format: one cube per
    /// line, optionally prefixed by `||`. The cubes are normalized.
    pub fn parse_listing(dim: usize, text: &str) -> Result<Area, GeometryError> {
        let cubes = text
            .lines()
            .map(|l| l.trim().trim_start_matches("||").trim())
            .filter(|l| !l.is_empty())
            .map(str::parse)
            .collect::<Result<Vec<Cube>, _>>()?;
        Area::from_cover(dim, cubes)
    }
}

/// Sorts, dedupes and drops every cube contained in another one.
pub(crate) fn maximal_antichain(mut cubes: Vec<Cube>, exec: Exec) -> Vec<Cube> {
    cubes.sort_unstable();
    cubes.dedup();
    let all = &cubes;
    exec.filter(cubes.clone(), |c| !all.iter().any(|d| d != c && d.covers(c)))
}

impl fmt::Display for Area {
    /// One cube per line, continuation lines prefixed by `|| `.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.cubes.iter().enumerate() {
            let prefix = if k == 0 { "   " } else { "|| " };
            writeln!(f, "{prefix}{c}")?;
        }
        Ok(())
    }
}
