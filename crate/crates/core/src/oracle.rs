//! Brute-force reference implementations on an integer grid.
//!
//! Every area handled here has integer endpoints, so it is constant on the
//! cells `[k, k+1[` (`k < L`) and `[L, ∞[` once `L` exceeds every finite
//! endpoint. Deciding membership cell by cell is therefore exact. The
//! functions in this module only use point membership and never call the
//! normalization or factorization code they are meant to check.

use thiserror::Error;

use crate::geometry::{Area, Cube, Interval};
use crate::pv::{Op, Program};
use crate::Exec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("grid bound {bound} is too small, need at least {needed}")]
    BoundTooSmall { bound: u32, needed: u32 },
    #[error("coordinate set must be a non-empty proper subset of 1..={0}")]
    TrivialIndexSet(usize),
    #[error("coordinate {index} is outside 1..={dimension}")]
    IndexOutOfRange { index: usize, dimension: usize },
}

/// Membership of every cell of `{0..=L}ᴺ`, row-major with coordinate 1 most
/// significant. Cell value `k < L` stands for `[k, k+1[`, value `L` for
/// `[L, ∞[`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridRegion {
    dim: usize,
    bound: u32,
    cells: Vec<bool>,
}

impl GridRegion {
    pub fn from_fn<F>(dim: usize, bound: u32, exec: Exec, member: F) -> Self
    where
        F: Fn(&[u32]) -> bool + Sync + Send,
    {
        let side = bound as usize + 1;
        let total = side.pow(dim as u32);
        let cells = exec.map_range(total, |index| member(&decode(index, dim, side)));
        GridRegion { dim, bound, cells }
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn count_members(&self) -> usize {
        self.cells.iter().filter(|&&m| m).count()
    }

    pub fn contains(&self, cell: &[u32]) -> bool {
        self.cells[encode(cell, self.bound as usize + 1)]
    }

    fn side(&self) -> usize {
        self.bound as usize + 1
    }
}

fn decode(mut index: usize, dim: usize, side: usize) -> Vec<u32> {
    let mut cell = vec![0u32; dim];
    for k in (0..dim).rev() {
        cell[k] = (index % side) as u32;
        index /= side;
    }
    cell
}

fn encode(cell: &[u32], side: usize) -> usize {
    cell.iter().fold(0, |acc, &c| acc * side + c as usize)
}

/// Smallest faithful bound for `area`: one past its largest finite endpoint.
pub fn default_bound(area: &Area) -> u32 {
    area.max_finite_endpoint() + 1
}

pub fn grid_of_area(area: &Area) -> GridRegion {
    grid_of_area_with_bound(area, default_bound(area)).expect("default bound is faithful")
}

pub fn grid_of_area_with_bound(area: &Area, bound: u32) -> Result<GridRegion, OracleError> {
    let needed = default_bound(area);
    if bound < needed {
        return Err(OracleError::BoundTooSmall { bound, needed });
    }
    Ok(GridRegion::from_fn(area.dimension(), bound, Exec::default(), |cell| area.contains_point(cell)))
}

/// Membership straight from the program text: at a cell, run each process
/// up to its position, applying `P(s)`/`V(s)` only when they change whether
/// the process holds `s`; the cell is forbidden when some semaphore has at
/// least `arity` holders.
pub fn grid_of_program(program: &Program, bound: u32) -> Result<GridRegion, OracleError> {
    let needed = program.processes().iter().map(|p| p.len() as u32).max().unwrap_or(0) + 1;
    if bound < needed {
        return Err(OracleError::BoundTooSmall { bound, needed });
    }
    let semaphores: Vec<(&str, usize)> =
        program.semaphores().iter().map(|(s, &a)| (s.as_str(), a as usize)).collect();
    Ok(GridRegion::from_fn(program.len(), bound, Exec::default(), |cell| {
        semaphores.iter().all(|&(s, arity)| {
            let holders = program
                .processes()
                .iter()
                .zip(cell)
                .filter(|(p, &pos)| {
                    let mut holding = false;
                    for instr in p.body.iter().take(pos as usize).filter(|i| i.semaphore == s) {
                        holding = instr.op == Op::P;
                    }
                    holding
                })
                .count();
            holders < arity
        })
    }))
}

/// Every maximal box of cells inside the region, as cubes sorted in the
/// canonical order.
///
/// A box is kept when it lies inside the region and none of its one-cell
/// extensions does. Box emptiness is read off an `N`-dimensional prefix sum
/// of the non-member cells.
pub fn grid_maximal_cubes(region: &GridRegion) -> Vec<Cube> {
    let dim = region.dim;
    let side = region.side();
    let outside = OutsideCounts::new(region);
    let spans: Vec<(usize, usize)> = (0..side).flat_map(|lo| (lo..side).map(move |hi| (lo, hi))).collect();
    let total = spans.len().pow(dim as u32);

    let boxes = Exec::default().map_range(total, |index| {
        let choice = decode(index, dim, spans.len());
        let lo: Vec<usize> = choice.iter().map(|&c| spans[c as usize].0).collect();
        let hi: Vec<usize> = choice.iter().map(|&c| spans[c as usize].1).collect();
        if outside.in_box(&lo, &hi) != 0 {
            return None;
        }
        for k in 0..dim {
            if lo[k] > 0 {
                let mut grown = lo.clone();
                grown[k] -= 1;
                if outside.in_box(&grown, &hi) == 0 {
                    return None;
                }
            }
            if hi[k] + 1 < side {
                let mut grown = hi.clone();
                grown[k] += 1;
                if outside.in_box(&lo, &grown) == 0 {
                    return None;
                }
            }
        }
        let intervals = lo
            .iter()
            .zip(&hi)
            .map(|(&l, &h)| {
                if h + 1 == side {
                    Interval::from(l as u32)
                } else {
                    Interval::finite(l as u32, h as u32 + 1)
                }
            })
            .collect();
        Some(Cube::new(intervals))
    });
    let mut cubes: Vec<Cube> = boxes.into_iter().flatten().collect();
    cubes.sort_unstable();
    cubes
}

/// Maximal cubes of an area, recomputed from scratch on its grid.
pub fn oracle_maximal_cubes(area: &Area) -> Vec<Cube> {
    grid_maximal_cubes(&grid_of_area(area))
}

/// Prefix sums of non-member cells over `{0..=side}ᴺ`.
struct OutsideCounts {
    dim: usize,
    stride: usize,
    sums: Vec<u64>,
}

impl OutsideCounts {
    fn new(region: &GridRegion) -> Self {
        let dim = region.dim;
        let side = region.side();
        let stride = side + 1;
        let mut sums = vec![0u64; stride.pow(dim as u32)];
        for (index, &member) in region.cells.iter().enumerate() {
            if !member {
                let cell = decode(index, dim, side);
                let shifted: Vec<u32> = cell.iter().map(|&c| c + 1).collect();
                sums[encode(&shifted, stride)] = 1;
            }
        }
        // sums[i] = #{outside cells c : c_k < i_k for all k}
        for k in 0..dim {
            let step = stride.pow((dim - 1 - k) as u32);
            for index in 0..sums.len() {
                if (index / step) % stride > 0 {
                    sums[index] += sums[index - step];
                }
            }
        }
        OutsideCounts { dim, stride, sums }
    }

    /// Non-member cells in the inclusive box `lo..=hi`.
    fn in_box(&self, lo: &[usize], hi: &[usize]) -> u64 {
        let mut total: i64 = 0;
        for mask in 0u32..(1 << self.dim) {
            let mut index = 0;
            let mut lows = 0;
            for k in 0..self.dim {
                let coord = if mask & (1 << k) != 0 {
                    lows += 1;
                    lo[k]
                } else {
                    hi[k] + 1
                };
                index = index * self.stride + coord;
            }
            let v = self.sums[index] as i64;
            total += if lows % 2 == 0 { v } else { -v };
        }
        total as u64
    }
}

/// Whether the region is the product of its projections on `coords` and on
/// the complement (1-based coordinates).
pub fn grid_is_product(region: &GridRegion, coords: &[usize]) -> Result<bool, OracleError> {
    let dim = region.dim;
    if coords.is_empty() {
        return Err(OracleError::TrivialIndexSet(dim));
    }
    if let Some(&bad) = coords.iter().find(|&&k| k == 0 || k > dim) {
        return Err(OracleError::IndexOutOfRange { index: bad, dimension: dim });
    }
    let a: Vec<usize> = (0..dim).filter(|k| coords.contains(&(k + 1))).collect();
    let rest: Vec<usize> = (0..dim).filter(|k| !coords.contains(&(k + 1))).collect();
    if rest.is_empty() {
        return Err(OracleError::TrivialIndexSet(dim));
    }
    let side = region.side();
    let part = |cell: &[u32], coords: &[usize]| {
        let sub: Vec<u32> = coords.iter().map(|&k| cell[k]).collect();
        encode(&sub, side)
    };
    let mut on_a = vec![false; side.pow(a.len() as u32)];
    let mut on_rest = vec![false; side.pow(rest.len() as u32)];
    for (index, &member) in region.cells.iter().enumerate() {
        if member {
            let cell = decode(index, dim, side);
            on_a[part(&cell, &a)] = true;
            on_rest[part(&cell, &rest)] = true;
        }
    }
    Ok(Exec::default().all_range(region.cells.len(), |index| {
        let cell = decode(index, dim, side);
        region.cells[index] == (on_a[part(&cell, &a)] && on_rest[part(&cell, &rest)])
    }))
}

/// Whether no non-trivial coordinate split makes the region a product.
pub fn grid_is_irreducible(region: &GridRegion) -> bool {
    let dim = region.dim;
    (1..(1usize << dim) - 1).all(|mask| {
        let coords: Vec<usize> = (0..dim).filter(|k| mask & (1 << k) != 0).map(|k| k + 1).collect();
        !grid_is_product(region, &coords).expect("mask is a proper non-empty subset")
    })
}

/// Whether two areas have the same points, decided on a common grid.
pub fn same_region(x: &Area, y: &Area) -> bool {
    if x.dimension() != y.dimension() {
        return false;
    }
    let bound = default_bound(x).max(default_bound(y));
    let gx = grid_of_area_with_bound(x, bound).expect("bound covers x");
    let gy = grid_of_area_with_bound(y, bound).expect("bound covers y");
    gx == gy
}
