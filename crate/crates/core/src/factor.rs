//! Prime factorization of cubical areas.
//!
//! An area `S` over coordinates `{1..N}` splits along a coordinate set `A`
//! when it is the product of its projection on `A` and its projection on
//! the complement `Aᶜ`. On the maximal-cube form this is a finite check:
//! every cube's `A`-part, paired with every cube's `Aᶜ`-part, must again be
//! a cube of `S`. Scanning candidate sets by increasing size makes the
//! first divisor found irreducible, so repeating the search on the cofactor
//! yields the decomposition into irreducible factors.
//!
//! Coordinate sets in this module are 1-based, as in `{1,3}{2,4}`.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::geometry::{Area, Cube, GeometryError, Permutation};
use crate::semantics::combinations;
use crate::Exec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FactorError {
    #[error("the empty area has no factorization")]
    EmptyArea,
    #[error("coordinate set is empty")]
    EmptyIndexSet,
    #[error("coordinate set must be a proper subset of 1..={0}")]
    TrivialIndexSet(usize),
    #[error("coordinate {index} is outside 1..={dimension}")]
    IndexOutOfRange { index: usize, dimension: usize },
    #[error("coordinate {0} listed twice")]
    DuplicateIndex(usize),
    #[error("{0} is not the projection of any cube")]
    NotAProjection(Cube),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Validates a 1-based coordinate set and returns it sorted, 0-based.
fn coords0(coords: &[usize], dimension: usize) -> Result<Vec<usize>, FactorError> {
    if coords.is_empty() {
        return Err(FactorError::EmptyIndexSet);
    }
    let mut sorted = coords.to_vec();
    sorted.sort_unstable();
    for pair in sorted.windows(2) {
        if pair[0] == pair[1] {
            return Err(FactorError::DuplicateIndex(pair[0]));
        }
    }
    if let Some(&bad) = sorted.iter().find(|&&k| k == 0 || k > dimension) {
        return Err(FactorError::IndexOutOfRange { index: bad, dimension });
    }
    Ok(sorted.into_iter().map(|k| k - 1).collect())
}

fn complement0(coords: &[usize], dimension: usize) -> Vec<usize> {
    (0..dimension).filter(|k| !coords.contains(k)).collect()
}

fn select_all(cubes: &[Cube], coords: &[usize]) -> Vec<Cube> {
    let mut out: Vec<Cube> = cubes.iter().map(|c| c.select(coords)).collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// `S∘A`: every cube restricted to the coordinates in `coords`, deduplicated.
pub fn project(area: &Area, coords: &[usize]) -> Result<Vec<Cube>, FactorError> {
    let a = coords0(coords, area.dimension())?;
    Ok(select_all(area.cubes(), &a))
}

/// `Ψ(w, A, S)`: the `Aᶜ`-parts of the cubes whose `A`-part is `w`.
pub fn fiber(area: &Area, coords: &[usize], w: &Cube) -> Result<Vec<Cube>, FactorError> {
    let a = coords0(coords, area.dimension())?;
    if w.dim() != a.len() {
        return Err(GeometryError::DimensionMismatch { expected: a.len(), found: w.dim() }.into());
    }
    let rest = complement0(&a, area.dimension());
    let mut out: Vec<Cube> =
        area.cubes().iter().filter(|c| &c.select(&a) == w).map(|c| c.select(&rest)).collect();
    if out.is_empty() {
        return Err(FactorError::NotAProjection(w.clone()));
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Whether the projection on `coords` divides the area, i.e. whether every
/// fiber over `S∘A` equals `S∘Aᶜ`.
pub fn is_divisor(area: &Area, coords: &[usize]) -> Result<bool, FactorError> {
    let a = coords0(coords, area.dimension())?;
    if a.len() == area.dimension() {
        return Err(FactorError::TrivialIndexSet(area.dimension()));
    }
    Ok(divides(area.cubes(), area.dimension(), &a))
}

/// Divisor test on 0-based sorted coordinates.
fn divides(cubes: &[Cube], dimension: usize, a: &[usize]) -> bool {
    let rest = complement0(a, dimension);
    let cofactor = select_all(cubes, &rest);
    let mut fibers: BTreeMap<Cube, Vec<Cube>> = BTreeMap::new();
    for c in cubes {
        fibers.entry(c.select(a)).or_default().push(c.select(&rest));
    }
    fibers.into_values().all(|mut f| {
        f.sort_unstable();
        f.dedup();
        f == cofactor
    })
}

/// Candidate divisor sets of `{1..n}` in search order: by size from 1 to
/// `⌊n/2⌋`, lexicographically within a size. When `n` is even, half-size
/// sets without coordinate 1 are left out since their complement was
/// already tried.
pub fn subset_order(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for size in 1..=n / 2 {
        for subset in combinations(n, size) {
            if 2 * size == n && subset[0] != 0 {
                continue;
            }
            out.push(subset.into_iter().map(|k| k + 1).collect());
        }
    }
    out
}

/// One irreducible factor and the original coordinates (1-based, sorted)
/// it lives on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub indices: Vec<usize>,
    pub area: Area,
}

/// Irreducible factors ordered by their smallest coordinate; their index
/// sets partition `{1..N}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    dimension: usize,
    factors: Vec<Factor>,
}

impl Factorization {
    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn partition(&self) -> Vec<Vec<usize>> {
        self.factors.iter().map(|f| f.indices.clone()).collect()
    }

    /// True when the area splits into at least two factors.
    pub fn is_decomposed(&self) -> bool {
        self.factors.len() > 1
    }

    /// Product of the factors, moved back to the original coordinates.
    pub fn reassemble(&self) -> Area {
        let product = self.factors.iter().fold(Area::unit(), |acc, f| acc.product(&f.area));
        let mut position = vec![0; self.dimension];
        for (slot, k) in self.factors.iter().flat_map(|f| &f.indices).enumerate() {
            position[k - 1] = slot;
        }
        product
            .permute(&Permutation::from_zero_based(position))
            .expect("factor indices partition the coordinates")
    }
}

impl fmt::Display for Factorization {
    /// `{1,3}{2,4}`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for factor in &self.factors {
            f.write_str("{")?;
            for (k, i) in factor.indices.iter().enumerate() {
                if k > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{i}")?;
            }
            f.write_str("}")?;
        }
        Ok(())
    }
}

pub fn factorize(area: &Area) -> Result<Factorization, FactorError> {
    factorize_with(area, Exec::default())
}

/// Splits off the first divisor in [`subset_order`] until none is left.
/// The candidate scan may run in parallel; the selected set is always the
/// first one in order.
pub fn factorize_with(area: &Area, exec: Exec) -> Result<Factorization, FactorError> {
    if area.is_empty() {
        return Err(FactorError::EmptyArea);
    }
    let mut factors = Vec::new();
    let mut original: Vec<usize> = (1..=area.dimension()).collect();
    let mut cubes = area.cubes().to_vec();

    while !original.is_empty() {
        let n = original.len();
        let candidates: Vec<Vec<usize>> =
            subset_order(n).into_iter().map(|s| s.into_iter().map(|k| k - 1).collect()).collect();
        let Some(pos) = exec.position_first(&candidates, |a| divides(&cubes, n, a)) else {
            factors.push(emit(original, cubes));
            break;
        };
        let a = &candidates[pos];
        let rest = complement0(a, n);
        factors.push(emit(a.iter().map(|&k| original[k]).collect(), select_all(&cubes, a)));
        cubes = select_all(&cubes, &rest);
        original = rest.iter().map(|&k| original[k]).collect();
    }
    factors.sort_by_key(|f| f.indices[0]);
    Ok(Factorization { dimension: area.dimension(), factors })
}

/// Projections of maximal cubes along a divisor are the maximal cubes of
/// the factor, so the cubes only need sorting.
fn emit(indices: Vec<usize>, cubes: Vec<Cube>) -> Factor {
    let area = Area::from_maximal(indices.len(), cubes);
    Factor { indices, area }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn area(dim: usize, list: &[&str]) -> Area {
        Area::from_cover(dim, list.iter().map(|s| s.parse().unwrap()).collect()).unwrap()
    }

    fn texts(cubes: &[Cube]) -> Vec<String> {
        cubes.iter().map(ToString::to_string).collect()
    }

    fn swiss_flag() -> Area {
        Area::complement_of(2, &["[1,4[*[2,3[".parse().unwrap(), "[2,3[*[1,4[".parse().unwrap()]).unwrap()
    }

    #[test]
    fn projection_examples() {
        let s = area(2, &["[0,1[*[2,3[", "[0,1[*[4,5["]);
        assert_eq!(texts(&project(&s, &[1]).unwrap()), ["[0,1["]);
        assert_eq!(project(&s, &[1, 2]).unwrap(), s.cubes());
        assert_eq!(project(&s, &[]), Err(FactorError::EmptyIndexSet));
        assert_eq!(project(&s, &[3]), Err(FactorError::IndexOutOfRange { index: 3, dimension: 2 }));
        assert_eq!(project(&s, &[1, 1]), Err(FactorError::DuplicateIndex(1)));
    }

    #[test]
    fn fiber_examples() {
        let s = area(2, &["[0,1[*[2,3["]);
        let w: Cube = "[0,1[".parse().unwrap();
        assert_eq!(texts(&fiber(&s, &[1], &w).unwrap()), ["[2,3["]);
        let missing: Cube = "[5,-[".parse().unwrap();
        assert_eq!(fiber(&s, &[1], &missing), Err(FactorError::NotAProjection(missing)));

        let flag = swiss_flag();
        let fib = fiber(&flag, &[1], &w).unwrap();
        assert_eq!(texts(&fib), ["[0,-["]);
        assert_ne!(fib, project(&flag, &[2]).unwrap());
    }

    #[test]
    fn divisor_examples() {
        let one = area(3, &["[0,1[*[2,-[*[1,3["]);
        for a in [vec![1], vec![2], vec![3], vec![1, 3]] {
            assert!(is_divisor(&one, &a).unwrap());
        }
        assert!(!is_divisor(&swiss_flag(), &[1]).unwrap());
        assert!(!is_divisor(&swiss_flag(), &[2]).unwrap());
        assert_eq!(is_divisor(&one, &[1, 2, 3]), Err(FactorError::TrivialIndexSet(3)));
    }

    #[test]
    fn subset_orders() {
        assert_eq!(subset_order(3), vec![vec![1], vec![2], vec![3]]);
        assert_eq!(
            subset_order(4),
            vec![vec![1], vec![2], vec![3], vec![4], vec![1, 2], vec![1, 3], vec![1, 4]]
        );
        assert!(subset_order(1).is_empty());
        assert!(subset_order(0).is_empty());
        // 6 singletons, 15 pairs, 10 of the 20 triples
        assert_eq!(subset_order(6).len(), 31);
    }

    #[test]
    fn one_dimensional_areas_are_irreducible() {
        let line = area(1, &["[0,1[", "[3,-["]);
        let f = factorize(&line).unwrap();
        assert_eq!(f.partition(), vec![vec![1]]);
        assert_eq!(f.factors()[0].area, line);
    }

    #[test]
    fn swiss_flag_is_irreducible() {
        let flag = swiss_flag();
        let f = factorize(&flag).unwrap();
        assert!(!f.is_decomposed());
        assert_eq!(f.factors()[0].area, flag);
    }

    #[test]
    fn unit_and_empty() {
        let f = factorize(&Area::unit()).unwrap();
        assert!(f.factors().is_empty());
        assert_eq!(f.reassemble(), Area::unit());
        assert_eq!(factorize(&Area::empty(2)), Err(FactorError::EmptyArea));
    }

    #[test]
    fn splits_an_interleaved_product() {
        let x = area(1, &["[0,1[", "[2,-["]);
        let y = swiss_flag();
        // coordinates: y₁ x y₂
        let p = x.product(&y).permute(&Permutation::new(vec![2, 1, 3]).unwrap()).unwrap();
        let f = factorize(&p).unwrap();
        assert_eq!(f.to_string(), "{1,3}{2}");
        assert_eq!(f.factors()[0].area, y);
        assert_eq!(f.factors()[1].area, x);
        assert_eq!(f.reassemble(), p);
    }

    #[test]
    fn strategies_agree() {
        let x = swiss_flag();
        let p = x.product(&x).product(&area(1, &["[1,-["]));
        let results: Vec<_> = Exec::available().iter().map(|&e| factorize_with(&p, e).unwrap()).collect();
        assert!(results.windows(2).all(|w| w[0] == w[1]));
        assert_eq!(results[0].to_string(), "{1,2}{3,4}{5}");
    }
}
