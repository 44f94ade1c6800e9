#![allow(dead_code)]

use pvsplit::oracle::{grid_is_irreducible, grid_of_area, same_region};
use pvsplit::{Area, Bound, Cube, Interval, Permutation};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Interval with endpoints in `0..=max_endpoint`, or an infinite upper end.
pub fn random_interval(rng: &mut TestRng, max_endpoint: u32) -> Interval {
    let lo = rng.gen_range(0..max_endpoint);
    if rng.gen_bool(0.3) {
        Interval::from(lo)
    } else {
        let hi = rng.gen_range(lo + 1..=max_endpoint);
        Interval::new(lo, Bound::Finite(hi)).unwrap()
    }
}

pub fn random_cube(rng: &mut TestRng, dim: usize, max_endpoint: u32) -> Cube {
    Cube::new((0..dim).map(|_| random_interval(rng, max_endpoint)).collect())
}

/// `[0,∞[ᴺ` minus up to `max_holes` random cubes.
pub fn random_holes(rng: &mut TestRng, dim: usize, max_endpoint: u32, max_holes: usize) -> Vec<Cube> {
    let count = rng.gen_range(0..=max_holes);
    (0..count).map(|_| random_cube(rng, dim, max_endpoint)).collect()
}

pub fn random_area(rng: &mut TestRng, dim: usize, max_endpoint: u32, max_holes: usize) -> Area {
    Area::complement_of(dim, &random_holes(rng, dim, max_endpoint, max_holes)).unwrap()
}

pub fn random_permutation(rng: &mut TestRng, n: usize) -> Permutation {
    let mut images: Vec<usize> = (1..=n).collect();
    images.shuffle(rng);
    Permutation::new(images).unwrap()
}

/// Non-empty area that the grid oracle cannot split.
pub fn random_irreducible(rng: &mut TestRng, dim: usize, max_endpoint: u32) -> Area {
    loop {
        let a = random_area(rng, dim, max_endpoint, 3);
        if !a.is_empty() && grid_is_irreducible(&grid_of_area(&a)) {
            return a;
        }
    }
}

pub fn all_permutations(n: usize) -> Vec<Permutation> {
    fn go(prefix: &mut Vec<usize>, n: usize, out: &mut Vec<Permutation>) {
        if prefix.len() == n {
            out.push(Permutation::new(prefix.clone()).unwrap());
            return;
        }
        for v in 1..=n {
            if !prefix.contains(&v) {
                prefix.push(v);
                go(prefix, n, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), n, &mut out);
    out
}

/// Whether `x` is `y` up to a permutation of coordinates, judged on the grid.
pub fn equivalent_up_to_permutation(x: &Area, y: &Area) -> bool {
    x.dimension() == y.dimension()
        && all_permutations(x.dimension()).iter().any(|s| same_region(x, &y.permute(s).unwrap()))
}

/// Non-empty proper subsets of `{1..n}`.
pub fn proper_subsets(n: usize) -> Vec<Vec<usize>> {
    (1..(1usize << n) - 1)
        .map(|mask| (0..n).filter(|k| mask & (1 << k) != 0).map(|k| k + 1).collect())
        .collect()
}

pub fn texts(cubes: &[Cube]) -> Vec<String> {
    cubes.iter().map(ToString::to_string).collect()
}
