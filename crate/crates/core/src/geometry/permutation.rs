use std::fmt;

use super::GeometryError;

/// A bijection of `{1..N}`, acting on cubes by reindexing coordinates.
///
/// Applied to a cube `w`, coordinate `k` of the result is coordinate `σ(k)`
/// of `w`. Stored 0-based; the constructors take the 1-based image list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    /// Builds `σ` from `[σ(1), …, σ(N)]`.
    pub fn new(images: Vec<usize>) -> Result<Self, GeometryError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v == 0 || v > n || std::mem::replace(&mut seen[v - 1], true) {
                return Err(GeometryError::NotAPermutation(images));
            }
        }
        Ok(Permutation(images.into_iter().map(|v| v - 1).collect()))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    /// The transposition of `i` and `j` (1-based) on `{1..n}`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Result<Self, GeometryError> {
        let mut images: Vec<usize> = (1..=n).collect();
        if i == 0 || j == 0 || i > n || j > n {
            return Err(GeometryError::NotAPermutation(vec![i, j]));
        }
        images.swap(i - 1, j - 1);
        Self::new(images)
    }

    pub(crate) fn from_zero_based(images: Vec<usize>) -> Self {
        debug_assert!({
            let mut s = images.clone();
            s.sort_unstable();
            s.iter().enumerate().all(|(k, &v)| k == v)
        });
        Permutation(images)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `σ(k)` for 1-based `k`.
    pub fn image(&self, k: usize) -> usize {
        self.0[k - 1] + 1
    }

    pub(crate) fn images0(&self) -> &[usize] {
        &self.0
    }

    /// `self ∘ other`, i.e. `k ↦ self(other(k))`.
    ///
    /// Acting by `σ` then by `τ` is the same as acting once by `σ ∘ τ`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, GeometryError> {
        if self.len() != other.len() {
            return Err(GeometryError::PermutationSize { permutation: other.len(), dimension: self.len() });
        }
        Ok(Permutation(other.0.iter().map(|&k| self.0[k]).collect()))
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (k, &v) in self.0.iter().enumerate() {
            inv[v] = k;
        }
        Permutation(inv)
    }

    /// Juxtaposition `σ ⊗ σ′`: `σ` on the first block, `σ′` shifted onto the
    /// second.
    pub fn juxtapose(&self, other: &Permutation) -> Permutation {
        let shift = self.len();
        Permutation(self.0.iter().copied().chain(other.0.iter().map(|&v| v + shift)).collect())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", v + 1)?;
        }
        f.write_str(")")
    }
}
