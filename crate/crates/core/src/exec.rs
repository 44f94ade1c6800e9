//! Execution strategy for the data-parallel inner loops.
//!
//! Every loop routed through [`Exec`] produces the same output whatever the
//! strategy: callers sort or use order-preserving combinators, so switching
//! between sequential and parallel execution never changes a result.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// How the inner loops of the analysis are executed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Exec {
    /// Plain iterators on the calling thread.
    Sequential,
    /// Rayon's global thread pool.
    #[cfg(feature = "parallel")]
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        #[cfg(feature = "parallel")]
        {
            Exec::Parallel
        }
        #[cfg(not(feature = "parallel"))]
        {
            Exec::Sequential
        }
    }
}

impl Exec {
    /// All strategies compiled into this build.
    pub fn available() -> &'static [Exec] {
        #[cfg(feature = "parallel")]
        {
            &[Exec::Sequential, Exec::Parallel]
        }
        #[cfg(not(feature = "parallel"))]
        {
            &[Exec::Sequential]
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Exec::Sequential => "sequential",
            #[cfg(feature = "parallel")]
            Exec::Parallel => "parallel",
        }
    }

    /// Order-preserving flat map over a slice.
    pub(crate) fn flat_map<T, U, I, F>(self, items: &[T], f: F) -> Vec<U>
    where
        T: Sync,
        U: Send,
        I: IntoIterator<Item = U>,
        F: Fn(&T) -> I + Sync + Send,
    {
        match self {
            Exec::Sequential => items.iter().flat_map(f).collect(),
            #[cfg(feature = "parallel")]
            Exec::Parallel => items.par_iter().flat_map_iter(f).collect(),
        }
    }

    /// Order-preserving map over `0..len`.
    pub(crate) fn map_range<U, F>(self, len: usize, f: F) -> Vec<U>
    where
        U: Send,
        F: Fn(usize) -> U + Sync + Send,
    {
        match self {
            Exec::Sequential => (0..len).map(f).collect(),
            #[cfg(feature = "parallel")]
            Exec::Parallel => (0..len).into_par_iter().map(f).collect(),
        }
    }

    /// Keeps the elements satisfying `keep`, in their original order.
    pub(crate) fn filter<T, F>(self, items: Vec<T>, keep: F) -> Vec<T>
    where
        T: Send + Sync,
        F: Fn(&T) -> bool + Sync + Send,
    {
        match self {
            Exec::Sequential => items.into_iter().filter(|x| keep(x)).collect(),
            #[cfg(feature = "parallel")]
            Exec::Parallel => items.into_par_iter().filter(|x| keep(x)).collect(),
        }
    }

    /// Index of the first element satisfying `pred`, in slice order.
    pub(crate) fn position_first<T, F>(self, items: &[T], pred: F) -> Option<usize>
    where
        T: Sync,
        F: Fn(&T) -> bool + Sync + Send,
    {
        match self {
            Exec::Sequential => items.iter().position(pred),
            #[cfg(feature = "parallel")]
            Exec::Parallel => items.par_iter().position_first(pred),
        }
    }

    /// True iff `pred` holds for every index in `0..len`.
    pub(crate) fn all_range<F>(self, len: usize, pred: F) -> bool
    where
        F: Fn(usize) -> bool + Sync + Send,
    {
        match self {
            Exec::Sequential => (0..len).all(pred),
            #[cfg(feature = "parallel")]
            Exec::Parallel => (0..len).into_par_iter().all(pred),
        }
    }
}
