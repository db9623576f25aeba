//! Execution strategy for the data-parallel kernels.
//!
//! Every all-pairs or batch kernel in the crate takes an [`Exec`]. With the
//! `parallel` feature (on by default) `Exec::Parallel` fans the outer loop
//! out over the rayon pool; without it both variants run sequentially.
//! Results are always collected in index order, so output does not depend
//! on the strategy.

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Exec {
    Sequential,
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

impl Exec {
    /// Maps `f` over `0..n`, keeping index order.
    pub fn map<T, F>(self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                (0..n).into_par_iter().map(f).collect()
            }
            _ => (0..n).map(f).collect(),
        }
    }

    /// Flat-maps `f` over `0..n`, keeping index order.
    pub fn flat_map<T, F>(self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> Vec<T> + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                (0..n).into_par_iter().flat_map_iter(f).collect()
            }
            _ => (0..n).flat_map(f).collect(),
        }
    }

    /// Folds `f` over `0..n` with an associative, commutative `combine`.
    pub fn fold<A, F, C>(self, n: usize, identity: A, f: F, combine: C) -> A
    where
        A: Send + Sync + Clone,
        F: Fn(usize) -> A + Sync + Send,
        C: Fn(A, A) -> A + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                (0..n)
                    .into_par_iter()
                    .map(f)
                    .reduce(|| identity.clone(), &combine)
            }
            _ => (0..n).map(f).fold(identity, combine),
        }
    }
}
