//! Per-cell loop dispatch.
//!
//! Every pass over cells in the solver (interface fluxes, residual assembly,
//! limiting, wet/dry fixes) goes through these helpers so the same code runs
//! either on the calling thread or on the rayon pool. Results are written per
//! index, so both paths produce bit-identical fields.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Smallest number of cells handed to one rayon task.
#[cfg(feature = "parallel")]
const MIN_CELLS_PER_TASK: usize = 128;

/// How per-cell passes are executed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    #[default]
    Sequential,
    /// Data-parallel over cells on the global rayon pool.
    #[cfg(feature = "parallel")]
    Parallel,
}

impl Execution {
    /// Parallel when the feature is compiled in, sequential otherwise.
    pub fn best_available() -> Self {
        #[cfg(feature = "parallel")]
        {
            Execution::Parallel
        }
        #[cfg(not(feature = "parallel"))]
        {
            Execution::Sequential
        }
    }

    pub fn from_flag(parallel: bool) -> Self {
        if parallel {
            Self::best_available()
        } else {
            Execution::Sequential
        }
    }

    pub fn is_parallel(self) -> bool {
        self != Execution::Sequential
    }

    /// Evaluates `f(i)` for `i in 0..n` and collects the results in index order.
    pub fn map<T, F>(self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        match self {
            Execution::Sequential => (0..n).map(f).collect(),
            #[cfg(feature = "parallel")]
            Execution::Parallel => (0..n).into_par_iter().with_min_len(MIN_CELLS_PER_TASK).map(f).collect(),
        }
    }

    /// Calls `f(i, &mut items[i])` for every element.
    pub fn for_each_mut<T, F>(self, items: &mut [T], f: F)
    where
        T: Send,
        F: Fn(usize, &mut T) + Sync + Send,
    {
        match self {
            Execution::Sequential => items.iter_mut().enumerate().for_each(|(i, x)| f(i, x)),
            #[cfg(feature = "parallel")]
            Execution::Parallel => items
                .par_iter_mut()
                .with_min_len(MIN_CELLS_PER_TASK)
                .enumerate()
                .for_each(|(i, x)| f(i, x)),
        }
    }

    /// Maps a slice of independent jobs, e.g. a batch of runs.
    pub fn map_slice<S, T, F>(self, items: &[S], f: F) -> Vec<T>
    where
        S: Sync,
        T: Send,
        F: Fn(&S) -> T + Sync + Send,
    {
        match self {
            Execution::Sequential => items.iter().map(f).collect(),
            #[cfg(feature = "parallel")]
            Execution::Parallel => items.par_iter().map(f).collect(),
        }
    }
}
