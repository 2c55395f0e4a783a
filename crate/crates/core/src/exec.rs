//! Sequential or data-parallel execution of the batch loops (frontier
//! expansion, whole-space scans). Both strategies produce identical results;
//! without the `parallel` feature `Exec::Parallel` runs sequentially.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
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

/// Below this many items the parallel path is not worth the fork/join.
const PAR_THRESHOLD: usize = 1024;

impl Exec {
    #[cfg_attr(not(feature = "parallel"), allow(dead_code))]
    #[inline]
    fn use_parallel(self, len: usize) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel && len >= PAR_THRESHOLD
    }

    /// `items.iter().flat_map(f)` collected in input order.
    pub fn flat_map_collect<T, R, F, I>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> I + Sync + Send,
        I: IntoIterator<Item = R>,
        I::IntoIter: Send,
    {
        #[cfg(feature = "parallel")]
        if self.use_parallel(items.len()) {
            return items.par_iter().flat_map_iter(f).collect();
        }
        items.iter().flat_map(f).collect()
    }

    /// `items.iter().map(f)` collected in input order.
    pub fn map_collect<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.use_parallel(items.len()) {
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }

    /// `(0..len).map(f)` collected in order.
    pub fn map_range<R, F>(self, len: u64, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(u64) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.use_parallel(len as usize) {
            return (0..len).into_par_iter().map(f).collect();
        }
        (0..len).map(f).collect()
    }

    /// True iff `pred` holds for every item.
    pub fn all<T, F>(self, items: &[T], pred: F) -> bool
    where
        T: Sync,
        F: Fn(&T) -> bool + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.use_parallel(items.len()) {
            return items.par_iter().all(pred);
        }
        items.iter().all(pred)
    }
}
