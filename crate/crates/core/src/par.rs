//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature (on by default) [`Execution::Parallel`] runs on
//! the rayon global pool. Without it, every call runs sequentially and the
//! results are identical either way: all reductions are exact integer sums
//! and all maps preserve order.

use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// Whether this build can actually run in parallel.
    pub fn parallel_available() -> bool {
        cfg!(feature = "parallel")
    }
}

/// Ordered map over an index range.
pub fn map_range<R, F>(exec: Execution, range: Range<usize>, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Send + Sync,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => range.into_par_iter().map(f).collect(),
        _ => range.map(f).collect(),
    }
}

/// Exact sum of `f` over an index range.
pub fn sum_range<F>(exec: Execution, range: Range<u64>, f: F) -> i64
where
    F: Fn(u64) -> i64 + Send + Sync,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => range.into_par_iter().map(f).sum(),
        _ => range.map(f).sum(),
    }
}

/// Exact sum of `f` over a slice.
pub fn sum_slice<T, F>(exec: Execution, items: &[T], f: F) -> i64
where
    T: Sync,
    F: Fn(&T) -> i64 + Send + Sync,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => items.par_iter().map(f).sum(),
        _ => items.iter().map(f).sum(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        let seq = map_range(Execution::Sequential, 0..1000, |i| i * i);
        let par = map_range(Execution::Parallel, 0..1000, |i| i * i);
        assert_eq!(seq, par);
        let f = |i: u64| (i as i64 % 7) - 3;
        assert_eq!(
            sum_range(Execution::Sequential, 0..10_000, f),
            sum_range(Execution::Parallel, 0..10_000, f)
        );
        let v: Vec<i64> = (0..500).collect();
        assert_eq!(
            sum_slice(Execution::Sequential, &v, |&x| x),
            sum_slice(Execution::Parallel, &v, |&x| x)
        );
    }
}
