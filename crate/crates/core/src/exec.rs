//! Data-parallel map helpers. With the `parallel` feature (default) the
//! work is spread over the rayon pool; without it the same entry points run
//! sequentially, so callers never branch on the feature themselves. The
//! explicitly sequential variants stay available for benchmarking the two
//! paths against each other.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Map over a slice, parallel when the feature allows it.
pub fn map_slice<T: Sync, U: Send>(items: &[T], f: impl Fn(&T) -> U + Sync) -> Vec<U> {
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

/// Map over an index range, parallel when the feature allows it. Results
/// come back in index order regardless of scheduling.
pub fn map_indexed<U: Send>(n: usize, f: impl Fn(usize) -> U + Sync) -> Vec<U> {
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// Always-sequential variant of [`map_slice`].
pub fn map_slice_seq<T, U>(items: &[T], f: impl Fn(&T) -> U) -> Vec<U> {
    items.iter().map(f).collect()
}

/// Always-sequential variant of [`map_indexed`].
pub fn map_indexed_seq<U>(n: usize, f: impl Fn(usize) -> U) -> Vec<U> {
    (0..n).map(f).collect()
}
