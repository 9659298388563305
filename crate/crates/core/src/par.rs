//! Data-parallel helpers. With the `parallel` feature these run on the
//! ambient rayon pool; without it they are plain sequential loops. Every
//! helper returns results in index order, so output never depends on the
//! thread count.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// `(0..n).map(f).collect()`.
pub fn map_indices<R, F>(n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// `items.iter().map(f).collect()`.
pub fn map_slice<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

/// Whether `f(i)` holds for every `i` in `0..n`.
pub fn all_indices<F>(n: usize, f: F) -> bool
where
    F: Fn(usize) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().all(f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).all(f)
    }
}

/// The first `Some` of `f(0), f(1), ...` by index (not by completion time).
pub fn find_map_first<R, F>(n: usize, f: F) -> Option<R>
where
    R: Send,
    F: Fn(usize) -> Option<R> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().find_map_first(f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).find_map(f)
    }
}

/// Whether the data-parallel paths are compiled in.
pub const fn enabled() -> bool {
    cfg!(feature = "parallel")
}
