//! Thin seam between the rayon-backed build and the sequential fallback.
//! Both paths preserve input order, so downstream output is byte-identical.

#[cfg(feature = "parallel")]
pub fn map_collect<I, T, F, R>(items: I, f: F) -> Vec<R>
where
    I: IntoIterator<Item = T>,
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    let items: Vec<T> = items.into_iter().collect();
    items.into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_collect<I, T, F, R>(items: I, f: F) -> Vec<R>
where
    I: IntoIterator<Item = T>,
    F: Fn(T) -> R,
{
    items.into_iter().map(f).collect()
}

/// Always-sequential variant, kept for benchmarking against the parallel path.
pub fn map_collect_seq<I, T, F, R>(items: I, f: F) -> Vec<R>
where
    I: IntoIterator<Item = T>,
    F: Fn(T) -> R,
{
    items.into_iter().map(f).collect()
}
