//! Data-parallel map/reduce over sample indices, with a sequential fallback
//! when the `parallel` feature is disabled.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Map each index in `0..n` and fold the results with an associative,
/// commutative merge. Deterministic for any worker count because the map is
/// keyed by index and the merge is order-insensitive.
#[cfg(feature = "parallel")]
pub fn map_reduce<T, M, R>(n: usize, map: M, identity: T, reduce: R) -> T
where
    T: Send + Sync + Clone,
    M: Fn(usize) -> T + Sync + Send,
    R: Fn(T, T) -> T + Sync + Send,
{
    (0..n)
        .into_par_iter()
        .map(map)
        .reduce(|| identity.clone(), reduce)
}

#[cfg(not(feature = "parallel"))]
pub fn map_reduce<T, M, R>(n: usize, map: M, identity: T, reduce: R) -> T
where
    T: Send + Clone,
    M: Fn(usize) -> T + Sync + Send,
    R: Fn(T, T) -> T + Sync + Send,
{
    (0..n).map(map).fold(identity, reduce)
}

/// Always-sequential variant, kept available for benchmarking the parallel
/// speedup and for bit-for-bit determinism checks.
pub fn map_reduce_serial<T, M, R>(n: usize, map: M, identity: T, reduce: R) -> T
where
    M: Fn(usize) -> T,
    R: Fn(T, T) -> T,
{
    (0..n).map(map).fold(identity, reduce)
}
