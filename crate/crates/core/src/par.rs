//! Thin indirection over rayon so the rest of the crate can map over batches
//! without sprinkling `cfg` everywhere. With the `parallel` feature (the
//! default) these fan out to the rayon pool; without it they are plain
//! sequential iterators. Results preserve input order either way, so verdicts
//! and reports are byte-identical across both builds.

/// Order-preserving map over a slice of inputs.
#[cfg(feature = "parallel")]
pub fn map_ordered<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

/// Order-preserving map over a slice of inputs.
#[cfg(not(feature = "parallel"))]
pub fn map_ordered<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}

/// Map that consumes owned inputs, preserving order.
#[cfg(feature = "parallel")]
pub fn map_ordered_owned<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    use rayon::prelude::*;
    items.into_par_iter().map(f).collect()
}

/// Map that consumes owned inputs, preserving order.
#[cfg(not(feature = "parallel"))]
pub fn map_ordered_owned<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    F: Fn(T) -> U,
{
    items.into_iter().map(f).collect()
}
