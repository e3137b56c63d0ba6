//! Execution helper for the data-parallel inner loops.
//!
//! With the `parallel` feature (default) `Exec::Auto` fans work out over
//! rayon; without it, or with `Exec::Seq`, the same closure runs serially.
//! Results are collected in index order, so output never depends on the
//! work partitioning.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Exec {
    Auto,
    Seq,
}

#[cfg(feature = "parallel")]
pub(crate) fn map_indexed<T: Send>(
    exec: Exec,
    n: usize,
    f: impl Fn(usize) -> T + Sync + Send,
) -> Vec<T> {
    use rayon::prelude::*;
    match exec {
        Exec::Auto => (0..n).into_par_iter().map(f).collect(),
        Exec::Seq => (0..n).map(f).collect(),
    }
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_indexed<T: Send>(
    _exec: Exec,
    n: usize,
    f: impl Fn(usize) -> T + Sync + Send,
) -> Vec<T> {
    (0..n).map(f).collect()
}
