//! Runtime switch between rayon-backed and sequential execution of the
//! data-parallel kernels (order-matrix construction, cover extraction,
//! exhaustive pair scans).
//!
//! With the `parallel` feature (on by default) the kernels run on rayon and
//! can be forced sequential at runtime with [`set_parallel`], which is how
//! the benchmark suite compares the two lanes. Without the feature only the
//! sequential code is compiled.

#[cfg(feature = "parallel")]
use std::sync::atomic::{AtomicBool, Ordering};

#[cfg(feature = "parallel")]
static PARALLEL_ENABLED: AtomicBool = AtomicBool::new(true);

/// True when the crate was compiled with the `parallel` feature.
pub fn parallelism_available() -> bool {
    cfg!(feature = "parallel")
}

/// Enable or disable the rayon code paths at runtime.
///
/// A no-op when the `parallel` feature is off. Results are identical either
/// way; only the execution strategy changes.
#[cfg(feature = "parallel")]
pub fn set_parallel(enabled: bool) {
    PARALLEL_ENABLED.store(enabled, Ordering::Relaxed);
}

/// Enable or disable the rayon code paths at runtime.
///
/// A no-op when the `parallel` feature is off. Results are identical either
/// way; only the execution strategy changes.
#[cfg(not(feature = "parallel"))]
pub fn set_parallel(_enabled: bool) {}

/// True when the next kernel invocation will run on rayon.
#[cfg(feature = "parallel")]
pub fn parallel_enabled() -> bool {
    PARALLEL_ENABLED.load(Ordering::Relaxed)
}

/// True when the next kernel invocation will run on rayon.
#[cfg(not(feature = "parallel"))]
pub fn parallel_enabled() -> bool {
    false
}

/// Map `f` over `0..n`, collecting results in index order.
#[cfg(feature = "parallel")]
pub(crate) fn map_indices<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    if parallel_enabled() {
        (0..n).into_par_iter().map(f).collect()
    } else {
        (0..n).map(f).collect()
    }
}

/// Map `f` over `0..n`, collecting results in index order.
#[cfg(not(feature = "parallel"))]
pub(crate) fn map_indices<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..n).map(f).collect()
}
