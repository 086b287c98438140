//! Execution helper: data-parallel map over an index range via rayon when the
//! `parallel` feature is enabled, with a sequential fallback.  Output order is
//! deterministic (by index) either way.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Map `f` over 0..n.  `parallel = true` uses the rayon pool when the feature
/// is enabled; otherwise the computation is sequential.
pub fn map_indexed<T, F>(n: usize, f: F, parallel: bool) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel {
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = parallel;
    (0..n).map(f).collect()
}

/// Configure the global rayon pool size.  No-op without the feature.
pub fn configure_jobs(jobs: usize) {
    #[cfg(feature = "parallel")]
    if jobs > 0 {
        // Ignore failure: the global pool can only be built once.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    }
    #[cfg(not(feature = "parallel"))]
    let _ = jobs;
}
