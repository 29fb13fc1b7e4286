//! Data-parallel search with a sequential fallback.
//!
//! With the `parallel` feature, searches run on a rayon pool sized by the
//! `jobs` setting: 0 uses every core, 1 forces sequential execution.
//! Without the feature every search is sequential and `jobs` is ignored.

/// Effective worker count for a `jobs` setting.
pub fn effective_jobs(jobs: usize) -> usize {
    #[cfg(feature = "parallel")]
    {
        if jobs == 0 {
            rayon::current_num_threads()
        } else {
            jobs
        }
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = jobs;
        1
    }
}

/// Runs `op` with `jobs` workers available to [`find_first`].
pub(crate) fn run<R: Send>(jobs: usize, op: impl FnOnce(bool) -> R + Send) -> R {
    #[cfg(feature = "parallel")]
    {
        if jobs == 1 {
            return op(false);
        }
        let mut builder = rayon::ThreadPoolBuilder::new();
        if jobs > 1 {
            builder = builder.num_threads(jobs);
        }
        match builder.build() {
            Ok(pool) => pool.install(|| op(true)),
            Err(_) => op(false),
        }
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = jobs;
        op(false)
    }
}

/// The result of `f` on the earliest item (in slice order) for which it is
/// `Some`, independent of scheduling.
pub(crate) fn find_first<I, T, F>(parallel: bool, items: &[I], f: F) -> Option<T>
where
    I: Sync,
    T: Send,
    F: Fn(&I) -> Option<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if parallel {
            use rayon::prelude::*;
            return items.par_iter().find_map_first(f);
        }
    }
    let _ = parallel;
    items.iter().find_map(f)
}
