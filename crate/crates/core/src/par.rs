//! Data-parallel helpers.
//!
//! With the default `parallel` feature the batch combinators fan out over
//! rayon; without it they degrade to plain sequential iteration, so the
//! crate builds without any threading dependency. Outputs preserve input
//! order either way, which keeps every report deterministic.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Map over a slice, in parallel when the `parallel` feature is enabled.
pub fn par_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
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

/// Always-sequential map; the benchmark baseline for `par_map`.
pub fn seq_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}

/// Keep the items passing the predicate, in parallel when enabled.
pub fn par_filter<T, F>(items: Vec<T>, f: F) -> Vec<T>
where
    T: Send + Sync,
    F: Fn(&T) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.into_par_iter().filter(|t| f(t)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.into_iter().filter(|t| f(t)).collect()
    }
}

/// Run the closure inside a thread pool bounded to `jobs` workers; `None`
/// or a sequential build just runs it inline.
pub fn with_jobs<R: Send>(jobs: Option<usize>, run: impl FnOnce() -> R + Send) -> R {
    #[cfg(feature = "parallel")]
    {
        match jobs {
            Some(n) if n > 0 => rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .expect("thread pool")
                .install(run),
            _ => run(),
        }
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = jobs;
        run()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn par_map_preserves_order() {
        let xs: Vec<u64> = (0..1000).collect();
        let squared = par_map(&xs, |x| x * x);
        assert_eq!(squared, seq_map(&xs, |x| x * x));
    }

    #[test]
    fn with_jobs_runs() {
        assert_eq!(with_jobs(Some(2), || 7), 7);
        assert_eq!(with_jobs(None, || 7), 7);
    }
}
