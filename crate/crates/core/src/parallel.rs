//! Worker-pool plumbing. `CONECERT_THREADS` caps the number of workers.

use rayon::ThreadPoolBuilder;

pub const THREADS_ENV: &str = "CONECERT_THREADS";

/// Worker cap requested through the environment, if any.
pub fn thread_cap() -> Option<usize> {
    std::env::var(THREADS_ENV).ok()?.trim().parse().ok().filter(|&n: &usize| n > 0)
}

/// Runs `f` inside a pool honouring the thread cap; without a cap the global
/// pool is used.
pub fn install<R: Send>(f: impl FnOnce() -> R + Send) -> R {
    match thread_cap() {
        Some(n) => match ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        },
        None => f(),
    }
}
