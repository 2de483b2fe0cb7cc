//! Batch drivers behind the command-line tool.

pub mod bench;
pub mod campaign;
pub mod dot;

/// Runs `f` on a pool capped by `CACTUS_MP_THREADS` when that is set.
pub fn with_thread_cap<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    let cap = std::env::var("CACTUS_MP_THREADS").ok().and_then(|s| s.trim().parse::<usize>().ok());
    match cap.and_then(|t| rayon::ThreadPoolBuilder::new().num_threads(t.max(1)).build().ok()) {
        Some(pool) => pool.install(f),
        None => f(),
    }
}
