//! Timing of the construction against instance size.

use std::time::Instant;

use num_rational::Ratio;
use serde::Serialize;

use crate::construct::{approx_multipacking_with, verify_multipacking, ApproxOptions};
use crate::error::{Error, Result};
use crate::families::{random_cactus, RandomCactusParams};

/// Allowed growth of time per vertex from the smallest to the largest size.
pub const MAX_PER_VERTEX_GROWTH: f64 = 3.0;

/// Sizes above this skip the quadratic verification timing.
pub const VERIFY_TIMING_MAX_N: usize = 20_000;

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub sizes: Vec<usize>,
    pub seed: u64,
    /// Also time the verifier where `n <= VERIFY_TIMING_MAX_N`.
    pub time_verify: bool,
    /// Timed repetitions per size; the minimum is reported.
    pub repeats: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct BenchRow {
    pub n: usize,
    pub construct_secs: f64,
    pub ns_per_vertex: f64,
    pub verify_secs: Option<f64>,
    pub size: usize,
    pub radius: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    /// Last `ns_per_vertex` over the first.
    pub growth: f64,
    pub within_limit: bool,
}

/// Times the construction alone (no verification) on one seeded random
/// cactus per size.
pub fn bench_linear(cfg: &BenchConfig) -> Result<BenchReport> {
    if cfg.sizes.is_empty() || cfg.sizes.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::Precondition("sizes must be non-empty and ascending".into()));
    }
    let mut rows = Vec::new();
    for &n in &cfg.sizes {
        let g = random_cactus(&RandomCactusParams::new(n, Ratio::new(1, 2), 12, cfg.seed))?;
        let mut best = f64::INFINITY;
        let mut res = None;
        for _ in 0..cfg.repeats.max(1) {
            let t = Instant::now();
            let r = approx_multipacking_with(&g, ApproxOptions { verify: false })?;
            best = best.min(t.elapsed().as_secs_f64());
            res = Some(r);
        }
        let res = res.expect("at least one repetition");
        let verify_secs = if cfg.time_verify && n <= VERIFY_TIMING_MAX_N {
            let t = Instant::now();
            verify_multipacking(&g, &res.multipacking.members)?;
            Some(t.elapsed().as_secs_f64())
        } else {
            None
        };
        rows.push(BenchRow {
            n,
            construct_secs: best,
            ns_per_vertex: best * 1e9 / n as f64,
            verify_secs,
            size: res.multipacking.size(),
            radius: res.radius,
        });
    }
    let growth = rows.last().unwrap().ns_per_vertex / rows[0].ns_per_vertex;
    Ok(BenchReport { rows, growth, within_limit: growth <= MAX_PER_VERTEX_GROWTH })
}
