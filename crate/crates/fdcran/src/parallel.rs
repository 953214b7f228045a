//! Trial-parallel evaluation. Results are gathered in trial order and
//! reduced sequentially, so they do not depend on the worker count.

use fdcran_core::association::Rates;
use fdcran_core::montecarlo::{run_trial, summarize_table, Combo, ComboEstimate};
use fdcran_core::{NormalizedConfig, Result};
use rayon::prelude::*;

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "FDCRAN_THREADS";

/// Runs `f` on a pool sized by `FDCRAN_THREADS` (all cores when unset or invalid).
pub fn with_pool<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    let threads = std::env::var(THREADS_ENV).ok().and_then(|v| v.trim().parse::<usize>().ok()).filter(|&n| n > 0);
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        builder = builder.num_threads(n);
    }
    match builder.build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

/// Maps `f` over trials `0..trials` in parallel, keeping trial order.
pub fn map_trials<T, F>(trials: usize, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(u64) -> Result<T> + Sync + Send,
{
    with_pool(|| (0..trials as u64).into_par_iter().map(&f).collect())
}

/// Rates of every combination on every trial, `[trial][combo]`.
pub fn rate_table(cfg: &NormalizedConfig, combos: &[Combo], trials: usize, seed: u64) -> Result<Vec<Vec<Rates>>> {
    for c in combos {
        c.validate()?;
    }
    map_trials(trials, |t| run_trial(cfg, seed, t, combos))
}

pub fn estimate(cfg: &NormalizedConfig, combos: &[Combo], trials: usize, seed: u64) -> Result<Vec<ComboEstimate>> {
    if trials == 0 {
        return Err(fdcran_core::Error::InvalidConfig { field: "trials", reason: "must be >= 1" });
    }
    Ok(summarize_table(combos, &rate_table(cfg, combos, trials, seed)?))
}
