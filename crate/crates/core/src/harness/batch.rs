use rayon::prelude::*;

use crate::config::{AgentSpec, SimConfig};
use crate::error::ConfigError;
use crate::harness::episode::{run_episode, EpisodeResult};
use crate::rng::derive_episode_seed;
use crate::stats::BatchStats;

/// Evaluates `f(0..n)` on `parallelism` worker threads (inline when 1) and
/// returns the results in index order.
pub fn run_indexed<T, F>(n: usize, parallelism: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    if parallelism <= 1 || n <= 1 {
        return (0..n).map(f).collect();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(parallelism).build() {
        Ok(pool) => pool.install(|| (0..n).into_par_iter().map(&f).collect()),
        Err(_) => (0..n).map(f).collect(),
    }
}

/// Runs episodes `0..n_episodes` with seeds derived from `config.master_seed`.
pub fn run_episodes(
    config: &SimConfig,
    specs: &[AgentSpec],
    n_episodes: usize,
    parallelism: usize,
) -> Result<Vec<EpisodeResult>, ConfigError> {
    config.validate()?;
    run_indexed(n_episodes, parallelism, |i| {
        run_episode(config, specs, derive_episode_seed(config.master_seed, i as u64), false)
    })
    .into_iter()
    .collect()
}

/// Normalized-payoff statistics over `n_episodes` episodes. Identical for
/// every `parallelism`.
pub fn run_batch(
    config: &SimConfig,
    specs: &[AgentSpec],
    n_episodes: usize,
    parallelism: usize,
) -> Result<BatchStats, ConfigError> {
    let payoffs: Vec<f64> = run_episodes(config, specs, n_episodes, parallelism)?
        .iter()
        .map(|r| r.normalized_payoff)
        .collect();
    Ok(BatchStats::from_samples(&payoffs))
}
