//! Experiment families. Every cell of a sweep reuses the same episode seeds
//! (common random numbers), so cells differ only in the population.

use crate::config::{AgentSpec, EndogenousStrategy, PreyKind, SimConfig};
use crate::error::ConfigError;
use crate::harness::batch::run_batch;
use crate::harness::csv::CsvTable;
use crate::stats::BatchStats;

/// Counts of each fixed decision mode in a population.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Composition {
    pub willed_stag: usize,
    pub rational: usize,
    pub willed_hare: usize,
}

impl Composition {
    /// `willed_stag` stag-committed agents, the rest rational.
    pub fn stag_vs_rational(willed_stag: usize, n_agents: usize) -> Self {
        Composition {
            willed_stag,
            rational: n_agents - willed_stag,
            willed_hare: 0,
        }
    }

    pub fn total(&self) -> usize {
        self.willed_stag + self.rational + self.willed_hare
    }

    /// Stag-willed agents first, then rational, then hare-willed.
    pub fn specs(&self) -> Vec<AgentSpec> {
        let mut specs = vec![AgentSpec::willed(PreyKind::Stag); self.willed_stag];
        specs.extend(vec![AgentSpec::rational(); self.rational]);
        specs.extend(vec![AgentSpec::willed(PreyKind::Hare); self.willed_hare]);
        specs
    }
}

/// Every composition of `n_agents` whose willed counts are multiples of
/// `step` (the rational count takes the remainder).
pub fn ternary_grid(n_agents: usize, step: usize) -> Vec<Composition> {
    let step = step.max(1);
    let mut out = Vec::new();
    for willed_stag in (0..=n_agents).step_by(step) {
        for willed_hare in (0..=n_agents - willed_stag).step_by(step) {
            out.push(Composition {
                willed_stag,
                rational: n_agents - willed_stag - willed_hare,
                willed_hare,
            });
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompositionRow {
    pub theta: usize,
    pub composition: Composition,
    pub stats: BatchStats,
}

pub fn sweep_composition(
    base: &SimConfig,
    thetas: &[usize],
    compositions: &[Composition],
    n_episodes: usize,
    parallelism: usize,
) -> Result<Vec<CompositionRow>, ConfigError> {
    let mut rows = Vec::new();
    for &theta in thetas {
        let config = base.clone().with_threshold(theta);
        for &composition in compositions {
            if composition.total() != config.n_agents {
                return Err(ConfigError::InvalidParameter("composition does not sum to n_agents"));
            }
            let stats = run_batch(&config, &composition.specs(), n_episodes, parallelism)?;
            rows.push(CompositionRow { theta, composition, stats });
        }
    }
    Ok(rows)
}

pub fn composition_csv(rows: &[CompositionRow]) -> CsvTable {
    let mut table = CsvTable::new(&["theta", "n_willed_stag", "n_rational", "n_willed_hare", "mean", "ci95"]);
    for r in rows {
        table.push(vec![
            r.theta.to_string(),
            r.composition.willed_stag.to_string(),
            r.composition.rational.to_string(),
            r.composition.willed_hare.to_string(),
            r.stats.mean.to_string(),
            r.stats.ci95_halfwidth.to_string(),
        ]);
    }
    table
}

/// `-1.0, -0.9, ..., 1.0` without accumulated rounding.
pub fn alpha_grid(step: f64) -> Vec<f64> {
    let n = (2.0 / step).round() as i64;
    (0..=n).map(|i| round_to_grid(-1.0 + 2.0 * i as f64 / n as f64)).collect()
}

fn round_to_grid(x: f64) -> f64 {
    (x * 1e9).round() / 1e9
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StrengthRow {
    pub theta: usize,
    pub alpha: f64,
    pub stats: BatchStats,
}

/// Homogeneous populations of hybrid agents, one batch per `(theta, alpha)`.
pub fn sweep_strength(
    base: &SimConfig,
    thetas: &[usize],
    alphas: &[f64],
    n_episodes: usize,
    parallelism: usize,
) -> Result<Vec<StrengthRow>, ConfigError> {
    let mut rows = Vec::new();
    for &theta in thetas {
        let config = base.clone().with_threshold(theta);
        for &alpha in alphas {
            let specs = vec![AgentSpec::hybrid(alpha); config.n_agents];
            let stats = run_batch(&config, &specs, n_episodes, parallelism)?;
            rows.push(StrengthRow { theta, alpha, stats });
        }
    }
    Ok(rows)
}

pub fn strength_csv(rows: &[StrengthRow]) -> CsvTable {
    let mut table = CsvTable::new(&["theta", "alpha", "mean", "ci95"]);
    for r in rows {
        table.push(vec![
            r.theta.to_string(),
            r.alpha.to_string(),
            r.stats.mean.to_string(),
            r.stats.ci95_halfwidth.to_string(),
        ]);
    }
    table
}

/// The schedules compared in the endogenous-will experiment.
pub fn default_strategies() -> Vec<EndogenousStrategy> {
    use EndogenousStrategy::*;
    vec![
        PureRational,
        Intermittent(0.5),
        Phased(0.5),
        Intermittent(0.2),
        Phased(0.2),
        Intermittent(0.1),
        Phased(0.1),
        Instant,
    ]
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EndogenousRow {
    pub strategy: EndogenousStrategy,
    pub rational_ratio: f64,
    pub stag_share: f64,
    pub stats: BatchStats,
}

pub fn run_endogenous(
    base: &SimConfig,
    strategies: &[EndogenousStrategy],
    stag_shares: &[f64],
    n_episodes: usize,
    parallelism: usize,
) -> Result<Vec<EndogenousRow>, ConfigError> {
    let mut rows = Vec::new();
    for &stag_share in stag_shares {
        let config = base.clone().with_stag_share(stag_share);
        for &strategy in strategies {
            let specs = vec![AgentSpec::endogenous(strategy); config.n_agents];
            let stats = run_batch(&config, &specs, n_episodes, parallelism)?;
            rows.push(EndogenousRow {
                strategy,
                rational_ratio: strategy.rational_ratio(config.horizon),
                stag_share,
                stats,
            });
        }
    }
    Ok(rows)
}

pub fn endogenous_csv(rows: &[EndogenousRow]) -> CsvTable {
    let mut table = CsvTable::new(&["strategy", "k", "rs_bar", "mean", "ci95"]);
    for r in rows {
        table.push(vec![
            r.strategy.name().to_string(),
            r.rational_ratio.to_string(),
            r.stag_share.to_string(),
            r.stats.mean.to_string(),
            r.stats.ci95_halfwidth.to_string(),
        ]);
    }
    table
}
