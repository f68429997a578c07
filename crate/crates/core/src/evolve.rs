//! Genetic search over per-agent will strengths.
//!
//! A genome assigns every agent a hybrid strength `α` on a discrete grid.
//! Fitness is the mean normalized group payoff over a fixed set of episode
//! seeds, so it is a pure function of the genome and can be cached.

use std::collections::HashMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::config::{AgentSpec, SimConfig};
use crate::env::max_group_payoff;
use crate::error::ConfigError;
use crate::harness::{run_episode, run_indexed, CsvTable};
use crate::rng::{self, derive_episode_seed, derive_seed};
use crate::stats::BatchStats;

/// Evenly spaced strengths `-1, -1 + step, ..., 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlphaGrid {
    levels: usize,
}

impl AlphaGrid {
    pub fn new(step: f64) -> Result<Self, ConfigError> {
        let n = 2.0 / step;
        if !(step > 0.0) || (n - n.round()).abs() > 1e-9 {
            return Err(ConfigError::InvalidParameter("alpha step must divide 2"));
        }
        Ok(AlphaGrid { levels: n.round() as usize + 1 })
    }

    pub fn len(&self) -> usize {
        self.levels
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn value(&self, level: usize) -> f64 {
        let x = -1.0 + 2.0 * level as f64 / (self.levels - 1) as f64;
        (x * 1e9).round() / 1e9
    }

    /// Nearest level, or `None` when `alpha` is off the grid.
    pub fn level_of(&self, alpha: f64) -> Option<usize> {
        let pos = (alpha + 1.0) * (self.levels - 1) as f64 / 2.0;
        let level = pos.round();
        ((pos - level).abs() < 1e-6 && level >= 0.0 && level < self.levels as f64).then_some(level as usize)
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.levels).map(|l| self.value(l)).collect()
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        self.value(rng.random_range(0..self.levels))
    }
}

impl Default for AlphaGrid {
    fn default() -> Self {
        AlphaGrid { levels: 11 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Genome {
    pub alphas: Vec<f64>,
}

impl Genome {
    pub fn new(alphas: Vec<f64>) -> Self {
        Genome { alphas }
    }

    pub fn uniform(alpha: f64, n_agents: usize) -> Self {
        Genome { alphas: vec![alpha; n_agents] }
    }

    pub fn random<R: Rng + ?Sized>(grid: &AlphaGrid, n_agents: usize, rng: &mut R) -> Self {
        Genome { alphas: (0..n_agents).map(|_| grid.sample(rng)).collect() }
    }

    pub fn mean_alpha(&self) -> f64 {
        self.alphas.iter().sum::<f64>() / self.alphas.len().max(1) as f64
    }

    pub fn is_on_grid(&self, grid: &AlphaGrid) -> bool {
        self.alphas.iter().all(|&a| grid.level_of(a).is_some())
    }

    pub fn specs(&self) -> Vec<AgentSpec> {
        self.alphas.iter().map(|&a| AgentSpec::hybrid(a)).collect()
    }

    fn key(&self) -> Vec<i64> {
        self.alphas.iter().map(|a| (a * 1e6).round() as i64).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GaConfig {
    pub pop_size: usize,
    pub generations: usize,
    pub episodes_per_eval: usize,
    pub tournament_size: usize,
    /// Probability that a child is a uniform crossover of two parents
    /// rather than a copy of the first.
    pub crossover_rate: f64,
    /// Per-gene probability of resampling from the grid.
    pub mutation_rate: f64,
    pub elitism: usize,
    pub alpha_step: f64,
}

impl Default for GaConfig {
    fn default() -> Self {
        GaConfig {
            pop_size: 32,
            generations: 60,
            episodes_per_eval: 30,
            tournament_size: 3,
            crossover_rate: 0.9,
            mutation_rate: 0.05,
            elitism: 2,
            alpha_step: 0.2,
        }
    }
}

impl GaConfig {
    pub fn validate(&self) -> Result<AlphaGrid, ConfigError> {
        if self.pop_size == 0 || self.generations == 0 || self.episodes_per_eval == 0 || self.tournament_size == 0 {
            return Err(ConfigError::InvalidParameter("GA sizes must be positive"));
        }
        if !(0.0..=1.0).contains(&self.crossover_rate) || !(0.0..=1.0).contains(&self.mutation_rate) {
            return Err(ConfigError::InvalidParameter("GA rates must lie in [0, 1]"));
        }
        if self.elitism >= self.pop_size {
            return Err(ConfigError::InvalidParameter("elitism must be smaller than pop_size"));
        }
        AlphaGrid::new(self.alpha_step)
    }
}

/// Mean normalized group payoff of `genome` over episodes
/// `derive_episode_seed(seed, 0..episodes)`.
pub fn evaluate_fitness(
    genome: &Genome,
    config: &SimConfig,
    episodes: usize,
    seed: u64,
    parallelism: usize,
) -> Result<f64, ConfigError> {
    Ok(evaluate_genome(genome, config, episodes, seed, parallelism)?.group.mean)
}

/// Group payoff statistics plus each agent's mean payoff, scaled by
/// `N / P_max` so an equal split of the best outcome gives 1 to everyone.
#[derive(Debug, Clone, PartialEq)]
pub struct GenomeEvaluation {
    pub group: BatchStats,
    pub per_agent: Vec<f64>,
}

pub fn evaluate_genome(
    genome: &Genome,
    config: &SimConfig,
    episodes: usize,
    seed: u64,
    parallelism: usize,
) -> Result<GenomeEvaluation, ConfigError> {
    if genome.alphas.len() != config.n_agents {
        return Err(ConfigError::InvalidParameter("genome length must equal n_agents"));
    }
    let specs = genome.specs();
    let results: Vec<_> = run_indexed(episodes, parallelism, |i| {
        run_episode(config, &specs, derive_episode_seed(seed, i as u64), false)
    })
    .into_iter()
    .collect::<Result<_, _>>()?;
    let group = BatchStats::from_samples(&results.iter().map(|r| r.normalized_payoff).collect::<Vec<_>>());
    let p_max = max_group_payoff(config);
    let scale = if p_max > 0.0 { config.n_agents as f64 / p_max } else { 0.0 };
    let mut per_agent = vec![0.0; config.n_agents];
    for r in &results {
        for (acc, x) in per_agent.iter_mut().zip(&r.per_agent_rewards) {
            *acc += x * scale;
        }
    }
    per_agent.iter_mut().for_each(|x| *x /= episodes.max(1) as f64);
    Ok(GenomeEvaluation { group, per_agent })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GenerationStats {
    pub generation: usize,
    /// Best fitness seen up to and including this generation.
    pub best_fitness: f64,
    pub mean_fitness: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvolutionResult {
    pub best: Genome,
    pub best_fitness: f64,
    pub history: Vec<GenerationStats>,
    /// Last generation with its fitness values.
    pub final_population: Vec<(Genome, f64)>,
}

impl EvolutionResult {
    /// Mean strength over every gene of the final population.
    pub fn mean_alpha(&self) -> f64 {
        let n: usize = self.final_population.iter().map(|(g, _)| g.alphas.len()).sum();
        let total: f64 = self.final_population.iter().flat_map(|(g, _)| &g.alphas).sum();
        total / n.max(1) as f64
    }
}

struct FitnessCache<'a> {
    config: &'a SimConfig,
    episodes: usize,
    seed: u64,
    parallelism: usize,
    known: HashMap<Vec<i64>, f64>,
}

impl FitnessCache<'_> {
    fn evaluate(&mut self, population: &[Genome]) -> Result<Vec<f64>, ConfigError> {
        let mut missing: Vec<&Genome> = Vec::new();
        for g in population {
            if !self.known.contains_key(&g.key()) && !missing.iter().any(|m| m.key() == g.key()) {
                missing.push(g);
            }
        }
        let (config, episodes, seed) = (self.config, self.episodes, self.seed);
        let fresh = run_indexed(missing.len(), self.parallelism, |j| evaluate_fitness(missing[j], config, episodes, seed, 1));
        for (g, f) in missing.iter().zip(fresh) {
            self.known.insert(g.key(), f?);
        }
        Ok(population.iter().map(|g| self.known[&g.key()]).collect())
    }
}

fn tournament<'p, R: Rng + ?Sized>(population: &'p [Genome], fitness: &[f64], size: usize, rng: &mut R) -> &'p Genome {
    let mut best = rng.random_range(0..population.len());
    for _ in 1..size {
        let c = rng.random_range(0..population.len());
        if fitness[c] > fitness[best] {
            best = c;
        }
    }
    &population[best]
}

fn breed<R: Rng + ?Sized>(
    population: &[Genome],
    fitness: &[f64],
    ga: &GaConfig,
    grid: &AlphaGrid,
    rng: &mut R,
) -> Vec<Genome> {
    let mut order: Vec<usize> = (0..population.len()).collect();
    order.sort_by(|&a, &b| fitness[b].total_cmp(&fitness[a]));
    let mut next: Vec<Genome> = order.iter().take(ga.elitism).map(|&i| population[i].clone()).collect();
    while next.len() < ga.pop_size {
        let a = tournament(population, fitness, ga.tournament_size, rng);
        let mut child = if rng.random_bool(ga.crossover_rate) {
            let b = tournament(population, fitness, ga.tournament_size, rng);
            let alphas = a.alphas.iter().zip(&b.alphas).map(|(&x, &y)| if rng.random_bool(0.5) { x } else { y }).collect();
            Genome::new(alphas)
        } else {
            a.clone()
        };
        for gene in child.alphas.iter_mut() {
            if rng.random_bool(ga.mutation_rate) {
                *gene = grid.sample(rng);
            }
        }
        next.push(child);
    }
    next
}

/// Generational GA started from random genomes.
pub fn evolve(ga: &GaConfig, config: &SimConfig, seed: u64, parallelism: usize) -> Result<EvolutionResult, ConfigError> {
    let grid = ga.validate()?;
    let mut rng = rng::stream(seed, &[0]);
    let population = (0..ga.pop_size).map(|_| Genome::random(&grid, config.n_agents, &mut rng)).collect();
    evolve_from(ga, config, population, seed, parallelism)
}

/// Runs the GA from a given initial population. Every generation is scored
/// on the same episode seeds, so with `elitism >= 1` the best fitness never
/// drops.
pub fn evolve_from(
    ga: &GaConfig,
    config: &SimConfig,
    mut population: Vec<Genome>,
    seed: u64,
    parallelism: usize,
) -> Result<EvolutionResult, ConfigError> {
    let grid = ga.validate()?;
    config.validate()?;
    if population.len() != ga.pop_size || population.iter().any(|g| g.alphas.len() != config.n_agents) {
        return Err(ConfigError::InvalidParameter("initial population does not match GA and world sizes"));
    }
    let mut rng = rng::stream(seed, &[1]);
    let mut cache = FitnessCache {
        config,
        episodes: ga.episodes_per_eval,
        seed: derive_seed(seed, &[2]),
        parallelism,
        known: HashMap::new(),
    };

    let mut history = Vec::with_capacity(ga.generations);
    let mut best: Option<(Genome, f64)> = None;
    let mut fitness = Vec::new();
    for generation in 0..ga.generations {
        if generation > 0 {
            population = breed(&population, &fitness, ga, &grid, &mut rng);
        }
        fitness = cache.evaluate(&population)?;
        for (g, &f) in population.iter().zip(&fitness) {
            if best.as_ref().is_none_or(|(_, b)| f > *b) {
                best = Some((g.clone(), f));
            }
        }
        history.push(GenerationStats {
            generation,
            best_fitness: best.as_ref().map_or(f64::NAN, |(_, f)| *f),
            mean_fitness: fitness.iter().sum::<f64>() / fitness.len() as f64,
        });
    }
    let (best, best_fitness) = best.expect("at least one generation");
    Ok(EvolutionResult {
        best,
        best_fitness,
        history,
        final_population: population.into_iter().zip(fitness).collect(),
    })
}

pub fn history_csv(history: &[GenerationStats]) -> CsvTable {
    let mut table = CsvTable::new(&["generation", "best_fitness", "mean_fitness"]);
    for h in history {
        table.push(vec![h.generation.to_string(), h.best_fitness.to_string(), h.mean_fitness.to_string()]);
    }
    table
}

/// Share of final-population genes at each grid level.
pub fn distribution_rows(theta: usize, result: &EvolutionResult, grid: &AlphaGrid) -> Vec<(usize, f64, f64, f64)> {
    let mut counts = vec![0usize; grid.len()];
    let mut n = 0;
    for (g, _) in &result.final_population {
        for &a in &g.alphas {
            if let Some(l) = grid.level_of(a) {
                counts[l] += 1;
                n += 1;
            }
        }
    }
    let mean = result.mean_alpha();
    counts
        .iter()
        .enumerate()
        .map(|(l, &c)| (theta, grid.value(l), c as f64 / n.max(1) as f64, mean))
        .collect()
}

pub fn distribution_csv(rows: &[(usize, f64, f64, f64)]) -> CsvTable {
    let mut table = CsvTable::new(&["theta", "alpha_bin", "population_share", "mean_alpha"]);
    for (theta, bin, share, mean) in rows {
        table.push(vec![theta.to_string(), bin.to_string(), share.to_string(), mean.to_string()]);
    }
    table
}

/// Individual payoffs of the most and least willed members of a genome,
/// next to the group payoff and the all-rational baseline on the same seeds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AltruismRow {
    pub theta: usize,
    pub max_alpha_payoff: f64,
    pub min_alpha_payoff: f64,
    pub group: BatchStats,
    pub rational_baseline: BatchStats,
}

pub fn altruism_analysis(
    genome: &Genome,
    config: &SimConfig,
    episodes: usize,
    seed: u64,
    parallelism: usize,
) -> Result<AltruismRow, ConfigError> {
    let eval = evaluate_genome(genome, config, episodes, seed, parallelism)?;
    let baseline = evaluate_genome(&Genome::uniform(0.0, config.n_agents), config, episodes, seed, parallelism)?;
    let hi = genome.alphas.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let lo = genome.alphas.iter().copied().fold(f64::INFINITY, f64::min);
    let mean_at = |target: f64| {
        let picked: Vec<f64> = genome
            .alphas
            .iter()
            .zip(&eval.per_agent)
            .filter(|(&a, _)| a == target)
            .map(|(_, &p)| p)
            .collect();
        picked.iter().sum::<f64>() / picked.len().max(1) as f64
    };
    Ok(AltruismRow {
        theta: config.threshold,
        max_alpha_payoff: mean_at(hi),
        min_alpha_payoff: mean_at(lo),
        group: eval.group,
        rational_baseline: baseline.group,
    })
}

pub fn altruism_csv(rows: &[AltruismRow]) -> CsvTable {
    let mut table = CsvTable::new(&["theta", "max_alpha_payoff", "min_alpha_payoff", "group_payoff", "rational_baseline"]);
    for r in rows {
        table.push(vec![
            r.theta.to_string(),
            r.max_alpha_payoff.to_string(),
            r.min_alpha_payoff.to_string(),
            r.group.mean.to_string(),
            r.rational_baseline.mean.to_string(),
        ]);
    }
    table
}
