use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use willsim::dynamics::{self, GameKind, PopulationGame, SdeParams, WillShares};
use willsim::evolve::{self, AlphaGrid, GaConfig};
use willsim::harness::{self, CsvTable};
use willsim::{rng, AgentSpec, ConfigError, DynamicsError, PreyKind, SimConfig};

#[derive(Parser)]
#[command(name = "willsim", version, about = "Stag hunt simulations with willed and rational agents")]
struct Cli {
    #[command(flatten)]
    shared: Shared,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Shared {
    /// JSON file with world parameters; missing fields take defaults.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Master seed (overrides the config file).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Episodes per cell.
    #[arg(long, global = true, default_value_t = 300)]
    episodes: usize,
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    parallelism: Option<usize>,
    /// Output file (a directory for `evolve`). Defaults to stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Episode length (overrides the config file).
    #[arg(long, global = true)]
    horizon: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Run one episode and print its summary as JSON.
    Simulate {
        #[arg(long)]
        threshold: Option<usize>,
        /// Number of agents committed to stags for the whole episode.
        #[arg(long, default_value_t = 0)]
        willed_stag: usize,
        /// Number of agents committed to hares for the whole episode.
        #[arg(long, default_value_t = 0)]
        willed_hare: usize,
        /// Will strength of the remaining agents (0 = rational).
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        alpha: f64,
        /// Write a JSON-lines step trace to this file.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Payoff over thresholds and numbers of willed agents.
    SweepComposition {
        #[arg(long, value_delimiter = ',', default_value = "2,3,4,5,6,7,8")]
        thetas: Vec<usize>,
        /// Spacing of willed-agent counts.
        #[arg(long, default_value_t = 2)]
        step: usize,
        /// Cover every (stag-willed, rational, hare-willed) split instead of
        /// stag-willed versus rational only.
        #[arg(long)]
        ternary: bool,
    },
    /// Payoff of homogeneous hybrid populations over will strength.
    SweepStrength {
        #[arg(long, value_delimiter = ',', default_value = "2,3,4,5,6,7,8")]
        thetas: Vec<usize>,
        #[arg(long, default_value_t = 0.1)]
        alpha_step: f64,
    },
    /// Genetic search over per-agent will strengths.
    Evolve {
        #[arg(long, value_delimiter = ',', default_value = "2,3,4,5,6,7,8")]
        thetas: Vec<usize>,
        #[arg(long, default_value_t = 32)]
        pop_size: usize,
        #[arg(long, default_value_t = 60)]
        generations: usize,
        /// Episodes per fitness evaluation.
        #[arg(long, default_value_t = 30)]
        eval_episodes: usize,
        #[arg(long, default_value_t = 0.05)]
        mutation_rate: f64,
        #[arg(long, default_value_t = 0.9)]
        crossover_rate: f64,
    },
    /// Replanning schedules at two stag rewards.
    Endogenous {
        #[arg(long, default_value_t = 4)]
        threshold: usize,
        #[arg(long, value_delimiter = ',', default_value = "10,50")]
        stag_shares: Vec<f64>,
    },
    /// Infinite-population equilibria or escape times.
    Dynamics {
        #[arg(long, value_enum, default_value_t = DynamicsKind::Equilibria)]
        kind: DynamicsKind,
        /// Grid spacing of the committed shares.
        #[arg(long, default_value_t = 0.1)]
        step: f64,
        #[arg(long, default_value_t = 0.15)]
        sigma: f64,
        #[arg(long, default_value_t = 0.07)]
        move_rate: f64,
        #[arg(long, default_value_t = 1e-3)]
        dt: f64,
        #[arg(long, default_value_t = 1e4)]
        t_max: f64,
        /// Escape trials per point.
        #[arg(long, default_value_t = 500)]
        trials: usize,
        /// Largest n1 of the escape sweep.
        #[arg(long, default_value_t = 0.7)]
        n1_max: f64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum DynamicsKind {
    Equilibria,
    Escape,
}

#[derive(Debug)]
enum CliError {
    Config(String),
    Io(std::io::Error),
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Config(e.to_string())
    }
}

impl From<DynamicsError> for CliError {
    fn from(e: DynamicsError) -> Self {
        CliError::Config(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl Shared {
    fn world(&self, default: SimConfig) -> Result<SimConfig, CliError> {
        let mut config = match &self.config {
            Some(path) => SimConfig::from_json_file(path)?,
            None => default,
        };
        if let Some(seed) = self.seed {
            config.master_seed = seed;
        }
        if let Some(horizon) = self.horizon {
            config.horizon = horizon;
        }
        config.validate()?;
        Ok(config)
    }

    fn parallelism(&self) -> usize {
        self.parallelism
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
            .max(1)
    }

    fn emit(&self, text: &str) -> Result<(), CliError> {
        match &self.out {
            Some(path) => std::fs::write(path, text)?,
            None => std::io::stdout().write_all(text.as_bytes())?,
        }
        Ok(())
    }

    fn emit_csv(&self, table: &CsvTable) -> Result<(), CliError> {
        self.emit(&table.to_string())
    }
}

fn check_thetas(config: &SimConfig, thetas: &[usize]) -> Result<(), CliError> {
    for &theta in thetas {
        config.clone().with_threshold(theta).validate()?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    let shared = &cli.shared;
    let par = shared.parallelism();
    match cli.command {
        Command::Simulate { threshold, willed_stag, willed_hare, alpha, trace } => {
            let mut config = shared.world(SimConfig::default())?;
            if let Some(theta) = threshold {
                config = config.with_threshold(theta);
                config.validate()?;
            }
            if willed_stag + willed_hare > config.n_agents {
                return Err(CliError::Config("more willed agents than agents".into()));
            }
            let mut specs = vec![AgentSpec::willed(PreyKind::Stag); willed_stag];
            specs.extend(vec![AgentSpec::hybrid(alpha); config.n_agents - willed_stag - willed_hare]);
            specs.extend(vec![AgentSpec::willed(PreyKind::Hare); willed_hare]);
            let result = harness::run_episode(&config, &specs, config.master_seed, trace.is_some())?;
            if let Some(path) = trace {
                result.write_trace(std::io::BufWriter::new(std::fs::File::create(path)?))?;
            }
            let summary = serde_json::json!({
                "total_reward": result.total_reward,
                "normalized_payoff": result.normalized_payoff,
                "stags_captured": result.stags_captured,
                "hares_captured": result.hares_captured,
                "steps": result.steps,
                "per_agent_rewards": result.per_agent_rewards,
            });
            shared.emit(&format!("{summary}\n"))
        }
        Command::SweepComposition { thetas, step, ternary } => {
            let config = shared.world(SimConfig::default())?;
            check_thetas(&config, &thetas)?;
            let n = config.n_agents;
            let compositions = if ternary {
                harness::ternary_grid(n, step)
            } else {
                (0..=n).step_by(step.max(1)).map(|k| harness::Composition::stag_vs_rational(k, n)).collect()
            };
            let rows = harness::sweep_composition(&config, &thetas, &compositions, shared.episodes, par)?;
            shared.emit_csv(&harness::composition_csv(&rows))
        }
        Command::SweepStrength { thetas, alpha_step } => {
            let config = shared.world(SimConfig::default().with_horizon(10))?;
            check_thetas(&config, &thetas)?;
            AlphaGrid::new(alpha_step)?;
            let rows = harness::sweep_strength(&config, &thetas, &harness::alpha_grid(alpha_step), shared.episodes, par)?;
            shared.emit_csv(&harness::strength_csv(&rows))
        }
        Command::Evolve { thetas, pop_size, generations, eval_episodes, mutation_rate, crossover_rate } => {
            let config = shared.world(SimConfig::evolution_default())?;
            check_thetas(&config, &thetas)?;
            let ga = GaConfig {
                pop_size,
                generations,
                episodes_per_eval: eval_episodes,
                mutation_rate,
                crossover_rate,
                ..GaConfig::default()
            };
            let grid = ga.validate()?;
            let dir = shared
                .out
                .as_deref()
                .ok_or_else(|| CliError::Config("evolve needs --out <directory>".into()))?;
            std::fs::create_dir_all(dir)?;
            let mut distribution = Vec::new();
            let mut altruism = Vec::new();
            for &theta in &thetas {
                let world = config.clone().with_threshold(theta);
                let seed = rng::derive_seed(config.master_seed, &[theta as u64]);
                let result = evolve::evolve(&ga, &world, seed, par)?;
                write_csv(&dir.join(format!("history_theta{theta}.csv")), &evolve::history_csv(&result.history))?;
                distribution.extend(evolve::distribution_rows(theta, &result, &grid));
                let fresh = rng::derive_seed(seed, &[u64::MAX]);
                altruism.push(evolve::altruism_analysis(&result.best, &world, shared.episodes, fresh, par)?);
            }
            write_csv(&dir.join("distribution.csv"), &evolve::distribution_csv(&distribution))?;
            write_csv(&dir.join("altruism.csv"), &evolve::altruism_csv(&altruism))
        }
        Command::Endogenous { threshold, stag_shares } => {
            let config = shared.world(SimConfig::default())?.with_threshold(threshold);
            config.validate()?;
            let rows = harness::run_endogenous(&config, &harness::default_strategies(), &stag_shares, shared.episodes, par)?;
            shared.emit_csv(&harness::endogenous_csv(&rows))
        }
        Command::Dynamics { kind, step, sigma, move_rate, dt, t_max, trials, n1_max } => {
            if !(step > 0.0 && step <= 1.0) || !(move_rate > 0.0) || !(dt > 0.0) || !(t_max > 0.0) || sigma < 0.0 {
                return Err(CliError::Config("dynamics parameters must be positive".into()));
            }
            let params = SdeParams { move_rate, sigma, dt, t_max };
            match kind {
                DynamicsKind::Equilibria => shared.emit_csv(&equilibria_table(step)?),
                DynamicsKind::Escape => {
                    let seed = shared.seed.unwrap_or(0);
                    shared.emit_csv(&escape_table(&params, step, n1_max, trials, seed, par)?)
                }
            }
        }
    }
}

fn write_csv(path: &Path, table: &CsvTable) -> Result<(), CliError> {
    table.write_to(path)?;
    Ok(())
}

fn equilibria_table(step: f64) -> Result<CsvTable, CliError> {
    let mut table = CsvTable::new(&["game", "n1", "n2", "x_star", "classification"]);
    for kind in GameKind::ALL {
        let game = PopulationGame::default_for(kind);
        for shares in WillShares::grid(step) {
            for eq in dynamics::find_equilibria(&game, &shares, 1e-9)? {
                table.push(vec![
                    kind.name().to_string(),
                    shares.n1.to_string(),
                    shares.n2.to_string(),
                    eq.x_star.to_string(),
                    eq.classification.name().to_string(),
                ]);
            }
        }
    }
    Ok(table)
}

fn escape_table(params: &SdeParams, step: f64, n1_max: f64, trials: usize, seed: u64, par: usize) -> Result<CsvTable, CliError> {
    let game = PopulationGame::stag_hunt();
    let mut table = CsvTable::new(&["n1", "sigma", "mean_tau", "ci95", "censored_fraction", "barrier"]);
    let points = (n1_max / step + 1e-9).floor() as usize;
    for i in 0..=points {
        let shares = WillShares::new((i as f64 * step * 1e9).round() / 1e9, 0.0)?;
        let stats = dynamics::escape_time(&game, &shares, params, trials, &mut rng::stream(seed, &[i as u64]), par)?;
        table.push(vec![
            shares.n1.to_string(),
            params.sigma.to_string(),
            stats.mean_tau.to_string(),
            stats.ci95.to_string(),
            stats.censored_fraction.to_string(),
            dynamics::barrier_integral(&game, &shares)?.to_string(),
        ]);
    }
    Ok(table)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Config(msg)) => {
            eprintln!("config error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Io(e)) => {
            eprintln!("io error: {e}");
            ExitCode::FAILURE
        }
    }
}
