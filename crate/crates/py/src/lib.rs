//! Python bindings: world configuration, agent specs, episodes, batches,
//! population dynamics and the will-strength GA.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use willsim_core::dynamics::{self, GameKind, PopulationGame, SdeParams, WillShares};
use willsim_core::evolve::{self, GaConfig, Genome};
use willsim_core::harness::{self, EpisodeResult};
use willsim_core::{env, rng, AgentSpec, EndogenousStrategy, PreyKind, SimConfig};

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(name = "SimConfig", module = "willsim")]
struct PySimConfig {
    inner: SimConfig,
}

#[pymethods]
impl PySimConfig {
    #[new]
    #[pyo3(signature = (*, grid_height=20, grid_width=20, n_agents=20, n_stags=3, n_hares=20, hare_reward=1.0, stag_share=5.0, threshold=3, horizon=50, master_seed=0))]
    #[allow(clippy::too_many_arguments)]
    fn new(
        grid_height: usize,
        grid_width: usize,
        n_agents: usize,
        n_stags: usize,
        n_hares: usize,
        hare_reward: f64,
        stag_share: f64,
        threshold: usize,
        horizon: usize,
        master_seed: u64,
    ) -> PyResult<Self> {
        let inner = SimConfig {
            grid_height,
            grid_width,
            n_agents,
            n_stags,
            n_hares,
            hare_reward,
            stag_share,
            threshold,
            horizon,
            master_seed,
        };
        inner.validate().map_err(value_error)?;
        Ok(PySimConfig { inner })
    }

    /// The smaller world used by the GA.
    #[staticmethod]
    fn evolution_default() -> Self {
        PySimConfig { inner: SimConfig::evolution_default() }
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PySimConfig { inner: SimConfig::from_json_str(text).map_err(value_error)? })
    }

    fn with_threshold(&self, threshold: usize) -> PyResult<Self> {
        let inner = self.inner.clone().with_threshold(threshold);
        inner.validate().map_err(value_error)?;
        Ok(PySimConfig { inner })
    }

    fn max_group_payoff(&self) -> f64 {
        env::max_group_payoff(&self.inner)
    }

    #[getter]
    fn n_agents(&self) -> usize {
        self.inner.n_agents
    }

    #[getter]
    fn threshold(&self) -> usize {
        self.inner.threshold
    }

    #[getter]
    fn horizon(&self) -> usize {
        self.inner.horizon
    }

    #[getter]
    fn stag_share(&self) -> f64 {
        self.inner.stag_share
    }

    #[getter]
    fn master_seed(&self) -> u64 {
        self.inner.master_seed
    }

    fn __repr__(&self) -> String {
        format!("{:?}", self.inner)
    }
}

#[pyclass(name = "AgentSpec", module = "willsim")]
struct PyAgentSpec {
    inner: AgentSpec,
}

fn prey_kind(kind: &str) -> PyResult<PreyKind> {
    match kind {
        "stag" => Ok(PreyKind::Stag),
        "hare" => Ok(PreyKind::Hare),
        other => Err(PyValueError::new_err(format!("unknown prey kind {other:?}"))),
    }
}

#[pymethods]
impl PyAgentSpec {
    /// Commits to the nearest prey of `kind` ("stag" or "hare").
    #[staticmethod]
    fn willed(kind: &str) -> PyResult<Self> {
        Ok(PyAgentSpec { inner: AgentSpec::willed(prey_kind(kind)?) })
    }

    #[staticmethod]
    fn rational() -> Self {
        PyAgentSpec { inner: AgentSpec::rational() }
    }

    #[staticmethod]
    fn hybrid(alpha: f64) -> Self {
        PyAgentSpec { inner: AgentSpec::hybrid(alpha) }
    }

    /// `strategy` is one of "pure_rational", "intermittent", "phased",
    /// "instant"; the middle two need `k`.
    #[staticmethod]
    #[pyo3(signature = (strategy, k=None))]
    fn endogenous(strategy: &str, k: Option<f64>) -> PyResult<Self> {
        let need_k = || k.ok_or_else(|| PyValueError::new_err("this strategy needs k"));
        let s = match strategy {
            "pure_rational" => EndogenousStrategy::PureRational,
            "intermittent" => EndogenousStrategy::Intermittent(need_k()?),
            "phased" => EndogenousStrategy::Phased(need_k()?),
            "instant" => EndogenousStrategy::Instant,
            other => return Err(PyValueError::new_err(format!("unknown strategy {other:?}"))),
        };
        Ok(PyAgentSpec { inner: AgentSpec::endogenous(s) })
    }

    fn __repr__(&self) -> String {
        format!("{:?}", self.inner.mode)
    }
}

#[pyclass(name = "EpisodeResult", module = "willsim")]
struct PyEpisodeResult {
    inner: EpisodeResult,
}

#[pymethods]
impl PyEpisodeResult {
    #[getter]
    fn total_reward(&self) -> f64 {
        self.inner.total_reward
    }

    #[getter]
    fn normalized_payoff(&self) -> f64 {
        self.inner.normalized_payoff
    }

    #[getter]
    fn per_agent_rewards(&self) -> Vec<f64> {
        self.inner.per_agent_rewards.clone()
    }

    #[getter]
    fn stags_captured(&self) -> usize {
        self.inner.stags_captured
    }

    #[getter]
    fn hares_captured(&self) -> usize {
        self.inner.hares_captured
    }

    #[getter]
    fn steps(&self) -> usize {
        self.inner.steps
    }

    /// The step trace as JSON lines, if it was recorded.
    fn trace_jsonl(&self) -> PyResult<Option<String>> {
        if self.inner.trace.is_none() {
            return Ok(None);
        }
        let mut buf = Vec::new();
        self.inner.write_trace(&mut buf).map_err(value_error)?;
        Ok(Some(String::from_utf8_lossy(&buf).into_owned()))
    }
}

fn specs_of(specs: &[PyRef<'_, PyAgentSpec>]) -> Vec<AgentSpec> {
    specs.iter().map(|s| s.inner).collect()
}

#[pyfunction]
#[pyo3(signature = (config, specs, seed, trace=false))]
fn run_episode(config: PyRef<'_, PySimConfig>, specs: Vec<PyRef<'_, PyAgentSpec>>, seed: u64, trace: bool) -> PyResult<PyEpisodeResult> {
    let inner = harness::run_episode(&config.inner, &specs_of(&specs), seed, trace).map_err(value_error)?;
    Ok(PyEpisodeResult { inner })
}

/// Returns `(mean, ci95_halfwidth)` of the normalized group payoff.
#[pyfunction]
#[pyo3(signature = (config, specs, n_episodes, parallelism=1))]
fn run_batch(
    config: PyRef<'_, PySimConfig>,
    specs: Vec<PyRef<'_, PyAgentSpec>>,
    n_episodes: usize,
    parallelism: usize,
) -> PyResult<(f64, f64)> {
    let stats = harness::run_batch(&config.inner, &specs_of(&specs), n_episodes, parallelism).map_err(value_error)?;
    Ok((stats.mean, stats.ci95_halfwidth))
}

#[pyfunction]
fn derive_episode_seed(master_seed: u64, episode_index: u64) -> u64 {
    rng::derive_episode_seed(master_seed, episode_index)
}

fn game(name: &str) -> PyResult<PopulationGame> {
    GameKind::ALL
        .into_iter()
        .find(|k| k.name() == name)
        .map(PopulationGame::default_for)
        .ok_or_else(|| PyValueError::new_err(format!("unknown game {name:?}")))
}

/// `[(x_star, classification), ...]` for a default game
/// ("stag_hunt", "snowdrift" or "prisoners_dilemma").
#[pyfunction]
#[pyo3(signature = (game_name, n1, n2, tol=1e-9))]
fn find_equilibria(game_name: &str, n1: f64, n2: f64, tol: f64) -> PyResult<Vec<(f64, &'static str)>> {
    let shares = WillShares::new(n1, n2).map_err(value_error)?;
    let eqs = dynamics::find_equilibria(&game(game_name)?, &shares, tol).map_err(value_error)?;
    Ok(eqs.into_iter().map(|e| (e.x_star, e.classification.name())).collect())
}

#[pyfunction]
fn barrier_integral(game_name: &str, n1: f64, n2: f64) -> PyResult<f64> {
    let shares = WillShares::new(n1, n2).map_err(value_error)?;
    dynamics::barrier_integral(&game(game_name)?, &shares).map_err(value_error)
}

/// Stag hunt escape time from `n1` over the tipping point.
#[pyfunction]
#[pyo3(signature = (n1, sigma, trials, seed=0, move_rate=1.0, dt=1e-3, t_max=1e4, parallelism=1))]
#[allow(clippy::too_many_arguments)]
fn escape_time<'py>(
    py: Python<'py>,
    n1: f64,
    sigma: f64,
    trials: usize,
    seed: u64,
    move_rate: f64,
    dt: f64,
    t_max: f64,
    parallelism: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let shares = WillShares::new(n1, 0.0).map_err(value_error)?;
    let params = SdeParams { move_rate, sigma, dt, t_max };
    let stats = py
        .detach(|| dynamics::escape_time(&PopulationGame::stag_hunt(), &shares, &params, trials, &mut rng::stream(seed, &[]), parallelism))
        .map_err(value_error)?;
    let out = PyDict::new(py);
    out.set_item("mean_tau", stats.mean_tau)?;
    out.set_item("ci95", stats.ci95)?;
    out.set_item("censored_fraction", stats.censored_fraction)?;
    Ok(out)
}

#[pyfunction]
#[pyo3(signature = (alphas, config, episodes, seed=0, parallelism=1))]
fn evaluate_fitness(alphas: Vec<f64>, config: PyRef<'_, PySimConfig>, episodes: usize, seed: u64, parallelism: usize) -> PyResult<f64> {
    evolve::evaluate_fitness(&Genome::new(alphas), &config.inner, episodes, seed, parallelism).map_err(value_error)
}

/// Runs the GA and returns `best`, `best_fitness`, `mean_alpha` and
/// `history` (a list of `(generation, best_fitness, mean_fitness)`).
#[pyfunction]
#[pyo3(signature = (config, seed=0, pop_size=32, generations=60, episodes_per_eval=30, parallelism=1))]
fn run_evolution<'py>(
    py: Python<'py>,
    config: PyRef<'_, PySimConfig>,
    seed: u64,
    pop_size: usize,
    generations: usize,
    episodes_per_eval: usize,
    parallelism: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let ga = GaConfig { pop_size, generations, episodes_per_eval, ..GaConfig::default() };
    let world = config.inner.clone();
    let result = py.detach(|| evolve::evolve(&ga, &world, seed, parallelism)).map_err(value_error)?;
    let out = PyDict::new(py);
    out.set_item("best", result.best.alphas.clone())?;
    out.set_item("best_fitness", result.best_fitness)?;
    out.set_item("mean_alpha", result.mean_alpha())?;
    let history: Vec<(usize, f64, f64)> = result
        .history
        .iter()
        .map(|h| (h.generation, h.best_fitness, h.mean_fitness))
        .collect();
    out.set_item("history", history)?;
    Ok(out)
}

#[pymodule]
fn willsim(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySimConfig>()?;
    m.add_class::<PyAgentSpec>()?;
    m.add_class::<PyEpisodeResult>()?;
    m.add_function(wrap_pyfunction!(run_episode, m)?)?;
    m.add_function(wrap_pyfunction!(run_batch, m)?)?;
    m.add_function(wrap_pyfunction!(derive_episode_seed, m)?)?;
    m.add_function(wrap_pyfunction!(find_equilibria, m)?)?;
    m.add_function(wrap_pyfunction!(barrier_integral, m)?)?;
    m.add_function(wrap_pyfunction!(escape_time, m)?)?;
    m.add_function(wrap_pyfunction!(evaluate_fitness, m)?)?;
    m.add_function(wrap_pyfunction!(run_evolution, m)?)?;
    Ok(())
}
