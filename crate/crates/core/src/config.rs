//! Shared vocabulary: simulation parameters, grid coordinates, the action set
//! and per-agent decision specs.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::ConfigError;

/// Full parameterization of one Markov stag hunt.
///
/// `stag_share` is the effective per-hunter share; the total reward paid out
/// for a captured stag is `stag_share * threshold`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SimConfig {
    pub grid_height: usize,
    pub grid_width: usize,
    pub n_agents: usize,
    pub n_stags: usize,
    pub n_hares: usize,
    pub hare_reward: f64,
    pub stag_share: f64,
    pub threshold: usize,
    pub horizon: usize,
    pub master_seed: u64,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            grid_height: 20,
            grid_width: 20,
            n_agents: 20,
            n_stags: 3,
            n_hares: 20,
            hare_reward: 1.0,
            stag_share: 5.0,
            threshold: 3,
            horizon: 50,
            master_seed: 0,
        }
    }
}

impl SimConfig {
    /// The smaller world used for will-strength evolution: 10 agents, two
    /// stags, ten hares, a stag share of 10 and ten steps.
    pub fn evolution_default() -> Self {
        SimConfig {
            n_agents: 10,
            n_stags: 2,
            n_hares: 10,
            stag_share: 10.0,
            horizon: 10,
            ..SimConfig::default()
        }
    }

    pub fn with_threshold(mut self, threshold: usize) -> Self {
        self.threshold = threshold;
        self
    }

    pub fn with_horizon(mut self, horizon: usize) -> Self {
        self.horizon = horizon;
        self
    }

    pub fn with_stag_share(mut self, stag_share: f64) -> Self {
        self.stag_share = stag_share;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.master_seed = seed;
        self
    }

    pub fn n_prey(&self) -> usize {
        self.n_stags + self.n_hares
    }

    /// Total reward paid for one captured stag.
    pub fn stag_total(&self) -> f64 {
        self.stag_share * self.threshold as f64
    }

    /// Checks every invariant; reports the first violated one.
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.grid_height == 0 {
            return Err(ConfigError::InvalidParameter("grid_height must be positive"));
        }
        if self.grid_width == 0 {
            return Err(ConfigError::InvalidParameter("grid_width must be positive"));
        }
        if self.n_agents == 0 {
            return Err(ConfigError::InvalidParameter("n_agents must be positive"));
        }
        if self.threshold == 0 {
            return Err(ConfigError::InvalidParameter("threshold must be at least 1"));
        }
        if self.horizon == 0 {
            return Err(ConfigError::InvalidParameter("horizon must be at least 1"));
        }
        if self.threshold > self.n_agents {
            return Err(ConfigError::ThresholdExceedsAgents {
                threshold: self.threshold,
                n_agents: self.n_agents,
            });
        }
        let cells = self.grid_height * self.grid_width;
        if cells < self.n_prey() {
            return Err(ConfigError::GridTooSmall {
                cells,
                prey: self.n_prey(),
            });
        }
        for (name, value) in [("hare_reward", self.hare_reward), ("stag_share", self.stag_share)] {
            if !(value >= 0.0) || !value.is_finite() {
                return Err(ConfigError::NegativeReward { field: name, value });
            }
        }
        Ok(())
    }

    pub fn from_json_str(text: &str) -> Result<Self, ConfigError> {
        let config: SimConfig =
            serde_json::from_str(text).map_err(|e| ConfigError::Parse(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn from_json_file(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError::Parse(format!("{}: {e}", path.display())))?;
        Self::from_json_str(&text)
    }
}

/// Grid cell, `(row, col)`; row 0 is the top edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Position {
    pub row: usize,
    pub col: usize,
}

impl Position {
    pub const fn new(row: usize, col: usize) -> Self {
        Position { row, col }
    }

    pub fn manhattan(self, other: Position) -> usize {
        self.row.abs_diff(other.row) + self.col.abs_diff(other.col)
    }

    /// Position after taking `action`; moves that would leave the grid stay put.
    pub fn moved(self, action: Action, height: usize, width: usize) -> Position {
        match action {
            Action::Left if self.col > 0 => Position::new(self.row, self.col - 1),
            Action::Right if self.col + 1 < width => Position::new(self.row, self.col + 1),
            Action::Up if self.row > 0 => Position::new(self.row - 1, self.col),
            Action::Down if self.row + 1 < height => Position::new(self.row + 1, self.col),
            _ => self,
        }
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.row, self.col)
    }
}

/// The six agent actions. Declaration order is the canonical tie-breaking
/// order used everywhere in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Action {
    Idle,
    Left,
    Right,
    Up,
    Down,
    Hunt,
}

impl Action {
    pub const ALL: [Action; 6] = [
        Action::Idle,
        Action::Left,
        Action::Right,
        Action::Up,
        Action::Down,
        Action::Hunt,
    ];

    /// Idle plus the four moves.
    pub const MOVEMENT: [Action; 5] = [
        Action::Idle,
        Action::Left,
        Action::Right,
        Action::Up,
        Action::Down,
    ];

    pub fn index(self) -> usize {
        self as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PreyKind {
    Stag,
    Hare,
}

/// Parameters of the Monte Carlo planner: Boltzmann rationality attributed
/// to peers, number of sampled goal assignments, and the rollout discount.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RationalParams {
    pub beta: f64,
    pub samples: usize,
    pub gamma: f64,
}

impl Default for RationalParams {
    fn default() -> Self {
        RationalParams {
            beta: 10.0,
            samples: 15,
            gamma: 0.98,
        }
    }
}

/// Schedules for agents that pick their own target by planning and then
/// pursue it by potential descent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum EndogenousStrategy {
    /// Replans every step.
    PureRational,
    /// Replans whenever `t mod round(1/k) == 0`.
    Intermittent(f64),
    /// Replans on every step `t < ceil(k T)`, then keeps the last target.
    Phased(f64),
    /// Plans once at `t = 0`.
    Instant,
}

impl EndogenousStrategy {
    pub fn name(&self) -> &'static str {
        match self {
            EndogenousStrategy::PureRational => "pure_rational",
            EndogenousStrategy::Intermittent(_) => "intermittent",
            EndogenousStrategy::Phased(_) => "phased",
            EndogenousStrategy::Instant => "instant",
        }
    }

    /// Fraction of steps spent planning, as reported in result tables.
    pub fn rational_ratio(&self, horizon: usize) -> f64 {
        match *self {
            EndogenousStrategy::PureRational => 1.0,
            EndogenousStrategy::Intermittent(k) | EndogenousStrategy::Phased(k) => k,
            EndogenousStrategy::Instant => 1.0 / horizon as f64,
        }
    }

    /// Whether an agent following this schedule replans at step `t`.
    pub fn replans_at(&self, t: usize, horizon: usize) -> bool {
        match *self {
            EndogenousStrategy::PureRational => true,
            EndogenousStrategy::Intermittent(k) => {
                let period = ((1.0 / k).round() as usize).max(1);
                t % period == 0
            }
            EndogenousStrategy::Phased(k) => t < ceil_steps(k, horizon),
            EndogenousStrategy::Instant => t == 0,
        }
    }
}

/// `ceil(fraction * horizon)`, ignoring floating-point dust so that
/// `0.3 * 10` is 3 steps rather than 4.
pub fn ceil_steps(fraction: f64, horizon: usize) -> usize {
    let raw = fraction.abs() * horizon as f64;
    let nearest = raw.round();
    if (raw - nearest).abs() < 1e-9 {
        nearest as usize
    } else {
        raw.ceil() as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum AgentMode {
    /// Permanently committed to the nearest alive prey of one kind.
    Willed(PreyKind),
    Rational,
    /// Willed for the first `ceil(|alpha| T)` steps (stags if positive,
    /// hares if negative), rational afterwards.
    Hybrid(f64),
    Endogenous(EndogenousStrategy),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AgentSpec {
    pub mode: AgentMode,
    pub rational: RationalParams,
}

impl AgentSpec {
    pub fn new(mode: AgentMode) -> Self {
        AgentSpec {
            mode,
            rational: RationalParams::default(),
        }
    }

    pub fn willed(kind: PreyKind) -> Self {
        Self::new(AgentMode::Willed(kind))
    }

    pub fn rational() -> Self {
        Self::new(AgentMode::Rational)
    }

    pub fn hybrid(alpha: f64) -> Self {
        Self::new(AgentMode::Hybrid(alpha.clamp(-1.0, 1.0)))
    }

    pub fn endogenous(strategy: EndogenousStrategy) -> Self {
        Self::new(AgentMode::Endogenous(strategy))
    }

    pub fn with_rational_params(mut self, params: RationalParams) -> Self {
        self.rational = params;
        self
    }
}
