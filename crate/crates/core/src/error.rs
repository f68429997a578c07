use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("threshold {threshold} exceeds the number of agents {n_agents}")]
    ThresholdExceedsAgents { threshold: usize, n_agents: usize },
    #[error("grid has {cells} cells but {prey} prey need distinct cells")]
    GridTooSmall { cells: usize, prey: usize },
    #[error("{field} must be a finite non-negative reward, got {value}")]
    NegativeReward { field: &'static str, value: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
    #[error("could not parse config: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnvError {
    #[error("episode is over (t = {t}, horizon = {horizon})")]
    EpisodeOver { t: usize, horizon: usize },
    #[error("expected {expected} actions, got {got}")]
    ActionCount { expected: usize, got: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolicyError {
    #[error("target set is empty")]
    EmptyTargetSet,
    #[error("no alive prey left")]
    NoAlivePrey,
    #[error("belief about agent {peer} lost all mass")]
    DegenerateBelief { peer: usize },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DynamicsError {
    #[error("feasible region is empty: n1 + n2 = {0} > 1")]
    EmptyFeasibleRegion(f64),
    #[error("no tipping point inside the feasible region")]
    TippingPointOutsideFeasibleRegion,
    #[error("payoff matrix violates the {0} ordering")]
    InvalidGame(&'static str),
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
}
