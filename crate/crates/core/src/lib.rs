//! Simulation and analysis of cooperation with willed agents.
//!
//! * [`config`]: parameters, coordinates, actions and agent specs.
//! * [`env`]: the grid-world stag hunt.
//! * [`policy`]: willed descent, Bayesian goal inference and Monte Carlo planning.
//! * [`dynamics`]: infinite-population equilibria, Langevin paths and escape times.
//! * [`evolve`]: genetic search over heterogeneous will strengths.
//! * [`harness`]: episodes, batches and experiment sweeps.

pub mod config;
pub mod dynamics;
pub mod env;
pub mod error;
pub mod evolve;
pub mod harness;
pub mod policy;
pub mod rng;
pub mod stats;

pub use config::{Action, AgentMode, AgentSpec, EndogenousStrategy, Position, PreyKind, RationalParams, SimConfig};
pub use error::{ConfigError, DynamicsError, EnvError, PolicyError};
