//! Agent decision rules: willed potential descent, Bayesian goal inference,
//! Monte Carlo planning and the schedules that mix them.

mod agent;
mod belief;
mod planner;
mod willed;

pub use agent::{act, AgentMemory, Decision, WillClock};
pub use belief::{boltzmann_action_dist, update_beliefs, Belief, BoltzmannKernel};
pub use planner::{goal_values, rational_action, rollout_value};
pub use willed::{potential, willed_action, willed_decision, TargetSet};
