use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::config::{ceil_steps, Action, AgentMode, AgentSpec, PreyKind, SimConfig};
use crate::env::GridState;
use crate::error::PolicyError;
use crate::policy::belief::Belief;
use crate::policy::planner::rational_action;
use crate::policy::willed::{willed_decision, TargetSet};

/// How long a hybrid agent stays committed, and to which prey kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WillClock {
    pub committed_steps: usize,
    pub target_kind: Option<PreyKind>,
}

impl WillClock {
    pub fn new(alpha: f64, horizon: usize) -> Self {
        let target_kind = if alpha > 0.0 {
            Some(PreyKind::Stag)
        } else if alpha < 0.0 {
            Some(PreyKind::Hare)
        } else {
            None
        };
        WillClock {
            committed_steps: ceil_steps(alpha, horizon),
            target_kind,
        }
    }

    pub fn willed_at(&self, t: usize) -> Option<PreyKind> {
        self.target_kind.filter(|_| t < self.committed_steps)
    }
}

/// Per-agent state threaded through an episode.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct AgentMemory {
    pub will_clock: Option<WillClock>,
    pub locked_target: Option<usize>,
}

impl AgentMemory {
    pub fn new(spec: &AgentSpec, horizon: usize) -> Self {
        AgentMemory {
            will_clock: match spec.mode {
                AgentMode::Hybrid(alpha) => Some(WillClock::new(alpha, horizon)),
                _ => None,
            },
            locked_target: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decision {
    pub action: Action,
    /// The prey the agent is heading for, when it has one.
    pub goal: Option<usize>,
}

impl Decision {
    const IDLE: Decision = Decision {
        action: Action::Idle,
        goal: None,
    };
}

/// Chooses the action of `agent` at step `state.t`.
///
/// * `Willed(kind)` descends toward the nearest alive prey of its kind and
///   idles once that kind is extinct.
/// * `Rational` plans every step.
/// * `Hybrid(alpha)` is willed while its clock runs, rational afterwards, and
///   also rational as soon as its committed kind is extinct.
/// * `Endogenous` plans on its schedule (or when its locked prey has died)
///   and otherwise descends toward the locked prey.
pub fn act<R: Rng + ?Sized>(
    spec: &AgentSpec,
    agent: usize,
    state: &GridState,
    belief: &Belief,
    memory: &mut AgentMemory,
    config: &SimConfig,
    rng: &mut R,
) -> Decision {
    if state.agent_done[agent] {
        return Decision::IDLE;
    }
    let (h, w) = (config.grid_height, config.grid_width);
    let willed = |kind: PreyKind| -> Result<Decision, PolicyError> {
        let targets = TargetSet::of_kind(state, kind)?;
        let (action, goal) = willed_decision(state, agent, &targets, h, w);
        Ok(Decision { action, goal: Some(goal) })
    };
    let rational = |rng: &mut R| -> Decision {
        match rational_action(state, agent, belief, config, &spec.rational, rng) {
            Ok((action, goal)) => Decision { action, goal: Some(goal) },
            Err(_) => Decision::IDLE,
        }
    };

    match spec.mode {
        AgentMode::Willed(kind) => willed(kind).unwrap_or(Decision::IDLE),
        AgentMode::Rational => rational(rng),
        AgentMode::Hybrid(_) => {
            let clock = memory.will_clock.expect("hybrid agents carry a will clock");
            match clock.willed_at(state.t).map(willed) {
                Some(Ok(decision)) => decision,
                _ => rational(rng),
            }
        }
        AgentMode::Endogenous(strategy) => {
            let locked = memory
                .locked_target
                .and_then(|g| TargetSet::single(state, g).ok());
            match locked {
                Some(targets) if !strategy.replans_at(state.t, config.horizon) => {
                    let (action, goal) = willed_decision(state, agent, &targets, h, w);
                    Decision { action, goal: Some(goal) }
                }
                _ => {
                    let decision = rational(rng);
                    memory.locked_target = decision.goal;
                    decision
                }
            }
        }
    }
}
