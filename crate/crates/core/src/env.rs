//! The grid-world stag hunt: placement, synchronous stepping and threshold
//! hunt resolution.
//!
//! Prey never move and stay in the record after death. Every cell holds at
//! most one prey. Agents may share cells freely. An agent that has hunted
//! successfully is done: it is frozen in place and its actions are forced to
//! `Idle` for the rest of the episode.

use rand::seq::index::sample;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::config::{Action, Position, PreyKind, SimConfig};
use crate::error::EnvError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prey {
    pub kind: PreyKind,
    pub position: Position,
    pub alive: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridState {
    pub t: usize,
    pub agent_positions: Vec<Position>,
    pub agent_done: Vec<bool>,
    /// Stags occupy indices `0..n_stags`, hares follow.
    pub prey: Vec<Prey>,
}

impl GridState {
    pub fn n_agents(&self) -> usize {
        self.agent_positions.len()
    }

    /// Index of the alive prey standing on `pos`, if any.
    pub fn alive_prey_at(&self, pos: Position) -> Option<usize> {
        self.prey.iter().position(|p| p.alive && p.position == pos)
    }

    pub fn alive_prey(&self) -> impl Iterator<Item = usize> + '_ {
        self.prey
            .iter()
            .enumerate()
            .filter(|(_, p)| p.alive)
            .map(|(i, _)| i)
    }

    pub fn alive_of_kind(&self, kind: PreyKind) -> impl Iterator<Item = usize> + '_ {
        self.prey
            .iter()
            .enumerate()
            .filter(move |(_, p)| p.alive && p.kind == kind)
            .map(|(i, _)| i)
    }

    pub fn count_alive(&self) -> usize {
        self.prey.iter().filter(|p| p.alive).count()
    }

    pub fn all_done(&self) -> bool {
        self.agent_done.iter().all(|&d| d)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HuntEvent {
    pub prey: usize,
    pub hunters: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepOutcome {
    pub rewards: Vec<f64>,
    /// Successful hunts only.
    pub hunt_events: Vec<HuntEvent>,
    /// The joint action after done agents were forced to idle.
    pub applied_actions: Vec<Action>,
}

/// Places prey on distinct uniformly random cells (stags first) and agents
/// independently uniformly at random.
pub fn reset<R: Rng + ?Sized>(config: &SimConfig, rng: &mut R) -> GridState {
    let cells = config.grid_height * config.grid_width;
    let to_pos = |c: usize| Position::new(c / config.grid_width, c % config.grid_width);
    let prey = sample(rng, cells, config.n_prey())
        .into_iter()
        .enumerate()
        .map(|(i, c)| Prey {
            kind: if i < config.n_stags { PreyKind::Stag } else { PreyKind::Hare },
            position: to_pos(c),
            alive: true,
        })
        .collect();
    let agent_positions = (0..config.n_agents)
        .map(|_| to_pos(rng.random_range(0..cells)))
        .collect();
    GridState {
        t: 0,
        agent_positions,
        agent_done: vec![false; config.n_agents],
        prey,
    }
}

/// Advances one synchronous step.
///
/// Stag hunts pay `threshold * stag_share` split equally among all agents
/// hunting it this step, provided there are at least `threshold` of them.
/// Hare hunts pay `hare_reward`; when several agents hunt one hare in the
/// same step a single winner is drawn uniformly from `rng`.
pub fn step<R: Rng + ?Sized>(
    state: &GridState,
    joint_action: &[Action],
    config: &SimConfig,
    rng: &mut R,
) -> Result<(GridState, StepOutcome), EnvError> {
    if state.t >= config.horizon {
        return Err(EnvError::EpisodeOver {
            t: state.t,
            horizon: config.horizon,
        });
    }
    let n = state.n_agents();
    if joint_action.len() != n {
        return Err(EnvError::ActionCount {
            expected: n,
            got: joint_action.len(),
        });
    }

    let mut next = state.clone();
    let applied: Vec<Action> = joint_action
        .iter()
        .zip(&state.agent_done)
        .map(|(&a, &done)| if done { Action::Idle } else { a })
        .collect();
    for (pos, &a) in next.agent_positions.iter_mut().zip(&applied) {
        *pos = pos.moved(a, config.grid_height, config.grid_width);
    }

    let mut rewards = vec![0.0; n];
    let mut hunt_events = Vec::new();
    let mut hunters: Vec<Vec<usize>> = Vec::new();
    for (i, &a) in applied.iter().enumerate() {
        if a != Action::Hunt {
            continue;
        }
        if let Some(p) = state.alive_prey_at(next.agent_positions[i]) {
            if hunters.is_empty() {
                hunters = vec![Vec::new(); state.prey.len()];
            }
            hunters[p].push(i);
        }
    }
    for (p, group) in hunters.into_iter().enumerate() {
        if group.is_empty() {
            continue;
        }
        let winners = match next.prey[p].kind {
            PreyKind::Stag => {
                if group.len() < config.threshold {
                    continue;
                }
                let share = config.stag_total() / group.len() as f64;
                for &i in &group {
                    rewards[i] = share;
                }
                group
            }
            PreyKind::Hare => {
                let winner = if group.len() == 1 {
                    group[0]
                } else {
                    group[rng.random_range(0..group.len())]
                };
                rewards[winner] = config.hare_reward;
                vec![winner]
            }
        };
        for &i in &winners {
            next.agent_done[i] = true;
        }
        next.prey[p].alive = false;
        hunt_events.push(HuntEvent {
            prey: p,
            hunters: winners,
        });
    }
    next.t += 1;
    Ok((
        next,
        StepOutcome {
            rewards,
            hunt_events,
            applied_actions: applied,
        },
    ))
}

/// Best total reward a population could collect in one episode: staff
/// `s` stags with exactly `threshold` hunters each and send everyone else
/// after hares, maximized over the feasible `s`.
pub fn max_group_payoff(config: &SimConfig) -> f64 {
    let theta = config.threshold.max(1);
    let max_staffed = config.n_stags.min(config.n_agents / theta);
    (0..=max_staffed)
        .map(|s| {
            let hare_hunters = (config.n_agents - s * theta).min(config.n_hares);
            s as f64 * config.stag_total() + hare_hunters as f64 * config.hare_reward
        })
        .fold(0.0, f64::max)
}

/// Episode reward as a fraction of [`max_group_payoff`], clamped to `[0, 1]`.
pub fn normalized_group_payoff(total_reward: f64, config: &SimConfig) -> f64 {
    let max = max_group_payoff(config);
    if max <= 0.0 {
        return 0.0;
    }
    (total_reward / max).clamp(0.0, 1.0)
}
