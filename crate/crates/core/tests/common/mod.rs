#![allow(dead_code)]

use rand::Rng;

use willsim::config::{Action, Position, PreyKind, SimConfig};
use willsim::env::{self, GridState};
use willsim::policy::{willed_action, TargetSet};
use willsim::rng;

/// A small world where stag hunts actually happen.
pub fn random_world<R: Rng + ?Sized>(rng: &mut R) -> SimConfig {
    let grid_height = rng.random_range(2..=8);
    let grid_width = rng.random_range(2..=8);
    let cells = grid_height * grid_width;
    let n_agents = rng.random_range(1..=12);
    let n_stags = rng.random_range(0..=3.min(cells));
    let n_hares = rng.random_range(0..=(cells - n_stags).min(6));
    SimConfig {
        grid_height,
        grid_width,
        n_agents,
        n_stags,
        n_hares,
        hare_reward: [1.0, 0.3, 2.5][rng.random_range(0..3)],
        stag_share: [5.0, 10.0, 0.7, 1.0 / 3.0][rng.random_range(0..4)],
        threshold: rng.random_range(1..=n_agents.min(4)),
        horizon: rng.random_range(1..=30),
        master_seed: rng.random(),
    }
}

/// Mostly stag-seeking, sometimes random, joint action.
pub fn mixed_actions<R: Rng + ?Sized>(state: &GridState, config: &SimConfig, rng: &mut R) -> Vec<Action> {
    (0..state.n_agents())
        .map(|i| {
            let kind = if rng.random_bool(0.7) { PreyKind::Stag } else { PreyKind::Hare };
            match TargetSet::of_kind(state, kind) {
                Ok(targets) if rng.random_bool(0.8) => {
                    willed_action(state, i, &targets, config.grid_height, config.grid_width)
                }
                _ => Action::ALL[rng.random_range(0..6)],
            }
        })
        .collect()
}

pub struct EnvRun {
    pub states: Vec<GridState>,
    pub total_reward: f64,
    pub stag_hunts: usize,
}

/// Steps a full episode with [`mixed_actions`] and checks every step
/// invariant of the environment.
pub fn checked_env_episode(config: &SimConfig, seed: u64) -> Result<EnvRun, String> {
    let mut env_rng = rng::stream(seed, &[0]);
    let mut act_rng = rng::stream(seed, &[1]);
    let mut state = env::reset(config, &mut env_rng);
    let mut states = vec![state.clone()];
    let mut total_reward = 0.0;
    let mut stag_hunts = 0;
    let mut paid = vec![false; config.n_agents];
    let stag_total = config.threshold as f64 * config.stag_share;

    if state.prey.len() != config.n_prey() {
        return Err("wrong prey count at reset".into());
    }
    let mut cells: Vec<Position> = state.prey.iter().map(|p| p.position).collect();
    cells.sort_by_key(|p| (p.row, p.col));
    cells.dedup();
    if cells.len() != config.n_prey() {
        return Err("two prey share a cell".into());
    }

    while state.t < config.horizon {
        let actions = mixed_actions(&state, config, &mut act_rng);
        let (next, out) = env::step(&state, &actions, config, &mut env_rng).map_err(|e| e.to_string())?;

        if next.t != state.t + 1 {
            return Err("time did not advance by one".into());
        }
        if next.prey.len() != state.prey.len() {
            return Err("prey count changed".into());
        }
        for (a, b) in state.prey.iter().zip(&next.prey) {
            if a.position != b.position || a.kind != b.kind || (!a.alive && b.alive) {
                return Err("prey moved, changed kind or revived".into());
            }
        }
        for (i, p) in next.agent_positions.iter().enumerate() {
            if p.row >= config.grid_height || p.col >= config.grid_width {
                return Err(format!("agent {i} left the grid"));
            }
            if state.agent_done[i] {
                if *p != state.agent_positions[i] || out.applied_actions[i] != Action::Idle || !next.agent_done[i] {
                    return Err(format!("done agent {i} acted"));
                }
            } else if *p != state.agent_positions[i].moved(actions[i], config.grid_height, config.grid_width) {
                return Err(format!("agent {i} moved wrongly"));
            }
        }

        let mut expected = vec![0.0; config.n_agents];
        let mut killed = 0;
        for ev in &out.hunt_events {
            killed += 1;
            let prey = &state.prey[ev.prey];
            if !prey.alive || next.prey[ev.prey].alive {
                return Err("hunt event on a prey that was dead or survived".into());
            }
            match prey.kind {
                PreyKind::Stag => {
                    stag_hunts += 1;
                    if ev.hunters.len() < config.threshold {
                        return Err("stag taken below threshold".into());
                    }
                    let paid_out: f64 = ev.hunters.iter().map(|&h| out.rewards[h]).sum();
                    if (paid_out - stag_total).abs() > 1e-12 * stag_total.max(1.0) {
                        return Err(format!("stag paid {paid_out}, expected {stag_total}"));
                    }
                    for &h in &ev.hunters {
                        expected[h] = stag_total / ev.hunters.len() as f64;
                    }
                }
                PreyKind::Hare => {
                    if ev.hunters.len() != 1 || out.rewards[ev.hunters[0]] != config.hare_reward {
                        return Err("hare must pay exactly one hunter".into());
                    }
                    expected[ev.hunters[0]] = config.hare_reward;
                }
            }
            for &h in &ev.hunters {
                if next.agent_positions[h] != prey.position || out.applied_actions[h] != Action::Hunt {
                    return Err("rewarded agent was not hunting on the prey".into());
                }
            }
        }
        if state.count_alive() - next.count_alive() != killed {
            return Err("a prey died without a hunt event".into());
        }
        for i in 0..config.n_agents {
            if out.rewards[i] != expected[i] {
                return Err(format!("agent {i} paid outside a hunt event"));
            }
            let rewarded = out.hunt_events.iter().any(|e| e.hunters.contains(&i));
            if rewarded {
                if paid[i] {
                    return Err(format!("agent {i} hunted twice"));
                }
                paid[i] = true;
            }
            if next.agent_done[i] != (state.agent_done[i] || rewarded) {
                return Err(format!("agent {i} done flag is wrong"));
            }
        }
        total_reward += out.rewards.iter().sum::<f64>();
        states.push(next.clone());
        state = next;
    }
    if env::step(&state, &vec![Action::Idle; config.n_agents], config, &mut env_rng).is_ok() {
        return Err("stepping past the horizon succeeded".into());
    }
    Ok(EnvRun { states, total_reward, stag_hunts })
}
