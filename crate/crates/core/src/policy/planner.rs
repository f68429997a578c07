//! Monte Carlo goal selection.
//!
//! For each of `samples` draws of peer goals from the belief, every alive
//! prey is scored by a rollout in which the planner walks straight to it and
//! each peer follows the Boltzmann policy toward its drawn goal. The prey
//! with the best average discounted reward wins.
//!
//! Only peers drawn toward the same prey can influence the planner's reward
//! (peers hunt only on their own goal, and each cell holds one prey), so a
//! rollout simulates just those contenders. Uncontested hares and
//! understaffed stags are scored in closed form.

use rand::Rng;

use crate::config::{Action, Position, PreyKind, RationalParams, SimConfig};
use crate::env::{GridState, Prey};
use crate::error::PolicyError;
use crate::policy::belief::{Belief, BoltzmannKernel};
use crate::policy::willed::step_toward;

/// Discounted reward of `agent` when it commits to `own_goal` for the rest
/// of the episode while every other undone agent `j` pursues
/// `peer_goals[j]` (`None` peers and done peers are ignored).
pub fn rollout_value<R: Rng + ?Sized>(
    state: &GridState,
    agent: usize,
    own_goal: usize,
    peer_goals: &[Option<usize>],
    config: &SimConfig,
    params: &RationalParams,
    rng: &mut R,
) -> f64 {
    let contenders: Vec<Position> = peer_goals
        .iter()
        .enumerate()
        .filter(|&(j, g)| j != agent && !state.agent_done[j] && *g == Some(own_goal))
        .map(|(j, _)| state.agent_positions[j])
        .collect();
    let kernel = BoltzmannKernel::new(params.beta);
    Rollout::new(state, config, params, &kernel).value(
        state.agent_positions[agent],
        &state.prey[own_goal],
        &contenders,
        rng,
    )
}

struct Rollout<'a> {
    config: &'a SimConfig,
    kernel: &'a BoltzmannKernel,
    gamma: f64,
    steps_left: usize,
}

impl<'a> Rollout<'a> {
    fn new(state: &GridState, config: &'a SimConfig, params: &RationalParams, kernel: &'a BoltzmannKernel) -> Self {
        Rollout {
            config,
            kernel,
            gamma: params.gamma,
            steps_left: config.horizon.saturating_sub(state.t),
        }
    }

    fn value<R: Rng + ?Sized>(&self, me: Position, goal: &Prey, contenders: &[Position], rng: &mut R) -> f64 {
        if !goal.alive {
            return 0.0;
        }
        let arrival = me.manhattan(goal.position);
        // The hunt happens on the step after arrival, i.e. at tau = distance.
        if arrival >= self.steps_left {
            return 0.0;
        }
        match goal.kind {
            PreyKind::Stag if contenders.len() + 1 < self.config.threshold => 0.0,
            PreyKind::Hare if contenders.is_empty() => self.gamma.powi(arrival as i32) * self.config.hare_reward,
            _ => self.simulate(me, goal, contenders, rng),
        }
    }

    fn simulate<R: Rng + ?Sized>(&self, mut me: Position, goal: &Prey, contenders: &[Position], rng: &mut R) -> f64 {
        let (h, w) = (self.config.grid_height, self.config.grid_width);
        let target = goal.position;
        let mut peers = contenders.to_vec();
        let mut discount = 1.0;
        for _ in 0..self.steps_left {
            let mine = step_toward(me, target);
            let mut peer_hunters = 0;
            for p in peers.iter_mut() {
                let a = self.kernel.sample(*p, target, h, w, rng);
                if a == Action::Hunt {
                    peer_hunters += 1;
                } else {
                    *p = p.moved(a, h, w);
                }
            }
            let me_hunts = mine == Action::Hunt;
            if !me_hunts {
                me = me.moved(mine, h, w);
            }
            let hunters = peer_hunters + me_hunts as usize;
            match goal.kind {
                PreyKind::Hare if hunters > 0 => {
                    // Slot 0 stands for the planner in the hare lottery.
                    let won = me_hunts && (hunters == 1 || rng.random_range(0..hunters) == 0);
                    return if won { discount * self.config.hare_reward } else { 0.0 };
                }
                PreyKind::Stag if hunters >= self.config.threshold => {
                    return if me_hunts {
                        discount * self.config.stag_total() / hunters as f64
                    } else {
                        0.0
                    };
                }
                _ => {}
            }
            discount *= self.gamma;
        }
        0.0
    }
}

/// Picks the prey with the highest estimated value and returns the first
/// step toward it.
pub fn rational_action<R: Rng + ?Sized>(
    state: &GridState,
    agent: usize,
    belief: &Belief,
    config: &SimConfig,
    params: &RationalParams,
    rng: &mut R,
) -> Result<(Action, usize), PolicyError> {
    let values = goal_values(state, agent, belief, config, params, rng)?;
    let mut best: Option<(f64, usize)> = None;
    for (g, v) in values.iter().enumerate() {
        if let Some(v) = *v {
            if best.is_none_or(|(bv, _)| v > bv) {
                best = Some((v, g));
            }
        }
    }
    let goal = best.ok_or(PolicyError::NoAlivePrey)?.1;
    Ok((step_toward(state.agent_positions[agent], state.prey[goal].position), goal))
}

/// Mean rollout value of every prey (`None` for dead prey).
pub fn goal_values<R: Rng + ?Sized>(
    state: &GridState,
    agent: usize,
    belief: &Belief,
    config: &SimConfig,
    params: &RationalParams,
    rng: &mut R,
) -> Result<Vec<Option<f64>>, PolicyError> {
    let candidates: Vec<usize> = state.alive_prey().collect();
    if candidates.is_empty() {
        return Err(PolicyError::NoAlivePrey);
    }
    let n_prey = state.prey.len();
    let peers: Vec<usize> = (0..state.n_agents())
        .filter(|&j| j != agent && !state.agent_done[j])
        .collect();
    let cdfs: Vec<Vec<f64>> = peers
        .iter()
        .map(|&j| {
            belief
                .row(j)
                .iter()
                .scan(0.0, |acc, &b| {
                    *acc += b;
                    Some(*acc)
                })
                .collect()
        })
        .collect();

    let kernel = BoltzmannKernel::new(params.beta);
    let rollout = Rollout::new(state, config, params, &kernel);
    let me = state.agent_positions[agent];
    let mut totals = vec![0.0; n_prey];
    let mut buckets: Vec<Vec<Position>> = vec![Vec::new(); n_prey];
    let samples = params.samples.max(1);
    for _ in 0..samples {
        buckets.iter_mut().for_each(Vec::clear);
        for (&j, cdf) in peers.iter().zip(&cdfs) {
            if let Some(g) = sample_cdf(cdf, rng) {
                buckets[g].push(state.agent_positions[j]);
            }
        }
        for &g in &candidates {
            totals[g] += rollout.value(me, &state.prey[g], &buckets[g], rng);
        }
    }
    let mut values = vec![None; n_prey];
    for &g in &candidates {
        values[g] = Some(totals[g] / samples as f64);
    }
    Ok(values)
}

fn sample_cdf<R: Rng + ?Sized>(cdf: &[f64], rng: &mut R) -> Option<usize> {
    let total = *cdf.last()?;
    if total <= 0.0 {
        return None;
    }
    let u = rng.random::<f64>() * total;
    let i = cdf.partition_point(|&c| c <= u);
    // Skip zero-mass entries that rounding could land on.
    (i..cdf.len()).find(|&k| cdf[k] > if k == 0 { 0.0 } else { cdf[k - 1] })
}
