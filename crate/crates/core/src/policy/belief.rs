//! Goal inference over peers.
//!
//! Peers are modeled as noisily goal-directed: the probability of an action
//! toward goal `g` is a softmax of `-beta` times the Manhattan distance to
//! `g` after the move. A peer standing on its goal hunts; the mass Idle
//! would receive goes to Hunt instead.

use rand::Rng;

use crate::config::{Action, Position};
use crate::env::GridState;

/// `exp(-beta * k)` for the three possible distance gaps between the
/// candidate moves of one step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoltzmannKernel {
    weights: [f64; 3],
}

impl BoltzmannKernel {
    pub fn new(beta: f64) -> Self {
        BoltzmannKernel {
            weights: [1.0, (-beta).exp(), (-2.0 * beta).exp()],
        }
    }

    /// Action distribution for a peer at `pos` heading to `goal`, indexed by
    /// [`Action::index`].
    pub fn distribution(&self, pos: Position, goal: Position, height: usize, width: usize) -> [f64; 6] {
        let mut dists = [0usize; 5];
        for (d, a) in dists.iter_mut().zip(Action::MOVEMENT) {
            *d = pos.moved(a, height, width).manhattan(goal);
        }
        let dmin = *dists.iter().min().unwrap();
        let mut probs = [0.0; 6];
        let mut total = 0.0;
        for (p, &d) in probs.iter_mut().zip(&dists) {
            // Moves change the distance by at most one, so gaps are 0..=2.
            *p = self.weights[d - dmin];
            total += *p;
        }
        if pos == goal {
            probs[Action::Hunt.index()] = probs[Action::Idle.index()];
            probs[Action::Idle.index()] = 0.0;
        }
        for p in probs.iter_mut() {
            *p /= total;
        }
        probs
    }

    pub fn sample<R: Rng + ?Sized>(
        &self,
        pos: Position,
        goal: Position,
        height: usize,
        width: usize,
        rng: &mut R,
    ) -> Action {
        let probs = self.distribution(pos, goal, height, width);
        let u: f64 = rng.random();
        let mut acc = 0.0;
        for a in Action::ALL {
            acc += probs[a.index()];
            if u < acc {
                return a;
            }
        }
        // u landed in the rounding gap above the last non-zero entry
        *Action::ALL
            .iter()
            .rev()
            .find(|a| probs[a.index()] > 0.0)
            .unwrap()
    }
}

/// Probability of each action for `peer` if its goal were `goal_prey`.
pub fn boltzmann_action_dist(state: &GridState, peer: usize, goal_prey: usize, beta: f64, height: usize, width: usize) -> [f64; 6] {
    BoltzmannKernel::new(beta).distribution(
        state.agent_positions[peer],
        state.prey[goal_prey].position,
        height,
        width,
    )
}

/// Posterior over every agent's target prey.
///
/// Holds one row per agent in the episode. Because the likelihood of an
/// observed action does not depend on who observes it, observers that
/// share a `beta` hold identical beliefs; an observer simply ignores its
/// own row.
#[derive(Debug, Clone, PartialEq)]
pub struct Belief {
    rows: Vec<Vec<f64>>,
}

impl Belief {
    pub fn uniform(n_agents: usize, n_prey: usize) -> Self {
        let p = if n_prey == 0 { 0.0 } else { 1.0 / n_prey as f64 };
        Belief {
            rows: vec![vec![p; n_prey]; n_agents],
        }
    }

    pub fn from_rows(rows: Vec<Vec<f64>>) -> Self {
        Belief { rows }
    }

    pub fn row(&self, peer: usize) -> &[f64] {
        &self.rows[peer]
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    /// Bayesian update from the joint action observed in `prev`, followed by
    /// removal of prey that are dead in `next`. Rows of agents done in
    /// either state are frozen.
    ///
    /// Returns the peers whose posterior lost all mass; those rows are reset
    /// to uniform over the prey still alive.
    pub fn update(
        &mut self,
        prev: &GridState,
        next: &GridState,
        actions: &[Action],
        kernel: &BoltzmannKernel,
        height: usize,
        width: usize,
    ) -> Vec<usize> {
        let mut degenerate = Vec::new();
        for (j, row) in self.rows.iter_mut().enumerate() {
            if prev.agent_done[j] || next.agent_done[j] {
                continue;
            }
            let pos = prev.agent_positions[j];
            let a = actions[j].index();
            let mut total = 0.0;
            for (g, b) in row.iter_mut().enumerate() {
                if *b == 0.0 {
                    continue;
                }
                let likelihood = if next.prey[g].alive {
                    kernel.distribution(pos, prev.prey[g].position, height, width)[a]
                } else {
                    0.0
                };
                *b *= likelihood;
                total += *b;
            }
            if total > 0.0 && total.is_finite() {
                row.iter_mut().for_each(|b| *b /= total);
            } else {
                reset_row(row, next);
                degenerate.push(j);
            }
        }
        degenerate
    }

    /// Zeroes the columns of dead prey in the rows of agents that are not
    /// done, and renormalizes.
    pub fn forget_dead(&mut self, state: &GridState) -> Vec<usize> {
        let mut degenerate = Vec::new();
        for (j, row) in self.rows.iter_mut().enumerate() {
            if state.agent_done[j] {
                continue;
            }
            let mut changed = false;
            for (b, prey) in row.iter_mut().zip(&state.prey) {
                if !prey.alive && *b != 0.0 {
                    *b = 0.0;
                    changed = true;
                }
            }
            if !changed {
                continue;
            }
            let total: f64 = row.iter().sum();
            if total > 0.0 {
                row.iter_mut().for_each(|b| *b /= total);
            } else {
                reset_row(row, state);
                degenerate.push(j);
            }
        }
        degenerate
    }
}

fn reset_row(row: &mut [f64], state: &GridState) {
    let alive = state.count_alive();
    for (b, prey) in row.iter_mut().zip(&state.prey) {
        *b = if alive == 0 {
            1.0 / state.prey.len() as f64
        } else if prey.alive {
            1.0 / alive as f64
        } else {
            0.0
        };
    }
}

/// Functional form of [`Belief::update`] for a state transition with no
/// prey deaths in between.
pub fn update_beliefs(belief: &Belief, prev: &GridState, actions: &[Action], beta: f64, height: usize, width: usize) -> Belief {
    let mut next = belief.clone();
    next.update(prev, prev, actions, &BoltzmannKernel::new(beta), height, width);
    next
}
