use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::config::{Action, AgentMode, AgentSpec, PreyKind, SimConfig};
use crate::env::{self, normalized_group_payoff, GridState, HuntEvent};
use crate::error::ConfigError;
use crate::policy::{act, AgentMemory, Belief, BoltzmannKernel};
use crate::rng;

const ENV_STREAM: u64 = 0;
const AGENT_STREAM: u64 = 1;

/// One line of a JSON-lines episode trace.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub t: usize,
    pub joint_action: Vec<Action>,
    pub rewards: Vec<f64>,
    pub hunt_events: Vec<HuntEvent>,
    /// Prey each agent was heading for when it chose its action.
    pub goals: Vec<Option<usize>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpisodeResult {
    pub total_reward: f64,
    pub per_agent_rewards: Vec<f64>,
    pub normalized_payoff: f64,
    pub stags_captured: usize,
    pub hares_captured: usize,
    /// Steps actually simulated; the episode stops early once nobody can
    /// score any more.
    pub steps: usize,
    pub trace: Option<Vec<TraceRecord>>,
}

impl EpisodeResult {
    pub fn write_trace<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for record in self.trace.iter().flatten() {
            serde_json::to_writer(&mut out, record)?;
            out.write_all(b"\n")?;
        }
        Ok(())
    }
}

/// Beliefs are shared by all observers with the same `beta`.
struct BeliefBank {
    entries: Vec<(u64, BoltzmannKernel, Belief)>,
    agent_entry: Vec<Option<usize>>,
}

impl BeliefBank {
    fn new(specs: &[AgentSpec], n_prey: usize) -> Self {
        let mut entries: Vec<(u64, BoltzmannKernel, Belief)> = Vec::new();
        let mut agent_entry = Vec::with_capacity(specs.len());
        for spec in specs {
            if matches!(spec.mode, AgentMode::Willed(_)) {
                agent_entry.push(None);
                continue;
            }
            let key = spec.rational.beta.to_bits();
            let idx = entries.iter().position(|e| e.0 == key).unwrap_or_else(|| {
                entries.push((
                    key,
                    BoltzmannKernel::new(spec.rational.beta),
                    Belief::uniform(specs.len(), n_prey),
                ));
                entries.len() - 1
            });
            agent_entry.push(Some(idx));
        }
        BeliefBank { entries, agent_entry }
    }

    fn update(&mut self, prev: &GridState, next: &GridState, actions: &[Action], config: &SimConfig) {
        for (_, kernel, belief) in self.entries.iter_mut() {
            belief.update(prev, next, actions, kernel, config.grid_height, config.grid_width);
        }
    }
}

/// Runs one episode. Fully determined by `(config, specs, seed)`.
pub fn run_episode(config: &SimConfig, specs: &[AgentSpec], seed: u64, record_trace: bool) -> Result<EpisodeResult, ConfigError> {
    config.validate()?;
    if specs.len() != config.n_agents {
        return Err(ConfigError::InvalidParameter("need exactly one agent spec per agent"));
    }
    let mut env_rng = rng::stream(seed, &[ENV_STREAM]);
    let mut state = env::reset(config, &mut env_rng);
    let mut beliefs = BeliefBank::new(specs, config.n_prey());
    let mut memories: Vec<AgentMemory> = specs.iter().map(|s| AgentMemory::new(s, config.horizon)).collect();
    let placeholder = Belief::uniform(0, 0);

    let mut per_agent = vec![0.0; config.n_agents];
    let (mut stags, mut hares) = (0, 0);
    let mut trace = record_trace.then(Vec::new);

    while state.t < config.horizon && !state.all_done() && state.count_alive() > 0 {
        let mut actions = Vec::with_capacity(config.n_agents);
        let mut goals = Vec::with_capacity(config.n_agents);
        for (i, spec) in specs.iter().enumerate() {
            let belief = beliefs.agent_entry[i].map_or(&placeholder, |e| &beliefs.entries[e].2);
            let mut agent_rng = rng::stream(seed, &[AGENT_STREAM, state.t as u64, i as u64]);
            let d = act(spec, i, &state, belief, &mut memories[i], config, &mut agent_rng);
            actions.push(d.action);
            goals.push(d.goal);
        }
        let (next, outcome) = env::step(&state, &actions, config, &mut env_rng).expect("t < horizon and one action per agent");
        beliefs.update(&state, &next, &outcome.applied_actions, config);
        for (total, r) in per_agent.iter_mut().zip(&outcome.rewards) {
            *total += r;
        }
        for event in &outcome.hunt_events {
            match state.prey[event.prey].kind {
                PreyKind::Stag => stags += 1,
                PreyKind::Hare => hares += 1,
            }
        }
        if let Some(trace) = trace.as_mut() {
            trace.push(TraceRecord {
                t: state.t,
                joint_action: outcome.applied_actions,
                rewards: outcome.rewards,
                hunt_events: outcome.hunt_events,
                goals,
            });
        }
        state = next;
    }

    let total_reward: f64 = per_agent.iter().sum();
    Ok(EpisodeResult {
        total_reward,
        normalized_payoff: normalized_group_payoff(total_reward, config),
        per_agent_rewards: per_agent,
        stags_captured: stags,
        hares_captured: hares,
        steps: state.t,
        trace,
    })
}
