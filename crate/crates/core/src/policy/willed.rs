use crate::config::{Action, Position, PreyKind};
use crate::env::GridState;
use crate::error::PolicyError;

/// Non-empty set of alive prey of a single kind, by index into
/// `GridState::prey`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TargetSet(Vec<usize>);

impl TargetSet {
    /// All alive prey of `kind`.
    pub fn of_kind(state: &GridState, kind: PreyKind) -> Result<Self, PolicyError> {
        Self::from_indices(state, state.alive_of_kind(kind).collect())
    }

    /// A single locked prey.
    pub fn single(state: &GridState, prey: usize) -> Result<Self, PolicyError> {
        Self::from_indices(state, vec![prey])
    }

    pub fn from_indices(state: &GridState, indices: Vec<usize>) -> Result<Self, PolicyError> {
        let valid = !indices.is_empty()
            && indices.iter().all(|&i| state.prey.get(i).is_some_and(|p| p.alive));
        let same_kind = indices
            .windows(2)
            .all(|w| state.prey[w[0]].kind == state.prey[w[1]].kind);
        if valid && same_kind {
            Ok(TargetSet(indices))
        } else {
            Err(PolicyError::EmptyTargetSet)
        }
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }
}

fn nearest(pos: Position, state: &GridState, targets: &TargetSet) -> (usize, usize) {
    targets
        .indices()
        .iter()
        .map(|&g| (pos.manhattan(state.prey[g].position), g))
        .min()
        .expect("target set is non-empty")
}

/// Manhattan distance from the agent to the closest target.
pub fn potential(state: &GridState, agent: usize, targets: &TargetSet) -> usize {
    nearest(state.agent_positions[agent], state, targets).0
}

/// Greedy potential descent: hunt when standing on a target, otherwise the
/// first action in canonical order whose resulting cell minimizes the
/// potential.
pub fn willed_action(state: &GridState, agent: usize, targets: &TargetSet, height: usize, width: usize) -> Action {
    willed_decision(state, agent, targets, height, width).0
}

/// [`willed_action`] plus the index of the closest target (lowest index on ties).
pub fn willed_decision(
    state: &GridState,
    agent: usize,
    targets: &TargetSet,
    height: usize,
    width: usize,
) -> (Action, usize) {
    let pos = state.agent_positions[agent];
    let (dist, goal) = nearest(pos, state, targets);
    if dist == 0 {
        return (Action::Hunt, goal);
    }
    let mut best = (dist, Action::Idle);
    for a in Action::MOVEMENT {
        let d = nearest(pos.moved(a, height, width), state, targets).0;
        if d < best.0 {
            best = (d, a);
        }
    }
    (best.1, goal)
}

/// Descent toward a single cell; used inside rollouts.
pub(crate) fn step_toward(pos: Position, goal: Position) -> Action {
    if pos.col > goal.col {
        Action::Left
    } else if pos.col < goal.col {
        Action::Right
    } else if pos.row > goal.row {
        Action::Up
    } else if pos.row < goal.row {
        Action::Down
    } else {
        Action::Hunt
    }
}
