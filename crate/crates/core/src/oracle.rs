//! Reference semantics.
//!
//! Everything here follows the definitions literally and is meant only for
//! small games: ability sets are computed by enumerating every strategy of the
//! agent, `⪯` is decided by walking parent pointers, and achievement points are
//! found by checking every node against every outcome. Nothing in this module
//! calls into [`crate::eval`].

use std::collections::BTreeSet;

use thiserror::Error;

use crate::formula::Formula;
use crate::game::{AgentId, Game, NodeId};
use crate::sets::{NodeSet, OutcomeSet};

/// Largest per-agent decision node count the oracle is meant for.
pub const MAX_ORACLE_DECISIONS: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("the set contains every outcome; achievement points need a proper subset")]
    FullSet,
    #[error("node {0} is not an outcome in the set")]
    NotInSet(NodeId),
    #[error("expected exactly one achievement witness above {outcome}, found {found}")]
    NotUnique { outcome: NodeId, found: usize },
}

/// A choice of child at each of one agent's decision nodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Strategy {
    choices: Vec<(NodeId, NodeId)>,
}

impl Strategy {
    pub fn choice(&self, n: NodeId) -> Option<NodeId> {
        self.choices.iter().find(|(m, _)| *m == n).map(|(_, c)| *c)
    }

    pub fn len(&self) -> usize {
        self.choices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.choices.is_empty()
    }
}

fn is_below(game: &Game, w: NodeId, n: NodeId) -> bool {
    game.path_to_root(w).expect("valid node").contains(&n)
}

fn decisions_of(game: &Game, agent: Option<AgentId>, n: NodeId, out: &mut Vec<NodeId>) {
    if agent.is_some() && game.owner(n) == agent {
        out.push(n);
    }
    for &c in game.children(n) {
        decisions_of(game, agent, c, out);
    }
}

/// Number of decision nodes labelled `agent` in the whole game.
pub fn decision_count(game: &Game, agent: &str) -> usize {
    let mut nodes = Vec::new();
    decisions_of(game, game.agent_id(agent), game.root(), &mut nodes);
    nodes.len()
}

/// Whether every agent stays within [`MAX_ORACLE_DECISIONS`].
pub fn within_oracle_scale(game: &Game) -> bool {
    game.agents().iter().all(|a| decision_count(game, a) <= MAX_ORACLE_DECISIONS)
}

/// Size of `agent`'s strategy space over the subtree at `n` (saturating).
pub fn strategy_count(game: &Game, agent: &str, n: NodeId) -> u128 {
    let mut nodes = Vec::new();
    decisions_of(game, game.agent_id(agent), n, &mut nodes);
    nodes.iter().fold(1u128, |acc, &m| acc.saturating_mul(game.children(m).len() as u128))
}

/// Every strategy of `agent` restricted to the subtree at `n`.
pub fn strategies<'g>(game: &'g Game, agent: &str, n: NodeId) -> impl Iterator<Item = Strategy> + 'g {
    let mut nodes = Vec::new();
    decisions_of(game, game.agent_id(agent), n, &mut nodes);
    let mut counter: Option<Vec<usize>> = Some(vec![0; nodes.len()]);
    std::iter::from_fn(move || {
        let current = counter.as_mut()?;
        let strategy =
            Strategy { choices: nodes.iter().zip(current.iter()).map(|(&m, &k)| (m, game.children(m)[k])).collect() };
        // Odometer increment.
        let mut i = 0;
        loop {
            if i == current.len() {
                counter = None;
                break;
            }
            current[i] += 1;
            if current[i] < game.children(nodes[i]).len() {
                break;
            }
            current[i] = 0;
            i += 1;
        }
        Some(strategy)
    })
}

/// Whether every play from `n` that follows `strategy` ends in `x`.
fn forces(game: &Game, strategy: &Strategy, n: NodeId, x: &OutcomeSet) -> bool {
    if let Some(i) = game.outcome_index(n) {
        return x.contains(i);
    }
    match strategy.choice(n) {
        Some(c) => forces(game, strategy, c, x),
        None => game.children(n).iter().all(|&c| forces(game, strategy, c, x)),
    }
}

/// Nodes from which `agent` has a strategy forcing the game into `x`.
pub fn win_ref(game: &Game, agent: &str, x: &OutcomeSet) -> NodeSet {
    let mut out = game.empty_nodes();
    for n in game.nodes() {
        if strategies(game, agent, n).any(|s| forces(game, &s, n, x)) {
            out.insert(n);
        }
    }
    out
}

/// All pairs `(n, a)` with `n` an `x`-achievement point by `a`.
pub fn achievement_points_ref(game: &Game, x: &OutcomeSet) -> BTreeSet<(NodeId, AgentId)> {
    let mut out = BTreeSet::new();
    for n in game.nodes() {
        let Some(parent) = game.parent(n) else { continue };
        let agent = game.owner(parent).expect("parents are decision nodes");
        let outcomes = game.outcomes().iter().enumerate();
        let escapes = outcomes.clone().any(|(i, &w)| is_below(game, w, parent) && !x.contains(i));
        let settled = outcomes.filter(|&(_, &w)| is_below(game, w, n)).all(|(i, _)| x.contains(i));
        if escapes && settled {
            out.insert((n, agent));
        }
    }
    out
}

/// `⟦φ⟧` by direct recursion over the formula.
pub fn truth_set_ref(game: &Game, f: &Formula) -> OutcomeSet {
    let omega = game.all_outcomes();
    match f {
        Formula::Top => omega,
        Formula::Bottom => game.empty_outcomes(),
        Formula::Prop(p) => game.labelled(p),
        Formula::Not(g) => omega.difference(&truth_set_ref(game, g)),
        Formula::And(l, r) => truth_set_ref(game, l).intersection(&truth_set_ref(game, r)),
        Formula::Counterfactual(a, g) => {
            let phi = truth_set_ref(game, g);
            let win = win_ref(game, a, &omega.difference(&phi));
            let mut out = game.empty_outcomes();
            for i in phi.iter() {
                let path = game.path_to_root(game.outcome(i)).expect("valid");
                if path.iter().any(|&n| win.contains(n)) {
                    out.insert(i);
                }
            }
            out
        }
        Formula::SeeTo(a, g) => {
            let phi = truth_set_ref(game, g);
            let win = win_ref(game, a, &phi);
            let agent = game.agent_id(a);
            let points = achievement_points_ref(game, &phi);
            let mut out = game.empty_outcomes();
            for (i, &w) in game.outcomes().iter().enumerate() {
                let path = game.path_to_root(w).expect("valid");
                let kept = path.iter().all(|&n| win.contains(n));
                let achieved = points.iter().any(|&(n, by)| Some(by) == agent && path.contains(&n));
                if kept && achieved {
                    out.insert(i);
                }
            }
            out
        }
    }
}

/// The agent and `x`-achievement point above outcome `w`, checking that there
/// is exactly one such pair.
pub fn unique_achievement_witness(game: &Game, x: &OutcomeSet, w: NodeId) -> Result<(AgentId, NodeId), OracleError> {
    if x.is_full() {
        return Err(OracleError::FullSet);
    }
    match game.contains(w).then(|| game.outcome_index(w)).flatten() {
        Some(i) if x.contains(i) => {}
        _ => return Err(OracleError::NotInSet(w)),
    }
    let found: Vec<_> = achievement_points_ref(game, x).into_iter().filter(|&(n, _)| is_below(game, w, n)).collect();
    match found.as_slice() {
        &[(n, a)] => Ok((a, n)),
        _ => Err(OracleError::NotUnique { outcome: w, found: found.len() }),
    }
}
