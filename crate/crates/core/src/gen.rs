//! Seeded random games and formulae for property testing.

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::formula::Formula;
use crate::game::{is_identifier, Game, Tree};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GenError {
    #[error("max_depth and max_branching must be at least 1")]
    ZeroBound,
    #[error("at least one agent is required")]
    NoAgents,
    #[error("leaf label density {0} is outside [0, 1]")]
    Density(f64),
    #[error("`{0}` is not a valid identifier")]
    InvalidIdentifier(String),
    #[error("`{0}` is listed both as an agent and as a proposition")]
    NameClash(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct GenParams {
    pub seed: u64,
    /// Maximal number of nodes on a root-to-leaf path.
    pub max_depth: usize,
    pub max_branching: usize,
    pub agents: Vec<String>,
    pub props: Vec<String>,
    /// Probability that a given outcome is labelled with a given proposition.
    pub leaf_label_density: f64,
}

fn names(prefix: &str, list: &[&str]) -> Vec<String> {
    list.iter().map(|s| format!("{prefix}{s}")).collect()
}

impl GenParams {
    pub fn new(seed: u64, max_depth: usize, max_branching: usize, agents: &[&str], props: &[&str]) -> Self {
        GenParams {
            seed,
            max_depth,
            max_branching,
            agents: names("", agents),
            props: names("", props),
            leaf_label_density: 0.5,
        }
    }

    /// Two agents `a`, `b`; props `p`, `q`; depth 5; branching 3.
    pub fn two_agent(seed: u64) -> Self {
        GenParams::new(seed, 5, 3, &["a", "b"], &["p", "q"])
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        GenParams { seed, ..self.clone() }
    }

    pub fn validate(&self) -> Result<(), GenError> {
        if self.max_depth == 0 || self.max_branching == 0 {
            return Err(GenError::ZeroBound);
        }
        if self.agents.is_empty() {
            return Err(GenError::NoAgents);
        }
        if !(0.0..=1.0).contains(&self.leaf_label_density) {
            return Err(GenError::Density(self.leaf_label_density));
        }
        if let Some(bad) = self.agents.iter().chain(&self.props).find(|s| !is_identifier(s)) {
            return Err(GenError::InvalidIdentifier(bad.clone()));
        }
        if let Some(clash) = self.agents.iter().find(|a| self.props.contains(a)) {
            return Err(GenError::NameClash(clash.clone()));
        }
        Ok(())
    }
}

/// A random game, a deterministic function of `params`.
///
/// Built top-down: a node at level `k` (the root is level 1) becomes an
/// outcome with probability `(k-1)/(max_depth-1)`, so the root is a decision
/// node whenever `max_depth > 1` and level `max_depth` is all outcomes.
pub fn random_game(params: &GenParams) -> Result<Game, GenError> {
    params.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let tree = grow(&mut rng, params, 1);
    Ok(Game::from_tree(&tree).expect("generated names are validated"))
}

fn grow(rng: &mut ChaCha8Rng, params: &GenParams, level: usize) -> Tree {
    let stop = level >= params.max_depth || rng.random_bool((level - 1) as f64 / (params.max_depth - 1) as f64);
    if stop {
        let props = params.props.iter().filter(|_| rng.random_bool(params.leaf_label_density)).cloned();
        return Tree::Outcome(props.collect());
    }
    let agent = params.agents.choose(rng).expect("validated").clone();
    let width = rng.random_range(1..=params.max_branching);
    let children = (0..width).map(|_| grow(rng, params, level + 1)).collect();
    Tree::Decision { agent, children }
}

/// Shape of random formulae.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormulaParams {
    pub agents: Vec<String>,
    pub props: Vec<String>,
    pub max_modal_depth: usize,
    /// Maximal height of the syntax tree.
    pub max_height: usize,
}

impl FormulaParams {
    pub fn new(agents: &[String], props: &[String], max_modal_depth: usize, max_height: usize) -> Self {
        FormulaParams { agents: agents.to_vec(), props: props.to_vec(), max_modal_depth, max_height }
    }
}

/// A random formula over the given names.
pub fn random_formula<R: Rng + ?Sized>(rng: &mut R, params: &FormulaParams) -> Formula {
    formula_at(rng, params, params.max_height, params.max_modal_depth)
}

fn atom<R: Rng + ?Sized>(rng: &mut R, params: &FormulaParams) -> Formula {
    if params.props.is_empty() || rng.random_ratio(1, 10) {
        if rng.random_bool(0.5) {
            Formula::Top
        } else {
            Formula::Bottom
        }
    } else {
        Formula::prop(params.props.choose(rng).expect("nonempty").clone())
    }
}

fn formula_at<R: Rng + ?Sized>(rng: &mut R, params: &FormulaParams, height: usize, modal: usize) -> Formula {
    if height <= 1 {
        return atom(rng, params);
    }
    let can_modal = modal > 0 && !params.agents.is_empty();
    match rng.random_range(0..10) {
        0..=1 => atom(rng, params),
        2..=3 => Formula::not(formula_at(rng, params, height - 1, modal)),
        4..=5 => Formula::and(formula_at(rng, params, height - 1, modal), formula_at(rng, params, height - 1, modal)),
        6..=7 if can_modal => {
            let agent = params.agents.choose(rng).expect("nonempty").clone();
            Formula::counterfactual(agent, formula_at(rng, params, height - 1, modal - 1))
        }
        8..=9 if can_modal => {
            let agent = params.agents.choose(rng).expect("nonempty").clone();
            Formula::see_to(agent, formula_at(rng, params, height - 1, modal - 1))
        }
        _ => Formula::not(formula_at(rng, params, height - 1, modal)),
    }
}
