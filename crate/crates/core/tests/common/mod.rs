//! Seeded corpora shared by the integration suites.
#![allow(dead_code)]

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use respcheck_core::gen::{random_formula, random_game, FormulaParams, GenParams};
use respcheck_core::oracle::within_oracle_scale;
use respcheck_core::{truth_set, Formula, Game};

pub struct Case {
    pub seed: u64,
    pub game: Game,
    pub formulas: Vec<Formula>,
}

fn formula_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_f00d)
}

/// `count` games with two or three agents, small enough for the reference
/// semantics, each with `per_game` formulae of modal depth at most 3.
pub fn oracle_corpus(count: usize, per_game: usize) -> Vec<Case> {
    let mut out = Vec::with_capacity(count);
    let mut seed = 0u64;
    while out.len() < count {
        let agents: &[&str] = if seed.is_multiple_of(2) { &["a", "b"] } else { &["a", "b", "c"] };
        let game = random_game(&GenParams::new(seed, 5, 3, agents, &["p", "q"])).expect("valid params");
        if within_oracle_scale(&game) {
            let fp = FormulaParams::new(game.agents(), game.props(), 3, 6);
            let mut rng = formula_rng(seed);
            let formulas = (0..per_game).map(|_| random_formula(&mut rng, &fp)).collect();
            out.push(Case { seed, game, formulas });
        }
        seed += 1;
    }
    out
}

/// Up to `per_game` random formulae whose truth set is a proper subset of the
/// outcomes, falling back to `false` when sampling keeps hitting everything.
pub fn proper_bases(game: &Game, seed: u64, per_game: usize, max_modal_depth: usize) -> Vec<Formula> {
    let props = if game.props().is_empty() { vec!["p".to_owned()] } else { game.props().to_vec() };
    let fp = FormulaParams::new(game.agents(), &props, max_modal_depth, 5);
    let mut rng = formula_rng(seed);
    let mut out = Vec::with_capacity(per_game);
    let mut attempts = 0;
    while out.len() < per_game {
        attempts += 1;
        let f = if attempts > 50 * per_game { Formula::Bottom } else { random_formula(&mut rng, &fp) };
        if !truth_set(game, &f).is_full() {
            out.push(f);
        }
    }
    out
}

/// Random games whose decision nodes are labelled by three or four distinct
/// agents.
pub fn many_agent_games(count: usize) -> Vec<(u64, Game)> {
    let mut out = Vec::with_capacity(count);
    let mut seed = 0u64;
    while out.len() < count {
        let agents: &[&str] = if seed.is_multiple_of(2) { &["a", "b", "c"] } else { &["a", "b", "c", "d"] };
        let game = random_game(&GenParams::new(seed, 5, 3, agents, &["p", "q"])).expect("valid params");
        if game.agents().len() >= 3 {
            out.push((seed, game));
        }
        seed += 1;
    }
    out
}
