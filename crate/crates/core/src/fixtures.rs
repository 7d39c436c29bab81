//! Named games: the clemency games, the chain game `gn(N)`, the
//! higher-order-gap family `hog(i)` and the three-agent game `cvs`.
//!
//! `hog` and `cvs` are reconstructed from the properties they are known to
//! have; their builders check those properties before returning.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::eval::{truth_set, Evaluator};
use crate::formula::Formula;
use crate::game::{parse_game, Game, Tree};
use crate::gap::{gap_levels, GapKind};
use crate::sets::OutcomeSet;

pub const MONTANA_A: &str = "(b {prison} (g {prison} {free}))";
pub const MONTANA_B: &str = "(g {prison} (b {prison} {free}))";
pub const MONTANA_HOUSE: &str = "(l (b {prison} (g {prison} {free})) (g {prison} {free}))";
pub const CVS: &str = "(c (a {p} {}) (b {p} {}))";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FixtureName {
    MontanaA,
    MontanaB,
    MontanaHouse,
    Gn,
    Hog,
    Cvs,
}

impl FixtureName {
    pub const ALL: [FixtureName; 6] = [
        FixtureName::MontanaA,
        FixtureName::MontanaB,
        FixtureName::MontanaHouse,
        FixtureName::Gn,
        FixtureName::Hog,
        FixtureName::Cvs,
    ];

    /// Smallest accepted parameter, for the parameterised families.
    pub fn min_param(self) -> Option<usize> {
        match self {
            FixtureName::Gn => Some(1),
            FixtureName::Hog => Some(2),
            _ => None,
        }
    }
}

impl fmt::Display for FixtureName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FixtureName::MontanaA => "montana-a",
            FixtureName::MontanaB => "montana-b",
            FixtureName::MontanaHouse => "montana-house",
            FixtureName::Gn => "gn",
            FixtureName::Hog => "hog",
            FixtureName::Cvs => "cvs",
        })
    }
}

impl FromStr for FixtureName {
    type Err = FixtureError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FixtureName::ALL.into_iter().find(|n| n.to_string() == s).ok_or_else(|| FixtureError::UnknownName(s.to_owned()))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FixtureError {
    #[error("unknown fixture `{0}` (expected montana-a, montana-b, montana-house, gn, hog or cvs)")]
    UnknownName(String),
    #[error("fixture `{0}` needs a parameter")]
    MissingParam(FixtureName),
    #[error("fixture `{0}` takes no parameter")]
    UnexpectedParam(FixtureName),
    #[error("fixture `{name}` needs a parameter of at least {min}, got {value}")]
    InvalidParam { name: FixtureName, value: usize, min: usize },
    #[error("fixture `{name}` failed its self-check: {detail}")]
    SelfCheck { name: FixtureName, detail: String },
}

pub fn fixture(name: FixtureName, param: Option<usize>) -> Result<Game, FixtureError> {
    match (name.min_param(), param) {
        (None, Some(_)) => return Err(FixtureError::UnexpectedParam(name)),
        (Some(_), None) => return Err(FixtureError::MissingParam(name)),
        (Some(min), Some(value)) if value < min => return Err(FixtureError::InvalidParam { name, value, min }),
        _ => {}
    }
    match name {
        FixtureName::MontanaA => Ok(parse_game(MONTANA_A).expect("valid fixture")),
        FixtureName::MontanaB => Ok(parse_game(MONTANA_B).expect("valid fixture")),
        FixtureName::MontanaHouse => Ok(parse_game(MONTANA_HOUSE).expect("valid fixture")),
        FixtureName::Gn => gn(param.expect("checked")),
        FixtureName::Hog => hog(param.expect("checked")),
        FixtureName::Cvs => cvs(),
    }
}

/// Looks a fixture up by its command-line name.
pub fn fixture_by_name(name: &str, param: Option<usize>) -> Result<Game, FixtureError> {
    fixture(name.parse()?, param)
}

fn self_check(name: FixtureName, ok: bool, detail: impl FnOnce() -> String) -> Result<(), FixtureError> {
    if ok {
        Ok(())
    } else {
        Err(FixtureError::SelfCheck { name, detail: detail() })
    }
}

/// Chain of `N + 3` decision nodes alternating between `a` (at the root) and
/// `b`. Each node either stops (first child, outcome `w_k`) or continues; the
/// last node chooses between `w_{N+3}` and `w_{N+4}`. Only the two extreme
/// outcomes lack `p`.
pub fn gn(n: usize) -> Result<Game, FixtureError> {
    if n < 1 {
        return Err(FixtureError::InvalidParam { name: FixtureName::Gn, value: n, min: 1 });
    }
    let decisions = n + 3;
    let label = |k: usize| {
        if k == 1 || k == n + 4 {
            Tree::outcome(Vec::<String>::new())
        } else {
            Tree::outcome(["p"])
        }
    };
    let agent = |k: usize| if k % 2 == 1 { "a" } else { "b" };
    let mut tree = Tree::decision(agent(decisions), vec![label(decisions), label(decisions + 1)]);
    for k in (1..decisions).rev() {
        tree = Tree::decision(agent(k), vec![label(k), tree]);
    }
    let game = Game::from_tree(&tree).expect("valid fixture");

    let s_a_p = truth_set(&game, &Formula::see_to("a", Formula::prop("p")));
    self_check(FixtureName::Gn, !s_a_p.contains(1) && s_a_p.contains(2), || {
        format!("expected w2 outside and w3 inside [[S[a] p]], got {s_a_p}")
    })?;
    Ok(game)
}

/// Outcomes `{w_1..w_m, u_1..u_m}` of `hog(i)`, with `w_j` at index `j-1` and
/// `u_j` at index `i+1+j`.
pub fn hog_prefix(i: usize, m: usize) -> OutcomeSet {
    let side = i + 2;
    OutcomeSet::from_iter_in(2 * side, (0..m).flat_map(|j| [j, side + j]))
}

/// Root `a` chooses between two mirrored chains `b_1..b_{i+1}` and
/// `c_1..c_{i+1}`. `b_j` stops at `w_j` or passes to `b_{j+1}`; `b_{i+1}` picks
/// `w_{i+1}` or `w_{i+2}`. Everything but `w_{i+2}` and `u_{i+2}` satisfies `p`.
pub fn hog(i: usize) -> Result<Game, FixtureError> {
    if i < 2 {
        return Err(FixtureError::InvalidParam { name: FixtureName::Hog, value: i, min: 2 });
    }
    let chain = |prefix: &str| {
        let mut tree = Tree::decision(
            format!("{prefix}{}", i + 1),
            vec![Tree::outcome(["p"]), Tree::outcome(Vec::<String>::new())],
        );
        for j in (1..=i).rev() {
            tree = Tree::decision(format!("{prefix}{j}"), vec![Tree::outcome(["p"]), tree]);
        }
        tree
    };
    let tree = Tree::decision("a", vec![chain("b"), chain("c")]);
    let game = Game::from_tree(&tree).expect("valid fixture");

    self_check(FixtureName::Hog, game.agents().len() == 2 * i + 3 && game.outcome_count() == 2 * i + 4, || {
        format!("unexpected shape: {} agents, {} outcomes", game.agents().len(), game.outcome_count())
    })?;
    let levels: Vec<OutcomeSet> = gap_levels(&game, &Formula::prop("p"), GapKind::Both).take(i + 1).collect();
    for (k, level) in levels.iter().enumerate().skip(1) {
        let expected = hog_prefix(i, i + 1 - k);
        self_check(FixtureName::Hog, *level == expected, || {
            format!("order-{k} cs gap is {level}, expected {expected}")
        })?;
    }
    Ok(game)
}

/// Three-agent game with four outcomes, `w1` and `w3` labelled `p`, in which
/// `⟦C_a p⟧ = {w1}` and no agent can force `p` from the root.
pub fn cvs() -> Result<Game, FixtureError> {
    let game = parse_game(CVS).expect("valid fixture");
    let p = game.labelled("p");
    let c_a_p = truth_set(&game, &Formula::counterfactual("a", Formula::prop("p")));
    self_check(FixtureName::Cvs, c_a_p == OutcomeSet::from_numbers(4, &[1]), || {
        format!("[[C[a] p]] is {c_a_p}, expected {{w1}}")
    })?;
    let mut ev = Evaluator::new(&game);
    for agent in ["a", "b", "c"] {
        let win = ev.win_set(agent, &p);
        self_check(FixtureName::Cvs, !win.contains(game.root()), || format!("{agent} can force p from the root"))?;
    }
    Ok(game)
}
