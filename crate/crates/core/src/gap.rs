//! Responsibility gaps and their hierarchy.
//!
//! The order-`i` gap statement for `φ` holds where the order-`(i-1)` statement
//! holds and no agent is responsible for it, counterfactually (`c`), for seeing
//! to it (`s`), or in either way (`cs`). Order 0 is `φ` itself.
//!
//! Since `C` and `S` only depend on the truth set of their argument, the gap
//! sets are computed by iterating on truth sets ([`eval_gap`]) rather than by
//! expanding the formula, whose size grows geometrically with the order.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::eval::Evaluator;
use crate::formula::Formula;
use crate::game::Game;
use crate::sets::OutcomeSet;

/// Upper bound on the size of an expanded gap formula.
pub const MAX_EXPANSION_SIZE: usize = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GapKind {
    /// `G^c`: nobody is counterfactually responsible.
    Counterfactual,
    /// `G^s`: nobody is responsible for seeing to it.
    SeeTo,
    /// `G^{c,s}`: nobody is responsible in either way.
    Both,
}

impl GapKind {
    pub const ALL: [GapKind; 3] = [GapKind::Counterfactual, GapKind::SeeTo, GapKind::Both];

    fn includes_c(self) -> bool {
        matches!(self, GapKind::Counterfactual | GapKind::Both)
    }

    fn includes_s(self) -> bool {
        matches!(self, GapKind::SeeTo | GapKind::Both)
    }

    /// Whether the vanishing bound `|Ω| - 1` is a theorem for this kind.
    pub fn has_vanishing_bound(self) -> bool {
        self.includes_c()
    }
}

impl fmt::Display for GapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GapKind::Counterfactual => "c",
            GapKind::SeeTo => "s",
            GapKind::Both => "cs",
        })
    }
}

impl FromStr for GapKind {
    type Err = GapError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "c" => Ok(GapKind::Counterfactual),
            "s" => Ok(GapKind::SeeTo),
            "cs" | "c,s" => Ok(GapKind::Both),
            other => Err(GapError::UnknownKind(other.to_owned())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapQuery {
    pub base: Formula,
    pub kind: GapKind,
    pub order: usize,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GapError {
    #[error("unknown gap kind `{0}` (expected c, s or cs)")]
    UnknownKind(String),
    #[error("gap formulae need at least one agent")]
    NoAgents,
    #[error("expanded gap formula would have {size} nodes (limit {limit})")]
    ExpansionTooLarge { size: u128, limit: usize },
    #[error("the base formula holds in every outcome")]
    TrivialBase,
    #[error("expected a game with exactly 2 agents, found {0}")]
    NotTwoAgents(usize),
    #[error("{kind} gap still nonempty at order {bound}, beyond the |Ω|-1 bound")]
    BoundExceeded { kind: GapKind, bound: usize },
}

/// Size of the expanded formula, saturating.
pub fn expansion_size(base_size: usize, kind: GapKind, agents: usize, order: usize) -> u128 {
    let per_order = agents as u128 * (kind.includes_c() as u128 + kind.includes_s() as u128);
    let mut size = base_size as u128;
    for _ in 0..order {
        // prev ∧ ⋀ ¬M_a prev: one copy plus, per conjunct, Not + modality + And.
        size = size.saturating_add(per_order.saturating_mul(size.saturating_add(3)));
        if size > MAX_EXPANSION_SIZE as u128 {
            break;
        }
    }
    size
}

/// The literal gap formula, as a left-nested conjunction
/// `prev ∧ ¬C_a1 prev ∧ … ∧ ¬S_a1 prev ∧ …` at each order.
pub fn gap_formula(query: &GapQuery, agents: &[String]) -> Result<Formula, GapError> {
    if agents.is_empty() {
        return Err(GapError::NoAgents);
    }
    let size = expansion_size(query.base.size(), query.kind, agents.len(), query.order);
    if size > MAX_EXPANSION_SIZE as u128 {
        return Err(GapError::ExpansionTooLarge { size, limit: MAX_EXPANSION_SIZE });
    }
    let mut current = query.base.clone();
    for _ in 0..query.order {
        let mut parts = vec![current.clone()];
        if query.kind.includes_c() {
            parts.extend(agents.iter().map(|a| Formula::not(Formula::counterfactual(a.clone(), current.clone()))));
        }
        if query.kind.includes_s() {
            parts.extend(agents.iter().map(|a| Formula::not(Formula::see_to(a.clone(), current.clone()))));
        }
        current = Formula::conjunction(parts);
    }
    Ok(current)
}

/// One step of the hierarchy: remove the outcomes where some agent is
/// responsible for `current`.
pub fn next_level(ev: &mut Evaluator<'_>, kind: GapKind, current: &OutcomeSet) -> OutcomeSet {
    let agents = ev.game().agents();
    let mut responsible = ev.game().empty_outcomes();
    for a in agents {
        if kind.includes_c() {
            responsible.union_with(&ev.eval_c(a, current));
        }
        if kind.includes_s() {
            responsible.union_with(&ev.eval_s(a, current));
        }
    }
    current.difference(&responsible)
}

/// The gap sets `T_0, T_1, ...` of `base` (an unbounded iterator).
pub fn gap_levels<'g>(game: &'g Game, base: &Formula, kind: GapKind) -> impl Iterator<Item = OutcomeSet> + 'g {
    let mut ev = Evaluator::new(game);
    let mut current = Some(ev.truth_set(base));
    std::iter::from_fn(move || {
        let level = current.take()?;
        current = Some(next_level(&mut ev, kind, &level));
        Some(level)
    })
}

/// Truth set of the order-`order` gap statement of `base`.
pub fn eval_gap(game: &Game, base: &Formula, kind: GapKind, order: usize) -> OutcomeSet {
    let mut levels = gap_levels(game, base, kind);
    for _ in 0..order {
        let level = levels.next().expect("unbounded");
        if level.is_empty() {
            return level;
        }
    }
    levels.next().expect("unbounded")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Vanishing {
    /// The smallest order whose gap set is empty.
    At(usize),
    /// Still nonempty at order `bound` (only possible for kind `s`).
    NotByBound { bound: usize },
}

/// Smallest order at which the gap of `base` vanishes, searching up to
/// `|Ω| - 1`.
pub fn vanishing_order(game: &Game, base: &Formula, kind: GapKind) -> Result<Vanishing, GapError> {
    let bound = game.outcome_count() - 1;
    for (order, level) in gap_levels(game, base, kind).enumerate().take(bound + 1) {
        if order == 0 && level.is_full() {
            return Err(GapError::TrivialBase);
        }
        if level.is_empty() {
            return Ok(Vanishing::At(order));
        }
    }
    if kind.has_vanishing_bound() {
        Err(GapError::BoundExceeded { kind, bound })
    } else {
        Ok(Vanishing::NotByBound { bound })
    }
}

/// Whether a two-agent game has no first-order `cs` gap for `base`.
pub fn check_two_agent_no_gap(game: &Game, base: &Formula) -> Result<bool, GapError> {
    if game.agents().len() != 2 {
        return Err(GapError::NotTwoAgents(game.agents().len()));
    }
    let mut levels = gap_levels(game, base, GapKind::Both);
    if levels.next().expect("unbounded").is_full() {
        return Err(GapError::TrivialBase);
    }
    Ok(levels.next().expect("unbounded").is_empty())
}
