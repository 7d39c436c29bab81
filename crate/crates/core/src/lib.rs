//! Model checking for a logic of counterfactual (`C`) and seeing-to-it (`S`)
//! responsibility over finite perfect-information extensive form games.
//!
//! - [`game`]: the game model and its text format.
//! - [`formula`]: formulae, their parser and printer.
//! - [`eval`]: linear-time truth-set computation.
//! - [`oracle`]: brute-force reference semantics used to validate [`eval`].
//! - [`gap`]: the responsibility-gap hierarchy.
//! - [`fixtures`], [`gen`]: named games and seeded random corpora.
//! - [`verify`]: an invariant suite runnable on any game.

pub mod eval;
pub mod fixtures;
pub mod formula;
pub mod game;
pub mod gap;
pub mod gen;
pub mod oracle;
pub mod sets;
pub mod verify;

pub use eval::{truth_set, truth_set_with_stats, EvalStats, Evaluator, Pruning};
pub use formula::{parse_formula, Formula, FormulaParseError};
pub use game::{parse_game, AgentId, Game, GameError, GameParseError, NodeId, Tree};
pub use gap::{eval_gap, gap_formula, vanishing_order, GapKind, GapQuery, Vanishing};
pub use sets::{NodeSet, OutcomeSet};
