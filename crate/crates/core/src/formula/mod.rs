//! Formulae of the responsibility language.
//!
//! The core grammar is `p | ⊤ | ⊥ | ¬φ | φ∧φ | C_a φ | S_a φ`. Disjunction and
//! implication exist only as constructors and in the concrete syntax; they are
//! desugared into negation and conjunction immediately.

mod parse;

use std::collections::BTreeSet;
use std::fmt;

pub use parse::{parse_formula, FormulaParseError};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Top,
    Bottom,
    Prop(String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    /// `C[a] φ`: agent `a` is counterfactually responsible for `φ`.
    Counterfactual(String, Box<Formula>),
    /// `S[a] φ`: agent `a` is responsible for seeing to `φ`.
    SeeTo(String, Box<Formula>),
}

impl Formula {
    pub fn prop(name: impl Into<String>) -> Self {
        Formula::Prop(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(l: Formula, r: Formula) -> Self {
        Formula::And(Box::new(l), Box::new(r))
    }

    /// `φ ∨ ψ`, stored as `¬(¬φ ∧ ¬ψ)`.
    pub fn or(l: Formula, r: Formula) -> Self {
        Formula::not(Formula::and(Formula::not(l), Formula::not(r)))
    }

    /// `φ → ψ`, stored as `¬(φ ∧ ¬ψ)`.
    pub fn implies(l: Formula, r: Formula) -> Self {
        Formula::not(Formula::and(l, Formula::not(r)))
    }

    pub fn counterfactual(agent: impl Into<String>, f: Formula) -> Self {
        Formula::Counterfactual(agent.into(), Box::new(f))
    }

    pub fn see_to(agent: impl Into<String>, f: Formula) -> Self {
        Formula::SeeTo(agent.into(), Box::new(f))
    }

    /// Left-nested conjunction of `parts`; `⊤` when empty.
    pub fn conjunction(parts: impl IntoIterator<Item = Formula>) -> Self {
        parts.into_iter().reduce(Formula::and).unwrap_or(Formula::Top)
    }

    /// Number of AST nodes, `|φ|`.
    pub fn size(&self) -> usize {
        match self {
            Formula::Top | Formula::Bottom | Formula::Prop(_) => 1,
            Formula::Not(f) | Formula::Counterfactual(_, f) | Formula::SeeTo(_, f) => 1 + f.size(),
            Formula::And(l, r) => 1 + l.size() + r.size(),
        }
    }

    /// Maximal nesting of `C`/`S` modalities.
    pub fn modal_depth(&self) -> usize {
        match self {
            Formula::Top | Formula::Bottom | Formula::Prop(_) => 0,
            Formula::Not(f) => f.modal_depth(),
            Formula::Counterfactual(_, f) | Formula::SeeTo(_, f) => 1 + f.modal_depth(),
            Formula::And(l, r) => l.modal_depth().max(r.modal_depth()),
        }
    }

    /// Propositions occurring in the formula.
    pub fn props(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            if let Formula::Prop(p) = f {
                out.insert(p.as_str());
            }
        });
        out
    }

    /// Agents named by modalities in the formula.
    pub fn agents(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            if let Formula::Counterfactual(a, _) | Formula::SeeTo(a, _) = f {
                out.insert(a.as_str());
            }
        });
        out
    }

    fn visit<'a>(&'a self, f: &mut impl FnMut(&'a Formula)) {
        f(self);
        match self {
            Formula::Top | Formula::Bottom | Formula::Prop(_) => {}
            Formula::Not(g) | Formula::Counterfactual(_, g) | Formula::SeeTo(_, g) => g.visit(f),
            Formula::And(l, r) => {
                l.visit(f);
                r.visit(f);
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Top => f.write_str("true"),
            Formula::Bottom => f.write_str("false"),
            Formula::Prop(p) => f.write_str(p),
            Formula::Not(g) => write!(f, "!{g}"),
            Formula::And(l, r) => write!(f, "({l} & {r})"),
            Formula::Counterfactual(a, g) => write!(f, "C[{a}] {g}"),
            Formula::SeeTo(a, g) => write!(f, "S[{a}] {g}"),
        }
    }
}
