//! Extensive form games: finite rooted trees whose internal nodes are labelled
//! with agents and whose leaves (outcomes) are labelled with sets of
//! propositional variables.
//!
//! Nodes live in an arena in depth-first pre-order, so the subtree of a node is
//! a contiguous index range and the leaves, read in arena order, are the
//! outcomes `w1, w2, ...` from left to right.

mod text;

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Range;

use thiserror::Error;

use crate::sets::{NodeSet, OutcomeSet};

pub use text::{parse_game, GameParseError};

/// Index of a node within one [`Game`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(u32);

impl NodeId {
    pub fn new(index: usize) -> Self {
        NodeId(u32::try_from(index).expect("node index overflows u32"))
    }

    #[cfg(test)]
    pub(crate) const fn new_const(index: u32) -> Self {
        NodeId(index)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n{}", self.0)
    }
}

/// Interned agent name; ids follow the sorted order of agent names.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AgentId(u32);

impl AgentId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Interned proposition name; ids follow the sorted order of names.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PropId(u32);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GameError {
    #[error("node {0} does not belong to this game")]
    InvalidNode(NodeId),
    #[error("decision node labelled `{0}` has no children")]
    EmptyDecision(String),
    #[error("`{0}` is not a valid identifier")]
    InvalidIdentifier(String),
    #[error("`{0}` is used both as an agent and as a proposition")]
    NameClash(String),
}

/// Owned tree description, the input to [`Game::from_tree`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tree {
    Decision { agent: String, children: Vec<Tree> },
    Outcome(Vec<String>),
}

impl Tree {
    pub fn decision(agent: impl Into<String>, children: Vec<Tree>) -> Self {
        Tree::Decision { agent: agent.into(), children }
    }

    pub fn outcome<S: Into<String>>(props: impl IntoIterator<Item = S>) -> Self {
        Tree::Outcome(props.into_iter().map(Into::into).collect())
    }
}

#[derive(Clone, Debug)]
enum NodeKind {
    Decision { agent: AgentId, children: Vec<NodeId> },
    Outcome { index: usize, props: Vec<PropId> },
}

#[derive(Clone, Debug)]
struct Node {
    parent: Option<NodeId>,
    subtree_end: usize,
    kind: NodeKind,
}

/// An immutable, validated extensive form game.
#[derive(Clone, Debug)]
pub struct Game {
    nodes: Vec<Node>,
    agents: Vec<String>,
    props: Vec<String>,
    outcomes: Vec<NodeId>,
    bfs: Vec<NodeId>,
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Game {
    /// Validates and freezes a tree description.
    pub fn from_tree(tree: &Tree) -> Result<Game, GameError> {
        let mut agent_names = BTreeSet::new();
        let mut prop_names = BTreeSet::new();
        collect_names(tree, &mut agent_names, &mut prop_names)?;
        if let Some(clash) = agent_names.intersection(&prop_names).next() {
            return Err(GameError::NameClash(clash.clone()));
        }
        let agents: Vec<String> = agent_names.into_iter().collect();
        let props: Vec<String> = prop_names.into_iter().collect();

        let mut game = Game { nodes: Vec::new(), agents, props, outcomes: Vec::new(), bfs: Vec::new() };
        game.push(tree, None);
        game.bfs = game.compute_bfs();
        Ok(game)
    }

    fn push(&mut self, tree: &Tree, parent: Option<NodeId>) -> NodeId {
        let id = NodeId::new(self.nodes.len());
        match tree {
            Tree::Outcome(names) => {
                let mut props: Vec<PropId> = names.iter().map(|p| self.lookup_prop(p).expect("interned")).collect();
                props.sort_unstable();
                props.dedup();
                let index = self.outcomes.len();
                self.outcomes.push(id);
                self.nodes.push(Node { parent, subtree_end: id.index() + 1, kind: NodeKind::Outcome { index, props } });
            }
            Tree::Decision { agent, children } => {
                let agent = self.agent_id(agent).expect("interned");
                self.nodes.push(Node {
                    parent,
                    subtree_end: 0,
                    kind: NodeKind::Decision { agent, children: Vec::with_capacity(children.len()) },
                });
                for child in children {
                    let child_id = self.push(child, Some(id));
                    if let NodeKind::Decision { children, .. } = &mut self.nodes[id.index()].kind {
                        children.push(child_id);
                    }
                }
                self.nodes[id.index()].subtree_end = self.nodes.len();
            }
        }
        id
    }

    fn compute_bfs(&self) -> Vec<NodeId> {
        let mut order = Vec::with_capacity(self.nodes.len());
        order.push(self.root());
        let mut head = 0;
        while head < order.len() {
            let n = order[head];
            head += 1;
            order.extend_from_slice(self.children(n));
        }
        order
    }

    fn lookup_prop(&self, name: &str) -> Option<PropId> {
        self.props.binary_search_by(|p| p.as_str().cmp(name)).ok().map(|i| PropId(i as u32))
    }

    pub fn root(&self) -> NodeId {
        NodeId(0)
    }

    /// Number of nodes, `|G|`.
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Number of outcomes, `|Ω(G)|`.
    pub fn outcome_count(&self) -> usize {
        self.outcomes.len()
    }

    pub fn decision_count(&self) -> usize {
        self.nodes.len() - self.outcomes.len()
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> {
        (0..self.nodes.len()).map(NodeId::new)
    }

    /// Sorted agent names labelling decision nodes.
    pub fn agents(&self) -> &[String] {
        &self.agents
    }

    /// Sorted proposition names occurring in outcome labels.
    pub fn props(&self) -> &[String] {
        &self.props
    }

    pub fn agent_id(&self, name: &str) -> Option<AgentId> {
        self.agents.binary_search_by(|a| a.as_str().cmp(name)).ok().map(|i| AgentId(i as u32))
    }

    pub fn agent_name(&self, agent: AgentId) -> &str {
        &self.agents[agent.index()]
    }

    pub fn contains(&self, n: NodeId) -> bool {
        n.index() < self.nodes.len()
    }

    pub fn check(&self, n: NodeId) -> Result<(), GameError> {
        if self.contains(n) {
            Ok(())
        } else {
            Err(GameError::InvalidNode(n))
        }
    }

    pub fn is_outcome(&self, n: NodeId) -> bool {
        matches!(self.nodes[n.index()].kind, NodeKind::Outcome { .. })
    }

    pub fn parent(&self, n: NodeId) -> Option<NodeId> {
        self.nodes[n.index()].parent
    }

    /// Children in left-to-right order; empty for outcomes.
    pub fn children(&self, n: NodeId) -> &[NodeId] {
        match &self.nodes[n.index()].kind {
            NodeKind::Decision { children, .. } => children,
            NodeKind::Outcome { .. } => &[],
        }
    }

    /// The agent labelling a decision node.
    pub fn owner(&self, n: NodeId) -> Option<AgentId> {
        match self.nodes[n.index()].kind {
            NodeKind::Decision { agent, .. } => Some(agent),
            NodeKind::Outcome { .. } => None,
        }
    }

    pub fn owner_name(&self, n: NodeId) -> Option<&str> {
        self.owner(n).map(|a| self.agent_name(a))
    }

    /// Outcome nodes, left to right.
    pub fn outcomes(&self) -> &[NodeId] {
        &self.outcomes
    }

    pub fn outcome(&self, index: usize) -> NodeId {
        self.outcomes[index]
    }

    /// Position of an outcome node in the left-to-right order.
    pub fn outcome_index(&self, n: NodeId) -> Option<usize> {
        match self.nodes[n.index()].kind {
            NodeKind::Outcome { index, .. } => Some(index),
            NodeKind::Decision { .. } => None,
        }
    }

    /// Propositions labelling an outcome node, sorted.
    pub fn labels(&self, n: NodeId) -> impl Iterator<Item = &str> {
        let props: &[PropId] = match &self.nodes[n.index()].kind {
            NodeKind::Outcome { props, .. } => props,
            NodeKind::Decision { .. } => &[],
        };
        props.iter().map(|p| self.props[p.0 as usize].as_str())
    }

    /// `⟦p⟧`: outcomes labelled with `prop`. Empty for unknown names.
    pub fn labelled(&self, prop: &str) -> OutcomeSet {
        let mut set = self.empty_outcomes();
        if let Some(id) = self.lookup_prop(prop) {
            for (i, &w) in self.outcomes.iter().enumerate() {
                if let NodeKind::Outcome { props, .. } = &self.nodes[w.index()].kind {
                    if props.binary_search(&id).is_ok() {
                        set.insert(i);
                    }
                }
            }
        }
        set
    }

    /// Node indices of the subtree rooted at `n` (pre-order, contiguous).
    pub fn subtree(&self, n: NodeId) -> Range<usize> {
        n.index()..self.nodes[n.index()].subtree_end
    }

    /// Nodes in breadth-first order from the root, children left to right.
    pub fn bfs_order(&self) -> &[NodeId] {
        &self.bfs
    }

    pub fn empty_outcomes(&self) -> OutcomeSet {
        OutcomeSet::empty(self.outcomes.len())
    }

    /// `Ω(G)`.
    pub fn all_outcomes(&self) -> OutcomeSet {
        OutcomeSet::full(self.outcomes.len())
    }

    pub fn empty_nodes(&self) -> NodeSet {
        NodeSet::empty(self.nodes.len())
    }

    /// `n1 ⪯ n2`: `n2` lies on the path from the root to `n1`, ends included.
    pub fn precedes(&self, n1: NodeId, n2: NodeId) -> Result<bool, GameError> {
        self.check(n1)?;
        self.check(n2)?;
        Ok(self.subtree(n2).contains(&n1.index()))
    }

    /// Ancestors of `w` and `w` itself, root first.
    pub fn path_to_root(&self, w: NodeId) -> Result<Vec<NodeId>, GameError> {
        self.check(w)?;
        let mut path = vec![w];
        let mut cur = w;
        while let Some(p) = self.parent(cur) {
            path.push(p);
            cur = p;
        }
        path.reverse();
        Ok(path)
    }

    /// Outcomes `w` with `w ⪯ n`.
    pub fn descendant_outcomes(&self, n: NodeId) -> Result<OutcomeSet, GameError> {
        self.check(n)?;
        let mut set = self.empty_outcomes();
        self.add_descendant_outcomes(n, &mut set);
        Ok(set)
    }

    /// Adds the outcomes below `n` to `set`; returns the number of nodes scanned.
    pub(crate) fn add_descendant_outcomes(&self, n: NodeId, set: &mut OutcomeSet) -> usize {
        let range = self.subtree(n);
        let scanned = range.len();
        for node in &self.nodes[range] {
            if let NodeKind::Outcome { index, .. } = node.kind {
                set.insert(index);
            }
        }
        scanned
    }

    /// Converts an outcome set to the set of the corresponding leaf nodes.
    pub fn outcome_nodes(&self, x: &OutcomeSet) -> NodeSet {
        NodeSet::from_iter_in(self.nodes.len(), x.iter().map(|i| self.outcomes[i]))
    }

    /// Reconstructs the owned tree description.
    pub fn to_tree(&self) -> Tree {
        self.tree_at(self.root())
    }

    fn tree_at(&self, n: NodeId) -> Tree {
        match &self.nodes[n.index()].kind {
            NodeKind::Decision { agent, children } => Tree::Decision {
                agent: self.agent_name(*agent).to_owned(),
                children: children.iter().map(|&c| self.tree_at(c)).collect(),
            },
            NodeKind::Outcome { .. } => Tree::outcome(self.labels(n)),
        }
    }
}

fn collect_names(tree: &Tree, agents: &mut BTreeSet<String>, props: &mut BTreeSet<String>) -> Result<(), GameError> {
    match tree {
        Tree::Outcome(names) => {
            for p in names {
                if !is_identifier(p) {
                    return Err(GameError::InvalidIdentifier(p.clone()));
                }
                props.insert(p.clone());
            }
        }
        Tree::Decision { agent, children } => {
            if !is_identifier(agent) {
                return Err(GameError::InvalidIdentifier(agent.clone()));
            }
            if children.is_empty() {
                return Err(GameError::EmptyDecision(agent.clone()));
            }
            agents.insert(agent.clone());
            for child in children {
                collect_names(child, agents, props)?;
            }
        }
    }
    Ok(())
}
