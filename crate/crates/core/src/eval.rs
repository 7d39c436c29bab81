//! Linear-time model checking.
//!
//! Achievement points and ability sets are computed by one backward pass over
//! the decision nodes in reversed breadth-first order. `C` and `S` are then
//! evaluated by a breadth-first descent that stops below the first node that
//! settles a subtree. Every top-level evaluation records [`EvalStats`] so that
//! the `O(|φ|·|G|)` bound can be checked empirically.

use crate::formula::Formula;
use crate::game::{AgentId, Game, NodeId};
use crate::sets::{NodeSet, OutcomeSet};
use std::collections::VecDeque;

/// Work counters for one evaluation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EvalStats {
    /// Nodes dequeued, popped, scanned or inspected as a child.
    pub node_visits: u64,
    /// Elements touched by whole-set operations (complement, union, ...).
    pub set_ops_cost: u64,
}

impl EvalStats {
    pub fn merge(&mut self, other: EvalStats) {
        self.node_visits += other.node_visits;
        self.set_ops_cost += other.set_ops_cost;
    }
}

/// Whether `S` evaluation skips subtrees that cannot contribute.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Pruning {
    #[default]
    Enabled,
    /// Visit every node and test both conditions directly. Debug aid.
    Disabled,
}

/// Evaluates formulae over one game.
#[derive(Clone, Debug)]
pub struct Evaluator<'g> {
    game: &'g Game,
    pruning: Pruning,
    stats: EvalStats,
}

impl<'g> Evaluator<'g> {
    pub fn new(game: &'g Game) -> Self {
        Evaluator { game, pruning: Pruning::Enabled, stats: EvalStats::default() }
    }

    pub fn with_pruning(mut self, pruning: Pruning) -> Self {
        self.pruning = pruning;
        self
    }

    pub fn game(&self) -> &'g Game {
        self.game
    }

    pub fn stats(&self) -> EvalStats {
        self.stats
    }

    pub fn reset_stats(&mut self) {
        self.stats = EvalStats::default();
    }

    fn visit(&mut self, n: usize) {
        self.stats.node_visits += n as u64;
    }

    fn set_op(&mut self, universe: usize) {
        self.stats.set_ops_cost += universe as u64;
    }

    /// Decision nodes in reversed breadth-first order.
    fn backward_order(&mut self) -> impl Iterator<Item = NodeId> + 'g {
        let game = self.game;
        self.visit(game.node_count());
        game.bfs_order().iter().rev().copied().filter(move |&n| !game.is_outcome(n))
    }

    /// Every `x`-achievement point, by any agent.
    ///
    /// `A` tracks nodes whose outcomes all lie in `x`. A child in `A` whose
    /// parent is not in `A` is an achievement point by the parent's owner.
    pub fn achievement_points(&mut self, x: &OutcomeSet) -> NodeSet {
        let game = self.game;
        let mut settled = game.outcome_nodes(x);
        self.set_op(game.node_count());
        let mut points = game.empty_nodes();
        let mut pending = Vec::new();
        for n in self.backward_order() {
            self.visit(1);
            let mut all_settled = true;
            pending.clear();
            for &m in game.children(n) {
                self.visit(1);
                if settled.contains(m) {
                    pending.push(m);
                } else {
                    all_settled = false;
                }
            }
            if all_settled {
                settled.insert(n);
            } else {
                for &m in &pending {
                    points.insert(m);
                }
            }
        }
        points
    }

    /// `win_a(x)`: nodes from which `agent` can force the game into `x`.
    pub fn win_set(&mut self, agent: &str, x: &OutcomeSet) -> NodeSet {
        let agent = self.game.agent_id(agent);
        self.win_set_by_id(agent, x)
    }

    fn win_set_by_id(&mut self, agent: Option<AgentId>, x: &OutcomeSet) -> NodeSet {
        let game = self.game;
        let mut win = game.outcome_nodes(x);
        self.set_op(game.node_count());
        for n in self.backward_order() {
            self.visit(1);
            let mut inspected = 0;
            let member = if agent.is_some() && game.owner(n) == agent {
                game.children(n).iter().any(|&m| {
                    inspected += 1;
                    win.contains(m)
                })
            } else {
                game.children(n).iter().all(|&m| {
                    inspected += 1;
                    win.contains(m)
                })
            };
            self.visit(inspected);
            if member {
                win.insert(n);
            }
        }
        win
    }

    fn collect_below(&mut self, n: NodeId, into: &mut OutcomeSet) {
        let scanned = self.game.add_descendant_outcomes(n, into);
        self.visit(scanned);
    }

    /// `⟦C_a ψ⟧` from `⟦ψ⟧`.
    pub fn eval_c(&mut self, agent: &str, psi: &OutcomeSet) -> OutcomeSet {
        let game = self.game;
        let agent = game.agent_id(agent);
        let not_psi = psi.complement();
        self.set_op(psi.universe());
        let win = self.win_set_by_id(agent, &not_psi);

        let mut reached = game.empty_outcomes();
        let mut queue = VecDeque::from([game.root()]);
        while let Some(n) = queue.pop_front() {
            self.visit(1);
            if win.contains(n) {
                self.collect_below(n, &mut reached);
            } else {
                self.visit(game.children(n).len());
                queue.extend(game.children(n));
            }
        }
        self.set_op(psi.universe());
        reached.intersection(psi)
    }

    /// `⟦S_a ψ⟧` from `⟦ψ⟧`.
    pub fn eval_s(&mut self, agent: &str, psi: &OutcomeSet) -> OutcomeSet {
        let game = self.game;
        let agent = game.agent_id(agent);
        self.set_op(psi.universe());
        if self.pruning == Pruning::Enabled && psi.is_full() {
            return game.empty_outcomes();
        }
        let points = self.achievement_points(psi);
        let win = self.win_set_by_id(agent, psi);
        let by_agent = |n: NodeId| agent.is_some() && game.parent(n).and_then(|p| game.owner(p)) == agent;

        let mut out = game.empty_outcomes();
        match self.pruning {
            Pruning::Enabled => {
                let mut queue = VecDeque::from([game.root()]);
                while let Some(n) = queue.pop_front() {
                    self.visit(1);
                    if !win.contains(n) {
                        // Nothing below keeps the whole path inside win_a.
                        continue;
                    }
                    if points.contains(n) {
                        // Achievement points by other agents are pruned: the
                        // point above an outcome is unique.
                        if by_agent(n) {
                            self.collect_below(n, &mut out);
                        }
                    } else {
                        self.visit(game.children(n).len());
                        queue.extend(game.children(n));
                    }
                }
            }
            Pruning::Disabled => {
                let mut queue = VecDeque::from([(game.root(), true)]);
                while let Some((n, path_in_win)) = queue.pop_front() {
                    self.visit(1);
                    let path_in_win = path_in_win && win.contains(n);
                    if path_in_win && points.contains(n) && by_agent(n) {
                        self.collect_below(n, &mut out);
                    }
                    self.visit(game.children(n).len());
                    queue.extend(game.children(n).iter().map(|&m| (m, path_in_win)));
                }
            }
        }
        out
    }

    /// `⟦φ⟧`. Statistics are reset at the start of each call.
    pub fn truth_set(&mut self, f: &Formula) -> OutcomeSet {
        self.reset_stats();
        self.eval(f)
    }

    fn eval(&mut self, f: &Formula) -> OutcomeSet {
        let game = self.game;
        let universe = game.outcome_count();
        match f {
            Formula::Top => {
                self.set_op(universe);
                game.all_outcomes()
            }
            Formula::Bottom => {
                self.set_op(universe);
                game.empty_outcomes()
            }
            Formula::Prop(p) => {
                self.visit(universe);
                game.labelled(p)
            }
            Formula::Not(g) => {
                let inner = self.eval(g);
                self.set_op(universe);
                inner.complement()
            }
            Formula::And(l, r) => {
                let l = self.eval(l);
                let r = self.eval(r);
                self.set_op(universe);
                l.intersection(&r)
            }
            Formula::Counterfactual(a, g) => {
                let inner = self.eval(g);
                self.eval_c(a, &inner)
            }
            Formula::SeeTo(a, g) => {
                let inner = self.eval(g);
                self.eval_s(a, &inner)
            }
        }
    }
}

/// `⟦φ⟧` with pruning enabled.
pub fn truth_set(game: &Game, f: &Formula) -> OutcomeSet {
    Evaluator::new(game).truth_set(f)
}

/// `⟦φ⟧` together with the work counters of the evaluation.
pub fn truth_set_with_stats(game: &Game, f: &Formula) -> (OutcomeSet, EvalStats) {
    let mut ev = Evaluator::new(game);
    let set = ev.truth_set(f);
    (set, ev.stats())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_formula;
    use crate::game::parse_game;

    fn montana_a() -> Game {
        parse_game("(b {prison} (g {prison} {free}))").unwrap()
    }

    fn nodes(g: &Game, ids: &[usize]) -> NodeSet {
        NodeSet::from_iter_in(g.node_count(), ids.iter().map(|&i| NodeId::new(i)))
    }

    fn eval(g: &Game, text: &str) -> OutcomeSet {
        truth_set(g, &parse_formula(text).unwrap())
    }

    // Arena: 0 = b-node, 1 = w1, 2 = g-node, 3 = w2, 4 = w3.

    #[test]
    fn achievement_points_examples() {
        let g = montana_a();
        let mut ev = Evaluator::new(&g);
        assert_eq!(ev.achievement_points(&OutcomeSet::from_numbers(3, &[1, 2])), nodes(&g, &[1, 3]));
        assert_eq!(ev.achievement_points(&OutcomeSet::from_numbers(3, &[2, 3])), nodes(&g, &[2]));
        assert!(ev.achievement_points(&g.empty_outcomes()).is_empty());
        assert!(ev.achievement_points(&g.all_outcomes()).is_empty());
    }

    #[test]
    fn win_set_examples() {
        let g = montana_a();
        let mut ev = Evaluator::new(&g);
        // The Governor alone can force w3 from the g-node and nowhere above.
        assert_eq!(ev.win_set("g", &OutcomeSet::from_numbers(3, &[3])), nodes(&g, &[2, 4]));
        assert_eq!(ev.win_set("b", &OutcomeSet::from_numbers(3, &[1, 2])), nodes(&g, &[0, 1, 3]));
        assert!(ev.win_set("b", &g.all_outcomes()).is_full());
    }

    #[test]
    fn eval_c_examples() {
        let g = montana_a();
        let mut ev = Evaluator::new(&g);
        let prison = g.labelled("prison");
        let free = g.labelled("free");
        assert_eq!(ev.eval_c("g", &prison), OutcomeSet::from_numbers(3, &[2]));
        assert!(ev.eval_c("b", &prison).is_empty());
        assert_eq!(ev.eval_c("b", &free), OutcomeSet::from_numbers(3, &[3]));
        assert_eq!(ev.eval_c("g", &free), OutcomeSet::from_numbers(3, &[3]));
        assert!(ev.eval_c("g", &g.empty_outcomes()).is_empty());
    }

    #[test]
    fn eval_s_examples() {
        let g = montana_a();
        for pruning in [Pruning::Enabled, Pruning::Disabled] {
            let mut ev = Evaluator::new(&g).with_pruning(pruning);
            let prison = g.labelled("prison");
            assert_eq!(ev.eval_s("b", &prison), OutcomeSet::from_numbers(3, &[1]));
            assert_eq!(ev.eval_s("g", &prison), OutcomeSet::from_numbers(3, &[2]));
            assert!(ev.eval_s("g", &g.labelled("free")).is_empty());
            assert!(ev.eval_s("b", &g.all_outcomes()).is_empty());
        }
    }

    #[test]
    fn nested_formulae() {
        let g = montana_a();
        assert_eq!(eval(&g, "C[b] C[g] prison"), OutcomeSet::from_numbers(3, &[2]));
        assert_eq!(eval(&g, "C[b] S[g] prison"), OutcomeSet::from_numbers(3, &[2]));
        assert!(eval(&g, "false").is_empty());
        assert!(eval(&g, "S[g] S[g] prison").is_empty());
    }

    #[test]
    fn absent_agents_are_never_responsible() {
        let g = montana_a();
        assert!(eval(&g, "C[d] prison").is_empty());
        assert!(eval(&g, "S[d] prison").is_empty());
        assert!(eval(&g, "C[d] free | S[d] !free").is_empty());
    }

    #[test]
    fn stats_reset_per_call() {
        let g = montana_a();
        let mut ev = Evaluator::new(&g);
        let f = parse_formula("S[b] prison & C[g] prison").unwrap();
        ev.truth_set(&f);
        let first = ev.stats();
        assert!(first.node_visits > 0);
        ev.truth_set(&f);
        assert_eq!(ev.stats(), first);
    }
}
