//! Invariant suite for a single game.
//!
//! [`verify_game`] evaluates a list of formulae and checks the structural
//! properties every correct engine must satisfy: agreement with the reference
//! semantics, `C_aC_aφ ≡ C_aφ`, `S_bS_aφ ≡ S_bC_aφ ≡ ⊥` for distinct agents,
//! containments, ability-set lemmas, uniqueness of achievement points, the
//! two-agent no-gap theorem and the vanishing bound of the gap hierarchy.

use crate::eval::{Evaluator, Pruning};
use crate::formula::Formula;
use crate::game::Game;
use crate::gap::{eval_gap, gap_formula, gap_levels, vanishing_order, GapKind, GapQuery, Vanishing};
use crate::oracle;
use crate::sets::OutcomeSet;

/// Anything that computes truth sets.
pub trait Semantics {
    fn truth_set(&self, game: &Game, f: &Formula) -> OutcomeSet;
}

/// The linear-time evaluator.
#[derive(Clone, Copy, Debug, Default)]
pub struct FastEngine {
    pub pruning: Pruning,
}

impl Semantics for FastEngine {
    fn truth_set(&self, game: &Game, f: &Formula) -> OutcomeSet {
        Evaluator::new(game).with_pruning(self.pruning).truth_set(f)
    }
}

/// The brute-force reference semantics.
#[derive(Clone, Copy, Debug, Default)]
pub struct OracleEngine;

impl Semantics for OracleEngine {
    fn truth_set(&self, game: &Game, f: &Formula) -> OutcomeSet {
        oracle::truth_set_ref(game, f)
    }
}

/// Largest expanded gap formula the suite is willing to evaluate.
const VERIFY_EXPANSION_LIMIT: u128 = 20_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyReport {
    pub name: &'static str,
    pub checked: usize,
    pub failures: Vec<String>,
    /// Set when the property does not apply to this game.
    pub skipped: Option<String>,
}

impl PropertyReport {
    fn new(name: &'static str) -> Self {
        PropertyReport { name, checked: 0, failures: Vec::new(), skipped: None }
    }

    fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.failures.len() < 10 {
            self.failures.push(detail());
        } else if !ok {
            self.failures.push(String::from("..."));
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub properties: Vec<PropertyReport>,
    /// Largest vanishing order seen per gap kind over non-trivial bases.
    pub max_vanishing: Vec<(GapKind, Option<usize>)>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.properties.iter().all(PropertyReport::passed)
    }
}

/// Runs every applicable invariant over `formulas` on `game`.
pub fn verify_game(game: &Game, formulas: &[Formula], engine: &dyn Semantics) -> VerifyReport {
    let agents = game.agents();
    let omega = game.all_outcomes();
    let sets: Vec<OutcomeSet> = formulas.iter().map(|f| engine.truth_set(game, f)).collect();
    let mut ev = Evaluator::new(game);
    let mut props = Vec::new();

    let mut equiv = PropertyReport::new("oracle-equivalence");
    if oracle::within_oracle_scale(game) {
        for (f, set) in formulas.iter().zip(&sets) {
            let expected = oracle::truth_set_ref(game, f);
            equiv.check(*set == expected, || format!("[[{f}]]: engine {set}, reference {expected}"));
            let fast_points = ev.achievement_points(set);
            let ref_points: std::collections::BTreeSet<_> =
                oracle::achievement_points_ref(game, set).into_iter().map(|(n, _)| n).collect();
            equiv.check(fast_points.iter().collect::<std::collections::BTreeSet<_>>() == ref_points, || {
                format!("achievement points of [[{f}]] disagree")
            });
            for a in agents {
                let win = ev.win_set(a, set);
                equiv.check(win == oracle::win_ref(game, a, set), || format!("win_{a}([[{f}]]) disagrees"));
            }
        }
    } else {
        equiv.skipped = Some(format!("some agent owns more than {} decision nodes", oracle::MAX_ORACLE_DECISIONS));
    }
    props.push(equiv);

    let mut idem = PropertyReport::new("c-idempotence");
    let mut ss = PropertyReport::new("ss-empty");
    let mut sc = PropertyReport::new("sc-empty");
    let mut contain = PropertyReport::new("containment");
    let mut sibling = PropertyReport::new("sibling-lemma");
    let mut prune = PropertyReport::new("pruning-soundness");
    let mut unpruned = Evaluator::new(game).with_pruning(Pruning::Disabled);
    for (f, set) in formulas.iter().zip(&sets) {
        for a in agents {
            let ca = Formula::counterfactual(a.clone(), f.clone());
            let sa = Formula::see_to(a.clone(), f.clone());
            let ca_set = engine.truth_set(game, &ca);
            let sa_set = engine.truth_set(game, &sa);
            let cca = engine.truth_set(game, &Formula::counterfactual(a.clone(), ca.clone()));
            idem.check(cca == ca_set, || format!("[[C[{a}] {ca}]] = {cca} but [[{ca}]] = {ca_set}"));
            contain.check(ca_set.is_subset(set), || format!("[[{ca}]] = {ca_set} not within [[{f}]] = {set}"));
            contain.check(sa_set.is_subset(set), || format!("[[{sa}]] = {sa_set} not within [[{f}]] = {set}"));
            for b in agents.iter().filter(|b| *b != a) {
                let sba = Formula::see_to(b.clone(), sa.clone());
                let r = engine.truth_set(game, &sba);
                ss.check(r.is_empty(), || format!("[[{sba}]] = {r}"));
                let sbc = Formula::see_to(b.clone(), ca.clone());
                let r = engine.truth_set(game, &sbc);
                sc.check(r.is_empty(), || format!("[[{sbc}]] = {r}"));
            }
            let slow = unpruned.eval_s(a, set);
            prune.check(ev.eval_s(a, set) == slow, || format!("S[{a}] over [[{f}]]: pruned and unpruned differ"));

            if !set.is_full() {
                for i in sa_set.iter() {
                    let w = game.outcome(i);
                    let below = oracle::unique_achievement_witness(game, set, w)
                        .ok()
                        .map(|(_, n)| game.descendant_outcomes(n).expect("valid"));
                    sibling.check(below.as_ref().is_some_and(|b| b.is_subset(&sa_set)), || {
                        format!("[[{sa}]] contains w{} but not its siblings below the achievement point", i + 1)
                    });
                }
            }
        }
    }
    props.extend([idem, ss, sc, contain, sibling, prune]);

    let mut unique = PropertyReport::new("achievement-uniqueness");
    for set in sets.iter().filter(|s| !s.is_full()) {
        for i in set.iter() {
            let r = oracle::unique_achievement_witness(game, set, game.outcome(i));
            unique.check(r.is_ok(), || format!("{set}, w{}: {}", i + 1, r.unwrap_err()));
        }
    }
    props.push(unique);

    let mut win_props = PropertyReport::new("ability-lemmas");
    for (f, set) in formulas.iter().zip(&sets) {
        let neg = omega.difference(set);
        for a in agents {
            let win_a = ev.win_set(a, set);
            for b in agents.iter().filter(|b| *b != a) {
                let win_b_neg = ev.win_set(b, &neg);
                win_props.check(win_a.intersection(&win_b_neg).is_empty(), || {
                    format!("win_{a}([[{f}]]) meets win_{b}([[!{f}]])")
                });
                if agents.len() == 2 {
                    win_props.check(win_a.union(&win_b_neg).is_full(), || {
                        format!("two-agent determinacy fails for {a}, {b} on [[{f}]]")
                    });
                }
            }
            for smaller in &sets {
                let inter = set.intersection(smaller);
                win_props.check(ev.win_set(a, &inter).is_subset(&win_a), || {
                    format!("win_{a} is not monotone below [[{f}]]")
                });
            }
        }
    }
    props.push(win_props);

    let mut no_gap = PropertyReport::new("two-agent-no-gap");
    if agents.len() == 2 {
        for (f, set) in formulas.iter().zip(&sets) {
            if !set.is_full() {
                let gap = eval_gap(game, f, GapKind::Both, 1);
                no_gap.check(gap.is_empty(), || format!("first-order cs gap of {f} is {gap}"));
            }
        }
    } else {
        no_gap.skipped = Some(format!("game has {} agents", agents.len()));
    }
    props.push(no_gap);

    let mut hierarchy = PropertyReport::new("gap-hierarchy");
    let mut vanish = PropertyReport::new("vanishing-bound");
    let mut expansion = PropertyReport::new("gap-expansion-agreement");
    let mut max_vanishing = vec![(GapKind::Counterfactual, None), (GapKind::SeeTo, None), (GapKind::Both, None)];
    let bound = game.outcome_count() - 1;
    for (f, set) in formulas.iter().zip(&sets) {
        let series: Vec<Vec<OutcomeSet>> =
            GapKind::ALL.iter().map(|&k| gap_levels(game, f, k).take(bound + 1).collect()).collect();
        for (k, levels) in GapKind::ALL.iter().zip(&series) {
            for (i, pair) in levels.windows(2).enumerate() {
                hierarchy.check(pair[1].is_subset(&pair[0]), || format!("{k} gap of {f} grows at order {}", i + 1));
                if *k == GapKind::Counterfactual && !pair[0].is_empty() && !pair[0].is_full() {
                    hierarchy.check(pair[1].is_proper_subset(&pair[0]), || {
                        format!("c gap of {f} does not shrink strictly at order {}", i + 1)
                    });
                }
            }
        }
        for (cs, c) in series[2].iter().zip(&series[0]) {
            hierarchy.check(cs.is_subset(c), || format!("cs gap of {f} not within its c gap"));
        }
        if !set.is_full() {
            for (kind, slot) in max_vanishing.iter_mut() {
                match vanishing_order(game, f, *kind) {
                    Ok(Vanishing::At(i)) => *slot = Some(slot.map_or(i, |m: usize| m.max(i))),
                    Ok(Vanishing::NotByBound { .. }) => {}
                    Err(e) => vanish.check(false, || format!("{kind} gap of {f}: {e}")),
                }
                if kind.has_vanishing_bound() {
                    vanish.check(series_for(&series, *kind)[bound].is_empty(), || {
                        format!("{kind} gap of {f} nonempty at order {bound}")
                    });
                }
            }
        }
        for (&kind, levels) in GapKind::ALL.iter().zip(&series) {
            for (order, level) in levels.iter().enumerate().take(3) {
                let size = crate::gap::expansion_size(f.size(), kind, agents.len(), order);
                if agents.is_empty() || size > VERIFY_EXPANSION_LIMIT {
                    continue;
                }
                let q = GapQuery { base: f.clone(), kind, order };
                let expanded = gap_formula(&q, agents).expect("size checked");
                let direct = Evaluator::new(game).truth_set(&expanded);
                expansion
                    .check(direct == *level, || format!("{kind} gap of {f} at order {order}: {direct} vs {level}"));
            }
        }
    }
    props.extend([hierarchy, vanish, expansion]);

    VerifyReport { properties: props, max_vanishing }
}

fn series_for(series: &[Vec<OutcomeSet>], kind: GapKind) -> &[OutcomeSet] {
    let i = GapKind::ALL.iter().position(|&k| k == kind).expect("listed");
    &series[i]
}
