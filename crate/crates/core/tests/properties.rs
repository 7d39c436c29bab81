//! Property tests over arbitrary games and formulae.

use proptest::prelude::*;

use respcheck_core::eval::{Evaluator, Pruning};
use respcheck_core::fixtures::{fixture, FixtureName};
use respcheck_core::gap::{gap_levels, GapKind, GapQuery};
use respcheck_core::gen::{random_game, GenParams};
use respcheck_core::oracle::{achievement_points_ref, strategy_count, truth_set_ref, win_ref};
use respcheck_core::verify::{verify_game, FastEngine};
use respcheck_core::{eval_gap, gap_formula, parse_formula, parse_game, truth_set, Formula, Game, Tree};

const AGENTS: [&str; 3] = ["a", "b", "c"];
const PROPS: [&str; 2] = ["p", "q"];

fn arb_tree() -> impl Strategy<Value = Tree> {
    let leaf = proptest::sample::subsequence(PROPS.to_vec(), 0..=PROPS.len()).prop_map(Tree::outcome);
    leaf.prop_recursive(4, 32, 3, |inner| {
        (proptest::sample::select(AGENTS.to_vec()), prop::collection::vec(inner, 1..=3))
            .prop_map(|(agent, children)| Tree::decision(agent, children))
    })
}

/// Games small enough that brute-force strategy enumeration stays cheap.
fn arb_game() -> impl Strategy<Value = Game> {
    arb_tree()
        .prop_map(|t| Game::from_tree(&t).expect("generated trees are valid"))
        .prop_filter("too many strategies for the reference semantics", |g| {
            g.agents().iter().all(|a| strategy_count(g, a, g.root()) <= 4096)
        })
}

fn arb_formula(modal_depth: u32) -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        Just(Formula::Top),
        Just(Formula::Bottom),
        proptest::sample::select(PROPS.to_vec()).prop_map(Formula::prop),
    ];
    leaf.prop_recursive(modal_depth + 2, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::and(l, r)),
            (proptest::sample::select(AGENTS.to_vec()), inner.clone()).prop_map(|(a, f)| Formula::counterfactual(a, f)),
            (proptest::sample::select(AGENTS.to_vec()), inner).prop_map(|(a, f)| Formula::see_to(a, f)),
        ]
    })
}

fn children(f: &Formula) -> Vec<&Formula> {
    match f {
        Formula::Top | Formula::Bottom | Formula::Prop(_) => vec![],
        Formula::Not(g) | Formula::Counterfactual(_, g) | Formula::SeeTo(_, g) => vec![g],
        Formula::And(l, r) => vec![l, r],
    }
}

proptest! {
    #[test]
    fn formula_print_parse_round_trip(f in arb_formula(3)) {
        prop_assert_eq!(parse_formula(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn size_grows_strictly_with_embedding(f in arb_formula(3)) {
        for g in children(&f) {
            prop_assert!(g.size() < f.size());
        }
    }

    #[test]
    fn game_text_round_trip(g in arb_game()) {
        let text = g.to_string();
        let back = parse_game(&text).unwrap();
        prop_assert_eq!(back.to_tree(), g.to_tree());
        prop_assert_eq!(back.to_string(), text);
    }

    #[test]
    fn precedes_matches_path(g in arb_game()) {
        for &w in g.outcomes() {
            let path = g.path_to_root(w).unwrap();
            for n in g.nodes() {
                prop_assert_eq!(g.precedes(w, n).unwrap(), path.contains(&n));
            }
        }
    }

    #[test]
    fn children_partition_descendants(g in arb_game()) {
        prop_assert_eq!(g.descendant_outcomes(g.root()).unwrap(), g.all_outcomes());
        for n in g.nodes().filter(|&n| !g.is_outcome(n)) {
            let mut union = g.empty_outcomes();
            let mut total = 0;
            for &c in g.children(n) {
                let below = g.descendant_outcomes(c).unwrap();
                total += below.len();
                union.union_with(&below);
            }
            prop_assert_eq!(total, union.len());
            prop_assert_eq!(union, g.descendant_outcomes(n).unwrap());
        }
    }

    #[test]
    fn engine_matches_reference(g in arb_game(), f in arb_formula(3)) {
        let fast = truth_set(&g, &f);
        prop_assert_eq!(&fast, &truth_set_ref(&g, &f));
        let mut ev = Evaluator::new(&g);
        let points: Vec<_> = ev.achievement_points(&fast).iter().collect();
        let reference: Vec<_> = achievement_points_ref(&g, &fast).into_iter().map(|(n, _)| n).collect();
        prop_assert_eq!(points, reference);
        for a in g.agents() {
            prop_assert_eq!(ev.win_set(a, &fast), win_ref(&g, a, &fast));
        }
    }

    #[test]
    fn ability_lemmas(g in arb_game(), f in arb_formula(2), h in arb_formula(2)) {
        let phi = truth_set_ref(&g, &f);
        let not_phi = g.all_outcomes().difference(&phi);
        let weaker = phi.union(&truth_set_ref(&g, &h));
        for a in g.agents() {
            let win_a = win_ref(&g, a, &phi);
            prop_assert!(win_a.is_subset(&win_ref(&g, a, &weaker)));
            for b in g.agents().iter().filter(|b| *b != a) {
                let win_b = win_ref(&g, b, &not_phi);
                prop_assert!(win_a.intersection(&win_b).is_empty());
                if g.agents().len() == 2 {
                    prop_assert!(win_a.union(&win_b).is_full());
                }
            }
        }
    }

    #[test]
    fn negation_and_connectives(g in arb_game(), f in arb_formula(2), h in arb_formula(2)) {
        let (x, y) = (truth_set(&g, &f), truth_set(&g, &h));
        let omega = g.all_outcomes();
        prop_assert_eq!(truth_set(&g, &Formula::not(f.clone())), omega.difference(&x));
        prop_assert_eq!(truth_set(&g, &Formula::or(f.clone(), h.clone())), x.union(&y));
        prop_assert_eq!(truth_set(&g, &Formula::implies(f, h)), omega.difference(&x).union(&y));
    }

    #[test]
    fn invariant_suite_passes(g in arb_game(), fs in prop::collection::vec(arb_formula(2), 1..4)) {
        let report = verify_game(&g, &fs, &FastEngine::default());
        for p in &report.properties {
            prop_assert!(p.passed(), "{}: {:?}", p.name, p.failures);
        }
    }

    #[test]
    fn pruning_is_sound(g in arb_game(), f in arb_formula(2)) {
        let psi = truth_set(&g, &f);
        let mut pruned = Evaluator::new(&g);
        let mut full = Evaluator::new(&g).with_pruning(Pruning::Disabled);
        for a in AGENTS {
            prop_assert_eq!(pruned.eval_s(a, &psi), full.eval_s(a, &psi));
        }
    }

    #[test]
    fn gap_expansion_matches_iteration(g in arb_game(), base in arb_formula(1)) {
        prop_assume!(!g.agents().is_empty());
        for kind in GapKind::ALL {
            for order in 0..=3 {
                let q = GapQuery { base: base.clone(), kind, order };
                let expanded = gap_formula(&q, g.agents()).unwrap();
                prop_assert_eq!(truth_set(&g, &expanded), eval_gap(&g, &base, kind, order));
            }
        }
    }

    #[test]
    fn gap_hierarchy_shrinks(g in arb_game(), base in arb_formula(2)) {
        let bound = g.outcome_count() - 1;
        let proper = !truth_set(&g, &base).is_full();
        let levels: Vec<Vec<_>> =
            GapKind::ALL.iter().map(|&k| gap_levels(&g, &base, k).take(bound + 1).collect()).collect();
        for (kind, series) in GapKind::ALL.iter().zip(&levels) {
            for pair in series.windows(2) {
                prop_assert!(pair[1].is_subset(&pair[0]), "{kind} gap grows");
            }
            if proper && kind.has_vanishing_bound() {
                prop_assert!(series[bound].is_empty(), "{kind} gap survives order {bound}");
            }
        }
        for (cs, c) in levels[2].iter().zip(&levels[0]) {
            prop_assert!(cs.is_subset(c));
        }
    }

    #[test]
    fn generator_is_deterministic_and_bounded(seed in any::<u64>(), depth in 1usize..6, width in 1usize..4) {
        let params = GenParams::new(seed, depth, width, &["a", "b"], &["p"]);
        let g = random_game(&params).unwrap();
        prop_assert_eq!(g.to_string(), random_game(&params).unwrap().to_string());
        for n in g.nodes() {
            prop_assert!(g.children(n).len() <= width);
            prop_assert!(g.path_to_root(n).unwrap().len() <= depth);
        }
    }
}

#[test]
fn fixtures_round_trip() {
    let games = [
        fixture(FixtureName::MontanaA, None),
        fixture(FixtureName::MontanaB, None),
        fixture(FixtureName::MontanaHouse, None),
        fixture(FixtureName::Gn, Some(4)),
        fixture(FixtureName::Hog, Some(3)),
        fixture(FixtureName::Cvs, None),
    ];
    for g in games {
        let g = g.unwrap();
        assert_eq!(parse_game(&g.to_string()).unwrap().to_tree(), g.to_tree());
    }
}

#[test]
fn generated_game_matches_reference_on_fixed_formulae() {
    let g = random_game(&GenParams::new(42, 4, 3, &["a", "b", "c"], &["p", "q"])).unwrap();
    let texts = [
        "p",
        "q",
        "!p",
        "p & q",
        "p | q",
        "p -> q",
        "C[a] p",
        "C[b] q",
        "C[c] !p",
        "S[a] p",
        "S[b] q",
        "S[c] (p & q)",
        "C[a] C[a] p",
        "S[a] S[a] p",
        "S[b] C[a] q",
        "C[a] S[b] p",
        "!C[b] p & q",
        "S[a] !q",
        "C[c] (p | q)",
        "C[b] S[c] !p",
    ];
    for t in texts {
        let f = parse_formula(t).unwrap();
        assert_eq!(truth_set(&g, &f), truth_set_ref(&g, &f), "{t}");
    }
}
