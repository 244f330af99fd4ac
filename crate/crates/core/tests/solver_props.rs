mod common;

use std::sync::Arc;

use aogame::algy::{make_algy, AlgyDescriptor, SortMethod};
use aogame::game::{play_match, GameState};
use aogame::graph::{generate, GeneratorSpec};
use aogame::solver::{game_value, game_value_with, Solver, SolverConfig};
use aogame::strategist::{make_strategist, StrategistDescriptor};
use aogame::{Edge, Graph};
use common::*;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;

fn value(g: &Graph) -> u32 {
    game_value(g).unwrap().value
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::with_cases(150) })]

    #[test]
    fn between_information_and_edge_count((n, edges) in arb_graph(1, 7, 12)) {
        let g = Graph::new(n, edges.iter().copied()).unwrap();
        let c = value(&g);
        let a = acyclic_orientations(n, &edges).len();
        prop_assert!(ceil_log2(a) <= c && c as usize <= edges.len(), "a = {}, c = {}", a, c);
    }

    #[test]
    fn agrees_with_plain_minimax((n, edges) in arb_graph(1, 7, 10)) {
        let g = Graph::new(n, edges.iter().copied()).unwrap();
        prop_assert_eq!(value(&g), GameOracle::new(n, &edges).value());
    }

    #[test]
    fn remaining_value_matches_oracle((n, edges) in arb_graph(2, 6, 10), moves in proptest::collection::vec((0usize..10, any::<bool>()), 0..4)) {
        let g = graph(n, &edges);
        let mut state = GameState::new(g.clone());
        let (mut mask, mut dirs) = (0u64, 0u64);
        for (i, flip) in moves {
            if i >= edges.len() || mask >> i & 1 == 1 {
                continue;
            }
            let (x, y) = arc(edges[i], flip);
            if let Ok(next) = state.apply_answer(Edge::new(x, y).unwrap(), aogame::Direction::new(x, y)) {
                state = next;
                mask |= 1 << i;
                dirs |= u64::from(flip) << i;
            }
        }
        let mut solver = Solver::new(g, SolverConfig::default()).unwrap();
        prop_assert_eq!(solver.remaining_value(&state), GameOracle::new(n, &edges).value_from(mask, dirs));
    }
}

#[test]
fn all_small_graphs_agree_with_plain_minimax() {
    for n in 1..=5 {
        for edges in nonisomorphic_graphs(n) {
            let g = Graph::new(n, edges.iter().copied()).unwrap();
            assert_eq!(value(&g), GameOracle::new(n, &edges).value(), "{edges:?}");
        }
    }
}

#[test]
fn isomorphism_invariance() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
    let graphs = [
        generate(&GeneratorSpec::cycle(6)).unwrap(),
        generate(&GeneratorSpec::gnp(6, 0.5, 2)).unwrap(),
        generate(&GeneratorSpec::gnp(7, 0.35, 8)).unwrap(),
        Graph::new(6, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3)]).unwrap(),
    ];
    for g in graphs {
        let c = value(&g);
        let mut perm: Vec<usize> = (0..g.n()).collect();
        for _ in 0..50 {
            perm.shuffle(&mut rng);
            assert_eq!(value(&g.relabel(&perm)), c, "{g:?} under {perm:?}");
        }
    }
}

#[test]
fn parallel_search_is_identical() {
    for g in [
        generate(&GeneratorSpec::complete(5)).unwrap(),
        generate(&GeneratorSpec::gnp(7, 0.5, 1)).unwrap(),
        generate(&GeneratorSpec::multipartite(&[2, 2, 2])).unwrap(),
    ] {
        let serial = game_value(&g).unwrap();
        let parallel = game_value_with(
            &g,
            SolverConfig {
                parallel: true,
                ..SolverConfig::default()
            },
        )
        .unwrap();
        assert_eq!(serial, parallel);
    }
}

#[test]
fn stars_and_turan_graphs_are_exhaustive() {
    for k in 0..=6 {
        assert_eq!(value(&generate(&GeneratorSpec::star(k)).unwrap()), k as u32);
    }
    for n in 1..=6 {
        assert_eq!(value(&generate(&GeneratorSpec::turan(n)).unwrap()), (n * n / 4) as u32);
    }
}

fn algys(g: &Arc<Graph>) -> Vec<AlgyDescriptor> {
    let mut out = vec![
        AlgyDescriptor::Exhaustive,
        AlgyDescriptor::GreedyForcing,
        AlgyDescriptor::two_round_default(1),
        "tworound:p=0.5:seed=4".parse().unwrap(),
        AlgyDescriptor::Optimal,
    ];
    if g.is_complete() {
        out.push(AlgyDescriptor::Sorting(SortMethod::BinaryInsertion));
        out.push(AlgyDescriptor::Sorting(SortMethod::MergeInsertion));
    }
    out
}

fn strategists(g: &Arc<Graph>) -> Vec<StrategistDescriptor> {
    let n = g.n();
    vec![
        StrategistDescriptor::Greedy,
        StrategistDescriptor::LinearOrder((0..n).collect()),
        StrategistDescriptor::LinearOrder((0..n).rev().collect()),
        StrategistDescriptor::Optimal,
    ]
}

#[test]
fn optimal_policies_are_consistent() {
    let graphs = [
        generate(&GeneratorSpec::complete(4)).unwrap(),
        generate(&GeneratorSpec::complete(5)).unwrap(),
        generate(&GeneratorSpec::cycle(5)).unwrap(),
        generate(&GeneratorSpec::gnp(6, 0.5, 3)).unwrap(),
        generate(&GeneratorSpec::gnp(7, 0.4, 9)).unwrap(),
        generate(&GeneratorSpec::multipartite(&[2, 2, 1])).unwrap(),
    ];
    for g in graphs {
        let g = Arc::new(g);
        let c = value(&g) as usize;
        let play = |a: &AlgyDescriptor, s: &StrategistDescriptor| {
            let mut a = make_algy(a, &g, None).unwrap();
            let mut s = make_strategist(s, &g).unwrap();
            play_match(&g, a.as_mut(), s.as_mut()).unwrap().total
        };
        assert_eq!(play(&AlgyDescriptor::Optimal, &StrategistDescriptor::Optimal), c);
        for s in strategists(&g) {
            assert!(play(&AlgyDescriptor::Optimal, &s) <= c, "{s} on {g:?}");
        }
        for a in algys(&g) {
            assert!(play(&a, &StrategistDescriptor::Optimal) >= c, "{a} on {g:?}");
        }
    }
}

#[test]
#[ignore = "about a minute; run with --ignored"]
fn seven_clique_takes_thirteen() {
    assert_eq!(value(&generate(&GeneratorSpec::complete(7)).unwrap()), 13);
}
