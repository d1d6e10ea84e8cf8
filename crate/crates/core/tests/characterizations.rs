//! Structural characterizations of the universal classes checked against
//! brute force, plus the local conditions robust matchings must satisfy.

use krobust::classes::{
    every_maximal_matching_perfect, exists_1_robust_mis_via_equivalence, existential_search, is_sputnik,
    mds_breaking_construction, universal_class_check, universal_class_check_with, Method,
};
use krobust::constructions::{gk_witness, join, sputnikify, Family};
use krobust::enumeration::enumerate_solutions;
use krobust::robustness::{check_k_robust, Budget, Guard};
use krobust::solutions::is_perfect_matching;
use krobust::sweep::connected_graphs;
use krobust::{gen_family, Graph, Problem, Solution};

const BUDGETS: [Budget; 4] = [Budget::Finite(1), Budget::Finite(2), Budget::Finite(3), Budget::Infinite];

#[test]
fn theorem_mode_agrees_with_brute_force() {
    for g in connected_graphs(6) {
        for p in [Problem::Mds, Problem::Mm] {
            for k in BUDGETS {
                let theorem = universal_class_check(p, &g, k, Method::Theorem).unwrap();
                let brute = universal_class_check(p, &g, k, Method::BruteForce).unwrap();
                assert_eq!(theorem.member, brute.member, "{p} k={k} on {}", g.edge_set());
            }
        }
    }
}

#[test]
fn mds_verdict_does_not_depend_on_budget() {
    for g in connected_graphs(6) {
        let m = g.edge_count().max(1);
        let one = universal_class_check(Problem::Mds, &g, Budget::Finite(1), Method::BruteForce).unwrap();
        let all = universal_class_check(Problem::Mds, &g, Budget::Finite(m), Method::BruteForce).unwrap();
        assert_eq!(one.member, all.member, "{}", g.edge_set());
    }
}

#[test]
fn breaking_construction_yields_single_edge_counterexample() {
    for g in connected_graphs(6) {
        match mds_breaking_construction(&g).unwrap() {
            None => assert!(is_sputnik(&g).unwrap()),
            Some((mds, cut)) => {
                let v = check_k_robust(Problem::Mds, &g, &mds, Budget::Finite(1)).unwrap();
                assert!(!v.robust, "{} with {mds}", g.edge_set());
                let reduced = g.remove_edges(&[cut].into_iter().collect()).unwrap();
                assert!(reduced.is_connected());
                assert!(!krobust::solutions::dominates(&reduced, mds.vertex_set().unwrap()));
            }
        }
    }
}

#[test]
fn sputnikified_graphs_are_universal_for_mds() {
    for g in connected_graphs(4) {
        let s = sputnikify(&g);
        assert!(is_sputnik(&s).unwrap());
        let v = universal_class_check(Problem::Mds, &s, Budget::Infinite, Method::BruteForce).unwrap();
        assert!(v.member, "{}", s.edge_set());
    }
}

#[test]
fn all_maximal_matchings_perfect_predicate() {
    for g in connected_graphs(6) {
        let all_perfect = enumerate_solutions(Problem::Mm, &g)
            .unwrap()
            .items
            .iter()
            .all(|s| is_perfect_matching(&g, s.edge_set().unwrap()));
        assert_eq!(every_maximal_matching_perfect(&g), all_perfect, "{}", g.edge_set());
    }
}

fn matchings_with_verdicts(g: &Graph) -> Vec<(Solution, bool)> {
    enumerate_solutions(Problem::Mm, g)
        .unwrap()
        .items
        .into_iter()
        .map(|s| {
            let robust = check_k_robust(Problem::Mm, g, &s, Budget::Finite(1)).unwrap().robust;
            (s, robust)
        })
        .collect()
}

#[test]
fn perfect_matchings_are_one_robust() {
    for g in connected_graphs(6) {
        for (s, robust) in matchings_with_verdicts(&g) {
            if is_perfect_matching(&g, s.edge_set().unwrap()) {
                assert!(robust, "{s} on {}", g.edge_set());
            }
        }
    }
}

/// In a 1-robust maximal matching, every neighbor of an unmatched vertex
/// is matched through a bridge, so no edge of a triangle through an
/// unmatched vertex is matched.
#[test]
fn unmatched_neighbors_are_matched_by_bridges() {
    for g in connected_graphs(6) {
        let bridges = g.bridges().unwrap();
        for (s, robust) in matchings_with_verdicts(&g) {
            if !robust {
                continue;
            }
            let m = s.edge_set().unwrap();
            let partner = |x: usize| m.iter().find(|e| e.touches(x)).map(|e| e.other(x));
            for u in (0..g.n()).filter(|&u| partner(u).is_none()) {
                for &v in g.neighbors(u) {
                    let w = partner(v).expect("maximality matches every neighbor");
                    assert!(bridges.contains((v, w).into()), "{s} on {}", g.edge_set());
                    assert!(!g.has_edge(u, w), "triangle edge ({v},{w}) matched in {s}");
                }
            }
        }
    }
}

#[test]
fn members_match_every_cycle_vertex_and_are_trees_or_bridgeless() {
    for g in connected_graphs(6) {
        let list = matchings_with_verdicts(&g);
        if !list.iter().all(|(_, robust)| *robust) {
            continue;
        }
        assert!(g.is_tree() || g.is_t_edge_connected(2).unwrap(), "{}", g.edge_set());
        for (s, _) in &list {
            let m = s.edge_set().unwrap();
            for v in (0..g.n()).filter(|&v| g.vertex_on_cycle(v).unwrap()) {
                assert!(m.iter().any(|e| e.touches(v)), "cycle vertex {v} unmatched by {s}");
            }
        }
    }
}

#[test]
fn hierarchy_witnesses_have_three_mis() {
    for k in 1..=4 {
        let w = gk_witness(k).unwrap();
        let n = 2 * k + 5;
        assert_eq!((w.graph.n(), w.graph.edge_count()), (n, (k + 2) * (k + 2) + 1));
        let a: Vec<usize> = w.a.clone().collect();
        let mut b_v: Vec<usize> = w.b.clone().collect();
        b_v.push(w.v);
        let mut rest: Vec<usize> = w.a.clone().filter(|&x| x != w.u).collect();
        rest.push(w.v);
        let mut expected: Vec<Solution> =
            [a, b_v, rest].into_iter().map(|s| Solution::Mis(s.into_iter().collect())).collect();
        expected.sort();
        assert_eq!(enumerate_solutions(Problem::Mis, &w.graph).unwrap().items, expected);
    }
}

#[test]
fn existential_mis_agrees_with_two_dominating_route() {
    for g in connected_graphs(6).into_iter().filter(|g| g.is_t_edge_connected(2).unwrap()) {
        let direct = existential_search(Problem::Mis, &g, Budget::Finite(1)).unwrap();
        let via = exists_1_robust_mis_via_equivalence(&g).unwrap();
        assert_eq!(direct.member, via.is_some(), "{}", g.edge_set());
        if let Some(s) = via {
            assert!(check_k_robust(Problem::Mis, &g, &Solution::Mis(s), Budget::Finite(1)).unwrap().robust);
        }
    }
}

/// A pendant keeps its MIS robust only because cutting it disconnects the
/// graph; once joined to another graph it can be cut off from the set
/// without disconnecting anything.
#[test]
fn join_exposes_pendant_protected_vertices() {
    let witness = gk_witness(1).unwrap().graph;
    let c4 = gen_family(Family::Cycle(4)).unwrap();
    let member = |g: &Graph, k| {
        universal_class_check_with(Problem::Mis, g, Budget::Finite(k), Method::BruteForce, Guard::Override)
            .unwrap()
            .member
    };
    assert!(member(&witness, 1) && member(&c4, 1));
    let joined = join(&witness, &c4);
    let v = universal_class_check_with(Problem::Mis, &joined, Budget::Finite(1), Method::BruteForce, Guard::Override)
        .unwrap();
    assert!(!v.member);
    let c = v.witness.unwrap().verdict.counterexample.unwrap();
    assert_eq!(c.removed.len(), 1);
    assert_eq!(c.removed.iter().next().unwrap().endpoints(), (0, 6));
}
