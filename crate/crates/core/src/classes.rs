//! Membership in the universal class (every solution is k-robust) and the
//! existential class (some solution is k-robust), decided either by the
//! structural characterizations or by brute force over all solutions.

use std::fmt;
use std::str::FromStr;

use crate::enumeration::{enumerate_solutions_with, maximal_independent_sets};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, VertexSet};
use crate::robustness::{check_k_robust_with, Budget, Guard, RobustnessVerdict, SweepOptions};
use crate::solutions::{greedy_complete, Problem, Solution};

pub const PERFECT_STABLE_VERTEX_LIMIT: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Universal,
    Existential,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Theorem,
    BruteForce,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "universal" => Ok(Mode::Universal),
            "existential" => Ok(Mode::Existential),
            other => Err(Error::InvalidParameter(format!("unknown mode {other:?}"))),
        }
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "theorem" => Ok(Method::Theorem),
            "bruteforce" | "brute-force" => Ok(Method::BruteForce),
            other => Err(Error::InvalidParameter(format!("unknown method {other:?}"))),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Theorem => "theorem",
            Method::BruteForce => "bruteforce",
        })
    }
}

/// A solution certifying a class verdict, with its robustness verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassWitness {
    pub solution: Solution,
    pub verdict: RobustnessVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassVerdict {
    pub problem: Problem,
    pub k: Budget,
    pub mode: Mode,
    pub member: bool,
    pub method: Method,
    /// Universal non-members carry a non-robust solution; existential
    /// members carry a k-robust one.
    pub witness: Option<ClassWitness>,
}

impl ClassVerdict {
    /// `MEMBER`/`NON-MEMBER`, the method line, then the witness block.
    pub fn render(&self) -> String {
        let mut out = String::from(if self.member { "MEMBER\n" } else { "NON-MEMBER\n" });
        let method = match (self.method, self.problem, self.mode) {
            (Method::BruteForce, Problem::Mis, Mode::Universal) => "oracle (no known characterization)".to_string(),
            (m, _, _) => m.to_string(),
        };
        out.push_str(&format!("METHOD: {method}\n"));
        if let Some(w) = &self.witness {
            out.push_str(&format!("SOLUTION: {}\n", w.solution));
            out.push_str(&w.verdict.render());
        }
        out
    }
}

fn require_connected(g: &Graph) -> Result<()> {
    if g.is_connected() {
        Ok(())
    } else {
        Err(Error::Disconnected)
    }
}

/// Every vertex on a cycle has a degree-one neighbor.
pub fn is_sputnik(g: &Graph) -> Result<bool> {
    require_connected(g)?;
    let on_cycle = g.cycle_vertices();
    Ok((0..g.n())
        .filter(|&v| on_cycle[v])
        .all(|v| g.neighbors(v).iter().any(|&w| g.degree(w) == 1)))
}

/// `K_{t,t}` for some `t >= 1`, recognized by two-coloring and counting.
pub fn is_balanced_complete_bipartite(g: &Graph) -> bool {
    let n = g.n();
    if n < 2 || n % 2 == 1 || !g.is_connected() {
        return false;
    }
    let t = n / 2;
    if g.edge_count() != t * t || (0..n).any(|v| g.degree(v) != t) {
        return false;
    }
    let mut color = vec![usize::MAX; n];
    color[0] = 0;
    let mut stack = vec![0];
    while let Some(x) = stack.pop() {
        for &y in g.neighbors(x) {
            if color[y] == usize::MAX {
                color[y] = 1 - color[x];
                stack.push(y);
            } else if color[y] == color[x] {
                return false;
            }
        }
    }
    // t-regular, bipartite, t^2 edges and connected: the sides have t
    // vertices each and every cross pair is an edge.
    color.iter().filter(|&&c| c == 0).count() == t
}

/// Complete graph on an even, positive number of vertices.
pub fn is_even_clique(g: &Graph) -> bool {
    let n = g.n();
    n >= 2 && n.is_multiple_of(2) && g.edge_count() == n * (n - 1) / 2
}

pub fn is_four_cycle(g: &Graph) -> bool {
    g.n() == 4 && g.edge_count() == 4 && (0..4).all(|v| g.degree(v) == 2) && g.is_connected()
}

/// Structural test for graphs where every maximal matching is perfect:
/// balanced complete bipartite graphs and cliques of even order.
pub fn every_maximal_matching_perfect(g: &Graph) -> bool {
    is_balanced_complete_bipartite(g) || is_even_clique(g)
}

/// The universal MM class for `k = 1`: trees, `K_{t,t}`, even cliques.
pub fn in_universal_mm_one(g: &Graph) -> bool {
    g.is_tree() || every_maximal_matching_perfect(g)
}

/// The universal MM class for `k >= 2`: trees and `C_4`.
pub fn in_universal_mm_many(g: &Graph) -> bool {
    g.is_tree() || is_four_cycle(g)
}

/// Builds a minimal dominating set that a single edge removal breaks, for a
/// connected graph that is not sputnik. Returns the set together with the
/// breaking edge, or `None` for sputnik graphs.
///
/// Pick a cycle vertex `u` without a degree-one neighbor. If some neighbor
/// `v` of `u` only sees vertices of `N[u]`, start from `V \ (N[v] \ {u})`
/// and cut `(u, v)`; otherwise take a cycle neighbor `a` of `u`, start from
/// `V \ (N[u] \ {a})` and cut `(u, a)`. The start set dominates, and the
/// greedy minimization keeps the single dominator of the cut-off vertex.
pub fn mds_breaking_construction(g: &Graph) -> Result<Option<(Solution, Edge)>> {
    require_connected(g)?;
    let bridge = g.bridge_flags();
    let on_cycle = g.cycle_vertices();
    let Some(u) = (0..g.n()).find(|&u| on_cycle[u] && g.neighbors(u).iter().all(|&w| g.degree(w) != 1)) else {
        return Ok(None);
    };
    let mut closed_u = vec![false; g.n()];
    closed_u[u] = true;
    for &w in g.neighbors(u) {
        closed_u[w] = true;
    }
    let inside = g.neighbors(u).iter().copied().find(|&v| g.neighbors(v).iter().all(|&w| closed_u[w]));

    let (start, cut): (Vec<bool>, Edge) = match inside {
        Some(v) => {
            let mut keep = vec![true; g.n()];
            keep[v] = false;
            for &w in g.neighbors(v) {
                if w != u {
                    keep[w] = false;
                }
            }
            (keep, Edge::new(u, v))
        }
        None => {
            let a = g
                .incident_edges(u)
                .iter()
                .find(|&&ei| !bridge[ei])
                .map(|&ei| g.edges()[ei].other(u))
                .expect("a cycle vertex has a non-bridge edge");
            let keep = (0..g.n()).map(|x| !closed_u[x] || x == a).collect();
            (keep, Edge::new(u, a))
        }
    };
    let seed = Solution::Mds((0..g.n()).filter(|&x| start[x]).collect());
    let mds = greedy_complete(Problem::Mds, g, &seed)?;
    Ok(Some((mds, cut)))
}

pub fn universal_class_check(p: Problem, g: &Graph, k: Budget, method: Method) -> Result<ClassVerdict> {
    universal_class_check_with(p, g, k, method, Guard::Enforce)
}

pub fn universal_class_check_with(
    p: Problem,
    g: &Graph,
    k: Budget,
    method: Method,
    guard: Guard,
) -> Result<ClassVerdict> {
    universal_class_check_observed(p, g, k, method, guard, &())
}

/// Receives every robustness verdict computed by the brute-force class checks.
pub trait RobustnessObserver: Sync {
    fn observe(&self, p: Problem, g: &Graph, s: &Solution, k: Budget, verdict: &RobustnessVerdict);
}

impl RobustnessObserver for () {
    fn observe(&self, _: Problem, _: &Graph, _: &Solution, _: Budget, _: &RobustnessVerdict) {}
}

pub fn universal_class_check_observed(
    p: Problem,
    g: &Graph,
    k: Budget,
    method: Method,
    guard: Guard,
    observer: &dyn RobustnessObserver,
) -> Result<ClassVerdict> {
    require_connected(g)?;
    let verdict = |member, witness| ClassVerdict { problem: p, k, mode: Mode::Universal, member, method, witness };
    match method {
        Method::Theorem => {
            if k == Budget::Finite(0) {
                return Ok(verdict(true, None));
            }
            match p {
                Problem::Mis => Err(Error::NotCharacterized(p)),
                Problem::Mds => match mds_breaking_construction(g)? {
                    None => Ok(verdict(true, None)),
                    Some((solution, _)) => {
                        // A size-one counterexample exists, so the verdict at
                        // budget one is the canonical one for every k >= 1.
                        let opts = SweepOptions { guard: Guard::Override, keep_connected: true };
                        let rv = check_k_robust_with(p, g, &solution, Budget::Finite(1), opts)?;
                        Ok(verdict(false, Some(ClassWitness { solution, verdict: rv })))
                    }
                },
                Problem::Mm => {
                    let member = if k == Budget::Finite(1) { in_universal_mm_one(g) } else { in_universal_mm_many(g) };
                    Ok(verdict(member, None))
                }
            }
        }
        Method::BruteForce => {
            let opts = SweepOptions { guard, keep_connected: true };
            for solution in enumerate_solutions_with(p, g, guard)?.items {
                let rv = check_k_robust_with(p, g, &solution, k, opts)?;
                observer.observe(p, g, &solution, k, &rv);
                if !rv.robust {
                    return Ok(verdict(false, Some(ClassWitness { solution, verdict: rv })));
                }
            }
            Ok(verdict(true, None))
        }
    }
}

/// Is some solution k-robust? The witness is the first one in canonical order.
pub fn existential_search(p: Problem, g: &Graph, k: Budget) -> Result<ClassVerdict> {
    existential_search_with(p, g, k, Guard::Enforce)
}

pub fn existential_search_with(p: Problem, g: &Graph, k: Budget, guard: Guard) -> Result<ClassVerdict> {
    existential_search_observed(p, g, k, guard, &())
}

pub fn existential_search_observed(
    p: Problem,
    g: &Graph,
    k: Budget,
    guard: Guard,
    observer: &dyn RobustnessObserver,
) -> Result<ClassVerdict> {
    require_connected(g)?;
    let opts = SweepOptions { guard, keep_connected: true };
    let mut witness = None;
    for solution in enumerate_solutions_with(p, g, guard)?.items {
        let rv = check_k_robust_with(p, g, &solution, k, opts)?;
        observer.observe(p, g, &solution, k, &rv);
        if rv.robust {
            witness = Some(ClassWitness { solution, verdict: rv });
            break;
        }
    }
    Ok(ClassVerdict {
        problem: p,
        k,
        mode: Mode::Existential,
        member: witness.is_some(),
        method: Method::BruteForce,
        witness,
    })
}

/// The canonically least independent 2-dominating set, if any.
///
/// Sets are generated in lexicographic order of their sorted members (a
/// set before its extensions), so the first hit is the least one.
pub fn find_independent_2_dominating(g: &Graph) -> Result<Option<VertexSet>> {
    Guard::Enforce.check("vertices", g.n(), PERFECT_STABLE_VERTEX_LIMIT)?;
    let n = g.n();
    let masks = g.masks()?;
    let mut settled_at = vec![Vec::new(); n];
    for w in 0..n {
        let last = g.neighbors(w).last().copied().unwrap_or(w).max(w);
        settled_at[last].push(w);
    }
    let search = PerfectStableSearch { n, masks, settled_at };
    Ok(search.run(0, 0).map(VertexSet::from_mask))
}

struct PerfectStableSearch<'a> {
    n: usize,
    masks: &'a [u64],
    settled_at: Vec<Vec<usize>>,
}

impl PerfectStableSearch<'_> {
    fn covered_twice(&self, w: usize, chosen: u64) -> bool {
        chosen >> w & 1 == 1 || (self.masks[w] & chosen).count_ones() >= 2
    }

    /// `decided` vertices `0..decided` have their membership fixed.
    fn run(&self, chosen: u64, decided: usize) -> Option<u64> {
        if (decided..self.n).all(|w| self.covered_twice(w, chosen))
            && (0..decided).all(|w| self.covered_twice(w, chosen))
        {
            return Some(chosen);
        }
        for j in decided..self.n {
            if self.masks[j] & chosen != 0 {
                continue;
            }
            let next = chosen | (1u64 << j);
            let viable = (decided..=j).all(|i| self.settled_at[i].iter().all(|&w| self.covered_twice(w, next)));
            if viable {
                if let Some(found) = self.run(next, j + 1) {
                    return Some(found);
                }
            }
        }
        None
    }
}

/// On 2-edge-connected graphs the 1-robust maximal independent sets are
/// exactly the independent 2-dominating sets; this answers existence of a
/// 1-robust MIS through that equivalence.
pub fn exists_1_robust_mis_via_equivalence(g: &Graph) -> Result<Option<VertexSet>> {
    if !g.is_t_edge_connected(2)? {
        return Err(Error::NotTwoEdgeConnected);
    }
    find_independent_2_dominating(g)
}

/// Smallest cardinality of a maximal independent set.
pub fn min_mis_size(g: &Graph) -> Result<usize> {
    min_mis_size_with(g, Guard::Enforce)
}

pub fn min_mis_size_with(g: &Graph, guard: Guard) -> Result<usize> {
    guard.check("vertices", g.n(), crate::enumeration::VERTEX_LIMIT)?;
    g.masks()?;
    Ok(maximal_independent_sets(g).iter().map(VertexSet::len).min().unwrap_or(0))
}

/// Membership in the class of graphs whose every MIS has at least `p` vertices.
pub fn in_min_mis_class(g: &Graph, p: usize) -> Result<bool> {
    Ok(min_mis_size(g)? >= p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{gen_family, sputnikify, Family};
    use crate::graph::EdgeSet;

    fn fam(f: Family) -> Graph {
        gen_family(f).unwrap()
    }

    fn g(n: usize, pairs: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, pairs.iter().copied()).unwrap()
    }

    fn vs(v: &[usize]) -> VertexSet {
        v.iter().copied().collect()
    }

    fn balanced_biclique(t: usize) -> Graph {
        fam(Family::CompleteBipartite(t, t))
    }

    fn k4() -> Graph {
        fam(Family::Clique(4))
    }

    fn c4() -> Graph {
        fam(Family::Cycle(4))
    }

    #[test]
    fn sputnik_examples() {
        assert!(is_sputnik(&fam(Family::Path(5))).unwrap());
        assert!(!is_sputnik(&c4()).unwrap());
        assert!(is_sputnik(&sputnikify(&fam(Family::Clique(3)))).unwrap());
        assert_eq!(is_sputnik(&g(4, &[(0, 1), (2, 3)])), Err(Error::Disconnected));
    }

    #[test]
    fn recognizers() {
        assert!(is_balanced_complete_bipartite(&balanced_biclique(3)));
        assert!(is_balanced_complete_bipartite(&c4()));
        assert!(!is_balanced_complete_bipartite(&fam(Family::CompleteBipartite(2, 3))));
        assert!(!is_balanced_complete_bipartite(&fam(Family::Cycle(6))));
        assert!(is_even_clique(&k4()));
        assert!(!is_even_clique(&fam(Family::Clique(3))));
        assert!(is_four_cycle(&c4()));
        assert!(!is_four_cycle(&fam(Family::Path(4))));
        // K2 is simultaneously a tree, K_{1,1} and an even clique.
        let k2 = fam(Family::Clique(2));
        assert!(k2.is_tree() && is_balanced_complete_bipartite(&k2) && is_even_clique(&k2));
    }

    #[test]
    fn universal_theorem_examples() {
        let v = universal_class_check(Problem::Mm, &k4(), Budget::Finite(1), Method::Theorem).unwrap();
        assert!(v.member);
        let v = universal_class_check(Problem::Mm, &k4(), Budget::Finite(2), Method::Theorem).unwrap();
        assert!(!v.member);
        let v = universal_class_check(Problem::Mm, &c4(), Budget::Finite(100), Method::Theorem).unwrap();
        assert!(v.member);
        assert_eq!(
            universal_class_check(Problem::Mis, &c4(), Budget::Finite(1), Method::Theorem),
            Err(Error::NotCharacterized(Problem::Mis))
        );
    }

    #[test]
    fn universal_bruteforce_examples() {
        let v = universal_class_check(Problem::Mds, &c4(), Budget::Finite(1), Method::BruteForce).unwrap();
        assert!(!v.member);
        let w = v.witness.unwrap();
        assert_eq!(w.solution, Solution::Mds(vs(&[0, 1])));
        assert!(!w.verdict.robust);
        let v = universal_class_check(Problem::Mis, &c4(), Budget::Finite(1), Method::BruteForce).unwrap();
        assert!(v.member && v.witness.is_none());
    }

    #[test]
    fn theorem_mds_witness_is_genuine() {
        let v = universal_class_check(Problem::Mds, &c4(), Budget::Infinite, Method::Theorem).unwrap();
        assert!(!v.member);
        let w = v.witness.unwrap();
        assert_eq!(w.verdict.counterexample.unwrap().removed.len(), 1);
    }

    #[test]
    fn existential_examples() {
        let c5 = fam(Family::Cycle(5));
        assert!(!existential_search(Problem::Mis, &c5, Budget::Finite(1)).unwrap().member);
        assert!(!existential_search(Problem::Mm, &fam(Family::Clique(3)), Budget::Finite(1)).unwrap().member);
        let v = existential_search(Problem::Mis, &c4(), Budget::Finite(1)).unwrap();
        assert!(v.member);
        assert_eq!(v.witness.unwrap().solution, Solution::Mis(vs(&[0, 2])));
    }

    #[test]
    fn perfect_stable_examples() {
        assert_eq!(find_independent_2_dominating(&c4()).unwrap(), Some(vs(&[0, 2])));
        assert_eq!(find_independent_2_dominating(&fam(Family::Cycle(5))).unwrap(), None);
        let k23 = fam(Family::CompleteBipartite(2, 3));
        assert_eq!(find_independent_2_dominating(&k23).unwrap(), Some(vs(&[0, 1])));
        assert_eq!(find_independent_2_dominating(&Graph::empty(1)).unwrap(), Some(vs(&[0])));
    }

    #[test]
    fn perfect_stable_is_least_by_brute_force() {
        for graph in [c4(), fam(Family::Cycle(6)), fam(Family::CompleteBipartite(2, 3)), k4(), fam(Family::Path(5))] {
            let mut all: Vec<VertexSet> = (0u64..1 << graph.n())
                .map(VertexSet::from_mask)
                .filter(|s| crate::solutions::is_independent_2_dominating(&graph, s))
                .collect();
            all.sort();
            assert_eq!(find_independent_2_dominating(&graph).unwrap(), all.first().cloned(), "{graph:?}");
        }
    }

    #[test]
    fn equivalence_path() {
        let found = exists_1_robust_mis_via_equivalence(&c4()).unwrap().unwrap();
        let verdict =
            crate::robustness::check_k_robust(Problem::Mis, &c4(), &Solution::Mis(found), Budget::Finite(1)).unwrap();
        assert!(verdict.robust);
        assert_eq!(exists_1_robust_mis_via_equivalence(&fam(Family::Cycle(5))).unwrap(), None);
        assert_eq!(exists_1_robust_mis_via_equivalence(&k4()).unwrap(), None);
        assert_eq!(exists_1_robust_mis_via_equivalence(&fam(Family::Path(3))), Err(Error::NotTwoEdgeConnected));
    }

    #[test]
    fn min_mis_examples() {
        assert_eq!(min_mis_size(&fam(Family::Clique(5))).unwrap(), 1);
        assert_eq!(min_mis_size(&c4()).unwrap(), 2);
        assert_eq!(min_mis_size(&fam(Family::Cycle(6))).unwrap(), 2);
        assert!(in_min_mis_class(&c4(), 2).unwrap());
        assert!(!in_min_mis_class(&c4(), 3).unwrap());
    }

    #[test]
    fn mds_construction_on_both_cases() {
        // C4: no inside node; K4: every neighbor of u is inside.
        for graph in [c4(), k4(), g(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4)])] {
            let (mds, cut) = mds_breaking_construction(&graph).unwrap().unwrap();
            assert!(crate::solutions::check_solution(Problem::Mds, &graph, &mds).unwrap());
            let reduced = graph.remove_edges(&[cut].into_iter().collect::<EdgeSet>()).unwrap();
            assert!(reduced.is_connected());
            assert!(!crate::solutions::dominates(&reduced, mds.vertex_set().unwrap()));
        }
        assert_eq!(mds_breaking_construction(&fam(Family::Path(4))).unwrap(), None);
    }
}
