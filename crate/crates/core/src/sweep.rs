//! Exhaustive cross-validation sweeps over small graphs.
//!
//! Each `criterion_*` function compares a structural characterization or a
//! construction claim against brute force and returns a [`CriterionReport`].
//! Every robustness verdict computed along the way goes through a shared
//! [`Recorder`], which [`criterion_monotonicity`] audits at the end.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::classes::{
    existential_search_observed, find_independent_2_dominating, is_sputnik, min_mis_size, universal_class_check_observed,
    in_universal_mm_many, in_universal_mm_one, Method, RobustnessObserver,
};
use crate::constructions::{add_universal_vertex, gen_family, gk_witness, join, k_copies_blowup, Family};
use crate::enumeration::enumerate_solutions;
use crate::error::Result;
use crate::graph::{Edge, EdgeSet, Graph, VertexSet};
use crate::robustness::{check_k_robust_with, Budget, Guard, RobustnessVerdict, SweepOptions};
use crate::solutions::{is_independent_2_dominating, Problem, Solution};

const MAX_REPORTED_FAILURES: usize = 10;
const RECORDED_VERTEX_LIMIT: usize = 16;

#[derive(Clone, Debug)]
pub struct CriterionReport {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub checked: usize,
    pub failures: Vec<String>,
    pub failure_count: usize,
    pub elapsed: Duration,
}

impl CriterionReport {
    fn new(id: usize, name: &'static str, checked: usize, failures: Vec<String>, elapsed: Duration) -> Self {
        let failure_count = failures.len();
        CriterionReport {
            id,
            name,
            passed: failures.is_empty(),
            checked,
            failures: failures.into_iter().take(MAX_REPORTED_FAILURES).collect(),
            failure_count,
            elapsed,
        }
    }

    fn with_time_limit(mut self, limit: Duration) -> Self {
        if self.elapsed >= limit {
            self.failure_count += 1;
            self.failures.push(format!("took {:.2?}, limit {:.0?}", self.elapsed, limit));
            self.passed = false;
        }
        self
    }
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} [{}] {}: {} checks, {} failures, {:.2}s",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.checked,
            self.failure_count,
            self.elapsed.as_secs_f64()
        )?;
        for msg in &self.failures {
            write!(f, "\n    {msg}")?;
        }
        Ok(())
    }
}

/// All connected labeled graphs on `1..=max_n` vertices, one per adjacency
/// encoding, ordered by vertex count and then by encoding.
pub fn connected_graphs(max_n: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let total = 1u64 << pairs.len();
        let graphs: Vec<Graph> = (0..total)
            .into_par_iter()
            .filter_map(|mask| {
                let edges = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p);
                let g = Graph::from_edges(n, edges).expect("distinct in-range pairs");
                g.is_connected().then_some(g)
            })
            .collect();
        out.extend(graphs);
    }
    out
}

fn pair_code(u: usize, v: usize) -> u32 {
    let (u, v) = if u < v { (u, v) } else { (v, u) };
    (u * (2 * RECORDED_VERTEX_LIMIT - u - 1) / 2 + (v - u - 1)) as u32
}

fn adjacency_code(g: &Graph) -> u128 {
    g.edges().iter().fold(0u128, |acc, e| acc | 1u128 << pair_code(e.u(), e.v()))
}

fn graph_from_code(n: usize, code: u128) -> Graph {
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|&(u, v)| code >> pair_code(u, v) & 1 == 1);
    Graph::from_edges(n, edges).expect("recorded graph")
}

fn solution_code(s: &Solution) -> u128 {
    match s {
        Solution::Mis(vs) | Solution::Mds(vs) => vs.iter().fold(0u128, |acc, v| acc | 1u128 << v),
        Solution::Mm(m) => m.iter().fold(0u128, |acc, e| acc | 1u128 << pair_code(e.u(), e.v())),
    }
}

fn solution_from_code(p: Problem, n: usize, code: u128) -> Solution {
    match p {
        Problem::Mis => Solution::Mis((0..n).filter(|&v| code >> v & 1 == 1).collect()),
        Problem::Mds => Solution::Mds((0..n).filter(|&v| code >> v & 1 == 1).collect()),
        Problem::Mm => Solution::Mm(
            (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .filter(|&(u, v)| code >> pair_code(u, v) & 1 == 1)
                .collect(),
        ),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct EvalKey {
    problem: Problem,
    n: usize,
    graph: u128,
    solution: u128,
}

/// Collects robustness verdicts keyed by (problem, graph, solution), with
/// budgets clamped to the edge count.
#[derive(Default)]
pub struct Recorder {
    verdicts: Mutex<HashMap<EvalKey, BTreeMap<usize, bool>>>,
    conflicts: Mutex<Vec<String>>,
    evaluations: AtomicUsize,
    unrecorded: AtomicUsize,
}

impl Recorder {
    pub fn evaluations(&self) -> usize {
        self.evaluations.load(Ordering::Relaxed)
    }

    /// Runs a connectivity-filtered robustness check and records it.
    pub fn check(&self, p: Problem, g: &Graph, s: &Solution, k: Budget, guard: Guard) -> Result<RobustnessVerdict> {
        let verdict = check_k_robust_with(p, g, s, k, SweepOptions { guard, keep_connected: true })?;
        self.observe(p, g, s, k, &verdict);
        Ok(verdict)
    }
}

impl RobustnessObserver for Recorder {
    fn observe(&self, p: Problem, g: &Graph, s: &Solution, k: Budget, verdict: &RobustnessVerdict) {
        self.evaluations.fetch_add(1, Ordering::Relaxed);
        if g.n() > RECORDED_VERTEX_LIMIT {
            self.unrecorded.fetch_add(1, Ordering::Relaxed);
            return;
        }
        let key = EvalKey { problem: p, n: g.n(), graph: adjacency_code(g), solution: solution_code(s) };
        let budget = k.clamp(g.edge_count());
        let mut map = self.verdicts.lock().expect("recorder lock");
        let previous = map.entry(key).or_default().insert(budget, verdict.robust);
        if previous.is_some_and(|prev| prev != verdict.robust) {
            drop(map);
            self.conflicts
                .lock()
                .expect("recorder lock")
                .push(format!("{p} on {} with {s}: verdict at k={budget} changed between runs", g.edge_set()));
        }
    }
}

fn fail_on_err<T>(failures: &mut Vec<String>, context: impl fmt::Display, r: Result<T>) -> Option<T> {
    match r {
        Ok(v) => Some(v),
        Err(e) => {
            failures.push(format!("{context}: {e}"));
            None
        }
    }
}

fn family(f: Family) -> Graph {
    gen_family(f).expect("valid family parameters")
}

/// Fixed regressions for the matching example on C6, K_{3,3} and K3.
pub fn criterion_figure_regression(rec: &Recorder) -> CriterionReport {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut checked = 0;
    let one = Budget::Finite(1);
    let two = Budget::Finite(2);

    let c6 = family(Family::Cycle(6));
    let perfect = Solution::Mm([(0, 1), (2, 3), (4, 5)].into_iter().collect());
    let partial = Solution::Mm([(0, 1), (3, 4)].into_iter().collect());
    if let Some(v) = fail_on_err(&mut failures, "C6 perfect matching", rec.check(Problem::Mm, &c6, &perfect, one, Guard::Enforce)) {
        checked += 1;
        if !v.robust {
            failures.push("C6 perfect matching should be 1-robust".into());
        }
    }
    if let Some(v) = fail_on_err(&mut failures, "C6 matching", rec.check(Problem::Mm, &c6, &partial, one, Guard::Enforce)) {
        checked += 1;
        let expected: EdgeSet = [(0, 1)].into_iter().collect();
        match v.counterexample {
            Some(c) if c.removed == expected => {}
            other => failures.push(format!("C6 {partial}: expected counterexample removing (0,1), got {other:?}")),
        }
    }

    let k33 = family(Family::CompleteBipartite(3, 3));
    if let Some(list) = fail_on_err(&mut failures, "K33 matchings", enumerate_solutions(Problem::Mm, &k33)) {
        for s in &list.items {
            for (k, expect) in [(one, true), (two, false)] {
                if let Some(v) = fail_on_err(&mut failures, "K33", rec.check(Problem::Mm, &k33, s, k, Guard::Enforce)) {
                    checked += 1;
                    if v.robust != expect {
                        failures.push(format!("K33 {s}: robust at k={k} is {}, expected {expect}", v.robust));
                    }
                }
            }
        }
    }

    let k3 = family(Family::Clique(3));
    if let Some(list) = fail_on_err(&mut failures, "K3 matchings", enumerate_solutions(Problem::Mm, &k3)) {
        for s in &list.items {
            if let Some(v) = fail_on_err(&mut failures, "K3", rec.check(Problem::Mm, &k3, s, one, Guard::Enforce)) {
                checked += 1;
                if v.robust {
                    failures.push(format!("K3 {s} should not be 1-robust"));
                }
            }
        }
    }
    CriterionReport::new(1, "matching regressions on C6, K33, K3", checked, failures, start.elapsed())
        .with_time_limit(Duration::from_secs(1))
}

/// Runs `check` on every graph in parallel and gathers failures.
fn sweep_graphs<F>(graphs: &[Graph], check: F) -> (usize, Vec<String>)
where
    F: Fn(&Graph, &mut Vec<String>) -> usize + Sync,
{
    let results: Vec<(usize, Vec<String>)> = graphs
        .par_iter()
        .map(|g| {
            let mut failures = Vec::new();
            let checked = check(g, &mut failures);
            (checked, failures)
        })
        .collect();
    let checked = results.iter().map(|r| r.0).sum();
    (checked, results.into_iter().flat_map(|r| r.1).collect())
}

fn universal_vs_predicate(
    rec: &Recorder,
    p: Problem,
    g: &Graph,
    budgets: &[Budget],
    expected: bool,
    failures: &mut Vec<String>,
) -> usize {
    let mut checked = 0;
    for &k in budgets {
        let r = universal_class_check_observed(p, g, k, Method::BruteForce, Guard::Enforce, rec);
        if let Some(v) = fail_on_err(failures, format!("{p} k={k} on {}", g.edge_set()), r) {
            checked += 1;
            if v.member != expected {
                failures.push(format!(
                    "{p} k={k} on n={} [{}]: brute force says {}, characterization says {expected}",
                    g.n(),
                    g.edge_set(),
                    v.member
                ));
            }
        }
    }
    checked
}

/// Every minimal dominating set is k-robust exactly on sputnik graphs.
pub fn criterion_mds_sputnik(graphs: &[Graph], rec: &Recorder) -> CriterionReport {
    let start = Instant::now();
    let budgets = [Budget::Finite(1), Budget::Finite(2), Budget::Infinite];
    let (checked, failures) = sweep_graphs(graphs, |g, failures| match is_sputnik(g) {
        Ok(expected) => universal_vs_predicate(rec, Problem::Mds, g, &budgets, expected, failures),
        Err(e) => {
            failures.push(format!("sputnik test on {}: {e}", g.edge_set()));
            0
        }
    });
    CriterionReport::new(2, "universal MDS class equals sputnik graphs", checked, failures, start.elapsed())
}

/// Every maximal matching is 1-robust exactly on trees, K_{t,t} and even cliques.
pub fn criterion_mm_one(graphs: &[Graph], rec: &Recorder) -> CriterionReport {
    let start = Instant::now();
    let (checked, failures) = sweep_graphs(graphs, |g, failures| {
        universal_vs_predicate(rec, Problem::Mm, g, &[Budget::Finite(1)], in_universal_mm_one(g), failures)
    });
    CriterionReport::new(3, "universal 1-robust MM class", checked, failures, start.elapsed())
}

/// For k >= 2 every maximal matching is k-robust exactly on trees and C4.
pub fn criterion_mm_many(graphs: &[Graph], rec: &Recorder) -> CriterionReport {
    let start = Instant::now();
    let budgets = [Budget::Finite(2), Budget::Finite(3), Budget::Infinite];
    let (checked, failures) = sweep_graphs(graphs, |g, failures| {
        universal_vs_predicate(rec, Problem::Mm, g, &budgets, in_universal_mm_many(g), failures)
    });
    CriterionReport::new(4, "universal k-robust MM class for k >= 2", checked, failures, start.elapsed())
}

/// The bipartite-plus-pendant witness separates the universal MIS classes
/// at k and k+1, broken by cutting one B vertex off from A minus u.
pub fn criterion_mis_hierarchy(rec: &Recorder) -> CriterionReport {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut checked = 0;
    for k in 1..=3 {
        let Some(w) = fail_on_err(&mut failures, format!("witness k={k}"), gk_witness(k)) else { continue };
        let g = &w.graph;
        if let Some(list) = fail_on_err(&mut failures, "witness MIS", enumerate_solutions(Problem::Mis, g)) {
            checked += 1;
            if list.len() != 3 {
                failures.push(format!("k={k}: expected 3 MIS, found {}", list.len()));
            }
        }
        let at_k = universal_class_check_observed(Problem::Mis, g, Budget::Finite(k), Method::BruteForce, Guard::Enforce, rec);
        if let Some(v) = fail_on_err(&mut failures, format!("k={k} membership"), at_k) {
            checked += 1;
            if !v.member {
                failures.push(format!("k={k}: witness graph should have every MIS {k}-robust"));
            }
        }
        let above = universal_class_check_observed(Problem::Mis, g, Budget::Finite(k + 1), Method::BruteForce, Guard::Enforce, rec);
        if let Some(v) = fail_on_err(&mut failures, format!("k={} membership", k + 1), above) {
            checked += 1;
            let removed = v.witness.as_ref().and_then(|cw| cw.verdict.counterexample.as_ref()).map(|c| c.removed.clone());
            let isolates_b = |removed: &EdgeSet| {
                w.b.clone().any(|b| {
                    let expected: EdgeSet = w.a.clone().filter(|&a| a != w.u).map(|a| Edge::new(a, b)).collect();
                    *removed == expected
                })
            };
            match (v.member, removed) {
                (false, Some(r)) if r.len() == k + 1 && isolates_b(&r) => {}
                (member, r) => failures.push(format!(
                    "k={k}: expected a size-{} cut around a B vertex at k={}, got member={member}, removed={r:?}",
                    k + 1,
                    k + 1
                )),
            }
        }
    }
    CriterionReport::new(5, "MIS hierarchy witness graphs", checked, failures, start.elapsed())
        .with_time_limit(Duration::from_secs(60))
}

/// On 2-edge-connected graphs the 1-robust MIS are exactly the independent
/// 2-dominating sets.
pub fn criterion_mis_two_dominating(graphs: &[Graph], rec: &Recorder) -> CriterionReport {
    let start = Instant::now();
    let two_connected: Vec<Graph> =
        graphs.par_iter().filter(|g| g.is_t_edge_connected(2).unwrap_or(false)).cloned().collect();
    let (checked, failures) = sweep_graphs(&two_connected, |g, failures| {
        let Some(list) = fail_on_err(failures, "MIS", enumerate_solutions(Problem::Mis, g)) else { return 0 };
        let mut robust = Vec::new();
        for s in &list.items {
            if let Some(v) = fail_on_err(failures, "MIS check", rec.check(Problem::Mis, g, s, Budget::Finite(1), Guard::Enforce)) {
                if v.robust {
                    robust.push(s.vertex_set().expect("vertex solution").clone());
                }
            }
        }
        let dominating: Vec<VertexSet> = (0u64..1 << g.n())
            .map(VertexSet::from_mask)
            .filter(|s| is_independent_2_dominating(g, s))
            .collect();
        let mut dominating_sorted = dominating.clone();
        dominating_sorted.sort();
        if robust != dominating_sorted {
            failures.push(format!("[{}]: 1-robust MIS {robust:?} vs 2-dominating {dominating_sorted:?}", g.edge_set()));
        }
        if let Some(found) = fail_on_err(failures, "search", find_independent_2_dominating(g)) {
            if found.as_ref() != dominating_sorted.first() {
                failures.push(format!("[{}]: search returned {found:?}", g.edge_set()));
            }
        }
        1
    });
    CriterionReport::new(6, "1-robust MIS equal independent 2-dominating sets", checked, failures, start.elapsed())
}

/// A 1-robust MIS exists in g iff a 3-robust MIS exists in its 2-copy
/// blowup, whose MIS are exactly the replicated MIS of g.
pub fn criterion_blowup(rec: &Recorder) -> CriterionReport {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut checked = 0;
    let copies = 2;
    let bases = [
        ("C4", family(Family::Cycle(4))),
        ("C5", family(Family::Cycle(5))),
        ("K4", family(Family::Clique(4))),
        ("C6", family(Family::Cycle(6))),
        ("P4", family(Family::Path(4))),
    ];
    for (name, g) in bases {
        let Some(blow) = fail_on_err(&mut failures, name, k_copies_blowup(&g, copies)) else { continue };
        let base = existential_search_observed(Problem::Mis, &g, Budget::Finite(1), Guard::Enforce, rec);
        let lifted = existential_search_observed(Problem::Mis, &blow, Budget::Finite(2 * copies - 1), Guard::Enforce, rec);
        if let (Some(b), Some(l)) = (fail_on_err(&mut failures, name, base), fail_on_err(&mut failures, name, lifted)) {
            checked += 1;
            if b.member != l.member {
                failures.push(format!("{name}: 1-robust MIS exists = {}, blowup 3-robust MIS exists = {}", b.member, l.member));
            }
        }
        let base_mis = enumerate_solutions(Problem::Mis, &g);
        let blow_mis = enumerate_solutions(Problem::Mis, &blow);
        if let (Some(bm), Some(lm)) = (fail_on_err(&mut failures, name, base_mis), fail_on_err(&mut failures, name, blow_mis)) {
            checked += 1;
            let n = g.n();
            let mut replicated: Vec<Solution> = bm
                .items
                .iter()
                .map(|s| {
                    let vs = s.vertex_set().expect("vertex solution");
                    Solution::Mis((0..copies).flat_map(|x| vs.iter().map(move |u| u + x * n)).collect())
                })
                .collect();
            replicated.sort();
            if replicated != lm.items {
                failures.push(format!("{name}: blowup MIS are not the replicated MIS"));
            }
        }
    }
    CriterionReport::new(7, "two-copy blowup", checked, failures, start.elapsed())
        .with_time_limit(Duration::from_secs(300))
}

/// Adding a universal vertex preserves existence of an independent
/// 2-dominating set and yields a 2-edge-connected graph.
pub fn criterion_universal_vertex(graphs: &[Graph]) -> CriterionReport {
    let start = Instant::now();
    let with_edges: Vec<Graph> = graphs.iter().filter(|g| g.edge_count() >= 1).cloned().collect();
    let (checked, failures) = sweep_graphs(&with_edges, |g, failures| {
        let Some(h) = fail_on_err(failures, "construction", add_universal_vertex(g)) else { return 0 };
        let base = fail_on_err(failures, "search", find_independent_2_dominating(g));
        let apex = fail_on_err(failures, "search", find_independent_2_dominating(&h));
        if let (Some(a), Some(b)) = (base, apex) {
            if a.is_some() != b.is_some() {
                failures.push(format!("[{}]: existence {} but {} after adding a universal vertex", g.edge_set(), a.is_some(), b.is_some()));
            }
        }
        if !h.is_t_edge_connected(2).unwrap_or(false) {
            failures.push(format!("[{}]: universal-vertex graph is not 2-edge-connected", g.edge_set()));
        }
        1
    });
    CriterionReport::new(8, "universal-vertex construction", checked, failures, start.elapsed())
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else { return false };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("successor exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Smallest adjacency code over all relabelings.
fn canonical_code(g: &Graph) -> u128 {
    let mut perm: Vec<usize> = (0..g.n()).collect();
    let mut best = u128::MAX;
    loop {
        let code = g.edges().iter().fold(0u128, |acc, e| acc | 1u128 << pair_code(perm[e.u()], perm[e.v()]));
        best = best.min(code);
        if !next_permutation(&mut perm) {
            return best;
        }
    }
}

/// Named graphs first, then one representative per isomorphism class of
/// the connected graphs on at most 6 vertices.
fn join_pool() -> Vec<(String, Graph)> {
    let spider = Graph::from_edges(7, [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)]).expect("spider");
    let mut pool: Vec<(String, Graph)> = vec![
        ("C4".into(), family(Family::Cycle(4))),
        ("P4".into(), family(Family::Path(4))),
        ("K33".into(), family(Family::CompleteBipartite(3, 3))),
        ("K34".into(), family(Family::CompleteBipartite(3, 4))),
        ("K35".into(), family(Family::CompleteBipartite(3, 5))),
        ("K44".into(), family(Family::CompleteBipartite(4, 4))),
        ("K36".into(), family(Family::CompleteBipartite(3, 6))),
        ("spider".into(), spider),
        ("G1".into(), gk_witness(1).expect("k >= 1").graph),
        ("G2".into(), gk_witness(2).expect("k >= 1").graph),
    ];
    let mut seen: Vec<u128> = pool.iter().filter(|(_, g)| g.n() <= 6).map(|(_, g)| canonical_code(g)).collect();
    let graphs = connected_graphs(6);
    let small: Vec<&Graph> = graphs.iter().collect();
    let codes: Vec<u128> = small.par_iter().map(|g| canonical_code(g)).collect();
    for (g, code) in small.into_iter().zip(codes) {
        if !seen.contains(&code) {
            seen.push(code);
            pool.push((format!("[{}]", g.edge_set()), g.clone()));
        }
    }
    pool
}

/// Pairs (i, j) with i <= j ordered by i + j, so early pairs mix the
/// graphs at the front of the pool.
fn diagonal_pairs(len: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..2 * len).flat_map(move |sum| (0..=sum / 2).filter(move |&i| sum - i < len).map(move |i| (i, sum - i)))
}

/// The MIS of a join are those of either side, relabeled.
fn join_mis_structure(g: &Graph, h: &Graph, joined: &Graph) -> Result<bool> {
    let mut expected: Vec<Solution> = enumerate_solutions(Problem::Mis, g)?.items;
    let shift = g.n();
    for s in enumerate_solutions(Problem::Mis, h)?.items {
        let vs = s.vertex_set().expect("vertex solution");
        expected.push(Solution::Mis(vs.iter().map(|v| v + shift).collect()));
    }
    expected.sort();
    Ok(enumerate_solutions(Problem::Mis, joined)?.items == expected)
}

/// Every MIS survives every removal of at most `k` edges, connected or not.
fn mis_robust_without_filter(g: &Graph, k: usize) -> Result<bool> {
    let plain = SweepOptions { guard: Guard::Override, keep_connected: false };
    for s in enumerate_solutions(Problem::Mis, g)?.items {
        if !check_k_robust_with(Problem::Mis, g, &s, Budget::Finite(k), plain)?.robust {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Joins of graphs whose MIS all have at least k+1 vertices and are all
/// k-robust keep both properties; a non-member of the k+1 class stays one.
///
/// Membership of the join is only sampled over graphs whose MIS are
/// k-robust even against disconnecting removals: a vertex protected in g
/// by a bridge loses that protection once the join reconnects it through
/// h, so pendant-based members such as the hierarchy witnesses break.
pub fn criterion_join(rec: &Recorder) -> CriterionReport {
    const MEMBER_PAIRS: usize = 12;
    const NON_MEMBER_PAIRS: usize = 6;
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut checked = 0;
    let pool = join_pool();
    let universal = |g: &Graph, k: usize| {
        universal_class_check_observed(Problem::Mis, g, Budget::Finite(k), Method::BruteForce, Guard::Override, rec)
    };

    for k in 1..=2 {
        // (name, graph, member of the k+1 class, robust without the filter)
        let qualifying: Vec<(String, Graph, bool, bool)> = pool
            .par_iter()
            .filter_map(|(name, g)| {
                if min_mis_size(g).ok()? <= k || !universal(g, k).ok()?.member {
                    return None;
                }
                Some((name.clone(), g.clone(), universal(g, k + 1).ok()?.member, mis_robust_without_filter(g, k).ok()?))
            })
            .collect();

        let unfiltered: Vec<usize> = (0..qualifying.len()).filter(|&i| qualifying[i].3).collect();
        let member_pairs: Vec<(usize, usize)> = diagonal_pairs(unfiltered.len())
            .map(|(i, j)| (unfiltered[i], unfiltered[j]))
            .filter(|&(i, j)| qualifying[i].1.n() + qualifying[j].1.n() <= RECORDED_VERTEX_LIMIT)
            .take(MEMBER_PAIRS)
            .collect();
        let breakers: Vec<usize> = (0..qualifying.len()).filter(|&i| !qualifying[i].2).collect();
        let non_member_pairs: Vec<(usize, usize)> = breakers
            .iter()
            .flat_map(|&i| (0..qualifying.len()).map(move |j| (i, j)))
            .filter(|&(i, j)| qualifying[i].1.n() + qualifying[j].1.n() <= RECORDED_VERTEX_LIMIT)
            .take(NON_MEMBER_PAIRS)
            .collect();
        if member_pairs.len() < 10 {
            failures.push(format!("k={k}: only {} qualifying pairs", member_pairs.len()));
        }
        if non_member_pairs.len() < 5 {
            failures.push(format!("k={k}: only {} pairs with a non-member", non_member_pairs.len()));
        }

        let outcomes: Vec<(usize, Vec<String>)> = member_pairs
            .par_iter()
            .map(|&(i, j)| (i, j, true))
            .chain(non_member_pairs.par_iter().map(|&(i, j)| (i, j, false)))
            .map(|(i, j, stays_member)| {
                let (gn, g, ..) = &qualifying[i];
                let (hn, h, ..) = &qualifying[j];
                let joined = join(g, h);
                let mut f = Vec::new();
                let label = format!("k={k} join({gn}, {hn})");
                if stays_member {
                    if let Some(v) = fail_on_err(&mut f, &label, universal(&joined, k)) {
                        if !v.member {
                            f.push(format!("{label}: lost membership"));
                        }
                    }
                    if let Some(size) = fail_on_err(&mut f, &label, min_mis_size(&joined)) {
                        if size <= k {
                            f.push(format!("{label}: smallest MIS has {size} vertices"));
                        }
                    }
                } else if let Some(v) = fail_on_err(&mut f, &label, universal(&joined, k + 1)) {
                    if v.member {
                        f.push(format!("{label}: became a member at k={}", k + 1));
                    }
                }
                if let Some(same) = fail_on_err(&mut f, &label, join_mis_structure(g, h, &joined)) {
                    if !same {
                        f.push(format!("{label}: MIS are not those of the two sides"));
                    }
                }
                (1, f)
            })
            .collect();
        for (c, f) in outcomes {
            checked += c;
            failures.extend(f);
        }
    }
    CriterionReport::new(9, "join preserves the robust MIS classes", checked, failures, start.elapsed())
}

/// Audits every recorded verdict: robustness at a budget implies robustness
/// at every smaller budget, and on (k+1)-edge-connected graphs the
/// connectivity filter does not change the verdict.
pub fn criterion_monotonicity(rec: &Recorder) -> CriterionReport {
    let start = Instant::now();
    let mut failures: Vec<String> = rec.conflicts.lock().expect("recorder lock").clone();
    let unrecorded = rec.unrecorded.load(Ordering::Relaxed);
    if unrecorded > 0 {
        failures.push(format!("{unrecorded} evaluations on graphs too large to record"));
    }
    let entries: Vec<(EvalKey, BTreeMap<usize, bool>)> =
        rec.verdicts.lock().expect("recorder lock").iter().map(|(k, v)| (*k, v.clone())).collect();

    let mut connectivity: HashMap<(usize, u128), usize> = HashMap::new();
    for (key, _) in &entries {
        connectivity
            .entry((key.n, key.graph))
            .or_insert_with(|| graph_from_code(key.n, key.graph).edge_connectivity().unwrap_or(usize::MAX));
    }

    let results: Vec<(usize, Vec<String>)> = entries
        .par_iter()
        .map(|(key, verdicts)| {
            let mut f = Vec::new();
            let mut checked = 0;
            let mut broken_at = None;
            for (&k, &robust) in verdicts {
                checked += 1;
                match (robust, broken_at) {
                    (false, None) => broken_at = Some(k),
                    (true, Some(b)) => f.push(format!("{} n={} code={:#x}: robust at k={k} but not at k={b}", key.problem, key.n, key.graph)),
                    _ => {}
                }
            }
            let lambda = connectivity[&(key.n, key.graph)];
            let g = graph_from_code(key.n, key.graph);
            let s = solution_from_code(key.problem, key.n, key.solution);
            for (&k, &robust) in verdicts {
                if lambda < k + 1 {
                    continue;
                }
                checked += 1;
                let plain = SweepOptions { guard: Guard::Override, keep_connected: false };
                match check_k_robust_with(key.problem, &g, &s, Budget::Finite(k), plain) {
                    Ok(v) if v.robust == robust => {}
                    Ok(v) => f.push(format!("{} on [{}] with {s} at k={k}: filtered {robust}, unfiltered {}", key.problem, g.edge_set(), v.robust)),
                    Err(e) => f.push(format!("unfiltered check: {e}")),
                }
            }
            (checked, f)
        })
        .collect();
    let checked = results.iter().map(|r| r.0).sum();
    failures.extend(results.into_iter().flat_map(|r| r.1));
    CriterionReport::new(10, "monotone in k and unaffected by the connectivity filter", checked, failures, start.elapsed())
}

/// Runs every criterion over the connected graphs on at most `max_n` vertices.
pub fn run_all(max_n: usize) -> Vec<CriterionReport> {
    run_all_with(max_n, |_| {})
}

/// As [`run_all`], calling `progress` as each report completes.
pub fn run_all_with(max_n: usize, mut progress: impl FnMut(&CriterionReport)) -> Vec<CriterionReport> {
    let graphs = connected_graphs(max_n);
    let rec = Recorder::default();
    let mut reports = Vec::new();
    let mut push = |r: CriterionReport| {
        progress(&r);
        reports.push(r);
    };
    push(criterion_figure_regression(&rec));
    push(criterion_mds_sputnik(&graphs, &rec));
    push(criterion_mm_one(&graphs, &rec));
    push(criterion_mm_many(&graphs, &rec));
    push(criterion_mis_hierarchy(&rec));
    push(criterion_mis_two_dominating(&graphs, &rec));
    push(criterion_blowup(&rec));
    push(criterion_universal_vertex(&graphs));
    push(criterion_join(&rec));
    push(criterion_monotonicity(&rec));
    reports
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn connected_graph_counts() {
        // Connected labeled graphs on 1..=5 vertices.
        let counts: Vec<usize> = (1..=5).map(|n| connected_graphs(n).len() - connected_graphs(n - 1).len()).collect();
        assert_eq!(counts, vec![1, 1, 4, 38, 728]);
    }

    #[test]
    fn codes_round_trip() {
        let g = family(Family::CompleteBipartite(2, 3));
        assert_eq!(graph_from_code(g.n(), adjacency_code(&g)), g);
        let s = Solution::Mm([(0, 2), (1, 3)].into_iter().collect());
        assert_eq!(solution_from_code(Problem::Mm, 5, solution_code(&s)), s);
    }

    #[test]
    fn canonical_code_ignores_labels() {
        let a = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let b = Graph::from_edges(4, [(2, 0), (0, 3), (3, 1)]).unwrap();
        let star = family(Family::Star(3));
        assert_eq!(canonical_code(&a), canonical_code(&b));
        assert_ne!(canonical_code(&a), canonical_code(&star));
    }

    #[test]
    fn diagonal_pairs_cover_upper_triangle() {
        let pairs: Vec<_> = diagonal_pairs(3).collect();
        assert_eq!(pairs, vec![(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)]);
    }

    #[test]
    fn small_run_passes() {
        for report in run_all(4) {
            assert!(report.passed, "{report}");
        }
    }
}
