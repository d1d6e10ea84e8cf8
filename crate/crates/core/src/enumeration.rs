//! Exhaustive listing of all solutions of a problem on a small graph.
//!
//! [`enumerate_solutions`] uses backtracking (Bron–Kerbosch on the
//! complement for MIS, include/exclude search with domination pruning for
//! MDS, branching over edges for MM). [`enumerate_by_subset_filter`] tests
//! every vertex or edge subset against the full predicate and serves as the
//! reference the backtracking enumerators are checked against.

use crate::error::{Error, Result};
use crate::graph::{Edge, EdgeSet, Graph, VertexSet};
use crate::robustness::Guard;
use crate::solutions::{check_solution, Problem, Solution};

pub const VERTEX_LIMIT: usize = 20;
pub const MATCHING_EDGE_LIMIT: usize = 24;

/// All solutions of one problem, in canonical order (sorted member tuples).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionList {
    pub problem: Problem,
    pub items: Vec<Solution>,
    pub complete: bool,
}

impl SolutionList {
    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }
}

fn check_guards(p: Problem, g: &Graph, guard: Guard) -> Result<()> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    match p {
        Problem::Mis | Problem::Mds => guard.check("vertices", g.n(), VERTEX_LIMIT)?,
        Problem::Mm => guard.check("edges", g.edge_count(), MATCHING_EDGE_LIMIT)?,
    }
    if g.n() > 64 {
        return Err(Error::TooManyVertices(g.n()));
    }
    Ok(())
}

pub fn enumerate_solutions(p: Problem, g: &Graph) -> Result<SolutionList> {
    enumerate_solutions_with(p, g, Guard::Enforce)
}

pub fn enumerate_solutions_with(p: Problem, g: &Graph, guard: Guard) -> Result<SolutionList> {
    check_guards(p, g, guard)?;
    let mut items = match p {
        Problem::Mis => maximal_independent_sets(g).into_iter().map(Solution::Mis).collect::<Vec<_>>(),
        Problem::Mds => minimal_dominating_sets(g).into_iter().map(Solution::Mds).collect(),
        Problem::Mm => maximal_matchings(g).into_iter().map(Solution::Mm).collect(),
    };
    items.sort();
    Ok(SolutionList { problem: p, items, complete: true })
}

/// Reference enumerator: filters every subset through [`check_solution`].
pub fn enumerate_by_subset_filter(p: Problem, g: &Graph) -> Result<SolutionList> {
    check_guards(p, g, Guard::Enforce)?;
    let mut items = Vec::new();
    match p {
        Problem::Mis | Problem::Mds => {
            for mask in 0u64..(1u64 << g.n()) {
                let s = Solution::vertices(p, VertexSet::from_mask(mask))?;
                if check_solution(p, g, &s)? {
                    items.push(s);
                }
            }
        }
        Problem::Mm => {
            let m = g.edge_count();
            for mask in 0u64..(1u64 << m) {
                let s = Solution::Mm((0..m).filter(|i| mask >> i & 1 == 1).map(|i| g.edges()[i]).collect());
                if check_solution(p, g, &s)? {
                    items.push(s);
                }
            }
        }
    }
    items.sort();
    Ok(SolutionList { problem: p, items, complete: true })
}

/// Maximal independent sets as maximal cliques of the complement
/// (Bron–Kerbosch with pivoting). Requires `n <= 64`.
pub(crate) fn maximal_independent_sets(g: &Graph) -> Vec<VertexSet> {
    let n = g.n();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let non_adj: Vec<u64> = (0..n).map(|v| all & !g.neighbor_mask(v) & !(1u64 << v)).collect();
    let mut out = Vec::new();
    bron_kerbosch(&non_adj, 0, all, 0, &mut out);
    out
}

fn bron_kerbosch(non_adj: &[u64], r: u64, mut p: u64, mut x: u64, out: &mut Vec<VertexSet>) {
    if p == 0 {
        if x == 0 {
            out.push(VertexSet::from_mask(r));
        }
        return;
    }
    let mut pivot_src = p | x;
    let mut pivot = pivot_src.trailing_zeros() as usize;
    let mut best = -1i32;
    while pivot_src != 0 {
        let u = pivot_src.trailing_zeros() as usize;
        pivot_src &= pivot_src - 1;
        let score = (p & non_adj[u]).count_ones() as i32;
        if score > best {
            best = score;
            pivot = u;
        }
    }
    let mut branch = p & !non_adj[pivot];
    while branch != 0 {
        let v = branch.trailing_zeros() as usize;
        branch &= branch - 1;
        let bit = 1u64 << v;
        bron_kerbosch(non_adj, r | bit, p & non_adj[v], x & non_adj[v], out);
        p &= !bit;
        x |= bit;
    }
}

/// Minimal dominating sets by include/exclude over vertices in index order.
/// A branch dies as soon as a vertex whose closed neighborhood is fully
/// decided is left undominated. Requires `n <= 64`.
pub(crate) fn minimal_dominating_sets(g: &Graph) -> Vec<VertexSet> {
    let n = g.n();
    let closed: Vec<u64> = (0..n).map(|v| g.neighbor_mask(v) | (1u64 << v)).collect();
    // settled_at[i] lists the vertices whose closed neighborhood is decided
    // once vertex i has been decided.
    let mut settled_at = vec![Vec::new(); n];
    for (v, mask) in closed.iter().enumerate() {
        settled_at[63 - mask.leading_zeros() as usize].push(v);
    }
    let mut out = Vec::new();
    mds_search(&closed, &settled_at, 0, 0, &mut out);
    out
}

fn mds_search(closed: &[u64], settled_at: &[Vec<usize>], i: usize, chosen: u64, out: &mut Vec<VertexSet>) {
    let n = closed.len();
    if i == n {
        let minimal = (0..n).filter(|&x| chosen >> x & 1 == 1).all(|x| {
            let rest = chosen & !(1u64 << x);
            (0..n).any(|w| closed[w] & rest == 0)
        });
        if minimal {
            out.push(VertexSet::from_mask(chosen));
        }
        return;
    }
    for pick in [true, false] {
        let next = if pick { chosen | (1u64 << i) } else { chosen };
        if settled_at[i].iter().all(|&w| closed[w] & next != 0) {
            mds_search(closed, settled_at, i + 1, next, out);
        }
    }
}

/// Maximal matchings by branching over edges in canonical order.
pub(crate) fn maximal_matchings(g: &Graph) -> Vec<EdgeSet> {
    let mut out = Vec::new();
    let mut matched = vec![false; g.n()];
    let mut current = Vec::new();
    mm_search(g, 0, &mut matched, &mut current, &mut out);
    out
}

fn mm_search(g: &Graph, i: usize, matched: &mut [bool], current: &mut Vec<Edge>, out: &mut Vec<EdgeSet>) {
    let edges = g.edges();
    if i == edges.len() {
        if edges.iter().all(|e| matched[e.u()] || matched[e.v()]) {
            out.push(current.iter().copied().collect());
        }
        return;
    }
    let e = edges[i];
    if !matched[e.u()] && !matched[e.v()] {
        matched[e.u()] = true;
        matched[e.v()] = true;
        current.push(e);
        mm_search(g, i + 1, matched, current, out);
        current.pop();
        matched[e.u()] = false;
        matched[e.v()] = false;
    }
    mm_search(g, i + 1, matched, current, out);
}
