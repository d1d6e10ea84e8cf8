//! Solution predicates for the three problems, plus deterministic greedy
//! completion (lowest index first).

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{Edge, EdgeSet, Graph, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Problem {
    /// Maximal independent set.
    Mis,
    /// Minimal dominating set.
    Mds,
    /// Maximal matching.
    Mm,
}

impl Problem {
    pub const ALL: [Problem; 3] = [Problem::Mis, Problem::Mds, Problem::Mm];

    pub fn is_vertex_problem(self) -> bool {
        !matches!(self, Problem::Mm)
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Problem::Mis => "MIS",
            Problem::Mds => "MDS",
            Problem::Mm => "MM",
        })
    }
}

impl FromStr for Problem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "mis" => Ok(Problem::Mis),
            "mds" => Ok(Problem::Mds),
            "mm" => Ok(Problem::Mm),
            other => Err(Error::InvalidParameter(format!("unknown problem {other:?}"))),
        }
    }
}

/// A candidate solution: a vertex set tagged MIS or MDS, or an edge set
/// for MM.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Solution {
    Mis(VertexSet),
    Mds(VertexSet),
    Mm(EdgeSet),
}

impl Solution {
    pub fn problem(&self) -> Problem {
        match self {
            Solution::Mis(_) => Problem::Mis,
            Solution::Mds(_) => Problem::Mds,
            Solution::Mm(_) => Problem::Mm,
        }
    }

    /// Wraps a vertex set for a vertex problem.
    pub fn vertices(problem: Problem, set: VertexSet) -> Result<Self> {
        match problem {
            Problem::Mis => Ok(Solution::Mis(set)),
            Problem::Mds => Ok(Solution::Mds(set)),
            Problem::Mm => Err(Error::PayloadMismatch { problem, payload: "vertex" }),
        }
    }

    pub fn vertex_set(&self) -> Option<&VertexSet> {
        match self {
            Solution::Mis(s) | Solution::Mds(s) => Some(s),
            Solution::Mm(_) => None,
        }
    }

    pub fn edge_set(&self) -> Option<&EdgeSet> {
        match self {
            Solution::Mm(m) => Some(m),
            _ => None,
        }
    }

    fn payload_name(&self) -> &'static str {
        match self {
            Solution::Mm(_) => "matching",
            _ => "vertex",
        }
    }

    /// Solution file text: one line of vertex ids for MIS/MDS, one `u v`
    /// line per edge for MM.
    pub fn to_file_text(&self) -> String {
        match self {
            Solution::Mis(s) | Solution::Mds(s) => format!("{s}\n"),
            Solution::Mm(m) => m.iter().map(|e| format!("{} {}\n", e.u(), e.v())).collect(),
        }
    }

    /// Parses a solution file for `problem`. `#` lines are ignored.
    pub fn parse(problem: Problem, text: &str) -> Result<Self> {
        let body = text.lines().map(str::trim).filter(|l| !l.starts_with('#'));
        let parse_id = |tok: &str| {
            tok.parse::<usize>()
                .map_err(|_| Error::MalformedSolution(format!("not a vertex id: {tok:?}")))
        };
        match problem {
            Problem::Mis | Problem::Mds => {
                let ids = body
                    .flat_map(str::split_whitespace)
                    .map(parse_id)
                    .collect::<Result<Vec<_>>>()?;
                Solution::vertices(problem, ids.into_iter().collect())
            }
            Problem::Mm => {
                let mut edges = Vec::new();
                for line in body.filter(|l| !l.is_empty()) {
                    let toks: Vec<&str> = line.split_whitespace().collect();
                    if toks.len() != 2 {
                        return Err(Error::MalformedSolution(format!("expected \"u v\", got {line:?}")));
                    }
                    let (a, b) = (parse_id(toks[0])?, parse_id(toks[1])?);
                    if a == b {
                        return Err(Error::MalformedSolution(format!("self-loop {a} {a}")));
                    }
                    edges.push(Edge::new(a, b));
                }
                Ok(Solution::Mm(edges.into_iter().collect()))
            }
        }
    }
}

impl fmt::Display for Solution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Solution::Mis(s) | Solution::Mds(s) => write!(f, "{s}"),
            Solution::Mm(m) => write!(f, "{m}"),
        }
    }
}

pub fn is_independent(g: &Graph, s: &VertexSet) -> bool {
    let inside = s.indicator(g.n());
    g.edges().iter().all(|e| !(inside[e.u()] && inside[e.v()]))
}

/// Every vertex is in `s` or has a neighbor in `s`.
pub fn dominates(g: &Graph, s: &VertexSet) -> bool {
    let inside = s.indicator(g.n());
    dominates_flags(g, &inside)
}

fn dominates_flags(g: &Graph, inside: &[bool]) -> bool {
    (0..g.n()).all(|v| inside[v] || g.neighbors(v).iter().any(|&w| inside[w]))
}

/// No two edges share an endpoint.
pub fn is_matching(m: &EdgeSet) -> bool {
    let mut used = std::collections::HashSet::new();
    m.iter().all(|e| used.insert(e.u()) && used.insert(e.v()))
}

fn matched_flags(n: usize, m: &EdgeSet) -> Vec<bool> {
    let mut matched = vec![false; n];
    for e in m.iter() {
        matched[e.u()] = true;
        matched[e.v()] = true;
    }
    matched
}

fn check_members(g: &Graph, s: &Solution) -> Result<()> {
    match s {
        Solution::Mis(vs) | Solution::Mds(vs) => vs.iter().try_for_each(|v| g.check_vertex(v)),
        Solution::Mm(m) => m.iter().try_for_each(|e| {
            g.edge_index(e).map(|_| ()).ok_or(Error::NotAnEdge(e))
        }),
    }
}

/// Full validity predicate: MIS = independent and nothing addable; MDS =
/// dominating and nothing removable; MM = matching and no edge addable.
pub fn check_solution(p: Problem, g: &Graph, s: &Solution) -> Result<bool> {
    if s.problem() != p {
        return Err(Error::PayloadMismatch { problem: p, payload: s.payload_name() });
    }
    check_members(g, s)?;
    Ok(match s {
        Solution::Mis(vs) => {
            let inside = vs.indicator(g.n());
            let independent = g.edges().iter().all(|e| !(inside[e.u()] && inside[e.v()]));
            let addable = (0..g.n()).any(|v| !inside[v] && g.neighbors(v).iter().all(|&w| !inside[w]));
            independent && !addable
        }
        Solution::Mds(vs) => {
            let mut inside = vs.indicator(g.n());
            if !dominates_flags(g, &inside) {
                return Ok(false);
            }
            for v in vs.iter() {
                inside[v] = false;
                let redundant = dominates_flags(g, &inside);
                inside[v] = true;
                if redundant {
                    return Ok(false);
                }
            }
            true
        }
        Solution::Mm(m) => {
            if !is_matching(m) {
                return Ok(false);
            }
            let matched = matched_flags(g.n(), m);
            g.edges().iter().all(|e| matched[e.u()] || matched[e.v()])
        }
    })
}

/// A matching of edges of `g` covering every vertex.
pub fn is_perfect_matching(g: &Graph, m: &EdgeSet) -> bool {
    m.iter().all(|e| g.edge_index(e).is_some())
        && is_matching(m)
        && 2 * m.len() == g.n()
}

/// Independent, and every vertex outside `s` has at least two neighbors in `s`.
pub fn is_independent_2_dominating(g: &Graph, s: &VertexSet) -> bool {
    if s.iter().any(|v| v >= g.n()) {
        return false;
    }
    let inside = s.indicator(g.n());
    is_independent(g, s)
        && (0..g.n()).all(|v| inside[v] || g.neighbors(v).iter().filter(|&&w| inside[w]).count() >= 2)
}

/// Completes `partial` into a valid solution, scanning candidates in
/// increasing index order. MIS and MM add vertices/edges to the seed; MDS
/// starts from a dominating superset and drops redundant vertices.
pub fn greedy_complete(p: Problem, g: &Graph, partial: &Solution) -> Result<Solution> {
    if partial.problem() != p {
        return Err(Error::PayloadMismatch { problem: p, payload: partial.payload_name() });
    }
    check_members(g, partial)?;
    match partial {
        Solution::Mis(seed) => {
            if !is_independent(g, seed) {
                return Err(Error::InfeasibleSeed { problem: p, reason: "seed is not independent" });
            }
            let mut inside = seed.indicator(g.n());
            for v in 0..g.n() {
                if !inside[v] && g.neighbors(v).iter().all(|&w| !inside[w]) {
                    inside[v] = true;
                }
            }
            Ok(Solution::Mis((0..g.n()).filter(|&v| inside[v]).collect()))
        }
        Solution::Mds(seed) => {
            let mut inside = seed.indicator(g.n());
            if !dominates_flags(g, &inside) {
                return Err(Error::InfeasibleSeed { problem: p, reason: "seed does not dominate" });
            }
            for v in 0..g.n() {
                if inside[v] {
                    inside[v] = false;
                    if !dominates_flags(g, &inside) {
                        inside[v] = true;
                    }
                }
            }
            Ok(Solution::Mds((0..g.n()).filter(|&v| inside[v]).collect()))
        }
        Solution::Mm(seed) => {
            if !is_matching(seed) {
                return Err(Error::InfeasibleSeed { problem: p, reason: "seed is not a matching" });
            }
            let mut matched = matched_flags(g.n(), seed);
            let mut edges: Vec<Edge> = seed.iter().collect();
            for &e in g.edges() {
                if !matched[e.u()] && !matched[e.v()] {
                    matched[e.u()] = true;
                    matched[e.v()] = true;
                    edges.push(e);
                }
            }
            Ok(Solution::Mm(edges.into_iter().collect()))
        }
    }
}
