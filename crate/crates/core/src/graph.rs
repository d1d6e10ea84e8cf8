//! Immutable simple undirected graphs on the vertices `0..n`.
//!
//! Edges are stored once, normalized so that `u < v`, and kept in
//! lexicographic order. Every set-valued output of this module (edge sets,
//! vertex sets, bridges) is emitted in that canonical order.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// An undirected edge `{u, v}` with `u < v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    u: usize,
    v: usize,
}

impl Edge {
    /// Builds the edge `{a, b}` in normalized orientation.
    ///
    /// Panics on `a == b`; simple graphs have no loops.
    pub fn new(a: usize, b: usize) -> Self {
        assert_ne!(a, b, "self-loop {a}-{b}");
        if a < b {
            Edge { u: a, v: b }
        } else {
            Edge { u: b, v: a }
        }
    }

    pub fn u(self) -> usize {
        self.u
    }

    pub fn v(self) -> usize {
        self.v
    }

    pub fn endpoints(self) -> (usize, usize) {
        (self.u, self.v)
    }

    pub fn touches(self, x: usize) -> bool {
        self.u == x || self.v == x
    }

    /// The endpoint opposite to `x`. `x` must be an endpoint.
    pub fn other(self, x: usize) -> usize {
        debug_assert!(self.touches(x));
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }

    pub fn shares_endpoint(self, other: Edge) -> bool {
        self.touches(other.u) || self.touches(other.v)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.u, self.v)
    }
}

impl From<(usize, usize)> for Edge {
    fn from((a, b): (usize, usize)) -> Self {
        Edge::new(a, b)
    }
}

/// A set of edges in canonical (lexicographic) order.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeSet(Vec<Edge>);

impl EdgeSet {
    pub fn new() -> Self {
        EdgeSet(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.0.binary_search(&e).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = Edge> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[Edge] {
        &self.0
    }

    pub fn union(&self, other: &EdgeSet) -> EdgeSet {
        self.iter().chain(other.iter()).collect()
    }

    pub fn is_disjoint(&self, other: &EdgeSet) -> bool {
        self.iter().all(|e| !other.contains(e))
    }
}

impl FromIterator<Edge> for EdgeSet {
    fn from_iter<I: IntoIterator<Item = Edge>>(iter: I) -> Self {
        let mut edges: Vec<Edge> = iter.into_iter().collect();
        edges.sort_unstable();
        edges.dedup();
        EdgeSet(edges)
    }
}

impl FromIterator<(usize, usize)> for EdgeSet {
    fn from_iter<I: IntoIterator<Item = (usize, usize)>>(iter: I) -> Self {
        iter.into_iter().map(Edge::from).collect()
    }
}

impl fmt::Display for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for e in &self.0 {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{e}")?;
            first = false;
        }
        Ok(())
    }
}

/// A set of vertices in increasing order.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(Vec::new())
    }

    /// Members of a bitmask, lowest bit first.
    pub fn from_mask(mut mask: u64) -> Self {
        let mut out = Vec::with_capacity(mask.count_ones() as usize);
        while mask != 0 {
            out.push(mask.trailing_zeros() as usize);
            mask &= mask - 1;
        }
        VertexSet(out)
    }

    /// Bitmask of the members. Only meaningful when every member is below 64.
    pub fn to_mask(&self) -> u64 {
        self.0.iter().fold(0, |acc, &v| acc | (1u64 << v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// Membership vector of length `n`.
    pub fn indicator(&self, n: usize) -> Vec<bool> {
        let mut flags = vec![false; n];
        for &v in &self.0 {
            if v < n {
                flags[v] = true;
            }
        }
        flags
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut vs: Vec<usize> = iter.into_iter().collect();
        vs.sort_unstable();
        vs.dedup();
        VertexSet(vs)
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in &self.0 {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

/// Immutable simple undirected graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<usize>>,
    incident: Vec<Vec<usize>>,
    masks: Vec<u64>,
}

impl Graph {
    /// The graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Self {
        Self::from_sorted(n, Vec::new())
    }

    /// Builds a graph from endpoint pairs in any orientation and order.
    ///
    /// Diagnostics carry the line number the pair would occupy in an
    /// edge-list document (the header is line 1).
    pub fn from_edges<I>(n: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut edges = Vec::new();
        for (i, (a, b)) in pairs.into_iter().enumerate() {
            let line = i + 2;
            for x in [a, b] {
                if x >= n {
                    return Err(Error::EndpointOutOfRange { line, vertex: x, n });
                }
            }
            if a == b {
                return Err(Error::SelfLoop { line, vertex: a });
            }
            edges.push((Edge::new(a, b), line));
        }
        edges.sort_unstable();
        for w in edges.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::DuplicateEdge { line: w[0].1.max(w[1].1), edge: w[0].0 });
            }
        }
        Ok(Self::from_sorted(n, edges.into_iter().map(|(e, _)| e).collect()))
    }

    fn from_sorted(n: usize, edges: Vec<Edge>) -> Self {
        let mut adj = vec![Vec::new(); n];
        let mut incident = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            adj[e.u].push(e.v);
            adj[e.v].push(e.u);
            incident[e.u].push(i);
            incident[e.v].push(i);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let masks = if n <= 64 {
            adj.iter()
                .map(|ns| ns.iter().fold(0u64, |acc, &w| acc | (1u64 << w)))
                .collect()
        } else {
            Vec::new()
        };
        Graph { n, edges, adj, incident, masks }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// All edges in canonical order. Edge indices used across the crate
    /// refer to positions in this slice.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_set(&self) -> EdgeSet {
        EdgeSet(self.edges.clone())
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Indices (into [`Graph::edges`]) of the edges incident to `v`.
    pub fn incident_edges(&self, v: usize) -> &[usize] {
        &self.incident[v]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a != b && a < self.n && b < self.n && self.adj[a].binary_search(&b).is_ok()
    }

    pub fn edge_index(&self, e: Edge) -> Option<usize> {
        self.edges.binary_search(&e).ok()
    }

    /// Neighborhood of `v` as a bitmask; requires `n <= 64`.
    pub fn neighbor_mask(&self, v: usize) -> u64 {
        self.masks[v]
    }

    /// Neighbor bitmasks of all vertices, or an error when `n > 64`.
    pub fn masks(&self) -> Result<&[u64]> {
        if self.n > 64 {
            return Err(Error::TooManyVertices(self.n));
        }
        Ok(&self.masks)
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        Ok(())
    }

    /// True iff every pair of vertices is joined by a path. Graphs with at
    /// most one vertex are connected.
    pub fn is_connected(&self) -> bool {
        self.is_connected_without(&[])
    }

    /// Connectivity after deleting the edges whose indices are flagged in
    /// `removed` (a short or empty slice means nothing is removed).
    pub(crate) fn is_connected_without(&self, removed: &[bool]) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut reached = 1;
        while let Some(x) = stack.pop() {
            for &ei in &self.incident[x] {
                if removed.get(ei).copied().unwrap_or(false) {
                    continue;
                }
                let y = self.edges[ei].other(x);
                if !seen[y] {
                    seen[y] = true;
                    reached += 1;
                    stack.push(y);
                }
            }
        }
        reached == self.n
    }

    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.edges.len() + 1 == self.n && self.is_connected()
    }

    /// Edges whose removal disconnects the graph, by an iterative lowpoint DFS.
    pub fn bridges(&self) -> Result<EdgeSet> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(self.bridge_flags().into_iter().enumerate().filter(|&(_, b)| b).map(|(i, _)| self.edges[i]).collect())
    }

    /// `flags[i]` is true iff edge `i` is a bridge of its component.
    pub(crate) fn bridge_flags(&self) -> Vec<bool> {
        let n = self.n;
        let mut flags = vec![false; self.edges.len()];
        let mut order = vec![usize::MAX; n];
        let mut low = vec![usize::MAX; n];
        let mut clock = 0;
        for root in 0..n {
            if order[root] != usize::MAX {
                continue;
            }
            order[root] = clock;
            low[root] = clock;
            clock += 1;
            // (vertex, edge used to enter it, next incident position)
            let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
            while let Some(top) = stack.last_mut() {
                let (x, via, pos) = *top;
                if pos < self.incident[x].len() {
                    top.2 += 1;
                    let ei = self.incident[x][pos];
                    if ei == via {
                        continue;
                    }
                    let y = self.edges[ei].other(x);
                    if order[y] == usize::MAX {
                        order[y] = clock;
                        low[y] = clock;
                        clock += 1;
                        stack.push((y, ei, 0));
                    } else {
                        low[x] = low[x].min(order[y]);
                    }
                } else {
                    stack.pop();
                    if let Some(&(parent, _, _)) = stack.last() {
                        low[parent] = low[parent].min(low[x]);
                        if low[x] > order[parent] {
                            flags[via] = true;
                        }
                    }
                }
            }
        }
        flags
    }

    /// Edge connectivity: the minimum number of edges whose removal
    /// disconnects the graph. `None` for graphs with at most one vertex,
    /// which no removal can disconnect.
    pub fn edge_connectivity(&self) -> Option<usize> {
        if self.n <= 1 {
            return None;
        }
        if !self.is_connected() {
            return Some(0);
        }
        (1..self.n).map(|t| self.unit_max_flow(0, t)).min()
    }

    /// Maximum number of edge-disjoint paths between `s` and `t`.
    fn unit_max_flow(&self, s: usize, t: usize) -> usize {
        // arc 2i runs u->v and arc 2i+1 runs v->u for edge i; each arc is
        // the other's reverse and both start with capacity one.
        let mut cap: Vec<u8> = vec![1; 2 * self.edges.len()];
        let head = |arc: usize| {
            let e = self.edges[arc / 2];
            if arc.is_multiple_of(2) {
                e.v
            } else {
                e.u
            }
        };
        let mut flow = 0;
        loop {
            let mut pred = vec![usize::MAX; self.n];
            let mut seen = vec![false; self.n];
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                if x == t {
                    break;
                }
                for &ei in &self.incident[x] {
                    let arc = if self.edges[ei].u == x { 2 * ei } else { 2 * ei + 1 };
                    let y = head(arc);
                    if cap[arc] > 0 && !seen[y] {
                        seen[y] = true;
                        pred[y] = arc;
                        queue.push_back(y);
                    }
                }
            }
            if !seen[t] {
                return flow;
            }
            let mut x = t;
            while x != s {
                let arc = pred[x];
                cap[arc] -= 1;
                cap[arc ^ 1] += 1;
                x = head(arc ^ 1);
            }
            flow += 1;
        }
    }

    /// True iff the graph stays connected after removing any set of at most
    /// `t - 1` edges.
    pub fn is_t_edge_connected(&self, t: usize) -> Result<bool> {
        if t == 0 {
            return Err(Error::ZeroConnectivity);
        }
        Ok(match self.edge_connectivity() {
            None => true,
            Some(lambda) => lambda >= t,
        })
    }

    /// True iff `v` lies on a cycle, i.e. touches at least one non-bridge edge.
    pub fn vertex_on_cycle(&self, v: usize) -> Result<bool> {
        self.check_vertex(v)?;
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        let flags = self.bridge_flags();
        Ok(self.incident[v].iter().any(|&ei| !flags[ei]))
    }

    /// Vertices lying on some cycle, as a membership vector.
    pub(crate) fn cycle_vertices(&self) -> Vec<bool> {
        let flags = self.bridge_flags();
        (0..self.n).map(|v| self.incident[v].iter().any(|&ei| !flags[ei])).collect()
    }

    /// Same vertex set, with the edges of `removed` deleted.
    pub fn remove_edges(&self, removed: &EdgeSet) -> Result<Graph> {
        for e in removed.iter() {
            if self.edge_index(e).is_none() {
                return Err(Error::NotAnEdge(e));
            }
        }
        let kept = self.edges.iter().copied().filter(|e| !removed.contains(*e)).collect();
        Ok(Self::from_sorted(self.n, kept))
    }

    /// Canonical edge-list document: `n m`, then one `u v` line per edge.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.edges.len());
        for e in &self.edges {
            out.push_str(&format!("{} {}\n", e.u, e.v));
        }
        out
    }
}

/// Parses an edge-list document. Blank lines and lines starting with `#`
/// are ignored.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = lines.next().ok_or(Error::MalformedHeader { line: 1 })?;
    let (n, m) = parse_pair(header).ok_or(Error::MalformedHeader { line: header_line })?;

    let mut edges: Vec<(Edge, usize)> = Vec::with_capacity(m);
    for (line, text) in lines {
        let (a, b) = parse_pair(text).ok_or(Error::MalformedEdge { line })?;
        for x in [a, b] {
            if x >= n {
                return Err(Error::EndpointOutOfRange { line, vertex: x, n });
            }
        }
        if a == b {
            return Err(Error::SelfLoop { line, vertex: a });
        }
        edges.push((Edge::new(a, b), line));
    }
    if edges.len() != m {
        return Err(Error::EdgeCountMismatch { expected: m, found: edges.len() });
    }
    edges.sort_unstable();
    for w in edges.windows(2) {
        if w[0].0 == w[1].0 {
            return Err(Error::DuplicateEdge { line: w[0].1.max(w[1].1), edge: w[0].0 });
        }
    }
    Ok(Graph::from_sorted(n, edges.into_iter().map(|(e, _)| e).collect()))
}

fn parse_pair(line: &str) -> Option<(usize, usize)> {
    let mut it = line.split_whitespace();
    let a = it.next()?.parse().ok()?;
    let b = it.next()?.parse().ok()?;
    if it.next().is_some() {
        return None;
    }
    Some((a, b))
}

impl FromStr for Graph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_graph(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, pairs: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, pairs.iter().copied()).unwrap()
    }

    fn c4() -> Graph {
        g(4, &[(0, 1), (1, 2), (2, 3), (0, 3)])
    }

    fn k4() -> Graph {
        g(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    }

    fn triangle_with_pendant() -> Graph {
        g(4, &[(0, 1), (1, 2), (0, 2), (2, 3)])
    }

    /// Definition-level: remove every subset of size < t and test connectivity.
    fn t_connected_by_sweep(graph: &Graph, t: usize) -> bool {
        let m = graph.edge_count();
        (0u32..1 << m)
            .filter(|mask| (mask.count_ones() as usize) < t)
            .all(|mask| {
                let removed: Vec<bool> = (0..m).map(|i| mask >> i & 1 == 1).collect();
                graph.is_connected_without(&removed)
            })
    }

    #[test]
    fn parse_path_and_cycle() {
        let p3 = parse_graph("3 2\n0 1\n1 2").unwrap();
        assert_eq!(p3.n(), 3);
        assert_eq!(p3.edges(), &[Edge::new(0, 1), Edge::new(1, 2)]);
        let cycle = parse_graph("4 4\n0 1\n1 2\n2 3\n0 3").unwrap();
        assert_eq!(cycle, c4());
    }

    #[test]
    fn parse_rejects_each_defect_distinctly() {
        assert!(matches!(parse_graph("3 1\n0 3"), Err(Error::EndpointOutOfRange { line: 2, vertex: 3, n: 3 })));
        assert!(matches!(parse_graph("x 1\n0 1"), Err(Error::MalformedHeader { line: 1 })));
        assert!(matches!(parse_graph(""), Err(Error::MalformedHeader { .. })));
        assert!(matches!(parse_graph("3 1\n1 1"), Err(Error::SelfLoop { line: 2, vertex: 1 })));
        assert!(matches!(parse_graph("3 2\n0 1\n1 0"), Err(Error::DuplicateEdge { line: 3, .. })));
        assert!(matches!(parse_graph("3 2\n0 1"), Err(Error::EdgeCountMismatch { expected: 2, found: 1 })));
        assert!(matches!(parse_graph("3 1\n0 1 2"), Err(Error::MalformedEdge { line: 2 })));
    }

    #[test]
    fn edge_list_round_trip_is_canonical() {
        let graph = parse_graph("4 4\n2 3\n0 3\n1 0\n2 1\n# trailing comment\n").unwrap();
        assert_eq!(graph.to_edge_list(), "4 4\n0 1\n0 3\n1 2\n2 3\n");
    }

    #[test]
    fn connectivity_conventions() {
        assert!(c4().is_connected());
        assert!(!g(4, &[(0, 1), (2, 3)]).is_connected());
        assert!(Graph::empty(1).is_connected());
        assert!(Graph::empty(0).is_connected());
        assert!(!Graph::empty(2).is_connected());
    }

    #[test]
    fn bridges_examples() {
        let tree = g(5, &[(0, 1), (1, 2), (1, 3), (3, 4)]);
        assert_eq!(tree.bridges().unwrap(), tree.edge_set());
        assert!(c4().bridges().unwrap().is_empty());
        assert_eq!(triangle_with_pendant().bridges().unwrap(), [(2, 3)].into_iter().collect());
        assert_eq!(g(4, &[(0, 1), (2, 3)]).bridges(), Err(Error::Disconnected));
    }

    #[test]
    fn t_edge_connectivity_examples() {
        assert!(c4().is_t_edge_connected(2).unwrap());
        assert!(!c4().is_t_edge_connected(3).unwrap());
        assert!(k4().is_t_edge_connected(3).unwrap());
        assert!(!k4().is_t_edge_connected(4).unwrap());
        assert_eq!(c4().is_t_edge_connected(0), Err(Error::ZeroConnectivity));
        assert!(Graph::empty(1).is_t_edge_connected(5).unwrap());
    }

    #[test]
    fn t_edge_connectivity_matches_sweep() {
        for graph in [c4(), k4(), triangle_with_pendant(), g(3, &[(0, 1), (1, 2)])] {
            for t in 1..=4 {
                assert_eq!(graph.is_t_edge_connected(t).unwrap(), t_connected_by_sweep(&graph, t), "{graph:?} t={t}");
            }
        }
    }

    #[test]
    fn vertex_on_cycle_examples() {
        assert!(c4().vertex_on_cycle(0).unwrap());
        assert!(!g(3, &[(0, 1), (1, 2)]).vertex_on_cycle(1).unwrap());
        assert!(!triangle_with_pendant().vertex_on_cycle(3).unwrap());
        assert!(triangle_with_pendant().vertex_on_cycle(2).unwrap());
        assert_eq!(c4().vertex_on_cycle(4), Err(Error::VertexOutOfRange { vertex: 4, n: 4 }));
    }

    #[test]
    fn remove_edges_examples() {
        let cycle = c4();
        let opened = cycle.remove_edges(&[(0, 1)].into_iter().collect()).unwrap();
        assert_eq!(opened, g(4, &[(1, 2), (2, 3), (0, 3)]));
        assert_eq!(cycle.remove_edges(&EdgeSet::new()).unwrap(), cycle);
        assert_eq!(cycle.remove_edges(&cycle.edge_set()).unwrap(), Graph::empty(4));
        assert_eq!(cycle.remove_edges(&[(0, 2)].into_iter().collect()), Err(Error::NotAnEdge(Edge::new(0, 2))));
    }
}
