//! Graph families and the witness/reduction constructions.
//!
//! Vertex labels are fixed for every construction so that outputs are
//! byte-reproducible:
//! - paths and cycles run through `0..n` in index order;
//! - `complete_bipartite(a, b)` has sides `0..a` and `a..a+b`;
//! - stars have center `0`;
//! - `join(g, h)` shifts the vertices of `h` by `g.n()`;
//! - the blowup places copy `x` (1-based) of vertex `u` at `u + (x - 1) * n`.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A named family member.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// Path on `n` vertices.
    Path(usize),
    /// Cycle on `n >= 3` vertices.
    Cycle(usize),
    /// Complete graph on `n` vertices.
    Clique(usize),
    /// Complete bipartite graph `K_{a,b}`.
    CompleteBipartite(usize, usize),
    /// Star with `leaves` leaves around center 0.
    Star(usize),
}

impl Family {
    /// Parses `name` plus integer parameters, e.g. `("cycle", [4])`.
    pub fn from_parts(name: &str, params: &[usize]) -> Result<Self> {
        let arity = |want: usize| {
            if params.len() == want {
                Ok(())
            } else {
                Err(Error::InvalidParameter(format!("{name} takes {want} parameter(s), got {}", params.len())))
            }
        };
        match name {
            "path" => arity(1).map(|_| Family::Path(params[0])),
            "cycle" => arity(1).map(|_| Family::Cycle(params[0])),
            "clique" | "complete" => arity(1).map(|_| Family::Clique(params[0])),
            "complete-bipartite" | "complete_bipartite" | "biclique" => {
                arity(2).map(|_| Family::CompleteBipartite(params[0], params[1]))
            }
            "star" => arity(1).map(|_| Family::Star(params[0])),
            other => Err(Error::InvalidParameter(format!("unknown family {other:?}"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Path(n) => write!(f, "path {n}"),
            Family::Cycle(n) => write!(f, "cycle {n}"),
            Family::Clique(n) => write!(f, "clique {n}"),
            Family::CompleteBipartite(a, b) => write!(f, "complete-bipartite {a} {b}"),
            Family::Star(l) => write!(f, "star {l}"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.split_whitespace();
        let name = parts.next().ok_or_else(|| Error::InvalidParameter("empty family".into()))?;
        let params = parts
            .map(|p| p.parse::<usize>().map_err(|_| Error::InvalidParameter(format!("bad parameter {p:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Family::from_parts(name, &params)
    }
}

pub fn gen_family(spec: Family) -> Result<Graph> {
    let positive = |x: usize, what: &str| {
        if x == 0 {
            Err(Error::InvalidParameter(format!("{what} must be positive")))
        } else {
            Ok(())
        }
    };
    match spec {
        Family::Path(n) => {
            positive(n, "path length")?;
            Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
        }
        Family::Cycle(n) => {
            if n < 3 {
                return Err(Error::InvalidParameter(format!("cycle length must be at least 3, got {n}")));
            }
            Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
        }
        Family::Clique(n) => {
            positive(n, "clique size")?;
            Graph::from_edges(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
        }
        Family::CompleteBipartite(a, b) => {
            positive(a, "side size")?;
            positive(b, "side size")?;
            Graph::from_edges(a + b, (0..a).flat_map(|i| (a..a + b).map(move |j| (i, j))))
        }
        Family::Star(leaves) => {
            positive(leaves, "leaf count")?;
            Graph::from_edges(leaves + 1, (1..=leaves).map(|i| (0, i)))
        }
    }
}

/// Disjoint union of `g` and `h` (shifted by `g.n()`) plus every cross edge.
pub fn join(g: &Graph, h: &Graph) -> Graph {
    let shift = g.n();
    let inner = g
        .edges()
        .iter()
        .map(|e| e.endpoints())
        .chain(h.edges().iter().map(|e| (e.u() + shift, e.v() + shift)));
    let cross = (0..g.n()).flat_map(|a| (0..h.n()).map(move |b| (a, b + shift)));
    Graph::from_edges(g.n() + h.n(), inner.chain(cross)).expect("join of simple graphs is simple")
}

/// `K_{k+2,k+2}` with a pendant vertex `v` hanging off `u` on side `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GkWitness {
    pub k: usize,
    pub graph: Graph,
    pub u: usize,
    pub v: usize,
    pub a: Range<usize>,
    pub b: Range<usize>,
}

impl GkWitness {
    /// Trailing comment line naming the distinguished labels.
    pub fn label_comment(&self) -> String {
        format!(
            "# u={} v={} A={}..{} B={}..{}",
            self.u,
            self.v,
            self.a.start,
            self.a.end - 1,
            self.b.start,
            self.b.end - 1
        )
    }
}

/// Builds the hierarchy witness for `k >= 1`: `A = 0..=k+1` with `u = 0`,
/// `B = k+2..=2k+3`, and `v = 2k+4`.
pub fn gk_witness(k: usize) -> Result<GkWitness> {
    if k == 0 {
        return Err(Error::InvalidParameter("the hierarchy witness needs k >= 1".into()));
    }
    let side = k + 2;
    let a = 0..side;
    let b = side..2 * side;
    let v = 2 * side;
    let edges = a
        .clone()
        .flat_map(|x| b.clone().map(move |y| (x, y)))
        .chain(std::iter::once((0, v)));
    let graph = Graph::from_edges(2 * side + 1, edges)?;
    Ok(GkWitness { k, graph, u: 0, v, a, b })
}

/// Adds vertex `n` adjacent to every vertex of `g`.
pub fn add_universal_vertex(g: &Graph) -> Result<Graph> {
    if g.n() < 2 || g.edge_count() == 0 {
        return Err(Error::InvalidParameter("needs at least two vertices and one edge".into()));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let hub = g.n();
    let edges = g.edges().iter().map(|e| e.endpoints()).chain((0..hub).map(|x| (x, hub)));
    Graph::from_edges(hub + 1, edges)
}

/// `k` copies of `g` where every edge `(u, v)` becomes all `k^2` edges
/// between copies of `u` and copies of `v` (same-copy pairs included).
pub fn k_copies_blowup(g: &Graph, k: usize) -> Result<Graph> {
    if k == 0 {
        return Err(Error::InvalidParameter("the blowup needs k >= 1".into()));
    }
    let n = g.n();
    let edges = g.edges().iter().flat_map(|e| {
        (0..k).flat_map(move |x| (0..k).map(move |y| (e.u() + x * n, e.v() + y * n)))
    });
    Graph::from_edges(n * k, edges)
}

/// Hangs one fresh pendant vertex off every vertex lying on a cycle. The
/// new vertices are numbered from `n` upward in order of their anchors.
pub fn sputnikify(g: &Graph) -> Graph {
    let on_cycle = g.cycle_vertices();
    let anchors: Vec<usize> = (0..g.n()).filter(|&v| on_cycle[v]).collect();
    let edges = g
        .edges()
        .iter()
        .map(|e| e.endpoints())
        .chain(anchors.iter().enumerate().map(|(i, &a)| (a, g.n() + i)));
    Graph::from_edges(g.n() + anchors.len(), edges).expect("pendant additions keep the graph simple")
}
