//! Simple undirected graphs with canonical edge indices.
//!
//! Vertices are dense integers `0..n`. Edges are stored as pairs `(u, v)` with
//! `u < v`, sorted lexicographically; the position of a pair in that list is
//! the edge's canonical index, which stays stable for the lifetime of the
//! graph. Colorings, conflict graphs, and file formats all key off these
//! indices.

use std::collections::BTreeSet;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("edge ({u}, {v}) with index {index} is not in the graph")]
    UnknownEdge { u: usize, v: usize, index: usize },
}

/// A reference to an edge: normalized endpoints plus the canonical index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeRef {
    pub u: usize,
    pub v: usize,
    pub index: usize,
}

/// A claw (induced K_{1,3}): a center adjacent to three pairwise
/// non-adjacent leaves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClawWitness {
    pub center: usize,
    pub leaves: [usize; 3],
}

/// An immutable simple undirected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Build a graph with `n` vertices from an edge list. Unlike
    /// [`from_edge_list`] this keeps isolated vertices beyond the largest
    /// endpoint. Panics on self-loops or duplicates; use [`from_edge_list`]
    /// for untrusted input.
    pub fn new(n: usize, pairs: &[(usize, usize)]) -> Graph {
        match Self::build(n, pairs) {
            Ok(g) => g,
            Err(e) => panic!("invalid edge list: {e}"),
        }
    }

    /// Fallible variant of [`Graph::new`].
    pub fn try_new(n: usize, pairs: &[(usize, usize)]) -> Result<Graph, GraphError> {
        Self::build(n, pairs)
    }

    fn build(n: usize, pairs: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut edges: Vec<(usize, usize)> = Vec::with_capacity(pairs.len());
        for &(a, b) in pairs {
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            let e = (a.min(b), a.max(b));
            edges.push(e);
        }
        edges.sort_unstable();
        for w in edges.windows(2) {
            if w[0] == w[1] {
                return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
            }
        }
        let n = edges
            .iter()
            .map(|&(_, v)| v + 1)
            .max()
            .unwrap_or(0)
            .max(n);
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph { n, adj, edges })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Canonically ordered edge list.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Canonical index of the edge `{u, v}`, if present.
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let e = (u.min(v), u.max(v));
        self.edges.binary_search(&e).ok()
    }

    pub fn edge_ref(&self, index: usize) -> Option<EdgeRef> {
        self.edges.get(index).map(|&(u, v)| EdgeRef { u, v, index })
    }

    pub fn find_edge(&self, u: usize, v: usize) -> Option<EdgeRef> {
        self.edge_index(u, v).map(|index| EdgeRef {
            u: u.min(v),
            v: u.max(v),
            index,
        })
    }

    /// Validates that `e` names an edge of this graph.
    pub fn check_edge(&self, e: EdgeRef) -> Result<(), GraphError> {
        match self.edges.get(e.index) {
            Some(&(u, v)) if (u, v) == (e.u, e.v) => Ok(()),
            _ => Err(GraphError::UnknownEdge {
                u: e.u,
                v: e.v,
                index: e.index,
            }),
        }
    }

    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }
}

/// Build a graph from raw vertex-id pairs. The vertex count is one past the
/// largest id mentioned (zero for an empty list).
pub fn from_edge_list(pairs: &[(usize, usize)]) -> Result<Graph, GraphError> {
    Graph::build(0, pairs)
}

/// Find an induced claw, or `None` if the graph is claw-free. The witness is
/// the first one in (center, sorted leaf triple) order.
pub fn claw_witness(g: &Graph) -> Option<ClawWitness> {
    for center in 0..g.vertex_count() {
        let nb = g.neighbors(center);
        for i in 0..nb.len() {
            for j in i + 1..nb.len() {
                if g.has_edge(nb[i], nb[j]) {
                    continue;
                }
                for k in j + 1..nb.len() {
                    if !g.has_edge(nb[i], nb[k]) && !g.has_edge(nb[j], nb[k]) {
                        return Some(ClawWitness {
                            center,
                            leaves: [nb[i], nb[j], nb[k]],
                        });
                    }
                }
            }
        }
    }
    None
}

pub fn is_claw_free(g: &Graph) -> bool {
    claw_witness(g).is_none()
}

/// Vertices adjacent to both endpoints of `e`, i.e. the apexes of the
/// triangles containing `e`.
pub fn triangle_apexes(g: &Graph, e: EdgeRef) -> Result<BTreeSet<usize>, GraphError> {
    g.check_edge(e)?;
    Ok(g.neighbors(e.u)
        .iter()
        .copied()
        .filter(|&w| g.has_edge(e.v, w))
        .collect())
}

/// Number of 3-cycles through `v`: the edge count of the subgraph induced by
/// the neighborhood of `v`.
pub fn incident_triangle_count(g: &Graph, v: usize) -> usize {
    let nb = g.neighbors(v);
    let mut count = 0;
    for i in 0..nb.len() {
        for j in i + 1..nb.len() {
            if g.has_edge(nb[i], nb[j]) {
                count += 1;
            }
        }
    }
    count
}

/// Lexicographically smallest set of four mutually adjacent vertices, if any.
pub fn find_k4(g: &Graph) -> Option<[usize; 4]> {
    for a in 0..g.vertex_count() {
        for &b in g.neighbors(a).iter().filter(|&&b| b > a) {
            for &c in g.neighbors(a).iter().filter(|&&c| c > b) {
                if !g.has_edge(b, c) {
                    continue;
                }
                for &d in g.neighbors(a).iter().filter(|&&d| d > c) {
                    if g.has_edge(b, d) && g.has_edge(c, d) {
                        return Some([a, b, c, d]);
                    }
                }
            }
        }
    }
    None
}

/// Lexicographically smallest 4-cycle `(x, y, u, v)` with edges
/// `xy, yu, uv, vx`, chords permitted, or `None`.
pub fn find_four_cycle(g: &Graph) -> Option<[usize; 4]> {
    for x in 0..g.vertex_count() {
        for &y in g.neighbors(x) {
            if y == x {
                continue;
            }
            for &u in g.neighbors(y) {
                if u == x || u == y {
                    continue;
                }
                for &v in g.neighbors(u) {
                    if v != x && v != y && v != u && g.has_edge(v, x) {
                        return Some([x, y, u, v]);
                    }
                }
            }
        }
    }
    None
}

/// An induced subgraph along with maps from the original vertex and edge
/// indices to the surviving ones.
#[derive(Debug, Clone)]
pub struct InducedSubgraph {
    pub graph: Graph,
    /// Old vertex id -> new vertex id (or `None` if deleted).
    pub vertex_map: Vec<Option<usize>>,
    /// Old edge index -> new edge index (or `None` if an endpoint was deleted).
    pub edge_map: Vec<Option<usize>>,
}

/// Induced subgraph on the complement of `remove`. Surviving vertices are
/// renumbered densely in increasing order, which keeps the canonical edge
/// order stable.
pub fn delete_vertices(g: &Graph, remove: &BTreeSet<usize>) -> InducedSubgraph {
    let mut vertex_map = vec![None; g.vertex_count()];
    let mut next = 0;
    for v in 0..g.vertex_count() {
        if !remove.contains(&v) {
            vertex_map[v] = Some(next);
            next += 1;
        }
    }
    let mut edge_map = vec![None; g.edge_count()];
    let mut pairs = Vec::new();
    for (idx, &(u, v)) in g.edges().iter().enumerate() {
        if let (Some(nu), Some(nv)) = (vertex_map[u], vertex_map[v]) {
            edge_map[idx] = Some(pairs.len());
            pairs.push((nu, nv));
        }
    }
    InducedSubgraph {
        graph: Graph::new(next, &pairs),
        vertex_map,
        edge_map,
    }
}
