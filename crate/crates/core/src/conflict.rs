//! The injective coloring semantics.
//!
//! Edge `e` sees edge `f` when either
//!
//! * they share exactly one vertex and their other two endpoints are adjacent
//!   (the pair spans a triangle), or
//! * they share no vertex and some edge joins an endpoint of `e` to an
//!   endpoint of `f` (line-graph distance exactly two).
//!
//! Adjacent edges that do not span a triangle do *not* see each other and may
//! share a color. A coloring is valid when no two colored edges that see each
//! other carry the same color. Everything here is a pure function of an
//! immutable [`Graph`], so queries can run concurrently.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::graph::{EdgeRef, Graph, GraphError};

/// Colors are the integers `1..=k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ColorPalette {
    pub k: u32,
}

impl ColorPalette {
    pub const DEFAULT_K: u32 = 13;

    pub fn new(k: u32) -> ColorPalette {
        assert!(k >= 1, "palette needs at least one color");
        ColorPalette { k }
    }

    pub fn contains(&self, c: u32) -> bool {
        (1..=self.k).contains(&c)
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> {
        1..=self.k
    }
}

impl Default for ColorPalette {
    fn default() -> Self {
        ColorPalette::new(ColorPalette::DEFAULT_K)
    }
}

/// A partial assignment of palette colors to the edges of a host graph,
/// indexed by canonical edge index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialColoring {
    palette: ColorPalette,
    colors: Vec<Option<u32>>,
}

impl PartialColoring {
    pub fn empty(edge_count: usize, k: u32) -> PartialColoring {
        PartialColoring {
            palette: ColorPalette::new(k),
            colors: vec![None; edge_count],
        }
    }

    pub fn palette(&self) -> ColorPalette {
        self.palette
    }

    pub fn k(&self) -> u32 {
        self.palette.k
    }

    /// Number of edge slots (the host graph's edge count).
    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn get(&self, edge: usize) -> Option<u32> {
        self.colors[edge]
    }

    /// Assign a color. Palette membership is checked by [`verify`], not here,
    /// so out-of-range colors loaded from files can be reported rather than
    /// panicked on.
    pub fn set(&mut self, edge: usize, color: u32) {
        self.colors[edge] = Some(color);
    }

    pub fn clear(&mut self, edge: usize) {
        self.colors[edge] = None;
    }

    pub fn assigned(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.colors
            .iter()
            .enumerate()
            .filter_map(|(i, c)| c.map(|c| (i, c)))
    }

    pub fn is_total(&self) -> bool {
        self.colors.iter().all(Option::is_some)
    }

    pub fn colors_used(&self) -> u32 {
        let distinct: BTreeSet<u32> = self.assigned().map(|(_, c)| c).collect();
        distinct.len() as u32
    }

    pub fn max_color(&self) -> Option<u32> {
        self.assigned().map(|(_, c)| c).max()
    }
}

/// Why a pair of edges conflicts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Reason {
    Triangle,
    DistanceTwo,
}

/// A same-colored seeing pair, ordered by edge index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Violation {
    pub first: EdgeRef,
    pub second: EdgeRef,
    pub reason: Reason,
}

/// Outcome of verifying a (partial) coloring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConflictReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
    pub colors_used: u32,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConflictError {
    #[error("edge ({u}, {v}) has color {color} outside the palette 1..={k}")]
    OutOfPalette { u: usize, v: usize, color: u32, k: u32 },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn sees_reason(g: &Graph, e: EdgeRef, f: EdgeRef) -> Option<Reason> {
    let shared = [e.u, e.v]
        .iter()
        .filter(|x| f.u == **x || f.v == **x)
        .count();
    match shared {
        1 => {
            let a = if f.u == e.u || f.v == e.u { e.v } else { e.u };
            let b = if e.u == f.u || e.v == f.u { f.v } else { f.u };
            g.has_edge(a, b).then_some(Reason::Triangle)
        }
        0 => {
            let linked = g.has_edge(e.u, f.u)
                || g.has_edge(e.u, f.v)
                || g.has_edge(e.v, f.u)
                || g.has_edge(e.v, f.v);
            linked.then_some(Reason::DistanceTwo)
        }
        _ => None,
    }
}

/// Whether two distinct edges of `g` see each other.
pub fn sees(g: &Graph, e: EdgeRef, f: EdgeRef) -> Result<bool, GraphError> {
    g.check_edge(e)?;
    g.check_edge(f)?;
    Ok(sees_reason(g, e, f).is_some())
}

/// Precomputed conflict adjacency for a fixed graph. Building this once and
/// reusing it is much cheaper than re-deriving the seeing relation inside
/// verification or search loops.
#[derive(Debug, Clone)]
pub struct ConflictModel {
    adj: Vec<Vec<(usize, Reason)>>,
}

impl ConflictModel {
    pub fn new(g: &Graph) -> ConflictModel {
        let m = g.edge_count();
        let mut adj = vec![Vec::new(); m];
        // Every edge seen by e = uv is incident to the closed neighborhood
        // of {u, v}, so only those candidates need testing.
        let mut candidates: BTreeSet<usize> = BTreeSet::new();
        for i in 0..m {
            let e = g.edge_ref(i).unwrap();
            candidates.clear();
            for &w in [e.u, e.v]
                .iter()
                .chain(g.neighbors(e.u))
                .chain(g.neighbors(e.v))
            {
                for &x in g.neighbors(w) {
                    let j = g.edge_index(w, x).unwrap();
                    if j > i {
                        candidates.insert(j);
                    }
                }
            }
            for &j in &candidates {
                let f = g.edge_ref(j).unwrap();
                if let Some(reason) = sees_reason(g, e, f) {
                    adj[i].push((j, reason));
                    adj[j].push((i, reason));
                }
            }
        }
        ConflictModel { adj }
    }

    pub fn edge_count(&self) -> usize {
        self.adj.len()
    }

    /// Edges seen by edge `e`, with the reason, sorted by index.
    pub fn conflicts(&self, e: usize) -> &[(usize, Reason)] {
        &self.adj[e]
    }

    pub fn degree(&self, e: usize) -> usize {
        self.adj[e].len()
    }

    pub fn verify(&self, g: &Graph, coloring: &PartialColoring) -> Result<ConflictReport, ConflictError> {
        assert_eq!(coloring.len(), g.edge_count(), "coloring is for another graph");
        let palette = coloring.palette();
        for (idx, c) in coloring.assigned() {
            if !palette.contains(c) {
                let (u, v) = g.edges()[idx];
                return Err(ConflictError::OutOfPalette {
                    u,
                    v,
                    color: c,
                    k: palette.k,
                });
            }
        }
        let mut violations = Vec::new();
        for i in 0..self.adj.len() {
            let Some(ci) = coloring.get(i) else { continue };
            for &(j, reason) in &self.adj[i] {
                if j <= i {
                    continue;
                }
                if coloring.get(j) == Some(ci) {
                    violations.push(Violation {
                        first: g.edge_ref(i).unwrap(),
                        second: g.edge_ref(j).unwrap(),
                        reason,
                    });
                }
            }
        }
        Ok(ConflictReport {
            valid: violations.is_empty(),
            violations,
            colors_used: coloring.colors_used(),
        })
    }
}

/// The derived graph whose vertex `i` is edge `i` of `g`, with adjacency
/// given by the seeing relation. An injective edge coloring of `g` is exactly
/// a proper vertex coloring of this graph.
pub fn conflict_graph(g: &Graph) -> Graph {
    let model = ConflictModel::new(g);
    let mut pairs = Vec::new();
    for i in 0..model.edge_count() {
        for &(j, _) in model.conflicts(i) {
            if j > i {
                pairs.push((i, j));
            }
        }
    }
    Graph::new(g.edge_count(), &pairs)
}

/// Colors of the already-colored edges that see `e`.
pub fn forbidden_set(
    g: &Graph,
    coloring: &PartialColoring,
    e: EdgeRef,
) -> Result<BTreeSet<u32>, GraphError> {
    g.check_edge(e)?;
    let mut out = BTreeSet::new();
    for (idx, c) in coloring.assigned() {
        if idx == e.index {
            continue;
        }
        let f = g.edge_ref(idx).unwrap();
        if sees_reason(g, e, f).is_some() {
            out.insert(c);
        }
    }
    Ok(out)
}

/// Palette minus [`forbidden_set`].
pub fn available_set(
    g: &Graph,
    coloring: &PartialColoring,
    e: EdgeRef,
) -> Result<BTreeSet<u32>, GraphError> {
    let forbidden = forbidden_set(g, coloring, e)?;
    Ok(coloring
        .palette()
        .iter()
        .filter(|c| !forbidden.contains(c))
        .collect())
}

/// Colors of the colored edges incident to `v`.
pub fn incident_colors(g: &Graph, coloring: &PartialColoring, v: usize) -> BTreeSet<u32> {
    let mut out = BTreeSet::new();
    for &w in g.neighbors(v) {
        let idx = g.edge_index(v, w).unwrap();
        if let Some(c) = coloring.get(idx) {
            out.insert(c);
        }
    }
    out
}

/// Verify a partial coloring against the seeing relation. Builds the
/// conflict model for `g`; callers verifying many colorings of one graph
/// should build a [`ConflictModel`] themselves and call its `verify`.
pub fn verify(g: &Graph, coloring: &PartialColoring) -> Result<ConflictReport, ConflictError> {
    ConflictModel::new(g).verify(g, coloring)
}
