//! Deterministic generators for the graph families of interest.
//!
//! All randomness flows through [`SplitMix64`], a fixed, documented generator,
//! so a given `(family, n, seed)` triple produces the same graph on every
//! platform and in every port of this tool.

use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("unknown named graph {0:?}")]
    UnknownName(String),
    #[error("family {family} needs n >= {min}, got {n}")]
    BadSize {
        family: &'static str,
        min: usize,
        n: usize,
    },
}

/// SplitMix64 pseudo-random generator.
///
/// `state += 0x9E3779B97F4A7C15`, then the output is
/// `z = state; z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9;
/// z = (z ^ (z >> 27)) * 0x94D049BB133111EB; z ^ (z >> 31)`.
/// Bounded draws use plain modulo reduction.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> SplitMix64 {
        SplitMix64 { state: seed }
    }

    pub fn next(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform-ish draw in `0..bound` (modulo reduction; `bound` must be > 0).
    pub fn below(&mut self, bound: u64) -> u64 {
        self.next() % bound
    }
}

/// The line graph of `h`: one vertex per edge of `h` (canonical indices),
/// adjacent when the edges share an endpoint. Line graphs are always
/// claw-free, and subcubic inputs give maximum degree at most 4.
pub fn line_graph(h: &Graph) -> Graph {
    let mut pairs = Vec::new();
    for v in 0..h.vertex_count() {
        let incident: Vec<usize> = h
            .neighbors(v)
            .iter()
            .map(|&w| h.edge_index(v, w).unwrap())
            .collect();
        for i in 0..incident.len() {
            for j in i + 1..incident.len() {
                let (a, b) = (incident[i], incident[j]);
                pairs.push((a.min(b), a.max(b)));
            }
        }
    }
    // Two distinct simple edges share at most one endpoint, so no pair is
    // generated twice.
    Graph::new(h.edge_count(), &pairs)
}

/// Random simple graph with maximum degree 3.
///
/// Seeded edge insertion with degree caps: the number of attempts is
/// `n + (seed mod (5n + 1))`, so density varies across seeds from sparse to
/// nearly 3-regular; each attempt draws an ordered pair `(u, v)` and inserts
/// the edge when it is simple and both endpoints are below the cap.
pub fn random_subcubic(n: usize, seed: u64) -> Graph {
    capped_insertion(n, seed, 3, false)
}

/// Random claw-free graph with maximum degree 4. Same insertion scheme as
/// [`random_subcubic`] with cap 4, additionally rejecting any edge whose
/// insertion would create an induced claw. The output is certified.
pub fn random_claw_free_max4(n: usize, seed: u64) -> Graph {
    let g = capped_insertion(n, seed, 4, true);
    assert!(crate::graph::is_claw_free(&g), "rejection sampler leaked a claw");
    assert!(g.max_degree() <= 4);
    g
}

fn capped_insertion(n: usize, seed: u64, cap: usize, claw_free: bool) -> Graph {
    if n == 0 {
        return Graph::new(0, &[]);
    }
    let mut rng = SplitMix64::new(seed);
    let attempts = n as u64 + seed % (5 * n as u64 + 1);
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut pairs = Vec::new();
    for _ in 0..attempts {
        let u = rng.below(n as u64) as usize;
        let v = rng.below(n as u64) as usize;
        if u == v || adj[u].contains(&v) || adj[u].len() >= cap || adj[v].len() >= cap {
            continue;
        }
        if claw_free && creates_claw(&adj, u, v) {
            continue;
        }
        adj[u].push(v);
        adj[v].push(u);
        pairs.push((u, v));
    }
    Graph::new(n, &pairs)
}

// A new edge uv can only create a claw whose center-leaf pair is (u, v) or
// (v, u): new non-adjacencies never appear, so any other claw existed before.
fn creates_claw(adj: &[Vec<usize>], u: usize, v: usize) -> bool {
    claw_through(adj, u, v) || claw_through(adj, v, u)
}

fn claw_through(adj: &[Vec<usize>], center: usize, leaf: usize) -> bool {
    let others = &adj[center];
    for i in 0..others.len() {
        let x = others[i];
        if adj[x].contains(&leaf) {
            continue;
        }
        for &y in &others[i + 1..] {
            if !adj[y].contains(&leaf) && !adj[x].contains(&y) {
                return true;
            }
        }
    }
    false
}

/// A named graph with a fixed canonical vertex numbering. `n` is consumed by
/// `cycle` and `path` and ignored otherwise.
pub fn named_graph(name: &str, n: usize) -> Result<Graph, GenError> {
    match name {
        "k4" => Ok(complete(4)),
        "k5" => Ok(complete(5)),
        "c6bar" => {
            // Complement of the 6-cycle: i ~ j unless they are consecutive
            // mod 6. Two triangles {0,2,4}, {1,3,5} joined by a matching.
            let mut pairs = Vec::new();
            for i in 0..6usize {
                for j in i + 1..6 {
                    let d = j - i;
                    if d != 1 && d != 5 {
                        pairs.push((i, j));
                    }
                }
            }
            Ok(Graph::new(6, &pairs))
        }
        "cycle" => {
            if n < 3 {
                return Err(GenError::BadSize { family: "cycle", min: 3, n });
            }
            Ok(Graph::new(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>()))
        }
        "path" => {
            if n < 1 {
                return Err(GenError::BadSize { family: "path", min: 1, n });
            }
            Ok(Graph::new(n, &(0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect::<Vec<_>>()))
        }
        "octahedron" => {
            // K_{2,2,2}: antipodal pairs (0,3), (1,4), (2,5) are the only
            // non-edges.
            let mut pairs = Vec::new();
            for i in 0..6usize {
                for j in i + 1..6 {
                    if j != i + 3 {
                        pairs.push((i, j));
                    }
                }
            }
            Ok(Graph::new(6, &pairs))
        }
        "line-petersen" => Ok(line_graph(&petersen())),
        "line-k33" => Ok(line_graph(&complete_bipartite(3, 3))),
        other => Err(GenError::UnknownName(other.to_string())),
    }
}

pub fn complete(n: usize) -> Graph {
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            pairs.push((u, v));
        }
    }
    Graph::new(n, &pairs)
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let mut pairs = Vec::new();
    for u in 0..a {
        for v in a..a + b {
            pairs.push((u, v));
        }
    }
    Graph::new(a + b, &pairs)
}

/// The Petersen graph: outer 5-cycle 0..5, inner pentagram 5..10, spokes
/// i -- i+5.
pub fn petersen() -> Graph {
    let mut pairs = Vec::new();
    for i in 0..5usize {
        pairs.push((i, (i + 1) % 5));
        pairs.push((5 + i, 5 + (i + 2) % 5));
        pairs.push((i, i + 5));
    }
    Graph::new(10, &pairs)
}
