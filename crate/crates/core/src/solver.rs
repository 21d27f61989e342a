//! Exact computation of the injective chromatic index.
//!
//! The index of `g` equals the chromatic number of its conflict graph, so the
//! solver is a deterministic branch-and-bound vertex colorer: saturation-based
//! vertex selection with lexicographic tie-breaks, a greedy-clique initial
//! lower bound, a first-fit initial upper bound, and canonical color
//! introduction (a vertex may open at most one fresh color). A search budget
//! caps the node count; exhaustion downgrades the result to an upper bound.
//!
//! [`brute_force_index`] is an independent oracle for small instances: it
//! re-derives the conflict relation from first principles and enumerates
//! canonical colorings directly, sharing nothing with the branch-and-bound
//! path.

use thiserror::Error;

use crate::conflict::{conflict_graph, PartialColoring};
use crate::graph::Graph;

/// Default search budget in branch nodes.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Largest instance (in edges) the brute-force oracle accepts.
pub const BRUTE_FORCE_MAX_EDGES: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("graph has {edges} edges; the brute-force oracle is capped at {max}")]
    TooLarge { edges: usize, max: usize },
}

/// Result of an exact vertex-coloring run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChromaticResult {
    /// Optimal color count, or the best upper bound found when the budget ran
    /// out.
    pub chi: u32,
    /// A proper coloring using `chi` colors, one entry per vertex.
    pub colors: Vec<u32>,
    /// Greedy clique lower bound.
    pub lower_bound: u32,
    pub nodes_explored: u64,
    pub budget_exhausted: bool,
}

/// Result of an injective-chromatic-index run: the vertex coloring of the
/// conflict graph translated back to an edge coloring of the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub chi: u32,
    pub witness: PartialColoring,
    pub lower_bound: u32,
    pub nodes_explored: u64,
    pub budget_exhausted: bool,
}

/// First-fit coloring in vertex order; colors start at 1.
pub fn first_fit_coloring(h: &Graph) -> Vec<u32> {
    let n = h.vertex_count();
    let mut colors = vec![0u32; n];
    for v in 0..n {
        let mut used: Vec<u32> = h
            .neighbors(v)
            .iter()
            .filter(|&&w| w < v)
            .map(|&w| colors[w])
            .collect();
        used.sort_unstable();
        let mut c = 1;
        for u in used {
            if u == c {
                c += 1;
            } else if u > c {
                break;
            }
        }
        colors[v] = c;
    }
    colors
}

fn greedy_clique(h: &Graph) -> Vec<usize> {
    let n = h.vertex_count();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(h.degree(v)), v));
    let mut clique: Vec<usize> = Vec::new();
    for v in order {
        if clique.iter().all(|&u| h.has_edge(u, v)) {
            clique.push(v);
        }
    }
    clique.sort_unstable();
    clique
}

struct BbState<'a> {
    h: &'a Graph,
    budget: u64,
    nodes: u64,
    exhausted: bool,
    colors: Vec<u32>, // 0 = unassigned
    // neighbor_colors[v][c] = how many neighbors of v currently have color c.
    neighbor_colors: Vec<Vec<u16>>,
    saturation: Vec<u32>,
    best: u32,
    best_colors: Vec<u32>,
    lower: u32,
}

impl BbState<'_> {
    fn assign(&mut self, v: usize, c: u32) {
        self.colors[v] = c;
        for &w in self.h.neighbors(v) {
            let slot = &mut self.neighbor_colors[w][c as usize];
            if *slot == 0 {
                self.saturation[w] += 1;
            }
            *slot += 1;
        }
    }

    fn unassign(&mut self, v: usize, c: u32) {
        self.colors[v] = 0;
        for &w in self.h.neighbors(v) {
            let slot = &mut self.neighbor_colors[w][c as usize];
            *slot -= 1;
            if *slot == 0 {
                self.saturation[w] -= 1;
            }
        }
    }

    fn select(&self) -> Option<usize> {
        let mut pick = None;
        let mut best_sat = 0;
        for v in 0..self.colors.len() {
            if self.colors[v] != 0 {
                continue;
            }
            if pick.is_none() || self.saturation[v] > best_sat {
                pick = Some(v);
                best_sat = self.saturation[v];
            }
        }
        pick
    }

    fn search(&mut self, colored: usize, max_used: u32) {
        if self.exhausted || self.best == self.lower {
            return;
        }
        let Some(v) = self.select() else {
            if max_used < self.best {
                self.best = max_used;
                self.best_colors = self.colors.clone();
            }
            return;
        };
        let cap = (max_used + 1).min(self.best - 1);
        for c in 1..=cap {
            if self.neighbor_colors[v][c as usize] != 0 {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                self.exhausted = true;
                return;
            }
            self.assign(v, c);
            self.search(colored + 1, max_used.max(c));
            self.unassign(v, c);
            if self.exhausted || self.best == self.lower {
                return;
            }
        }
    }
}

/// Exact chromatic number of `h` by branch and bound, within `budget` search
/// nodes. Deterministic: identical inputs give identical results and node
/// counts.
pub fn chromatic_number_bb(h: &Graph, budget: u64) -> ChromaticResult {
    let n = h.vertex_count();
    if n == 0 {
        return ChromaticResult {
            chi: 0,
            colors: Vec::new(),
            lower_bound: 0,
            nodes_explored: 0,
            budget_exhausted: false,
        };
    }
    let clique = greedy_clique(h);
    let lower = clique.len() as u32;
    let first_fit = first_fit_coloring(h);
    let upper = *first_fit.iter().max().unwrap();
    if lower == upper {
        return ChromaticResult {
            chi: upper,
            colors: first_fit,
            lower_bound: lower,
            nodes_explored: 0,
            budget_exhausted: false,
        };
    }
    let mut state = BbState {
        h,
        budget,
        nodes: 0,
        exhausted: false,
        colors: vec![0; n],
        neighbor_colors: vec![vec![0; upper as usize + 2]; n],
        saturation: vec![0; n],
        best: upper,
        best_colors: first_fit,
        lower,
    };
    // Pre-color the clique 1..=q; any coloring can be relabeled to match, so
    // no optimum is lost and the color symmetry collapses.
    for (i, &v) in clique.iter().enumerate() {
        state.assign(v, i as u32 + 1);
    }
    state.search(clique.len(), lower);
    ChromaticResult {
        chi: state.best,
        colors: state.best_colors,
        lower_bound: lower,
        nodes_explored: state.nodes,
        budget_exhausted: state.exhausted,
    }
}

/// Exact injective chromatic index of `g`: solve the conflict graph and carry
/// the witness back to the edges of `g`.
pub fn injective_chromatic_index(g: &Graph, budget: u64) -> SolveResult {
    let h = conflict_graph(g);
    let r = chromatic_number_bb(&h, budget);
    let mut witness = PartialColoring::empty(g.edge_count(), r.chi.max(1));
    for (edge, &c) in r.colors.iter().enumerate() {
        witness.set(edge, c);
    }
    SolveResult {
        chi: r.chi,
        witness,
        lower_bound: r.lower_bound,
        nodes_explored: r.nodes_explored,
        budget_exhausted: r.budget_exhausted,
    }
}

// The oracle's own conflict matrix, derived straight from the definition so
// it shares nothing with the conflict module.
fn oracle_conflicts(g: &Graph) -> Vec<Vec<bool>> {
    let m = g.edge_count();
    let mut conflict = vec![vec![false; m]; m];
    for i in 0..m {
        let (a, b) = g.edges()[i];
        for j in i + 1..m {
            let (c, d) = g.edges()[j];
            let shared =
                (a == c) as u8 + (a == d) as u8 + (b == c) as u8 + (b == d) as u8;
            let hit = match shared {
                1 => {
                    let x = if a == c || a == d { b } else { a };
                    let y = if c == a || c == b { d } else { c };
                    g.has_edge(x, y)
                }
                0 => {
                    g.has_edge(a, c) || g.has_edge(a, d) || g.has_edge(b, c) || g.has_edge(b, d)
                }
                _ => false,
            };
            conflict[i][j] = hit;
            conflict[j][i] = hit;
        }
    }
    conflict
}

fn brute_fits(
    conflict: &[Vec<bool>],
    colors: &mut [u32],
    edge: usize,
    k: u32,
    max_used: u32,
) -> bool {
    if edge == colors.len() {
        return true;
    }
    // Canonical assignment: an edge may reuse any earlier color or open
    // exactly the next fresh one, killing color permutations.
    let cap = (max_used + 1).min(k);
    for c in 1..=cap {
        if (0..edge).any(|f| conflict[edge][f] && colors[f] == c) {
            continue;
        }
        colors[edge] = c;
        if brute_fits(conflict, colors, edge + 1, k, max_used.max(c)) {
            return true;
        }
        colors[edge] = 0;
    }
    false
}

/// Smallest k admitting a valid coloring, by exhaustive enumeration. The
/// independent oracle for small instances; capped at 12 edges.
pub fn brute_force_index(g: &Graph) -> Result<u32, SolveError> {
    Ok(brute_force_solve(g)?.0)
}

/// Oracle variant that also returns the witness coloring it found.
pub fn brute_force_solve(g: &Graph) -> Result<(u32, PartialColoring), SolveError> {
    let m = g.edge_count();
    if m > BRUTE_FORCE_MAX_EDGES {
        return Err(SolveError::TooLarge {
            edges: m,
            max: BRUTE_FORCE_MAX_EDGES,
        });
    }
    if m == 0 {
        return Ok((0, PartialColoring::empty(0, 1)));
    }
    let conflict = oracle_conflicts(g);
    for k in 1..=m as u32 {
        let mut colors = vec![0u32; m];
        if brute_fits(&conflict, &mut colors, 0, k, 0) {
            let mut witness = PartialColoring::empty(m, k);
            for (edge, &c) in colors.iter().enumerate() {
                witness.set(edge, c);
            }
            return Ok((k, witness));
        }
    }
    unreachable!("m mutually conflicting edges always fit in m colors");
}

/// First-fit edge coloring through the conflict graph. No bound guarantee;
/// this is the CLI fallback for inputs outside the claw-free max-degree-4
/// class.
pub fn greedy_injective_coloring(g: &Graph) -> PartialColoring {
    let h = conflict_graph(g);
    let colors = first_fit_coloring(&h);
    let k = colors.iter().copied().max().unwrap_or(0).max(1);
    let mut coloring = PartialColoring::empty(g.edge_count(), k);
    for (edge, &c) in colors.iter().enumerate() {
        coloring.set(edge, c);
    }
    coloring
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conflict::verify;
    use crate::generators::{complete, named_graph, random_claw_free_max4, SplitMix64};
    use crate::graph::{delete_vertices, from_edge_list};
    use std::collections::BTreeSet;

    #[test]
    fn chromatic_number_basics() {
        assert_eq!(chromatic_number_bb(&complete(3), DEFAULT_BUDGET).chi, 3);
        let edgeless = Graph::new(5, &[]);
        assert_eq!(chromatic_number_bb(&edgeless, DEFAULT_BUDGET).chi, 1);
        let c5 = named_graph("cycle", 5).unwrap();
        assert_eq!(chromatic_number_bb(&c5, DEFAULT_BUDGET).chi, 3);
        let empty = Graph::new(0, &[]);
        assert_eq!(chromatic_number_bb(&empty, DEFAULT_BUDGET).chi, 0);
    }

    #[test]
    fn brute_force_basics() {
        let tri = complete(3);
        assert_eq!(brute_force_index(&tri).unwrap(), 3);
        let single = from_edge_list(&[(0, 1)]).unwrap();
        assert_eq!(brute_force_index(&single).unwrap(), 1);
        let c4 = named_graph("cycle", 4).unwrap();
        assert_eq!(brute_force_index(&c4).unwrap(), 2);
    }

    #[test]
    fn brute_force_rejects_large_graphs() {
        let big = named_graph("cycle", 13).unwrap();
        assert_eq!(
            brute_force_index(&big),
            Err(SolveError::TooLarge { edges: 13, max: 12 })
        );
    }

    #[test]
    fn small_instance_indices() {
        let cases: Vec<(&str, Graph, u32)> = vec![
            ("triangle", named_graph("cycle", 3).unwrap(), 3),
            ("p4", named_graph("path", 4).unwrap(), 2),
            ("c4", named_graph("cycle", 4).unwrap(), 2),
            ("c5", named_graph("cycle", 5).unwrap(), 3),
            ("k4", named_graph("k4", 0).unwrap(), 6),
            ("c6bar", named_graph("c6bar", 0).unwrap(), 6),
            ("k5", named_graph("k5", 0).unwrap(), 10),
        ];
        for (name, g, expected) in cases {
            let brute = brute_force_index(&g).unwrap();
            let solved = injective_chromatic_index(&g, DEFAULT_BUDGET);
            assert_eq!(brute, expected, "{name} brute");
            assert_eq!(solved.chi, expected, "{name} bb");
            assert!(!solved.budget_exhausted);
        }
    }

    #[test]
    fn k5_conflict_graph_is_complete() {
        let h = conflict_graph(&complete(5));
        assert_eq!(h.vertex_count(), 10);
        assert_eq!(h.edge_count(), 45);
    }

    #[test]
    fn octahedron_index_is_six() {
        // Adjacent octahedron edges whose far endpoints are antipodal do not
        // see each other, so the conflict graph is K12 minus three disjoint
        // 4-cycles and the index is 6, achieved by pairing those edges.
        let oct = named_graph("octahedron", 0).unwrap();
        let h = conflict_graph(&oct);
        assert_eq!(h.vertex_count(), 12);
        assert_eq!(h.edge_count(), 66 - 12);
        for v in 0..12 {
            assert_eq!(h.degree(v), 9);
        }
        assert_eq!(brute_force_index(&oct).unwrap(), 6);
        let solved = injective_chromatic_index(&oct, DEFAULT_BUDGET);
        assert_eq!(solved.chi, 6);
        let report = verify(&oct, &solved.witness).unwrap();
        assert!(report.valid);
        assert_eq!(report.colors_used, 6);
    }

    #[test]
    fn witness_is_valid_with_exactly_chi_colors() {
        let mut rng = SplitMix64::new(41);
        for _ in 0..30 {
            let g = random_claw_free_max4(8, rng.next());
            let r = injective_chromatic_index(&g, DEFAULT_BUDGET);
            assert!(!r.budget_exhausted);
            assert!(r.lower_bound <= r.chi);
            let report = verify(&g, &r.witness).unwrap();
            assert!(report.valid);
            assert_eq!(report.colors_used, r.chi);
        }
    }

    #[test]
    fn solvers_agree_on_small_samples() {
        let mut rng = SplitMix64::new(53);
        let mut checked = 0;
        for _ in 0..120 {
            let g = crate::generators::random_subcubic(7, rng.next());
            if g.edge_count() > BRUTE_FORCE_MAX_EDGES {
                continue;
            }
            let brute = brute_force_index(&g).unwrap();
            let bb = injective_chromatic_index(&g, DEFAULT_BUDGET);
            assert!(!bb.budget_exhausted);
            assert_eq!(brute, bb.chi);
            checked += 1;
        }
        assert!(checked >= 50);
    }

    #[test]
    fn index_is_monotone_under_vertex_deletion() {
        let mut rng = SplitMix64::new(61);
        for _ in 0..40 {
            let g = random_claw_free_max4(9, rng.next());
            let full = injective_chromatic_index(&g, DEFAULT_BUDGET).chi;
            let mut remove = BTreeSet::new();
            for v in 0..g.vertex_count() {
                if rng.below(4) == 0 {
                    remove.insert(v);
                }
            }
            let sub = delete_vertices(&g, &remove);
            let smaller = injective_chromatic_index(&sub.graph, DEFAULT_BUDGET).chi;
            assert!(smaller <= full);
        }
    }

    #[test]
    fn budget_exhaustion_reports_upper_bound() {
        // The conflict graph of C5 is a 5-cycle: clique bound 2, chromatic
        // number 3, so proving optimality needs search the budget denies.
        let g = named_graph("cycle", 5).unwrap();
        let r = injective_chromatic_index(&g, 1);
        assert!(r.budget_exhausted);
        assert_eq!(r.chi, 3);
        assert_eq!(r.lower_bound, 2);
        assert!(verify(&g, &r.witness).unwrap().valid);
    }

    #[test]
    fn greedy_fallback_is_valid() {
        let star = from_edge_list(&[(0, 1), (0, 2), (0, 3)]).unwrap();
        let coloring = greedy_injective_coloring(&star);
        assert!(coloring.is_total());
        assert!(verify(&star, &coloring).unwrap().valid);
    }

    #[test]
    fn first_fit_skips_used_colors() {
        let h = complete(4);
        assert_eq!(first_fit_coloring(&h), vec![1, 2, 3, 4]);
    }
}
