//! Constructive injective coloring of claw-free graphs with maximum degree 4.
//!
//! The colorer peels one reducible configuration at a time, colors the
//! remainder recursively, and extends the coloring back over the *frontier* —
//! the edges incident to the deleted vertices — by exhaustive backtracking
//! over available colors. The configurations, tried in a fixed priority
//! order, are:
//!
//! 1. `Deg3` — a vertex of degree at most 3.
//! 2. `K4Shared` / `K4Distinct` — a K4 whose members (all of degree 4 by this
//!    point) have outside neighbors that coincide somewhere / are pairwise
//!    distinct.
//! 3. `ThreeTriangles` — a degree-4 vertex lying in three or more triangles.
//! 4. `FourCycle` — a 4-cycle; by this point every vertex lies in exactly two
//!    edge-disjoint triangles, so the cycle carries a triangle apex on each
//!    of its edges and the deletion takes the cycle minus one vertex plus two
//!    apexes.
//! 5. `FinalConfig` — always applicable once everything above is exhausted:
//!    any vertex together with its four neighbors.
//!
//! With 13 colors this terminates with a valid total coloring for every
//! claw-free graph of maximum degree at most 4. Backtracking over the whole
//! frontier subsumes the local recoloring such arguments traditionally need;
//! the one exception is `ThreeTriangles`, where on failure the search is
//! retried once with the edges among the deleted vertex's neighbors uncolored
//! as well (the escalation set).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::conflict::{ConflictModel, PartialColoring};
use crate::graph::{
    claw_witness, delete_vertices, find_four_cycle, find_k4, incident_triangle_count,
    is_claw_free, ClawWitness, Graph,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ReductionKind {
    Deg3,
    K4Shared,
    K4Distinct,
    ThreeTriangles,
    FourCycle,
    FinalConfig,
}

impl ReductionKind {
    pub const ALL: [ReductionKind; 6] = [
        ReductionKind::Deg3,
        ReductionKind::K4Shared,
        ReductionKind::K4Distinct,
        ReductionKind::ThreeTriangles,
        ReductionKind::FourCycle,
        ReductionKind::FinalConfig,
    ];
}

impl fmt::Display for ReductionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ReductionKind::Deg3 => "Deg3",
            ReductionKind::K4Shared => "K4Shared",
            ReductionKind::K4Distinct => "K4Distinct",
            ReductionKind::ThreeTriangles => "ThreeTriangles",
            ReductionKind::FourCycle => "FourCycle",
            ReductionKind::FinalConfig => "FinalConfig",
        };
        f.write_str(s)
    }
}

/// A detected reducible configuration.
///
/// `anchors` records the configuration's labeled vertices:
///
/// * `Deg3`, `ThreeTriangles`: `[v]`
/// * `K4Shared`: the K4 relabeled so the first two members share their
///   outside neighbor; the first is deleted.
/// * `K4Distinct`: the K4 in increasing order; all four are deleted.
/// * `FourCycle`: `[x, y, u, v, y1, u1]` — the cycle plus the apexes of
///   edges `yu` and `uv`; `{y, y1, u, v, u1}` is deleted.
/// * `FinalConfig`: `[v, u1, u2, u3, u4, x1, y1, x2, y2, x3, y3, x4, y4]`
///   where `u1u2` and `u3u4` are the matching edges inside `N(v)` and
///   `{x_i, y_i}` are `u_i`'s other two neighbors; `{v, u1..u4}` is deleted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionStep {
    pub kind: ReductionKind,
    pub anchors: Vec<usize>,
    /// Deleted vertices, sorted.
    pub deleted: Vec<usize>,
    /// All edges incident to the deleted vertices, by index, sorted.
    pub frontier: Vec<usize>,
    /// Preferred coloring order over the frontier; empty means fully dynamic.
    pub order_hint: Vec<usize>,
    /// Extra edges to uncolor when a first extension attempt fails.
    pub escalation: Vec<usize>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{stage} stage: {message} (witness {witness:?})")]
pub struct StructureViolation {
    pub stage: ReductionKind,
    pub message: String,
    pub witness: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PreconditionFailure {
    Claw(ClawWitness),
    HighDegree { vertex: usize, degree: usize },
}

impl fmt::Display for PreconditionFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PreconditionFailure::Claw(w) => write!(
                f,
                "claw centered at {} with leaves {:?}",
                w.center, w.leaves
            ),
            PreconditionFailure::HighDegree { vertex, degree } => {
                write!(f, "vertex {vertex} has degree {degree} > 4")
            }
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReduceError {
    #[error("input outside the claw-free max-degree-4 class: {0}")]
    Precondition(PreconditionFailure),
    #[error("cannot reduce an empty graph")]
    EmptyGraph,
    #[error(transparent)]
    Structure(#[from] StructureViolation),
    #[error("extension search exhausted at a {kind} step; input likely violates a precondition")]
    InternalUnextendable { kind: ReductionKind },
}

/// Extension search space exhausted over the given frontier.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("no valid extension over {frontier_len} frontier edges with {k} colors")]
pub struct Unextendable {
    pub frontier_len: usize,
    pub k: u32,
}

fn violation(
    stage: ReductionKind,
    message: impl Into<String>,
    witness: Vec<usize>,
) -> ReduceError {
    ReduceError::Structure(StructureViolation {
        stage,
        message: message.into(),
        witness,
    })
}

fn common_neighbors(g: &Graph, a: usize, b: usize) -> Vec<usize> {
    g.neighbors(a)
        .iter()
        .copied()
        .filter(|&w| g.has_edge(b, w))
        .collect()
}

// The unique outside neighbor of a degree-4 member of a K4.
fn outside_neighbor(g: &Graph, v: usize, quad: &[usize; 4]) -> Result<usize, ReduceError> {
    let outside: Vec<usize> = g
        .neighbors(v)
        .iter()
        .copied()
        .filter(|w| !quad.contains(w))
        .collect();
    if g.degree(v) != 4 || outside.len() != 1 {
        return Err(violation(
            ReductionKind::K4Shared,
            format!("K4 member {v} should have degree 4 with one outside neighbor"),
            quad.to_vec(),
        ));
    }
    Ok(outside[0])
}

// Every vertex must have degree 4 and exactly two disjoint edges inside its
// neighborhood (two edge-disjoint triangles). Returns the matching per
// vertex.
fn check_triangle_matching(g: &Graph) -> Result<Vec<[(usize, usize); 2]>, ReduceError> {
    let stage = ReductionKind::FourCycle;
    let mut out = Vec::with_capacity(g.vertex_count());
    for v in 0..g.vertex_count() {
        if g.degree(v) != 4 {
            return Err(violation(
                stage,
                format!("vertex {v} has degree {} at a stage requiring 4", g.degree(v)),
                vec![v],
            ));
        }
        let nb = g.neighbors(v);
        let mut inside = Vec::new();
        for i in 0..4 {
            for j in i + 1..4 {
                if g.has_edge(nb[i], nb[j]) {
                    inside.push((nb[i], nb[j]));
                }
            }
        }
        if inside.len() != 2 || [inside[0].0, inside[0].1].contains(&inside[1].0)
            || [inside[0].0, inside[0].1].contains(&inside[1].1)
        {
            return Err(violation(
                stage,
                format!("vertex {v} is not in exactly two edge-disjoint triangles"),
                vec![v],
            ));
        }
        out.push([inside[0], inside[1]]);
    }
    Ok(out)
}

fn unique_apex(g: &Graph, a: usize, b: usize, stage: ReductionKind) -> Result<usize, ReduceError> {
    let apexes = common_neighbors(g, a, b);
    if apexes.len() != 1 {
        return Err(violation(
            stage,
            format!(
                "edge ({a}, {b}) should lie in exactly one triangle, found {} apexes",
                apexes.len()
            ),
            apexes,
        ));
    }
    Ok(apexes[0])
}

fn edge_of(g: &Graph, a: usize, b: usize) -> usize {
    g.edge_index(a, b)
        .unwrap_or_else(|| panic!("expected edge ({a}, {b}) in the host graph"))
}

/// Frontier, order hint, and escalation set for a detected step: the frontier
/// is every edge incident to a deleted vertex; the hint follows the fixed
/// per-kind coloring order where one is defined; the escalation set is the
/// edge set of the deleted vertex's neighborhood for `ThreeTriangles`.
///
/// The step must come from [`find_reduction`] on the same graph.
pub fn frontier_for(g: &Graph, step: &ReductionStep) -> (Vec<usize>, Vec<usize>, Vec<usize>) {
    let deleted: BTreeSet<usize> = step.deleted.iter().copied().collect();
    let mut frontier: Vec<usize> = g
        .edges()
        .iter()
        .enumerate()
        .filter(|(_, &(u, v))| deleted.contains(&u) || deleted.contains(&v))
        .map(|(i, _)| i)
        .collect();
    frontier.sort_unstable();

    let order_hint: Vec<usize> = match step.kind {
        ReductionKind::Deg3 | ReductionKind::K4Shared | ReductionKind::ThreeTriangles => Vec::new(),
        ReductionKind::K4Distinct => {
            let [v1, v2, v3, v4] = [step.anchors[0], step.anchors[1], step.anchors[2], step.anchors[3]];
            let quad = [v1, v2, v3, v4];
            let outside = |v: usize| {
                g.neighbors(v)
                    .iter()
                    .copied()
                    .find(|w| !quad.contains(w))
                    .expect("K4 member lost its outside neighbor")
            };
            let (u1, u2, u3, u4) = (outside(v1), outside(v2), outside(v3), outside(v4));
            [
                (v1, v4), (v1, v2), (v2, v3), (v3, v4), (v1, v3), (v2, v4),
                (v4, u4), (v2, u2), (v3, u3), (v1, u1),
            ]
            .iter()
            .map(|&(a, b)| edge_of(g, a, b))
            .collect()
        }
        ReductionKind::FourCycle => {
            let [x, y, u, v, y1, u1] = [
                step.anchors[0], step.anchors[1], step.anchors[2],
                step.anchors[3], step.anchors[4], step.anchors[5],
            ];
            let two_outside = |c: usize, skip: [usize; 2]| -> (usize, usize) {
                let rest: Vec<usize> = g
                    .neighbors(c)
                    .iter()
                    .copied()
                    .filter(|w| !skip.contains(w))
                    .collect();
                assert_eq!(rest.len(), 2, "apex {c} should have two private neighbors");
                (rest[0], rest[1])
            };
            let (y1a, y1b) = two_outside(y1, [y, u]);
            let (u1a, u1b) = two_outside(u1, [u, v]);
            let x1 = common_neighbors(g, x, y)[0];
            let v1 = common_neighbors(g, v, x)[0];
            [
                (y, u), (u, v), (u, y1), (u, u1),
                (y1, y1a), (y1, y1b), (u1, u1a), (u1, u1b),
                (y, x1), (v, v1), (y, x), (x, v), (y, y1), (v, u1),
            ]
            .iter()
            .map(|&(a, b)| edge_of(g, a, b))
            .collect()
        }
        ReductionKind::FinalConfig => {
            let a = &step.anchors;
            let (v, u1, u2, u3, u4) = (a[0], a[1], a[2], a[3], a[4]);
            let (x1, y1, x2, y2) = (a[5], a[6], a[7], a[8]);
            let (x3, y3, x4, y4) = (a[9], a[10], a[11], a[12]);
            [
                (v, u1), (v, u3),
                (u1, x1), (u1, y1), (u2, x2), (u2, y2),
                (u3, x3), (u3, y3), (u4, x4), (u4, y4),
                (v, u2), (v, u4), (u1, u2), (u3, u4),
            ]
            .iter()
            .map(|&(a, b)| edge_of(g, a, b))
            .collect()
        }
    };

    let escalation: Vec<usize> = match step.kind {
        ReductionKind::ThreeTriangles => {
            let v = step.anchors[0];
            let nb = g.neighbors(v);
            let mut edges = Vec::new();
            for i in 0..nb.len() {
                for j in i + 1..nb.len() {
                    if let Some(idx) = g.edge_index(nb[i], nb[j]) {
                        edges.push(idx);
                    }
                }
            }
            edges.sort_unstable();
            edges
        }
        _ => Vec::new(),
    };

    (frontier, order_hint, escalation)
}

fn build_step(
    g: &Graph,
    kind: ReductionKind,
    anchors: Vec<usize>,
    deleted: Vec<usize>,
) -> ReductionStep {
    let mut step = ReductionStep {
        kind,
        anchors,
        deleted,
        frontier: Vec::new(),
        order_hint: Vec::new(),
        escalation: Vec::new(),
    };
    step.deleted.sort_unstable();
    let (frontier, order_hint, escalation) = frontier_for(g, &step);
    step.frontier = frontier;
    step.order_hint = order_hint;
    step.escalation = escalation;
    step
}

/// Detect the first applicable reducible configuration in priority order.
///
/// Expects a nonempty claw-free graph of maximum degree at most 4; when a
/// stage's derived structure contradicts those preconditions a
/// [`StructureViolation`] is returned instead.
pub fn find_reduction(g: &Graph) -> Result<ReductionStep, ReduceError> {
    if g.vertex_count() == 0 {
        return Err(ReduceError::EmptyGraph);
    }

    if let Some(v) = (0..g.vertex_count()).find(|&v| g.degree(v) <= 3) {
        return Ok(build_step(g, ReductionKind::Deg3, vec![v], vec![v]));
    }

    if let Some(quad) = find_k4(g) {
        let mut outside = [0usize; 4];
        for (i, &v) in quad.iter().enumerate() {
            outside[i] = outside_neighbor(g, v, &quad)?;
        }
        let coinciding = (0..4)
            .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
            .find(|&(i, j)| outside[i] == outside[j]);
        if let Some((i, j)) = coinciding {
            // Relabel so the coinciding pair comes first; the first one is
            // deleted.
            let mut anchors = vec![quad[i], quad[j]];
            anchors.extend(quad.iter().copied().filter(|v| *v != quad[i] && *v != quad[j]));
            let deleted = vec![quad[i]];
            return Ok(build_step(g, ReductionKind::K4Shared, anchors, deleted));
        }
        return Ok(build_step(
            g,
            ReductionKind::K4Distinct,
            quad.to_vec(),
            quad.to_vec(),
        ));
    }

    if let Some(v) = (0..g.vertex_count()).find(|&v| incident_triangle_count(g, v) >= 3) {
        if g.degree(v) != 4 {
            return Err(violation(
                ReductionKind::ThreeTriangles,
                format!("triangle-rich vertex {v} has degree {}", g.degree(v)),
                vec![v],
            ));
        }
        return Ok(build_step(g, ReductionKind::ThreeTriangles, vec![v], vec![v]));
    }

    // From here on every vertex must lie in exactly two edge-disjoint
    // triangles; this is what makes the remaining configurations rigid.
    let matchings = check_triangle_matching(g)?;

    if let Some(cycle) = find_four_cycle(g) {
        let [x, y, u, v] = cycle;
        let stage = ReductionKind::FourCycle;
        if g.has_edge(x, u) || g.has_edge(y, v) {
            return Err(violation(
                stage,
                "4-cycle has a chord at a stage where chords are impossible".to_string(),
                cycle.to_vec(),
            ));
        }
        for (a, b) in [(x, y), (y, u), (u, v), (v, x)] {
            unique_apex(g, a, b, stage)?;
        }
        let y1 = unique_apex(g, y, u, stage)?;
        let u1 = unique_apex(g, u, v, stage)?;
        let deleted = vec![y, y1, u, v, u1];
        let distinct: BTreeSet<usize> = deleted.iter().copied().collect();
        if distinct.len() != 5 || distinct.contains(&x) {
            return Err(violation(
                stage,
                "cycle vertices and apexes coincide".to_string(),
                vec![x, y, u, v, y1, u1],
            ));
        }
        let anchors = vec![x, y, u, v, y1, u1];
        return Ok(build_step(g, stage, anchors, deleted));
    }

    // FinalConfig around the smallest vertex. In debug builds re-check that
    // the earlier detectors really found nothing.
    debug_assert!(find_k4(g).is_none());
    debug_assert!(find_four_cycle(g).is_none());
    debug_assert!((0..g.vertex_count()).all(|v| g.degree(v) == 4));
    debug_assert!((0..g.vertex_count()).all(|v| incident_triangle_count(g, v) == 2));

    let stage = ReductionKind::FinalConfig;
    let v = 0;
    let [(a, b), (c, d)] = matchings[v];
    let (u1, u2) = if a < c { (a, b) } else { (c, d) };
    let (u3, u4) = if a < c { (c, d) } else { (a, b) };
    let mut anchors = vec![v, u1, u2, u3, u4];
    let mut xs = Vec::new();
    for (ui, partner) in [(u1, u2), (u2, u1), (u3, u4), (u4, u3)] {
        let rest: Vec<usize> = g
            .neighbors(ui)
            .iter()
            .copied()
            .filter(|&w| w != v && w != partner)
            .collect();
        if rest.len() != 2 {
            return Err(violation(
                stage,
                format!("neighbor {ui} of the center does not have two private neighbors"),
                vec![v, ui],
            ));
        }
        let (xi, yi) = (rest[0], rest[1]);
        if !g.has_edge(xi, yi) {
            return Err(violation(
                stage,
                format!("private neighbors of {ui} are not adjacent"),
                vec![ui, xi, yi],
            ));
        }
        xs.push((xi, yi));
        anchors.push(xi);
        anchors.push(yi);
    }
    // Facts the configuration is known to satisfy: no u_i reappears as an
    // x/y, and the x side never repeats across pairs.
    for &(xi, yi) in &xs {
        if [u1, u2, u3, u4].contains(&xi) || [u1, u2, u3, u4].contains(&yi) || xi == yi {
            return Err(violation(
                stage,
                "outer triangle vertices collide with the center's neighbors".to_string(),
                anchors,
            ));
        }
    }
    for i in 0..4 {
        for j in i + 1..4 {
            if xs[i].0 == xs[j].0 {
                return Err(violation(
                    stage,
                    "outer triangle vertices repeat across pairs".to_string(),
                    anchors,
                ));
            }
        }
    }
    let deleted = vec![v, u1, u2, u3, u4];
    Ok(build_step(g, stage, anchors, deleted))
}

enum Selection {
    Done,
    Dead,
    Pick(usize),
}

struct ExtendSearch<'a> {
    model: &'a ConflictModel,
    frontier: &'a [usize],
    k: u32,
    // Frontier position of each edge index, or usize::MAX.
    pos_of: Vec<usize>,
    // Hint rank per frontier position, usize::MAX when unhinted.
    hint_rank: Vec<usize>,
    assigned: Vec<Option<u32>>,
    // counts[pos][c] = colored seers of that frontier edge carrying color c.
    counts: Vec<Vec<u32>>,
    // Distinct forbidden colors per frontier position.
    forbidden: Vec<u32>,
    work: PartialColoring,
}

impl ExtendSearch<'_> {
    fn select(&self) -> Selection {
        let mut best: Option<(usize, usize)> = None; // (hint rank, pos)
        let mut fallback: Option<(u32, usize)> = None; // (forbidden count, pos)
        let mut all_done = true;
        for pos in 0..self.frontier.len() {
            if self.assigned[pos].is_some() {
                continue;
            }
            all_done = false;
            if self.forbidden[pos] >= self.k {
                return Selection::Dead;
            }
            let rank = self.hint_rank[pos];
            if rank != usize::MAX {
                if best.map_or(true, |(r, _)| rank < r) {
                    best = Some((rank, pos));
                }
            } else if fallback.map_or(true, |(f, p)| {
                (std::cmp::Reverse(self.forbidden[pos]), self.frontier[pos])
                    < (std::cmp::Reverse(f), self.frontier[p])
            }) {
                fallback = Some((self.forbidden[pos], pos));
            }
        }
        if all_done {
            Selection::Done
        } else if let Some((_, pos)) = best {
            Selection::Pick(pos)
        } else {
            Selection::Pick(fallback.unwrap().1)
        }
    }

    fn assign(&mut self, pos: usize, c: u32) {
        self.assigned[pos] = Some(c);
        let e = self.frontier[pos];
        self.work.set(e, c);
        for &(f, _) in self.model.conflicts(e) {
            let fp = self.pos_of[f];
            if fp != usize::MAX {
                let slot = &mut self.counts[fp][c as usize];
                if *slot == 0 {
                    self.forbidden[fp] += 1;
                }
                *slot += 1;
            }
        }
    }

    fn unassign(&mut self, pos: usize, c: u32) {
        self.assigned[pos] = None;
        let e = self.frontier[pos];
        self.work.clear(e);
        for &(f, _) in self.model.conflicts(e) {
            let fp = self.pos_of[f];
            if fp != usize::MAX {
                let slot = &mut self.counts[fp][c as usize];
                *slot -= 1;
                if *slot == 0 {
                    self.forbidden[fp] -= 1;
                }
            }
        }
    }

    fn search(&mut self) -> bool {
        let pos = match self.select() {
            Selection::Done => return true,
            Selection::Dead => return false,
            Selection::Pick(pos) => pos,
        };
        for c in 1..=self.k {
            if self.counts[pos][c as usize] != 0 {
                continue;
            }
            self.assign(pos, c);
            if self.search() {
                return true;
            }
            self.unassign(pos, c);
        }
        false
    }
}

/// Extend a valid partial coloring over the uncolored frontier edges.
///
/// Exhaustive backtracking: hinted edges are branched on first, in hint
/// order; the rest are picked most-constrained-first with the smallest edge
/// index breaking ties. Colors are tried in ascending order, so the result is
/// deterministic. `Unextendable` means the whole search space is exhausted.
pub fn extend(
    g: &Graph,
    model: &ConflictModel,
    base: &PartialColoring,
    frontier: &[usize],
    order_hint: &[usize],
) -> Result<PartialColoring, Unextendable> {
    debug_assert_eq!(base.len(), g.edge_count());
    debug_assert!(frontier.iter().all(|&e| base.get(e).is_none()));
    debug_assert!(model.verify(g, base).map(|r| r.valid).unwrap_or(false));

    let k = base.k();
    let mut pos_of = vec![usize::MAX; g.edge_count()];
    for (pos, &e) in frontier.iter().enumerate() {
        pos_of[e] = pos;
    }
    let mut hint_rank = vec![usize::MAX; frontier.len()];
    for (rank, &e) in order_hint.iter().enumerate() {
        let pos = pos_of[e];
        if pos != usize::MAX && hint_rank[pos] == usize::MAX {
            hint_rank[pos] = rank;
        }
    }
    let mut counts = vec![vec![0u32; k as usize + 1]; frontier.len()];
    let mut forbidden = vec![0u32; frontier.len()];
    for (pos, &e) in frontier.iter().enumerate() {
        for &(f, _) in model.conflicts(e) {
            if let Some(c) = base.get(f) {
                let slot = &mut counts[pos][c as usize];
                if *slot == 0 {
                    forbidden[pos] += 1;
                }
                *slot += 1;
            }
        }
    }
    let mut search = ExtendSearch {
        model,
        frontier,
        k,
        pos_of,
        hint_rank,
        assigned: vec![None; frontier.len()],
        counts,
        forbidden,
        work: base.clone(),
    };
    if search.search() {
        Ok(search.work)
    } else {
        Err(Unextendable {
            frontier_len: frontier.len(),
            k,
        })
    }
}

/// What the peel did, step by step.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ReductionTrace {
    pub steps: Vec<ReductionKind>,
    pub escalations: usize,
}

impl ReductionTrace {
    pub fn counts(&self) -> BTreeMap<ReductionKind, usize> {
        let mut out = BTreeMap::new();
        for &k in &self.steps {
            *out.entry(k).or_insert(0) += 1;
        }
        out
    }
}

/// [`color_claw_free`] plus the trace of reduction steps taken.
pub fn color_claw_free_traced(
    g: &Graph,
    k: u32,
) -> Result<(PartialColoring, ReductionTrace), ReduceError> {
    if let Some(w) = claw_witness(g) {
        return Err(ReduceError::Precondition(PreconditionFailure::Claw(w)));
    }
    if let Some(v) = (0..g.vertex_count()).find(|&v| g.degree(v) > 4) {
        return Err(ReduceError::Precondition(PreconditionFailure::HighDegree {
            vertex: v,
            degree: g.degree(v),
        }));
    }

    let mut trace = ReductionTrace::default();

    // Peel down to an edgeless graph, remembering each level.
    let mut levels: Vec<(Graph, ReductionStep, Vec<Option<usize>>)> = Vec::new();
    let mut current = g.clone();
    while current.edge_count() > 0 {
        debug_assert!(is_claw_free(&current) && current.max_degree() <= 4);
        let step = find_reduction(&current)?;
        trace.steps.push(step.kind);
        let removed: BTreeSet<usize> = step.deleted.iter().copied().collect();
        let sub = delete_vertices(&current, &removed);
        let next = sub.graph;
        levels.push((current, step, sub.edge_map));
        current = next;
    }

    // Unwind: lift each level's coloring through the edge map and extend it
    // over the frontier.
    let mut coloring = PartialColoring::empty(current.edge_count(), k);
    for (host, step, edge_map) in levels.into_iter().rev() {
        let mut lifted = PartialColoring::empty(host.edge_count(), k);
        for (old, new) in edge_map.iter().enumerate() {
            if let Some(new) = new {
                if let Some(c) = coloring.get(*new) {
                    lifted.set(old, c);
                }
            }
        }
        let model = ConflictModel::new(&host);
        coloring = match extend(&host, &model, &lifted, &step.frontier, &step.order_hint) {
            Ok(filled) => filled,
            Err(_) if !step.escalation.is_empty() => {
                trace.escalations += 1;
                let mut wider = lifted.clone();
                for &e in &step.escalation {
                    wider.clear(e);
                }
                let mut frontier = step.frontier.clone();
                frontier.extend(step.escalation.iter().copied());
                frontier.sort_unstable();
                frontier.dedup();
                extend(&host, &model, &wider, &frontier, &step.order_hint)
                    .map_err(|_| ReduceError::InternalUnextendable { kind: step.kind })?
            }
            Err(_) => return Err(ReduceError::InternalUnextendable { kind: step.kind }),
        };
    }
    debug_assert!(coloring.is_total());
    Ok((coloring, trace))
}

/// Color a claw-free graph of maximum degree at most 4 with at most `k`
/// colors (defaulting the palette to 13 guarantees success). Inputs outside
/// the class are rejected up front.
pub fn color_claw_free(g: &Graph, k: u32) -> Result<PartialColoring, ReduceError> {
    color_claw_free_traced(g, k).map(|(coloring, _)| coloring)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conflict::{verify, ColorPalette};
    use crate::generators::{complete, line_graph, named_graph, petersen, random_claw_free_max4,
        random_subcubic, SplitMix64};
    use crate::graph::from_edge_list;

    #[test]
    fn reduction_on_path_is_deg3() {
        let p3 = named_graph("path", 3).unwrap();
        let step = find_reduction(&p3).unwrap();
        assert_eq!(step.kind, ReductionKind::Deg3);
        assert_eq!(step.deleted, vec![0]);
        assert_eq!(step.frontier, vec![0]); // the pendant edge (0,1)
        assert!(step.order_hint.is_empty());
        assert!(step.escalation.is_empty());
    }

    #[test]
    fn reduction_on_k5_is_k4_shared() {
        let k5 = complete(5);
        let step = find_reduction(&k5).unwrap();
        assert_eq!(step.kind, ReductionKind::K4Shared);
        assert_eq!(step.deleted, vec![0]);
        assert_eq!(step.frontier.len(), 4);
        assert_eq!(step.anchors[..2], [0, 1]);
    }

    #[test]
    fn reduction_on_k4_prism_is_k4_distinct() {
        // Two K4s joined by a perfect matching: 4-regular, claw-free, and
        // the first K4's outside neighbors are pairwise distinct.
        let mut pairs = Vec::new();
        for u in 0..4 {
            for v in u + 1..4 {
                pairs.push((u, v));
                pairs.push((u + 4, v + 4));
            }
        }
        for i in 0..4 {
            pairs.push((i, i + 4));
        }
        let g = from_edge_list(&pairs).unwrap();
        assert!(is_claw_free(&g));
        assert!((0..8).all(|v| g.degree(v) == 4));

        let step = find_reduction(&g).unwrap();
        assert_eq!(step.kind, ReductionKind::K4Distinct);
        assert_eq!(step.deleted, vec![0, 1, 2, 3]);
        assert_eq!(step.frontier.len(), 10);
        assert_eq!(step.order_hint.len(), 10);

        let coloring = assert_colors_within(&g, ColorPalette::DEFAULT_K);
        assert!(coloring.colors_used() <= 13);
    }

    #[test]
    fn reduction_on_octahedron_is_three_triangles() {
        let oct = named_graph("octahedron", 0).unwrap();
        let step = find_reduction(&oct).unwrap();
        assert_eq!(step.kind, ReductionKind::ThreeTriangles);
        assert_eq!(step.deleted, vec![0]);
        assert_eq!(step.frontier.len(), 4);
        // Escalation holds the edges among N(0) = {1, 2, 4, 5}.
        let expected: Vec<usize> = [(1, 2), (2, 4), (4, 5), (1, 5)]
            .iter()
            .map(|&(a, b)| oct.edge_index(a, b).unwrap())
            .collect();
        let mut expected = expected;
        expected.sort_unstable();
        assert_eq!(step.escalation, expected);
    }

    #[test]
    fn reduction_on_line_k33_is_four_cycle() {
        let g = named_graph("line-k33", 0).unwrap();
        let step = find_reduction(&g).unwrap();
        assert_eq!(step.kind, ReductionKind::FourCycle);
        assert_eq!(step.deleted.len(), 5);
        assert_eq!(step.frontier.len(), 14);
        assert_eq!(step.order_hint.len(), 14);
        // Deleted vertices cover the frontier exactly.
        let deleted: BTreeSet<usize> = step.deleted.iter().copied().collect();
        for (i, &(u, v)) in g.edges().iter().enumerate() {
            let touched = deleted.contains(&u) || deleted.contains(&v);
            assert_eq!(touched, step.frontier.contains(&i));
        }
    }

    #[test]
    fn reduction_on_line_petersen_is_final_config() {
        let g = named_graph("line-petersen", 0).unwrap();
        let step = find_reduction(&g).unwrap();
        assert_eq!(step.kind, ReductionKind::FinalConfig);
        assert_eq!(step.deleted.len(), 5);
        assert_eq!(step.frontier.len(), 14);
        assert_eq!(step.order_hint.len(), 14);
        assert_eq!(step.anchors.len(), 13);
    }

    #[test]
    fn find_reduction_rejects_empty_graph() {
        let g = from_edge_list(&[]).unwrap();
        assert_eq!(find_reduction(&g), Err(ReduceError::EmptyGraph));
    }

    #[test]
    fn find_reduction_flags_structure_outside_the_class() {
        // K_{4,4} is 4-regular with no K4 and no triangles, so it reaches
        // the two-triangle precondition and fails it (it is full of claws).
        let mut pairs = Vec::new();
        for u in 0..4 {
            for v in 4..8 {
                pairs.push((u, v));
            }
        }
        let g = from_edge_list(&pairs).unwrap();
        assert!(matches!(
            find_reduction(&g),
            Err(ReduceError::Structure(StructureViolation { .. }))
        ));
    }

    #[test]
    fn extend_colors_triangle_ascending() {
        let tri = complete(3);
        let model = ConflictModel::new(&tri);
        let base = PartialColoring::empty(3, 13);
        let result = extend(&tri, &model, &base, &[0, 1, 2], &[]).unwrap();
        assert_eq!(result.get(0), Some(1));
        assert_eq!(result.get(1), Some(2));
        assert_eq!(result.get(2), Some(3));
    }

    #[test]
    fn extend_after_k4_part_of_k5() {
        // All 10 edges of K5 see each other, so the four edges at vertex 4
        // must take four fresh colors.
        let k5 = complete(5);
        let model = ConflictModel::new(&k5);
        let mut base = PartialColoring::empty(10, 13);
        let k4_edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        for (i, &(a, b)) in k4_edges.iter().enumerate() {
            base.set(k5.edge_index(a, b).unwrap(), i as u32 + 1);
        }
        let frontier: Vec<usize> = [(0, 4), (1, 4), (2, 4), (3, 4)]
            .iter()
            .map(|&(a, b)| k5.edge_index(a, b).unwrap())
            .collect();
        let result = extend(&k5, &model, &base, &frontier, &[]).unwrap();
        let new_colors: BTreeSet<u32> = frontier.iter().map(|&e| result.get(e).unwrap()).collect();
        assert_eq!(new_colors, BTreeSet::from([7, 8, 9, 10]));
        assert!(verify(&k5, &result).unwrap().valid);
    }

    #[test]
    fn extend_fails_when_palette_too_small() {
        let tri = complete(3);
        let model = ConflictModel::new(&tri);
        let base = PartialColoring::empty(3, 2);
        let err = extend(&tri, &model, &base, &[0, 1, 2], &[]).unwrap_err();
        assert_eq!(err, Unextendable { frontier_len: 3, k: 2 });
    }

    fn assert_colors_within(g: &Graph, k: u32) -> PartialColoring {
        let coloring = color_claw_free(g, k).unwrap();
        assert!(coloring.is_total());
        let report = verify(g, &coloring).unwrap();
        assert!(report.valid, "violations: {:?}", report.violations);
        assert!(coloring.max_color().unwrap_or(0) <= k);
        coloring
    }

    #[test]
    fn colors_k4_with_six_colors() {
        let coloring = assert_colors_within(&complete(4), ColorPalette::DEFAULT_K);
        assert_eq!(coloring.colors_used(), 6);
    }

    #[test]
    fn colors_c5_with_three_colors() {
        let c5 = named_graph("cycle", 5).unwrap();
        let coloring = assert_colors_within(&c5, ColorPalette::DEFAULT_K);
        assert_eq!(coloring.colors_used(), 3);
    }

    #[test]
    fn colors_line_petersen_within_thirteen() {
        let g = named_graph("line-petersen", 0).unwrap();
        assert_colors_within(&g, ColorPalette::DEFAULT_K);
    }

    #[test]
    fn colors_octahedron_and_line_k33() {
        assert_colors_within(&named_graph("octahedron", 0).unwrap(), ColorPalette::DEFAULT_K);
        assert_colors_within(&named_graph("line-k33", 0).unwrap(), ColorPalette::DEFAULT_K);
    }

    #[test]
    fn empty_and_edgeless_inputs() {
        let empty = from_edge_list(&[]).unwrap();
        let coloring = color_claw_free(&empty, 13).unwrap();
        assert_eq!(coloring.len(), 0);

        let edgeless = Graph::new(4, &[]);
        let coloring = color_claw_free(&edgeless, 13).unwrap();
        assert_eq!(coloring.len(), 0);
    }

    #[test]
    fn rejects_claw_input() {
        let star = from_edge_list(&[(0, 1), (0, 2), (0, 3)]).unwrap();
        match color_claw_free(&star, 13) {
            Err(ReduceError::Precondition(PreconditionFailure::Claw(w))) => {
                assert_eq!(w.center, 0);
            }
            other => panic!("expected claw rejection, got {other:?}"),
        }
    }

    #[test]
    fn rejects_high_degree_input() {
        // K6 is claw-free but 5-regular.
        match color_claw_free(&complete(6), 13) {
            Err(ReduceError::Precondition(PreconditionFailure::HighDegree { degree: 5, .. })) => {}
            other => panic!("expected degree rejection, got {other:?}"),
        }
    }

    #[test]
    fn impossible_palette_reports_internal_unextendable() {
        // The octahedron needs 6 colors, so 5 must fail after the escalation
        // retry rather than loop or panic.
        let oct = named_graph("octahedron", 0).unwrap();
        match color_claw_free(&oct, 5) {
            Err(ReduceError::InternalUnextendable { .. }) => {}
            other => panic!("expected exhaustion, got {other:?}"),
        }
    }

    #[test]
    fn coloring_runs_are_deterministic() {
        let g = named_graph("line-k33", 0).unwrap();
        let a = color_claw_free(&g, 13).unwrap();
        let b = color_claw_free(&g, 13).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn line_graphs_of_subcubic_color_within_thirteen() {
        let mut rng = SplitMix64::new(11);
        for _ in 0..25 {
            let h = random_subcubic(10, rng.next());
            let g = line_graph(&h);
            assert_colors_within(&g, ColorPalette::DEFAULT_K);
        }
    }

    #[test]
    fn sampled_claw_free_graphs_color_within_thirteen() {
        let mut rng = SplitMix64::new(13);
        for _ in 0..25 {
            let g = random_claw_free_max4(14, rng.next());
            assert_colors_within(&g, ColorPalette::DEFAULT_K);
        }
    }

    #[test]
    fn trace_counts_reductions() {
        let (_, trace) = color_claw_free_traced(&line_graph(&petersen()), 13).unwrap();
        let counts = trace.counts();
        assert_eq!(counts.get(&ReductionKind::FinalConfig), Some(&1));
        assert!(trace.steps.len() >= 2);
    }

    #[test]
    fn frontier_for_matches_step() {
        let g = named_graph("line-petersen", 0).unwrap();
        let step = find_reduction(&g).unwrap();
        let (frontier, hint, escalation) = frontier_for(&g, &step);
        assert_eq!(frontier, step.frontier);
        assert_eq!(hint, step.order_hint);
        assert_eq!(escalation, step.escalation);
    }
}
