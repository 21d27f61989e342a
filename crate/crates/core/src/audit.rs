//! Self-contained acceptance suite with a deterministic report.
//!
//! The suite checks exact small-instance values against two independent
//! solvers, colors a 300-instance seeded corpus (line graphs of random
//! subcubic graphs with 6..=20 vertices for seeds 1..=200, rejection-sampled
//! claw-free max-degree-4 graphs with 5..=30 vertices for seeds 201..=300)
//! within 13 colors, checks reduction-stage coverage, fuzzes the
//! conflict-model invariants against from-scratch re-derivations, and
//! cross-validates the solvers. The rendered report contains no timings or
//! other machine-dependent data, and the suite runs itself twice to prove
//! the report is byte-identical across runs.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use crate::conflict::{conflict_graph, verify, ConflictModel, PartialColoring};
use crate::generators::{
    line_graph, named_graph, random_claw_free_max4, random_subcubic, SplitMix64,
};
use crate::graph::{is_claw_free, Graph};
use crate::reducer::{color_claw_free_traced, find_reduction, ReductionKind, ReductionTrace};
use crate::solver::{brute_force_index, injective_chromatic_index, DEFAULT_BUDGET};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriterionOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub details: Vec<String>,
}

impl CriterionOutcome {
    fn new(name: &'static str) -> CriterionOutcome {
        CriterionOutcome {
            name,
            passed: true,
            details: Vec::new(),
        }
    }

    fn fail(&mut self, detail: String) {
        self.passed = false;
        self.details.push(format!("FAILED: {detail}"));
    }

    fn note(&mut self, detail: String) {
        self.details.push(detail);
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditReport {
    pub criteria: Vec<CriterionOutcome>,
}

impl AuditReport {
    pub fn all_passed(&self) -> bool {
        self.criteria.iter().all(|c| c.passed)
    }

    pub fn render(&self) -> String {
        let mut out = String::from("injective edge coloring audit\n=============================\n\n");
        out.push_str(&render_criteria(&self.criteria));
        let passed = self.criteria.iter().filter(|c| c.passed).count();
        out.push_str(&format!(
            "\nRESULT: {passed}/{} criteria passed\n",
            self.criteria.len()
        ));
        out
    }
}

fn render_criteria(criteria: &[CriterionOutcome]) -> String {
    let mut out = String::new();
    for c in criteria {
        out.push_str(&format!(
            "{}  {}\n",
            if c.passed { "PASS" } else { "FAIL" },
            c.name
        ));
        for d in &c.details {
            out.push_str(&format!("      {d}\n"));
        }
    }
    out
}

/// Run the full suite. The determinism criterion re-runs everything a second
/// time and compares the rendered outcomes byte for byte.
pub fn run_audit() -> AuditReport {
    let first = run_criteria();
    let second = run_criteria();
    let mut determinism = CriterionOutcome::new("deterministic audit report");
    if render_criteria(&first) != render_criteria(&second) {
        determinism.fail("two runs rendered different reports".into());
    } else {
        determinism.note("two full runs rendered byte-identical reports".into());
    }
    let mut criteria = first;
    criteria.push(determinism);
    AuditReport { criteria }
}

fn run_criteria() -> Vec<CriterionOutcome> {
    let c1 = small_instance_values();
    let (c2, corpus) = corpus_colorings();
    let c3 = stage_coverage(&corpus);
    let c4 = invariant_fuzzing();
    let c5 = oracle_agreement();
    let c6 = sandwich_bounds(&corpus);
    let c7 = subcubic_bound();
    vec![c1, c2, c3, c4, c5, c6, c7]
}

struct ColoredInstance {
    graph: Graph,
    colors_used: u32,
    trace: ReductionTrace,
}

fn named(name: &str) -> Graph {
    named_graph(name, 0).expect("known name")
}

// ---------------------------------------------------------------- criterion 1

fn small_instance_values() -> CriterionOutcome {
    let mut out = CriterionOutcome::new("small-instance exact values");
    let cases: Vec<(&str, Graph, u32)> = vec![
        ("triangle", named_graph("cycle", 3).unwrap(), 3),
        ("p4", named_graph("path", 4).unwrap(), 2),
        ("c4", named_graph("cycle", 4).unwrap(), 2),
        ("c5", named_graph("cycle", 5).unwrap(), 3),
        ("k4", named("k4"), 6),
        ("c6bar", named("c6bar"), 6),
        ("k5", named("k5"), 10),
        ("octahedron", named("octahedron"), 6),
    ];
    for (name, g, expected) in cases {
        let started = Instant::now();
        let brute = match brute_force_index(&g) {
            Ok(v) => v,
            Err(e) => {
                out.fail(format!("brute force on {name}: {e}"));
                continue;
            }
        };
        let solved = injective_chromatic_index(&g, DEFAULT_BUDGET);
        let elapsed = started.elapsed();
        if brute != solved.chi || solved.budget_exhausted {
            out.fail(format!(
                "solvers disagree on {name}: brute {brute}, branch-and-bound {}",
                solved.chi
            ));
        } else if brute != expected {
            out.fail(format!("{name}: expected {expected}, both solvers say {brute}"));
        } else {
            out.note(format!("chi({name}) = {brute}"));
        }
        if elapsed > Duration::from_secs(1) {
            out.fail(format!("{name} took longer than 1s"));
        }
    }
    out
}

// ---------------------------------------------------------------- criterion 2

fn corpus_instance(seed: usize) -> (String, Graph) {
    if seed <= 200 {
        let n = 6 + (seed - 1) % 15;
        let h = random_subcubic(n, seed as u64);
        (format!("line-subcubic n={n} seed={seed}"), line_graph(&h))
    } else {
        let n = 5 + (seed - 201) % 26;
        (
            format!("clawfree-max4 n={n} seed={seed}"),
            random_claw_free_max4(n, seed as u64),
        )
    }
}

fn corpus_colorings() -> (CriterionOutcome, Vec<ColoredInstance>) {
    let mut out = CriterionOutcome::new("corpus colorings stay within 13 colors");
    let mut results = Vec::with_capacity(300);
    let started = Instant::now();
    let mut max_color = 0;
    let mut escalations = 0;
    for seed in 1..=300usize {
        let (label, g) = corpus_instance(seed);
        match color_claw_free_traced(&g, 13) {
            Ok((coloring, trace)) => {
                let report = verify(&g, &coloring).unwrap();
                if !report.valid || !coloring.is_total() {
                    out.fail(format!("{label}: coloring failed verification"));
                }
                let used = coloring.max_color().unwrap_or(0);
                if used > 13 {
                    out.fail(format!("{label}: used color {used} > 13"));
                }
                max_color = max_color.max(used);
                escalations += trace.escalations;
                results.push(ColoredInstance {
                    graph: g,
                    colors_used: report.colors_used,
                    trace,
                });
            }
            Err(e) => out.fail(format!("{label}: {e}")),
        }
    }
    let elapsed = started.elapsed();
    out.note("instances = 300".into());
    out.note(format!("max color used = {max_color}"));
    out.note(format!("escalated retries = {escalations}"));
    if elapsed > Duration::from_secs(60) {
        out.fail("corpus coloring exceeded 60s".into());
    }
    (out, results)
}

// ---------------------------------------------------------------- criterion 3

fn stage_coverage(corpus: &[ColoredInstance]) -> CriterionOutcome {
    let mut out = CriterionOutcome::new("reduction stage coverage");
    let expectations: Vec<(&str, Graph, ReductionKind)> = vec![
        ("p3", named_graph("path", 3).unwrap(), ReductionKind::Deg3),
        ("k5", named("k5"), ReductionKind::K4Shared),
        ("octahedron", named("octahedron"), ReductionKind::ThreeTriangles),
        ("line-k33", named("line-k33"), ReductionKind::FourCycle),
        ("line-petersen", named("line-petersen"), ReductionKind::FinalConfig),
    ];
    let mut counts: BTreeMap<ReductionKind, usize> = BTreeMap::new();
    let mut corpus_counts: BTreeMap<ReductionKind, usize> = BTreeMap::new();
    for instance in corpus {
        for (kind, n) in instance.trace.counts() {
            *counts.entry(kind).or_insert(0) += n;
            *corpus_counts.entry(kind).or_insert(0) += n;
        }
    }
    for (name, g, expected) in expectations {
        match find_reduction(&g) {
            Ok(step) if step.kind == expected => {
                out.note(format!("find_reduction({name}) = {expected}"));
            }
            Ok(step) => out.fail(format!(
                "find_reduction({name}) = {}, expected {expected}",
                step.kind
            )),
            Err(e) => out.fail(format!("find_reduction({name}): {e}")),
        }
        // The witnesses also run end-to-end and count toward coverage.
        match color_claw_free_traced(&g, 13) {
            Ok((_, trace)) => {
                for (kind, n) in trace.counts() {
                    *counts.entry(kind).or_insert(0) += n;
                }
            }
            Err(e) => out.fail(format!("coloring witness {name}: {e}")),
        }
    }
    for kind in ReductionKind::ALL {
        let total = counts.get(&kind).copied().unwrap_or(0);
        let in_corpus = corpus_counts.get(&kind).copied().unwrap_or(0);
        out.note(format!("stage {kind}: {total} ({in_corpus} in random corpus)"));
    }
    for kind in [
        ReductionKind::Deg3,
        ReductionKind::K4Shared,
        ReductionKind::ThreeTriangles,
        ReductionKind::FourCycle,
        ReductionKind::FinalConfig,
    ] {
        if counts.get(&kind).copied().unwrap_or(0) == 0 {
            out.fail(format!("stage {kind} never fired"));
        }
    }
    out
}

// ---------------------------------------------------------------- criterion 4

fn naive_sees(g: &Graph, i: usize, j: usize) -> bool {
    let (a, b) = g.edges()[i];
    let (c, d) = g.edges()[j];
    let shared = (a == c) as u8 + (a == d) as u8 + (b == c) as u8 + (b == d) as u8;
    match shared {
        1 => {
            let x = if a == c || a == d { b } else { a };
            let y = if c == a || c == b { d } else { c };
            g.has_edge(x, y)
        }
        0 => g.has_edge(a, c) || g.has_edge(a, d) || g.has_edge(b, c) || g.has_edge(b, d),
        _ => false,
    }
}

fn random_graph(n: usize, percent: u64, rng: &mut SplitMix64) -> Graph {
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.below(100) < percent {
                pairs.push((u, v));
            }
        }
    }
    Graph::new(n, &pairs)
}

// "vu sees at most 6 edges at the vertex u" whenever u has no neighbor
// inside N(v): count the seen edges whose witness runs through u.
fn remark_bound_violated(g: &Graph) -> Option<(usize, usize)> {
    for idx in 0..g.edge_count() {
        let (a, b) = g.edges()[idx];
        for (v, u) in [(a, b), (b, a)] {
            let hypothesis = !g
                .neighbors(v)
                .iter()
                .any(|&w| w != u && g.has_edge(u, w));
            if !hypothesis {
                continue;
            }
            let mut seen_at_u = 0;
            for f in 0..g.edge_count() {
                if f == idx || !naive_sees(g, idx, f) {
                    continue;
                }
                let (c, d) = g.edges()[f];
                let touches_u = c == u || d == u;
                let touches_v = c == v || d == v;
                if touches_u || (!touches_v && (g.has_edge(u, c) || g.has_edge(u, d))) {
                    seen_at_u += 1;
                }
            }
            if seen_at_u > 6 {
                return Some((v, u));
            }
        }
    }
    None
}

fn invariant_fuzzing() -> CriterionOutcome {
    let mut out = CriterionOutcome::new("conflict-model invariant fuzzing");
    let started = Instant::now();
    let mut rng = SplitMix64::new(9_001);
    let iterations = 1000;
    for iter in 0..iterations {
        let n = 4 + rng.below(6) as usize;
        let g = random_graph(n, 20 + rng.below(50), &mut rng);
        let m = g.edge_count();
        let model = ConflictModel::new(&g);

        // Seeing relation matches the from-scratch derivation, symmetrically.
        for i in 0..m {
            for j in 0..m {
                if i == j {
                    continue;
                }
                let fast = model.conflicts(i).iter().any(|&(f, _)| f == j);
                if fast != naive_sees(&g, i, j) {
                    out.fail(format!("seeing relation mismatch at iteration {iter}"));
                }
            }
        }

        // Validity of a coloring is exactly properness on the conflict graph.
        if m <= 12 {
            let h = conflict_graph(&g);
            for i in 0..m {
                for j in i + 1..m {
                    if h.has_edge(i, j) != naive_sees(&g, i, j) {
                        out.fail(format!("conflict graph mismatch at iteration {iter}"));
                    }
                }
            }
            let kk = 1 + rng.below(4) as u32;
            let mut coloring = PartialColoring::empty(m, 13);
            for e in 0..m {
                coloring.set(e, 1 + rng.below(kk as u64) as u32);
            }
            let valid = verify(&g, &coloring).unwrap().valid;
            let proper = (0..m).all(|i| {
                (i + 1..m).all(|j| !naive_sees(&g, i, j) || coloring.get(i) != coloring.get(j))
            });
            if valid != proper {
                out.fail(format!("verifier disagrees with properness at iteration {iter}"));
            }
        }

        // Forbidden sets never exceed 3 (d(u) + d(v) - 2).
        let mut partial = PartialColoring::empty(m, 13);
        for e in 0..m {
            if rng.below(3) > 0 {
                partial.set(e, 1 + rng.below(13) as u32);
            }
        }
        for e in 0..m {
            let er = g.edge_ref(e).unwrap();
            let forbidden = crate::conflict::forbidden_set(&g, &partial, er).unwrap();
            if forbidden.len() > 3 * (g.degree(er.u) + g.degree(er.v) - 2) {
                out.fail(format!("forbidden-set bound broken at iteration {iter}"));
            }
        }

        // Line graphs are claw-free and obey the degree formula.
        let l = line_graph(&g);
        if !is_claw_free(&l) {
            out.fail(format!("line graph with a claw at iteration {iter}"));
        }
        for (idx, &(u, v)) in g.edges().iter().enumerate() {
            if l.degree(idx) != g.degree(u) + g.degree(v) - 2 {
                out.fail(format!("line-graph degree formula broken at iteration {iter}"));
            }
        }

        // The 6-edge bound on what an edge sees through an unclustered
        // endpoint, over claw-free max-degree-4 samples.
        let sample = if iter % 2 == 0 {
            line_graph(&random_subcubic(8, rng.next()))
        } else {
            random_claw_free_max4(9, rng.next())
        };
        if let Some((v, u)) = remark_bound_violated(&sample) {
            out.fail(format!(
                "edge ({v}, {u}) sees more than 6 edges at {u} at iteration {iter}"
            ));
        }

        if !out.passed {
            break;
        }
    }
    out.note(format!("iterations = {iterations}"));
    if started.elapsed() > Duration::from_secs(30) {
        out.fail("fuzzing exceeded 30s".into());
    }
    out
}

// ---------------------------------------------------------------- criterion 5

fn oracle_agreement() -> CriterionOutcome {
    let mut out = CriterionOutcome::new("solver agreement with brute force");
    let mut samples = 0;
    let mut seed = 500u64;
    while samples < 120 && seed < 5_000 {
        let g = if seed % 2 == 0 {
            random_subcubic(4 + (seed % 5) as usize, seed)
        } else {
            random_claw_free_max4(4 + (seed % 5) as usize, seed)
        };
        seed += 1;
        if g.edge_count() == 0 || g.edge_count() > 12 {
            continue;
        }
        samples += 1;
        let brute = brute_force_index(&g).unwrap();
        let solved = injective_chromatic_index(&g, DEFAULT_BUDGET);
        if solved.budget_exhausted || solved.chi != brute {
            out.fail(format!(
                "disagreement on seed {}: brute {brute}, branch-and-bound {}",
                seed - 1,
                solved.chi
            ));
            break;
        }
    }
    out.note(format!("samples = {samples}"));
    if samples < 100 {
        out.fail(format!("only {samples} usable samples"));
    }
    out
}

// ---------------------------------------------------------------- criterion 6

fn sandwich_bounds(corpus: &[ColoredInstance]) -> CriterionOutcome {
    let mut out = CriterionOutcome::new("exact index bounded by constructive colors");
    let mut max_exact = 0;
    let mut checked = 0;

    let mut check = |out: &mut CriterionOutcome, label: &str, g: &Graph, colors_used: u32| {
        let exact = injective_chromatic_index(g, DEFAULT_BUDGET);
        if exact.budget_exhausted {
            out.fail(format!("{label}: exact solve ran out of budget"));
            return;
        }
        if exact.chi > colors_used || colors_used > 13 {
            out.fail(format!(
                "{label}: exact {} vs constructive {colors_used}",
                exact.chi
            ));
        }
        max_exact = max_exact.max(exact.chi);
        checked += 1;
    };

    // Small named instances inside the class first; K5 alone witnesses a
    // maximum of at least 10.
    for name in ["k4", "k5", "c6bar", "octahedron", "line-k33"] {
        let g = named(name);
        match color_claw_free_traced(&g, 13) {
            Ok((coloring, _)) => check(&mut out, name, &g, coloring.colors_used()),
            Err(e) => out.fail(format!("{name}: {e}")),
        }
    }
    for (i, instance) in corpus.iter().enumerate() {
        if instance.graph.edge_count() > 25 {
            continue;
        }
        let label = format!("corpus seed {}", i + 1);
        check(&mut out, &label, &instance.graph, instance.colors_used);
    }

    out.note(format!("instances checked = {checked}"));
    out.note(format!("max exact index observed = {max_exact}"));
    if max_exact < 10 {
        out.fail(format!("expected a maximum of at least 10, saw {max_exact}"));
    }
    out
}

// ---------------------------------------------------------------- criterion 7

fn subcubic_bound() -> CriterionOutcome {
    let mut out = CriterionOutcome::new("claw-free subcubic bound of six");
    let mut accepted = 0;
    let mut max_seen = 0;
    let mut seed = 1_000u64;
    while accepted < 100 && seed < 60_000 {
        let n = 5 + (seed % 6) as usize;
        let h = random_subcubic(n, seed);
        seed += 1;
        let l = line_graph(&h);
        if l.edge_count() == 0 || l.max_degree() != 3 || !l.is_connected() {
            continue;
        }
        accepted += 1;
        let exact = injective_chromatic_index(&l, DEFAULT_BUDGET);
        if exact.budget_exhausted {
            out.fail(format!("seed {}: exact solve ran out of budget", seed - 1));
            break;
        }
        if exact.chi > 6 {
            out.fail(format!("seed {}: index {} exceeds 6", seed - 1, exact.chi));
            break;
        }
        max_seen = max_seen.max(exact.chi);
    }
    out.note(format!("connected claw-free subcubic samples = {accepted}"));
    out.note(format!("max index observed = {max_seen}"));
    if accepted < 100 {
        out.fail(format!("only found {accepted} qualifying samples"));
    }
    out
}
