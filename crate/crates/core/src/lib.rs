//! Injective edge coloring toolkit.
//!
//! An injective edge coloring assigns colors to the edges of a graph so that
//! any two edges that *see* each other receive distinct colors. Two edges see
//! each other when they lie in a common triangle, or when they are disjoint
//! and some edge of the graph joins an endpoint of one to an endpoint of the
//! other (line-graph distance exactly two). Adjacent edges that do not span a
//! triangle are free to share a color.
//!
//! The crate provides:
//!
//! * [`graph`] — a simple undirected graph with canonical edge indices and the
//!   structural queries the coloring algorithms rely on (claw detection, K4
//!   and 4-cycle search, induced subgraphs with edge tracking).
//! * [`conflict`] — the seeing relation, forbidden/available color sets, the
//!   derived conflict graph, and the coloring verifier.
//! * [`reducer`] — a constructive colorer that is guaranteed to use at most 13
//!   colors on claw-free graphs of maximum degree at most 4.
//! * [`solver`] — an exact branch-and-bound solver for the injective chromatic
//!   index, plus a brute-force oracle for small instances.
//! * [`generators`] — deterministic, seeded generators for the graph families
//!   of interest (line graphs of subcubic graphs, claw-free rejection
//!   sampling, and a handful of named graphs).
//! * [`io`] — the edge-list and DIMACS text formats plus the JSON documents
//!   for colorings, verification reports, and solver results.
//! * [`audit`] — a self-contained acceptance suite with a deterministic
//!   report, exposed through the CLI as `injcolor audit`.

pub mod audit;
pub mod conflict;
pub mod generators;
pub mod graph;
pub mod io;
pub mod reducer;
pub mod solver;

pub use audit::{run_audit, AuditReport, CriterionOutcome};
pub use conflict::{
    available_set, conflict_graph, forbidden_set, incident_colors, sees, verify, ColorPalette,
    ConflictError, ConflictModel, ConflictReport, PartialColoring, Reason, Violation,
};
pub use generators::{
    line_graph, named_graph, random_claw_free_max4, random_subcubic, GenError, SplitMix64,
};
pub use graph::{
    claw_witness, delete_vertices, find_four_cycle, find_k4, from_edge_list,
    incident_triangle_count, is_claw_free, triangle_apexes, ClawWitness, EdgeRef, Graph,
    GraphError, InducedSubgraph,
};
pub use reducer::{
    color_claw_free, color_claw_free_traced, extend, find_reduction, frontier_for,
    PreconditionFailure, ReduceError, ReductionKind, ReductionStep, ReductionTrace,
    StructureViolation, Unextendable,
};
pub use solver::{
    brute_force_index, brute_force_solve, chromatic_number_bb, first_fit_coloring,
    greedy_injective_coloring, injective_chromatic_index, ChromaticResult, SolveError,
    SolveResult, DEFAULT_BUDGET,
};
