//! Shared instances for the benchmark suite.

use injcolor::{line_graph, named_graph, random_subcubic, Graph};

pub fn line_petersen() -> Graph {
    named_graph("line-petersen", 0).unwrap()
}

pub fn octahedron() -> Graph {
    named_graph("octahedron", 0).unwrap()
}

/// A mid-sized corpus-style instance: the line graph of a dense random
/// subcubic graph on 20 vertices.
pub fn corpus_instance() -> Graph {
    line_graph(&random_subcubic(20, 99))
}
