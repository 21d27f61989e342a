//! Command-line front end for the injective edge coloring toolkit.
//!
//! Exit codes: 0 success/valid, 1 usage or input errors, 2 invalid coloring
//! or failed audit, 3 precondition failure, 4 solver budget exhausted.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use injcolor::io::{
    coloring_from_doc, coloring_to_doc, parse_coloring_doc, parse_graph, render_json,
    report_to_doc, solve_to_doc, write_edge_list, GraphFormat,
};
use injcolor::{
    brute_force_solve, color_claw_free, conflict_graph, greedy_injective_coloring,
    injective_chromatic_index, line_graph, named_graph, random_claw_free_max4, random_subcubic,
    verify, Graph, PartialColoring, ReduceError, SolveResult, DEFAULT_BUDGET,
};

#[derive(Parser)]
#[command(name = "injcolor", version, about = "Injective edge coloring toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum FormatArg {
    #[default]
    #[value(name = "edgelist")]
    EdgeList,
    #[value(name = "dimacs")]
    Dimacs,
}

impl From<FormatArg> for GraphFormat {
    fn from(f: FormatArg) -> GraphFormat {
        match f {
            FormatArg::EdgeList => GraphFormat::EdgeList,
            FormatArg::Dimacs => GraphFormat::Dimacs,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    #[value(name = "line-subcubic")]
    LineSubcubic,
    #[value(name = "clawfree-max4")]
    ClawfreeMax4,
    #[value(name = "named")]
    Named,
}

#[derive(Subcommand)]
enum Command {
    /// Check a coloring document against a graph.
    Verify {
        graph: PathBuf,
        coloring: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: FormatArg,
    },
    /// Color a claw-free graph of maximum degree 4 with at most k colors.
    Color {
        graph: PathBuf,
        #[arg(long, default_value_t = 13)]
        k: u32,
        /// Fall back to first-fit on the conflict graph for inputs outside
        /// the class (no color-count guarantee).
        #[arg(long)]
        force_greedy: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: FormatArg,
    },
    /// Compute the exact injective chromatic index.
    Chi {
        graph: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Use the brute-force oracle (at most 12 edges).
        #[arg(long)]
        brute: bool,
        #[arg(long, value_enum, default_value_t)]
        format: FormatArg,
    },
    /// Emit the conflict graph in edge-list format.
    Conflicts {
        graph: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: FormatArg,
    },
    /// Generate a graph from a seeded family.
    Gen {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(short, long)]
        n: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Graph name for --family named: k4, k5, c6bar, cycle, path,
        /// octahedron, line-petersen, line-k33.
        #[arg(long)]
        name: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run the acceptance suite and print a pass/fail table.
    Audit,
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    match cli.command {
        Command::Verify { graph, coloring, format } => cmd_verify(&graph, &coloring, format.into()),
        Command::Color { graph, k, force_greedy, output, format } => {
            cmd_color(&graph, k, force_greedy, output.as_deref(), format.into())
        }
        Command::Chi { graph, budget, brute, format } => {
            cmd_chi(&graph, budget, brute, format.into())
        }
        Command::Conflicts { graph, output, format } => {
            cmd_conflicts(&graph, output.as_deref(), format.into())
        }
        Command::Gen { family, n, seed, name, output } => {
            cmd_gen(family, n, seed, name.as_deref(), output.as_deref())
        }
        Command::Audit => cmd_audit(),
    }
}

fn fail(path: &Path, err: impl std::fmt::Display) -> i32 {
    eprintln!("injcolor: {}: {err}", path.display());
    1
}

fn read_file(path: &Path) -> Result<String, i32> {
    fs::read_to_string(path).map_err(|e| fail(path, e))
}

fn load_graph(path: &Path, format: GraphFormat) -> Result<Graph, i32> {
    let text = read_file(path)?;
    parse_graph(&text, format).map_err(|e| fail(path, e))
}

fn emit(output: Option<&Path>, text: &str) -> i32 {
    match output {
        Some(path) => match fs::write(path, text) {
            Ok(()) => 0,
            Err(e) => fail(path, e),
        },
        None => {
            print!("{text}");
            0
        }
    }
}

fn cmd_verify(graph_path: &Path, coloring_path: &Path, format: GraphFormat) -> i32 {
    let g = match load_graph(graph_path, format) {
        Ok(g) => g,
        Err(code) => return code,
    };
    let text = match read_file(coloring_path) {
        Ok(t) => t,
        Err(code) => return code,
    };
    let doc = match parse_coloring_doc(&text) {
        Ok(d) => d,
        Err(e) => return fail(coloring_path, e),
    };
    let coloring = match coloring_from_doc(&g, &doc) {
        Ok(c) => c,
        Err(e) => return fail(coloring_path, e),
    };
    let report = match verify(&g, &coloring) {
        Ok(r) => r,
        Err(e) => return fail(coloring_path, e),
    };
    print!("{}", render_json(&report_to_doc(&report)));
    if report.valid {
        0
    } else {
        2
    }
}

fn with_palette(coloring: &PartialColoring, k: u32) -> PartialColoring {
    let k = k.max(coloring.max_color().unwrap_or(0)).max(1);
    let mut out = PartialColoring::empty(coloring.len(), k);
    for (e, c) in coloring.assigned() {
        out.set(e, c);
    }
    out
}

fn cmd_color(
    graph_path: &Path,
    k: u32,
    force_greedy: bool,
    output: Option<&Path>,
    format: GraphFormat,
) -> i32 {
    if k < 1 {
        eprintln!("injcolor: --k must be at least 1");
        return 1;
    }
    let g = match load_graph(graph_path, format) {
        Ok(g) => g,
        Err(code) => return code,
    };
    let coloring = match color_claw_free(&g, k) {
        Ok(c) => c,
        Err(err @ ReduceError::Precondition(_)) if force_greedy => {
            eprintln!(
                "injcolor: warning: {err}; falling back to first-fit with no bound guarantee"
            );
            with_palette(&greedy_injective_coloring(&g), k)
        }
        Err(e) => {
            eprintln!("injcolor: {}: {e}", graph_path.display());
            return 3;
        }
    };
    emit(output, &render_json(&coloring_to_doc(&g, &coloring)))
}

fn cmd_chi(graph_path: &Path, budget: u64, brute: bool, format: GraphFormat) -> i32 {
    let g = match load_graph(graph_path, format) {
        Ok(g) => g,
        Err(code) => return code,
    };
    if brute {
        let (chi, witness) = match brute_force_solve(&g) {
            Ok(r) => r,
            Err(e) => return fail(graph_path, e),
        };
        let result = SolveResult {
            chi,
            witness,
            lower_bound: chi,
            nodes_explored: 0,
            budget_exhausted: false,
        };
        print!("{}", render_json(&solve_to_doc(&g, &result)));
        return 0;
    }
    let result = injective_chromatic_index(&g, budget);
    print!("{}", render_json(&solve_to_doc(&g, &result)));
    if result.budget_exhausted {
        4
    } else {
        0
    }
}

fn cmd_conflicts(graph_path: &Path, output: Option<&Path>, format: GraphFormat) -> i32 {
    let g = match load_graph(graph_path, format) {
        Ok(g) => g,
        Err(code) => return code,
    };
    let h = conflict_graph(&g);
    let comment = format!(
        "conflict graph: {} vertices (edge indices of the source), {} conflicts",
        h.vertex_count(),
        h.edge_count()
    );
    emit(output, &write_edge_list(&h, &[comment]))
}

fn cmd_gen(
    family: FamilyArg,
    n: Option<usize>,
    seed: Option<u64>,
    name: Option<&str>,
    output: Option<&Path>,
) -> i32 {
    let require = |opt: Option<&str>| -> Result<(usize, u64), i32> {
        match (n, seed) {
            (Some(n), Some(seed)) => Ok((n, seed)),
            _ => {
                eprintln!(
                    "injcolor: --family {} requires both --n and --seed",
                    opt.unwrap_or("<family>")
                );
                Err(1)
            }
        }
    };
    let (g, manifest) = match family {
        FamilyArg::LineSubcubic => {
            let (n, seed) = match require(Some("line-subcubic")) {
                Ok(v) => v,
                Err(code) => return code,
            };
            let g = line_graph(&random_subcubic(n, seed));
            (g, format!("family=line-subcubic n={n} seed={seed}"))
        }
        FamilyArg::ClawfreeMax4 => {
            let (n, seed) = match require(Some("clawfree-max4")) {
                Ok(v) => v,
                Err(code) => return code,
            };
            let g = random_claw_free_max4(n, seed);
            (g, format!("family=clawfree-max4 n={n} seed={seed}"))
        }
        FamilyArg::Named => {
            let Some(name) = name else {
                eprintln!("injcolor: --family named requires --name");
                return 1;
            };
            match named_graph(name, n.unwrap_or(0)) {
                Ok(g) => {
                    let vertices = g.vertex_count();
                    let manifest = format!(
                        "family=named n={vertices} seed={} name={name}",
                        seed.unwrap_or(0)
                    );
                    (g, manifest)
                }
                Err(e) => {
                    eprintln!("injcolor: {e}");
                    return 1;
                }
            }
        }
    };
    emit(output, &write_edge_list(&g, &[manifest]))
}

fn cmd_audit() -> i32 {
    let report = injcolor::audit::run_audit();
    print!("{}", report.render());
    if report.all_passed() {
        0
    } else {
        2
    }
}
