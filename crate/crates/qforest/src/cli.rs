//! Command-line surface: load graph, partition and forest documents, run the
//! splitting machinery, emit JSON or DOT.
//!
//! Exit codes: 0 on success, 2 when the graph is not divisible by the given
//! partition, 1 on usage, parse or verification errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::{BlockFailure, Error, Result};
use crate::forests::{self, PrincipalMode};
use crate::io::{self, AnyGraph};
use crate::minima::DEFAULT_TOLERANCE;
use crate::oracle::EnumerationBudget;
use crate::partition::Partition;
use crate::split;
use crate::verify;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_NOT_DIVISIBLE: i32 = 2;

#[derive(Parser)]
#[command(
    name = "qforest",
    version,
    about = "Tree-based splitting of weighted graphs by a vertex partition"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Any,
    Minimal,
}

#[derive(Subcommand)]
enum Command {
    /// Quotient of a graph by a partition, weights from tree minima
    Split {
        #[arg(long, value_name = "PATH")]
        graph: PathBuf,
        #[arg(long, value_name = "PATH")]
        partition: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tolerance: f64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Include the minima and witness trees behind every quotient arc
        #[arg(long)]
        provenance: bool,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Can every block carry a spanning entering tree?
    Divisible {
        #[arg(long, value_name = "PATH")]
        graph: PathBuf,
        #[arg(long, value_name = "PATH")]
        partition: PathBuf,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Drop every arc that no minimal block or cross tree uses
    Lightweight {
        #[arg(long, value_name = "PATH")]
        graph: PathBuf,
        #[arg(long, value_name = "PATH")]
        partition: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tolerance: f64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// The quotient forest matching a divisible forest's own splitting
    Representative {
        #[arg(long, value_name = "PATH")]
        graph: PathBuf,
        #[arg(long, value_name = "PATH")]
        partition: PathBuf,
        /// Forest document {"succ": {vertex: target|null}}
        #[arg(long, value_name = "PATH")]
        forest: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tolerance: f64,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// A vertex-level forest projecting onto a quotient forest
    Principal {
        #[arg(long, value_name = "PATH")]
        graph: PathBuf,
        #[arg(long, value_name = "PATH")]
        partition: PathBuf,
        /// Block forest document; keys are block labels or indices
        #[arg(long, value_name = "PATH")]
        forest: PathBuf,
        #[arg(long, value_enum, default_value = "minimal")]
        mode: Mode,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tolerance: f64,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Atoms of the algebra generated by minimal k-forest trees
    Atoms {
        #[arg(long, value_name = "PATH")]
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, value_name = "INT")]
        budget: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tolerance: f64,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Minimum k-forest weights for every k, with the convexity verdicts
    Phi {
        #[arg(long, value_name = "PATH")]
        graph: PathBuf,
        #[arg(long, value_name = "INT")]
        budget: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tolerance: f64,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Run the oracle suite against this instance; nonzero exit on violations
    Verify {
        #[arg(long, value_name = "PATH")]
        graph: PathBuf,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, value_name = "INT")]
        budget: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tolerance: f64,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    EXIT_OK
                }
                _ => EXIT_ERROR,
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(Error::NotDivisible(_)) => EXIT_NOT_DIVISIBLE,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}

fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path)
        .map_err(|e| Error::MalformedDocument(format!("cannot read {}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<AnyGraph> {
    io::parse_graph(&read_file(path)?)
}

fn load_partition(path: &Path, graph: &AnyGraph) -> Result<Partition> {
    io::parse_partition(&read_file(path)?, graph)
}

/// Writes atomically when a path is given: temp file in the same directory,
/// then rename over the target.
fn write_output(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => {
            let dir = match path.parent() {
                Some(p) if !p.as_os_str().is_empty() => p,
                _ => Path::new("."),
            };
            let fail = |e: std::io::Error| {
                Error::MalformedDocument(format!("cannot write {}: {e}", path.display()))
            };
            let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(fail)?;
            tmp.write_all(text.as_bytes()).map_err(fail)?;
            tmp.persist(path)
                .map_err(|e| fail(e.error))?;
            Ok(())
        }
    }
}

fn json_text(value: &Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("serializable value");
    text.push('\n');
    text
}

fn resolve_budget(flag: Option<usize>) -> EnumerationBudget {
    let limit = flag
        .or_else(|| std::env::var("QF_BUDGET").ok().and_then(|s| s.parse().ok()))
        .unwrap_or(9);
    EnumerationBudget::with_max_vertices(limit)
}

fn not_divisible_message(
    failures: &[BlockFailure],
    partition: &Partition,
    labels: &[String],
) -> String {
    let mut msg = String::from("graph is not tree-divisible by the partition:");
    for f in failures {
        msg.push_str(&format!(
            "\n  block {}: {}",
            split::block_label(labels, partition.block(f.block)),
            f.defect
        ));
    }
    msg
}

/// Digraph view for subcommands defined on digraphs; reports whether a view
/// was taken so outputs can say so.
fn as_digraph(graph: &AnyGraph) -> (crate::graph::WeightedDigraph, bool) {
    match graph {
        AnyGraph::Directed(g) => (g.clone(), false),
        AnyGraph::Undirected(g) => (split::digraph_view(g), true),
    }
}

fn dispatch(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Split { graph, partition, tolerance, format, provenance, out } => {
            let g = load_graph(&graph)?;
            let p = load_partition(&partition, &g)?;
            let text = match &g {
                AnyGraph::Directed(d) => {
                    let quotient = match split::split_digraph(d, &p, tolerance) {
                        Err(Error::NotDivisible(failures)) => {
                            eprintln!(
                                "error: {}",
                                not_divisible_message(&failures, &p, d.labels())
                            );
                            return Ok(EXIT_NOT_DIVISIBLE);
                        }
                        other => other?,
                    };
                    match format {
                        Format::Json => json_text(&io::split_digraph_to_json(
                            &quotient,
                            d.labels(),
                            tolerance,
                            provenance,
                        )),
                        Format::Dot => io::split_digraph_to_dot(&quotient),
                    }
                }
                AnyGraph::Undirected(u) => {
                    let quotient = match split::split_undirected(u, &p) {
                        Err(Error::NotDivisible(failures)) => {
                            eprintln!(
                                "error: {}",
                                not_divisible_message(&failures, &p, u.labels())
                            );
                            return Ok(EXIT_NOT_DIVISIBLE);
                        }
                        other => other?,
                    };
                    match format {
                        Format::Json => {
                            json_text(&io::split_graph_to_json(&quotient, u.labels(), tolerance))
                        }
                        Format::Dot => io::split_graph_to_dot(&quotient),
                    }
                }
            };
            write_output(&out, &text)?;
            Ok(EXIT_OK)
        }
        Command::Divisible { graph, partition, out } => {
            let g = load_graph(&graph)?;
            let p = load_partition(&partition, &g)?;
            let (failures, labels): (Vec<BlockFailure>, &[String]) = match &g {
                AnyGraph::Directed(d) => {
                    (split::is_tree_divisible(d, &p).failures, d.labels())
                }
                AnyGraph::Undirected(u) => {
                    let mut failures = Vec::new();
                    for (b, block) in p.blocks().iter().enumerate() {
                        if !u.is_connected_within(block)? {
                            failures.push(BlockFailure {
                                block: b,
                                defect: crate::error::BlockDefect::Disconnected,
                            });
                        }
                    }
                    (failures, u.labels())
                }
            };
            let divisible = failures.is_empty();
            let report = json!({
                "divisible": divisible,
                "failures": failures.iter().map(|f| json!({
                    "block": split::block_label(labels, p.block(f.block)),
                    "members": p.block(f.block).iter().map(|&v| labels[v].clone()).collect::<Vec<_>>(),
                    "defect": f.defect.to_string(),
                })).collect::<Vec<_>>(),
            });
            write_output(&out, &json_text(&report))?;
            Ok(if divisible { EXIT_OK } else { EXIT_NOT_DIVISIBLE })
        }
        Command::Lightweight { graph, partition, tolerance, format, out } => {
            let g = load_graph(&graph)?;
            let AnyGraph::Directed(d) = &g else {
                return Err(Error::DirectedOnly);
            };
            let p = load_partition(&partition, &g)?;
            let light = match split::lightweight_graph(d, &p, tolerance) {
                Err(Error::NotDivisible(failures)) => {
                    eprintln!("error: {}", not_divisible_message(&failures, &p, d.labels()));
                    return Ok(EXIT_NOT_DIVISIBLE);
                }
                other => other?,
            };
            let text = match format {
                Format::Json => json_text(&io::digraph_to_json(&light, tolerance)),
                Format::Dot => io::digraph_to_dot(&light),
            };
            write_output(&out, &text)?;
            Ok(EXIT_OK)
        }
        Command::Representative { graph, partition, forest, tolerance, out } => {
            let g = load_graph(&graph)?;
            let p = load_partition(&partition, &g)?;
            let f = io::parse_forest(&read_file(&forest)?, &g)?;
            let (d, viewed) = as_digraph(&g);
            let quotient = split::split_digraph(&d, &p, tolerance)?;
            let repr = forests::representative(&quotient, &f)?;
            let arcs: Vec<Value> = repr
                .arcs()
                .map(|(from, to)| {
                    json!({
                        "from": quotient.block_labels()[from],
                        "to": quotient.block_labels()[to],
                        "w": io::weight_to_json(quotient.arc_weight(from, to).unwrap(), tolerance),
                    })
                })
                .collect();
            let report = json!({
                "succ": io::forest_to_json(&repr, quotient.block_labels())["succ"],
                "arcs": arcs,
                "weight": io::weight_to_json(quotient.forest_weight(&repr)?, tolerance),
                "viewed_as_digraph": viewed,
            });
            write_output(&out, &json_text(&report))?;
            Ok(EXIT_OK)
        }
        Command::Principal { graph, partition, forest, mode, tolerance, out } => {
            let g = load_graph(&graph)?;
            let p = load_partition(&partition, &g)?;
            let (d, viewed) = as_digraph(&g);
            let block_labels: Vec<String> = p
                .blocks()
                .iter()
                .map(|b| split::block_label(d.labels(), b))
                .collect();
            let block_forest = io::parse_block_forest(&read_file(&forest)?, &block_labels)?;
            let mode = match mode {
                Mode::Any => PrincipalMode::Any,
                Mode::Minimal => PrincipalMode::Minimal,
            };
            let pair = forests::principal(&d, &p, &block_forest, mode, tolerance)?;
            let report = json!({
                "succ": io::forest_to_json(&pair.forest, d.labels())["succ"],
                "weight": io::weight_to_json(pair.forest.weight_in(&d)?, tolerance),
                "is_principal": pair.is_principal,
                "is_minimal_principal": pair.is_minimal_principal,
                "viewed_as_digraph": viewed,
            });
            write_output(&out, &json_text(&report))?;
            Ok(EXIT_OK)
        }
        Command::Atoms { graph, k, budget, tolerance, out } => {
            let g = load_graph(&graph)?;
            let (d, viewed) = as_digraph(&g);
            let family = forests::atoms(&d, k, &resolve_budget(budget), tolerance)?;
            let atoms: Vec<Value> = family
                .atoms
                .blocks()
                .iter()
                .zip(&family.labeled)
                .map(|(block, &labeled)| {
                    let mut names: Vec<&str> =
                        block.iter().map(|&v| d.label(v)).collect();
                    names.sort_unstable();
                    json!({ "vertices": names, "labeled": labeled })
                })
                .collect();
            let report = json!({
                "k": k,
                "atoms": atoms,
                "viewed_as_digraph": viewed,
            });
            write_output(&out, &json_text(&report))?;
            Ok(EXIT_OK)
        }
        Command::Phi { graph, budget, tolerance, out } => {
            let g = load_graph(&graph)?;
            let (d, viewed) = as_digraph(&g);
            let report = forests::check_convexity(&d, &resolve_budget(budget))?;
            let profile: Vec<Value> = report
                .profile
                .iter()
                .map(|e| match e.value() {
                    Some(v) => io::weight_to_json(v, tolerance),
                    None => Value::Null,
                })
                .collect();
            let convexity: Vec<Value> = report
                .verdicts
                .iter()
                .enumerate()
                .map(|(i, &holds)| json!({ "k": i + 1, "holds": holds }))
                .collect();
            let text = json_text(&json!({
                "phi": profile,
                "convexity": convexity,
                "has_spanning_tree": report.has_spanning_tree,
                "all_hold": report.all_hold,
                "viewed_as_digraph": viewed,
            }));
            write_output(&out, &text)?;
            Ok(EXIT_OK)
        }
        Command::Verify { graph, seed, budget, tolerance, out } => {
            let g = load_graph(&graph)?;
            let budget = resolve_budget(budget);
            let report = verify::verify(&g, seed, budget.max_vertices, tolerance)?;
            write_output(&out, &json_text(&report.to_json()))?;
            if report.violation_count() == 0 {
                Ok(EXIT_OK)
            } else {
                eprintln!("error: verification found {} violation(s)", report.violation_count());
                Ok(EXIT_ERROR)
            }
        }
    }
}
