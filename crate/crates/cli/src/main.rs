mod format;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use mconvex::chordal::{clique_separator_graph, is_chordal};
use mconvex::convexity::brute_force_opt;
use mconvex::error::Error as CoreError;
use mconvex::gen::{generate, GenSpec, GraphKind};
use mconvex::graph::{VertexSet, WeightedGraph};
use mconvex::poset::rooted_poset;
use mconvex::solver::{extend, solve_rooted, solve_with, SolveOptions};

/// Maximum-weight monophonically convex vertex sets in chordal graphs.
#[derive(Parser)]
#[command(name = "mconvex", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve for a maximum-weight convex set (optionally rooted at a clique)
    Solve {
        file: PathBuf,
        /// Comma-separated 1-indexed vertices of a maximal clique K; solves
        /// the d_K-rooted problem instead of the global one
        #[arg(long)]
        root_clique: Option<String>,
        /// Write JSON-lines trace of labelings and collapses ("-" = stderr)
        #[arg(long)]
        trace: Option<String>,
        /// Parallelize the per-root-clique loop
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, default_value_t = 0)]
        scale: u32,
        /// Reject non-chordal inputs immediately after parsing
        #[arg(long)]
        require_chordal: bool,
    },
    /// Report whether the instance is chordal
    Check {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        scale: u32,
    },
    /// Dump the clique-separator graph
    Csg {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = DumpFormat::Dot)]
        format: DumpFormat,
        #[arg(long, default_value_t = 0)]
        scale: u32,
        #[arg(long)]
        require_chordal: bool,
    },
    /// Dump the Hasse diagram of the K-rooted poset in DOT
    Poset {
        file: PathBuf,
        /// Comma-separated 1-indexed vertices of a maximal clique K
        #[arg(long)]
        clique: String,
        #[arg(long, default_value_t = 0)]
        scale: u32,
    },
    /// Brute-force optimum by exhaustive convexity checking (size-guarded)
    Oracle {
        file: PathBuf,
        /// Comma-separated 1-indexed vertices that must be in the solution
        #[arg(long)]
        required: Option<String>,
        #[arg(long, default_value_t = 0)]
        scale: u32,
    },
    /// Generate a seeded chordal instance
    Gen {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        n: usize,
        /// Clique size parameter for k-trees
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// Attachment density for random-chordal and split-like kinds
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = -10)]
        weight_min: i64,
        #[arg(long, default_value_t = 10)]
        weight_max: i64,
        /// Output path (stdout when omitted)
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Generate an instance and time an end-to-end solve
    Bench {
        #[arg(long, value_enum, default_value_t = KindArg::RandomChordal)]
        kind: KindArg,
        #[arg(long, default_value_t = 100)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum DumpFormat {
    Dot,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KindArg {
    Ktree,
    RandomChordal,
    SplitLike,
    Tree,
}

impl KindArg {
    fn to_kind(self, k: usize, density: f64) -> GraphKind {
        match self {
            KindArg::Ktree => GraphKind::KTree { k },
            KindArg::RandomChordal => GraphKind::RandomChordal { density },
            KindArg::SplitLike => GraphKind::SplitLike { density },
            KindArg::Tree => GraphKind::Tree,
        }
    }
}

/// Exit codes: 0 ok, 1 parse, 2 precondition/input, 3 size guard.
enum CliError {
    Parse(String),
    Input(String),
    SizeGuard(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 1,
            CliError::Input(_) => 2,
            CliError::SizeGuard(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Parse(m) | CliError::Input(m) | CliError::SizeGuard(m) => m,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::SizeGuard { .. } => CliError::SizeGuard(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<format::ParseError> for CliError {
    fn from(e: format::ParseError) -> Self {
        CliError::Parse(e.to_string())
    }
}

#[derive(Serialize)]
struct SolveOutput {
    weight: i64,
    vertices: Vec<u32>,
    root: Option<Vec<u32>>,
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli.command) {
        eprintln!("error: {}", e.message());
        std::process::exit(e.exit_code());
    }
}

fn load(file: &PathBuf, scale: u32) -> Result<WeightedGraph, CliError> {
    let text = fs::read_to_string(file)
        .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", file.display())))?;
    Ok(format::parse(&text, scale)?)
}

fn parse_clique(spec: &str) -> Result<VertexSet, CliError> {
    let mut ids = Vec::new();
    for part in spec.split(',') {
        let v: u32 = part
            .trim()
            .parse()
            .map_err(|_| CliError::Input(format!("invalid vertex id {part:?}")))?;
        if v == 0 {
            return Err(CliError::Input("vertex ids are 1-indexed".into()));
        }
        ids.push(v - 1);
    }
    Ok(VertexSet::from_iter(ids))
}

fn one_indexed(s: &VertexSet) -> Vec<u32> {
    s.iter().map(|v| v + 1).collect()
}

fn print_json(out: &SolveOutput) {
    println!("{}", serde_json::to_string(out).expect("serializable output"));
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Solve { file, root_clique, trace, jobs, scale, require_chordal } => {
            let g = load(&file, scale)?;
            if require_chordal && !is_chordal(&g) {
                return Err(CliError::Input("graph is not chordal".into()));
            }
            let output = match root_clique {
                Some(spec) => {
                    let k = parse_clique(&spec)?;
                    let ext = extend(&g)?;
                    let labels = mconvex::solver::label_arcs(&ext)?;
                    let sol = solve_rooted(&ext, &k, &labels)?;
                    SolveOutput {
                        weight: sol.weight,
                        vertices: one_indexed(&ext.strip_dummies(&sol.vertices)),
                        root: Some(one_indexed(&k)),
                    }
                }
                None => {
                    let report =
                        solve_with(&g, SolveOptions { jobs, trace: trace.is_some() })?;
                    if let Some(dest) = trace {
                        let mut lines = String::new();
                        for mut event in report.trace {
                            event.map_ids(|v| v + 1);
                            lines.push_str(&serde_json::to_string(&event).unwrap());
                            lines.push('\n');
                        }
                        if dest == "-" {
                            eprint!("{lines}");
                        } else {
                            fs::write(&dest, lines).map_err(|e| {
                                CliError::Input(format!("cannot write {dest}: {e}"))
                            })?;
                        }
                    }
                    SolveOutput {
                        weight: report.solution.weight,
                        vertices: one_indexed(&report.solution.vertices),
                        root: report.solution.rooted_at.as_ref().map(one_indexed),
                    }
                }
            };
            print_json(&output);
            Ok(())
        }
        Command::Check { file, scale } => {
            let g = load(&file, scale)?;
            if is_chordal(&g) {
                println!("chordal");
                Ok(())
            } else {
                println!("not chordal");
                Err(CliError::Input("graph is not chordal".into()))
            }
        }
        Command::Csg { file, format: fmt, scale, require_chordal } => {
            let g = load(&file, scale)?;
            if require_chordal && !is_chordal(&g) {
                return Err(CliError::Input("graph is not chordal".into()));
            }
            let csg = clique_separator_graph(&g)?;
            match fmt {
                DumpFormat::Dot => print!("{}", csg.to_dot(|v| (v + 1).to_string())),
                DumpFormat::Json => {
                    println!("{}", csg.to_json(|v| serde_json::json!(v + 1)))
                }
            }
            Ok(())
        }
        Command::Poset { file, clique, scale } => {
            let g = load(&file, scale)?;
            let k = parse_clique(&clique)?;
            let ext = extend(&g)?;
            let poset = rooted_poset(&ext, &k)?;
            let label = |v: u32| match ext.clique_of_dummy(v) {
                Some(i) => {
                    let members: Vec<String> =
                        ext.cliques()[i].iter().map(|x| (x + 1).to_string()).collect();
                    format!("d{{{}}}", members.join(","))
                }
                None => (v + 1).to_string(),
            };
            println!("digraph poset {{");
            println!("  rankdir=BT;");
            for v in 0..poset.len() as u32 {
                println!("  v{} [label=\"{}\"];", v, label(v));
            }
            for (u, v) in poset.covers() {
                println!("  v{u} -> v{v};");
            }
            println!("}}");
            Ok(())
        }
        Command::Oracle { file, required, scale } => {
            let g = load(&file, scale)?;
            let required = match required {
                Some(spec) => parse_clique(&spec)?,
                None => VertexSet::new(),
            };
            let witness = brute_force_opt(&g, &required)?;
            print_json(&SolveOutput {
                weight: witness.weight,
                vertices: one_indexed(&witness.set),
                root: None,
            });
            Ok(())
        }
        Command::Gen { kind, n, k, density, seed, weight_min, weight_max, out } => {
            let spec = GenSpec {
                kind: kind.to_kind(k, density),
                n,
                weight_range: (weight_min, weight_max),
                seed,
            };
            let g = generate(&spec)?;
            let text = format::serialize(&g);
            match out {
                Some(path) => fs::write(&path, text)
                    .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?,
                None => {
                    print!("{text}");
                    std::io::stdout().flush().ok();
                }
            }
            Ok(())
        }
        Command::Bench { kind, n, k, density, seed, jobs } => {
            let spec = GenSpec {
                kind: kind.to_kind(k, density),
                n,
                weight_range: (-10, 10),
                seed,
            };
            let g = generate(&spec)?;
            let start = Instant::now();
            let report = solve_with(&g, SolveOptions { jobs, trace: false })?;
            let elapsed = start.elapsed();
            println!(
                "{}",
                serde_json::json!({
                    "n": n,
                    "edges": g.edge_count(),
                    "weight": report.solution.weight,
                    "millis": elapsed.as_millis() as u64,
                    "collapses": report.stats.collapses,
                    "picard_calls": report.stats.picard_calls,
                })
            );
            Ok(())
        }
    }
}
