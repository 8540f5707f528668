//! Command-line front end: parse instances, run the degree checks, the
//! decomposition pipeline and the exhaustive oracle, verify certificates,
//! and export DOT drawings.
//!
//! Exit codes: 0 success, 1 malformed input, 2 failed precondition
//! (non-triangular size, degree condition without `--best-effort`, caps),
//! 3 no decomposition / no coloring exists, 4 verification failure or a
//! failed guaranteed step (the instance is dumped for replay).

mod dot;
mod formats;

use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use formats::{
    emit_certificate, emit_instance, parse_certificate, parse_instance, CertificateFile,
    FileFormat,
};
use starforest::graph::{verify_asd, BipartiteGraph, Decomposition};
use starforest::oracle::{brute_force, random_graph, OracleQuery, PartShape, DEFAULT_EDGE_CAP};
use starforest::pipeline::{decompose_with, Options, SolverMode, SolverPath};
use starforest::reduction::{classify, reduce};
use starforest::{dominance_leq, Error as LibError, Side};

#[derive(Parser)]
#[command(
    name = "starforest",
    version,
    about = "Star-forest ascending subgraph decompositions of bipartite graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the X-degree sequence of an instance (order, sufficient and
    /// necessary conditions)
    Check(InputArgs),
    /// Left-justify an instance into its reduced form
    Reduce(InputArgs),
    /// Run the decomposition pipeline and emit a certificate
    Decompose(DecomposeArgs),
    /// Check a certificate against an instance
    Verify(VerifyArgs),
    /// Exhaustively search for a decomposition with prescribed part sizes
    Oracle(OracleArgs),
    /// Generate a seeded random instance with a prescribed degree sequence
    Gen(GenArgs),
    /// Emit Graphviz DOT, one color class per forest when a certificate is
    /// given
    ExportDot(ExportArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Instance file ('-' for standard input)
    #[arg(long)]
    input: PathBuf,
    /// Write the result here instead of standard output
    #[arg(long)]
    output: Option<PathBuf>,
    /// Instance file format
    #[arg(long, value_enum, default_value_t = FileFormat::Json)]
    format: FileFormat,
}

#[derive(Args)]
struct DecomposeArgs {
    #[command(flatten)]
    io: InputArgs,
    /// Sequential-coloring strategy
    #[arg(long, value_enum, default_value_t = SolverArg::Hybrid)]
    solver: SolverArg,
    /// On inputs failing the degree condition, fall back to the exhaustive
    /// oracle instead of rejecting
    #[arg(long)]
    best_effort: bool,
    /// Edge cap for the oracle fallback
    #[arg(long, default_value_t = DEFAULT_EDGE_CAP)]
    cap: usize,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    io: InputArgs,
    /// Certificate JSON to check
    #[arg(long)]
    certificate: PathBuf,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    io: InputArgs,
    /// Shape required of every part
    #[arg(long, value_enum, default_value_t = ShapeArg::Starforest)]
    shape: ShapeArg,
    /// Part sizes (default 1..=n for the triangular order n)
    #[arg(long, value_delimiter = ',')]
    sizes: Option<Vec<usize>>,
    /// Drop the requirement that consecutive parts embed
    #[arg(long)]
    no_ascending: bool,
    /// Edge cap for the exhaustive search
    #[arg(long, default_value_t = DEFAULT_EDGE_CAP)]
    cap: usize,
}

#[derive(Args)]
struct GenArgs {
    /// Per-vertex X-degrees, comma separated
    #[arg(long, value_delimiter = ',', required = true)]
    degrees: Vec<usize>,
    /// Number of Y-vertices
    #[arg(long)]
    m: usize,
    /// RNG seed
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FileFormat::Json)]
    format: FileFormat,
}

#[derive(Args)]
struct ExportArgs {
    #[command(flatten)]
    io: InputArgs,
    /// Optional certificate whose forests color the edges
    #[arg(long)]
    certificate: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SolverArg {
    Heuristic,
    Exact,
    Hybrid,
}

impl From<SolverArg> for SolverMode {
    fn from(s: SolverArg) -> Self {
        match s {
            SolverArg::Heuristic => SolverMode::Heuristic,
            SolverArg::Exact => SolverMode::Exact,
            SolverArg::Hybrid => SolverMode::Hybrid,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ShapeArg {
    Starforest,
    Star,
}

impl From<ShapeArg> for PartShape {
    fn from(s: ShapeArg) -> Self {
        match s {
            ShapeArg::Starforest => PartShape::StarForest,
            ShapeArg::Star => PartShape::SingleStar,
        }
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            std::process::exit(exit_code(&err));
        }
    }
}

fn exit_code(err: &anyhow::Error) -> i32 {
    match err.downcast_ref::<LibError>() {
        Some(lib) => match lib {
            LibError::InvalidGraph(_) => 1,
            LibError::NotTriangular(_)
            | LibError::SumMismatch { .. }
            | LibError::ConditionFailed { .. }
            | LibError::CapExceeded { .. }
            | LibError::Infeasible { .. }
            | LibError::InvalidQuery(_)
            | LibError::ListSizeMismatch { .. } => 2,
            LibError::Unsatisfiable
            | LibError::NoDecomposition
            | LibError::HeuristicIncomplete => 3,
            _ => 4,
        },
        None => 1,
    }
}

fn read_input(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .context("reading standard input")?;
        Ok(buf)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn write_output(path: Option<&PathBuf>, content: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, content).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{content}");
            if !content.ends_with('\n') {
                println!();
            }
            Ok(())
        }
    }
}

fn load_graph(io: &InputArgs) -> Result<BipartiteGraph> {
    parse_instance(&read_input(&io.input)?, io.format)
}

fn solver_path_name(path: SolverPath) -> &'static str {
    match path {
        SolverPath::Heuristic => "heuristic",
        SolverPath::Exact => "exact",
        SolverPath::Oracle => "oracle",
    }
}

fn run(command: Command) -> Result<i32> {
    match command {
        Command::Check(io) => {
            let g = load_graph(&io)?;
            let d = g.degree_sequence(Side::X);
            let d: Vec<usize> = d.into_iter().filter(|&v| v > 0).collect();
            let class = classify(&d)?;
            write_output(
                io.output.as_ref(),
                &serde_json::to_string_pretty(&class).expect("serializable"),
            )?;
            Ok(0)
        }
        Command::Reduce(io) => {
            let g = load_graph(&io)?;
            let red = reduce(&g);
            write_output(io.output.as_ref(), &emit_instance(red.graph(), io.format))?;
            Ok(0)
        }
        Command::Decompose(args) => {
            let g = load_graph(&args.io)?;
            let opts = Options {
                solver: args.solver.into(),
                best_effort: args.best_effort,
                oracle_cap: args.cap,
            };
            let result = match decompose_with(&g, &opts) {
                Ok(result) => result,
                Err(LibError::TheoremStress(report)) => {
                    let dump = PathBuf::from("theorem_stress.json");
                    fs::write(
                        &dump,
                        serde_json::to_string_pretty(&*report).expect("serializable"),
                    )
                    .with_context(|| format!("dumping {}", dump.display()))?;
                    eprintln!(
                        "a guaranteed step failed; instance dumped to {}",
                        dump.display()
                    );
                    return Err(LibError::TheoremStress(report).into());
                }
                Err(e) => return Err(e.into()),
            };
            let cert = CertificateFile::from_decomposition(
                &result.decomposition,
                result.report.overall(),
                solver_path_name(result.solver_path),
            );
            write_output(args.io.output.as_ref(), &emit_certificate(&cert))?;
            Ok(0)
        }
        Command::Verify(args) => {
            let g = load_graph(&args.io)?;
            let cert = parse_certificate(&read_input(&args.certificate)?)?;
            let dec = cert.into_decomposition()?;
            let report = verify_asd(&g, &dec);
            let mut text = String::new();
            for (name, finding) in [
                ("partition", &report.partition),
                ("sizes", &report.sizes),
                ("star-shape", &report.star_shape),
                ("ascending", &report.ascending),
            ] {
                if finding.pass {
                    text.push_str(&format!("{name}: pass\n"));
                } else {
                    text.push_str(&format!(
                        "{name}: FAIL (forests {:?}) {}\n",
                        finding.offending, finding.note
                    ));
                }
            }
            let overall = report.overall();
            text.push_str(&format!("overall: {}\n", if overall { "pass" } else { "FAIL" }));
            if let Some(out) = args.io.output.as_ref() {
                fs::write(out, serde_json::to_string_pretty(&report).expect("serializable"))
                    .with_context(|| format!("writing {}", out.display()))?;
            }
            print!("{text}");
            Ok(if overall { 0 } else { 4 })
        }
        Command::Oracle(args) => {
            let g = load_graph(&args.io)?;
            let sizes = match args.sizes {
                Some(sizes) => sizes,
                None => {
                    let n = starforest::triangular_order(g.edge_count())?;
                    (1..=n).collect()
                }
            };
            let query = OracleQuery {
                graph: g.clone(),
                sizes,
                shape: args.shape.into(),
                require_ascending: !args.no_ascending,
                cap: args.cap,
            };
            match brute_force(&query)? {
                Some(dec) => {
                    if !witness_satisfies(&g, &dec, &query) {
                        return Err(anyhow!(LibError::InvalidDecomposition(
                            "oracle witness failed its own recheck".into()
                        )));
                    }
                    let cert = CertificateFile::from_decomposition(&dec, true, "oracle");
                    write_output(args.io.output.as_ref(), &emit_certificate(&cert))?;
                    Ok(0)
                }
                None => {
                    eprintln!("no decomposition with the requested part sizes exists");
                    Ok(3)
                }
            }
        }
        Command::Gen(args) => {
            let g = random_graph(&args.degrees, args.m, args.seed)?;
            write_output(args.output.as_ref(), &emit_instance(&g, args.format))?;
            Ok(0)
        }
        Command::ExportDot(args) => {
            let g = load_graph(&args.io)?;
            let dec = match &args.certificate {
                Some(path) => Some(parse_certificate(&read_input(path)?)?.into_decomposition()?),
                None => None,
            };
            write_output(args.io.output.as_ref(), &dot::export(&g, dec.as_ref()))?;
            Ok(0)
        }
    }
}

/// Re-check an oracle witness against its query: exact partition, part
/// shapes, declared sizes, and the chain when requested.
fn witness_satisfies(g: &BipartiteGraph, dec: &Decomposition, query: &OracleQuery) -> bool {
    let sizes: Vec<usize> = dec.forests().iter().map(|f| f.edge_count()).collect();
    if sizes != query.sizes {
        return false;
    }
    let mut seen = std::collections::BTreeSet::new();
    for forest in dec.forests() {
        let star_ok = match query.shape {
            PartShape::StarForest => forest.is_star_forest(),
            PartShape::SingleStar => {
                let centers: std::collections::BTreeSet<usize> =
                    forest.edges().map(|(x, _)| x).collect();
                forest.is_star_forest() && centers.len() <= 1
            }
        };
        if !star_ok {
            return false;
        }
        for (x, y) in forest.edges() {
            if !g.has_edge(x, y) || !seen.insert((x, y)) {
                return false;
            }
        }
    }
    if seen.len() != g.edge_count() {
        return false;
    }
    if query.require_ascending {
        let k = g.x_count();
        for pair in dec.forests().windows(2) {
            if !dominance_leq(&pair[0].center_degrees(k), &pair[1].center_degrees(k)) {
                return false;
            }
        }
    }
    true
}
