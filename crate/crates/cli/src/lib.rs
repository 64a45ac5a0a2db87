//! Library behind the `lowdeg` binary. Each subcommand is an ordinary
//! function, so tests can drive the whole pipeline in-process.

use std::fmt;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use lowdeg_core::augment::StructureReport;
use lowdeg_core::elimination::EltreeReport;
use lowdeg_core::generators::GeneratorSpec;
use lowdeg_core::graph::io;
use lowdeg_core::{
    augment, check_eltree_properties, check_structure, degeneracy_ordering, elimination_forest,
    tree_to_kwalk, verify_augmentation, verify_successor, walk_to_successor, Augmentation,
    AugmentationReport, Graph, Ordering, SuccessorRelation, DEFAULT_BUDGET,
};

pub mod bench;
pub mod suite;

/// Without `--budget`, admissibility is computed exactly only up to this
/// many vertices; larger inputs get a greedy lower bound.
pub const EXACT_DEFAULT_MAX_N: usize = 12;

/// Anything wrong with the input: unreadable files, malformed graphs, bad
/// flags. Maps to exit code 2.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{context}: {source}")]
    Core {
        context: String,
        #[source]
        source: lowdeg_core::Error,
    },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn core(context: impl Into<String>) -> impl FnOnce(lowdeg_core::Error) -> CliError {
        let context = context.into();
        move |source| CliError::Core { context, source }
    }
}

/// Outcome of a command that ran to completion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// Some check failed; the report has been written.
    Failed,
}

impl From<Status> for ExitCode {
    fn from(s: Status) -> ExitCode {
        match s {
            Status::Ok => ExitCode::SUCCESS,
            Status::Failed => ExitCode::from(1),
        }
    }
}

/// Where the vertex ordering comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderingSource {
    /// One vertex per line, smallest first.
    File(PathBuf),
    Degeneracy,
    Natural,
    Random(u64),
}

impl FromStr for OrderingSource {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "degeneracy" => Ok(OrderingSource::Degeneracy),
            "natural" => Ok(OrderingSource::Natural),
            _ => {
                if let Some(path) = s.strip_prefix("file:") {
                    Ok(OrderingSource::File(path.into()))
                } else if let Some(seed) = s.strip_prefix("random:") {
                    seed.parse()
                        .map(OrderingSource::Random)
                        .map_err(|_| format!("bad seed in {s:?}"))
                } else {
                    Err(format!(
                        "unknown ordering {s:?}; expected file:PATH, degeneracy, natural or random:SEED"
                    ))
                }
            }
        }
    }
}

impl fmt::Display for OrderingSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderingSource::File(p) => write!(f, "file:{}", p.display()),
            OrderingSource::Degeneracy => f.write_str("degeneracy"),
            OrderingSource::Natural => f.write_str("natural"),
            OrderingSource::Random(seed) => write!(f, "random:{seed}"),
        }
    }
}

impl OrderingSource {
    pub fn resolve(&self, g: &Graph) -> Result<Ordering, CliError> {
        match self {
            OrderingSource::File(path) => {
                let text = read(path)?;
                io::parse_ordering(&text, g.n()).map_err(CliError::core(path.display().to_string()))
            }
            OrderingSource::Degeneracy => Ok(degeneracy_ordering(g)),
            OrderingSource::Natural => Ok(Ordering::natural(g.n())),
            OrderingSource::Random(seed) => Ok(Ordering::random(g.n(), *seed)),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "lowdeg",
    version,
    about = "Degree-3 spanning trees with bounded admissibility"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a generated graph as an edge list.
    Gen(GenArgs),
    /// Compute the degree-3 spanning tree T of a graph.
    Augment(AugmentArgs),
    /// Check T, the admissibility bound, the elimination tree and the
    /// successor relation.
    Verify(VerifyArgs),
    /// Write a successor order derived from T.
    Succ(SuccArgs),
    /// Time the construction on a graph family.
    Bench(bench::BenchArgs),
    /// Run the verification pipeline over a batch of random instances.
    Suite(suite::SuiteArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum Family {
    Grid,
    Torus,
    RandomGnm,
    RandomRegular,
    Star,
    Path,
    Clique,
    Figure1,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    pub family: Family,
    #[arg(long)]
    pub rows: Option<usize>,
    #[arg(long)]
    pub cols: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    /// Degree, for random_regular.
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Edge list (`n m` header, 0-based) or DIMACS file.
    pub graph: PathBuf,
    /// file:PATH, degeneracy, natural or random:SEED.
    #[arg(long, default_value = "degeneracy")]
    pub ordering: OrderingSource,
}

#[derive(Debug, Args)]
pub struct AugmentArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Write T here as an edge list.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, default_value_t = 1)]
    pub r: usize,
    /// Search-node budget per vertex for exact admissibility. Defaults to
    /// exact search only for graphs of at most 12 vertices.
    #[arg(long)]
    pub budget: Option<u64>,
    /// Check this edge list as T instead of computing it.
    #[arg(long)]
    pub tree: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SuccArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn run(cli: Cli) -> Result<Status, CliError> {
    match cli.command {
        Command::Gen(a) => cmd_gen(&a),
        Command::Augment(a) => cmd_augment(&a),
        Command::Verify(a) => cmd_verify(&a),
        Command::Succ(a) => cmd_succ(&a),
        Command::Bench(a) => bench::cmd_bench(&a),
        Command::Suite(a) => suite::cmd_suite(&a),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Writes to `out`, or stdout when absent.
pub(crate) fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|source| CliError::Io {
                    path: "<stdout>".into(),
                    source,
                })
        }
    }
}

pub(crate) fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialise");
    s.push('\n');
    s
}

/// Reads a graph file, reporting repaired defects on stderr.
pub fn load_graph(path: &Path) -> Result<Graph, CliError> {
    let text = read(path)?;
    let parsed = io::parse_graph(&text).map_err(CliError::core(path.display().to_string()))?;
    for w in &parsed.warnings {
        eprintln!("warning: {}: {w:?}", path.display());
    }
    Ok(parsed.graph)
}

fn need(value: Option<usize>, flag: &str, family: Family) -> Result<usize, CliError> {
    value.ok_or_else(|| {
        let name = family
            .to_possible_value()
            .map(|v| v.get_name().to_string())
            .unwrap_or_default();
        CliError::Usage(format!("{name} needs --{flag}"))
    })
}

pub fn generator_spec(a: &GenArgs) -> Result<GeneratorSpec, CliError> {
    let f = a.family;
    Ok(match f {
        Family::Grid => GeneratorSpec::Grid {
            rows: need(a.rows, "rows", f)?,
            cols: need(a.cols, "cols", f)?,
        },
        Family::Torus => GeneratorSpec::Torus {
            rows: need(a.rows, "rows", f)?,
            cols: need(a.cols, "cols", f)?,
        },
        Family::RandomGnm => GeneratorSpec::RandomGnm {
            n: need(a.n, "n", f)?,
            m: need(a.m, "m", f)?,
            seed: a.seed,
        },
        Family::RandomRegular => GeneratorSpec::RandomRegular {
            n: need(a.n, "n", f)?,
            d: need(a.d, "d", f)?,
            seed: a.seed,
        },
        Family::Star => GeneratorSpec::Star {
            n: need(a.n, "n", f)?,
        },
        Family::Path => GeneratorSpec::Path {
            n: need(a.n, "n", f)?,
        },
        Family::Clique => GeneratorSpec::Clique {
            n: need(a.n, "n", f)?,
        },
        Family::Figure1 => GeneratorSpec::Figure1,
    })
}

pub fn cmd_gen(a: &GenArgs) -> Result<Status, CliError> {
    let spec = generator_spec(a)?;
    let g = spec.generate().map_err(CliError::core(spec.family()))?;
    emit(a.out.as_deref(), &io::write_graph(&g))?;
    Ok(Status::Ok)
}

#[derive(Serialize)]
struct AugmentOutput<'a> {
    ordering: String,
    augmentation: lowdeg_core::augment::AugmentationRecord<'a>,
    structure: &'a StructureReport,
}

pub fn cmd_augment(a: &AugmentArgs) -> Result<Status, CliError> {
    let g = load_graph(&a.input.graph)?;
    let l = a.input.ordering.resolve(&g)?;
    let aug = augment(&g, &l).map_err(CliError::core("augment"))?;
    let structure = check_structure(&g, &aug);
    if let Some(out) = &a.out {
        emit(Some(out), &io::write_edge_list(g.n(), aug.f().iter()))?;
    }
    let report = AugmentOutput {
        ordering: a.input.ordering.to_string(),
        augmentation: aug.record(None),
        structure: &structure,
    };
    emit(a.report.as_deref(), &to_json(&report))?;
    Ok(if structure.is_ok() {
        Status::Ok
    } else {
        Status::Failed
    })
}

/// The budget actually used: the flag if given, otherwise exact search
/// only for small graphs.
pub fn effective_budget(n: usize, flag: Option<u64>) -> Option<u64> {
    flag.or((n <= EXACT_DEFAULT_MAX_N).then_some(DEFAULT_BUDGET))
}

/// Walks `T`, derives the successor relation and checks it. Fails when `T`
/// is not a tree of maximum degree 3, when a vertex is visited more than
/// three times, when the walk leaves `T`, or when the order is not a
/// permutation of all vertices.
pub fn successor_of(a: &Augmentation) -> Result<SuccessorRelation, String> {
    let t = a.tree();
    let walk = tree_to_kwalk(&t).map_err(|e| format!("walk: {e}"))?;
    if walk.max_visits() > 3 {
        return Err(format!("walk visits a vertex {} times", walk.max_visits()));
    }
    if let Some(w) = walk.vertices.windows(2).find(|w| !t.has_edge(w[0], w[1])) {
        return Err(format!("walk step {}-{} is not an edge of T", w[0], w[1]));
    }
    let s = walk_to_successor(&walk);
    if !verify_successor(&s, a.n()) {
        return Err("successor order is not a permutation of the vertices".into());
    }
    Ok(s)
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub graph: String,
    pub ordering: String,
    pub budget: Option<u64>,
    pub bound: AugmentationReport,
    pub elimination_tree: EltreeReport,
    pub successor_ok: bool,
    /// Empty exactly when the exit code is 0.
    pub violations: Vec<String>,
}

pub fn verify(
    g: &Graph,
    l: &Ordering,
    a: &Augmentation,
    r: usize,
    budget: Option<u64>,
) -> VerifyReport {
    let bound = verify_augmentation(g, l, a, r, budget);
    let elimination_tree = check_eltree_properties(g, l, &elimination_forest(g, l));
    let mut violations = bound.violations.clone();
    violations.extend(
        elimination_tree
            .violations
            .iter()
            .map(|v| format!("elimination tree: {v:?}")),
    );
    let successor = successor_of(a);
    let successor_ok = successor.is_ok();
    if let Err(e) = successor {
        violations.push(format!("successor: {e}"));
    }
    VerifyReport {
        graph: String::new(),
        ordering: String::new(),
        budget,
        bound,
        elimination_tree,
        successor_ok,
        violations,
    }
}

pub fn cmd_verify(a: &VerifyArgs) -> Result<Status, CliError> {
    let g = load_graph(&a.input.graph)?;
    let l = a.input.ordering.resolve(&g)?;
    let aug = match &a.tree {
        Some(path) => {
            let t = load_graph(path)?;
            if t.n() != g.n() {
                return Err(CliError::Usage(format!(
                    "{}: tree has {} vertices, graph has {}",
                    path.display(),
                    t.n(),
                    g.n()
                )));
            }
            Augmentation::from_tree_edges(&g, &l, t.edges())
                .map_err(CliError::core(path.display().to_string()))?
        }
        None => augment(&g, &l).map_err(CliError::core("augment"))?,
    };
    let budget = effective_budget(g.n(), a.budget);
    let mut report = verify(&g, &l, &aug, a.r, budget);
    report.graph = a.input.graph.display().to_string();
    report.ordering = a.input.ordering.to_string();
    emit(a.out.as_deref(), &to_json(&report))?;
    Ok(if report.violations.is_empty() {
        Status::Ok
    } else {
        Status::Failed
    })
}

pub fn cmd_succ(a: &SuccArgs) -> Result<Status, CliError> {
    let g = load_graph(&a.input.graph)?;
    let l = a.input.ordering.resolve(&g)?;
    let aug = augment(&g, &l).map_err(CliError::core("augment"))?;
    match successor_of(&aug) {
        Ok(s) => {
            emit(a.out.as_deref(), &s.to_text())?;
            Ok(Status::Ok)
        }
        Err(e) => {
            eprintln!("error: {e}");
            Ok(Status::Failed)
        }
    }
}
