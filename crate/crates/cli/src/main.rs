use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use turan_planar::blocks::{decompose, refine_pseudofaces, BlockMode};
use turan_planar::fixtures::{fixture_file_name, FIXTURES};
use turan_planar::io::{
    to_json, write_report, BoundReport, DecomposeReport, ErrorBody, ErrorReport, Report, ReportFormat, SaturateReport,
    SearchReport, REPORT_SCHEMA_VERSION,
};
use turan_planar::search::{extremal_search, random_plane_graph, ConstraintSet, SearchOptions, DEFAULT_CEILING};
use turan_planar::theorems::{
    bound_for_counts, check_bound, derive_global_bound, get_profile, saturate_six_faces, verify, GraphCounts,
    ProfileId,
};
use turan_planar::{build_ledger, parse_graph, serialize_graph, Error, PlaneGraph};

#[derive(Parser)]
#[command(name = "turan-planar", version, about = "Block-contribution checks for planar Turán bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, default_value = "text", value_parser = parse_format)]
    format: ReportFormat,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

fn parse_format(s: &str) -> Result<ReportFormat, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Subcommand)]
enum Command {
    /// Block decomposition and exterior pseudofaces.
    Decompose(ModeArgs),
    /// Contribution table of every block.
    Ledger(ModeArgs),
    /// Hypotheses, per-block inequalities and the global bound.
    Verify {
        input: PathBuf,
        #[arg(long)]
        theorem: ProfileId,
        /// Evaluate the blocks even when a hypothesis fails.
        #[arg(long)]
        force: bool,
    },
    /// Print a profile's edge bound, optionally evaluated on a graph or on counts.
    Bound {
        input: Option<PathBuf>,
        #[arg(long)]
        theorem: ProfileId,
        #[arg(long, conflicts_with = "input")]
        n: Option<usize>,
        #[arg(long, default_value_t = 0, requires = "n")]
        e: usize,
        #[arg(long, default_value_t = 0, requires = "n")]
        k: usize,
        #[arg(long, default_value_t = 0, requires = "n")]
        e23: usize,
    },
    /// Split every bounded 6-face by a chord and write the resulting graph.
    Saturate { input: PathBuf },
    /// Exhaustive extremal search, or one random graph with --seed.
    Search(SearchArgs),
    /// Write the built-in fixture graphs into a directory.
    Fixtures { dir: PathBuf },
}

#[derive(Args)]
struct ModeArgs {
    input: PathBuf,
    #[arg(long, default_value = "triangular", value_parser = parse_mode)]
    mode: BlockMode,
}

fn parse_mode(s: &str) -> Result<BlockMode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Args)]
struct SearchArgs {
    /// Number of vertices.
    #[arg(long)]
    n: usize,
    /// Comma-separated constraints, e.g. `c6-free,bipartite,min-degree=3`.
    #[arg(long, default_value = "")]
    constraints: String,
    /// Start from a profile's hypotheses; --constraints adds to them.
    #[arg(long)]
    theorem: Option<ProfileId>,
    /// Largest n the search will attempt.
    #[arg(long, env = "TURAN_PLANAR_CEILING", default_value_t = DEFAULT_CEILING)]
    ceiling: usize,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Generate one random plane graph with this seed instead of searching.
    #[arg(long)]
    seed: Option<u64>,
    /// Maximum number of witnesses in the report.
    #[arg(long, default_value_t = 16)]
    witnesses: usize,
}

/// A failure with its exit code and machine-readable code.
struct Failure {
    exit: u8,
    code: String,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let exit = match e {
            Error::HypothesisViolated(_) | Error::UnexpectedBlock { .. } => 1,
            Error::ConservationViolation(_) | Error::Internal(_) => 3,
            _ => 2,
        };
        Failure { exit, code: e.code().into(), message: e.to_string() }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure { exit: 2, code: "IoError".into(), message: format!("{}: {e}", path.display()) }
}

/// Report text and exit code of a completed command.
struct Output {
    text: String,
    exit: u8,
}

impl Output {
    fn ok(text: String) -> Output {
        Output { text, exit: 0 }
    }
}

fn read_graph(path: &Path) -> Result<PlaneGraph, Failure> {
    let text = fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
    Ok(parse_graph(&text)?)
}

fn run(cmd: &Command, format: ReportFormat) -> Result<Output, Failure> {
    let json = format == ReportFormat::Json;
    match cmd {
        Command::Decompose(a) => {
            let g = read_graph(&a.input)?;
            let d = decompose(&g, a.mode);
            let pf = (a.mode == BlockMode::Triangular).then(|| refine_pseudofaces(&d, &g));
            let r = DecomposeReport::new(&g, &d, pf.as_ref());
            Ok(Output::ok(if json { to_json(&r) } else { r.to_text() }))
        }
        Command::Ledger(a) => {
            let g = read_graph(&a.input)?;
            let ledger = build_ledger(&g, a.mode)?;
            Ok(Output::ok(write_report(&Report::ledger(&g, &ledger), format)))
        }
        Command::Verify { input, theorem, force } => {
            let g = read_graph(input)?;
            let v = verify(&g, &get_profile(*theorem), *force)?;
            let exit = if v.passed() { 0 } else { 1 };
            Ok(Output { text: write_report(&Report::verdict(&g, &v), format), exit })
        }
        Command::Bound { input, theorem, n, e, k, e23 } => {
            let p = get_profile(*theorem);
            let formula = derive_global_bound(&p)?;
            let check = match (input, n) {
                (Some(path), _) => Some(check_bound(&read_graph(path)?, &p)?),
                (None, Some(n)) => Some(bound_for_counts(&p, GraphCounts { n: *n, e: *e, k: *k, e23: *e23 })?),
                (None, None) => None,
            };
            let r = BoundReport::new(p.id, &formula, check.as_ref());
            let exit = if check.is_some_and(|c| !c.holds && c.claimed) { 1 } else { 0 };
            Ok(Output { text: if json { to_json(&r) } else { r.to_text() }, exit })
        }
        Command::Saturate { input } => {
            let s = saturate_six_faces(&read_graph(input)?)?;
            let graph = serialize_graph(&s.graph);
            if json {
                let chords = s.chords.iter().map(|&(a, b)| [a, b]).collect();
                let r = SaturateReport { schema_version: REPORT_SCHEMA_VERSION, command: "saturate".into(), chords, graph };
                Ok(Output::ok(to_json(&r)))
            } else {
                Ok(Output::ok(graph))
            }
        }
        Command::Search(a) => search(a, json),
        Command::Fixtures { dir } => {
            fs::create_dir_all(dir).map_err(|e| io_failure(dir, e))?;
            let mut written = Vec::new();
            for (name, text) in FIXTURES {
                let path = dir.join(fixture_file_name(name));
                fs::write(&path, text).map_err(|e| io_failure(&path, e))?;
                written.push(path.display().to_string());
            }
            let text = if json {
                to_json(&serde_json::json!({ "schema_version": REPORT_SCHEMA_VERSION, "command": "fixtures", "files": written }))
            } else {
                written.iter().map(|p| format!("{p}\n")).collect()
            };
            Ok(Output::ok(text))
        }
    }
}

fn search(a: &SearchArgs, json: bool) -> Result<Output, Failure> {
    let profile = a.theorem.map(get_profile);
    let mut c = match &profile {
        Some(p) => ConstraintSet::for_profile(p, a.n),
        None => ConstraintSet::new(a.n),
    };
    let extra = ConstraintSet::parse(a.n, &a.constraints)?;
    merge(&mut c, &extra);

    if let Some(seed) = a.seed {
        let g = random_plane_graph(a.n, seed, Some(&c))?;
        return Ok(Output::ok(serialize_graph(&g)));
    }
    if a.jobs > 0 {
        // fails only if a pool already exists, in which case it is reused
        let _ = rayon::ThreadPoolBuilder::new().num_threads(a.jobs).build_global();
    }
    let opts = SearchOptions { ceiling: a.ceiling, witness_cap: a.witnesses };
    let result = extremal_search(&c, &opts)?;
    let r = SearchReport::new(&result, profile.as_ref())?;
    let exit = if r.witnesses.iter().any(|w| w.slack.as_deref().is_some_and(|s| s.starts_with('-'))) { 1 } else { 0 };
    Ok(Output { text: if json { to_json(&r) } else { r.to_text() }, exit })
}

fn merge(c: &mut ConstraintSet, extra: &ConstraintSet) {
    for &l in &extra.forbidden_cycles {
        if !c.forbidden_cycles.contains(&l) {
            c.forbidden_cycles.push(l);
        }
    }
    c.forbidden_cycles.sort_unstable();
    c.planar &= extra.planar;
    c.bipartite |= extra.bipartite;
    c.triangle_free |= extra.triangle_free;
    c.min_degree = c.min_degree.max(extra.min_degree);
    c.exact_min_degree = c.exact_min_degree.or(extra.exact_min_degree);
    c.two_connected |= extra.two_connected;
    c.deg2_neighbor_rule |= extra.deg2_neighbor_rule;
}

const SUBCOMMANDS: [&str; 7] = ["decompose", "ledger", "verify", "bound", "saturate", "search", "fixtures"];

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Decompose(_) => "decompose",
        Command::Ledger(_) => "ledger",
        Command::Verify { .. } => "verify",
        Command::Bound { .. } => "bound",
        Command::Saturate { .. } => "saturate",
        Command::Search(_) => "search",
        Command::Fixtures { .. } => "fixtures",
    }
}

/// Best-effort scan for `--format json` when the command line does not parse.
fn wants_json() -> bool {
    let args: Vec<String> = std::env::args().collect();
    args.windows(2).any(|w| w[0] == "--format" && w[1] == "json") || args.iter().any(|a| a == "--format=json")
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if !e.use_stderr() {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            if wants_json() {
                let r = ErrorReport {
                    schema_version: REPORT_SCHEMA_VERSION,
                    command: std::env::args()
                        .find(|a| SUBCOMMANDS.contains(&a.as_str()))
                        .unwrap_or_default(),
                    error: ErrorBody { code: "UsageError".into(), message: e.kind().to_string() },
                };
                print!("{}", to_json(&r));
            }
            let _ = e.print();
            return ExitCode::from(2);
        }
    };
    let json = cli.format == ReportFormat::Json;
    let (text, exit) = match run(&cli.command, cli.format) {
        Ok(out) => (out.text, out.exit),
        Err(f) => {
            eprintln!("error [{}]: {}", f.code, f.message);
            if !json {
                return ExitCode::from(f.exit);
            }
            let r = ErrorReport {
                schema_version: REPORT_SCHEMA_VERSION,
                command: command_name(&cli.command).into(),
                error: ErrorBody { code: f.code, message: f.message },
            };
            (to_json(&r), f.exit)
        }
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = fs::write(path, &text) {
                eprintln!("error [IoError]: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(exit)
}
