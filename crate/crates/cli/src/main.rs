use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use sykgraph_core::dot::to_dot;
use sykgraph_core::enumerate::{random_graph_with, EnumerationOptions};
use sykgraph_core::surgery::{is_two_cut_in_g, PairRecord};
use sykgraph_core::verify::{classify, tally_graphs};
use sykgraph_core::{
    common_face_pairs, degree, graph_from_json, graph_to_json, is_melonic, star_glue, verify_theorem,
    witness_non_maximal, CommonFacePair, DegreeReport, EnumerationReport, FermionicLine, GlueOrientation, GraphError,
    Slot, StrandedGraph, WitnessRecord,
};

#[derive(Parser, Debug)]
#[command(
    name = "sykgraph",
    version,
    about = "Stranded SYK graphs: faces, degree, melonic graphs, surgeries"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Histogram of (F, delta) over every labeled graph at (q, V).
    Enumerate(EnumerateArgs),
    /// Exhaustive check of the degree bound and both characterisations of melonic graphs.
    Verify(VerifyArgs),
    /// Faces, degree and melonic verdict of one graph.
    Classify(InputArgs),
    /// Uniform random graphs; one summary row per degree value.
    Sample(SampleArgs),
    /// Melon-by-melon reduction certificate.
    Reduce(InputArgs),
    /// Star-glue two graphs cut open on one line each.
    Glue(GlueArgs),
    /// A graph with more faces, from a common-face pair that is not a 2-cut.
    Witness(WitnessArgs),
    /// Graphviz rendering with strands drawn per disorder line.
    ExportDot(DotArgs),
}

#[derive(Args, Debug)]
struct SizeArgs {
    #[arg(long, default_value_t = 4, value_parser = parse_q)]
    q: usize,
    #[arg(long, value_parser = parse_v)]
    v: usize,
}

#[derive(Args, Debug)]
struct RunArgs {
    /// Refuse enumerations with more raw structures than this.
    #[arg(long, env = "SYKGRAPH_BUDGET", default_value_t = sykgraph_core::DEFAULT_BUDGET)]
    budget: u128,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long)]
    workers: Option<usize>,
}

impl RunArgs {
    fn options(&self) -> EnumerationOptions {
        let workers = self
            .workers
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
            .max(1);
        EnumerationOptions {
            budget: self.budget,
            workers,
            // Enough pieces to keep every worker busy.
            partition_depth: if workers > 1 { 3 } else { 1 },
        }
    }
}

#[derive(Args, Debug)]
struct OutputArgs {
    /// Write here instead of standard output.
    #[arg(long, short)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Dot,
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    #[command(flatten)]
    size: SizeArgs,
    #[command(flatten)]
    run: RunArgs,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    size: SizeArgs,
    #[command(flatten)]
    run: RunArgs,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct InputArgs {
    /// Graph file in the JSON graph format.
    #[arg(long, short)]
    input: PathBuf,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct DotArgs {
    #[arg(long, short)]
    input: PathBuf,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SampleArgs {
    #[command(flatten)]
    size: SizeArgs,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of samples.
    #[arg(short = 'n', long = "count", default_value_t = 1000)]
    count: u64,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct GlueArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    input2: PathBuf,
    /// A slot `v,m` of the line to cut in the first graph.
    #[arg(long, default_value = "0,0")]
    edge1: SlotArg,
    /// A slot `v,m` of the line to cut in the second graph.
    #[arg(long, default_value = "0,0")]
    edge2: SlotArg,
    #[arg(long, value_enum, default_value_t = Orientation::Straight)]
    orientation: Orientation,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Orientation {
    Straight,
    Crossed,
}

#[derive(Args, Debug)]
struct WitnessArgs {
    #[arg(long, short)]
    input: PathBuf,
    /// Slots `v,m` on the two lines of the pair; by default the first
    /// common-face pair that is not a 2-cut in G.
    #[arg(long, num_args = 2, value_names = ["SLOT1", "SLOT2"])]
    pair: Option<Vec<SlotArg>>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Clone, Copy, Debug)]
struct SlotArg(Slot);

impl FromStr for SlotArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (v, m) = s.split_once(',').ok_or_else(|| format!("expected `v,m`, got `{s}`"))?;
        let parse = |x: &str| x.trim().parse::<usize>().map_err(|e| format!("`{x}`: {e}"));
        Ok(SlotArg(Slot::new(parse(v)?, parse(m)?)))
    }
}

fn parse_q(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(q) if q >= 2 => Ok(q),
        Ok(q) => Err(format!("q must be at least 2, got {q}")),
        Err(e) => Err(e.to_string()),
    }
}

fn parse_v(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(v) if v >= 2 && v % 2 == 0 => Ok(v),
        Ok(v) => Err(format!("v must be even and at least 2, got {v}")),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Verification(String),
    #[error(transparent)]
    Budget(GraphError),
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: GraphError },
    #[error("{0}")]
    Invalid(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Budget(_) => 2,
            CliError::Parse { .. } | CliError::Invalid(_) => 3,
            CliError::Io { .. } => 4,
        }
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::BudgetExceeded { .. } => CliError::Budget(e),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

type CliResult<T = ()> = Result<T, CliError>;

fn read_graph(path: &Path) -> CliResult<StrandedGraph> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })?;
    graph_from_json(&text).map_err(|source| CliError::Parse {
        path: path.to_owned(),
        source,
    })
}

fn emit(out: &OutputArgs, text: &str) -> CliResult {
    match &out.output {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        }),
        None => io::stdout().write_all(text.as_bytes()).map_err(|source| CliError::Io {
            path: PathBuf::from("<stdout>"),
            source,
        }),
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("reports serialize");
    text.push('\n');
    text
}

fn only_json(out: &OutputArgs, what: &str) -> CliResult {
    if out.format == Format::Json {
        Ok(())
    } else {
        Err(CliError::Invalid(format!("{what} is only available as json")))
    }
}

fn graph_output(out: &OutputArgs, g: &StrandedGraph) -> CliResult {
    match out.format {
        Format::Json => emit(out, &(graph_to_json(g) + "\n")),
        Format::Dot => emit(out, &to_dot(g)),
        Format::Csv => Err(CliError::Invalid("graphs are written as json or dot".into())),
    }
}

fn report_output(out: &OutputArgs, report: &EnumerationReport) -> CliResult {
    match out.format {
        Format::Json => emit(out, &json(report)),
        Format::Csv => emit(out, &report.to_csv()),
        Format::Dot => Err(CliError::Invalid("reports are written as json or csv".into())),
    }
}

fn enumerate(args: &EnumerateArgs) -> CliResult {
    let options = args.run.options();
    let start = Instant::now();
    let tally = tally_graphs(args.size.q, args.size.v, &options)?;
    let report = EnumerationReport::from_tally(
        args.size.q,
        args.size.v,
        &options,
        &tally,
        start.elapsed().as_secs_f64(),
    );
    report_output(&args.out, &report)
}

fn verify(args: &VerifyArgs) -> CliResult {
    let report = verify_theorem(args.size.q, args.size.v, &args.run.options())?;
    report_output(&args.out, &report)?;
    if report.theorem_ok && report.corollary_ok {
        Ok(())
    } else {
        Err(CliError::Verification(format!(
            "verification failed at q = {}, V = {}: theorem_ok = {}, corollary_ok = {}",
            report.q, report.v, report.theorem_ok, report.corollary_ok
        )))
    }
}

#[derive(Serialize)]
struct Classification {
    #[serde(flatten)]
    degree: DegreeReport,
    g0_connected: bool,
    melonic: bool,
    common_face_pairs: usize,
    non_cut_pairs: usize,
}

fn classify_graph(args: &InputArgs) -> CliResult {
    only_json(&args.out, "classification")?;
    let g = read_graph(&args.input)?;
    let pairs = common_face_pairs(&g);
    let c = classify(&g);
    let report = Classification {
        degree: degree(&g),
        g0_connected: g.is_connected_g0(),
        melonic: c.melonic,
        non_cut_pairs: pairs.iter().filter(|p| !is_two_cut_in_g(&g, p.e1, p.e2)).count(),
        common_face_pairs: pairs.len(),
    };
    emit(&args.out, &json(&report))
}

#[derive(Serialize)]
struct SampleRow {
    delta: i64,
    count: u64,
}

#[derive(Serialize)]
struct SampleSummary {
    q: usize,
    v: usize,
    seed: u64,
    samples: u64,
    max_delta: Option<i64>,
    rows: Vec<SampleRow>,
}

fn sample(args: &SampleArgs) -> CliResult {
    let (q, v) = (args.size.q, args.size.v);
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut counts = std::collections::BTreeMap::<i64, u64>::new();
    for _ in 0..args.count {
        let g = random_graph_with(q, v, &mut rng)?;
        *counts.entry(degree(&g).delta).or_default() += 1;
    }
    let max_delta = counts.keys().next_back().copied();
    let summary = SampleSummary {
        q,
        v,
        seed: args.seed,
        samples: args.count,
        max_delta,
        rows: counts
            .into_iter()
            .map(|(delta, count)| SampleRow { delta, count })
            .collect(),
    };
    match args.out.format {
        Format::Json => emit(&args.out, &json(&summary))?,
        Format::Csv => {
            let mut text = String::from("q,v,delta,count\n");
            for r in &summary.rows {
                text.push_str(&format!("{q},{v},{},{}\n", r.delta, r.count));
            }
            emit(&args.out, &text)?;
        }
        Format::Dot => return Err(CliError::Invalid("samples are written as json or csv".into())),
    }
    match max_delta {
        Some(d) if d > 1 => Err(CliError::Verification(format!("sampled a graph with degree {d}"))),
        _ => Ok(()),
    }
}

fn reduce(args: &InputArgs) -> CliResult {
    only_json(&args.out, "a reduction certificate")?;
    let g = read_graph(&args.input)?;
    emit(&args.out, &json(&is_melonic(&g)))
}

fn line_through(g: &StrandedGraph, slot: Slot) -> CliResult<FermionicLine> {
    if slot.vertex >= g.vertex_count() || slot.position >= g.q() {
        return Err(CliError::Invalid(format!("slot {slot} is not in the graph")));
    }
    Ok(g.line_at(g.slot_index(slot)))
}

fn glue(args: &GlueArgs) -> CliResult {
    let g1 = read_graph(&args.input)?;
    let g2 = read_graph(&args.input2)?;
    let e1 = line_through(&g1, args.edge1.0)?;
    let e2 = line_through(&g2, args.edge2.0)?;
    let orientation = match args.orientation {
        Orientation::Straight => GlueOrientation::Straight,
        Orientation::Crossed => GlueOrientation::Crossed,
    };
    let glued = star_glue(&g1, e1, &g2, e2, orientation)?;
    graph_output(&args.out, &glued)
}

fn witness(args: &WitnessArgs) -> CliResult {
    only_json(&args.out, "a witness record")?;
    let g = read_graph(&args.input)?;
    let pairs = common_face_pairs(&g);
    let pair: CommonFacePair = match &args.pair {
        Some(slots) => {
            let (a, b) = (line_through(&g, slots[0].0)?, line_through(&g, slots[1].0)?);
            let (e1, e2) = (a.min(b), a.max(b));
            *pairs
                .iter()
                .find(|p| p.e1 == e1 && p.e2 == e2)
                .ok_or_else(|| CliError::Invalid("the two lines do not share a face".into()))?
        }
        None => *pairs.iter().find(|p| !is_two_cut_in_g(&g, p.e1, p.e2)).ok_or_else(|| {
            CliError::Verification("every common-face pair is a 2-cut in G; no witness exists".into())
        })?,
    };
    let w = witness_non_maximal(&g, &pair).map_err(|e| match e {
        GraphError::CutInG => CliError::Verification(format!(
            "the pair {:?} is a 2-cut in G; no witness exists",
            PairRecord::new(&g, &pair)
        )),
        other => CliError::Verification(other.to_string()),
    })?;
    emit(&args.out, &json(&WitnessRecord::new(&g, &pair, &w)))
}

fn export_dot(args: &DotArgs) -> CliResult {
    let g = read_graph(&args.input)?;
    let out = OutputArgs {
        output: args.output.clone(),
        format: Format::Dot,
    };
    graph_output(&out, &g)
}

fn run(cli: &Cli) -> CliResult {
    match &cli.command {
        Command::Enumerate(a) => enumerate(a),
        Command::Verify(a) => verify(a),
        Command::Classify(a) => classify_graph(a),
        Command::Sample(a) => sample(a),
        Command::Reduce(a) => reduce(a),
        Command::Glue(a) => glue(a),
        Command::Witness(a) => witness(a),
        Command::ExportDot(a) => export_dot(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(3)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
