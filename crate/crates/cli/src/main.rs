use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use tvk::applications::{
    crossing_simplices, crossing_tverberg, felsner_scheucher_verify, tetrahedra_face_linked,
    verify_crossing_partition, PipelineOptions,
};
use tvk::crossing::{cocycle_check, parity_check, FixOptions, Measure};
use tvk::gen::random_general_position;
use tvk::geometry::{in_general_position, perturb, triangles_linked};
use tvk::io::{format_points, read_points, PartitionDocument, PerturbationInfo};
use tvk::tverberg::{
    birch_partition_planar, tverberg_partition_bruteforce, Method, BRUTE_FORCE_LIMIT,
};
use tvk::{Error, Point, PointSet, Rat};

mod exit {
    pub const DEGENERATE: u8 = 2;
    pub const SIZE_GATE: u8 = 3;
    pub const BUDGET: u8 = 4;
    pub const VERIFICATION: u8 = 5;
    pub const USAGE: u8 = 64;
    pub const DATA: u8 = 65;
    pub const IO: u8 = 74;
}

#[derive(Parser)]
#[command(name = "tvk", version, about = "Exact crossing Tverberg partitions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tverberg partition with parts of at most d+1 points.
    Partition(PartitionArgs),
    /// Tverberg partition whose full-size parts pairwise cross.
    Crossing(CrossingArgs),
    /// Re-check a partition document against its points.
    Verify(VerifyArgs),
    /// Count complementary splits whose two hulls contain the center.
    Parity(CenterArgs),
    /// Check that each (d+2)-subset holds 0 or 2 center-containing facets.
    Cocycle(CenterArgs),
    /// Linking of two triangles or two tetrahedra in R^3.
    Link(LinkArgs),
    /// Check the built-in eight points in R^3.
    Fs(OutputArgs),
    /// Seeded random points in general position.
    Gen(GenArgs),
}

#[derive(Args)]
struct OutputArgs {
    /// Write JSON here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct InputArgs {
    #[arg(long)]
    input: PathBuf,
    /// Perturb the input into general position instead of rejecting it.
    #[arg(long)]
    perturb: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Perturbation scale exponent: points move by at most diameter / 2^k.
    #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u32).range(1..=62))]
    perturb_exp: u32,
}

#[derive(Clone, Copy, ValueEnum)]
enum PartitionMethod {
    Auto,
    BruteForce,
    Birch,
}

#[derive(Args)]
struct PartitionArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long)]
    r: usize,
    #[arg(long, value_enum, default_value_t = PartitionMethod::Auto)]
    method: PartitionMethod,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum MeasureArg {
    Volume,
    PointCount,
}

#[derive(Args)]
struct CrossingArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Number of parts; without it, floor(n/(d+1)) simplices are returned.
    #[arg(long)]
    r: Option<usize>,
    #[arg(long, value_enum, default_value_t = MeasureArg::Volume)]
    measure: MeasureArg,
    /// Maximum number of fixing steps.
    #[arg(long)]
    budget: Option<usize>,
    /// Points to leave out when --r is not given (comma separated).
    #[arg(long, value_delimiter = ',')]
    discard: Option<Vec<usize>>,
    /// Also draw the result (planar input only).
    #[arg(long)]
    svg: Option<PathBuf>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct VerifyArgs {
    /// Partition document as written by `partition` or `crossing`.
    #[arg(long)]
    partition: PathBuf,
    /// Point file; defaults to the points stored in the document.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long)]
    max_part_size: Option<usize>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct CenterArgs {
    #[arg(long)]
    input: PathBuf,
    /// Center coordinates, comma separated; defaults to the origin.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    center: Option<Vec<String>>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct LinkArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_delimiter = ',')]
    a: Vec<usize>,
    #[arg(long, value_delimiter = ',')]
    b: Vec<usize>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    d: usize,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Keep the origin in general position with the points as well.
    #[arg(long)]
    with_origin: bool,
    /// Write the point file here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

struct Failure {
    code: u8,
    message: String,
    /// Written to the output before failing (partial results).
    partial: Option<String>,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: exit::USAGE,
            message: message.into(),
            partial: None,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::GeneralPositionViolated(_)
            | Error::DegenerateSimplex
            | Error::DegenerateIncidence
            | Error::PerturbationFailed { .. }
            | Error::WitnessNotContained => exit::DEGENERATE,
            Error::SizeGate { .. } => exit::SIZE_GATE,
            Error::BudgetExceeded { .. } => exit::BUDGET,
            Error::VerificationFailed(_)
            | Error::CrossingLost { .. }
            | Error::ParityViolated(_)
            | Error::InvalidPartition(_)
            | Error::Invariant(_) => exit::VERIFICATION,
            Error::SizeOutOfRange(_)
            | Error::DimensionMismatch { .. }
            | Error::WrongPointCount { .. }
            | Error::UnsupportedDimension(..)
            | Error::MalformedProblem(_) => exit::USAGE,
            Error::Parse { .. } | Error::Document(_) => exit::DATA,
            Error::Io(_) => exit::IO,
        };
        let message = match &e {
            Error::GeneralPositionViolated(r) => {
                let shown: Vec<String> = r.violations.iter().take(8).map(|v| format!("{v:?}")).collect();
                let more = r.violations.len().saturating_sub(8);
                let tail = if more > 0 { format!(" and {more} more") } else { String::new() };
                format!("{e}: {}{tail}", shown.join(" "))
            }
            _ => e.to_string(),
        };
        Failure {
            code,
            message,
            partial: None,
        }
    }
}

type CmdResult = std::result::Result<(), Failure>;

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure {
        code: exit::IO,
        message: format!("{}: {e}", path.display()),
        partial: None,
    }
}

fn emit(out: &OutputArgs, text: &str) -> CmdResult {
    match &out.output {
        Some(p) => std::fs::write(p, text).map_err(|e| io_failure(p, e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_json<T: Serialize>(out: &OutputArgs, value: &T) -> CmdResult {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    emit(out, &s)
}

fn load(path: &Path) -> Result<PointSet, Failure> {
    read_points(path).map_err(|e| match e {
        Error::Io(io) => io_failure(path, io),
        other => {
            let mut f = Failure::from(other);
            f.message = format!("{}: {}", path.display(), f.message);
            f
        }
    })
}

/// Loads points and applies the general-position policy.
fn load_general(args: &InputArgs) -> Result<(PointSet, Option<PerturbationInfo>), Failure> {
    let ps = load(&args.input)?;
    if args.perturb {
        let moved = perturb(&ps, args.seed, args.perturb_exp)?;
        let info = PerturbationInfo {
            seed: args.seed,
            k: args.perturb_exp,
        };
        return Ok((moved, Some(info)));
    }
    let report = in_general_position(&ps, None);
    if !report.is_ok() {
        return Err(Error::GeneralPositionViolated(report).into());
    }
    Ok((ps, None))
}

fn cmd_partition(args: &PartitionArgs) -> CmdResult {
    if args.r == 0 {
        return Err(Failure::usage("--r must be at least 1"));
    }
    let (ps, info) = load_general(&args.input)?;
    let planar_birch = ps.dim() == 2 && ps.len() == 3 * args.r;
    let use_birch = match args.method {
        PartitionMethod::Birch => true,
        PartitionMethod::BruteForce => false,
        PartitionMethod::Auto => ps.len() > BRUTE_FORCE_LIMIT && planar_birch,
    };
    let (partition, method) = if use_birch {
        if !planar_birch {
            return Err(Failure::usage("birch method needs planar input with n = 3r"));
        }
        birch_partition_planar(&ps)?
    } else {
        (tverberg_partition_bruteforce(&ps, args.r)?, Method::BruteForce)
    };
    let mut doc = PartitionDocument::from_partition(&ps, &partition);
    doc.method = Some(method);
    doc.perturbation = info;
    emit(&args.out, &doc.to_json())
}

fn cmd_crossing(args: &CrossingArgs) -> CmdResult {
    if args.r == Some(0) {
        return Err(Failure::usage("--r must be at least 1"));
    }
    if args.r.is_some() && args.discard.is_some() {
        return Err(Failure::usage("--discard only applies without --r"));
    }
    let (ps, info) = load_general(&args.input)?;
    if args.svg.is_some() && ps.dim() != 2 {
        return Err(Failure::usage("--svg needs planar input"));
    }
    let opts = PipelineOptions {
        fix: FixOptions {
            measure: match args.measure {
                MeasureArg::Volume => Measure::Volume,
                MeasureArg::PointCount => Measure::PointCount,
            },
            budget: args.budget,
        },
    };
    let result = match args.r {
        Some(r) => crossing_tverberg(&ps, r, opts),
        None => crossing_simplices(&ps, args.discard.as_deref(), opts),
    };
    let report = match result {
        Ok(rep) => rep,
        Err(Error::BudgetExceeded {
            budget,
            partition,
            trace,
        }) => {
            let mut doc = PartitionDocument::from_trace(&ps, &partition, &trace);
            doc.perturbation = info;
            let partial = doc.to_json();
            return Err(Failure {
                code: exit::BUDGET,
                message: format!("fixing step budget of {budget} exhausted"),
                partial: Some(partial),
            });
        }
        Err(e) => return Err(e.into()),
    };
    let mut doc = PartitionDocument::from_report(&ps, &report);
    doc.perturbation = info;
    if let Some(path) = &args.svg {
        let svg = tvk::svg::render(&ps, &report.partition)?;
        std::fs::write(path, svg).map_err(|e| io_failure(path, e))?;
    }
    emit(&args.out, &doc.to_json())
}

#[derive(Serialize)]
struct VerifyOutput {
    ok: bool,
    #[serde(flatten)]
    report: tvk::applications::VerificationReport,
}

fn cmd_verify(args: &VerifyArgs) -> CmdResult {
    let text = std::fs::read_to_string(&args.partition).map_err(|e| io_failure(&args.partition, e))?;
    let doc = PartitionDocument::from_json(&text)?;
    let ps = match &args.input {
        Some(p) => load(p)?,
        None => doc
            .point_set()?
            .ok_or_else(|| Failure::usage("document has no points; pass --input"))?,
    };
    if ps.dim() != doc.dim {
        return Err(Error::DimensionMismatch {
            expected: doc.dim,
            found: ps.dim(),
        }
        .into());
    }
    let report = verify_crossing_partition(&ps, &doc.partition(), args.max_part_size);
    let ok = report.is_ok();
    emit_json(&args.out, &VerifyOutput { ok, report })?;
    if ok {
        Ok(())
    } else {
        Err(Failure {
            code: exit::VERIFICATION,
            message: "partition failed verification".into(),
            partial: None,
        })
    }
}

fn center(args: &CenterArgs, d: usize) -> Result<Point, Failure> {
    match &args.center {
        None => Ok(Point::origin(d)),
        Some(raw) => {
            let coords = raw
                .iter()
                .map(|s| s.trim().parse::<Rat>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| Failure::usage(format!("bad --center: {}", e.0)))?;
            if coords.len() != d {
                return Err(Failure::usage(format!("--center needs {d} coordinates")));
            }
            Ok(Point::new(coords))
        }
    }
}

fn cmd_parity(args: &CenterArgs) -> CmdResult {
    let ps = load(&args.input)?;
    let o = center(args, ps.dim())?;
    emit_json(&args.out, &parity_check(&ps, &o)?)
}

fn cmd_cocycle(args: &CenterArgs) -> CmdResult {
    let ps = load(&args.input)?;
    let o = center(args, ps.dim())?;
    let report = cocycle_check(&ps, &o)?;
    emit_json(&args.out, &report)?;
    if report.holds {
        Ok(())
    } else {
        Err(Failure {
            code: exit::VERIFICATION,
            message: format!("cocycle condition fails on {:?}", report.offending),
            partial: None,
        })
    }
}

fn cmd_link(args: &LinkArgs) -> CmdResult {
    let ps = load(&args.input)?;
    if ps.dim() != 3 {
        return Err(Failure::usage("link needs points in R^3"));
    }
    ps.check_indices(&args.a)?;
    ps.check_indices(&args.b)?;
    match (args.a.len(), args.b.len()) {
        (3, 3) => {
            let (a, b) = (ps.select(&args.a), ps.select(&args.b));
            let linked = triangles_linked([a[0], a[1], a[2]], [b[0], b[1], b[2]])?;
            emit_json(&args.out, &serde_json::json!({ "linked": linked }))
        }
        (4, 4) => emit_json(&args.out, &tetrahedra_face_linked(&args.a, &args.b, &ps)?),
        _ => Err(Failure::usage("--a and --b must both list 3 or both list 4 indices")),
    }
}

fn cmd_fs(args: &OutputArgs) -> CmdResult {
    emit_json(args, &felsner_scheucher_verify()?)
}

fn cmd_gen(args: &GenArgs) -> CmdResult {
    if args.d == 0 {
        return Err(Failure::usage("--d must be at least 1"));
    }
    let extra = args.with_origin.then(|| Point::origin(args.d));
    let ps = random_general_position(args.d, args.n, args.seed, extra.as_ref())?;
    let mut text = format!("# tvk gen --d {} --n {} --seed {}", args.d, args.n, args.seed);
    if args.with_origin {
        text.push_str(" --with-origin");
    }
    text.push('\n');
    text.push_str(&format_points(&ps));
    emit(&OutputArgs { output: args.output.clone() }, &text)
}

fn configure_threads() -> CmdResult {
    let Ok(raw) = std::env::var("TVK_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| Failure::usage(format!("TVK_THREADS must be an integer >= 1, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::usage(format!("cannot size thread pool: {e}")))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(exit::USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = configure_threads().and_then(|()| match &cli.command {
        Command::Partition(a) => cmd_partition(a),
        Command::Crossing(a) => cmd_crossing(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Parity(a) => cmd_parity(a),
        Command::Cocycle(a) => cmd_cocycle(a),
        Command::Link(a) => cmd_link(a),
        Command::Fs(a) => cmd_fs(a),
        Command::Gen(a) => cmd_gen(a),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if let Some(partial) = &f.partial {
                let out = match &cli.command {
                    Command::Crossing(a) => &a.out,
                    _ => &OutputArgs { output: None },
                };
                let _ = emit(out, partial);
            }
            eprintln!("tvk: error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
