use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use arithgraph::critical::{blowup_preserves_critical_group, critical_group};
use arithgraph::enumerate::{enumerate_bounded, enumerate_bounded_graph, enumerate_certified, DEFAULT_R_CAP};
use arithgraph::graph::{laplacian_like, GeneralizedGraph};
use arithgraph::io::{
    load_matrix, parse_graph_spec, parse_int_list, parse_structure_json, structure_set_csv, structure_set_json,
};
use arithgraph::mclass::{classify, default_diagonal_samples, equivalence_report, is_z_matrix};
use arithgraph::reproduce::{reproduce, TABLES};
use arithgraph::structure::{d_from_r, is_arithmetical, r_from_d};
use arithgraph::transforms::{
    blowup_mq, clique_star, cycle_to_wheel_affine, cycle_to_wheel_divisor, cycle_to_wheel_lcm, generalized_blowup_a,
    generalized_blowup_m, pq_conjugation_check, wheel_extend, wheel_unit_structure, zn_orbit,
};
use arithgraph::wheel::{check_unit_d_neighbors, classify_wheel_structure};
use arithgraph::{ArithStructure, Error, Family, Graph};

/// Arithmetical structures on graphs.
#[derive(Parser)]
#[command(name = "arith", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the structures of a graph.
    Enumerate(EnumerateArgs),
    /// Check a structure, or complete one from d or r alone. Exits with 2 when the check fails.
    Verify(StructureArgs),
    /// Place a wheel structure in the all-ones / case1 / case2 / case3 classification.
    Classify(StructureArgs),
    /// Z-matrix / M-matrix classification of a matrix file.
    ClassifyMatrix(MatrixArgs),
    /// Build a new structure from an existing one.
    Transform {
        kind: TransformKind,
        #[command(flatten)]
        args: TransformArgs,
    },
    /// Orbit of an r-structure on a wheel under rim rotation.
    Orbit {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: String,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Critical group of a structure.
    CriticalGroup(StructureArgs),
    /// Recompute a reference table and compare. Exits with 2 on any mismatch.
    Reproduce {
        /// Table id, or `all`.
        table: String,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Certified,
    Bounded,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TransformKind {
    CliqueStar,
    Blowup,
    GenBlowupM,
    GenBlowupA,
    CycleToWheel,
    CycleToWheelLcm,
    CycleToWheelAffine,
    WheelExtend,
    WheelUnit,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long)]
    graph: String,
    #[arg(long, value_enum, default_value = "certified")]
    mode: Mode,
    #[arg(long)]
    r_cap: Option<u64>,
    /// Acknowledge that bounded results are not certified complete.
    #[arg(long)]
    bounded_ok: bool,
    /// Accept a non-symmetric matrix file (bounded mode only).
    #[arg(long)]
    directed_support: bool,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct StructureArgs {
    #[arg(long)]
    graph: String,
    #[arg(long)]
    d: Option<String>,
    #[arg(long)]
    r: Option<String>,
    /// Structure JSON `{"d": [...], "r": [...]}`, inline or as a file path.
    #[arg(long, conflicts_with_all = ["d", "r"])]
    structure: Option<String>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct MatrixArgs {
    /// Matrix JSON file `{"n": k, "rows": [...]}`.
    #[arg(long)]
    matrix: PathBuf,
    /// Seed for the random diagonal sample.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct TransformArgs {
    #[arg(long)]
    graph: Option<String>,
    /// Matrix JSON file, for `blowup` in place of `--graph` and `--d`.
    #[arg(long)]
    matrix: Option<PathBuf>,
    #[arg(long)]
    d: Option<String>,
    #[arg(long)]
    r: Option<String>,
    #[arg(long, conflicts_with_all = ["d", "r"])]
    structure: Option<String>,
    #[arg(long)]
    clique: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    q: Option<String>,
    #[arg(long)]
    p: Option<String>,
    #[arg(long)]
    r0: Option<u64>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<i64>,
    #[arg(long)]
    n: Option<usize>,
    #[command(flatten)]
    out: OutputArgs,
}

/// A failed command: exit code and message.
struct Failure(u8, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(1, e.to_string())
    }
}

type CmdResult = Result<u8, Failure>;

fn invalid(msg: impl Into<String>) -> Failure {
    Failure(1, msg.into())
}

fn required<'a, T>(v: &'a Option<T>, flag: &str) -> Result<&'a T, Failure> {
    v.as_ref().ok_or_else(|| invalid(format!("missing required flag --{flag}")))
}

fn list<T: std::str::FromStr>(v: &Option<String>, flag: &str) -> Result<Vec<T>, Failure> {
    Ok(parse_int_list(required(v, flag)?)?)
}

fn opt_list<T: std::str::FromStr>(v: &Option<String>) -> Result<Option<Vec<T>>, Failure> {
    v.as_deref().map(parse_int_list).transpose().map_err(Failure::from)
}

fn emit(out: &OutputArgs, text: &str) -> Result<(), Failure> {
    let mut text = text.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match &out.output {
        Some(path) => std::fs::write(path, text).map_err(|e| invalid(format!("file error: {}: {e}", path.display()))),
        None => {
            use std::io::Write;
            match std::io::stdout().lock().write_all(text.as_bytes()) {
                // reader went away (e.g. `| head`); nothing left to report
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                r => r.map_err(|e| invalid(format!("file error: stdout: {e}"))),
            }
        }
    }
}

fn emit_json<T: Serialize>(out: &OutputArgs, value: &T) -> Result<(), Failure> {
    if out.format == Format::Csv {
        return Err(invalid("--format csv is only supported by enumerate"));
    }
    emit(out, &serde_json::to_string_pretty(value).expect("output serializes"))
}

fn read_structure(arg: &str) -> Result<ArithStructure, Failure> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| invalid(format!("file error: {arg}: {e}")))?
    };
    Ok(parse_structure_json(&text)?)
}

/// `(d, r)` from `--structure` or `--d`/`--r`; either half may be absent.
fn structure_parts(
    structure: &Option<String>,
    d: &Option<String>,
    r: &Option<String>,
) -> Result<(Option<Vec<u64>>, Option<Vec<u64>>), Failure> {
    match structure {
        Some(s) => {
            let s = read_structure(s)?;
            Ok((Some(s.d), Some(s.r)))
        }
        None => Ok((opt_list(d)?, opt_list(r)?)),
    }
}

fn full_structure(
    structure: &Option<String>,
    d: &Option<String>,
    r: &Option<String>,
) -> Result<(Vec<u64>, Vec<u64>), Failure> {
    match structure_parts(structure, d, r)? {
        (Some(d), Some(r)) => Ok((d, r)),
        (None, _) => Err(invalid("missing required flag --d (or --structure)")),
        (_, None) => Err(invalid("missing required flag --r (or --structure)")),
    }
}

fn wheel_size(graph: &Graph) -> Result<usize, Failure> {
    match graph.family() {
        Some((Family::Wheel, n)) => Ok(n),
        _ => Err(invalid(format!("graph must be a wheel, got {}", graph.spec()))),
    }
}

fn cmd_enumerate(args: &EnumerateArgs) -> CmdResult {
    let set = match args.mode {
        Mode::Certified => {
            if args.r_cap.is_some() {
                return Err(invalid("--r-cap applies only to --mode bounded"));
            }
            let graph = parse_graph_spec(&args.graph)?;
            let (family, n) = graph
                .family()
                .ok_or_else(|| invalid("certified enumeration needs a family graph; use --mode bounded"))?;
            enumerate_certified(family, n)?
        }
        Mode::Bounded => {
            if !args.bounded_ok {
                return Err(invalid(
                    "bounded enumeration is not certified complete; pass --bounded-ok to acknowledge",
                ));
            }
            let cap = args.r_cap.unwrap_or(DEFAULT_R_CAP);
            match args.graph.strip_prefix("file:") {
                Some(path) if args.directed_support => {
                    let g = GeneralizedGraph::new(load_matrix(path)?)?;
                    enumerate_bounded(g.matrix(), cap)?
                }
                _ => enumerate_bounded_graph(&parse_graph_spec(&args.graph)?, cap)?,
            }
        }
    };
    let text = match args.out.format {
        Format::Json => structure_set_json(&set),
        Format::Csv => structure_set_csv(&set)?,
    };
    emit(&args.out, &text)?;
    Ok(0)
}

fn cmd_verify(args: &StructureArgs) -> CmdResult {
    let graph = parse_graph_spec(&args.graph)?;
    let a = graph.adjacency();
    let (d, r, valid) = match structure_parts(&args.structure, &args.d, &args.r)? {
        (Some(d), Some(r)) => {
            let ok = is_arithmetical(a, &d, &r)?;
            (Some(d), Some(r), ok)
        }
        (None, Some(r)) => {
            let d = d_from_r(a, &r);
            let ok = d.is_some();
            (d, Some(r), ok)
        }
        (Some(d), None) => {
            let r = r_from_d(a, &d);
            let ok = r.is_some();
            (Some(d), r, ok)
        }
        (None, None) => return Err(invalid("give --d, --r or both")),
    };
    emit_json(&args.out, &json!({"graph": graph.spec(), "valid": valid, "d": d, "r": r}))?;
    Ok(if valid { 0 } else { 2 })
}

fn cmd_classify(args: &StructureArgs) -> CmdResult {
    let graph = parse_graph_spec(&args.graph)?;
    let n = wheel_size(&graph)?;
    let (d, _) = structure_parts(&args.structure, &args.d, &args.r)?;
    let d = d.ok_or_else(|| invalid("missing required flag --d"))?;
    let case = classify_wheel_structure(n, &d)?;
    let unit = check_unit_d_neighbors(&graph, &d);
    emit_json(
        &args.out,
        &json!({"graph": graph.spec(), "d": d, "case": case.name(), "unit_d_neighbors": unit}),
    )?;
    Ok(0)
}

fn cmd_classify_matrix(args: &MatrixArgs) -> CmdResult {
    let m = load_matrix(&args.matrix)?;
    let class = classify(&m);
    let equivalence = if is_z_matrix(&m) {
        Some(equivalence_report(&m, &default_diagonal_samples(m.dim(), args.seed))?)
    } else {
        None
    };
    emit_json(&args.out, &json!({"class": class, "equivalence": equivalence}))?;
    Ok(0)
}

fn cmd_transform(kind: TransformKind, t: &TransformArgs) -> CmdResult {
    let value = match kind {
        TransformKind::CliqueStar => {
            let graph = parse_graph_spec(required(&t.graph, "graph")?)?;
            let clique: Vec<usize> = list(&t.clique, "clique")?;
            let s = match structure_parts(&t.structure, &t.d, &t.r)? {
                (Some(d), Some(r)) => Some(ArithStructure::new(d, r)),
                (None, None) => None,
                _ => return Err(invalid("give both --d and --r, or neither")),
            };
            let (g, image) = clique_star(&graph, &clique, s.as_ref())?;
            json!({"adjacency": g.adjacency(), "structure": image})
        }
        TransformKind::Blowup => {
            let r: Vec<u64> = list(&t.r, "r")?;
            let q: Vec<i64> = list(&t.q, "q")?;
            let m = match (&t.matrix, &t.graph) {
                (Some(path), None) => load_matrix(path)?,
                (None, Some(spec)) => {
                    let d: Vec<u64> = list(&t.d, "d")?;
                    laplacian_like(parse_graph_spec(spec)?.adjacency(), &d)?
                }
                _ => return Err(invalid("give exactly one of --matrix or --graph (with --d)")),
            };
            let b = blowup_mq(&m, &q, &r)?;
            let conj = pq_conjugation_check(&m, &q)?;
            let same_group = blowup_preserves_critical_group(&m, &r, &q).ok();
            json!({"blowup": b, "pq_conjugation": conj, "critical_group_preserved": same_group})
        }
        TransformKind::GenBlowupM | TransformKind::GenBlowupA => {
            let graph = parse_graph_spec(required(&t.graph, "graph")?)?;
            let (d, r) = full_structure(&t.structure, &t.d, &t.r)?;
            let p: Vec<u64> = list(&t.p, "p")?;
            let q: Vec<u64> = list(&t.q, "q")?;
            if kind == TransformKind::GenBlowupM {
                let m = laplacian_like(graph.adjacency(), &d)?;
                let (b, s) = generalized_blowup_m(&m, &d, &r, &p, &q)?;
                json!({"matrix": b, "structure": s})
            } else {
                serde_json::to_value(generalized_blowup_a(graph.adjacency(), &d, &r, &p, &q)?)
                    .expect("output serializes")
            }
        }
        TransformKind::CycleToWheel => {
            let (d, r) = full_structure(&t.structure, &t.d, &t.r)?;
            json!(cycle_to_wheel_divisor(&d, &r)?)
        }
        TransformKind::CycleToWheelLcm => {
            let r: Vec<u64> = list(&t.r, "r")?;
            json!(cycle_to_wheel_lcm(&r, *required(&t.r0, "r0")?)?)
        }
        TransformKind::CycleToWheelAffine => {
            let (d, r) = full_structure(&t.structure, &t.d, &t.r)?;
            json!(cycle_to_wheel_affine(&d, &r, *required(&t.a, "a")?)?)
        }
        TransformKind::WheelExtend => {
            let (d, r) = full_structure(&t.structure, &t.d, &t.r)?;
            json!(wheel_extend(&d, &r)?)
        }
        TransformKind::WheelUnit => json!(wheel_unit_structure(*required(&t.n, "n")?)?),
    };
    emit_json(&t.out, &value)?;
    Ok(0)
}

fn cmd_orbit(n: usize, r: &str, out: &OutputArgs) -> CmdResult {
    let r: Vec<u64> = parse_int_list(r)?;
    let orbit = zn_orbit(n, &r)?;
    emit_json(out, &json!({"n": n, "r": r, "size": orbit.len(), "orbit": orbit}))?;
    Ok(0)
}

fn cmd_critical(args: &StructureArgs) -> CmdResult {
    let graph = parse_graph_spec(&args.graph)?;
    let (d, r) = full_structure(&args.structure, &args.d, &args.r)?;
    emit_json(&args.out, &critical_group(graph.adjacency(), &d, &r)?)?;
    Ok(0)
}

fn cmd_reproduce(table: &str, out: &OutputArgs) -> CmdResult {
    let ids: Vec<&str> = if table == "all" { TABLES.to_vec() } else { vec![table] };
    let reports = ids.iter().map(|id| reproduce(id)).collect::<Result<Vec<_>, _>>()?;
    let passed = reports.iter().all(|r| r.passed);
    if table == "all" {
        emit_json(out, &json!({"passed": passed, "reports": reports}))?;
    } else {
        emit_json(out, &reports[0])?;
    }
    Ok(if passed { 0 } else { 2 })
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(value) = std::env::var("ARITH_THREADS") else {
        return Ok(());
    };
    let n: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| invalid(format!("ARITH_THREADS must be a positive integer, got '{value}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| invalid(format!("could not start {n} worker threads: {e}")))
}

fn run(cli: Cli) -> CmdResult {
    configure_threads()?;
    match &cli.command {
        Command::Enumerate(args) => cmd_enumerate(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Classify(args) => cmd_classify(args),
        Command::ClassifyMatrix(args) => cmd_classify_matrix(args),
        Command::Transform { kind, args } => cmd_transform(*kind, args),
        Command::Orbit { n, r, out } => cmd_orbit(*n, r, out),
        Command::CriticalGroup(args) => cmd_critical(args),
        Command::Reproduce { table, out } => cmd_reproduce(table, out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
