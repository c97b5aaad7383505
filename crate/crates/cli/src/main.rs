use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use tkernel::class::{validate_class, GraphClass, ValidationReport};
use tkernel::construct::{construct_cycle, construct_path, ConstructError};
use tkernel::decomposition::tutte_decompose;
use tkernel::generate::{gen_instance, rng, sparsify, Family};
use tkernel::graph::Graph;
use tkernel::harness::{acceptance_matrix, cross_validate, quick_matrix, HarnessOptions};
use tkernel::io::{json_lines, parse_graph, parse_setcover, write_colored, write_decomposition, write_graph};
use tkernel::kernel::{turing_kernel_cycle, turing_kernel_path, CycleKernelConfig, KernelOptions, KernelOutcome, Mutation, PathKernelConfig};
use tkernel::oracle::{find_k_cycle, find_k_path, OracleError, QueryRecord, SolveError, SolverConfig};
use tkernel::reductions::{exact_set_cover_dp, multicolored_path_exact, reduce_setcover_to_multicolored_path, Reduction};

const NO: u8 = 0;
const YES: u8 = 1;
const USAGE: u8 = 2;
const LIMIT: u8 = 3;

#[derive(Parser)]
#[command(name = "tkernel", version, about = "Turing kernels for k-Path and k-Cycle on restricted graph classes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide with the Turing kernel and print its report.
    Kernelize(Decide),
    /// Print the Tutte decomposition of a graph.
    Decompose(Input),
    /// Find an explicit path or cycle, or report that none exists.
    Construct(Decide),
    /// Decide with the exact solver alone.
    Solve(Solve),
    /// Generate a random instance.
    Gen(Gen),
    /// Reduce exact set cover to multicolored path.
    ReduceSetcover(ReduceSetcover),
    /// Check a graph against a class.
    Validate(Validate),
    /// Compare the kernels with the exact solver on random instances.
    CrossValidate(CrossValidate),
}

#[derive(Args)]
struct Input {
    /// Input file, `-` for stdin.
    #[arg(long, short)]
    input: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProblemArg {
    Path,
    Cycle,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassArg {
    Planar,
    ClawFree,
    MaxDegree,
    K3tMinorFree,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Args)]
struct ClassOpt {
    #[arg(long, value_enum)]
    class: ClassArg,
    /// Parameter of `max-degree` and `k3t-minor-free`.
    #[arg(long, default_value_t = 3)]
    t: usize,
}

impl ClassOpt {
    fn class(&self) -> Result<GraphClass, String> {
        let name = match self.class {
            ClassArg::Planar => "planar",
            ClassArg::ClawFree => "claw-free",
            ClassArg::MaxDegree => "max-degree",
            ClassArg::K3tMinorFree => "k3t-minor-free",
        };
        GraphClass::parse(name, Some(self.t)).map_err(|e| e.to_string())
    }
}

#[derive(Args)]
struct Decide {
    #[arg(long, value_enum)]
    problem: ProblemArg,
    #[command(flatten)]
    class: ClassOpt,
    #[arg(long, short)]
    k: usize,
    #[command(flatten)]
    input: Input,
    /// Oracle vertex budget, replacing the class default.
    #[arg(long)]
    budget: Option<usize>,
    /// Solver time limit per query.
    #[arg(long)]
    time_limit_ms: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Include the per-query log.
    #[arg(long)]
    log: bool,
    /// Keep wall-clock fields; without this they are zeroed so reruns are
    /// byte-identical.
    #[arg(long)]
    timing: bool,
    /// Skip the per-reduction postcondition checks.
    #[arg(long)]
    no_audit: bool,
}

#[derive(Args)]
struct Solve {
    #[arg(long, value_enum)]
    problem: ProblemArg,
    #[arg(long, short)]
    k: usize,
    #[command(flatten)]
    input: Input,
    #[arg(long)]
    time_limit_ms: Option<u64>,
}

#[derive(Args)]
struct Gen {
    /// planar-triangulation-subgraph, triconnected-planar, subcubic,
    /// line-graph, grid or planted-cycle.
    #[arg(long)]
    family: String,
    #[arg(long, short)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Cycle length for planted-cycle.
    #[arg(long, short)]
    k: Option<usize>,
    /// Keep each edge with this probability afterwards.
    #[arg(long)]
    keep: Option<f64>,
}

#[derive(Args)]
struct ReduceSetcover {
    #[command(flatten)]
    input: Input,
    /// Also solve both sides and compare.
    #[arg(long)]
    verify: bool,
}

#[derive(Args)]
struct Validate {
    #[command(flatten)]
    class: ClassOpt,
    #[command(flatten)]
    input: Input,
}

#[derive(Clone, Copy, ValueEnum)]
enum Preset {
    Quick,
    Acceptance,
    Empty,
}

#[derive(Args)]
struct CrossValidate {
    #[arg(long, value_enum, default_value_t = Preset::Quick)]
    preset: Preset,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Also build and check certificates.
    #[arg(long)]
    construct: bool,
    /// Run with a deliberately broken reduction (negative control).
    #[arg(long)]
    mutate: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

enum Failure {
    Usage(String),
    Limit(String),
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::InvalidInput(m) => Failure::Usage(m),
            e => Failure::Limit(e.to_string()),
        }
    }
}

impl From<SolveError> for Failure {
    fn from(e: SolveError) -> Self {
        Failure::Limit(e.to_string())
    }
}

impl From<ConstructError> for Failure {
    fn from(e: ConstructError) -> Self {
        match e {
            ConstructError::Oracle(e) => e.into(),
            ConstructError::Solve(e) => e.into(),
            e => Failure::Usage(e.to_string()),
        }
    }
}

fn read_input(input: &Input) -> Result<String, Failure> {
    let mut text = String::new();
    if input.input.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text).map_err(|e| Failure::Usage(format!("stdin: {e}")))?;
    } else {
        text = std::fs::read_to_string(&input.input).map_err(|e| Failure::Usage(format!("{}: {e}", input.input.display())))?;
    }
    Ok(text)
}

fn read_graph(input: &Input) -> Result<Graph, Failure> {
    parse_graph(&read_input(input)?).map_err(|e| Failure::Usage(e.to_string()))
}

fn solver(limit: Option<u64>) -> SolverConfig {
    let mut cfg = SolverConfig::from_env();
    if let Some(ms) = limit {
        cfg.time_limit = Some(Duration::from_millis(ms));
    }
    cfg
}

fn options(d: &Decide) -> KernelOptions {
    KernelOptions {
        solver: solver(d.time_limit_ms),
        audit: !d.no_audit,
        keep_log: d.log,
        mutation: None,
    }
}

fn yes_no(b: bool) -> u8 {
    if b {
        YES
    } else {
        NO
    }
}

enum Configured {
    Path(PathKernelConfig),
    Cycle(CycleKernelConfig),
}

fn configure(d: &Decide) -> Result<Configured, Failure> {
    let class = d.class.class().map_err(Failure::Usage)?;
    Ok(match d.problem {
        ProblemArg::Path => {
            let mut cfg = PathKernelConfig::new(class, d.k).with_env().with_options(options(d));
            if let Some(b) = d.budget {
                cfg.query_budget = b;
            }
            Configured::Path(cfg)
        }
        ProblemArg::Cycle => {
            let mut cfg = CycleKernelConfig::new(class, d.k).with_env().with_options(options(d));
            if let Some(b) = d.budget {
                cfg.query_budget = b;
            }
            Configured::Cycle(cfg)
        }
    })
}

#[derive(Serialize)]
#[serde(tag = "record", rename_all = "kebab-case")]
enum Record<'a> {
    Report(&'a tkernel::kernel::KernelReport),
    Query(&'a QueryRecord),
    Audit { message: &'a str },
}

fn print_outcome(d: &Decide, mut out: KernelOutcome, mut log: Vec<QueryRecord>) {
    if !d.timing {
        out.report.wall_ms = 0;
        log.iter_mut().for_each(|q| q.micros = 0);
    }
    match d.format {
        Format::Structured => {
            let mut records = vec![Record::Report(&out.report)];
            records.extend(out.audit_failures.iter().map(|m| Record::Audit { message: m }));
            records.extend(log.iter().map(Record::Query));
            print!("{}", json_lines(&records));
        }
        Format::Text => {
            let r = &out.report;
            println!("answer: {}", if r.answer { "yes" } else { "no" });
            let reason = r.yes_reason.map(|x| serde_json::to_value(x).unwrap().as_str().unwrap().to_string());
            println!("yes_reason: {}", reason.as_deref().unwrap_or("-"));
            println!("problem: {}", r.problem);
            println!("class: {}", r.class);
            println!("k: {}  n: {}  m: {}", r.k, r.n, r.m);
            println!("width_threshold: {}  max_bag: {}", r.width_threshold, r.max_bag);
            println!("queries: {}  max_query_n: {} (budget {})  max_query_k: {}", r.num_queries, r.max_query_n, r.bound_max_query_n, r.max_query_k);
            println!("audit_failures: {}  off_class_queries: {}", r.audit_failures, r.off_class_queries);
            if d.timing {
                println!("wall_ms: {}", r.wall_ms);
            }
            for m in &out.audit_failures {
                println!("audit: {m}");
            }
            for q in &log {
                println!("query {} {} {} n={} m={} k={} -> {}", q.seq, q.purpose, q.problem, q.n, q.m, q.k, q.answer);
            }
        }
    }
}

fn kernelize(d: &Decide) -> Result<u8, Failure> {
    let g = read_graph(&d.input)?;
    let (out, log) = match configure(d)? {
        Configured::Path(cfg) => {
            let mut s = cfg.session();
            (turing_kernel_path(&g, &cfg, &mut s)?, s.log().to_vec())
        }
        Configured::Cycle(cfg) => {
            let mut s = cfg.session();
            (turing_kernel_cycle(&g, &cfg, &mut s)?, s.log().to_vec())
        }
    };
    let code = yes_no(out.answer);
    print_outcome(d, out, log);
    Ok(code)
}

fn construct(d: &Decide) -> Result<u8, Failure> {
    let g = read_graph(&d.input)?;
    let out = match configure(d)? {
        Configured::Path(cfg) => construct_path(&g, &cfg, &mut cfg.session())?,
        Configured::Cycle(cfg) => construct_cycle(&g, &cfg, &mut cfg.session())?,
    };
    println!("{}", out.certificate);
    if d.format == Format::Structured || out.fallback {
        eprintln!("kernel_calls: {}  fallback: {}", out.kernel_calls, out.fallback);
    }
    Ok(yes_no(out.certificate.kind != tkernel::construct::CertKind::None))
}

fn solve(s: &Solve) -> Result<u8, Failure> {
    let g = read_graph(&s.input)?;
    let cfg = solver(s.time_limit_ms);
    let found = match s.problem {
        ProblemArg::Path => find_k_path(&g, s.k, &cfg)?,
        ProblemArg::Cycle => find_k_cycle(&g, s.k, &cfg)?,
    };
    let cert = match (found, s.problem) {
        (None, _) => tkernel::construct::Certificate::none(),
        (Some(v), ProblemArg::Path) => tkernel::construct::Certificate::path(v),
        (Some(v), ProblemArg::Cycle) => tkernel::construct::Certificate::cycle(v),
    };
    println!("{cert}");
    Ok(yes_no(cert.kind != tkernel::construct::CertKind::None))
}

fn gen(a: &Gen) -> Result<u8, Failure> {
    let family = Family::parse(&a.family, a.k).map_err(|e| Failure::Usage(e.to_string()))?;
    let mut g = gen_instance(family, a.n, a.seed).map_err(|e| Failure::Usage(e.to_string()))?;
    if let Some(p) = a.keep {
        if !(0.0..=1.0).contains(&p) {
            return Err(Failure::Usage(format!("--keep must be in [0, 1], got {p}")));
        }
        g = sparsify(&g, p, &mut rng(a.seed ^ 0x5eed));
    }
    println!("c family {family} n {} seed {} class {}", a.n, a.seed, family.class());
    print!("{}", write_graph(&g));
    Ok(NO)
}

fn reduce(a: &ReduceSetcover) -> Result<u8, Failure> {
    let sc = parse_setcover(&read_input(&a.input)?).map_err(|e| Failure::Usage(e.to_string()))?;
    match reduce_setcover_to_multicolored_path(&sc).map_err(|e| Failure::Usage(e.to_string()))? {
        Reduction::SolvedDirectly(b) => {
            println!("c solved directly: {}", if b { "yes" } else { "no" });
            Ok(yes_no(b))
        }
        Reduction::Instance(ci) => {
            print!("{}", write_colored(&ci));
            if a.verify {
                let lhs = exact_set_cover_dp(&sc).map_err(|e| Failure::Usage(e.to_string()))?;
                let rhs = multicolored_path_exact(&ci).map_err(|e| Failure::Usage(e.to_string()))?;
                println!("c exact cover: {lhs}  multicolored path: {rhs}  equivalent: {}", lhs == rhs);
                if lhs != rhs {
                    return Err(Failure::Limit("reduction is not equivalent on this input".into()));
                }
                return Ok(yes_no(lhs));
            }
            Ok(NO)
        }
    }
}

fn validate(a: &Validate) -> Result<u8, Failure> {
    let g = read_graph(&a.input)?;
    let class = a.class.class().map_err(Failure::Usage)?;
    match validate_class(&g, class) {
        ValidationReport::Certified => println!("certified: {class}"),
        ValidationReport::DeclaredOnly => println!("declared: {class} (not checkable)"),
        ValidationReport::Violated(v) => {
            println!("violated: {class}: {v:?}");
            return Ok(YES);
        }
    }
    Ok(NO)
}

fn decompose(a: &Input) -> Result<u8, Failure> {
    let g = read_graph(a)?;
    let td = tutte_decompose(&g);
    print!("{}", write_decomposition(td.tree()));
    Ok(NO)
}

fn cross(a: &CrossValidate) -> Result<u8, Failure> {
    let cells = match a.preset {
        Preset::Quick => quick_matrix(),
        Preset::Acceptance => acceptance_matrix(),
        Preset::Empty => Vec::new(),
    };
    let opts = HarnessOptions {
        kernel: KernelOptions {
            keep_log: true,
            mutation: a.mutate.then_some(Mutation::SkipWitnessRetention),
            ..KernelOptions::default()
        },
        construct: a.construct,
        fail_fast: false,
    };
    let summary = cross_validate(&cells, a.seed, &opts);
    match a.format {
        Format::Text => {
            print!("{}", summary.table());
            for f in summary.failures.iter().take(5) {
                println!("FAIL {} {} seed {} k {}: {}", f.problem, f.cell, f.seed, f.k, f.what);
                print!("{}", f.graph);
            }
            println!("{}", if summary.ok() { "all agree" } else { "DISAGREEMENT" });
        }
        Format::Structured => {
            let lines: Vec<serde_json::Value> = summary
                .cells
                .iter()
                .map(|c| serde_json::to_value(c).unwrap())
                .chain(summary.failures.iter().map(|f| serde_json::to_value(f).unwrap()))
                .collect();
            print!("{}", json_lines(&lines));
        }
    }
    Ok(yes_no(!summary.ok()))
}

fn main() -> ExitCode {
    // die quietly on a closed pipe (`| head`) instead of panicking in println!
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Kernelize(d) => kernelize(d),
        Command::Decompose(a) => decompose(a),
        Command::Construct(d) => construct(d),
        Command::Solve(s) => solve(s),
        Command::Gen(a) => gen(a),
        Command::ReduceSetcover(a) => reduce(a),
        Command::Validate(a) => validate(a),
        Command::CrossValidate(a) => cross(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(USAGE)
        }
        Err(Failure::Limit(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(LIMIT)
        }
    }
}
