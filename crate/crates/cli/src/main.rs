//! `strec` — solve STR-EC-LCS instances, run differential campaigns against
//! the brute-force oracle, and benchmark solver scaling.
//!
//! Exit codes: 0 success (for `diff`: no discrepancies), 1 discrepancies
//! found, 2 usage errors (including an empty pattern), 3 unreadable input
//! file, 4 oracle size guard, 5 tensor memory guard.

use std::fmt::Write as _;
use std::io::Write as _;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use strec::difftest::{run_campaign, shrink, Discrepancy, InstanceSpec, SolverId, SplitMix64};
use strec::reference::{brute_force_oracle, chen_chao_solve, ChenChaoTable, ChenChaoVariant};
use strec::{
    solve_length_only, solve_naive, solve_optimized, ConstraintPattern, DpTensor, Error, Sequence,
    SolveOutcome,
};

#[derive(Parser)]
#[command(
    name = "strec",
    version,
    about = "Longest common subsequence of two strings excluding a forbidden substring"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a single instance
    Solve(SolveArgs),
    /// Run a randomized differential campaign against the brute-force oracle
    Diff(DiffArgs),
    /// Time solvers over a size grid and emit CSV
    Bench(BenchArgs),
}

#[derive(Args)]
struct SolveArgs {
    /// First input string; @path reads raw bytes from a file
    #[arg(long)]
    x: String,
    /// Second input string; @path reads raw bytes from a file
    #[arg(long)]
    y: String,
    /// Forbidden pattern; @path reads raw bytes from a file
    #[arg(long)]
    p: String,
    #[arg(long, value_enum, default_value_t = Algo::Optimized)]
    algo: Algo,
    #[arg(long, value_enum, default_value_t = EmitKind::Length)]
    emit: EmitKind,
}

#[derive(Args)]
struct DiffArgs {
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 10)]
    max_n: usize,
    #[arg(long, default_value_t = 10)]
    max_m: usize,
    #[arg(long, default_value_t = 4)]
    max_r: usize,
    /// Symbols instances are drawn from (each byte is one symbol)
    #[arg(long, default_value = "abc")]
    alphabet: String,
    /// Comma-separated solvers: naive, optimized, chen-chao-1, chen-chao-2
    #[arg(long, default_value = "naive,optimized")]
    solvers: String,
}

#[derive(Args)]
struct BenchArgs {
    /// Comma-separated list of n values
    #[arg(long, default_value = "500,1000")]
    n_list: String,
    /// Comma-separated list of m values
    #[arg(long, default_value = "500")]
    m_list: String,
    /// Comma-separated list of r values
    #[arg(long, default_value = "8")]
    r_list: String,
    #[arg(long, default_value = "abcd")]
    alphabet: String,
    /// Timed repetitions per configuration (the median is reported)
    #[arg(long, default_value_t = 5)]
    reps: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Comma-separated solvers to time: naive, optimized
    #[arg(long, default_value = "optimized")]
    algos: String,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algo {
    Naive,
    Optimized,
    #[value(name = "chen-chao-1")]
    ChenChao1,
    #[value(name = "chen-chao-2")]
    ChenChao2,
    Brute,
}

impl Algo {
    fn name(self) -> &'static str {
        match self {
            Algo::Naive => "naive",
            Algo::Optimized => "optimized",
            Algo::ChenChao1 => "chen-chao-1",
            Algo::ChenChao2 => "chen-chao-2",
            Algo::Brute => "brute",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EmitKind {
    Length,
    Witness,
    Json,
    Table,
}

/// A command failure carrying its exit code; the message goes to stderr.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = match err {
            Error::EmptyPattern | Error::SequenceTooLong { .. } | Error::InvalidSpec(_) => 2,
            Error::OracleBound { .. } => 4,
            Error::TensorTooLarge { .. } => 5,
            Error::InconsistentTensor { .. } => 1,
        };
        Failure::new(code, err.to_string())
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // clap prints its own message; --help and --version exit 0
            let _ = err.print();
            std::process::exit(if err.use_stderr() { 2 } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Solve(args) => cmd_solve(&args),
        Command::Diff(args) => cmd_diff(&args),
        Command::Bench(args) => cmd_bench(&args),
    };
    match result {
        Ok(code) => std::process::exit(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            std::process::exit(failure.code);
        }
    }
}

/// Inline string, or file contents when prefixed with `@` (one trailing
/// newline stripped).
fn read_source(source: &str) -> Result<Vec<u8>, Failure> {
    let Some(path) = source.strip_prefix('@') else {
        return Ok(source.as_bytes().to_vec());
    };
    let mut bytes =
        std::fs::read(path).map_err(|err| Failure::new(3, format!("cannot read {path}: {err}")))?;
    if bytes.last() == Some(&b'\n') {
        bytes.pop();
        if bytes.last() == Some(&b'\r') {
            bytes.pop();
        }
    }
    Ok(bytes)
}

#[derive(Serialize)]
struct OutputRecord {
    length: usize,
    witness: Option<String>,
    best_state: usize,
    algorithm: &'static str,
    elapsed_ns: u128,
}

fn cmd_solve(args: &SolveArgs) -> Result<i32, Failure> {
    let x = Sequence::new(read_source(&args.x)?).map_err(Failure::from)?;
    let y = Sequence::new(read_source(&args.y)?).map_err(Failure::from)?;
    let p = ConstraintPattern::new(read_source(&args.p)?).map_err(Failure::from)?;

    match (args.algo, args.emit) {
        (Algo::ChenChao1 | Algo::ChenChao2, EmitKind::Witness) => {
            return Err(Failure::new(
                2,
                format!("{} does not reconstruct a witness", args.algo.name()),
            ));
        }
        (Algo::Brute, EmitKind::Table) => {
            return Err(Failure::new(2, "brute does not build a tensor"));
        }
        _ => {}
    }

    enum Solved {
        Outcome(SolveOutcome),
        Table(ChenChaoTable),
    }

    let started = Instant::now();
    let solved = match args.algo {
        Algo::Naive => Solved::Outcome(solve_naive(&x, &y, &p)?),
        Algo::Optimized => {
            // length emission does not need the tensor, so use rolling space
            if args.emit == EmitKind::Length {
                Solved::Outcome(solve_length_only(&x, &y, &p)?)
            } else {
                Solved::Outcome(solve_optimized(&x, &y, &p)?)
            }
        }
        Algo::ChenChao1 => Solved::Table(chen_chao_solve(&x, &y, &p, ChenChaoVariant::One)?),
        Algo::ChenChao2 => Solved::Table(chen_chao_solve(&x, &y, &p, ChenChaoVariant::Two)?),
        Algo::Brute => Solved::Outcome(brute_force_oracle(&x, &y, &p)?),
    };
    let elapsed_ns = started.elapsed().as_nanos();

    match (&solved, args.emit) {
        (Solved::Outcome(out), EmitKind::Length) => println!("{}", out.length),
        (Solved::Table(table), EmitKind::Length) => println!("{}", table.length()),
        (Solved::Outcome(out), EmitKind::Witness) => {
            let mut stdout = std::io::stdout().lock();
            let witness = out.witness.as_ref().expect("witness mode outcome");
            stdout
                .write_all(witness.symbols())
                .and_then(|_| stdout.write_all(b"\n"))
                .map_err(|err| Failure::new(1, err.to_string()))?;
        }
        (Solved::Table(_), EmitKind::Witness) => unreachable!("rejected above"),
        (Solved::Outcome(out), EmitKind::Json) => {
            let record = OutputRecord {
                length: out.length,
                witness: out
                    .witness
                    .as_ref()
                    .map(|w| String::from_utf8_lossy(w.symbols()).into_owned()),
                best_state: out.best_state,
                algorithm: args.algo.name(),
                elapsed_ns,
            };
            println!(
                "{}",
                serde_json::to_string(&record).expect("serializable record")
            );
        }
        (Solved::Table(table), EmitKind::Json) => {
            let record = OutputRecord {
                length: table.length(),
                witness: None,
                // the refuted method reads its answer off the k = r plane
                best_state: table.r(),
                algorithm: args.algo.name(),
                elapsed_ns,
            };
            println!(
                "{}",
                serde_json::to_string(&record).expect("serializable record")
            );
        }
        (Solved::Outcome(out), EmitKind::Table) => {
            let tensor = out.tensor.as_ref().expect("tensor mode outcome");
            print!("{}", render_f_table(tensor));
        }
        (Solved::Table(table), EmitKind::Table) => print!("{}", render_l_table(table)),
    }
    Ok(0)
}

/// One plane per state k, rows i = 1..n, columns j = 1..m.
fn render_f_table(tensor: &DpTensor) -> String {
    let mut out = String::new();
    for k in 0..tensor.states() {
        let _ = writeln!(out, "k={k}");
        for i in 1..=tensor.n() {
            let row: Vec<String> = (1..=tensor.m())
                .map(|j| tensor.get(i, j, k).to_string())
                .collect();
            let _ = writeln!(out, "{}", row.join(" "));
        }
    }
    out
}

fn render_l_table(table: &ChenChaoTable) -> String {
    let mut out = String::new();
    for k in 0..=table.r() {
        let _ = writeln!(out, "k={k}");
        for i in 1..=table.n() {
            let row: Vec<String> = (1..=table.m())
                .map(|j| table.get(i, j, k).to_string())
                .collect();
            let _ = writeln!(out, "{}", row.join(" "));
        }
    }
    out
}

#[derive(Serialize)]
struct ReportedLength {
    solver: &'static str,
    length: usize,
}

#[derive(Serialize)]
struct WitnessError {
    solver: &'static str,
    error: String,
}

#[derive(Serialize)]
struct DiscrepancyRecord {
    trial: u64,
    x: String,
    y: String,
    p: String,
    expected: usize,
    reported: Vec<ReportedLength>,
    witness_errors: Vec<WitnessError>,
    minimized: bool,
}

impl DiscrepancyRecord {
    fn from_discrepancy(d: &Discrepancy) -> Self {
        DiscrepancyRecord {
            trial: d.trial,
            x: String::from_utf8_lossy(d.x.symbols()).into_owned(),
            y: String::from_utf8_lossy(d.y.symbols()).into_owned(),
            p: String::from_utf8_lossy(d.pattern.symbols()).into_owned(),
            expected: d.expected,
            reported: d
                .reported
                .iter()
                .map(|&(solver, length)| ReportedLength {
                    solver: solver.name(),
                    length,
                })
                .collect(),
            witness_errors: d
                .witness_errors
                .iter()
                .map(|(solver, error)| WitnessError {
                    solver: solver.name(),
                    error: error.clone(),
                })
                .collect(),
            minimized: d.minimized,
        }
    }
}

fn parse_solvers(list: &str) -> Result<Vec<SolverId>, Failure> {
    let mut solvers = Vec::new();
    for name in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let solver: SolverId = name
            .parse()
            .map_err(|_| Failure::new(2, format!("unknown solver: {name}")))?;
        if !solvers.contains(&solver) {
            solvers.push(solver);
        }
    }
    if solvers.is_empty() {
        return Err(Failure::new(2, "at least one solver is required"));
    }
    Ok(solvers)
}

fn cmd_diff(args: &DiffArgs) -> Result<i32, Failure> {
    let solvers = parse_solvers(&args.solvers)?;
    let spec = InstanceSpec {
        max_n: args.max_n,
        max_m: args.max_m,
        max_r: args.max_r,
        alphabet: args.alphabet.clone().into_bytes(),
        seed: args.seed,
        trials: args.trials,
    };
    let report = run_campaign(&spec, &solvers)?;

    let mut summary = format!(
        "trials={} discrepancies={}",
        report.trials,
        report.discrepancies.len()
    );
    if let Some(first) = report.discrepancies.first() {
        let minimized = shrink(first)?;
        let record = DiscrepancyRecord::from_discrepancy(&minimized.discrepancy);
        let _ = write!(
            summary,
            " first_minimized={}",
            serde_json::to_string(&record).expect("serializable record")
        );
    }
    println!("{summary}");
    for d in &report.discrepancies {
        let record = DiscrepancyRecord::from_discrepancy(d);
        println!(
            "{}",
            serde_json::to_string(&record).expect("serializable record")
        );
    }
    Ok(if report.discrepancies.is_empty() {
        0
    } else {
        1
    })
}

fn parse_size_list(list: &str, flag: &str) -> Result<Vec<usize>, Failure> {
    let mut sizes = Vec::new();
    for part in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let size: usize = part
            .parse()
            .map_err(|_| Failure::new(2, format!("{flag}: invalid size {part}")))?;
        sizes.push(size);
    }
    if sizes.is_empty() {
        return Err(Failure::new(
            2,
            format!("{flag}: at least one size is required"),
        ));
    }
    Ok(sizes)
}

/// Instance for one bench configuration: a pure function of (seed, n, m, r)
/// so every solver times identical inputs.
fn bench_instance(
    seed: u64,
    n: usize,
    m: usize,
    r: usize,
    alphabet: &[u8],
) -> Result<(Sequence, Sequence, ConstraintPattern), Failure> {
    let mixed = seed
        ^ (n as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
        ^ (m as u64).wrapping_mul(0xBF58_476D_1CE4_E5B9)
        ^ (r as u64).wrapping_mul(0x94D0_49BB_1331_11EB);
    let mut rng = SplitMix64::new(mixed);
    let mut draw = |len: usize| -> Vec<u8> {
        (0..len)
            .map(|_| alphabet[rng.next_below(alphabet.len() as u64) as usize])
            .collect()
    };
    let x = Sequence::new(draw(n)).map_err(Failure::from)?;
    let y = Sequence::new(draw(m)).map_err(Failure::from)?;
    let p = ConstraintPattern::new(draw(r)).map_err(Failure::from)?;
    Ok((x, y, p))
}

fn cmd_bench(args: &BenchArgs) -> Result<i32, Failure> {
    if args.reps == 0 {
        return Err(Failure::new(2, "reps must be at least 1"));
    }
    if args.alphabet.is_empty() {
        return Err(Failure::new(2, "alphabet must not be empty"));
    }
    let ns = parse_size_list(&args.n_list, "--n-list")?;
    let ms = parse_size_list(&args.m_list, "--m-list")?;
    let rs = parse_size_list(&args.r_list, "--r-list")?;
    if rs.contains(&0) {
        return Err(Failure::new(
            2,
            "--r-list: pattern length must be at least 1",
        ));
    }
    let mut algos = Vec::new();
    for name in args
        .algos
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
    {
        match name {
            "naive" => algos.push(Algo::Naive),
            "optimized" => algos.push(Algo::Optimized),
            other => {
                return Err(Failure::new(2, format!("cannot bench solver: {other}")));
            }
        }
    }
    if algos.is_empty() {
        return Err(Failure::new(2, "at least one solver is required"));
    }

    println!("n,m,r,algo,median_ns");
    for &n in &ns {
        for &m in &ms {
            for &r in &rs {
                let (x, y, p) = bench_instance(args.seed, n, m, r, args.alphabet.as_bytes())?;
                for &algo in &algos {
                    let run = || -> Result<usize, Error> {
                        match algo {
                            Algo::Naive => Ok(solve_naive(&x, &y, &p)?.length),
                            Algo::Optimized => Ok(solve_length_only(&x, &y, &p)?.length),
                            _ => unreachable!("filtered during parsing"),
                        }
                    };
                    run()?; // warmup, also surfaces size errors before timing
                    let mut times: Vec<u128> = Vec::with_capacity(args.reps);
                    for _ in 0..args.reps {
                        let started = Instant::now();
                        run()?;
                        times.push(started.elapsed().as_nanos());
                    }
                    times.sort_unstable();
                    let median = times[(times.len() - 1) / 2];
                    println!("{n},{m},{r},{},{median}", algo.name());
                }
            }
        }
    }
    Ok(0)
}
