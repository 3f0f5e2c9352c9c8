//! Command-line interface. One thin binary wraps the library:
//! `solve`, `min-pebbles`, `bennett`, `validate`, `schedule`, `render`,
//! `bench`, `gen`, and `sat` (a DIMACS front-end for the embedded
//! solver, handy for debugging encodings and for self-hosted testing of
//! the external-solver protocol).
//!
//! Exit codes: 0 success / strategy found, 2 no strategy or failed
//! validation, 1 usage or I/O errors. SAT-competition codes 10/20 for
//! `sat`.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

use crate::encode::parse_dimacs;
use crate::graph::{gen_and_tree, gen_random_dag, parse_dag, Dag};
use crate::render::{render_ascii, render_svg};
use crate::schedule::emit_schedule;
use crate::search::{default_k_max, min_pebbles, min_steps, SearchOutcome, SearchStatus};
use crate::solve::{solve_clauses, Backend, Status};
use crate::strategy::{bennett, validate, Mode, PebblingStrategy, StrategyError};

#[derive(Parser)]
#[command(
    name = "qpebble",
    version,
    about = "Reversible pebbling strategies for dependency graphs under a qubit budget"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Find a minimum-step strategy for a fixed pebble budget
    Solve(SolveArgs),
    /// Sweep pebble budgets downward and report the trade-off frontier
    MinPebbles(MinPebblesArgs),
    /// Emit the compute-all-then-uncompute baseline strategy
    Bennett(InOutArgs),
    /// Check a strategy against the pebbling rules
    Validate(ValidateArgs),
    /// Convert a strategy into a reversible-circuit schedule
    Schedule(ScheduleArgs),
    /// Draw a strategy as a pebbling grid with its memory profile
    Render(RenderArgs),
    /// Run the solver over a directory of graphs and tabulate results
    Bench(BenchArgs),
    /// Generate a graph: balanced AND tree or random DAG
    Gen(GenArgs),
    /// Decide a DIMACS CNF file with the embedded solver
    Sat(SatArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CliMode {
    #[value(name = "seq", alias = "sequential")]
    Seq,
    #[value(name = "par", alias = "parallel")]
    Par,
}

impl From<CliMode> for Mode {
    fn from(m: CliMode) -> Mode {
        match m {
            CliMode::Seq => Mode::Sequential,
            CliMode::Par => Mode::Parallel,
        }
    }
}

#[derive(Args)]
struct BackendOpts {
    /// External solver command (DIMACS path is appended as last arg)
    #[arg(long, env = "PEBBLE_SOLVER", conflicts_with = "embedded")]
    solver: Option<String>,
    /// Force the embedded solver even when PEBBLE_SOLVER is set
    #[arg(long)]
    embedded: bool,
}

impl BackendOpts {
    fn backend(&self) -> Backend {
        match (&self.solver, self.embedded) {
            (Some(cmd), false) => Backend::External(cmd.clone()),
            _ => Backend::Embedded,
        }
    }
}

#[derive(Args)]
struct SearchOpts {
    /// Move discipline: one move per step (seq) or simultaneous (par)
    #[arg(long, value_enum, default_value_t = CliMode::Seq)]
    mode: CliMode,
    /// Time budget per search point, in milliseconds
    #[arg(long, default_value_t = 120_000)]
    timeout: u64,
    /// Cap on the step count (default: 4 * number of nodes)
    #[arg(long)]
    k_max: Option<usize>,
}

#[derive(Args)]
struct SolveArgs {
    /// Graph file in the DAG text format
    input: PathBuf,
    /// Pebble budget
    #[arg(long)]
    pebbles: usize,
    #[command(flatten)]
    search: SearchOpts,
    #[command(flatten)]
    backend: BackendOpts,
    /// Write the strategy JSON here instead of stdout
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct MinPebblesArgs {
    input: PathBuf,
    #[command(flatten)]
    search: SearchOpts,
    #[command(flatten)]
    backend: BackendOpts,
    /// Write the best strategy JSON here
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct InOutArgs {
    input: PathBuf,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ValidateArgs {
    /// Graph file
    input: PathBuf,
    /// Strategy JSON file
    strategy: PathBuf,
    /// Also reject idle steps (and, in sequential mode, require exactly
    /// one move per step)
    #[arg(long)]
    strict: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ScheduleFormat {
    Text,
    Json,
}

#[derive(Args)]
struct ScheduleArgs {
    input: PathBuf,
    strategy: PathBuf,
    #[arg(long, value_enum, default_value_t = ScheduleFormat::Text)]
    format: ScheduleFormat,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RenderFormat {
    Ascii,
    Svg,
}

#[derive(Args)]
struct RenderArgs {
    input: PathBuf,
    strategy: PathBuf,
    #[arg(long, value_enum, default_value_t = RenderFormat::Ascii)]
    format: RenderFormat,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Text,
    Csv,
}

#[derive(Args)]
struct BenchArgs {
    /// Directory of .dag files
    dir: PathBuf,
    #[command(flatten)]
    search: SearchOpts,
    #[command(flatten)]
    backend: BackendOpts,
    #[arg(long, value_enum, default_value_t = TableFormat::Text)]
    format: TableFormat,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
#[command(group(ArgGroup::new("kind").required(true).args(["and", "nodes"])))]
struct GenArgs {
    /// Balanced AND-reduction tree over this many primary inputs
    #[arg(long)]
    and: Option<usize>,
    /// Random DAG with this many nodes
    #[arg(long)]
    nodes: Option<usize>,
    /// Max dependencies per node (random DAGs)
    #[arg(long, default_value_t = 2)]
    max_deps: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SatArgs {
    /// DIMACS CNF file
    input: PathBuf,
    #[arg(long, default_value_t = 120_000)]
    timeout: u64,
}

/// Parse `args` and run; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let result = match cli.command {
        Command::Solve(args) => cmd_solve(args),
        Command::MinPebbles(args) => cmd_min_pebbles(args),
        Command::Bennett(args) => cmd_bennett(args),
        Command::Validate(args) => cmd_validate(args),
        Command::Schedule(args) => cmd_schedule(args),
        Command::Render(args) => cmd_render(args),
        Command::Bench(args) => cmd_bench(args),
        Command::Gen(args) => cmd_gen(args),
        Command::Sat(args) => cmd_sat(args),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

type CmdResult = Result<i32, Box<dyn std::error::Error>>;

fn load_dag(path: &Path) -> Result<Dag, Box<dyn std::error::Error>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let (dag, stripped) = parse_dag(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    if stripped > 0 {
        eprintln!(
            "warning: {}: stripped {stripped} dead node(s) outside every output cone",
            path.display()
        );
    }
    Ok(dag)
}

fn load_strategy(path: &Path) -> Result<PebblingStrategy, Box<dyn std::error::Error>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    Ok(serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?)
}

fn emit(output: Option<&Path>, content: &str) -> std::io::Result<()> {
    match output {
        Some(path) => std::fs::write(path, content),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn strategy_json(s: &PebblingStrategy) -> String {
    let mut json = serde_json::to_string_pretty(s).expect("strategies serialize");
    json.push('\n');
    json
}

fn cmd_solve(args: SolveArgs) -> CmdResult {
    let dag = load_dag(&args.input)?;
    let k_max = args.search.k_max.unwrap_or_else(|| default_k_max(&dag));
    let outcome = min_steps(
        &dag,
        args.pebbles,
        args.search.mode.into(),
        &args.backend.backend(),
        k_max,
        args.search.timeout,
    )?;
    match outcome.status {
        SearchStatus::Found => {
            let strategy = outcome.strategy.expect("found outcome carries a strategy");
            let summary = format!(
                "P={} K={} time={}ms\n",
                outcome.pebbles,
                outcome.steps.unwrap(),
                outcome.total_time_ms
            );
            if args.output.is_some() {
                emit(args.output.as_deref(), &strategy_json(&strategy))?;
                print!("{summary}");
            } else {
                eprint!("{summary}");
                print!("{}", strategy_json(&strategy));
            }
            Ok(0)
        }
        _ => {
            eprintln!(
                "no strategy found: {}",
                outcome.diagnostic.unwrap_or_else(|| "search failed".into())
            );
            Ok(2)
        }
    }
}

fn cmd_min_pebbles(args: MinPebblesArgs) -> CmdResult {
    let dag = load_dag(&args.input)?;
    let k_max = args.search.k_max.unwrap_or_else(|| default_k_max(&dag));
    let outcomes = min_pebbles(
        &dag,
        args.search.mode.into(),
        &args.backend.backend(),
        args.search.timeout,
        k_max,
    )?;
    for o in &outcomes {
        match o.status {
            SearchStatus::Found => {
                println!(
                    "P={} K={} time={}ms",
                    o.pebbles,
                    o.steps.unwrap(),
                    o.total_time_ms
                )
            }
            _ => println!(
                "P={} not found ({}) time={}ms",
                o.pebbles,
                o.diagnostic.as_deref().unwrap_or("gave up"),
                o.total_time_ms
            ),
        }
    }
    let best = outcomes
        .iter()
        .rev()
        .find(|o| o.status == SearchStatus::Found);
    match best {
        Some(o) => {
            println!("best: P={} K={}", o.pebbles, o.steps.unwrap());
            if args.output.is_some() {
                emit(
                    args.output.as_deref(),
                    &strategy_json(o.strategy.as_ref().unwrap()),
                )?;
            }
            Ok(0)
        }
        None => {
            eprintln!("no strategy found at any budget");
            Ok(2)
        }
    }
}

fn cmd_bennett(args: InOutArgs) -> CmdResult {
    let dag = load_dag(&args.input)?;
    let s = bennett(&dag);
    let summary = format!("P={} K={}\n", s.peak_pebbles(), s.num_steps());
    if args.output.is_some() {
        emit(args.output.as_deref(), &strategy_json(&s))?;
        print!("{summary}");
    } else {
        eprint!("{summary}");
        print!("{}", strategy_json(&s));
    }
    Ok(0)
}

fn cmd_validate(args: ValidateArgs) -> CmdResult {
    let dag = load_dag(&args.input)?;
    let s = load_strategy(&args.strategy)?;
    match validate(&dag, &s, args.strict) {
        Ok(()) => {
            println!(
                "ok: {} steps, peak {} pebbles (bound {})",
                s.num_steps(),
                s.peak_pebbles(),
                s.pebbles_declared
            );
            Ok(0)
        }
        Err(v) => {
            println!("invalid: {v}");
            Ok(2)
        }
    }
}

fn cmd_schedule(args: ScheduleArgs) -> CmdResult {
    let dag = load_dag(&args.input)?;
    let s = load_strategy(&args.strategy)?;
    let sched = match emit_schedule(&dag, &s) {
        Ok(sched) => sched,
        Err(StrategyError::Invalid(v)) => {
            eprintln!("invalid strategy: {v}");
            return Ok(2);
        }
        Err(e) => return Err(e.into()),
    };
    let content = match args.format {
        ScheduleFormat::Text => sched.to_text(),
        ScheduleFormat::Json => {
            let mut json = serde_json::to_string_pretty(&sched)?;
            json.push('\n');
            json
        }
    };
    emit(args.output.as_deref(), &content)?;
    Ok(0)
}

fn cmd_render(args: RenderArgs) -> CmdResult {
    let dag = load_dag(&args.input)?;
    let s = load_strategy(&args.strategy)?;
    let content = match args.format {
        RenderFormat::Ascii => render_ascii(&s, &dag),
        RenderFormat::Svg => render_svg(&s, &dag),
    };
    emit(args.output.as_deref(), &content)?;
    Ok(0)
}

fn cmd_gen(args: GenArgs) -> CmdResult {
    let dag = match (args.and, args.nodes) {
        (Some(inputs), None) => gen_and_tree(inputs)?,
        (None, Some(nodes)) => {
            if nodes == 0 || args.max_deps == 0 {
                return Err("--nodes and --max-deps must be positive".into());
            }
            gen_random_dag(nodes, args.max_deps, args.seed)
        }
        _ => unreachable!("clap group enforces exactly one"),
    };
    emit(args.output.as_deref(), &dag.to_text())?;
    Ok(0)
}

struct BenchRow {
    name: String,
    pi: usize,
    po: usize,
    nodes: usize,
    bennett_p: usize,
    bennett_k: usize,
    pebbling: Option<(usize, usize)>,
    runtime_s: f64,
}

impl BenchRow {
    fn pct_p(&self) -> Option<f64> {
        self.pebbling
            .map(|(p, _)| 100.0 * (1.0 - p as f64 / self.bennett_p as f64))
    }

    fn x_k(&self) -> Option<f64> {
        self.pebbling.map(|(_, k)| k as f64 / self.bennett_k as f64)
    }
}

fn cmd_bench(args: BenchArgs) -> CmdResult {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(&args.dir)
        .map_err(|e| format!("cannot read {}: {e}", args.dir.display()))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|ext| ext == "dag"))
        .collect();
    paths.sort();

    let backend = args.backend.backend();
    let mode: Mode = args.search.mode.into();
    let mut rows = Vec::new();
    for path in &paths {
        let dag = match load_dag(path) {
            Ok(dag) => dag,
            Err(e) => {
                eprintln!("warning: skipping {}: {e}", path.display());
                continue;
            }
        };
        let k_max = args.search.k_max.unwrap_or_else(|| default_k_max(&dag));
        let outcomes = min_pebbles(&dag, mode, &backend, args.search.timeout, k_max)?;
        let runtime_ms: u64 = outcomes.iter().map(|o| o.total_time_ms).sum();
        let best: Option<&SearchOutcome> = outcomes
            .iter()
            .rev()
            .find(|o| o.status == SearchStatus::Found);
        let baseline = bennett(&dag);
        rows.push(BenchRow {
            name: path
                .file_stem()
                .unwrap_or_default()
                .to_string_lossy()
                .into_owned(),
            pi: dag.num_primary_inputs(),
            po: dag.outputs().len(),
            nodes: dag.len(),
            bennett_p: baseline.peak_pebbles(),
            bennett_k: baseline.num_steps(),
            pebbling: best.map(|o| (o.pebbles, o.steps.unwrap())),
            runtime_s: runtime_ms as f64 / 1000.0,
        });
    }

    let content = match args.format {
        TableFormat::Text => bench_text(&rows),
        TableFormat::Csv => bench_csv(&rows),
    };
    emit(args.output.as_deref(), &content)?;
    Ok(0)
}

fn bench_averages(rows: &[BenchRow]) -> (String, String) {
    let pct: Vec<f64> = rows.iter().filter_map(BenchRow::pct_p).collect();
    let xk: Vec<f64> = rows.iter().filter_map(BenchRow::x_k).collect();
    let avg = |v: &[f64]| -> String {
        if v.is_empty() {
            "n/a".into()
        } else {
            format!("{:.2}", v.iter().sum::<f64>() / v.len() as f64)
        }
    };
    (avg(&pct), avg(&xk))
}

fn bench_footer_lines(rows: &[BenchRow]) -> [String; 3] {
    let (pct, xk) = bench_averages(rows);
    [
        "Baseline: compute-all-then-uncompute (P = nodes, K = 2*nodes - outputs).".into(),
        format!("Average percentage reduction of pebbles = {pct}"),
        format!("Average multiplicative factor for the number of steps = {xk}"),
    ]
}

fn bench_text(rows: &[BenchRow]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<16} {:>4} {:>4} {:>6} | {:>6} {:>6} | {:>6} {:>6} {:>9} | {:>7} {:>6}",
        "name", "pi", "po", "nodes", "ben P", "ben K", "P", "K", "runtime", "%P", "xK"
    );
    for r in rows {
        let (p, k) = match r.pebbling {
            Some((p, k)) => (p.to_string(), k.to_string()),
            None => ("-".into(), "-".into()),
        };
        let pct = r.pct_p().map_or("-".into(), |v| format!("{v:.2}"));
        let xk = r.x_k().map_or("-".into(), |v| format!("{v:.2}"));
        let _ = writeln!(
            out,
            "{:<16} {:>4} {:>4} {:>6} | {:>6} {:>6} | {:>6} {:>6} {:>8.2}s | {:>7} {:>6}",
            r.name, r.pi, r.po, r.nodes, r.bennett_p, r.bennett_k, p, k, r.runtime_s, pct, xk
        );
    }
    for line in bench_footer_lines(rows) {
        let _ = writeln!(out, "{line}");
    }
    out
}

fn bench_csv(rows: &[BenchRow]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "name,pi,po,nodes,bennett_p,bennett_k,pebbling_p,pebbling_k,runtime_s,pct_p,x_k"
    );
    for r in rows {
        let (p, k) = match r.pebbling {
            Some((p, k)) => (p.to_string(), k.to_string()),
            None => (String::new(), String::new()),
        };
        let pct = r.pct_p().map_or(String::new(), |v| format!("{v:.2}"));
        let xk = r.x_k().map_or(String::new(), |v| format!("{v:.2}"));
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{:.2},{},{}",
            r.name, r.pi, r.po, r.nodes, r.bennett_p, r.bennett_k, p, k, r.runtime_s, pct, xk
        );
    }
    for line in bench_footer_lines(rows) {
        let _ = writeln!(out, "# {line}");
    }
    out
}

fn cmd_sat(args: SatArgs) -> CmdResult {
    let text = std::fs::read_to_string(&args.input)
        .map_err(|e| format!("cannot read {}: {e}", args.input.display()))?;
    let (num_vars, clauses) = parse_dimacs(&text)?;
    let result = solve_clauses(num_vars, &clauses, args.timeout);
    match result.status {
        Status::Sat => {
            println!("s SATISFIABLE");
            let model = result.model.expect("sat result carries a model");
            let mut line = String::from("v");
            for (i, &value) in model.iter().enumerate() {
                let lit = if value { i as i64 + 1 } else { -(i as i64 + 1) };
                let _ = write!(line, " {lit}");
                if line.len() > 72 {
                    println!("{line}");
                    line = String::from("v");
                }
            }
            println!("{line} 0");
            Ok(10)
        }
        Status::Unsat => {
            println!("s UNSATISFIABLE");
            Ok(20)
        }
        Status::Timeout => {
            println!("s UNKNOWN");
            Ok(0)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::SIX_NODE_TEXT;

    fn write(dir: &tempfile::TempDir, name: &str, content: &str) -> PathBuf {
        let path = dir.path().join(name);
        std::fs::write(&path, content).unwrap();
        path
    }

    fn run_cli(args: &[&str]) -> i32 {
        run(std::iter::once("qpebble").chain(args.iter().copied()))
    }

    #[test]
    fn solve_writes_a_strategy_that_validates() {
        let dir = tempfile::tempdir().unwrap();
        let dag = write(&dir, "six.dag", SIX_NODE_TEXT);
        let out = dir.path().join("strategy.json");
        let code = run_cli(&[
            "solve",
            dag.to_str().unwrap(),
            "--pebbles",
            "4",
            "--embedded",
            "-o",
            out.to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
        let s: PebblingStrategy =
            serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
        assert_eq!(s.num_steps(), 12);
        assert!(s.peak_pebbles() <= 4);

        // and the validate subcommand agrees
        let code = run_cli(&["validate", dag.to_str().unwrap(), out.to_str().unwrap()]);
        assert_eq!(code, 0);
    }

    #[test]
    fn solve_reports_infeasible_budgets_with_exit_2() {
        let dir = tempfile::tempdir().unwrap();
        let dag = write(&dir, "six.dag", SIX_NODE_TEXT);
        let code = run_cli(&[
            "solve",
            dag.to_str().unwrap(),
            "--pebbles",
            "2",
            "--embedded",
        ]);
        assert_eq!(code, 2);
    }

    #[test]
    fn usage_errors_exit_1() {
        assert_eq!(run_cli(&["solve"]), 1); // missing input and --pebbles
        assert_eq!(run_cli(&["frobnicate"]), 1);
        let dir = tempfile::tempdir().unwrap();
        let dag = write(&dir, "six.dag", SIX_NODE_TEXT);
        // conflicting backend selectors are rejected
        assert_eq!(
            run_cli(&[
                "solve",
                dag.to_str().unwrap(),
                "--pebbles",
                "4",
                "--embedded",
                "--solver",
                "foo"
            ]),
            1
        );
    }

    #[test]
    fn missing_file_exits_1() {
        assert_eq!(run_cli(&["solve", "/nonexistent.dag", "--pebbles", "4"]), 1);
        assert_eq!(run_cli(&["bennett", "/nonexistent.dag"]), 1);
    }

    #[test]
    fn bennett_validate_schedule_render_pipeline() {
        let dir = tempfile::tempdir().unwrap();
        let dag = write(&dir, "six.dag", SIX_NODE_TEXT);
        let strat = dir.path().join("bennett.json");
        assert_eq!(
            run_cli(&[
                "bennett",
                dag.to_str().unwrap(),
                "-o",
                strat.to_str().unwrap()
            ]),
            0
        );
        assert_eq!(
            run_cli(&[
                "validate",
                dag.to_str().unwrap(),
                strat.to_str().unwrap(),
                "--strict"
            ]),
            0
        );

        let sched = dir.path().join("schedule.txt");
        assert_eq!(
            run_cli(&[
                "schedule",
                dag.to_str().unwrap(),
                strat.to_str().unwrap(),
                "-o",
                sched.to_str().unwrap()
            ]),
            0
        );
        let text = std::fs::read_to_string(&sched).unwrap();
        assert!(text.starts_with("qubits 10 inputs 4 ancillae 6"), "{text}");
        assert_eq!(text.lines().filter(|l| l.starts_with("compute")).count(), 6);
        assert_eq!(
            text.lines().filter(|l| l.starts_with("uncompute")).count(),
            4
        );

        let svg = dir.path().join("grid.svg");
        assert_eq!(
            run_cli(&[
                "render",
                dag.to_str().unwrap(),
                strat.to_str().unwrap(),
                "--format",
                "svg",
                "-o",
                svg.to_str().unwrap()
            ]),
            0
        );
        assert!(std::fs::read_to_string(&svg).unwrap().contains("<svg"));
    }

    #[test]
    fn validate_rejects_corrupted_strategies_with_exit_2() {
        let dir = tempfile::tempdir().unwrap();
        let dag = write(&dir, "six.dag", SIX_NODE_TEXT);
        let bogus = write(
            &dir,
            "bogus.json",
            r#"{"mode":"sequential","pebbles":6,"configs":[[],["E"]]}"#,
        );
        assert_eq!(
            run_cli(&["validate", dag.to_str().unwrap(), bogus.to_str().unwrap()]),
            2
        );
        // a schedule of an invalid strategy fails the same way
        assert_eq!(
            run_cli(&["schedule", dag.to_str().unwrap(), bogus.to_str().unwrap()]),
            2
        );
    }

    #[test]
    fn gen_produces_parseable_graphs() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("tree.dag");
        assert_eq!(
            run_cli(&["gen", "--and", "9", "-o", out.to_str().unwrap()]),
            0
        );
        let dag = load_dag(&out).unwrap();
        assert_eq!(dag.len(), 8);
        assert_eq!(dag.num_primary_inputs(), 9);

        let out = dir.path().join("rand.dag");
        assert_eq!(
            run_cli(&[
                "gen",
                "--nodes",
                "6",
                "--max-deps",
                "2",
                "--seed",
                "11",
                "-o",
                out.to_str().unwrap()
            ]),
            0
        );
        assert_eq!(load_dag(&out).unwrap().len(), 6);

        // both kinds at once is a usage error
        assert_eq!(run_cli(&["gen", "--and", "4", "--nodes", "4"]), 1);
    }

    #[test]
    fn bench_table_on_a_small_directory() {
        let dir = tempfile::tempdir().unwrap();
        write(&dir, "six.dag", SIX_NODE_TEXT);
        write(&dir, "chain.dag", "node x\nnode y x\noutput y\n");
        write(&dir, "broken.dag", "node a a\noutput a\n"); // skipped with a warning
        write(&dir, "notes.txt", "not a graph");
        let out = dir.path().join("table.csv");
        let code = run_cli(&[
            "bench",
            dir.path().to_str().unwrap(),
            "--embedded",
            "--format",
            "csv",
            "-o",
            out.to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
        let csv = std::fs::read_to_string(&out).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(
            lines[0],
            "name,pi,po,nodes,bennett_p,bennett_k,pebbling_p,pebbling_k,runtime_s,pct_p,x_k"
        );
        // rows sorted by filename: chain before six
        assert!(lines[1].starts_with("chain,0,1,2,2,3,2,3,"));
        assert!(lines[2].starts_with("six,4,2,6,6,10,4,12,"));
        assert!(csv.contains("Average percentage reduction of pebbles"));
        assert!(csv.contains("Average multiplicative factor for the number of steps"));
    }

    #[test]
    fn bench_of_empty_directory_prints_header_and_footer_only() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("empty.txt");
        let code = run_cli(&[
            "bench",
            dir.path().to_str().unwrap(),
            "-o",
            out.to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
        let text = std::fs::read_to_string(&out).unwrap();
        assert!(text.contains("name"));
        assert!(text.contains("= n/a"));
    }

    #[test]
    fn sat_subcommand_exit_codes() {
        let dir = tempfile::tempdir().unwrap();
        let sat = write(&dir, "sat.cnf", "p cnf 2 2\n1 2 0\n-1 2 0\n");
        assert_eq!(run_cli(&["sat", sat.to_str().unwrap()]), 10);
        let unsat = write(&dir, "unsat.cnf", "p cnf 1 2\n1 0\n-1 0\n");
        assert_eq!(run_cli(&["sat", unsat.to_str().unwrap()]), 20);
    }

    #[test]
    fn csv_and_text_tables_agree_field_for_field() {
        let dir = tempfile::tempdir().unwrap();
        write(&dir, "chain.dag", "node x\nnode y x\noutput y\n");
        let csv_path = dir.path().join("t.csv");
        let txt_path = dir.path().join("t.txt");
        for (fmt, path) in [("csv", &csv_path), ("text", &txt_path)] {
            assert_eq!(
                run_cli(&[
                    "bench",
                    dir.path().to_str().unwrap(),
                    "--format",
                    fmt,
                    "-o",
                    path.to_str().unwrap(),
                ]),
                0
            );
        }
        let csv = std::fs::read_to_string(&csv_path).unwrap();
        let txt = std::fs::read_to_string(&txt_path).unwrap();
        let csv_row: Vec<String> = csv
            .lines()
            .nth(1)
            .unwrap()
            .split(',')
            .map(String::from)
            .collect();
        let txt_row: Vec<String> = txt
            .lines()
            .nth(1)
            .unwrap()
            .split_whitespace()
            .filter(|t| *t != "|")
            .map(|t| t.trim_end_matches('s').to_string())
            .collect();
        assert_eq!(csv_row, txt_row);
    }
}
