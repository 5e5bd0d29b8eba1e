//! The `zol` command line: graph analysis, pair safety, games, sentence
//! evaluation, named constructions, experiments and the golden-check suite.
//!
//! Exit codes: `0` success, `1` a golden check failed, `2` input error,
//! `3` a budget or size cap was exceeded.

pub mod golden;

use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use zol_core::constructions::{build, ConstructionId};
use zol_core::extensions::{
    is_alpha_safe_with, safety_threshold_with, ExtensionError, SafetyOptions, SafetyThreshold, DEFAULT_FREE_VERTEX_CAP,
};
use zol_core::games::{EhrSolver, GameError, Side, SolverOptions, Winner, DEFAULT_MAX_ROUNDS, DEFAULT_MAX_VERTICES};
use zol_core::graph::{classify_balance, density, max_density, parse_graph_text, GraphError, LabeledGraphJson};
use zol_core::logic::{evaluate_with_budget, parse_sentence, EvalError, DEFAULT_NODE_BUDGET};
use zol_core::{PatternGraph, Rational, RootedPair};
use zol_experiments::{default_master_seed, run_experiment, ExperimentError, RunOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "zol", version, about = "Densities, safe extensions, existential games and G(n,p) experiments")]
struct Cli {
    /// Output format; `csv` applies to experiment summaries.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Write the result here instead of stdout.
    #[arg(short = 'o', long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Density e/v of a graph.
    Density(GraphArg),
    /// Maximum density over subgraphs, with a densest vertex set.
    Maxden(GraphArg),
    /// Balance class and density.
    Balance(GraphArg),
    /// Decide α-safety of a rooted pair.
    Safe {
        /// Pair JSON `{"graph": .., "roots": [..]}`, a file, or `-`.
        #[arg(long)]
        pair: String,
        #[arg(long)]
        alpha: Rational,
        #[arg(long, default_value_t = DEFAULT_FREE_VERTEX_CAP)]
        max_free: usize,
    },
    /// Supremum of the α for which a pair is safe.
    ThresholdAlpha {
        #[arg(long)]
        pair: String,
        #[arg(long, default_value_t = DEFAULT_FREE_VERTEX_CAP)]
        max_free: usize,
    },
    /// Solve the existential game on two graphs.
    Game {
        #[arg(long)]
        g1: String,
        #[arg(long)]
        g2: String,
        #[arg(short = 'k', long)]
        rounds: usize,
        /// Also print a sentence of depth ≤ k separating the graphs.
        #[arg(long)]
        extract: bool,
        /// Disable the transposition table.
        #[arg(long)]
        no_memo: bool,
        #[arg(long, default_value_t = DEFAULT_MAX_VERTICES)]
        max_vertices: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_ROUNDS)]
        max_rounds: usize,
    },
    /// Evaluate an existential sentence on a graph.
    Eval {
        #[command(flatten)]
        graph: GraphArg,
        /// Sentence file, `-`, or the sentence text itself.
        #[arg(short = 'f', long = "formula")]
        formula: String,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
    },
    /// Build a named construction (base-h, g0, case:N, companion:c|d, pair:L:K[:bits], phi-witness:K).
    Build { id: String },
    /// Run a seeded experiment.
    Exp {
        #[arg(value_parser = ["poisson", "threshold", "extension", "safe-ext", "nonconv"])]
        kind: String,
        /// Parameters as JSON text or a JSON file.
        #[arg(long)]
        params: String,
        /// Master seed; defaults to $ZOL_SEED, then a fixed constant.
        #[arg(long)]
        seed: Option<u64>,
        /// Worker threads (0 = all cores); never changes the result.
        #[arg(long, default_value_t = 0)]
        workers: usize,
    },
    /// Run every golden check.
    VerifyPaper,
}

#[derive(clap::Args, Debug)]
struct GraphArg {
    /// graph6 string, labeled JSON, a file holding either, or `-` for stdin.
    #[arg(short = 'g', long = "graph")]
    graph: String,
}

/// A failure with its exit code and one-line diagnostic.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl ToString) -> Self {
        Failure { code: EXIT_INPUT, message: message.to_string() }
    }

    fn budget(message: impl ToString) -> Self {
        Failure { code: EXIT_BUDGET, message: message.to_string() }
    }
}

impl From<GraphError> for Failure {
    fn from(e: GraphError) -> Self {
        Failure::input(e)
    }
}

impl From<ExtensionError> for Failure {
    fn from(e: ExtensionError) -> Self {
        match e {
            ExtensionError::TooLarge { .. } => Failure::budget(e),
            e => Failure::input(e),
        }
    }
}

impl From<GameError> for Failure {
    fn from(e: GameError) -> Self {
        match e {
            GameError::TooLarge { .. } | GameError::BadRounds { .. } => Failure::budget(e),
            e => Failure::input(e),
        }
    }
}

impl From<EvalError> for Failure {
    fn from(e: EvalError) -> Self {
        Failure::budget(e)
    }
}

impl From<ExperimentError> for Failure {
    fn from(e: ExperimentError) -> Self {
        match e {
            ExperimentError::PatternTooLarge { .. } | ExperimentError::Extension(ExtensionError::TooLarge { .. }) => {
                Failure::budget(e)
            }
            e => Failure::input(e),
        }
    }
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
    stdin_used: bool,
}

impl Io<'_> {
    /// `-` reads stdin (once); an existing path is read; anything else is
    /// taken literally.
    fn resolve(&mut self, arg: &str) -> Result<String, Failure> {
        if arg == "-" {
            if self.stdin_used {
                return Err(Failure::input("stdin requested twice"));
            }
            self.stdin_used = true;
            let mut s = String::new();
            self.stdin.read_to_string(&mut s).map_err(|e| Failure::input(format!("reading stdin: {e}")))?;
            return Ok(s);
        }
        let path = std::path::Path::new(arg);
        if path.is_file() {
            return fs::read_to_string(path).map_err(|e| Failure::input(format!("reading {arg}: {e}")));
        }
        Ok(arg.to_string())
    }

    fn graph(&mut self, arg: &str) -> Result<PatternGraph, Failure> {
        read_graph(&self.resolve(arg)?)
    }

    fn pair(&mut self, arg: &str) -> Result<RootedPair, Failure> {
        let text = self.resolve(arg)?;
        Ok(RootedPair::from_json_str(text.trim())?)
    }
}

/// graph6 or labeled JSON; a JSON object with a `graph` field (as printed by
/// `zol build`) is unwrapped first.
fn read_graph(text: &str) -> Result<PatternGraph, Failure> {
    let t = text.trim();
    if t.starts_with('{') {
        let v: Value = serde_json::from_str(t).map_err(|e| Failure::input(format!("graph JSON: {e}")))?;
        if let Some(inner) = v.get("graph") {
            return match inner {
                Value::String(s) => Ok(parse_graph_text(s)?),
                other => {
                    let l: LabeledGraphJson = serde_json::from_value(other.clone())
                        .map_err(|e| Failure::input(format!("graph JSON: {e}")))?;
                    Ok(l.to_graph()?)
                }
            };
        }
    }
    Ok(parse_graph_text(t)?)
}

fn vertex_list(vs: &[usize]) -> String {
    vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

fn side_name(s: Side) -> &'static str {
    match s {
        Side::Left => "left",
        Side::Right => "right",
    }
}

/// Text output, JSON output.
struct Output {
    text: String,
    json: Value,
}

fn execute(cli: Cli, io: &mut Io<'_>) -> Result<Output, Failure> {
    let out = match cli.command {
        Command::Density(a) => {
            let d = density(&io.graph(&a.graph)?);
            Output { text: d.to_string(), json: json!({ "density": d }) }
        }
        Command::Maxden(a) => {
            let w = max_density(&io.graph(&a.graph)?);
            Output {
                text: format!("{} {{{}}}", w.value, vertex_list(&w.vertices)),
                json: json!({ "maxden": w.value, "vertices": w.vertices }),
            }
        }
        Command::Balance(a) => {
            let g = io.graph(&a.graph)?;
            let (c, d) = (classify_balance(&g), density(&g));
            Output { text: format!("{} {d}", c.as_str()), json: json!({ "class": c.as_str(), "density": d }) }
        }
        Command::Safe { pair, alpha, max_free } => {
            let p = io.pair(&pair)?;
            let v = is_alpha_safe_with(&p, alpha, SafetyOptions { max_free_vertices: max_free })?;
            Output {
                text: format!(
                    "{} min-deficiency {} at {{{}}}",
                    if v.safe { "safe" } else { "unsafe" },
                    v.min_deficiency,
                    vertex_list(&v.witness)
                ),
                json: json!({ "alpha": alpha, "safe": v.safe, "min_deficiency": v.min_deficiency, "witness": v.witness }),
            }
        }
        Command::ThresholdAlpha { pair, max_free } => {
            let p = io.pair(&pair)?;
            let t = safety_threshold_with(&p, SafetyOptions { max_free_vertices: max_free })?;
            let j = match t {
                SafetyThreshold::Value(v) => json!({ "threshold": v }),
                SafetyThreshold::Unbounded => json!({ "threshold": "unbounded" }),
            };
            Output { text: t.to_string(), json: j }
        }
        Command::Game { g1, g2, rounds, extract, no_memo, max_vertices, max_rounds } => {
            let (a, b) = (io.graph(&g1)?, io.graph(&g2)?);
            let opts = SolverOptions { memo: !no_memo, max_vertices, max_rounds, ..SolverOptions::default() };
            let mut solver = EhrSolver::with_options(&a, &b, rounds, opts)?;
            let outcome = solver.solve();
            let winner = match outcome.winner {
                Winner::Spoiler => "Spoiler",
                Winner::Duplicator => "Duplicator",
            };
            let mut text = vec![format!("winner={winner}")];
            let mut j = json!({ "winner": winner, "rounds": rounds, "nodes": outcome.nodes });
            if let Some((side, v)) = outcome.opening {
                text.push(format!("opening={} {v}", side_name(side)));
                j["opening"] = json!({ "side": side_name(side), "vertex": v });
            }
            if extract {
                if let Some((side, s)) = solver.distinguishing_sentence() {
                    text.push(format!("true-on={}", side_name(side)));
                    text.push(format!("sentence={s}"));
                    j["sentence"] =
                        json!({ "true_on": side_name(side), "text": s.to_string(), "depth": s.quantifier_depth() });
                }
            }
            Output { text: text.join("\n"), json: j }
        }
        Command::Eval { graph, formula, budget } => {
            let g = io.graph(&graph.graph)?;
            let text = io.resolve(&formula)?;
            let s = parse_sentence(text.trim()).map_err(|e| Failure::input(format!("sentence: {e}")))?;
            let stats = evaluate_with_budget(&g, &s, budget)?;
            Output { text: stats.value.to_string(), json: json!({ "value": stats.value, "visited": stats.visited }) }
        }
        Command::Build { id } => {
            let id: ConstructionId = id.parse().map_err(Failure::input)?;
            let c = build(&id).map_err(Failure::input)?;
            let j = c.to_json();
            Output { text: j.to_string(), json: j }
        }
        Command::Exp { kind, params, seed, workers } => {
            let text = io.resolve(&params)?;
            let params: Value = serde_json::from_str(&text).map_err(|e| Failure::input(format!("params JSON: {e}")))?;
            let opts = RunOptions { seed: seed.unwrap_or_else(default_master_seed), workers };
            let rec = run_experiment(&kind, &params, &opts)?;
            let j = serde_json::to_value(&rec).expect("records are plain JSON");
            if cli.format == Format::Csv {
                let csv = rec.summary_csv().map_err(Failure::input)?;
                return Ok(Output { text: csv.trim_end().to_string(), json: j });
            }
            Output { text: rec.to_json_string(), json: j }
        }
        Command::VerifyPaper => {
            let checks = golden::golden_checks();
            let passed = checks.iter().filter(|c| c.passed).count();
            let mut lines: Vec<String> = checks
                .iter()
                .map(|c| format!("{} {}: {}", if c.passed { "ok  " } else { "FAIL" }, c.name, c.detail))
                .collect();
            lines.push(format!("{passed}/{} golden checks passed", checks.len()));
            let j = json!({ "passed": passed, "total": checks.len(), "checks": checks.iter().map(|c| c.to_json()).collect::<Vec<_>>() });
            let out = Output { text: lines.join("\n"), json: j };
            if passed != checks.len() {
                return Err(Failure { code: EXIT_CHECK_FAILED, message: render(&out, cli.format) });
            }
            out
        }
    };
    Ok(out)
}

fn render(out: &Output, format: Format) -> String {
    match format {
        Format::Json => out.json.to_string(),
        Format::Text | Format::Csv => out.text.clone(),
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code. Diagnostics go to `stderr` as one line.
pub fn run(
    args: impl IntoIterator<Item = impl Into<OsString> + Clone>,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(sink, "{rendered}");
            return code;
        }
    };
    let format = cli.format;
    let output = cli.output.clone();
    let mut io = Io { stdin, stdin_used: false };
    let (code, body) = match execute(cli, &mut io) {
        Ok(out) => (EXIT_OK, render(&out, format)),
        Err(f) if f.code == EXIT_CHECK_FAILED => (f.code, f.message),
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message.lines().next().unwrap_or(""));
            return f.code;
        }
    };
    match output {
        Some(path) => {
            if let Err(e) = fs::write(&path, format!("{body}\n")) {
                let _ = writeln!(stderr, "error: writing {}: {e}", path.display());
                return EXIT_INPUT;
            }
        }
        None => {
            let _ = writeln!(stdout, "{body}");
        }
    }
    code
}
