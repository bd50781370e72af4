mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use log::{debug, info};
use mac_core::exact::{chi_mac, decide_kmac, ChiOutcome, Verdict as SearchVerdict, DEFAULT_BUDGET};
use mac_core::generators::{expand_sts, gen_sts, random_good_graph};
use mac_core::greedy::{greedy_recolor, quadratic_bound, random_order};
use mac_core::lll::{lll_color_with, LllOptions, DEFAULT_MAX_RESAMPLES};
use mac_core::reductions::{nae_to_mac2, subdivide3, NaeFormula, ProvenanceMap};
use mac_core::{
    is_good, one_mac_check, verify, BigColor, BigColoring, Error, GoodnessWitness, Graph, GraphFormat,
};
use rayon::prelude::*;
use serde_json::{json, Value};

use report::{violation_entries, Digest256, RunReport, Stats, ViolationEntry};

#[derive(Parser)]
#[command(name = "mac", version, about = "Majority additive graph coloring tools")]
struct Cli {
    /// Print a single JSON report on stdout instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GraphArg {
    /// Graph file, DIMACS `.col` or edge list (detected from content).
    #[arg(short = 'g', long = "graph")]
    path: PathBuf,
}

#[derive(Args)]
struct GraphOut {
    /// Write the graph here instead of stdout.
    #[arg(short = 'o', long = "out")]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutFormat::Dimacs)]
    format: OutFormat,
}

#[derive(Subcommand)]
enum Command {
    /// Check a coloring for majority additivity.
    Check {
        #[command(flatten)]
        graph: GraphArg,
        /// Coloring file with `vertexIndex color` lines.
        #[arg(short = 'c', long)]
        coloring: PathBuf,
    },
    /// Decide whether the graph admits any majority additive coloring.
    Good {
        #[command(flatten)]
        graph: GraphArg,
    },
    /// Greedy recoloring starting from powers of two.
    Greedy {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long, value_enum, default_value_t = Order::Default)]
        order: Order,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the coloring here.
        #[arg(short = 'o', long)]
        out: Option<PathBuf>,
    },
    /// Random coloring with resampling, for graphs with private neighbors.
    Lll {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_MAX_RESAMPLES)]
        max_resamples: u64,
        /// Override the computed number of colors.
        #[arg(short = 'k', long)]
        k: Option<u64>,
        /// Independent runs with seeds `seed, seed+1, ...`.
        #[arg(long, default_value_t = 1)]
        trials: u64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Write the coloring of the first run here.
        #[arg(short = 'o', long)]
        out: Option<PathBuf>,
    },
    /// Exact decision for a fixed number of colors; without `--k`, same as `chi`.
    Exact {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(short = 'k', long)]
        k: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Write the witness coloring here.
        #[arg(short = 'o', long)]
        out: Option<PathBuf>,
    },
    /// Majority additive chromatic number.
    Chi {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Write the witness coloring here.
        #[arg(short = 'o', long)]
        out: Option<PathBuf>,
    },
    /// Generate graphs.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Build reduction gadgets.
    Reduce {
        #[command(subcommand)]
        kind: ReduceKind,
    },
    /// Decide whether the all-ones coloring works.
    Onemac {
        #[command(flatten)]
        graph: GraphArg,
    },
}

#[derive(Subcommand)]
enum GenKind {
    /// Expansion of a Steiner triple system on `n` points.
    Sts {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: GraphOut,
    },
    /// Random good graph from G(n, p).
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: GraphOut,
    },
}

#[derive(Subcommand)]
enum ReduceKind {
    /// NAE-3SAT formula (DIMACS CNF) to a 2-coloring instance.
    Nae3sat {
        #[arg(short = 'f', long)]
        formula: PathBuf,
        /// Write the vertex roles as JSON here.
        #[arg(long)]
        map: Option<PathBuf>,
        #[command(flatten)]
        out: GraphOut,
    },
    /// Subdivide every edge into a path of length four.
    Subdivide {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        map: Option<PathBuf>,
        #[command(flatten)]
        out: GraphOut,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Order {
    Default,
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Dimacs,
    Edges,
}

impl From<OutFormat> for GraphFormat {
    fn from(f: OutFormat) -> Self {
        match f {
            OutFormat::Dimacs => GraphFormat::DimacsCol,
            OutFormat::Edges => GraphFormat::EdgeList,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Verdict {
    Positive,
    Negative,
    Usage,
    Unknown,
}

impl Verdict {
    fn code(self) -> u8 {
        match self {
            Verdict::Positive => 0,
            Verdict::Negative => 1,
            Verdict::Usage => 2,
            Verdict::Unknown => 3,
        }
    }
}

#[derive(Debug)]
struct Failure {
    verdict: Verdict,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            verdict: Verdict::Usage,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let verdict = match e {
            Error::NotGood { .. } => Verdict::Negative,
            Error::ResampleBudgetExceeded(_) | Error::IterationBudgetExceeded(_) | Error::RetriesExhausted(_) => {
                Verdict::Unknown
            }
            _ => Verdict::Usage,
        };
        Failure {
            verdict,
            message: e.to_string(),
        }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

/// What a subcommand produced, before rendering.
struct Run {
    verdict: Verdict,
    outcome: Value,
    stats: Stats,
    violations: Vec<ViolationEntry>,
    lines: Vec<String>,
    /// Generated graph text; goes to stdout when no `-o` was given.
    graph_payload: Option<String>,
}

impl Run {
    fn new(verdict: Verdict, outcome: Value) -> Self {
        Run {
            verdict,
            outcome,
            stats: Stats::default(),
            violations: Vec::new(),
            lines: Vec::new(),
            graph_payload: None,
        }
    }

    fn line(mut self, text: impl Into<String>) -> Self {
        self.lines.push(text.into());
        self
    }
}

struct Inputs {
    digest: Digest256,
}

impl Inputs {
    fn read(&mut self, path: &Path) -> CliResult<String> {
        let bytes = fs::read(path).map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
        self.digest.update(&bytes);
        String::from_utf8(bytes).map_err(|_| Failure::usage(format!("{} is not UTF-8", path.display())))
    }

    fn graph(&mut self, arg: &GraphArg) -> CliResult<Graph> {
        let text = self.read(&arg.path)?;
        let format = GraphFormat::detect(&text);
        debug!("reading {} as {:?}", arg.path.display(), format);
        let g = Graph::parse(&text, format).map_err(|e| Failure::usage(format!("{}: {e}", arg.path.display())))?;
        info!("graph: {} vertices, {} edges", g.n(), g.edge_count());
        Ok(g)
    }
}

fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    fs::write(path, contents).map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))
}

fn coloring_json<T: ToString>(values: &[T]) -> Value {
    Value::Array(values.iter().map(|c| Value::String(c.to_string())).collect())
}

fn goodness_line(w: &GoodnessWitness) -> String {
    match w {
        GoodnessWitness::Good => "good".into(),
        GoodnessWitness::Bad { vertex, class } => {
            format!("not good: vertex {vertex} has neighbors {class:?} with identical neighborhoods")
        }
    }
}

fn run(cli: &Cli, inputs: &mut Inputs) -> CliResult<Run> {
    match &cli.command {
        Command::Check { graph, coloring } => {
            let g = inputs.graph(graph)?;
            let text = inputs.read(coloring)?;
            let c = BigColoring::parse(&text).map_err(|e| Failure::usage(format!("{}: {e}", coloring.display())))?;
            c.check_domain(&g)?;
            let report = verify(&g, &c);
            let valid = report.is_valid();
            let verdict = if valid { Verdict::Positive } else { Verdict::Negative };
            let mut run = Run::new(verdict, json!({ "verdict": if valid { "valid" } else { "invalid" } }));
            run.stats.max_color = c.max_color().map(|m| m.to_string());
            run.violations = violation_entries(&report);
            if valid {
                run.lines.push("valid".into());
            } else {
                run.lines.push(format!("invalid: {} violation(s)", report.len()));
                for v in &report.violations {
                    run.lines.push(format!(
                        "violation at vertex {}: neighbors {:?} share sum {}",
                        v.vertex, v.witnesses, v.sum
                    ));
                }
            }
            Ok(run)
        }
        Command::Good { graph } => {
            let g = inputs.graph(graph)?;
            let w = is_good(&g);
            let verdict = if w.is_good() { Verdict::Positive } else { Verdict::Negative };
            let line = goodness_line(&w);
            Ok(Run::new(verdict, serde_json::to_value(&w).expect("serializable")).line(line))
        }
        Command::Onemac { graph } => {
            let g = inputs.graph(graph)?;
            let yes = one_mac_check(&g);
            let word = if yes { "yes" } else { "no" };
            let verdict = if yes { Verdict::Positive } else { Verdict::Negative };
            let mut run = Run::new(verdict, json!({ "verdict": word })).line(word);
            if !yes {
                let ones = mac_core::Coloring::<u64>::ones(g.n());
                run.violations = violation_entries(&verify(&g, &ones));
            }
            Ok(run)
        }
        Command::Greedy { graph, order, seed, out } => {
            let g = inputs.graph(graph)?;
            let order_vec = match order {
                Order::Default => None,
                Order::Random => Some(random_order(g.n(), *seed)),
            };
            let c: BigColoring = greedy_recolor(&g, order_vec.as_deref())?;
            let report = verify(&g, &c);
            if !report.is_valid() {
                return Err(Failure::usage("internal error: greedy output failed verification"));
            }
            let max = c.max_color().cloned().unwrap_or_else(|| BigColor::from(0u8));
            let bound = quadratic_bound(g.max_degree());
            if let Some(path) = out {
                write_file(path, &c.to_text())?;
            }
            let mut run = Run::new(
                Verdict::Positive,
                json!({
                    "verdict": "colored",
                    "max_color": max.to_string(),
                    "bound": bound.to_string(),
                    "coloring": coloring_json(c.values()),
                }),
            )
            .line(format!("max color {max} (bound {bound})"));
            run.stats.max_color = Some(max.to_string());
            Ok(run)
        }
        Command::Lll {
            graph,
            seed,
            max_resamples,
            k,
            trials,
            jobs,
            out,
        } => {
            let g = inputs.graph(graph)?;
            if *trials == 0 {
                return Err(Failure::usage("--trials must be positive"));
            }
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(*jobs)
                .build()
                .map_err(|e| Failure::usage(format!("thread pool: {e}")))?;
            let results: Vec<_> = pool.install(|| {
                (0..*trials)
                    .into_par_iter()
                    .map(|t| {
                        let options = LllOptions {
                            seed: seed.wrapping_add(t),
                            max_resamples: *max_resamples,
                            k: *k,
                        };
                        lll_color_with(&g, &options)
                    })
                    .collect()
            });
            let mut outcomes = Vec::with_capacity(results.len());
            for r in results {
                outcomes.push(r?);
            }
            for o in &outcomes {
                if !verify(&g, &o.coloring).is_valid() {
                    return Err(Failure::usage("internal error: sampled coloring failed verification"));
                }
            }
            let first = &outcomes[0];
            if let Some(path) = out {
                write_file(path, &first.coloring.to_text())?;
            }
            let resamples: Vec<u64> = outcomes.iter().map(|o| o.resamples).collect();
            let max = first.coloring.max_color().copied().unwrap_or(0);
            let total: u64 = resamples.iter().sum();
            let mut run = Run::new(
                Verdict::Positive,
                json!({
                    "verdict": "colored",
                    "k": first.k,
                    "resamples_per_trial": resamples,
                    "coloring": coloring_json(first.coloring.values()),
                }),
            )
            .line(format!("k {}", first.k))
            .line(format!("resamples {}", resamples.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")))
            .line(format!("max color {max}"));
            run.stats.max_color = Some(max.to_string());
            run.stats.resamples = Some(total);
            Ok(run)
        }
        Command::Exact {
            graph,
            k: Some(k),
            budget,
            out,
        } => {
            let g = inputs.graph(graph)?;
            if *k == 0 {
                return Err(Failure::usage("--k must be positive"));
            }
            let outcome = decide_kmac(&g, *k, *budget);
            let (verdict, word) = match &outcome.verdict {
                SearchVerdict::Yes(_) => (Verdict::Positive, "yes"),
                SearchVerdict::No => (Verdict::Negative, "no"),
                SearchVerdict::Unknown => (Verdict::Unknown, "unknown"),
            };
            let mut value = json!({ "verdict": word, "k": k });
            if let Some(w) = outcome.witness() {
                if let Some(path) = out {
                    write_file(path, &w.to_text())?;
                }
                value["coloring"] = coloring_json(w.values());
            }
            let mut run = Run::new(verdict, value).line(word);
            run.stats.nodes_explored = Some(outcome.nodes_explored);
            run.stats.max_color = outcome.witness().and_then(|w| w.max_color()).map(u64::to_string);
            Ok(run)
        }
        Command::Exact {
            graph,
            k: None,
            budget,
            out,
        }
        | Command::Chi { graph, budget, out } => {
            let g = inputs.graph(graph)?;
            match chi_mac(&g, *budget) {
                ChiOutcome::Value { chi, witness } => {
                    if let Some(path) = out {
                        write_file(path, &witness.to_text())?;
                    }
                    let mut run = Run::new(
                        Verdict::Positive,
                        json!({ "verdict": "value", "chi": chi, "coloring": coloring_json(witness.values()) }),
                    )
                    .line(chi.to_string());
                    run.stats.max_color = witness.max_color().map(u64::to_string);
                    Ok(run)
                }
                ChiOutcome::NotGood(w) => {
                    let line = goodness_line(&w);
                    Ok(Run::new(Verdict::Negative, json!({ "verdict": "not_good", "witness": w })).line(line))
                }
                ChiOutcome::Unknown { k } => Ok(Run::new(Verdict::Unknown, json!({ "verdict": "unknown", "k": k }))
                    .line(format!("unknown: budget exhausted deciding k = {k} (all smaller k refuted)"))),
            }
        }
        Command::Gen { kind } => match kind {
            GenKind::Sts { n, out } => {
                let ts = gen_sts(*n)?;
                let g = expand_sts(&ts);
                let outcome = json!({
                    "verdict": "generated",
                    "blocks": ts.blocks,
                    "vertices": g.n(),
                    "edges": g.edge_count(),
                    "max_degree": g.max_degree(),
                });
                graph_run(
                    &g,
                    out,
                    outcome,
                    format!(
                        "triple system on {n} points with {} blocks; expansion has {} vertices, {} edges, max degree {}",
                        ts.blocks.len(),
                        g.n(),
                        g.edge_count(),
                        g.max_degree()
                    ),
                )
            }
            GenKind::Random { n, p, seed, out } => {
                if !(0.0..=1.0).contains(p) {
                    return Err(Failure::usage("--p must lie in [0, 1]"));
                }
                let g = random_good_graph(*n, *p, *seed)?;
                let outcome = json!({ "verdict": "generated", "vertices": g.n(), "edges": g.edge_count() });
                graph_run(
                    &g,
                    out,
                    outcome,
                    format!("good graph with {} vertices, {} edges", g.n(), g.edge_count()),
                )
            }
        },
        Command::Reduce { kind } => match kind {
            ReduceKind::Nae3sat { formula, map, out } => {
                let text = inputs.read(formula)?;
                let f = NaeFormula::parse(&text).map_err(|e| Failure::usage(format!("{}: {e}", formula.display())))?;
                let (g, roles) = nae_to_mac2(&f);
                write_map(map, &roles)?;
                let outcome = json!({
                    "verdict": "reduced",
                    "variables": f.n_vars(),
                    "clauses": f.clauses().len(),
                    "vertices": g.n(),
                    "edges": g.edge_count(),
                });
                graph_run(
                    &g,
                    out,
                    outcome,
                    format!(
                        "gadget for {} variables, {} clauses: {} vertices, {} edges",
                        f.n_vars(),
                        f.clauses().len(),
                        g.n(),
                        g.edge_count()
                    ),
                )
            }
            ReduceKind::Subdivide { graph, map, out } => {
                let g = inputs.graph(graph)?;
                let (h, roles) = subdivide3(&g);
                write_map(map, &roles)?;
                let outcome = json!({ "verdict": "reduced", "vertices": h.n(), "edges": h.edge_count() });
                graph_run(
                    &h,
                    out,
                    outcome,
                    format!("subdivision: {} vertices, {} edges", h.n(), h.edge_count()),
                )
            }
        },
    }
}

fn write_map(path: &Option<PathBuf>, roles: &ProvenanceMap) -> CliResult<()> {
    if let Some(path) = path {
        let text = serde_json::to_string_pretty(roles).expect("serializable");
        write_file(path, &text)?;
    }
    Ok(())
}

fn graph_run(g: &Graph, out: &GraphOut, outcome: Value, summary: String) -> CliResult<Run> {
    let text = g.to_text(out.format.into());
    let mut run = Run::new(Verdict::Positive, outcome).line(summary);
    match &out.out {
        Some(path) => write_file(path, &text)?,
        None => run.graph_payload = Some(text),
    }
    Ok(run)
}

fn is_generator(cmd: &Command) -> bool {
    matches!(cmd, Command::Gen { .. } | Command::Reduce { .. })
}

fn has_out(cmd: &Command) -> bool {
    match cmd {
        Command::Gen {
            kind: GenKind::Sts { out, .. } | GenKind::Random { out, .. },
        } => out.out.is_some(),
        Command::Reduce {
            kind: ReduceKind::Nae3sat { out, .. } | ReduceKind::Subdivide { out, .. },
        } => out.out.is_some(),
        _ => true,
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter("MAC_LOG")).init();
    let cli = Cli::parse();
    let argv: Vec<String> = std::env::args().skip(1).collect();

    if cli.json && is_generator(&cli.command) && !has_out(&cli.command) {
        eprintln!("error: --json needs -o/--out for generated graphs");
        return ExitCode::from(Verdict::Usage.code());
    }

    let start = Instant::now();
    let mut inputs = Inputs {
        digest: Digest256::default(),
    };
    let result = run(&cli, &mut inputs);
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    let input_digest = inputs.digest.finish();

    let run = match result {
        Ok(mut run) => {
            run.stats.wall_ms = wall_ms;
            run
        }
        Err(failure) => {
            if cli.json {
                let report = RunReport {
                    command: argv,
                    input_digest,
                    outcome: json!({ "verdict": "error", "message": failure.message }),
                    stats: Stats {
                        wall_ms,
                        ..Stats::default()
                    },
                    violations: Vec::new(),
                };
                println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
            } else {
                eprintln!("error: {}", failure.message);
            }
            return ExitCode::from(failure.verdict.code());
        }
    };

    let code = run.verdict.code();
    if cli.json {
        let report = RunReport {
            command: argv,
            input_digest,
            outcome: run.outcome,
            stats: run.stats,
            violations: run.violations,
        };
        println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
    } else if let Some(payload) = run.graph_payload {
        print!("{payload}");
        for line in run.lines {
            eprintln!("{line}");
        }
    } else {
        for line in run.lines {
            println!("{line}");
        }
    }
    ExitCode::from(code)
}
