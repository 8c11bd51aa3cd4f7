//! `hburn`: exact proportion-based hypergraph burning from the command line.
//!
//! Exit codes: 0 success, 2 invalid input or a failed check (validation,
//! violated property, invalid sequence), 3 a solver ran out of budget, 64
//! usage error.

use std::io::{self, Read, Write};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use hyperburn::bounds::{theorem_suite, PropertyReport};
use hyperburn::designs::{
    automorphism_order, brute_force_automorphism_order, correlation_report, parse_design_corpus,
    serialize_design_corpus, shipped_corpus, shipped_design, table1_row, validate_bibd, Design, Table1Row,
};
use hyperburn::distribution::{compute_distribution, condensed_text, Distribution, Kind};
use hyperburn::generators::{gen_figure, gen_nested_chain, gen_single_edge, gen_tight_path};
use hyperburn::probes::{
    check_difference_nonmonotone_example, probe_conjecture_ceil_pv, probe_conjecture_interval_containment,
    single_edge_gap_check, ProbeRun,
};
use hyperburn::random::{random_hypergraph, RandomParams};
use hyperburn::solvers::{burning_number, lazy_burning_number, SearchConfig, Status};
use hyperburn::{parse_hypergraph, serialize_hypergraph, Hypergraph, Proportion};

const OK: u8 = 0;
const FAILED: u8 = 2;
const BUDGET: u8 = 3;
const USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "hburn", version, about = "Exact burning numbers of hypergraphs under the proportion rule")]
struct Cli {
    /// Worker threads for parallel probes and trials (results do not depend on it).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Search node budget per solve.
    #[arg(long, global = true, env = "HB_NODE_BUDGET")]
    node_budget: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Solve {
    /// Proportion as `num/den` with 0 < num < den.
    #[arg(short, long)]
    p: Proportion,
    /// Hypergraph file, or `-` for standard input.
    file: String,
    /// Machine-readable output.
    #[arg(long)]
    json: bool,
    /// Also print the witness, node count and status.
    #[arg(long, short)]
    verbose: bool,
}

#[derive(Args)]
struct Dist {
    file: String,
    #[arg(long, conflicts_with = "intervals")]
    json: bool,
    /// One `interval value` line per interval instead of the condensed list.
    #[arg(long)]
    intervals: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Lazy burning number at `p`.
    Lazy(Solve),
    /// Burning number at `p`.
    Burn(Solve),
    /// Burning distribution over (0, 1).
    Dist(Dist),
    /// Lazy burning distribution over (0, 1).
    Lazydist(Dist),
    /// Check that a hypergraph is a BIBD; omitted parameters are inferred.
    ValidateBibd {
        file: String,
        #[arg(short)]
        v: Option<usize>,
        #[arg(short)]
        k: Option<usize>,
        #[arg(short, long)]
        lambda: Option<usize>,
    },
    /// Incidence automorphism group order.
    Aut {
        file: String,
        /// Use the exhaustive engine (at most 10 points).
        #[arg(long)]
        brute_force: bool,
        #[arg(long)]
        json: bool,
    },
    /// Print a generated hypergraph.
    Gen {
        #[command(subcommand)]
        family: Family,
    },
    /// Search for counterexamples or re-check a known one; JSON lines.
    Probe(Probe),
    /// Every bound at every threshold interval of one hypergraph; JSON lines.
    Theorems { file: String },
    /// Distribution and automorphism tables for a design corpus.
    ReportTables {
        /// Design corpus file; the shipped corpus by default.
        #[arg(long)]
        corpus: Option<String>,
        #[arg(long, value_enum, default_value_t = Table::All)]
        table: Table,
        /// Skip burning distributions in the first table.
        #[arg(long)]
        no_burning: bool,
    },
    /// Play a source sequence and print the per-round trace.
    Simulate {
        #[arg(short, long)]
        p: Proportion,
        file: String,
        sources: Vec<usize>,
    },
}

#[derive(Subcommand)]
enum Family {
    /// Consecutive `k`-windows of `n` ordered vertices.
    TightPath { k: usize, n: usize },
    /// Edges {0,1}, {0,1,2}, ..., {0..n-1}.
    Nested { n: usize },
    /// One edge holding all `k` vertices.
    SingleEdge { k: usize },
    /// A fixed example: fig1, fig2, fig4, fig5.
    Figure { name: String },
    /// Seeded random hypergraph.
    Random {
        n: usize,
        m: usize,
        size_lo: usize,
        size_hi: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        dedup: bool,
        #[arg(long)]
        connected: bool,
    },
    /// A design from the shipped corpus.
    Design { name: String },
    /// The whole shipped corpus, in corpus format.
    Corpus,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ProbeName {
    /// Every lazy interval inside one burning interval.
    IntervalContainment,
    /// Lazy number at most ⌈p|V|⌉ on connected, fully flammable inputs.
    CeilPv,
    /// The full bound suite on random inputs.
    Theorems,
    /// Gap sequence 1, 1, 2, 0 on the (13,4,1) design.
    Gap13_4_1,
    /// Single-edge gap sequences for k = 2..=8.
    SingleEdgeGaps,
}

#[derive(Args)]
struct Probe {
    #[arg(value_enum)]
    name: ProbeName,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(short, default_value_t = 10)]
    n: usize,
    #[arg(short, default_value_t = 6)]
    m: usize,
    #[arg(long, default_value_t = 2)]
    size_lo: usize,
    #[arg(long, default_value_t = 6)]
    size_hi: usize,
    /// Allow parallel edges.
    #[arg(long)]
    multi: bool,
    /// Allow disconnected samples.
    #[arg(long)]
    disconnected: bool,
    /// Fixed proportion for ceil-pv (default: every interval).
    #[arg(short, long)]
    p: Option<Proportion>,
    /// Print only the summary line.
    #[arg(long)]
    summary_only: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Table {
    /// Distributions per design.
    #[value(name = "1")]
    One,
    /// Automorphism order against the lazy number at p = (k-1)/k.
    #[value(name = "2")]
    Two,
    All,
}

fn read_input(path: &str) -> Result<String> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).context("reading standard input")?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {path}"))
    }
}

fn load(path: &str) -> Result<Hypergraph> {
    Ok(parse_hypergraph(&read_input(path)?).with_context(|| format!("parsing {path}"))?)
}

struct Out {
    text: String,
    code: u8,
}

impl Out {
    fn ok(text: String) -> Self {
        Out { text, code: OK }
    }
}

fn solve(s: &Solve, burn: bool, cfg: &SearchConfig) -> Result<Out> {
    let h = load(&s.file)?;
    let (line, lower, upper, status, json) = if burn {
        let r = burning_number(&h, s.p, cfg)?;
        (r.to_string(), r.lower, r.upper, r.status, serde_json::to_value(&r)?)
    } else {
        let r = lazy_burning_number(&h, s.p, cfg)?;
        (r.to_string(), r.lower, r.upper, r.status, serde_json::to_value(&r)?)
    };
    let exact = status == Status::Exact;
    let text = if s.json {
        let mut v = json;
        v["value"] = if exact { json!(upper) } else { json!(null) };
        v.to_string()
    } else if s.verbose {
        line
    } else if exact {
        upper.to_string()
    } else {
        format!("[{lower},{upper}]")
    };
    Ok(Out {
        text: text + "\n",
        code: if exact { OK } else { BUDGET },
    })
}

fn dist(d: &Dist, kind: Kind, cfg: &SearchConfig) -> Result<Out> {
    let h = load(&d.file)?;
    let dist = compute_distribution(&h, kind, cfg)?;
    let text = if d.json {
        dist.to_json() + "\n"
    } else if d.intervals {
        dist.to_string()
    } else {
        condensed_text(&dist) + "\n"
    };
    Ok(Out {
        text,
        code: if dist.is_complete() { OK } else { BUDGET },
    })
}

fn validate(file: &str, v: Option<usize>, k: Option<usize>, lambda: Option<usize>) -> Result<Out> {
    let h = load(file)?;
    let v = v.unwrap_or(h.vertex_count());
    let k = match k {
        Some(k) => k,
        None => h.uniformity().ok_or_else(|| anyhow!("not uniform, so not a BIBD"))?,
    };
    let lambda = match lambda {
        Some(l) => l,
        None if h.vertex_count() >= 2 => h.edges().iter().filter(|e| e.contains(&0) && e.contains(&1)).count(),
        None => bail!("a BIBD needs at least two points"),
    };
    let d = validate_bibd(&h, v, k, lambda)?;
    Ok(Out::ok(format!(
        "BIBD({},{},{}) r={} b={}\n",
        d.v, d.k, d.lambda, d.r, d.b
    )))
}

fn aut(file: &str, brute: bool, as_json: bool) -> Result<Out> {
    let h = load(file)?;
    let r = if brute {
        brute_force_automorphism_order(&h)?
    } else {
        automorphism_order(&h)?
    };
    Ok(Out::ok(if as_json {
        serde_json::to_string(&r)? + "\n"
    } else {
        format!("{}\n", r.order)
    }))
}

fn generate(f: &Family) -> Result<Out> {
    let h = match f {
        Family::TightPath { k, n } => gen_tight_path(*k, *n)?,
        Family::Nested { n } => gen_nested_chain(*n)?,
        Family::SingleEdge { k } => gen_single_edge(*k)?,
        Family::Figure { name } => gen_figure(name)?,
        Family::Random {
            n,
            m,
            size_lo,
            size_hi,
            seed,
            dedup,
            connected,
        } => {
            let params = RandomParams::new(*n, *m, *size_lo, *size_hi).dedup(*dedup).connected(*connected);
            random_hypergraph(&params, *seed)?
        }
        Family::Design { name } => {
            shipped_design(name)
                .ok_or_else(|| anyhow!("no shipped design {name:?}"))?
                .hypergraph
        }
        Family::Corpus => return Ok(Out::ok(serialize_design_corpus(&shipped_corpus()))),
    };
    Ok(Out::ok(serialize_hypergraph(&h)))
}

fn json_lines(reports: &[PropertyReport]) -> String {
    reports.iter().map(|r| r.to_json_line() + "\n").collect()
}

fn run_lines(run: &ProbeRun, summary_only: bool) -> String {
    let mut s = if summary_only { String::new() } else { json_lines(&run.reports) };
    s += &(run.summary.to_json_line() + "\n");
    s
}

fn verdict(reports: &[PropertyReport]) -> u8 {
    if reports.iter().any(PropertyReport::is_violation) {
        FAILED
    } else if reports
        .iter()
        .any(|r| matches!(&r.outcome, hyperburn::bounds::Outcome::Skipped { reason } if reason.contains("budget")))
    {
        BUDGET
    } else {
        OK
    }
}

fn probe(pr: &Probe, cfg: &SearchConfig) -> Result<Out> {
    let params = RandomParams::new(pr.n, pr.m, pr.size_lo, pr.size_hi)
        .dedup(!pr.multi)
        .connected(!pr.disconnected);
    let run = match pr.name {
        ProbeName::IntervalContainment => probe_conjecture_interval_containment(&params, pr.trials, pr.seed, cfg)?,
        ProbeName::CeilPv => probe_conjecture_ceil_pv(&params, pr.p, pr.trials, pr.seed, cfg)?,
        ProbeName::Theorems => {
            let mut reports = Vec::new();
            for i in 0..pr.trials {
                let seed = pr.seed.wrapping_add(i as u64);
                let h = random_hypergraph(&params, seed)?;
                for mut r in theorem_suite(&h, cfg)? {
                    r.inputs = format!("seed={seed} {}", r.inputs);
                    reports.push(r);
                }
            }
            let text = if pr.summary_only { String::new() } else { json_lines(&reports) };
            let violations = reports.iter().filter(|r| r.is_violation()).count();
            let summary = json!({
                "property": "theorem-suite",
                "inputs": format!("trials={} seed={}", pr.trials, pr.seed),
                "checked": reports.iter().filter(|r| !r.is_skipped()).count(),
                "violations": violations,
            });
            return Ok(Out {
                text: text + &summary.to_string() + "\n",
                code: verdict(&reports),
            });
        }
        ProbeName::Gap13_4_1 => {
            let r = check_difference_nonmonotone_example(cfg)?;
            return Ok(Out {
                text: r.to_json_line() + "\n",
                code: verdict(std::slice::from_ref(&r)),
            });
        }
        ProbeName::SingleEdgeGaps => {
            let reports = (2..=8)
                .map(|k| single_edge_gap_check(k, cfg))
                .collect::<hyperburn::Result<Vec<_>>>()?;
            return Ok(Out {
                text: json_lines(&reports),
                code: verdict(&reports),
            });
        }
    };
    let mut all = run.reports.clone();
    all.push(run.summary.clone());
    Ok(Out {
        text: run_lines(&run, pr.summary_only),
        code: verdict(&all),
    })
}

fn theorems(file: &str, cfg: &SearchConfig) -> Result<Out> {
    let h = load(file)?;
    let reports = theorem_suite(&h, cfg)?;
    Ok(Out {
        text: json_lines(&reports),
        code: verdict(&reports),
    })
}

fn report_tables(corpus: Option<&str>, table: Table, with_burning: bool, cfg: &SearchConfig) -> Result<Out> {
    let designs: Vec<Design> = match corpus {
        Some(path) => parse_design_corpus(&read_input(path)?)?,
        None => shipped_corpus(),
    };
    let mut text = String::new();
    let mut complete = true;
    if table != Table::Two {
        let rows: Vec<Table1Row> = designs
            .iter()
            .map(|d| table1_row(d, cfg, with_burning))
            .collect::<hyperburn::Result<_>>()?;
        text += Table1Row::CSV_HEADER;
        text.push('\n');
        for r in &rows {
            complete &= r.lazy.is_complete() && r.burning.as_ref().map_or(true, Distribution::is_complete);
            text += &r.csv();
            text.push('\n');
        }
    }
    if table == Table::All {
        text.push('\n');
    }
    if table != Table::One {
        let rep = correlation_report(&designs, cfg)?;
        complete &= rep.rows.iter().all(|r| r.b_l.exact().is_some());
        text += &rep.to_csv();
    }
    Ok(Out {
        text,
        code: if complete { OK } else { BUDGET },
    })
}

fn simulate(p: Proportion, file: &str, sources: &[usize]) -> Result<Out> {
    let h = load(file)?;
    if let Some(&v) = sources.iter().find(|&&v| v >= h.vertex_count()) {
        bail!("source {v} is not a vertex (n = {})", h.vertex_count());
    }
    let out = hyperburn::propagation::simulate_round_game(&h, p, sources)?;
    let mut text = out.trace_text();
    text += &format!(
        "rounds={} fully_burned={} valid={}\n",
        out.rounds, out.fully_burned, out.valid
    );
    Ok(Out {
        text,
        code: if out.valid { OK } else { FAILED },
    })
}

fn run(cli: Cli) -> Result<Out> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("configuring the thread pool")?;
    }
    let mut cfg = SearchConfig::default();
    if let Some(b) = cli.node_budget {
        cfg = cfg.with_budget(b);
    }
    match &cli.command {
        Command::Lazy(s) => solve(s, false, &cfg),
        Command::Burn(s) => solve(s, true, &cfg),
        Command::Dist(d) => dist(d, Kind::Burning, &cfg),
        Command::Lazydist(d) => dist(d, Kind::Lazy, &cfg),
        Command::ValidateBibd { file, v, k, lambda } => validate(file, *v, *k, *lambda),
        Command::Aut {
            file,
            brute_force,
            json,
        } => aut(file, *brute_force, *json),
        Command::Gen { family } => generate(family),
        Command::Probe(p) => probe(p, &cfg),
        Command::Theorems { file } => theorems(file, &cfg),
        Command::ReportTables {
            corpus,
            table,
            no_burning,
        } => report_tables(corpus.as_deref(), *table, !no_burning, &cfg),
        Command::Simulate { p, file, sources } => simulate(*p, file, sources),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { USAGE } else { OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(out) => {
            let mut stdout = io::stdout().lock();
            let _ = stdout.write_all(out.text.as_bytes());
            let _ = stdout.flush();
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("hburn: {e:#}");
            ExitCode::from(FAILED)
        }
    }
}
