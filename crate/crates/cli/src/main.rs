//! `prodmatch` command-line front end.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use prodmatch::construct::{classify_construction, construct, normalize_boxast, predicted_size, SizeInputs};
use prodmatch::corpus::{self, RandomSpec};
use prodmatch::descriptor::parse_descriptor;
use prodmatch::io::{parse_edge_set, to_dot};
use prodmatch::matching::{enumerate_k_matchings, is_k_matching, max_k_matching, uniform_degree};
use prodmatch::scenario::{builtin_scenarios, find_builtin, run_scenario_with, RunReport, ScenarioSpec};
use prodmatch::search::DEFAULT_BUDGET;
use prodmatch::suite::{run_suite, Corpus, SuiteConfig};
use prodmatch::weak_hom::{allowed_edges, enumerate_whp, max_whp_k_matching};
use prodmatch::{
    product, well_behaved, ConstructionKind, EdgeSet, Error, Graph, Orientation, ProductGraph, ProductKind, Verdict,
};
use rayon::prelude::*;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "prodmatch", version, about = "k-matchings in graph products")]
struct Cli {
    /// Output format; `dot` only where there is a graph to draw.
    #[arg(long, global = true, value_enum)]
    out: Option<Format>,
    /// Node budget of each exact search.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Exit with status 3 when a search ran out of budget.
    #[arg(long, global = true)]
    strict: bool,
    /// Seed for random corpus generation.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Build a graph product.
    Product {
        #[arg(long)]
        kind: ProductKind,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Exact k-matching number with a canonical maximum witness.
    Solve {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        k: u32,
        /// Also count all k-matchings.
        #[arg(long)]
        enumerate: bool,
    },
    /// Lift factor matchings to the product.
    Construct {
        #[arg(long)]
        kind: ConstructionKind,
        #[arg(long = "product")]
        product_kind: ProductKind,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        /// Edge set of the left factor: a file or inline text.
        #[arg(long)]
        mg: String,
        #[arg(long)]
        mh: String,
        #[arg(long, default_value = "gh")]
        orientation: Orientation,
        /// Keep both boxast inputs even when one is perfect.
        #[arg(long)]
        no_normalize: bool,
    },
    /// Decide well-behavedness of m_k of a product.
    Wellbehaved {
        #[arg(long)]
        flavor: ConstructionKind,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long)]
        star: ProductKind,
        #[arg(long)]
        k: u32,
    },
    /// Weak-homomorphism preserving k-matchings.
    Whp {
        #[arg(long = "product")]
        product_kind: ProductKind,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long)]
        mg: String,
        #[arg(long)]
        mh: String,
        #[arg(long)]
        k: u32,
        /// Maximum member (the default).
        #[arg(long)]
        max: bool,
        #[arg(long)]
        enumerate: bool,
    },
    /// Run bundled or user scenarios.
    Scenario {
        /// Bundled scenario names; all of them when empty.
        names: Vec<String>,
        /// JSON file with one scenario or an array of them.
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long)]
        list: bool,
    },
    /// Run every check over a corpus.
    Suite {
        /// Directory of graph files; the built-in corpus when absent.
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long, default_value_t = 5)]
        max_n: usize,
        #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
        k: Vec<u32>,
        /// Use this many seeded random connected graphs instead.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 6)]
        order: usize,
        #[arg(long, default_value_t = 0.3)]
        edge_probability: f64,
        #[arg(long)]
        no_determinism: bool,
    },
}

enum Status {
    Pass,
    Fail,
    Unknown,
}

struct Output {
    json: Value,
    table: String,
    dot: Option<String>,
    status: Status,
}

fn status(pass: bool, exhaustive: bool) -> Status {
    match (pass, exhaustive) {
        (false, _) => Status::Fail,
        (true, false) => Status::Unknown,
        (true, true) => Status::Pass,
    }
}

fn read_edge_set(g: &Graph, arg: &str) -> prodmatch::Result<EdgeSet> {
    let path = Path::new(arg);
    if path.is_file() {
        parse_edge_set(g, &std::fs::read_to_string(path)?)
    } else {
        parse_edge_set(g, &arg.replace(';', "\n"))
    }
}

fn factors(left: &str, right: &str, kind: ProductKind) -> prodmatch::Result<ProductGraph> {
    Ok(product(&parse_descriptor(left)?, &parse_descriptor(right)?, kind))
}

fn edge_lines(g: &Graph, m: &EdgeSet) -> String {
    let mut s = String::new();
    for (a, b) in m.labeled(g) {
        let _ = writeln!(s, "  {a} -- {b}");
    }
    s
}

fn cmd_product(kind: ProductKind, left: &str, right: &str) -> prodmatch::Result<Output> {
    let p = factors(left, right, kind)?;
    let g = &p.graph;
    let doc = prodmatch::io::GraphDoc::from(g);
    let mut table = format!("{kind} product: {} vertices, {} edges\n", g.order(), g.size());
    table.push_str(&edge_lines(g, &g.all_edges()));
    Ok(Output {
        json: json!({ "kind": kind, "order": g.order(), "size": g.size(), "vertices": doc.vertices, "edges": doc.edges }),
        table,
        dot: Some(to_dot(g, None)),
        status: Status::Pass,
    })
}

fn cmd_solve(graph: &str, k: u32, enumerate: bool, budget: u64) -> prodmatch::Result<Output> {
    let g = parse_descriptor(graph)?;
    let r = max_k_matching(&g, k, budget)?;
    let mut json = serde_json::to_value(&r)?;
    let mut table = format!("m_{k} = {}\nu_{k} = {}\nexhaustive = {}\nwitness:\n", r.m_k, r.u_k, r.exhaustive);
    table.push_str(&edge_lines(&g, &r.witness_ids));
    if enumerate {
        let count = enumerate_k_matchings(&g, k)?.len();
        json["enumeration_count"] = count.into();
        let _ = writeln!(table, "k-matchings (with the empty set) = {count}");
    }
    Ok(Output {
        json,
        table,
        dot: Some(to_dot(&g, Some(&r.witness_ids))),
        status: status(true, r.exhaustive),
    })
}

#[allow(clippy::too_many_arguments)]
fn cmd_construct(
    kind: ConstructionKind,
    product_kind: ProductKind,
    left: &str,
    right: &str,
    mg: &str,
    mh: &str,
    orientation: Orientation,
    normalize: bool,
) -> prodmatch::Result<Output> {
    let p = factors(left, right, product_kind)?;
    let mut mg = read_edge_set(&p.left, mg)?;
    let mut mh = read_edge_set(&p.right, mh)?;
    if normalize && kind == ConstructionKind::Boxast {
        let k = uniform_degree(&p.left, &mg).or(uniform_degree(&p.right, &mh)).unwrap_or(1);
        (mg, mh) = normalize_boxast(&p.left, &p.right, &mg, &mh, k);
    }
    let built = construct(kind, &p, &mg, &mh, orientation)?;
    let class = classify_construction(kind, &p, &mg, &mh, orientation)?;
    let valid = class.k.is_some_and(|k| is_k_matching(&p.graph, &built.edges, k));
    let predicted = match (class.k_g, class.k_h) {
        (Some(kg), Some(kh)) => {
            Some(predicted_size(kind, orientation, &SizeInputs::of(&p.left, &p.right, &mg, &mh, kg, kh))?)
        }
        _ => None,
    };
    let parts: Vec<Value> = built
        .parts
        .iter()
        .map(|part| json!({ "name": part.name, "edges": part.edges.labeled(&p.graph) }))
        .collect();
    let mut table = format!(
        "{kind} on the {product_kind} product\nsize = {}\npredicted = {}\nk-matching = {valid} (k = {})\ncondition = {}\n",
        built.len(),
        predicted.map_or("-".to_string(), |s| s.to_string()),
        class.k.map_or("-".to_string(), |k| k.to_string()),
        class.condition,
    );
    table.push_str(&edge_lines(&p.graph, &built.edges));
    Ok(Output {
        json: json!({
            "kind": kind,
            "product": product_kind,
            "orientation": built.orientation,
            "m_g": mg.labeled(&p.left),
            "m_h": mh.labeled(&p.right),
            "edges": built.edges.labeled(&p.graph),
            "parts": parts,
            "classification": class,
            "valid": valid,
            "predicted_size": predicted,
            "actual_size": built.len(),
        }),
        table,
        dot: Some(to_dot(&p.graph, Some(&built.edges))),
        status: Status::Pass,
    })
}

fn cmd_wellbehaved(
    flavor: ConstructionKind,
    left: &str,
    right: &str,
    star: ProductKind,
    k: u32,
    budget: u64,
) -> prodmatch::Result<Output> {
    let g = parse_descriptor(left)?;
    let h = parse_descriptor(right)?;
    let r = well_behaved::check(flavor, &g, &h, star, k, budget)?;
    let table = format!(
        "m_{k}({left} {star} {right}) is {flavor}-well-behaved: {}\nexhaustive = {}\n",
        r.verdict, r.exhaustive
    );
    Ok(Output {
        json: serde_json::to_value(&r)?,
        table,
        dot: None,
        status: status(true, r.verdict != Verdict::Unknown),
    })
}

#[allow(clippy::too_many_arguments)]
fn cmd_whp(
    product_kind: ProductKind,
    left: &str,
    right: &str,
    mg: &str,
    mh: &str,
    k: u32,
    enumerate: bool,
    budget: u64,
) -> prodmatch::Result<Output> {
    let p = factors(left, right, product_kind)?;
    let mg = read_edge_set(&p.left, mg)?;
    let mh = read_edge_set(&p.right, mh)?;
    let universe = allowed_edges(&p, &mg, &mh)?;
    let r = max_whp_k_matching(&p, &mg, &mh, k, budget)?;
    let mut json = json!({
        "product": product_kind,
        "k": k,
        "universe_size": universe.allowed.len(),
        "maximum_size": r.m_k,
        "u_k": r.u_k,
        "witness": r.witness,
        "exhaustive": r.exhaustive,
    });
    let mut table = format!(
        "allowed edges = {}\nmaximum size = {}\nexhaustive = {}\nwitness:\n",
        universe.allowed.len(),
        r.m_k,
        r.exhaustive
    );
    table.push_str(&edge_lines(&p.graph, &r.witness_ids));
    if enumerate {
        let count = enumerate_whp(&p, &mg, &mh, k)?.len();
        json["enumeration_count"] = count.into();
        let _ = writeln!(table, "members (with the empty set) = {count}");
    }
    Ok(Output {
        json,
        table,
        dot: Some(to_dot(&p.graph, Some(&r.witness_ids))),
        status: status(true, r.exhaustive),
    })
}

fn load_scenarios(names: &[String], file: Option<&Path>) -> prodmatch::Result<Vec<ScenarioSpec>> {
    let mut specs = Vec::new();
    if let Some(path) = file {
        let text = std::fs::read_to_string(path)?;
        let value: Value = serde_json::from_str(&text)?;
        match value {
            Value::Array(items) => {
                for item in items {
                    specs.push(serde_json::from_value(item)?);
                }
            }
            other => specs.push(serde_json::from_value(other)?),
        }
    }
    for name in names {
        specs.push(find_builtin(name).ok_or_else(|| Error::InvalidParameter(format!("no bundled scenario {name:?}")))?);
    }
    if names.is_empty() && file.is_none() {
        specs = builtin_scenarios();
    }
    Ok(specs)
}

fn cmd_scenario(names: &[String], file: Option<&Path>, list: bool, budget: u64) -> prodmatch::Result<Output> {
    if list {
        let all = builtin_scenarios();
        let mut table = String::new();
        for s in &all {
            let _ = writeln!(table, "{:<22} {}", s.name, s.description);
        }
        let json = all.iter().map(|s| json!({ "name": s.name, "description": s.description })).collect();
        return Ok(Output { json: Value::Array(json), table, dot: None, status: Status::Pass });
    }
    let specs = load_scenarios(names, file)?;
    let mut reports: Vec<RunReport> = specs
        .par_iter()
        .map(|s| run_scenario_with(s, budget))
        .collect::<prodmatch::Result<_>>()?;
    reports.sort_by(|a, b| a.scenario.cmp(&b.scenario));
    let mut table = String::new();
    for r in &reports {
        let _ = writeln!(table, "{:<22} {}", r.scenario, if r.pass { "PASS" } else { "FAIL" });
        for (i, step) in r.steps.iter().enumerate() {
            for e in step.expectations.iter().filter(|e| !e.pass) {
                let measured = e.measured.as_ref().map_or("-".to_string(), |v| v.to_string());
                let _ = writeln!(table, "  step {i}: {} expected {} got {measured}", e.key, e.expected);
            }
        }
    }
    let pass = reports.iter().all(|r| r.pass);
    let exhaustive = reports.iter().all(|r| r.exhaustive);
    Ok(Output {
        json: serde_json::to_value(&reports)?,
        table,
        dot: None,
        status: status(pass, exhaustive),
    })
}

#[allow(clippy::too_many_arguments)]
fn cmd_suite(
    dir: Option<&Path>,
    max_n: usize,
    ks: &[u32],
    random: Option<usize>,
    order: usize,
    edge_probability: f64,
    determinism: bool,
    cli: &Cli,
) -> prodmatch::Result<Output> {
    let max_k = ks.iter().copied().max().ok_or_else(|| Error::InvalidParameter("--k needs a value".into()))?;
    if let Some(&bad) = ks.iter().find(|&&k| k == 0) {
        return Err(Error::InvalidK(bad));
    }
    let (corpus, bundled) = match (dir, random) {
        (Some(dir), _) => {
            let graphs = corpus::from_dir(dir)?.into_iter().map(|(_, g)| g).collect();
            (Corpus::from_graphs(&dir.display().to_string(), graphs), false)
        }
        (None, Some(count)) => {
            let spec = RandomSpec { seed: cli.seed, count, order, edge_probability };
            (Corpus::from_graphs(&format!("random-seed{}", cli.seed), corpus::random_connected(&spec)?), false)
        }
        (None, None) => (Corpus::builtin(max_n)?, true),
    };
    let cfg = SuiteConfig {
        max_k,
        budget: cli.budget,
        scenarios: bundled,
        determinism,
        threads: cli.threads,
        ..SuiteConfig::default()
    };
    let ledger = run_suite(&corpus, &cfg)?;
    Ok(Output {
        json: serde_json::from_str(&ledger.to_json()?)?,
        table: ledger.to_table(),
        dot: None,
        status: status(ledger.pass(), ledger.unknown() == 0),
    })
}

fn run(cli: &Cli) -> prodmatch::Result<Output> {
    let b = cli.budget;
    match &cli.command {
        Command::Product { kind, left, right } => cmd_product(*kind, left, right),
        Command::Solve { graph, k, enumerate } => cmd_solve(graph, *k, *enumerate, b),
        Command::Construct { kind, product_kind, left, right, mg, mh, orientation, no_normalize } => {
            cmd_construct(*kind, *product_kind, left, right, mg, mh, *orientation, !no_normalize)
        }
        Command::Wellbehaved { flavor, left, right, star, k } => cmd_wellbehaved(*flavor, left, right, *star, *k, b),
        Command::Whp { product_kind, left, right, mg, mh, k, max: _, enumerate } => {
            cmd_whp(*product_kind, left, right, mg, mh, *k, *enumerate, b)
        }
        Command::Scenario { names, file, list } => cmd_scenario(names, file.as_deref(), *list, b),
        Command::Suite { corpus, max_n, k, random, order, edge_probability, no_determinism } => cmd_suite(
            corpus.as_deref(),
            *max_n,
            k,
            *random,
            *order,
            *edge_probability,
            !no_determinism,
            cli,
        ),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: thread pool: {e}");
            return ExitCode::from(2);
        }
    }
    let out = match run(&cli) {
        Ok(out) => out,
        Err(Error::BudgetExceeded(n)) => {
            eprintln!("error: search budget of {n} nodes exhausted");
            return ExitCode::from(if cli.strict { 3 } else { 2 });
        }
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let default = if matches!(cli.command, Command::Suite { .. }) { Format::Table } else { Format::Json };
    match cli.out.unwrap_or(default) {
        Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("values serialize")),
        Format::Table => print!("{}", out.table),
        Format::Dot => match &out.dot {
            Some(dot) => print!("{dot}"),
            None => {
                eprintln!("error: this command has no graph to draw");
                return ExitCode::from(2);
            }
        },
    }
    match out.status {
        Status::Pass => ExitCode::SUCCESS,
        Status::Fail => ExitCode::from(1),
        Status::Unknown if cli.strict => ExitCode::from(3),
        Status::Unknown => ExitCode::SUCCESS,
    }
}
