use std::io::{Read, Write};
use std::path::Path;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use cactus_mp::construct::{approx_multipacking, verify_multipacking};
use cactus_mp::families::{gen_gk, random_cactus, RandomCactusParams};
use cactus_mp::harness::bench::{bench_linear, BenchConfig};
use cactus_mp::harness::campaign::{run_campaign, CampaignConfig};
use cactus_mp::harness::dot::{export_dot, Highlights};
use cactus_mp::hyperbolicity::delta_hyperbolicity;
use cactus_mp::oracles::broadcast::{verify_broadcast, Broadcast};
use cactus_mp::oracles::lp::lp_fractional;
use cactus_mp::oracles::search::{exact_domination, exact_gamma_b, exact_mp, DEFAULT_BUDGET};
use cactus_mp::oracles::weights::verify_fractional_weights;
use cactus_mp::rational::{self, Rational};
use cactus_mp::{cactus, io, metric, Graph, Vertex};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Ratio;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "cactus-mp", version, about = "Multipacking and broadcast domination tools for cactus graphs")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Global {
    /// Write output here instead of stdout.
    #[arg(short = 'o', long = "output", global = true)]
    output: Option<String>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Search node limit for exact oracles.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Skip separate verifier timing in `bench`.
    #[arg(long, global = true)]
    no_verify: bool,
    /// Abort a campaign after this many partial rows.
    #[arg(long, global = true)]
    timeout_rows: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Csv,
    Dot,
    Edgelist,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a graph.
    #[command(subcommand)]
    Gen(GenCmd),
    /// Check the cactus property and list blocks.
    Validate { graph: Option<String> },
    /// Radius, diameter, centers and cactus certificate.
    Stats { graph: Option<String> },
    /// Run the multipacking construction.
    Approx { graph: Option<String> },
    /// Exact oracles.
    #[command(subcommand)]
    Exact(ExactCmd),
    /// Solve the fractional LP pair exactly.
    Lp { graph: Option<String> },
    /// Check fractional multipacking weights.
    WeightsCheck {
        graph: String,
        /// JSON list of weights or map from vertex id to weight, e.g. "1/3".
        weights: String,
    },
    /// Exact four-point hyperbolicity.
    Hyperbolicity { graph: Option<String> },
    /// Verify a candidate set or broadcast.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Bound-checking campaign over generated instances.
    Campaign {
        #[arg(long, default_value_t = 0)]
        gk_max: usize,
        #[arg(long, default_value_t = 0)]
        random: usize,
        #[arg(long, default_value_t = 30)]
        n_max: usize,
        #[arg(long)]
        trees: bool,
        #[arg(long, default_value_t = 8)]
        max_cycle_len: usize,
    },
    /// Time the construction on random cacti.
    Bench {
        #[arg(long, value_delimiter = ',', default_values_t = [10_000usize, 100_000])]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 3)]
        repeats: usize,
    },
    /// Graphviz export with optional highlights.
    Dot {
        graph: Option<String>,
        /// Multipacking to draw boxed (JSON list or comma list).
        #[arg(long)]
        members: Option<String>,
        /// Broadcast whose towers are annotated (JSON map, list, or file).
        #[arg(long)]
        broadcast: Option<String>,
        /// Box the set produced by the construction.
        #[arg(long)]
        approx: bool,
    },
}

#[derive(Subcommand)]
enum GenCmd {
    /// The pentagon chain G_k.
    Gk {
        #[arg(long)]
        k: usize,
    },
    /// Seeded random cactus.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "1/2")]
        cycle_prob: String,
        #[arg(long, default_value_t = 8)]
        max_cycle_len: usize,
    },
}

#[derive(Subcommand)]
enum ExactCmd {
    Mp { graph: Option<String> },
    Gb { graph: Option<String> },
    Dom { graph: Option<String> },
}

#[derive(Subcommand)]
enum VerifyCmd {
    Mp {
        graph: String,
        /// JSON list or comma list of vertex ids, or a file holding one.
        set: String,
    },
    Broadcast {
        graph: String,
        /// JSON map from id to power, list of powers, or a file holding one.
        broadcast: String,
    },
}

enum Rendered {
    Json(Value),
    Graph(Graph),
    Csv(String),
    Dot(String),
}

struct Outcome {
    out: Rendered,
    /// Exit with status 2.
    violation: bool,
}

impl From<Value> for Outcome {
    fn from(v: Value) -> Outcome {
        Outcome { out: Rendered::Json(v), violation: false }
    }
}

/// Failure with its exit status.
struct Failure {
    code: u8,
    err: anyhow::Error,
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Failure {
        let err = e.into();
        let code = match err.downcast_ref::<cactus_mp::Error>() {
            Some(cactus_mp::Error::Invariant(_)) => 2,
            _ => 1,
        };
        Failure { code, err }
    }
}

fn read_source(src: Option<&str>) -> anyhow::Result<String> {
    match src {
        None | Some("-") => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
            Ok(s)
        }
        Some(path) => std::fs::read_to_string(path).with_context(|| format!("reading {path}")),
    }
}

fn load_graph(src: Option<&str>) -> anyhow::Result<Graph> {
    Ok(io::parse_graph(&read_source(src)?)?)
}

/// Inline text, or the contents of a file when `arg` names one.
fn inline_or_file(arg: &str) -> anyhow::Result<String> {
    if Path::new(arg).is_file() {
        return read_source(Some(arg));
    }
    Ok(arg.to_string())
}

fn parse_set(arg: &str) -> anyhow::Result<Vec<Vertex>> {
    let text = inline_or_file(arg)?;
    let text = text.trim();
    if text.starts_with('[') {
        return serde_json::from_str(text).context("vertex set must be a JSON list of ids");
    }
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse::<Vertex>().with_context(|| format!("bad vertex id {s:?}")))
        .collect()
}

fn parse_broadcast(g: &Graph, arg: &str) -> anyhow::Result<Broadcast> {
    let v: Value = serde_json::from_str(&inline_or_file(arg)?).context("broadcast must be JSON")?;
    match v {
        Value::Array(items) => {
            let powers = items
                .iter()
                .map(|x| x.as_u64().map(|p| p as usize).ok_or_else(|| anyhow!("power {x} is not a non-negative integer")))
                .collect::<anyhow::Result<Vec<_>>>()?;
            if powers.len() != g.n() {
                bail!("{} powers for {} vertices", powers.len(), g.n());
            }
            Ok(Broadcast::from_powers(powers))
        }
        Value::Object(map) => {
            let mut towers = Vec::new();
            for (k, p) in map {
                let v: Vertex = k.parse().with_context(|| format!("bad vertex id {k:?}"))?;
                let p = p.as_u64().ok_or_else(|| anyhow!("power {p} is not a non-negative integer"))?;
                towers.push((v, p as usize));
            }
            Ok(Broadcast::from_towers(g.n(), &towers)?)
        }
        _ => bail!("broadcast must be a JSON map or list"),
    }
}

fn parse_weights(g: &Graph, arg: &str) -> anyhow::Result<Vec<Rational>> {
    let v: Value = serde_json::from_str(&inline_or_file(arg)?).context("weights must be JSON")?;
    let one = |x: &Value| -> anyhow::Result<Rational> {
        match x {
            Value::String(s) => rational::parse(s).ok_or_else(|| anyhow!("bad rational {s:?}")),
            Value::Number(n) => n.as_i64().map(rational::int).ok_or_else(|| anyhow!("weight {n} must be an integer or \"p/q\"")),
            _ => bail!("bad weight {x}"),
        }
    };
    match v {
        Value::Array(items) => items.iter().map(one).collect(),
        Value::Object(map) => {
            let mut w = vec![rational::zero(); g.n()];
            for (k, x) in map {
                let v: Vertex = k.parse().with_context(|| format!("bad vertex id {k:?}"))?;
                g.check_vertex(v)?;
                w[v] = one(&x)?;
            }
            Ok(w)
        }
        _ => bail!("weights must be a JSON map or list"),
    }
}

fn parse_prob(s: &str) -> anyhow::Result<Ratio<u64>> {
    let (n, d) = s.split_once('/').unwrap_or((s, "1"));
    let n: u64 = n.trim().parse().with_context(|| format!("bad probability {s:?}"))?;
    let d: u64 = d.trim().parse().with_context(|| format!("bad probability {s:?}"))?;
    if d == 0 {
        bail!("probability denominator is zero");
    }
    Ok(Ratio::new(n, d))
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report serializes")
}

fn run(cmd: Cmd, gl: &Global) -> Result<Outcome, Failure> {
    let out: Outcome = match cmd {
        Cmd::Gen(GenCmd::Gk { k }) => Outcome { out: Rendered::Graph(gen_gk(k)?.graph), violation: false },
        Cmd::Gen(GenCmd::Random { n, cycle_prob, max_cycle_len }) => {
            let params = RandomCactusParams::new(n, parse_prob(&cycle_prob)?, max_cycle_len, gl.seed);
            Outcome { out: Rendered::Graph(random_cactus(&params)?), violation: false }
        }
        Cmd::Validate { graph } => to_json(&cactus::validate_cactus(&load_graph(graph.as_deref())?)?).into(),
        Cmd::Stats { graph } => to_json(&metric::graph_stats(&load_graph(graph.as_deref())?)?).into(),
        Cmd::Approx { graph } => {
            let g = load_graph(graph.as_deref())?;
            to_json(&approx_multipacking(&g)?.report()).into()
        }
        Cmd::Exact(ExactCmd::Mp { graph }) => to_json(&exact_mp(&load_graph(graph.as_deref())?, gl.budget)?).into(),
        Cmd::Exact(ExactCmd::Gb { graph }) => to_json(&exact_gamma_b(&load_graph(graph.as_deref())?, gl.budget)?).into(),
        Cmd::Exact(ExactCmd::Dom { graph }) => to_json(&exact_domination(&load_graph(graph.as_deref())?, gl.budget)?).into(),
        Cmd::Lp { graph } => to_json(&lp_fractional(&load_graph(graph.as_deref())?)?).into(),
        Cmd::WeightsCheck { graph, weights } => {
            let g = load_graph(Some(&graph))?;
            let w = parse_weights(&g, &weights)?;
            to_json(&verify_fractional_weights(&g, &w)?).into()
        }
        Cmd::Hyperbolicity { graph } => to_json(&delta_hyperbolicity(&load_graph(graph.as_deref())?)?).into(),
        Cmd::Verify(VerifyCmd::Mp { graph, set }) => {
            let g = load_graph(Some(&graph))?;
            let set = parse_set(&set)?;
            let violation = verify_multipacking(&g, &set)?;
            Outcome {
                violation: violation.is_some(),
                out: Rendered::Json(json!({"valid": violation.is_none(), "size": set.len(), "violation": violation})),
            }
        }
        Cmd::Verify(VerifyCmd::Broadcast { graph, broadcast }) => {
            let g = load_graph(Some(&graph))?;
            let f = parse_broadcast(&g, &broadcast)?;
            let chk = verify_broadcast(&g, &f)?;
            Outcome { violation: !chk.dominating, out: Rendered::Json(to_json(&chk)) }
        }
        Cmd::Campaign { gk_max, random, n_max, trees, max_cycle_len } => {
            let cfg = CampaignConfig {
                gk_max,
                random_count: random,
                n_max,
                trees_only: trees,
                max_cycle_len,
                seed: gl.seed,
                budget: gl.budget,
                max_partial_rows: gl.timeout_rows,
            };
            let rep = run_campaign(&cfg)?;
            let violation = !rep.violations.is_empty();
            let out = if gl.format == Some(Format::Csv) { Rendered::Csv(rep.to_csv()) } else { Rendered::Json(to_json(&rep)) };
            Outcome { out, violation }
        }
        Cmd::Bench { sizes, repeats } => {
            let rep = bench_linear(&BenchConfig { sizes, seed: gl.seed, time_verify: !gl.no_verify, repeats })?;
            Outcome { violation: !rep.within_limit, out: Rendered::Json(to_json(&rep)) }
        }
        Cmd::Dot { graph, members, broadcast, approx } => {
            let g = load_graph(graph.as_deref())?;
            let mut hl = Highlights::default();
            if let Some(m) = members {
                hl.members = parse_set(&m)?;
            }
            if approx {
                hl.members.extend(approx_multipacking(&g)?.multipacking.members);
            }
            if let Some(b) = broadcast {
                hl.broadcast = Some(parse_broadcast(&g, &b)?);
            }
            Outcome { out: Rendered::Dot(export_dot(&g, &hl)), violation: false }
        }
    };
    Ok(out)
}

fn text_lines(v: &Value) -> String {
    match v {
        Value::Object(map) => map.iter().map(|(k, x)| format!("{k}: {}\n", compact(x))).collect(),
        other => format!("{}\n", compact(other)),
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn render(out: Rendered, format: Option<Format>) -> anyhow::Result<String> {
    Ok(match (out, format) {
        (Rendered::Json(v), None | Some(Format::Json)) => serde_json::to_string_pretty(&v)? + "\n",
        (Rendered::Json(v), Some(Format::Text)) => text_lines(&v),
        (Rendered::Graph(g), None | Some(Format::Json)) => io::to_json(&g) + "\n",
        (Rendered::Graph(g), Some(Format::Edgelist | Format::Text)) => io::to_edge_list(&g),
        (Rendered::Graph(g), Some(Format::Dot)) => export_dot(&g, &Highlights::default()),
        (Rendered::Csv(s), _) => s,
        (Rendered::Dot(s), None | Some(Format::Dot)) => s,
        (_, Some(f)) => bail!("output format {:?} is not available for this command", f.to_possible_value().unwrap().get_name()),
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let (code, outcome) = match run(cli.cmd, &cli.global) {
        Ok(o) => (u8::from(o.violation) * 2, o),
        Err(f) => {
            eprintln!("error: {:#}", f.err);
            return ExitCode::from(f.code);
        }
    };
    let text = match render(outcome.out, cli.global.format) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(1);
        }
    };
    let written = match &cli.global.output {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {path}")),
        None => std::io::stdout().write_all(text.as_bytes()).context("writing stdout"),
    };
    if let Err(e) = written {
        eprintln!("error: {e:#}");
        return ExitCode::from(1);
    }
    ExitCode::from(code)
}
