//! `coxflip` subcommands. Exit codes: 0 success, 1 a verification check
//! failed, 2 usage or input error.

use std::ffi::OsString;
use std::io::Write;
use std::net::{IpAddr, SocketAddr};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use coxflip_core::group::{ExplicitSet, StabilizerChain, DEFAULT_ELEMENT_CAP};
use coxflip_core::orbit::{closed_form_partition, orbit_partition, OrbitPartition, SimpleBasis};
use coxflip_core::verify::{run_suite, Suite};
use coxflip_core::{solve, CoxeterGraph, Exec, Family, GeneratorSet, Gf2Vector, GraphJson};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(name = "coxflip", version, about = "Flipping puzzles on simply-laced Coxeter graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
struct FamilyArgs {
    /// A, D or E.
    #[arg(long, value_parser = parse_family)]
    family: Family,
    /// Rank (number of vertices).
    #[arg(long)]
    n: usize,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = true)]
struct GraphSource {
    #[arg(long, value_parser = parse_family, requires = "n", conflicts_with = "custom")]
    family: Option<Family>,
    #[arg(long, requires = "family")]
    n: Option<usize>,
    /// JSON file `{"n": .., "edges": [[u, v], ..]}`.
    #[arg(long, value_name = "FILE")]
    custom: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum OrbitMethod {
    Bfs,
    ClosedForm,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum OrderMethod {
    Enumerate,
    Chain,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a graph as JSON.
    Graph(GraphSource),
    /// Partition F₂ⁿ into orbits.
    Orbits {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long, value_enum, default_value = "bfs")]
        method: OrbitMethod,
    },
    /// Find a legal move sequence between two configurations.
    Solve {
        #[command(flatten)]
        graph: FamilyArgs,
        /// Source configuration, s₁ first.
        #[arg(long)]
        from: String,
        /// Target configuration.
        #[arg(long)]
        to: String,
    },
    /// Order of the flipping group.
    GroupOrder {
        #[command(flatten)]
        graph: FamilyArgs,
        #[arg(long, value_enum, default_value = "chain")]
        method: OrderMethod,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_parser = parse_suite)]
        suite: Suite,
        /// Restrict the suite to one family and rank.
        #[arg(long, value_parser = parse_family, requires = "n")]
        family: Option<Family>,
        #[arg(long, requires = "family")]
        n: Option<usize>,
    },
    /// Serve the HTTP API.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: IpAddr,
    },
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: coxflip_core::Error| e.to_string())
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: coxflip_core::Error| e.to_string())
}

/// Exit code plus the text for standard output.
struct Output {
    code: u8,
    stdout: String,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Self { code: 0, stdout }
    }

    fn json<T: Serialize>(value: &T) -> Self {
        Self::ok(serde_json::to_string_pretty(value).expect("serializable"))
    }
}

type CmdResult = Result<Output, String>;

fn load_graph(source: &GraphSource) -> Result<CoxeterGraph, String> {
    match (&source.custom, source.family, source.n) {
        (Some(path), _, _) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("{}: {e}", path.display()))?;
            let json: GraphJson =
                serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
            CoxeterGraph::from_json(&json).map_err(|e| e.to_string())
        }
        (None, Some(f), Some(n)) => CoxeterGraph::build_family(f, n).map_err(|e| e.to_string()),
        _ => Err("give --family and --n, or --custom FILE".into()),
    }
}

#[derive(Serialize)]
struct OrbitReport {
    n: usize,
    family: String,
    method: &'static str,
    classes: Vec<ClassReport>,
}

#[derive(Serialize)]
struct ClassReport {
    label: String,
    size: String,
    rep: String,
}

fn orbit_report(g: &CoxeterGraph, method: OrbitMethod) -> CmdResult {
    let n = g.n();
    let partition: OrbitPartition = match (method, g.family()) {
        (OrbitMethod::ClosedForm, Some(f)) => closed_form_partition(f, n).map_err(|e| e.to_string())?,
        (OrbitMethod::ClosedForm, None) => {
            return Err("closed-form orbits exist only for the A, D and E families".into())
        }
        (OrbitMethod::Bfs, family) => {
            let p = orbit_partition(GeneratorSet::new(g).matrices(), n).map_err(|e| e.to_string())?;
            match family {
                Some(f) => {
                    let basis = SimpleBasis::new(f, n).map_err(|e| e.to_string())?;
                    p.with_family_labels(&basis).map_err(|e| e.to_string())?
                }
                None => p,
            }
        }
    };
    Ok(Output::json(&OrbitReport {
        n,
        family: g.to_json().family,
        method: match method {
            OrbitMethod::Bfs => "bfs",
            OrbitMethod::ClosedForm => "closed-form",
        },
        classes: partition
            .classes()
            .iter()
            .map(|c| ClassReport {
                label: c.label.clone(),
                size: c.size.to_string(),
                rep: c.representative.to_bitstring(),
            })
            .collect(),
    }))
}

fn parse_config(s: &str, n: usize) -> Result<Gf2Vector, String> {
    let v = Gf2Vector::parse_bitstring(s).map_err(|e| e.to_string())?;
    if v.dim() != n {
        return Err(format!("configuration {s:?} has {} bits, expected {n}", v.dim()));
    }
    Ok(v)
}

fn execute(command: Command) -> CmdResult {
    match command {
        Command::Graph(source) => Ok(Output::json(&load_graph(&source)?.to_json())),
        Command::Orbits { source, method } => orbit_report(&load_graph(&source)?, method),
        Command::Solve { graph, from, to } => {
            let g = CoxeterGraph::build_family(graph.family, graph.n).map_err(|e| e.to_string())?;
            let (a, b) = (parse_config(&from, graph.n)?, parse_config(&to, graph.n)?);
            Ok(Output::json(&solve(&g, a, b).map_err(|e| e.to_string())?))
        }
        Command::GroupOrder { graph, method } => {
            let g = CoxeterGraph::build_family(graph.family, graph.n).map_err(|e| e.to_string())?;
            let gens = GeneratorSet::new(&g);
            let order = match method {
                OrderMethod::Chain => StabilizerChain::new(gens.matrices(), graph.n)
                    .map_err(|e| e.to_string())?
                    .order()
                    .to_string(),
                OrderMethod::Enumerate => {
                    ExplicitSet::enumerate(gens.matrices(), graph.n, DEFAULT_ELEMENT_CAP, Exec::default())
                        .map_err(|e| e.to_string())?
                        .len()
                        .to_string()
                }
            };
            Ok(Output::ok(order))
        }
        Command::Verify { suite, family, n } => {
            let scope = family.zip(n);
            let result = run_suite(suite, scope).map_err(|e| e.to_string())?;
            let mut out = Output::json(&result);
            out.code = if result.pass { 0 } else { 1 };
            Ok(out)
        }
        Command::Serve { port, host } => {
            let runtime = tokio::runtime::Runtime::new().map_err(|e| e.to_string())?;
            runtime
                .block_on(crate::server::serve(SocketAddr::new(host, port)))
                .map_err(|e| e.to_string())?;
            Ok(Output::ok(String::new()))
        }
    }
}

/// Parses `args` (program name first), runs the command and reports.
pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    match execute(cli.command) {
        Ok(out) => {
            if !out.stdout.is_empty() {
                let mut stdout = std::io::stdout().lock();
                let _ = writeln!(stdout, "{}", out.stdout);
            }
            ExitCode::from(out.code)
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
