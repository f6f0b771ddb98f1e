//! Command-line front end. `main.rs` only forwards process arguments to
//! [`run_args`] and prints the resulting [`Outcome`].

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::displacement::{build_multigraph, delta_total};
use crate::error::Error;
use crate::graph::{build_complete, build_cycle, build_path, complement, parse_edge_list, Family, Graph};
use crate::perm::Permutation;
use crate::solver::{
    check_balance, check_min_displacement, check_positive_edge, check_sandwich_bound, pi_exact_with,
    verify_theorem_with, GraphInfo, LemmaReport, Objective, Population, SolverOptions, DEFAULT_NODE_BUDGET,
    DEFAULT_THEOREM_MAX_N,
};

pub const DEFAULT_WITNESS_CAP: usize = 200;
pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_SAMPLES: usize = 10_000;
/// Largest `n` for which `check-lemmas` enumerates every permutation by default.
pub const EXHAUSTIVE_MAX_N: usize = 8;

/// Process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(i32)]
pub enum ExitCode {
    Success = 0,
    Io = 1,
    Usage = 2,
    Parse = 3,
    InvalidParameter = 4,
    Disconnected = 5,
    BudgetExceeded = 6,
    VerificationFailed = 7,
    NoNearAutomorphism = 8,
}

impl From<&Error> for ExitCode {
    fn from(e: &Error) -> Self {
        match e {
            Error::InvalidParameter(_) => ExitCode::InvalidParameter,
            Error::Disconnected { .. } => ExitCode::Disconnected,
            Error::Parse(_) => ExitCode::Parse,
            Error::NoNearAutomorphism => ExitCode::NoNearAutomorphism,
            Error::BudgetExceeded { .. } => ExitCode::BudgetExceeded,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Table,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "nearauto",
    version,
    about = "Relative displacement and near automorphisms of small graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: CommandArgs,
}

#[derive(Debug, Clone, clap::Args)]
pub struct Common {
    /// Family spec (`ccycle:7`, `cycle:6`, `path:5`, `cpath:6`, `complete:5`) or edge-list file
    #[arg(long)]
    pub graph: Option<String>,
    /// Complement the graph after loading it
    #[arg(long)]
    pub complement: bool,
    /// Cycle length; shorthand for `--graph ccycle:N`
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    pub budget: u64,
}

#[derive(Debug, Subcommand)]
pub enum CommandArgs {
    /// Displacement report of one permutation
    Delta {
        #[command(flatten)]
        common: Common,
        /// Comma-separated 1-based images, e.g. `2,1,3,4,5`
        #[arg(long)]
        perm: String,
    },
    /// Displacement multigraph of one permutation
    Multigraph {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        perm: String,
    },
    /// Exact minimum positive displacement and its minimisers
    Pi {
        #[command(flatten)]
        common: Common,
        /// Maximum number of witnesses printed
        #[arg(long, default_value_t = DEFAULT_WITNESS_CAP)]
        witness_cap: usize,
    },
    /// Compare brute force against reversals composed with dihedral maps
    VerifyTheorem {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = DEFAULT_THEOREM_MAX_N)]
        max_n: usize,
    },
    /// Run the structural checks over a permutation population
    CheckLemmas {
        #[command(flatten)]
        common: Common,
        /// Draw this many random permutations instead of enumerating
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Delta,
    Pi,
    VerifyTheorem,
    CheckLemmas,
    Multigraph,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphSource {
    Family { family: Family, n: usize },
    File(PathBuf),
}

impl GraphSource {
    /// Family specs look like `name:n`; anything else is a file path.
    pub fn parse(s: &str) -> GraphSource {
        if let Some((name, n)) = s.split_once(':') {
            let family = match name {
                "ccycle" => Some(Family::ComplementCycle),
                "cycle" => Some(Family::Cycle),
                "path" => Some(Family::Path),
                "cpath" => Some(Family::ComplementPath),
                "complete" => Some(Family::Complete),
                _ => None,
            };
            if let (Some(family), Ok(n)) = (family, n.trim().parse()) {
                return GraphSource::Family { family, n };
            }
        }
        GraphSource::File(PathBuf::from(s))
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub graph: GraphSource,
    pub complement: bool,
    pub perm: Option<String>,
    pub format: Format,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub witness_cap: usize,
    pub workers: usize,
    pub budget: u64,
    pub max_n: usize,
}

fn graph_source(common: &Common, allow_n: bool) -> Result<GraphSource, Error> {
    match (&common.graph, common.n) {
        (Some(g), None) => Ok(GraphSource::parse(g)),
        (None, Some(n)) if allow_n => Ok(GraphSource::Family {
            family: Family::ComplementCycle,
            n,
        }),
        (None, Some(_)) => Err(Error::invalid(
            "--n is only accepted by verify-theorem and check-lemmas",
        )),
        (Some(_), Some(_)) => Err(Error::invalid("give exactly one of --graph and --n")),
        (None, None) => Err(Error::invalid("a graph is required (--graph)")),
    }
}

impl TryFrom<Cli> for RunConfig {
    type Error = Error;

    fn try_from(cli: Cli) -> Result<Self, Error> {
        let (command, common, perm, witness_cap, max_n, samples, seed) = match cli.command {
            CommandArgs::Delta { common, perm } => (Command::Delta, common, Some(perm), 0, 0, None, None),
            CommandArgs::Multigraph { common, perm } => (Command::Multigraph, common, Some(perm), 0, 0, None, None),
            CommandArgs::Pi { common, witness_cap } => (Command::Pi, common, None, witness_cap, 0, None, None),
            CommandArgs::VerifyTheorem { common, max_n } => {
                (Command::VerifyTheorem, common, None, 0, max_n, None, None)
            }
            CommandArgs::CheckLemmas { common, samples, seed } => {
                (Command::CheckLemmas, common, None, 0, 0, samples, seed)
            }
        };
        let allow_n = matches!(command, Command::VerifyTheorem | Command::CheckLemmas);
        Ok(RunConfig {
            command,
            graph: graph_source(&common, allow_n)?,
            complement: common.complement,
            perm,
            format: common.format,
            seed,
            samples,
            witness_cap,
            workers: common.workers,
            budget: common.budget,
            max_n,
        })
    }
}

/// What a run prints and how it exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: ExitCode,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn failure(code: ExitCode, message: String) -> Self {
        Outcome {
            code,
            stdout: String::new(),
            stderr: message,
        }
    }
}

/// Parses `args` (including the program name) and runs them.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                ExitCode::Usage
            } else {
                ExitCode::Success
            };
            let text = e.render().to_string();
            return if code == ExitCode::Success {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome::failure(code, text)
            };
        }
    };
    match RunConfig::try_from(cli) {
        Ok(cfg) => run(&cfg),
        Err(e) => Outcome::failure(ExitCode::from(&e), format!("error: {e}\n")),
    }
}

/// Canonical JSON: keys sorted, two-space indentation, trailing newline.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("report types serialize");
    let mut s = serde_json::to_string_pretty(&v).expect("values serialize");
    s.push('\n');
    s
}

pub fn load_graph(source: &GraphSource, complement_it: bool) -> Result<Graph, RunError> {
    let g = match source {
        GraphSource::Family { family, n } => build_family(*family, *n)?,
        GraphSource::File(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| RunError::Io(format!("cannot read {}: {e}", path.display())))?;
            parse_edge_list(&text)?
        }
    };
    Ok(if complement_it { complement(&g)? } else { g })
}

fn build_family(family: Family, n: usize) -> Result<Graph, Error> {
    match family {
        Family::Path => build_path(n),
        Family::Cycle => build_cycle(n),
        Family::ComplementCycle => complement(&build_cycle(n)?),
        Family::ComplementPath => complement(&build_path(n)?),
        Family::Complete => build_complete(n),
        Family::Custom => Err(Error::invalid("custom graphs come from edge-list files")),
    }
}

#[derive(Debug)]
pub enum RunError {
    Io(String),
    Lib(Error),
}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        RunError::Lib(e)
    }
}

struct Rendered {
    json: Value,
    table: String,
    verified: bool,
}

pub fn run(cfg: &RunConfig) -> Outcome {
    match execute(cfg) {
        Ok(r) => {
            let stdout = match cfg.format {
                Format::Json => to_canonical_json(&r.json),
                Format::Table => r.table,
            };
            let code = if r.verified {
                ExitCode::Success
            } else {
                ExitCode::VerificationFailed
            };
            let stderr = if r.verified {
                String::new()
            } else {
                "verification FAILED\n".to_string()
            };
            Outcome { code, stdout, stderr }
        }
        Err(RunError::Io(msg)) => Outcome::failure(ExitCode::Io, format!("error: {msg}\n")),
        Err(RunError::Lib(e)) => Outcome::failure(ExitCode::from(&e), format!("error: {e}\n")),
    }
}

fn execute(cfg: &RunConfig) -> Result<Rendered, RunError> {
    let needs_perm = matches!(cfg.command, Command::Delta | Command::Multigraph);
    if needs_perm != cfg.perm.is_some() {
        return Err(Error::invalid(if needs_perm {
            "this command needs --perm"
        } else {
            "this command does not take --perm"
        })
        .into());
    }
    let opts = SolverOptions {
        objective: Objective::Witnesses,
        workers: cfg.workers,
        node_budget: cfg.budget,
        fix_first_vertex: false,
    };
    let g = load_graph(&cfg.graph, cfg.complement)?;
    let info = GraphInfo::from(&g);
    let perm = match &cfg.perm {
        Some(p) => Some(p.parse::<Permutation>()?),
        None => None,
    };

    match cfg.command {
        Command::Delta => {
            let f = perm.expect("checked above");
            let report = delta_total(&g, &f)?;
            let mut json = serde_json::to_value(&report).expect("serializes");
            json["graph"] = json!(info);
            json["perm"] = json!(f.to_string());
            let mut table = format!("graph {g}\npermutation {f}\ntotal displacement {}\n", report.total);
            let _ = writeln!(table, "edge flips {}", report.edge_flips);
            let _ = writeln!(table, "vertex  displacement");
            for (v, d) in report.per_vertex.iter().enumerate() {
                let _ = writeln!(table, "{:>6}  {d}", v + 1);
            }
            let _ = writeln!(table, "displaced pairs:");
            for p in &report.displaced_pairs {
                let _ = writeln!(table, "  {} {}  d {} -> {}", p.u + 1, p.v + 1, p.d_before, p.d_after);
            }
            Ok(Rendered {
                json,
                table,
                verified: true,
            })
        }
        Command::Multigraph => {
            let f = perm.expect("checked above");
            let m = build_multigraph(&g, &f)?;
            let mut json = serde_json::to_value(&m).expect("serializes");
            json["graph"] = json!(info);
            json["perm"] = json!(f.to_string());
            let mut table = format!("graph {g}\npermutation {f}\ndistance values a_1..a_{}\n", m.t);
            for (&(i, j), &mult) in &m.arcs {
                let _ = writeln!(table, "  a_{i} -> a_{j}  x{mult}");
            }
            for i in 1..=m.t as usize {
                let _ = writeln!(table, "a_{i}: out {} in {}", m.out_deg[i - 1], m.in_deg[i - 1]);
            }
            let _ = writeln!(table, "balanced {}", m.is_balanced());
            Ok(Rendered {
                json,
                table,
                verified: true,
            })
        }
        Command::Pi => {
            let r = pi_exact_with(&g, &opts)?;
            let shown: Vec<String> = r
                .witnesses
                .iter()
                .take(cfg.witness_cap)
                .map(|w| w.to_string())
                .collect();
            let count = r.witness_count.unwrap_or(0);
            let json = json!({
                "graph": r.graph,
                "pi": r.pi,
                "witness_count": count,
                "witnesses": shown,
                "nodes_explored": r.nodes_explored,
                "pruned": r.pruned,
            });
            let mut table = format!("graph {g}\npi {}\nwitnesses {count}", r.pi);
            if shown.len() < r.witnesses.len() {
                let _ = write!(table, " (showing {})", shown.len());
            }
            table.push('\n');
            for w in &shown {
                let _ = writeln!(table, "  {w}");
            }
            let _ = writeln!(table, "nodes explored {}  pruned {}", r.nodes_explored, r.pruned);
            Ok(Rendered {
                json,
                table,
                verified: true,
            })
        }
        Command::VerifyTheorem => {
            if g.family() != Family::ComplementCycle {
                return Err(Error::invalid("verify-theorem runs on complement_cycle graphs (--n N)").into());
            }
            let r = verify_theorem_with(g.n(), cfg.max_n, &opts)?;
            let mut table = format!(
                "n {}\nbrute force |{{f : delta = 4}}| {}\nconstructed |{{g o sigma}}| {} ({} duplicates)\nequal {}\n",
                r.n, r.oracle_set_size, r.constructed_set_size, r.duplicates, r.equal
            );
            for m in &r.missing {
                let _ = writeln!(table, "  missing {m}");
            }
            for e in &r.extra {
                let _ = writeln!(table, "  extra {e}");
            }
            Ok(Rendered {
                json: serde_json::to_value(&r).expect("serializes"),
                table,
                verified: r.equal,
            })
        }
        Command::CheckLemmas => {
            let population = match cfg.samples {
                Some(count) => Population::Sampled {
                    count,
                    seed: cfg.seed.unwrap_or(DEFAULT_SEED),
                },
                None if g.n() <= EXHAUSTIVE_MAX_N && cfg.seed.is_none() => Population::Exhaustive,
                None => Population::Sampled {
                    count: DEFAULT_SAMPLES,
                    seed: cfg.seed.unwrap_or(DEFAULT_SEED),
                },
            };
            let mut reports: Vec<LemmaReport> =
                vec![check_positive_edge(&g, population)?, check_balance(&g, population)?];
            if g.family() == Family::ComplementCycle {
                reports.push(check_min_displacement(g.n(), population)?);
                if g.n() > 5 {
                    reports.push(check_sandwich_bound(g.n(), population)?);
                }
            }
            let passed = reports.iter().all(LemmaReport::passed);
            let mut table = format!("graph {g}\npopulation {}\n", describe(population));
            for r in &reports {
                let _ = writeln!(
                    table,
                    "{:<18} checked {:>8}  premise {:>8}  violations {}  {}",
                    r.lemma,
                    r.checked,
                    r.premise_holds,
                    r.violation_count,
                    if r.passed() { "PASS" } else { "FAIL" }
                );
            }
            let json = json!({
                "graph": info,
                "population": population,
                "lemmas": reports,
                "passed": passed,
            });
            Ok(Rendered {
                json,
                table,
                verified: passed,
            })
        }
    }
}

fn describe(p: Population) -> String {
    match p {
        Population::Exhaustive => "exhaustive".to_string(),
        Population::Sampled { count, seed } => format!("sampled {count} (seed {seed})"),
    }
}
