//! Command-line driver.
//!
//! Exit codes: 0 on success or a passing verdict, 1 on a failing or
//! inconclusive verdict, 2 on usage, parse and module errors. Module
//! arguments are expressions or catalog labels such as `SK I-8` or
//! `Ks A-2(3)`. Factor and summand indices are 1-based.

use std::ffi::OsString;

use clap::{error::ErrorKind, Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::castling::{
    castle, castling_moves, enumerate_orbit, reduce, CastlingMove, MoveKind, OrbitLimits,
    SubsetPolicy,
};
use crate::catalog::{export, parse_flags, resolve_label, Flag};
use crate::error::{Error, Result};
use crate::expr::{format_module, parse_module};
use crate::module::Module;
use crate::verify::{
    baues_decomposition_check, chain_invariant_check, theorem_a_check, theorem_b_scan,
    verify_catalog, Report, Verdict,
};

#[derive(Parser, Debug)]
#[command(name = "phv", version, about = "Exact calculus of reductive prehomogeneous modules")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Limits {
    #[arg(long, default_value_t = 4)]
    max_steps: usize,
    #[arg(long, default_value_t = 1_000_000)]
    max_dim: u64,
    #[arg(long, default_value_t = 100_000)]
    max_nodes: usize,
    /// Allow promotions on every subset of summands.
    #[arg(long)]
    all_subsets: bool,
}

impl Limits {
    fn build(&self) -> OrbitLimits {
        let policy = if self.all_subsets {
            SubsetPolicy::AllSubsets
        } else {
            SubsetPolicy::SingletonsAndFull
        };
        OrbitLimits::new(self.max_steps, self.max_dim)
            .with_max_nodes(self.max_nodes)
            .with_policy(policy)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print dim G, dim V and whether the module is an étale candidate.
    Dim { module: String },
    /// Castle an SL factor.
    Castle {
        module: String,
        #[arg(long)]
        factor: usize,
        #[arg(long, value_delimiter = ',')]
        summands: Option<Vec<usize>>,
    },
    /// Add a factor SL_{m-1} acting on the given summands (default: all).
    Promote {
        module: String,
        #[arg(long, value_delimiter = ',')]
        summands: Option<Vec<usize>>,
    },
    /// Enumerate a bounded castling orbit.
    Orbit {
        module: String,
        #[command(flatten)]
        limits: Limits,
    },
    /// Apply dimension-lowering castling transforms until none is left.
    Reduce { module: String },
    /// Run a checker on one module.
    Check {
        #[command(subcommand)]
        what: Check,
    },
    /// Scan bounded orbits.
    Scan {
        #[command(subcommand)]
        what: Scan,
    },
    /// Export catalog entries as tab-separated lines.
    Catalog {
        /// Comma-separated flags every listed entry must carry.
        #[arg(long, default_value = "")]
        filter: String,
        /// Largest parameter value for parametric entries.
        #[arg(long, default_value_t = 4)]
        max_param: u64,
    },
    /// Check the catalog's consistency.
    Verify {
        #[command(subcommand)]
        what: Verify,
    },
}

#[derive(Subcommand, Debug)]
enum Check {
    /// gcd constraints on an irreducible module.
    TheoremA { module: String },
    /// gcd constraints along a bounded orbit, with a path-constant exceptional gcd.
    Chain {
        module: String,
        #[command(flatten)]
        limits: Limits,
    },
    /// Classify the components of every proper submodule.
    Baues {
        module: String,
        #[command(flatten)]
        limits: Limits,
    },
}

#[derive(Subcommand, Debug)]
enum Scan {
    /// Look for repeated SL factors in bounded orbits of the standard seeds.
    TheoremB {
        #[command(flatten)]
        limits: Limits,
    },
}

#[derive(Subcommand, Debug)]
enum Verify {
    Catalog,
}

/// Everything a command produced.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn error(message: String) -> Self {
        Output {
            code: 2,
            stdout: String::new(),
            stderr: message,
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Output::ok(e.to_string()),
                _ => Output::error(e.to_string()),
            }
        }
    };
    match execute(&cli) {
        Ok(out) => out,
        Err(e) => Output::error(format!("error: {e}\n")),
    }
}

fn load(text: &str) -> Result<Module> {
    match resolve_label(text) {
        Ok(m) => Ok(m),
        Err(Error::UnknownEntry(_)) => parse_module(text),
        Err(e) => Err(e),
    }
}

fn one_based(indices: &[usize], what: &str) -> Result<Vec<usize>> {
    let mut out: Vec<usize> = indices
        .iter()
        .map(|&i| {
            i.checked_sub(1)
                .ok_or_else(|| Error::Precondition(format!("{what} indices start at 1")))
        })
        .collect::<Result<_>>()?;
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable") + "\n"
}

fn report_output(report: &Report, json: bool) -> Output {
    let stdout = if json {
        to_json(report)
    } else {
        report.to_string()
    };
    Output {
        code: if report.verdict == Verdict::Pass { 0 } else { 1 },
        stdout,
        stderr: String::new(),
    }
}

fn dims_json(m: &Module) -> serde_json::Value {
    json!({
        "module": format_module(m),
        "dim_g": m.group_dim().to_string(),
        "dim_v": m.module_dim().to_string(),
        "etale_candidate": m.is_etale_candidate(),
    })
}

fn move_output(m: &Module, mv: &CastlingMove, json: bool) -> Result<Output> {
    let result = castle(m, mv)?;
    Ok(Output::ok(if json {
        let mut v = dims_json(&result);
        v["move"] = serde_json::to_value(mv).expect("serializable");
        to_json(&v)
    } else {
        format!(
            "{}\n{mv}\ndim G = {}, dim V = {}\n",
            format_module(&result),
            result.group_dim(),
            result.module_dim()
        )
    }))
}

fn execute(cli: &Cli) -> Result<Output> {
    let json = cli.json;
    match &cli.command {
        Command::Dim { module } => {
            let m = load(module)?;
            Ok(Output::ok(if json {
                to_json(&dims_json(&m))
            } else {
                format!(
                    "dim G = {}, dim V = {}, etale-candidate: {}\n",
                    m.group_dim(),
                    m.module_dim(),
                    if m.is_etale_candidate() { "yes" } else { "no" }
                )
            }))
        }
        Command::Castle {
            module,
            factor,
            summands,
        } => {
            let m = load(module)?;
            let index = one_based(&[*factor], "factor")?[0];
            let mv = castling_moves(&m, SubsetPolicy::SingletonsAndFull)
                .into_iter()
                .find(|mv| mv.kind == MoveKind::Castle { factor: index })
                .ok_or_else(|| {
                    Error::MoveNotApplicable(format!("factor {factor} admits no castling transform"))
                })?;
            if let Some(s) = summands {
                if one_based(s, "summand")? != mv.summands {
                    return Err(Error::MoveNotApplicable(format!(
                        "factor {factor} acts on summands {:?}",
                        mv.summands.iter().map(|i| i + 1).collect::<Vec<_>>()
                    )));
                }
            }
            move_output(&m, &mv, json)
        }
        Command::Promote { module, summands } => {
            let m = load(module)?;
            let set = match summands {
                Some(s) => one_based(s, "summand")?,
                None => (0..m.summands().len()).collect(),
            };
            let total: num_bigint::BigUint = set
                .iter()
                .filter(|&&s| s < m.summands().len())
                .map(|&s| m.summand_dim(s))
                .sum();
            let mv = CastlingMove {
                kind: MoveKind::Promote,
                summands: set,
                n: 1,
                m: u64::try_from(total).map_err(|_| {
                    Error::MoveNotApplicable("summand dimension exceeds 64 bits".into())
                })?,
            };
            move_output(&m, &mv, json)
        }
        Command::Orbit { module, limits } => {
            let m = load(module)?;
            let orbit = enumerate_orbit(&m, &limits.build())?;
            if json {
                let members: Vec<_> = orbit
                    .members
                    .iter()
                    .map(|x| {
                        json!({
                            "module": format_module(&x.module),
                            "dim_v": x.module.module_dim().to_string(),
                            "path": x.path.iter().map(|mv| mv.to_string()).collect::<Vec<_>>(),
                        })
                    })
                    .collect();
                return Ok(Output::ok(to_json(&json!({
                    "members": members,
                    "truncated_steps": orbit.truncated_steps,
                    "truncated_dim": orbit.truncated_dim,
                    "truncated_nodes": orbit.truncated_nodes,
                }))));
            }
            let mut out = String::new();
            for x in &orbit.members {
                out.push_str(&format!(
                    "{}\t{}\t{} step(s)\n",
                    x.module.module_dim(),
                    format_module(&x.module),
                    x.path.len()
                ));
            }
            out.push_str(&format!(
                "{} members; truncated: steps {}, dim {}, nodes {}\n",
                orbit.members.len(),
                orbit.truncated_steps,
                orbit.truncated_dim,
                orbit.truncated_nodes
            ));
            Ok(Output::ok(out))
        }
        Command::Reduce { module } => {
            let r = reduce(&load(module)?);
            Ok(Output::ok(if json {
                to_json(&dims_json(&r))
            } else {
                format!(
                    "{}\ndim G = {}, dim V = {}\n",
                    format_module(&r),
                    r.group_dim(),
                    r.module_dim()
                )
            }))
        }
        Command::Check { what } => {
            let report = match what {
                Check::TheoremA { module } => theorem_a_check(&load(module)?)?,
                Check::Chain { module, limits } => {
                    chain_invariant_check(&load(module)?, &limits.build())?
                }
                Check::Baues { module, limits } => {
                    baues_decomposition_check(&load(module)?, &limits.build())?
                }
            };
            Ok(report_output(&report, json))
        }
        Command::Scan {
            what: Scan::TheoremB { limits },
        } => Ok(report_output(&theorem_b_scan(&limits.build())?, json)),
        Command::Catalog { filter, max_param } => {
            let flags: Vec<Flag> = parse_flags(filter)?.into_iter().collect();
            let lines = export(&flags, *max_param);
            Ok(Output::ok(if json {
                to_json(&lines)
            } else {
                lines.iter().map(|l| format!("{l}\n")).collect()
            }))
        }
        Command::Verify {
            what: Verify::Catalog,
        } => Ok(report_output(&verify_catalog(), json)),
    }
}
