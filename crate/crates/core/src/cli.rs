//! Command-line front end. `run` parses arguments, executes one command and
//! returns the exit code with everything destined for stdout and stderr.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::bounds::{bounds_report, fundamental_sequence, stl_sequence, vakil_runs};
use crate::error::{Error, Result};
use crate::purity::parse_sequence;
use crate::report::{emit_report, Format, ReportDocument};
use crate::resolution::{adams_tower, certify_length, is_ghost_projective, kelly_suite};
use crate::zcomplex::io::{matrix_doc, parse_chain_map, parse_complex, HomotopyDoc};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_FALSIFIED: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "ghostlength", version, about = "Ghost-length bounds and ghost resolutions")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bounds for real projective spaces.
    #[command(subcommand)]
    Rpn(RpnCommand),
    /// Chain complexes of free abelian groups.
    #[command(subcommand)]
    Complex(ComplexCommand),
}

#[derive(Debug, Subcommand)]
pub enum RpnCommand {
    /// Steenrod length of RP^n for n in a range.
    Table {
        #[arg(long, allow_negative_numbers = true)]
        from: i64,
        #[arg(long, allow_negative_numbers = true)]
        to: i64,
    },
    /// All bounds for one n.
    Bounds {
        #[arg(allow_negative_numbers = true)]
        n: i64,
        /// Largest m used by the monotone bound (default 2n + 64).
        #[arg(long)]
        horizon: Option<i64>,
    },
    /// Run lengths of the Steenrod-length sequence.
    Vakil {
        #[arg(long)]
        max_n: i64,
    },
    /// Per-cell chain lengths.
    Fundamental {
        #[arg(long)]
        max_n: i64,
    },
}

#[derive(Debug, Subcommand)]
pub enum ComplexCommand {
    /// Homology groups of a complex file.
    Homology { file: PathBuf },
    /// Ghost and null-homotopy check for a chain-map file.
    GhostCheck { file: PathBuf },
    /// Adams tower and length certificate.
    Resolve {
        file: PathBuf,
        #[arg(long)]
        depth: usize,
    },
    /// Null-homotopy of composites of random ghosts.
    Kelly {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        trials: u64,
        #[arg(long, default_value_t = 2)]
        k: usize,
    },
    /// Pure exactness of a short exact sequence file.
    PureCheck { file: PathBuf },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let start = Instant::now();
    match execute(&cli.command) {
        Ok(mut doc) => {
            doc.timing_ms = start.elapsed().as_secs_f64() * 1000.0;
            Outcome {
                code: EXIT_OK,
                stdout: emit_report(&doc, cli.format),
                stderr: String::new(),
            }
        }
        Err(e) => Outcome {
            code: if e.is_falsification() { EXIT_FALSIFIED } else { EXIT_USAGE },
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

pub fn execute(command: &Command) -> Result<ReportDocument> {
    match command {
        Command::Rpn(c) => run_rpn(c),
        Command::Complex(c) => run_complex(c),
    }
}

pub fn run_rpn(command: &RpnCommand) -> Result<ReportDocument> {
    match *command {
        RpnCommand::Table { from, to } => {
            if from < -1 || to < from {
                return Err(Error::InvalidArgument(format!(
                    "need -1 <= from <= to, got from = {from}, to = {to}"
                )));
            }
            let seq = stl_sequence(to)?;
            let rows: Vec<Value> = (from..=to)
                .map(|n| json!({"n": n, "stl": seq[(n + 1) as usize]}))
                .collect();
            Ok(ReportDocument::new(
                "rpn table",
                json!({"from": from, "to": to}),
                Value::Array(rows),
            ))
        }
        RpnCommand::Bounds { n, horizon } => {
            let r = bounds_report(n, horizon)?;
            Ok(ReportDocument::new(
                "rpn bounds",
                json!({"n": n, "horizon": r.horizon}),
                serde_json::to_value(r).expect("serializes"),
            ))
        }
        RpnCommand::Vakil { max_n } => {
            let r = vakil_runs(max_n)?;
            Ok(ReportDocument::new(
                "rpn vakil",
                json!({"max_n": max_n}),
                json!({
                    "pattern_holds": true,
                    "completed_runs": r.completed.len(),
                    "completed": r.completed,
                    "partial": r.partial,
                }),
            ))
        }
        RpnCommand::Fundamental { max_n } => {
            let terms = fundamental_sequence(max_n)?;
            Ok(ReportDocument::new(
                "rpn fundamental",
                json!({"max_n": max_n}),
                serde_json::to_value(terms).expect("serializes"),
            ))
        }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))
}

fn file_param(path: &Path) -> Value {
    json!(path.display().to_string())
}

pub fn run_complex(command: &ComplexCommand) -> Result<ReportDocument> {
    match command {
        ComplexCommand::Homology { file } => {
            let x = parse_complex(&read(file)?)?;
            let groups: Vec<Value> = x
                .degrees()
                .map(|n| {
                    let g = x.homology(n).group().clone();
                    json!({"degree": n, "group": g.to_string(), "rank": g.rank,
                           "torsion": g.torsion.iter().map(ToString::to_string).collect::<Vec<_>>()})
                })
                .collect();
            Ok(ReportDocument::new(
                "complex homology",
                json!({"file": file_param(file)}),
                json!({
                    "all_zero": x.is_acyclic(),
                    "ghost_projective": is_ghost_projective(&x),
                    "homology": groups,
                }),
            ))
        }
        ComplexCommand::GhostCheck { file } => {
            let f = parse_chain_map(&read(file)?)?;
            let induced: Vec<Value> = f
                .source()
                .degrees()
                .filter(|&n| f.source().rank(n) > 0)
                .map(|n| {
                    let m = f.induced_homology_map(n);
                    json!({"degree": n, "source": m.source.to_string(), "target": m.target.to_string(),
                           "zero": m.is_zero(), "matrix": matrix_doc(&m.matrix)})
                })
                .collect();
            let h = f.null_homotopy();
            if h.as_ref().is_some_and(|h| !h.witnesses(&f)) {
                return Err(Error::Falsified("returned homotopy does not satisfy f = dh + hd".into()));
            }
            if h.is_some() && !f.is_ghost() {
                return Err(Error::Falsified("a null-homotopic map is non-zero on homology".into()));
            }
            Ok(ReportDocument::new(
                "complex ghost-check",
                json!({"file": file_param(file)}),
                json!({
                    "is_ghost": f.is_ghost(),
                    "null_homotopic": h.is_some(),
                    "induced": induced,
                    "homotopy": h.map(|h| HomotopyDoc::from_homotopy(&h)),
                }),
            ))
        }
        ComplexCommand::Resolve { file, depth } => {
            let x = parse_complex(&read(file)?)?;
            let tower = adams_tower(&x, *depth)?;
            for (i, c) in tower.covers.iter().enumerate() {
                c.verify()
                    .map_err(|why| Error::Falsified(format!("cover of stage {i}: {why}")))?;
            }
            let stages: Vec<Value> = tower
                .stages
                .iter()
                .enumerate()
                .map(|(i, s)| {
                    json!({"stage": i, "min_degree": s.min_degree(), "ranks": s.ranks(),
                           "ghost_projective": is_ghost_projective(s)})
                })
                .collect();
            let certificate = match certify_length(&x, *depth) {
                Ok(c) => json!({"certified": true, "k": c.k, "reason": null}),
                Err(Error::Precondition(why)) => json!({"certified": false, "k": depth, "reason": why}),
                Err(e) => return Err(e),
            };
            Ok(ReportDocument::new(
                "complex resolve",
                json!({"file": file_param(file), "depth": depth}),
                json!({"stages": stages, "certificate": certificate}),
            ))
        }
        ComplexCommand::Kelly { seed, trials, k } => {
            let s = kelly_suite(*seed, *trials, *k)?;
            Ok(ReportDocument::new(
                "complex kelly",
                json!({"seed": seed, "trials": trials, "k": k}),
                json!({
                    "null_homotopic": s.null_homotopic,
                    "trials": s.trials,
                    "trials_with_nonzero_ghosts": s.trials_with_nonzero_ghosts,
                    "trials_with_essential_ghosts": s.trials_with_essential_ghosts,
                    "summary": format!("{}/{} null-homotopic", s.null_homotopic, s.trials),
                    "results": s.results,
                }),
            ))
        }
        ComplexCommand::PureCheck { file } => {
            let seq = parse_sequence(&read(file)?)?;
            let family: Vec<Value> = seq
                .test_family()?
                .into_iter()
                .map(|d| json!({"d": d, "exact": seq.exact_after_tensor(d)}))
                .collect();
            let pure = seq.is_pure_exact()?;
            let split = seq.is_split();
            if pure != split {
                return Err(Error::Falsified(format!(
                    "tensor test says pure = {pure} but the split test says {split}"
                )));
            }
            Ok(ReportDocument::new(
                "complex pure-check",
                json!({"file": file_param(file)}),
                json!({"pure_exact": pure, "split": split, "tensor_family": family}),
            ))
        }
    }
}
