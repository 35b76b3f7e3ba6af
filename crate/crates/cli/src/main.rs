//! Verification CLI: runs the check catalog against the shipped groups and
//! writes a deterministic JSON report.
//!
//! Exit codes: 0 when every executed check passes, 1 when any check fails,
//! 2 for configuration errors (unknown suites, groups, check ids, malformed
//! flags or config files, unwritable output).

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use groupderiv_cli::checks::catalog;
use groupderiv_cli::config::{resolve, validate_suite, CliOverrides, FileConfig};
use groupderiv_cli::suite::{run_suite, selected_checks};

#[derive(Parser)]
#[command(
    name = "groupderiv",
    version,
    about = "Numeric verification of slope-function derivatives between metric groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run checks and print a JSON report to stdout.
    Run {
        /// Suite to run (axioms, homspace, derivative, theorems, all).
        suite: Option<String>,
        /// Suite to run, as a flag; the positional argument wins.
        #[arg(long = "suite", value_name = "SUITE")]
        suite_flag: Option<String>,
        /// Root seed for all sampling.
        #[arg(long)]
        seed: Option<u64>,
        /// Pairwise sample count per check.
        #[arg(long)]
        samples: Option<usize>,
        /// Probe-set size for homomorphism metrics.
        #[arg(long = "probe-points")]
        probe_points: Option<usize>,
        /// JSON config file; flags override its values.
        #[arg(long, value_name = "FILE")]
        config: Option<PathBuf>,
        /// Tolerance override, repeatable (e.g. --tolerance fp=1e-8).
        #[arg(long = "tolerance", value_name = "NAME=VALUE")]
        tolerances: Vec<String>,
        /// Restrict to checks on this group, repeatable.
        #[arg(long = "group", value_name = "GROUP")]
        groups: Vec<String>,
        /// Write the JSON report here instead of stdout.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// List check ids, optionally restricted to one suite.
    List {
        /// Suite filter (axioms, homspace, derivative, theorems, all).
        #[arg(long)]
        suite: Option<String>,
    },
    /// Describe one check: its law, group, and method.
    Explain {
        /// Catalog id, e.g. axioms/metric/circle.
        check_id: String,
    },
}

fn config_error(message: &str) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(2)
}

/// Writes to stdout; a reader that closed the pipe ends the run quietly.
fn emit(text: &str) -> Result<(), ExitCode> {
    let mut out = io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Err(ExitCode::SUCCESS),
        Err(e) => {
            eprintln!("error: cannot write to stdout: {e}");
            Err(ExitCode::from(2))
        }
    }
}

fn run(
    suite: Option<String>,
    suite_flag: Option<String>,
    seed: Option<u64>,
    samples: Option<usize>,
    probe_points: Option<usize>,
    config: Option<PathBuf>,
    tolerances: Vec<String>,
    groups: Vec<String>,
    out: Option<PathBuf>,
) -> ExitCode {
    let file = match config {
        None => None,
        Some(path) => {
            let text = match fs::read_to_string(&path) {
                Ok(t) => t,
                Err(e) => return config_error(&format!("cannot read {}: {e}", path.display())),
            };
            match serde_json::from_str::<FileConfig>(&text) {
                Ok(f) => Some(f),
                Err(e) => {
                    return config_error(&format!("cannot parse {}: {e}", path.display()))
                }
            }
        }
    };
    let overrides = CliOverrides {
        suite_positional: suite,
        suite_flag,
        seed,
        samples,
        probe_points,
        groups,
        tolerances,
    };
    let cfg = match resolve(file, &overrides) {
        Ok(c) => c,
        Err(e) => return config_error(&e),
    };
    if selected_checks(&cfg).is_empty() {
        return config_error(&format!(
            "no checks match suite '{}' with groups {:?}",
            cfg.suite, cfg.groups
        ));
    }

    let mut passed = 0usize;
    let mut failed = 0usize;
    let report = run_suite(&cfg, |outcome| {
        let verdict = if outcome.passed {
            passed += 1;
            "[PASS]"
        } else {
            failed += 1;
            "[FAIL]"
        };
        eprintln!(
            "{verdict} {} (max {:.3e} <= {:.3e})",
            outcome.id, outcome.max_violation, outcome.tolerance
        );
    });
    eprintln!(
        "{}/{} checks passed in {} ms (suite {}, seed {})",
        passed,
        passed + failed,
        report.meta.duration_ms,
        cfg.suite,
        cfg.seed
    );

    let json = match serde_json::to_string_pretty(&report) {
        Ok(j) => j,
        Err(e) => return config_error(&format!("cannot serialize report: {e}")),
    };
    match out {
        None => {
            if let Err(code) = emit(&(json + "\n")) {
                return code;
            }
        }
        Some(path) => {
            if let Err(e) = fs::write(&path, json + "\n") {
                return config_error(&format!("cannot write {}: {e}", path.display()));
            }
            eprintln!("report written to {}", path.display());
        }
    }
    if report.comparison.overall {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn list(suite: Option<String>) -> ExitCode {
    let filter = match suite {
        None => None,
        Some(s) => match validate_suite(&s) {
            Ok(v) => Some(v),
            Err(e) => return config_error(&e),
        },
    };
    let mut text = String::new();
    for def in catalog() {
        let keep = match &filter {
            Some(f) => f == "all" || def.suite == f,
            None => true,
        };
        if keep {
            text.push_str(&format!(
                "{:<52} [{}] ({})\n",
                def.id, def.suite, def.group
            ));
        }
    }
    match emit(&text) {
        Ok(()) => ExitCode::SUCCESS,
        Err(code) => code,
    }
}

fn explain(check_id: &str) -> ExitCode {
    match catalog().into_iter().find(|d| d.id == check_id) {
        Some(def) => {
            let text = format!(
                "{}\n  suite:  {}\n  group:  {}\n  law:    {}\n  method: {}\n",
                def.id, def.suite, def.group, def.anchor, def.explain
            );
            match emit(&text) {
                Ok(()) => ExitCode::SUCCESS,
                Err(code) => code,
            }
        }
        None => config_error(&format!(
            "unknown check id '{check_id}' (see `groupderiv list`)"
        )),
    }
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Run {
            suite,
            suite_flag,
            seed,
            samples,
            probe_points,
            config,
            tolerances,
            groups,
            out,
        } => run(
            suite,
            suite_flag,
            seed,
            samples,
            probe_points,
            config,
            tolerances,
            groups,
            out,
        ),
        Command::List { suite } => list(suite),
        Command::Explain { check_id } => explain(&check_id),
    }
}
