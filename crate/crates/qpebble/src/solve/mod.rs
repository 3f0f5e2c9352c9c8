//! Satisfiability backends: an embedded CDCL engine and a harness for
//! external DIMACS solvers speaking the usual competition output format.
//!
//! Every SAT answer is re-verified against the clause set before it is
//! returned; strategy extraction downstream depends entirely on the
//! model, so a backend is never trusted blindly.

mod cdcl;

use std::io::Read;
use std::process::{Command, Stdio};
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::encode::{to_dimacs, CnfInstance};
use cdcl::{Cdcl, CdclStatus};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Sat,
    Unsat,
    Timeout,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub decisions: u64,
    pub propagations: u64,
    pub conflicts: u64,
    pub wall_ms: u64,
}

/// Verdict plus, for SAT, a verified total assignment indexed by
/// `var - 1`.
#[derive(Debug, Clone)]
pub struct SolveResult {
    pub status: Status,
    pub model: Option<Vec<bool>>,
    pub stats: SolveStats,
}

/// Which solver runs a query: the embedded engine, or an external
/// command invoked as `<cmd...> <dimacs-file>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Backend {
    Embedded,
    External(String),
}

impl Backend {
    pub fn solve(&self, cnf: &CnfInstance, timeout_ms: u64) -> Result<SolveResult, ExternalError> {
        match self {
            Backend::Embedded => Ok(solve_embedded(cnf, timeout_ms)),
            Backend::External(cmd) => solve_external(cnf, cmd, timeout_ms),
        }
    }
}

#[derive(Debug, Error)]
pub enum ExternalError {
    #[error("external solver command is empty")]
    EmptyCommand,
    #[error("failed to spawn `{cmd}`: {source}")]
    Spawn { cmd: String, source: std::io::Error },
    #[error("i/o error while driving the external solver: {0}")]
    Io(#[from] std::io::Error),
    #[error("could not interpret external solver output: {0}")]
    Output(String),
    #[error("external solver returned a model that does not satisfy the formula")]
    ModelIntegrity,
}

/// `true` iff every clause contains a literal made true by `model`.
pub fn verify_model(clauses: &[Vec<i32>], model: &[bool]) -> bool {
    clauses.iter().all(|clause| {
        clause
            .iter()
            .any(|&l| model[l.unsigned_abs() as usize - 1] == (l > 0))
    })
}

/// Decide a raw clause set with the embedded engine.
pub fn solve_clauses(num_vars: usize, clauses: &[Vec<i32>], timeout_ms: u64) -> SolveResult {
    let start = Instant::now();
    let deadline = start + Duration::from_millis(timeout_ms);
    let mut engine = Cdcl::new(num_vars);
    for clause in clauses {
        engine.add_clause(clause);
    }
    let status = engine.solve(Some(deadline));
    let model = match status {
        CdclStatus::Sat => {
            let model = engine.model();
            assert!(
                verify_model(clauses, &model),
                "embedded solver produced an unsatisfying model"
            );
            Some(model)
        }
        _ => None,
    };
    SolveResult {
        status: match status {
            CdclStatus::Sat => Status::Sat,
            CdclStatus::Unsat => Status::Unsat,
            CdclStatus::Timeout => Status::Timeout,
        },
        model,
        stats: SolveStats {
            decisions: engine.stats.decisions,
            propagations: engine.stats.propagations,
            conflicts: engine.stats.conflicts,
            wall_ms: start.elapsed().as_millis() as u64,
        },
    }
}

/// Decide `cnf` with the embedded engine. Complete (modulo the
/// timeout) and deterministic: identical inputs give identical models
/// and statistics.
pub fn solve_embedded(cnf: &CnfInstance, timeout_ms: u64) -> SolveResult {
    solve_clauses(cnf.num_vars(), cnf.clauses(), timeout_ms)
}

/// Run an external DIMACS solver on `cnf`.
///
/// The command string is split on whitespace (no shell quoting) and the
/// DIMACS file path is appended as the last argument. Expected output:
/// an `s SATISFIABLE` / `s UNSATISFIABLE` verdict line with `v` model
/// lines, per SAT-competition conventions; exit codes 10/20 are honored
/// when no verdict line is printed. SAT models are verified before
/// being accepted.
pub fn solve_external(
    cnf: &CnfInstance,
    solver_cmd: &str,
    timeout_ms: u64,
) -> Result<SolveResult, ExternalError> {
    let start = Instant::now();
    let mut parts = solver_cmd.split_whitespace();
    let program = parts.next().ok_or(ExternalError::EmptyCommand)?;

    let dir = tempfile::tempdir()?;
    let path = dir.path().join("instance.cnf");
    std::fs::write(&path, to_dimacs(cnf))?;

    let mut child = Command::new(program)
        .args(parts)
        .arg(&path)
        .stdin(Stdio::null())
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .spawn()
        .map_err(|source| ExternalError::Spawn {
            cmd: program.to_string(),
            source,
        })?;

    // drain stdout on a helper thread so a chatty solver can't fill the
    // pipe and deadlock against our wait loop
    let mut stdout_pipe = child.stdout.take().expect("stdout was piped");
    let reader = std::thread::spawn(move || {
        let mut buf = String::new();
        let _ = stdout_pipe.read_to_string(&mut buf);
        buf
    });

    let deadline = start + Duration::from_millis(timeout_ms);
    let exit = loop {
        if let Some(status) = child.try_wait()? {
            break status;
        }
        if Instant::now() >= deadline {
            let _ = child.kill();
            let _ = child.wait();
            // do not join the reader: grandchildren of the killed solver
            // may still hold the pipe open; the thread exits on EOF
            drop(reader);
            return Ok(SolveResult {
                status: Status::Timeout,
                model: None,
                stats: SolveStats {
                    wall_ms: start.elapsed().as_millis() as u64,
                    ..Default::default()
                },
            });
        }
        std::thread::sleep(Duration::from_millis(2));
    };
    let output = reader.join().unwrap_or_default();

    #[derive(PartialEq)]
    enum Verdict {
        Sat,
        Unsat,
        Unknown,
    }
    let mut verdict = None;
    let mut model_lits: Vec<i32> = Vec::new();
    for line in output.lines() {
        if let Some(rest) = line.strip_prefix("s ") {
            verdict = Some(match rest.trim() {
                "SATISFIABLE" => Verdict::Sat,
                "UNSATISFIABLE" => Verdict::Unsat,
                "UNKNOWN" => Verdict::Unknown,
                other => return Err(ExternalError::Output(format!("unknown verdict `{other}`"))),
            });
        } else if let Some(rest) = line.strip_prefix("v ") {
            for tok in rest.split_whitespace() {
                let lit: i32 = tok
                    .parse()
                    .map_err(|_| ExternalError::Output(format!("bad model literal `{tok}`")))?;
                if lit != 0 {
                    model_lits.push(lit);
                }
            }
        }
    }

    let verdict = match verdict {
        Some(v) => v,
        // fall back to SAT-competition exit codes
        None => match exit.code() {
            Some(10) => Verdict::Sat,
            Some(20) => Verdict::Unsat,
            code => {
                return Err(ExternalError::Output(format!(
                    "no `s` verdict line and unrecognized exit status {code:?}"
                )))
            }
        },
    };

    let stats = SolveStats {
        wall_ms: start.elapsed().as_millis() as u64,
        ..Default::default()
    };
    match verdict {
        Verdict::Unsat => Ok(SolveResult {
            status: Status::Unsat,
            model: None,
            stats,
        }),
        Verdict::Unknown => Ok(SolveResult {
            status: Status::Timeout,
            model: None,
            stats,
        }),
        Verdict::Sat => {
            if model_lits.is_empty() {
                return Err(ExternalError::Output(
                    "solver reported SAT but printed no model".into(),
                ));
            }
            let mut model = vec![false; cnf.num_vars()];
            for lit in model_lits {
                let idx = lit.unsigned_abs() as usize;
                if idx == 0 || idx > cnf.num_vars() {
                    return Err(ExternalError::Output(format!(
                        "model literal {lit} out of range"
                    )));
                }
                model[idx - 1] = lit > 0;
            }
            if !verify_model(cnf.clauses(), &model) {
                return Err(ExternalError::ModelIntegrity);
            }
            Ok(SolveResult {
                status: Status::Sat,
                model: Some(model),
                stats,
            })
        }
    }
}
