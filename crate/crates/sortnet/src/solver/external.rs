//! Process adapter for external DIMACS solvers speaking the SAT-competition
//! output conventions (`s SATISFIABLE` / `s UNSATISFIABLE`, `v` model lines).

use std::path::PathBuf;
use std::process::Command;
use std::sync::atomic::{AtomicU64, Ordering};
use std::time::Instant;

use super::{check_model, SolveResult, SolveStats, Status};
use crate::encode::{dimacs_text, CnfInstance};
use crate::error::{Error, Result};

static TEMP_COUNTER: AtomicU64 = AtomicU64::new(0);

fn temp_cnf_path() -> PathBuf {
    let stamp = TEMP_COUNTER.fetch_add(1, Ordering::Relaxed);
    std::env::temp_dir().join(format!(
        "sortnet-{}-{}.cnf",
        std::process::id(),
        stamp
    ))
}

/// Run `command` (program plus fixed arguments) on the instance written as a
/// DIMACS file. The model, if any, is checked against the instance before it
/// is accepted; a model failing that check is an integrity error, never a
/// silent success.
pub fn solve_external(inst: &CnfInstance, command: &[String]) -> Result<SolveResult> {
    solve_external_raw(inst.num_vars(), inst.clauses(), command)
}

/// As [`solve_external`], for a raw clause list (e.g. a relayed DIMACS file).
pub fn solve_external_raw(
    num_vars: u32,
    clauses: &[Vec<i32>],
    command: &[String],
) -> Result<SolveResult> {
    let (program, args) = command
        .split_first()
        .ok_or_else(|| Error::ExternalSolver("empty solver command".into()))?;
    let path = temp_cnf_path();
    std::fs::write(&path, dimacs_text(num_vars, clauses))?;
    let start = Instant::now();
    let output = Command::new(program)
        .args(args)
        .arg(&path)
        .output()
        .map_err(|e| Error::ExternalSolver(format!("failed to launch `{program}`: {e}")));
    let _ = std::fs::remove_file(&path);
    let output = output?;
    let stdout = String::from_utf8_lossy(&output.stdout);
    let (status, assignment) = parse_competition_output(&stdout)?;
    let seconds = start.elapsed().as_secs_f64();
    let model = match status {
        Status::Sat => {
            let mut model = vec![false; num_vars as usize + 1];
            for lit in assignment {
                let var = lit.unsigned_abs() as usize;
                if var == 0 || var >= model.len() {
                    return Err(Error::ExternalSolver(format!(
                        "model literal {lit} out of range"
                    )));
                }
                model[var] = lit > 0;
            }
            check_model(num_vars, clauses, &model).map_err(|e| {
                Error::SolverIntegrity(format!("external model rejected: {e}"))
            })?;
            Some(model)
        }
        _ => None,
    };
    Ok(SolveResult {
        status,
        model,
        stats: SolveStats {
            seconds,
            ..SolveStats::default()
        },
    })
}

fn parse_competition_output(stdout: &str) -> Result<(Status, Vec<i64>)> {
    let mut status = None;
    let mut assignment = Vec::new();
    for line in stdout.lines() {
        if let Some(rest) = line.strip_prefix("s ") {
            status = Some(match rest.trim() {
                "SATISFIABLE" => Status::Sat,
                "UNSATISFIABLE" => Status::Unsat,
                "UNKNOWN" => Status::Unknown,
                other => {
                    return Err(Error::ExternalSolver(format!(
                        "unrecognized status line `s {other}`"
                    )))
                }
            });
        } else if let Some(rest) = line.strip_prefix("v ") {
            for tok in rest.split_whitespace() {
                let lit: i64 = tok.parse().map_err(|_| {
                    Error::ExternalSolver(format!("unparsable model token `{tok}`"))
                })?;
                if lit != 0 {
                    assignment.push(lit);
                }
            }
        }
    }
    let status =
        status.ok_or_else(|| Error::ExternalSolver("no `s` status line in output".into()))?;
    Ok((status, assignment))
}
