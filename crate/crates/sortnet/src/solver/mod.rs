//! CNF satisfiability: an embedded CDCL solver plus a process adapter for
//! external DIMACS solvers. Every satisfying model is checked against the
//! instance before it is returned.

mod cdcl;
mod external;

pub use external::{solve_external, solve_external_raw};

use crate::encode::CnfInstance;
use crate::error::{Error, Result};

/// Tuning knobs of the internal solver. `clause_decay` controls how fast
/// learnt-clause activities age; high values keep rarely used clauses
/// around longer.
#[derive(Debug, Clone)]
pub struct SolverConfig {
    pub var_decay: f64,
    pub clause_decay: f64,
    pub restart_first: u64,
    pub restart_factor: f64,
    /// Failed-literal probing over the comparator variables before search.
    pub probe_gates: bool,
    pub max_conflicts: Option<u64>,
    pub max_seconds: Option<f64>,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            var_decay: 0.95,
            clause_decay: 0.9999,
            restart_first: 100,
            restart_factor: 1.5,
            probe_gates: false,
            max_conflicts: None,
            max_seconds: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Sat,
    Unsat,
    Unknown,
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct SolveStats {
    pub conflicts: u64,
    pub decisions: u64,
    pub propagations: u64,
    pub seconds: f64,
}

/// Outcome of one solver run. `model` is present iff `status` is `Sat` and
/// assigns every variable; index by variable number (entry 0 is unused).
#[derive(Debug, Clone)]
pub struct SolveResult {
    pub status: Status,
    pub model: Option<Vec<bool>>,
    pub stats: SolveStats,
}

/// Decide an encoded instance with the internal solver.
pub fn solve(inst: &CnfInstance, cfg: &SolverConfig) -> Result<SolveResult> {
    let probe_vars = if cfg.probe_gates {
        inst.varmap.g_var_count()
    } else {
        0
    };
    solve_clauses_probing(inst.num_vars(), inst.clauses(), cfg, probe_vars)
}

/// Decide a raw clause list (e.g. parsed DIMACS) with the internal solver.
pub fn solve_clauses(num_vars: u32, clauses: &[Vec<i32>], cfg: &SolverConfig) -> Result<SolveResult> {
    solve_clauses_probing(num_vars, clauses, cfg, 0)
}

fn solve_clauses_probing(
    num_vars: u32,
    clauses: &[Vec<i32>],
    cfg: &SolverConfig,
    probe_vars: u32,
) -> Result<SolveResult> {
    validate_clauses(num_vars, clauses)?;
    let result = cdcl::run(num_vars, clauses, cfg, probe_vars);
    if result.status == Status::Sat {
        let model = result
            .model
            .as_ref()
            .ok_or_else(|| Error::SolverIntegrity("sat without model".into()))?;
        check_model(num_vars, clauses, model)?;
    }
    Ok(result)
}

pub(crate) fn validate_clauses(num_vars: u32, clauses: &[Vec<i32>]) -> Result<()> {
    for clause in clauses {
        for &lit in clause {
            if lit == 0 {
                return Err(Error::MalformedClause("zero literal".into()));
            }
            if lit.unsigned_abs() > num_vars {
                return Err(Error::MalformedClause(format!(
                    "literal {lit} out of range for {num_vars} variables"
                )));
            }
        }
    }
    Ok(())
}

/// A model must satisfy every clause and cover every variable.
pub(crate) fn check_model(num_vars: u32, clauses: &[Vec<i32>], model: &[bool]) -> Result<()> {
    if model.len() != num_vars as usize + 1 {
        return Err(Error::SolverIntegrity(format!(
            "model covers {} of {num_vars} variables",
            model.len().saturating_sub(1)
        )));
    }
    for (idx, clause) in clauses.iter().enumerate() {
        let satisfied = clause.iter().any(|&lit| {
            let value = model[lit.unsigned_abs() as usize];
            (lit > 0) == value
        });
        if !satisfied {
            return Err(Error::SolverIntegrity(format!(
                "model falsifies clause {idx}: {clause:?}"
            )));
        }
    }
    Ok(())
}
