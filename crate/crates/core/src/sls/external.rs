use std::process::Command;
use std::sync::atomic::{AtomicU64, Ordering};

use crate::encoder::{parse_solver_output, to_dimacs, CnfFormula, Model};
use crate::error::{Error, Result};

/// Environment variable naming an external DIMACS solver command. The CNF
/// path is appended as the last argument; the solver must print `s`/`v` lines.
pub const SOLVER_ENV: &str = "BRENTSAT_SOLVER";

static COUNTER: AtomicU64 = AtomicU64::new(0);

/// Runs an external solver on `f`. `Ok(None)` when it reports no model.
/// A returned model has been checked against the formula.
pub fn solve_external(f: &CnfFormula, command: &str) -> Result<Option<Model>> {
    let mut parts = command.split_whitespace();
    let program = parts
        .next()
        .ok_or_else(|| Error::External("empty solver command".into()))?;
    let path = std::env::temp_dir().join(format!(
        "brentsat-{}-{}.cnf",
        std::process::id(),
        COUNTER.fetch_add(1, Ordering::Relaxed)
    ));
    std::fs::write(&path, to_dimacs(f))?;
    let output = Command::new(program).args(parts).arg(&path).output();
    let _ = std::fs::remove_file(&path);
    let output = output.map_err(|e| Error::External(format!("cannot run `{program}`: {e}")))?;
    let stdout = String::from_utf8_lossy(&output.stdout);
    match parse_solver_output(&stdout, f.var_count())? {
        Some(model) if crate::sls::check_model(f, &model) => Ok(Some(model)),
        Some(_) => Err(Error::Integrity(
            "external model violates the formula".into(),
        )),
        None => Ok(None),
    }
}
