use std::fmt::Write;

use super::{CnfFormula, Lit, Model};
use crate::error::{parse_err, Error, Result};

/// DIMACS CNF text. Assumptions follow the clauses as unit clauses.
pub fn to_dimacs(f: &CnfFormula) -> String {
    let mut out = String::with_capacity(f.total_clauses() * 12);
    writeln!(out, "p cnf {} {}", f.var_count(), f.total_clauses()).unwrap();
    for c in f.clauses() {
        for l in c {
            write!(out, "{l} ").unwrap();
        }
        out.push_str("0\n");
    }
    for l in f.assumptions() {
        writeln!(out, "{l} 0").unwrap();
    }
    out
}

/// A plain clause set read from DIMACS.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawCnf {
    pub var_count: u32,
    pub clauses: Vec<Vec<Lit>>,
}

pub fn parse_dimacs(text: &str) -> Result<RawCnf> {
    let mut header: Option<(u32, usize)> = None;
    let mut clauses = Vec::new();
    let mut current = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
            continue;
        }
        if let Some(rest) = line.strip_prefix('p') {
            let f: Vec<&str> = rest.split_whitespace().collect();
            if f.len() != 3 || f[0] != "cnf" {
                return Err(parse_err(lineno, "expected `p cnf <vars> <clauses>`"));
            }
            let v = f[1]
                .parse()
                .map_err(|_| parse_err(lineno, "bad variable count"))?;
            let c = f[2]
                .parse()
                .map_err(|_| parse_err(lineno, "bad clause count"))?;
            header = Some((v, c));
            continue;
        }
        let (vars, _) = header.ok_or_else(|| parse_err(lineno, "clause before header"))?;
        for tok in line.split_whitespace() {
            let x: i32 = tok
                .parse()
                .map_err(|_| parse_err(lineno, format!("bad literal `{tok}`")))?;
            match Lit::from_dimacs(x) {
                None => clauses.push(std::mem::take(&mut current)),
                Some(l) if l.var() > vars => {
                    return Err(parse_err(
                        lineno,
                        format!("literal {x} exceeds {vars} variables"),
                    ))
                }
                Some(l) => current.push(l),
            }
        }
    }
    let (var_count, declared) = header.ok_or_else(|| parse_err(1, "missing DIMACS header"))?;
    if !current.is_empty() {
        clauses.push(current);
    }
    if clauses.len() != declared {
        return Err(Error::Parse {
            line: text.lines().count(),
            msg: format!(
                "header declares {declared} clauses, found {}",
                clauses.len()
            ),
        });
    }
    Ok(RawCnf { var_count, clauses })
}

/// Reads solver output. Returns `None` when the solver reported anything
/// other than `s SATISFIABLE`, the model otherwise. Variables missing from
/// the `v` lines default to false.
pub fn parse_solver_output(text: &str, var_count: u32) -> Result<Option<Model>> {
    let mut status = None;
    let mut model = Model::all_false(var_count);
    let mut seen_v = false;
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if let Some(rest) = line.strip_prefix("s ") {
            status = Some(rest.trim().to_string());
        } else if let Some(rest) = line.strip_prefix('v') {
            seen_v = true;
            for tok in rest.split_whitespace() {
                let x: i32 = tok
                    .parse()
                    .map_err(|_| parse_err(i + 1, format!("bad literal `{tok}` in v line")))?;
                if let Some(l) = Lit::from_dimacs(x) {
                    if l.var() > var_count {
                        return Err(parse_err(
                            i + 1,
                            format!("literal {x} exceeds {var_count} variables"),
                        ));
                    }
                    model.set(l.var(), l.is_positive());
                }
            }
        }
    }
    match status.as_deref() {
        Some("SATISFIABLE") => Ok(Some(model)),
        Some(_) => Ok(None),
        None if seen_v => Ok(Some(model)),
        None => Ok(None),
    }
}

/// Reads the `v` lines of a satisfying assignment; missing `v` lines or an
/// unsatisfiable status are errors.
pub fn parse_model(text: &str, var_count: u32) -> Result<Model> {
    parse_solver_output(text, var_count)?
        .ok_or_else(|| parse_err(1, "no satisfying assignment in solver output"))
}
