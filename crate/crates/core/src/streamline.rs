//! Random pairings of the type-3 terms and streamlining constraints.
//!
//! A pairing assigns every type-3 term `a_ij b_jk c_ki` to exactly one
//! summand, at most two per summand. For `n = 3, m = 23` that is four
//! summands with two terms and nineteen with one.

use std::collections::BTreeSet;
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::encoder::{CnfFormula, Lit, Role};
use crate::error::{parse_err, Error, Result};
use crate::scheme::{core, enumerate_type3, BitMat, Scheme, Summand, TermIndex};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pairing {
    n: usize,
    entries: Vec<Vec<TermIndex>>,
}

impl Pairing {
    /// Validates that every type-3 term occurs exactly once and that every
    /// summand carries one or two terms.
    pub fn new(n: usize, mut entries: Vec<Vec<TermIndex>>) -> Result<Self> {
        let expected: BTreeSet<TermIndex> = enumerate_type3(n).into_iter().collect();
        let mut seen = BTreeSet::new();
        for (l, e) in entries.iter_mut().enumerate() {
            if e.is_empty() || e.len() > 2 {
                return Err(Error::Domain(format!(
                    "summand {} carries {} type-3 terms, expected 1 or 2",
                    l + 1,
                    e.len()
                )));
            }
            e.sort();
            for t in e.iter() {
                if !expected.contains(t) {
                    return Err(Error::Domain(format!("{t} is not a type-3 term for n={n}")));
                }
                if !seen.insert(*t) {
                    return Err(Error::Domain(format!("{t} assigned twice")));
                }
            }
        }
        if seen.len() != expected.len() {
            return Err(Error::Domain(format!(
                "pairing covers {} of {} type-3 terms",
                seen.len(),
                expected.len()
            )));
        }
        Ok(Pairing { n, entries })
    }

    /// The pairing realized by a scheme's core, if it has the pairing shape.
    pub fn from_scheme_core(s: &Scheme) -> Result<Self> {
        Pairing::new(s.n(), core(s))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<TermIndex>] {
        &self.entries
    }

    /// Terms assigned to summand `l` (1-based).
    pub fn entry(&self, l: usize) -> &[TermIndex] {
        &self.entries[l - 1]
    }

    /// 1-based indices of the summands that carry a single term.
    pub fn singletons(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, e)| e.len() == 1)
            .map(|(l, _)| l + 1)
    }

    pub fn sizes(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.entries.iter().map(Vec::len).collect();
        v.sort_unstable();
        v
    }
}

impl fmt::Display for Pairing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (l, e) in self.entries.iter().enumerate() {
            write!(f, "{}:", l + 1)?;
            for t in e {
                write!(f, " {t}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Reads `l: t1 [t2]` lines; `n` is inferred from the number of terms.
pub fn parse_pairing(text: &str) -> Result<Pairing> {
    let mut entries = Vec::new();
    let mut last = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        last = i + 1;
        let (label, rest) = line
            .split_once(':')
            .ok_or_else(|| parse_err(i + 1, "expected `<index>: <term> [<term>]`"))?;
        let idx: usize = label
            .trim()
            .parse()
            .map_err(|_| parse_err(i + 1, format!("bad summand index `{label}`")))?;
        if idx != entries.len() + 1 {
            return Err(parse_err(
                i + 1,
                format!("summand index {idx}, expected {}", entries.len() + 1),
            ));
        }
        let terms = rest
            .split_whitespace()
            .map(|t| {
                t.parse::<TermIndex>()
                    .map_err(|e| parse_err(i + 1, e.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        entries.push(terms);
    }
    let total: usize = entries.iter().map(Vec::len).sum();
    let n = (1..=8).find(|n| n * n * n == total).ok_or_else(|| {
        parse_err(
            last.max(1),
            format!("{total} terms is not the type-3 count of any dimension"),
        )
    })?;
    Pairing::new(n, entries).map_err(|e| parse_err(last.max(1), e.to_string()))
}

/// Uniformly chooses `2 (n^3 - m)` type-3 terms, splits them into pairs,
/// and spreads the pairs and the remaining singles over the `m` summands.
pub fn random_pairing(n: usize, m: usize, seed: u64) -> Result<Pairing> {
    let cube = n * n * n;
    if cube > 2 * m || cube < m {
        return Err(Error::Domain(format!(
            "no pairing of {cube} type-3 terms over {m} summands with 1-2 terms each"
        )));
    }
    let pairs = cube - m;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut terms = enumerate_type3(n);
    terms.shuffle(&mut rng);
    let mut groups: Vec<Vec<TermIndex>> = terms[..2 * pairs].chunks(2).map(<[_]>::to_vec).collect();
    groups.extend(terms[2 * pairs..].iter().map(|t| vec![*t]));
    groups.shuffle(&mut rng);
    Pairing::new(n, groups)
}

fn term_base_lits(f: &CnfFormula, l: usize, t: &TermIndex) -> [u32; 3] {
    let b = f.base();
    [
        b.var(Role::Alpha, l, t.i1 as usize, t.i2 as usize),
        b.var(Role::Beta, l, t.j1 as usize, t.j2 as usize),
        b.var(Role::Gamma, l, t.k1 as usize, t.k2 as usize),
    ]
}

/// Forces the core of every solution to contain the pairing: three unit
/// clauses per assigned term. With `blocking`, every type-3 term is also
/// forbidden in every summand it is not assigned to, so the core equals
/// the pairing exactly.
pub fn hardcode_pairing(mut f: CnfFormula, p: &Pairing, blocking: bool) -> Result<CnfFormula> {
    if p.n() != f.n() || p.m() != f.m() {
        return Err(Error::Dimension(format!(
            "pairing is n={} m={}, formula is n={} m={}",
            p.n(),
            p.m(),
            f.n(),
            f.m()
        )));
    }
    let type3 = enumerate_type3(f.n());
    for l in 1..=f.m() {
        let assigned = p.entry(l);
        for t in assigned {
            for v in term_base_lits(&f, l, t) {
                f.add_clause(vec![Lit::pos(v)])?;
            }
        }
        if blocking {
            for t in type3.iter().filter(|t| !assigned.contains(t)) {
                let [a, b, c] = term_base_lits(&f, l, t);
                f.add_clause(vec![Lit::neg(a), Lit::neg(b), Lit::neg(c)])?;
            }
        }
    }
    f.set_pairing(p.clone());
    Ok(f)
}

/// Forbids every type-3 term in summand `l` (1-based): one clause per term.
pub fn block_type3(mut f: CnfFormula, l: usize) -> Result<CnfFormula> {
    if l == 0 || l > f.m() {
        return Err(Error::Domain(format!("summand {l} outside 1..={}", f.m())));
    }
    for t in enumerate_type3(f.n()) {
        let [a, b, c] = term_base_lits(&f, l, &t);
        f.add_clause(vec![Lit::neg(a), Lit::neg(b), Lit::neg(c)])?;
    }
    Ok(f)
}

/// Zeroing patterns for the first structural role: two rows, two columns,
/// or one row and one column. Each pattern is the list of zeroed cells.
fn line_patterns(n: usize) -> Vec<Vec<(usize, usize)>> {
    let row = |r: usize| (0..n).map(move |c| (r, c));
    let col = |c: usize| (0..n).map(move |r| (r, c));
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            out.push(row(a).chain(row(b)).collect());
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            out.push(col(a).chain(col(b)).collect());
        }
    }
    for r in 0..n {
        for c in 0..n {
            let mut cells: Vec<_> = row(r).chain(col(c)).collect();
            cells.sort_unstable();
            cells.dedup();
            out.push(cells);
        }
    }
    out
}

/// Structural constraint for a summand that carries a single type-3 term:
/// one coefficient matrix has two rows, two columns, or a row and a column
/// entirely zero, and a different matrix has at most one nonzero entry.
/// Which matrices play the two parts is left to the solver through
/// selector variables.
pub fn streamline_single_summand(mut f: CnfFormula, l: usize) -> Result<CnfFormula> {
    if l == 0 || l > f.m() {
        return Err(Error::Domain(format!("summand {l} outside 1..={}", f.m())));
    }
    match f.pairing() {
        Some(p) if p.entry(l).len() == 1 => {}
        Some(p) => {
            return Err(Error::Domain(format!(
                "summand {l} carries {} type-3 terms in the active pairing",
                p.entry(l).len()
            )))
        }
        None => return Err(Error::Domain("no pairing hardcoded in the formula".into())),
    }
    let n = f.n();
    let base = *f.base();
    let cell_var = |role: Role, r: usize, c: usize| base.var(role, l, r + 1, c + 1);

    let lines: Vec<u32> = Role::ALL.iter().map(|_| f.new_var()).collect();
    let single: Vec<u32> = Role::ALL.iter().map(|_| f.new_var()).collect();
    for sel in [&lines, &single] {
        f.add_clause(sel.iter().map(|&v| Lit::pos(v)).collect())?;
        for a in 0..3 {
            for b in a + 1..3 {
                f.add_clause(vec![Lit::neg(sel[a]), Lit::neg(sel[b])])?;
            }
        }
    }
    for x in 0..3 {
        f.add_clause(vec![Lit::neg(lines[x]), Lit::neg(single[x])])?;
    }

    let patterns = line_patterns(n);
    for (x, role) in Role::ALL.into_iter().enumerate() {
        let pvars: Vec<u32> = patterns.iter().map(|_| f.new_var()).collect();
        let mut pick = vec![Lit::neg(lines[x])];
        pick.extend(pvars.iter().map(|&v| Lit::pos(v)));
        f.add_clause(pick)?;
        for (pv, cells) in pvars.iter().zip(&patterns) {
            for &(r, c) in cells {
                f.add_clause(vec![Lit::neg(*pv), Lit::neg(cell_var(role, r, c))])?;
            }
        }

        let qvars: Vec<u32> = (0..n * n).map(|_| f.new_var()).collect();
        let mut pick = vec![Lit::neg(single[x])];
        pick.extend(qvars.iter().map(|&v| Lit::pos(v)));
        f.add_clause(pick)?;
        for (keep, qv) in qvars.iter().enumerate() {
            for other in (0..n * n).filter(|&c| c != keep) {
                f.add_clause(vec![
                    Lit::neg(*qv),
                    Lit::neg(cell_var(role, other / n, other % n)),
                ])?;
            }
        }
    }
    Ok(f)
}

/// Applies [`streamline_single_summand`] to every singleton summand of the
/// active pairing.
pub fn streamline_singletons(f: CnfFormula) -> Result<CnfFormula> {
    let singles: Vec<usize> = f
        .pairing()
        .ok_or_else(|| Error::Domain("no pairing hardcoded in the formula".into()))?
        .singletons()
        .collect();
    singles.into_iter().try_fold(f, streamline_single_summand)
}

/// At-most-two over the cube indicators of every term of type 0, 1 or 2.
/// Together with the parity constraint each such term then occurs zero or
/// two times.
pub fn streamline_even_occurrence(mut f: CnfFormula) -> Result<CnfFormula> {
    let groups: Vec<Vec<u32>> = f
        .groups()
        .iter()
        .filter(|g| !g.rhs)
        .map(|g| g.cubes.clone())
        .collect();
    for cubes in groups {
        at_most_two(&mut f, &cubes)?;
    }
    Ok(f)
}

/// Pairwise (triple-forbidding) encoding up to 8 inputs, sequential counter above.
fn at_most_two(f: &mut CnfFormula, xs: &[u32]) -> Result<()> {
    let k = xs.len();
    if k <= 2 {
        return Ok(());
    }
    if k <= 8 {
        for a in 0..k {
            for b in a + 1..k {
                for c in b + 1..k {
                    f.add_clause(vec![Lit::neg(xs[a]), Lit::neg(xs[b]), Lit::neg(xs[c])])?;
                }
            }
        }
        return Ok(());
    }
    // s[i][j]: at least j+1 of x_0..=x_i are true
    let s: Vec<[u32; 2]> = (0..k - 1).map(|_| [f.new_var(), f.new_var()]).collect();
    f.add_clause(vec![Lit::neg(xs[0]), Lit::pos(s[0][0])])?;
    f.add_clause(vec![Lit::neg(s[0][1])])?;
    for i in 1..k - 1 {
        f.add_clause(vec![Lit::neg(xs[i]), Lit::pos(s[i][0])])?;
        f.add_clause(vec![Lit::neg(s[i - 1][0]), Lit::pos(s[i][0])])?;
        f.add_clause(vec![
            Lit::neg(xs[i]),
            Lit::neg(s[i - 1][0]),
            Lit::pos(s[i][1]),
        ])?;
        f.add_clause(vec![Lit::neg(s[i - 1][1]), Lit::pos(s[i][1])])?;
        f.add_clause(vec![Lit::neg(xs[i]), Lit::neg(s[i - 1][1])])?;
    }
    f.add_clause(vec![Lit::neg(xs[k - 1]), Lit::neg(s[k - 2][1])])?;
    Ok(())
}

/// Direct check of the single-summand structure on a summand.
pub fn single_summand_structure_holds(sm: &Summand) -> bool {
    let n = sm.n();
    let patterns = line_patterns(n);
    let lines_ok = |m: &BitMat| {
        patterns
            .iter()
            .any(|p| p.iter().all(|&(r, c)| !m.get(r, c)))
    };
    let single_ok = |m: &BitMat| m.count_ones() <= 1;
    (0..3).any(|x| (0..3).any(|y| x != y && lines_ok(sm.matrix(x)) && single_ok(sm.matrix(y))))
}

/// Direct check that every non-type-3 term is produced by at most two summands.
pub fn even_occurrence_holds(s: &Scheme) -> bool {
    crate::scheme::enumerate_terms(s.n())
        .filter(|t| t.term_type() != 3)
        .all(|t| s.summands().iter().filter(|sm| sm.produces(&t)).count() <= 2)
}

#[cfg(test)]
#[path = "streamline_tests.rs"]
mod tests;
