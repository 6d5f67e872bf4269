//! Brent equations as CNF.
//!
//! Over GF(2) the cube `alpha * beta * gamma` becomes a conjunction and the
//! sum over summands an exclusive or. Each cube is built from a reusable
//! pair gate `u <-> alpha & beta` and a cube gate `v <-> u & gamma`; the pair
//! gate for `(l, alpha cell, beta cell)` is shared by the `n^2` equations
//! that differ only in the gamma cell. An XOR over `k >= 4` cube literals is
//! split as `w <-> v1 ^ v2 ^ v3` followed by `v4 ^ ... ^ vk ^ w`, recursing on
//! the tail; the final `<= 3` literals carry the constant right-hand side.
//!
//! Variable numbering: base variables (alpha block, beta block, gamma block;
//! each ordered by summand then row-major cell), then pair gates in order of
//! first use, then cube gates, then XOR chunk variables, then anything added
//! later (streamlining selectors, counters).

mod dimacs;
mod lit;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::scheme::{enumerate_terms, verify, BitMat, Scheme, Summand, TermIndex, MAX_DIM};
use crate::streamline::Pairing;

pub use dimacs::{parse_dimacs, parse_model, parse_solver_output, to_dimacs, RawCnf};
pub use lit::{Lit, Model};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    Alpha,
    Beta,
    Gamma,
}

impl Role {
    pub const ALL: [Role; 3] = [Role::Alpha, Role::Beta, Role::Gamma];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Role::Alpha => "alpha",
            Role::Beta => "beta",
            Role::Gamma => "gamma",
        }
    }
}

impl std::str::FromStr for Role {
    type Err = Error;

    fn from_str(s: &str) -> Result<Role> {
        match s {
            "alpha" => Ok(Role::Alpha),
            "beta" => Ok(Role::Beta),
            "gamma" => Ok(Role::Gamma),
            _ => Err(Error::Domain(format!("unknown role `{s}`"))),
        }
    }
}

/// A base variable's coordinates; `summand`, `row` and `col` are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BaseVar {
    pub role: Role,
    pub summand: usize,
    pub row: usize,
    pub col: usize,
}

/// Bijection between CNF ids `1..=3 m n^2` and base-variable coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BaseVarMap {
    n: usize,
    m: usize,
}

impl BaseVarMap {
    pub fn new(n: usize, m: usize) -> Result<Self> {
        if !(1..=MAX_DIM).contains(&n) {
            return Err(Error::Domain(format!("n={n} outside 1..={MAX_DIM}")));
        }
        if m == 0 {
            return Err(Error::Domain("m must be at least 1".into()));
        }
        Ok(BaseVarMap { n, m })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        3 * self.m * self.n * self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Id of a base variable; coordinates 1-based. Panics when out of range.
    #[inline]
    pub fn var(&self, role: Role, summand: usize, row: usize, col: usize) -> u32 {
        assert!(
            (1..=self.m).contains(&summand)
                && (1..=self.n).contains(&row)
                && (1..=self.n).contains(&col),
            "base coordinate out of range"
        );
        let cells = self.n * self.n;
        (role.index() * self.m * cells + (summand - 1) * cells + (row - 1) * self.n + col) as u32
    }

    pub fn lookup(&self, var: u32) -> Option<BaseVar> {
        let v = var as usize;
        if v == 0 || v > self.len() {
            return None;
        }
        let cells = self.n * self.n;
        let z = v - 1;
        let role = Role::ALL[z / (self.m * cells)];
        let rest = z % (self.m * cells);
        Some(BaseVar {
            role,
            summand: rest / cells + 1,
            row: rest % cells / self.n + 1,
            col: rest % self.n + 1,
        })
    }

    pub fn entries(&self) -> impl Iterator<Item = (u32, BaseVar)> + '_ {
        (1..=self.len() as u32).map(move |v| (v, self.lookup(v).expect("in range")))
    }

    /// Sidecar listing, one `<varid> <role> <l> <row> <col>` line per base variable.
    pub fn to_sidecar(&self) -> String {
        let mut out = String::with_capacity(self.len() * 16);
        for (v, b) in self.entries() {
            out.push_str(&format!(
                "{v} {} {} {} {}\n",
                b.role.as_str(),
                b.summand,
                b.row,
                b.col
            ));
        }
        out
    }

    /// Reads a sidecar and checks it against the canonical numbering.
    pub fn from_sidecar(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let f: Vec<&str> = line.split_whitespace().collect();
            let bad = || crate::error::parse_err(i + 1, format!("bad varmap line `{line}`"));
            if f.len() != 5 {
                return Err(bad());
            }
            let num = |s: &str| s.parse::<usize>().map_err(|_| bad());
            rows.push((
                i + 1,
                num(f[0])?,
                f[1].parse::<Role>()?,
                num(f[2])?,
                num(f[3])?,
                num(f[4])?,
            ));
        }
        let m = rows.iter().map(|r| r.3).max().unwrap_or(0);
        let n = rows.iter().map(|r| r.4.max(r.5)).max().unwrap_or(0);
        let map = BaseVarMap::new(n, m)?;
        if rows.len() != map.len() {
            return Err(Error::Dimension(format!(
                "varmap has {} entries, expected {}",
                rows.len(),
                map.len()
            )));
        }
        for (line, v, role, l, r, c) in rows {
            if (1..=n).contains(&r) && (1..=n).contains(&c) && map.var(role, l, r, c) as usize != v
            {
                return Err(crate::error::parse_err(
                    line,
                    "varmap does not follow the base numbering",
                ));
            }
        }
        Ok(map)
    }
}

/// Gate definition of an auxiliary variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gate {
    /// `out <-> a & b`
    And { out: u32, a: u32, b: u32 },
    /// `out <-> x ^ y ^ z`
    Xor3 { out: u32, inputs: [u32; 3] },
}

/// One Brent equation: the parity of `cubes` must equal `rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityGroup {
    pub term: TermIndex,
    /// Cube gate of each summand, in summand order.
    pub cubes: Vec<u32>,
    pub rhs: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct EncodingCounts {
    pub base: usize,
    pub pair_gates: usize,
    pub cube_gates: usize,
    pub xor_chunks: usize,
}

/// A clause database for the Brent equations of one `(n, m)` together with
/// the gate bookkeeping needed to decode and extend assignments.
#[derive(Debug, Clone)]
pub struct CnfFormula {
    base: BaseVarMap,
    var_count: u32,
    clauses: Vec<Vec<Lit>>,
    gates: Vec<Gate>,
    groups: Vec<ParityGroup>,
    counts: EncodingCounts,
    assumptions: Vec<Lit>,
    pairing: Option<Pairing>,
}

/// Clauses forcing the parity of `vars` to `rhs`: one clause per forbidden
/// assignment, `2^(k-1)` in total.
pub(crate) fn parity_clauses(vars: &[u32], rhs: bool) -> Vec<Vec<Lit>> {
    let k = vars.len();
    let mut out = Vec::with_capacity(1 << k.saturating_sub(1));
    for bits in 0u32..(1 << k) {
        if (bits.count_ones() % 2 == 1) != rhs {
            out.push(
                vars.iter()
                    .enumerate()
                    .map(|(i, &v)| Lit::new(v, bits >> i & 1 == 0))
                    .collect(),
            );
        }
    }
    out
}

pub(crate) fn and_clauses(out: u32, a: u32, b: u32) -> [Vec<Lit>; 3] {
    [
        vec![Lit::neg(out), Lit::pos(a)],
        vec![Lit::neg(out), Lit::pos(b)],
        vec![Lit::pos(out), Lit::neg(a), Lit::neg(b)],
    ]
}

/// Compiles the Brent equations for `n x n` matrices and `m` multiplications.
pub fn encode(n: usize, m: usize) -> Result<CnfFormula> {
    let base = BaseVarMap::new(n, m)?;
    let cells = n * n;
    let nb = base.len() as u32;
    let pair_total = (m * cells * cells) as u32;
    let cube_total = (m * cells * cells * cells) as u32;

    let mut pair_ids = vec![0u32; m * cells * cells];
    let mut next_pair = nb + 1;
    let mut next_cube = nb + pair_total + 1;
    let mut next_xor = nb + pair_total + cube_total + 1;

    let mut clauses = Vec::new();
    let mut gates = Vec::new();
    let mut groups = Vec::with_capacity(cells * cells * cells);
    let mut xor_chunks = 0;

    for term in enumerate_terms(n) {
        let (i1, i2, j1, j2, k1, k2) = term.zero_based();
        let a_cell = i1 * n + i2;
        let b_cell = j1 * n + j2;
        let mut cubes = Vec::with_capacity(m);
        for l in 1..=m {
            let slot = &mut pair_ids[((l - 1) * cells + a_cell) * cells + b_cell];
            if *slot == 0 {
                *slot = next_pair;
                next_pair += 1;
                let a = base.var(Role::Alpha, l, i1 + 1, i2 + 1);
                let b = base.var(Role::Beta, l, j1 + 1, j2 + 1);
                gates.push(Gate::And { out: *slot, a, b });
                clauses.extend(and_clauses(*slot, a, b));
            }
            let u = *slot;
            let g = base.var(Role::Gamma, l, k1 + 1, k2 + 1);
            let v = next_cube;
            next_cube += 1;
            gates.push(Gate::And { out: v, a: u, b: g });
            clauses.extend(and_clauses(v, u, g));
            cubes.push(v);
        }

        let mut pending = cubes.clone();
        while pending.len() >= 4 {
            let w = next_xor;
            next_xor += 1;
            xor_chunks += 1;
            let inputs = [pending[0], pending[1], pending[2]];
            gates.push(Gate::Xor3 { out: w, inputs });
            clauses.extend(parity_clauses(&[inputs[0], inputs[1], inputs[2], w], false));
            pending.drain(..3);
            pending.push(w);
        }
        let rhs = term.term_type() == 3;
        clauses.extend(parity_clauses(&pending, rhs));
        groups.push(ParityGroup { term, cubes, rhs });
    }

    debug_assert_eq!(next_pair, nb + pair_total + 1);
    debug_assert_eq!(next_cube, nb + pair_total + cube_total + 1);

    Ok(CnfFormula {
        base,
        var_count: next_xor - 1,
        clauses,
        gates,
        groups,
        counts: EncodingCounts {
            base: nb as usize,
            pair_gates: (next_pair - nb - 1) as usize,
            cube_gates: cube_total as usize,
            xor_chunks,
        },
        assumptions: Vec::new(),
        pairing: None,
    })
}

impl CnfFormula {
    pub fn n(&self) -> usize {
        self.base.n()
    }

    pub fn m(&self) -> usize {
        self.base.m()
    }

    pub fn base(&self) -> &BaseVarMap {
        &self.base
    }

    pub fn var_count(&self) -> u32 {
        self.var_count
    }

    /// Clauses excluding assumptions.
    pub fn clauses(&self) -> &[Vec<Lit>] {
        &self.clauses
    }

    pub fn assumptions(&self) -> &[Lit] {
        &self.assumptions
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn groups(&self) -> &[ParityGroup] {
        &self.groups
    }

    pub fn counts(&self) -> EncodingCounts {
        self.counts
    }

    pub fn pairing(&self) -> Option<&Pairing> {
        self.pairing.as_ref()
    }

    pub(crate) fn set_pairing(&mut self, p: Pairing) {
        self.pairing = Some(p);
    }

    /// Clause count as written to DIMACS, assumptions included.
    pub fn total_clauses(&self) -> usize {
        self.clauses.len() + self.assumptions.len()
    }

    /// The cube gate of summand `l` (1-based) for `term`.
    pub fn cube_var(&self, term: &TermIndex, l: usize) -> u32 {
        let n = self.n();
        let (i1, i2, j1, j2, k1, k2) = term.zero_based();
        let idx = ((((i1 * n + i2) * n + j1) * n + j2) * n + k1) * n + k2;
        self.groups[idx].cubes[l - 1]
    }

    pub fn new_var(&mut self) -> u32 {
        self.var_count += 1;
        self.var_count
    }

    pub fn add_clause(&mut self, clause: Vec<Lit>) -> Result<()> {
        if clause.is_empty() {
            return Err(Error::Domain("empty clause".into()));
        }
        if let Some(l) = clause.iter().find(|l| l.var() > self.var_count) {
            return Err(Error::Domain(format!(
                "literal {l} beyond var_count {}",
                self.var_count
            )));
        }
        self.clauses.push(clause);
        Ok(())
    }

    /// Adds unit assumptions on base variables.
    pub fn assume_base(mut self, literals: &[Lit]) -> Result<Self> {
        if let Some(l) = literals.iter().find(|l| l.var() as usize > self.base.len()) {
            return Err(Error::Domain(format!("literal {l} is not a base variable")));
        }
        self.assumptions.extend_from_slice(literals);
        Ok(self)
    }

    /// Fixes `floor(fraction * 3 m n^2)` base variables, chosen uniformly
    /// without replacement, to their values in `s`. Units are emitted in
    /// ascending variable order.
    pub fn fix_from_scheme(self, s: &Scheme, fraction: f64, seed: u64) -> Result<Self> {
        if !(0.0..=1.0).contains(&fraction) {
            return Err(Error::Domain(format!("fraction {fraction} outside [0, 1]")));
        }
        self.check_shape(s)?;
        let total = self.base.len();
        let k = fix_count(total, fraction);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut chosen = sample(&mut rng, total, k).into_vec();
        chosen.sort_unstable();
        let values = base_assignment(s);
        let lits: Vec<Lit> = chosen
            .into_iter()
            .map(|i| Lit::new(i as u32 + 1, values[i]))
            .collect();
        self.assume_base(&lits)
    }

    fn check_shape(&self, s: &Scheme) -> Result<()> {
        if s.n() != self.n() || s.m() != self.m() {
            return Err(Error::Dimension(format!(
                "scheme is n={} m={}, formula is n={} m={}",
                s.n(),
                s.m(),
                self.n(),
                self.m()
            )));
        }
        Ok(())
    }

    /// True iff every clause and every assumption holds under `model`.
    pub fn is_satisfied_by(&self, model: &Model) -> bool {
        model.var_count() >= self.var_count
            && self.assumptions.iter().all(|&l| model.satisfies(l))
            && self
                .clauses
                .iter()
                .all(|c| c.iter().any(|&l| model.satisfies(l)))
    }

    /// Reads the base variables into a scheme without any checks.
    pub fn scheme_from_model(&self, model: &Model) -> Scheme {
        let (n, m) = (self.n(), self.m());
        let summands = (1..=m)
            .map(|l| {
                let mut sm = Summand::zero(n);
                for role in Role::ALL {
                    let mat: &mut BitMat = sm.matrix_mut(role.index());
                    for r in 1..=n {
                        for c in 1..=n {
                            if model.value(self.base.var(role, l, r, c)) {
                                mat.set(r - 1, c - 1, true);
                            }
                        }
                    }
                }
                sm
            })
            .collect();
        Scheme::new(n, summands).expect("shape follows the base map")
    }

    /// Decodes a model into a scheme. The model must satisfy the formula and
    /// the result must pass the Brent oracle; either failure is an
    /// integrity error.
    pub fn decode(&self, model: &Model) -> Result<Scheme> {
        if model.var_count() < self.var_count {
            return Err(Error::Integrity(format!(
                "model has {} variables, formula has {}",
                model.var_count(),
                self.var_count
            )));
        }
        if !self.is_satisfied_by(model) {
            return Err(Error::Integrity("model violates a clause".into()));
        }
        let s = self.scheme_from_model(model);
        if !verify(&s) {
            return Err(Error::Integrity(
                "model satisfies the formula but the scheme fails the Brent equations".into(),
            ));
        }
        Ok(s)
    }

    /// Extends a base assignment through the gate definitions. Variables
    /// without a gate definition (selectors, counters) are set false.
    pub fn extend(&self, base_values: &[bool]) -> Model {
        assert_eq!(base_values.len(), self.base.len(), "base assignment length");
        let mut model = Model::all_false(self.var_count);
        for (i, &b) in base_values.iter().enumerate() {
            model.set(i as u32 + 1, b);
        }
        for g in &self.gates {
            match *g {
                Gate::And { out, a, b } => model.set(out, model.value(a) && model.value(b)),
                Gate::Xor3 { out, inputs } => model.set(
                    out,
                    model.value(inputs[0]) ^ model.value(inputs[1]) ^ model.value(inputs[2]),
                ),
            }
        }
        model
    }

    /// Model of the base formula induced by a scheme.
    pub fn model_of(&self, s: &Scheme) -> Result<Model> {
        self.check_shape(s)?;
        Ok(self.extend(&base_assignment(s)))
    }
}

/// `floor(fraction * total)`, with a small tolerance so that e.g. `2/3` of 621 is 414.
pub fn fix_count(total: usize, fraction: f64) -> usize {
    ((fraction * total as f64) + 1e-9).floor().min(total as f64) as usize
}

/// Base-variable values of a scheme, indexed by `id - 1`.
pub fn base_assignment(s: &Scheme) -> Vec<bool> {
    let (n, m) = (s.n(), s.m());
    let cells = n * n;
    let mut out = vec![false; 3 * m * cells];
    for role in Role::ALL {
        for (l, sm) in s.summands().iter().enumerate() {
            let mat = sm.matrix(role.index());
            for cell in 0..cells {
                out[role.index() * m * cells + l * cells + cell] = mat.bits() >> cell & 1 == 1;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests;
