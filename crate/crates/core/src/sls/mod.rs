//! Embedded stochastic local search.
//!
//! Two engines are available. The default is DDFW, a clause-weighting
//! search that moves weight from satisfied clauses onto falsified ones when
//! no flip improves. The other is a probSAT walk: pick a falsified clause
//! uniformly, flip one of its variables with probability proportional to a
//! decreasing function of its break count. Before walking, unit propagation fixes every
//! assumption and everything it implies; fixed variables are never flipped.
//! Restarts use a cutoff that doubles after every try.
//!
//! Outcomes are a function of the formula and the configuration alone
//! unless a wall-clock timeout cuts the run short.

mod ddfw;
mod external;
mod probsat;
mod propagate;

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::encoder::{CnfFormula, Lit, Model};

pub use external::{solve_external, SOLVER_ENV};
pub use propagate::{unit_propagate, Propagation};

/// How break counts become flip weights.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BreakWeight {
    /// `cb^-break`
    Exponential { cb: f64 },
    /// `(eps + break)^-cb`
    Polynomial { cb: f64, eps: f64 },
}

impl BreakWeight {
    fn weight(self, b: u32) -> f64 {
        match self {
            BreakWeight::Exponential { cb } => cb.powi(-(b as i32)),
            BreakWeight::Polynomial { cb, eps } => (eps + b as f64).powf(-cb),
        }
    }
}

/// Local search engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    ProbSat,
    /// Clause weighting with weight transfer to falsified clauses.
    Ddfw,
}

impl std::str::FromStr for Algorithm {
    type Err = crate::Error;
    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "probsat" => Ok(Algorithm::ProbSat),
            "ddfw" => Ok(Algorithm::Ddfw),
            _ => Err(crate::Error::Domain(format!("unknown algorithm {s:?}"))),
        }
    }
}

enum Walker {
    ProbSat(Box<probsat::Engine>),
    Ddfw(Box<ddfw::Engine>),
}

impl Walker {
    fn reset(&mut self, value_of: impl FnMut(u32) -> bool) {
        match self {
            Walker::ProbSat(e) => e.reset(value_of),
            Walker::Ddfw(e) => e.reset(value_of),
        }
    }
    fn step(&mut self, rng: &mut ChaCha8Rng) {
        match self {
            Walker::ProbSat(e) => e.step(rng),
            Walker::Ddfw(e) => e.step(rng),
        }
    }
    fn unsat_count(&self) -> usize {
        match self {
            Walker::ProbSat(e) => e.unsat_count(),
            Walker::Ddfw(e) => e.unsat_count(),
        }
    }
    fn free_vars(&self) -> &[u32] {
        match self {
            Walker::ProbSat(e) => e.free_vars(),
            Walker::Ddfw(e) => e.free_vars(),
        }
    }
    fn value(&self, v: u32) -> bool {
        match self {
            Walker::ProbSat(e) => e.value(v),
            Walker::Ddfw(e) => e.value(v),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolverConfig {
    pub algorithm: Algorithm,
    pub seed: u64,
    /// Flip cutoff of the first try; doubled after each restart.
    pub max_flips: u64,
    /// Number of tries (restarts + 1).
    pub tries: u32,
    /// probSAT only.
    pub weight: BreakWeight,
    /// Wall-clock limit; hitting it makes the run nondeterministic.
    pub timeout: Option<Duration>,
    /// Initial values for the free variables of the first try.
    pub hint: Option<Model>,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            algorithm: Algorithm::Ddfw,
            seed: 0,
            max_flips: 1 << 22,
            tries: 10,
            weight: BreakWeight::Exponential { cb: 3.0 },
            timeout: None,
            hint: None,
        }
    }
}

impl SolverConfig {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_timeout(mut self, t: Duration) -> Self {
        self.timeout = Some(t);
        self
    }

    /// Sum of all try cutoffs.
    pub fn flip_budget(&self) -> u64 {
        (0..self.tries).fold(0u64, |acc, t| {
            acc.saturating_add(self.max_flips.saturating_mul(1 << t.min(40)))
        })
    }

    /// Configuration that stops after roughly `flips` flips in total, as a
    /// single try; used for flip-budgeted deterministic runs.
    pub fn single_try(seed: u64, flips: u64) -> Self {
        SolverConfig {
            seed,
            max_flips: flips,
            tries: 1,
            ..SolverConfig::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    Sat,
    Unknown,
}

#[derive(Debug, Clone)]
pub struct SolveOutcome {
    pub status: SolveStatus,
    pub model: Option<Model>,
    /// Search steps taken; a DDFW weight transfer counts as one step.
    pub flips: u64,
    pub tries: u32,
    pub elapsed: Duration,
    /// Variables fixed by unit propagation before walking.
    pub propagated: usize,
    /// Unit propagation alone refuted the formula.
    pub refuted: bool,
    pub timed_out: bool,
}

impl SolveOutcome {
    pub fn is_sat(&self) -> bool {
        self.status == SolveStatus::Sat
    }

    pub fn flips_per_second(&self) -> f64 {
        let s = self.elapsed.as_secs_f64();
        if s > 0.0 {
            self.flips as f64 / s
        } else {
            0.0
        }
    }
}

/// True iff every clause has a satisfied literal under `model`.
pub fn check_model(f: &CnfFormula, model: &Model) -> bool {
    model.var_count() >= f.var_count()
        && check_clauses(f.clauses(), model)
        && f.assumptions().iter().all(|&l| model.satisfies(l))
}

pub fn check_clauses(clauses: &[Vec<Lit>], model: &Model) -> bool {
    clauses
        .iter()
        .all(|c| c.iter().any(|&l| model.satisfies(l)))
}

pub fn solve(f: &CnfFormula, cfg: &SolverConfig) -> SolveOutcome {
    let out = solve_clauses(f.var_count(), f.clauses(), f.assumptions(), cfg);
    if let Some(m) = &out.model {
        assert!(
            check_model(f, m),
            "solver produced a model that fails the formula"
        );
    }
    out
}

/// Solves a plain clause set under unit assumptions.
pub fn solve_clauses(
    var_count: u32,
    clauses: &[Vec<Lit>],
    assumptions: &[Lit],
    cfg: &SolverConfig,
) -> SolveOutcome {
    let start = Instant::now();
    let mut out = SolveOutcome {
        status: SolveStatus::Unknown,
        model: None,
        flips: 0,
        tries: 0,
        elapsed: Duration::ZERO,
        propagated: 0,
        refuted: false,
        timed_out: false,
    };

    let prop = unit_propagate(var_count, clauses, assumptions);
    out.propagated = prop.assigned();
    if prop.conflict {
        out.refuted = true;
        out.elapsed = start.elapsed();
        return out;
    }

    let reduced = simplify(clauses, &prop);
    let mut engine = match cfg.algorithm {
        Algorithm::ProbSat => {
            Walker::ProbSat(Box::new(probsat::Engine::new(var_count, &reduced, |b| {
                cfg.weight.weight(b)
            })))
        }
        Algorithm::Ddfw => Walker::Ddfw(Box::new(ddfw::Engine::new(var_count, &reduced))),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);

    let mut model = Model::all_false(var_count);
    for v in 1..=var_count {
        if let Some(x) = prop.values[v as usize] {
            model.set(v, x);
        }
    }

    let mut cutoff = cfg.max_flips.max(1);
    'tries: for t in 0..cfg.tries.max(1) {
        out.tries = t + 1;
        match (&cfg.hint, t) {
            (Some(h), 0) => engine.reset(|v| h.value(v)),
            _ => engine.reset(|_| rng.gen()),
        }
        let mut flips_this_try = 0u64;
        while engine.unsat_count() > 0 {
            if flips_this_try >= cutoff {
                cutoff = cutoff.saturating_mul(2);
                continue 'tries;
            }
            if flips_this_try & 0x3ff == 0 {
                if let Some(limit) = cfg.timeout {
                    if start.elapsed() >= limit {
                        out.timed_out = true;
                        break 'tries;
                    }
                }
            }
            engine.step(&mut rng);
            flips_this_try += 1;
            out.flips += 1;
        }
        for &v in engine.free_vars() {
            model.set(v, engine.value(v));
        }
        if check_clauses(clauses, &model) && assumptions.iter().all(|&l| model.satisfies(l)) {
            out.status = SolveStatus::Sat;
            out.model = Some(model);
        }
        break;
    }
    out.elapsed = start.elapsed();
    out
}

/// Drops satisfied clauses and false literals; deduplicates literals and
/// drops tautologies. Output uses engine literal codes.
fn simplify(clauses: &[Vec<Lit>], prop: &Propagation) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    'clauses: for c in clauses {
        let mut lits: Vec<u32> = Vec::with_capacity(c.len());
        for &l in c {
            match prop.lit_value(l) {
                Some(true) => continue 'clauses,
                Some(false) => {}
                None => lits.push(2 * l.var() + (!l.is_positive()) as u32),
            }
        }
        lits.sort_unstable();
        lits.dedup();
        if lits.windows(2).any(|w| w[0] >> 1 == w[1] >> 1) {
            continue;
        }
        debug_assert!(lits.len() >= 2, "unit propagation left a short clause");
        out.push(lits);
    }
    out
}
