//! Neighborhood steps, random walks over schemes, pairing search and corpus
//! statistics.
//!
//! A neighbor of a scheme `S` is any scheme obtained by fixing a random
//! subset of `S`'s base variables and solving for the rest. A walk chains
//! such steps; schemes are "different" when their canonical keys differ.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt::Write as _;
use std::path::Path;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::encoder::{encode, CnfFormula};
use crate::error::{Error, Result};
use crate::scheme::{canonical_key, core, core_signature, support, to_json, verify, Scheme};
use crate::sls::{solve, SolverConfig};
use crate::streamline::{hardcode_pairing, random_pairing, streamline_single_summand, Pairing};

/// Default share of base variables fixed in a neighborhood step.
pub const DEFAULT_FIX_FRACTION: f64 = 2.0 / 3.0;

fn require_valid(s: &Scheme) -> Result<()> {
    if verify(s) {
        Ok(())
    } else {
        Err(Error::InvalidScheme(
            "scheme does not satisfy the Brent equations".into(),
        ))
    }
}

/// Result of one neighborhood step.
#[derive(Debug, Clone)]
pub struct Step {
    pub scheme: Option<Scheme>,
    pub flips: u64,
}

/// Encodes `(n, m)` once and answers neighborhood queries against it.
#[derive(Debug, Clone)]
pub struct Neighborhood {
    plain: CnfFormula,
}

impl Neighborhood {
    pub fn new(n: usize, m: usize) -> Result<Self> {
        Ok(Neighborhood {
            plain: encode(n, m)?,
        })
    }

    /// Fixes `fix_fraction` of the base variables of `s` (chosen by
    /// `seed`) and solves for the rest with `cfg`. A solver timeout yields
    /// `scheme: None`.
    pub fn step(
        &self,
        s: &Scheme,
        fix_fraction: f64,
        cfg: &SolverConfig,
        seed: u64,
    ) -> Result<Step> {
        require_valid(s)?;
        let f = self.plain.clone().fix_from_scheme(s, fix_fraction, seed)?;
        let out = solve(&f, cfg);
        let scheme = match &out.model {
            Some(m) => Some(f.decode(m)?),
            None => None,
        };
        Ok(Step {
            scheme,
            flips: out.flips,
        })
    }
}

/// One neighborhood step from `s`. The solver seed is taken from `cfg`,
/// the fixed set from `seed`.
pub fn neighbor(
    s: &Scheme,
    fix_fraction: f64,
    cfg: &SolverConfig,
    seed: u64,
) -> Result<Option<Scheme>> {
    require_valid(s)?;
    Ok(Neighborhood::new(s.n(), s.m())?
        .step(s, fix_fraction, cfg, seed)?
        .scheme)
}

/// Per-thread walk budget.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WalkBudget {
    /// Wall-clock seconds; results depend on timing.
    Seconds(f64),
    /// Solver flips per thread, each step counting at least one; results
    /// are reproducible.
    Flips(u64),
}

#[derive(Debug, Clone)]
pub struct WalkConfig {
    pub threads: usize,
    pub budget: WalkBudget,
    pub fix_fraction: f64,
    /// Per-step solver settings; the seed is replaced for every step.
    pub solver: SolverConfig,
    pub master_seed: u64,
    /// Consecutive failed steps from the same scheme before a chain halts.
    pub retry_cap: u32,
    /// Spacing of the time series, in budget units (seconds or flips).
    pub sample_interval: f64,
    /// Keys that do not count as discoveries (e.g. from a resume file).
    pub known: HashSet<Vec<u8>>,
}

impl WalkConfig {
    pub fn new(budget: WalkBudget) -> Self {
        WalkConfig {
            threads: 1,
            budget,
            fix_fraction: DEFAULT_FIX_FRACTION,
            solver: SolverConfig {
                max_flips: 1 << 18,
                tries: 4,
                ..SolverConfig::default()
            },
            master_seed: 0,
            retry_cap: 32,
            sample_interval: match budget {
                WalkBudget::Seconds(_) => 1.0,
                WalkBudget::Flips(f) => (f as f64 / 100.0).max(1.0),
            },
            known: HashSet::new(),
        }
    }

    pub fn thread_seed(&self, thread: usize) -> u64 {
        self.master_seed ^ thread as u64
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Discovery {
    #[serde(serialize_with = "ser_hex")]
    pub key: Vec<u8>,
    #[serde(skip)]
    pub scheme: Scheme,
    pub support: usize,
    pub core_signature: Vec<usize>,
    pub thread: usize,
    /// Steps taken by the thread up to and including this one.
    pub step: u64,
    /// Flips spent by the thread so far.
    pub flips: u64,
    pub elapsed_s: f64,
}

fn ser_hex<S: serde::Serializer>(key: &[u8], ser: S) -> std::result::Result<S::Ok, S::Error> {
    ser.serialize_str(&hex::encode(key))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesPoint {
    /// Seconds or flips, depending on the budget.
    pub at: f64,
    pub distinct: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct WalkStats {
    pub flip_mode: bool,
    pub thread_seeds: Vec<u64>,
    /// Sorted by discovery position: flips then thread in flip mode,
    /// elapsed time otherwise.
    pub discoveries: Vec<Discovery>,
    pub series: Vec<SeriesPoint>,
    pub steps: u64,
    pub failed_steps: u64,
    pub halted_chains: usize,
    pub elapsed_s: f64,
}

impl WalkStats {
    pub fn keys(&self) -> impl Iterator<Item = &[u8]> {
        self.discoveries.iter().map(|d| d.key.as_slice())
    }

    pub fn schemes(&self) -> impl Iterator<Item = &Scheme> {
        self.discoveries.iter().map(|d| &d.scheme)
    }

    /// Time series as CSV; the first column is `flips` in flip mode and
    /// `elapsed_s` otherwise.
    pub fn series_csv(&self) -> String {
        let mut out = String::from(if self.flip_mode {
            "flips,distinct_count\n"
        } else {
            "elapsed_s,distinct_count\n"
        });
        for p in &self.series {
            if self.flip_mode {
                let _ = writeln!(out, "{},{}", p.at as u64, p.distinct);
            } else {
                let _ = writeln!(out, "{:.3},{}", p.at, p.distinct);
            }
        }
        out
    }

    /// Newline-separated hex keys; readable by [`parse_keys`].
    pub fn keys_text(&self, known: &HashSet<Vec<u8>>) -> String {
        let mut all: Vec<&[u8]> = known.iter().map(Vec::as_slice).chain(self.keys()).collect();
        all.sort_unstable();
        all.dedup();
        all.iter().map(|k| hex::encode(k) + "\n").collect()
    }
}

/// Reads a resume file: one hex canonical key per line, `#` comments.
pub fn parse_keys(text: &str) -> Result<HashSet<Vec<u8>>> {
    let mut out = HashSet::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let key = hex::decode(line).map_err(|e| crate::error::parse_err(i + 1, e.to_string()))?;
        out.insert(key);
    }
    Ok(out)
}

struct Store {
    excluded: HashSet<Vec<u8>>,
    found: HashMap<Vec<u8>, Discovery>,
    flip_mode: bool,
}

impl Store {
    /// Keeps the earliest discovery of each key. In flip mode "earliest"
    /// is by (flips, thread), which does not depend on scheduling.
    fn offer(&mut self, d: Discovery) {
        if self.excluded.contains(&d.key) {
            return;
        }
        let flip_mode = self.flip_mode;
        match self.found.get_mut(&d.key) {
            Some(old) => {
                if flip_mode && (d.flips, d.thread) < (old.flips, old.thread) {
                    *old = d;
                }
            }
            None => {
                self.found.insert(d.key.clone(), d);
            }
        }
    }
}

#[derive(Default)]
struct ChainReport {
    steps: u64,
    failed: u64,
    halted: bool,
    flips: u64,
}

/// Runs `cfg.threads` independent chains from `start`. Every stored scheme
/// verifies and differs (by canonical key) from `start`, from the known
/// keys and from every other stored scheme.
pub fn random_walk(start: &Scheme, cfg: &WalkConfig) -> Result<WalkStats> {
    require_valid(start)?;
    if cfg.threads == 0 {
        return Err(Error::Domain("at least one thread is required".into()));
    }
    let hood = Neighborhood::new(start.n(), start.m())?;
    let flip_mode = matches!(cfg.budget, WalkBudget::Flips(_));
    let mut excluded = cfg.known.clone();
    excluded.insert(canonical_key(start));
    let store = Mutex::new(Store {
        excluded,
        found: HashMap::new(),
        flip_mode,
    });
    let t0 = Instant::now();

    let reports: Vec<Result<ChainReport>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..cfg.threads)
            .map(|t| {
                let hood = &hood;
                let store = &store;
                scope.spawn(move || chain(hood, start, cfg, t, store, t0))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("walk thread panicked"))
            .collect()
    });

    let mut stats = WalkStats {
        flip_mode,
        thread_seeds: (0..cfg.threads).map(|t| cfg.thread_seed(t)).collect(),
        discoveries: Vec::new(),
        series: Vec::new(),
        steps: 0,
        failed_steps: 0,
        halted_chains: 0,
        elapsed_s: t0.elapsed().as_secs_f64(),
    };
    let mut spent: f64 = 0.0;
    for r in reports {
        let r = r?;
        stats.steps += r.steps;
        stats.failed_steps += r.failed;
        stats.halted_chains += r.halted as usize;
        spent = spent.max(r.flips as f64);
    }
    let mut found: Vec<Discovery> = store
        .into_inner()
        .expect("store lock poisoned")
        .found
        .into_values()
        .collect();
    if flip_mode {
        found.sort_by(|a, b| (a.flips, a.thread, &a.key).cmp(&(b.flips, b.thread, &b.key)));
    } else {
        found.sort_by(|a, b| a.elapsed_s.total_cmp(&b.elapsed_s).then(a.key.cmp(&b.key)));
        spent = stats.elapsed_s;
    }
    let pos = |d: &Discovery| {
        if flip_mode {
            d.flips as f64
        } else {
            d.elapsed_s
        }
    };
    let interval = cfg.sample_interval.max(f64::MIN_POSITIVE);
    let mut at = 0.0;
    let mut seen = 0;
    loop {
        while seen < found.len() && pos(&found[seen]) <= at {
            seen += 1;
        }
        stats.series.push(SeriesPoint { at, distinct: seen });
        if at >= spent {
            break;
        }
        at = (at + interval).min(spent);
    }
    stats.discoveries = found;
    Ok(stats)
}

fn chain(
    hood: &Neighborhood,
    start: &Scheme,
    cfg: &WalkConfig,
    thread: usize,
    store: &Mutex<Store>,
    t0: Instant,
) -> Result<ChainReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.thread_seed(thread));
    let mut current = start.clone();
    let mut report = ChainReport::default();
    let mut failures = 0u32;
    loop {
        let mut solver = cfg.solver.clone();
        solver.seed = rng.gen();
        match cfg.budget {
            WalkBudget::Flips(limit) => {
                if report.flips >= limit {
                    break;
                }
                solver.timeout = None;
                solver.max_flips = solver.max_flips.min(limit - report.flips).max(1);
                solver.tries = 1;
            }
            WalkBudget::Seconds(secs) => {
                let left = secs - t0.elapsed().as_secs_f64();
                if left <= 0.0 {
                    break;
                }
                let left = Duration::from_secs_f64(left);
                solver.timeout = Some(solver.timeout.map_or(left, |t| t.min(left)));
            }
        }
        let fix_seed = rng.gen();
        let step = hood.step(&current, cfg.fix_fraction, &solver, fix_seed)?;
        report.steps += 1;
        // a step decided by propagation alone still costs one flip
        report.flips += step.flips.max(1);
        match step.scheme {
            Some(next) => {
                failures = 0;
                let d = Discovery {
                    key: canonical_key(&next),
                    support: support(&next),
                    core_signature: core_signature(&next),
                    scheme: next.clone(),
                    thread,
                    step: report.steps,
                    flips: report.flips,
                    elapsed_s: t0.elapsed().as_secs_f64(),
                };
                store.lock().expect("store lock poisoned").offer(d);
                current = next;
            }
            None => {
                report.failed += 1;
                failures += 1;
                if failures >= cfg.retry_cap {
                    report.halted = true;
                    break;
                }
            }
        }
    }
    Ok(report)
}

/// Writes a walk's results into `dir`: one JSON scheme file per discovery
/// (named by hex key), `walk.csv`, `support.csv`, `cores.csv` and
/// `keys.txt` (resume file including `known`).
pub fn write_walk_output(dir: &Path, stats: &WalkStats, known: &HashSet<Vec<u8>>) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    for d in &stats.discoveries {
        std::fs::write(
            dir.join(format!("{}.json", hex::encode(&d.key))),
            to_json(&d.scheme),
        )?;
    }
    std::fs::write(dir.join("walk.csv"), stats.series_csv())?;
    let corpus = corpus_stats(stats.schemes())?;
    std::fs::write(dir.join("support.csv"), corpus.support_csv())?;
    std::fs::write(dir.join("cores.csv"), corpus.cores_csv())?;
    std::fs::write(dir.join("keys.txt"), stats.keys_text(known))?;
    Ok(())
}

#[derive(Debug, Clone)]
pub struct PairingSearchConfig {
    pub n: usize,
    pub m: usize,
    pub solver: SolverConfig,
    /// Add the single-summand streamliner for every singleton summand.
    pub streamline: bool,
    /// Forbid type-3 terms outside each summand's assigned set.
    pub blocking: bool,
}

impl Default for PairingSearchConfig {
    fn default() -> Self {
        PairingSearchConfig {
            n: 3,
            m: 23,
            solver: SolverConfig::default(),
            streamline: true,
            blocking: true,
        }
    }
}

#[derive(Debug, Clone)]
pub struct PairingAttempt {
    pub seed: u64,
    pub pairing: Pairing,
    pub scheme: Option<Scheme>,
    pub flips: u64,
    pub elapsed: Duration,
}

/// Builds the formula tried by one pairing search attempt.
pub fn pairing_formula(
    p: &Pairing,
    m: usize,
    streamline: bool,
    blocking: bool,
) -> Result<CnfFormula> {
    let mut f = hardcode_pairing(encode(p.n(), m)?, p, blocking)?;
    if streamline {
        let singles: Vec<usize> = p.singletons().collect();
        for l in singles {
            f = streamline_single_summand(f, l)?;
        }
    }
    Ok(f)
}

/// One attempt per seed: random pairing, hardcode, optionally streamline,
/// solve and decode. Attempts that run out of budget keep `scheme: None`.
pub fn pairing_search(seeds: &[u64], cfg: &PairingSearchConfig) -> Result<Vec<PairingAttempt>> {
    let mut out = Vec::with_capacity(seeds.len());
    for &seed in seeds {
        let pairing = random_pairing(cfg.n, cfg.m, seed)?;
        let f = pairing_formula(&pairing, cfg.m, cfg.streamline, cfg.blocking)?;
        let res = solve(&f, &cfg.solver.clone().with_seed(seed));
        let scheme = match &res.model {
            Some(m) => Some(f.decode(m)?),
            None => None,
        };
        if let (Some(s), true) = (&scheme, cfg.blocking) {
            if core(s) != pairing.entries() {
                return Err(Error::Integrity(format!(
                    "pairing seed {seed}: scheme core differs from its pairing"
                )));
            }
        }
        out.push(PairingAttempt {
            seed,
            pairing,
            scheme,
            flips: res.flips,
            elapsed: res.elapsed,
        });
    }
    Ok(out)
}

/// Support histogram and core-signature frequencies of a corpus.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct CorpusStats {
    pub total: usize,
    pub support: BTreeMap<usize, usize>,
    pub signatures: BTreeMap<Vec<usize>, usize>,
}

fn percent(k: usize, total: usize) -> f64 {
    if total == 0 {
        0.0
    } else {
        100.0 * k as f64 / total as f64
    }
}

fn signature_label(sig: &[usize]) -> String {
    if sig.is_empty() {
        "-".into()
    } else {
        sig.iter()
            .map(usize::to_string)
            .collect::<Vec<_>>()
            .join("+")
    }
}

impl CorpusStats {
    /// `support,count,percent`, one row per occurring support value.
    pub fn support_csv(&self) -> String {
        let mut out = String::from("support,count,percent\n");
        for (s, k) in &self.support {
            let _ = writeln!(out, "{s},{k},{:.2}", percent(*k, self.total));
        }
        out
    }

    /// `signature,count,percent`; a signature lists the sizes of the core
    /// sets with at least two terms, e.g. `2+2+2+2`.
    pub fn cores_csv(&self) -> String {
        let mut out = String::from("signature,count,percent\n");
        for (sig, k) in &self.signatures {
            let _ = writeln!(
                out,
                "{},{k},{:.2}",
                signature_label(sig),
                percent(*k, self.total)
            );
        }
        out
    }
}

pub fn corpus_stats<'a>(schemes: impl IntoIterator<Item = &'a Scheme>) -> Result<CorpusStats> {
    let mut st = CorpusStats::default();
    for s in schemes {
        require_valid(s)?;
        st.total += 1;
        *st.support.entry(support(s)).or_default() += 1;
        *st.signatures.entry(core_signature(s)).or_default() += 1;
    }
    Ok(st)
}

#[cfg(test)]
#[path = "search_tests.rs"]
mod tests;
