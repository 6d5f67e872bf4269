use std::collections::HashSet;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};

use brentsat::challenge::{challenge_suite, generate_challenge, ChallengeSpec};
use brentsat::encoder::{encode, parse_dimacs, to_dimacs, CnfFormula};
use brentsat::scheme::{
    brent_residual, canonical_key, fig1_scheme_a, fig1_scheme_b, from_json, naive_scheme,
    parse_scheme_detect, render_scheme, strassen, to_json, Scheme, SchemeStats,
};
use brentsat::search::{
    corpus_stats, neighbor, pairing_search, parse_keys, random_walk, write_walk_output,
    PairingSearchConfig, WalkBudget, WalkConfig, DEFAULT_FIX_FRACTION,
};
use brentsat::sls::{solve, solve_clauses, solve_external, Algorithm, SolverConfig, SOLVER_ENV};
use brentsat::streamline::{
    hardcode_pairing, parse_pairing, random_pairing, streamline_even_occurrence,
    streamline_singletons,
};

#[derive(Parser)]
#[command(
    name = "brentsat",
    version,
    about = "Search for matrix multiplication schemes with SAT local search"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write the Brent equations for (n, m) as DIMACS plus a varmap sidecar.
    Encode(EncodeArgs),
    /// Build a formula like `encode` and solve it; writes the scheme.
    Solve {
        #[command(flatten)]
        formula: EncodeArgs,
        #[command(flatten)]
        solver: SolverArgs,
        /// Use the command in $BRENTSAT_SOLVER instead of the embedded engine.
        #[arg(long)]
        external: bool,
    },
    /// Solve a DIMACS file with the embedded engine; prints `s`/`v` lines.
    Sat {
        cnf: PathBuf,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Check a scheme file against the Brent equations.
    Verify { scheme: PathBuf },
    /// One neighborhood step from a scheme.
    Neighbor {
        #[arg(long)]
        scheme: PathBuf,
        #[arg(long, default_value_t = DEFAULT_FIX_FRACTION)]
        fraction: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Random walk through neighborhoods.
    Walk {
        #[arg(long)]
        start: PathBuf,
        /// Wall-clock budget per thread.
        #[arg(long, conflicts_with = "flips")]
        seconds: Option<f64>,
        /// Flip budget per thread; makes the run reproducible.
        #[arg(long)]
        flips: Option<u64>,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_FIX_FRACTION)]
        fraction: f64,
        /// Series spacing in seconds or flips.
        #[arg(long)]
        interval: Option<f64>,
        /// File of known hex keys that do not count as discoveries.
        #[arg(long)]
        resume: Option<PathBuf>,
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Random pairings, hardcoded and solved from scratch.
    Pairsearch {
        /// Seeds as `a..b` (exclusive) or a comma list.
        #[arg(long, default_value = "0..10")]
        seeds: String,
        #[arg(long)]
        no_streamline: bool,
        #[arg(long)]
        no_blocking: bool,
        #[arg(long)]
        out_dir: Option<PathBuf>,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Support histogram and core signatures of scheme files.
    Stats {
        /// Scheme files or directories of them.
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        #[arg(long)]
        out_dir: Option<PathBuf>,
        /// Print per-scheme statistics as JSON lines.
        #[arg(long)]
        each: bool,
    },
    /// Print a bundled scheme: strassen, fig1-a, fig1-b or naive-N.
    Bundled {
        name: String,
        #[arg(long)]
        json: bool,
    },
    /// Generate challenge instances.
    Challenge {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
        id: u8,
        /// First pairing seed (1, 2). Without it, challenge 1 uses the demo pairing.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 10)]
        count: usize,
        /// Summand for challenge 3, m for challenge 4.
        #[arg(long)]
        param: Option<u64>,
        #[arg(long)]
        out_dir: PathBuf,
    },
}

#[derive(Args)]
struct EncodeArgs {
    #[arg(short, required = true)]
    n: usize,
    #[arg(short, required = true)]
    m: usize,
    #[arg(short, long)]
    out: Option<PathBuf>,
    /// Fix base variables from this scheme.
    #[arg(long)]
    scheme: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_FIX_FRACTION, requires = "scheme")]
    fraction: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Hardcode a pairing from a file.
    #[arg(long, conflicts_with = "pairing_seed")]
    pairing: Option<PathBuf>,
    /// Hardcode a random pairing.
    #[arg(long)]
    pairing_seed: Option<u64>,
    #[arg(long)]
    no_blocking: bool,
    /// Single-summand streamliner on every singleton summand of the pairing.
    #[arg(long)]
    streamline: bool,
    /// Every non-type-3 term occurs zero times or twice.
    #[arg(long)]
    even: bool,
}

#[derive(Args)]
struct SolverArgs {
    #[arg(long = "solver-seed", default_value_t = 0)]
    solver_seed: u64,
    #[arg(long, default_value = "ddfw")]
    algorithm: Algorithm,
    #[arg(long)]
    max_flips: Option<u64>,
    #[arg(long)]
    tries: Option<u32>,
    #[arg(long)]
    timeout: Option<f64>,
}

impl SolverArgs {
    fn config(&self) -> SolverConfig {
        let mut c = SolverConfig {
            algorithm: self.algorithm,
            seed: self.solver_seed,
            ..SolverConfig::default()
        };
        if let Some(f) = self.max_flips {
            c.max_flips = f;
        }
        if let Some(t) = self.tries {
            c.tries = t;
        }
        c.timeout = self.timeout.map(Duration::from_secs_f64);
        c
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_scheme(path: &Path) -> anyhow::Result<Scheme> {
    let text = read(path)?;
    let s = if text.trim_start().starts_with('{') {
        from_json(&text)?
    } else {
        parse_scheme_detect(&text)?.0
    };
    Ok(s)
}

fn write_or_print(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn build_formula(a: &EncodeArgs) -> anyhow::Result<CnfFormula> {
    let mut f = encode(a.n, a.m)?;
    let pairing = match (&a.pairing, a.pairing_seed) {
        (Some(p), _) => Some(parse_pairing(&read(p)?)?),
        (None, Some(s)) => Some(random_pairing(a.n, a.m, s)?),
        (None, None) => None,
    };
    if let Some(p) = &pairing {
        f = hardcode_pairing(f, p, !a.no_blocking)?;
    }
    if a.streamline {
        if pairing.is_none() {
            bail!("--streamline needs --pairing or --pairing-seed");
        }
        f = streamline_singletons(f)?;
    }
    if a.even {
        f = streamline_even_occurrence(f)?;
    }
    if let Some(path) = &a.scheme {
        f = f.fix_from_scheme(&load_scheme(path)?, a.fraction, a.seed)?;
    }
    Ok(f)
}

fn parse_seeds(s: &str) -> anyhow::Result<Vec<u64>> {
    if let Some((a, b)) = s.split_once("..") {
        let (a, b): (u64, u64) = (a.trim().parse()?, b.trim().parse()?);
        return Ok((a..b).collect());
    }
    s.split(',')
        .map(|x| x.trim().parse().with_context(|| format!("bad seed {x:?}")))
        .collect()
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.cmd {
        Cmd::Encode(a) => {
            let f = build_formula(&a)?;
            write_or_print(a.out.as_deref(), &to_dimacs(&f))?;
            if let Some(out) = &a.out {
                let mut side = out.clone().into_os_string();
                side.push(".varmap");
                std::fs::write(&side, f.base().to_sidecar())?;
            }
            eprintln!(
                "c n={} m={} base={} vars={} clauses={}",
                f.n(),
                f.m(),
                f.base().len(),
                f.var_count(),
                f.total_clauses()
            );
        }
        Cmd::Solve {
            formula,
            solver,
            external,
        } => {
            let f = build_formula(&formula)?;
            let model = if external {
                let cmd = std::env::var(SOLVER_ENV)
                    .with_context(|| format!("--external needs ${SOLVER_ENV}"))?;
                solve_external(&f, &cmd)?
            } else {
                let out = solve(&f, &solver.config());
                eprintln!(
                    "c flips={} tries={} time={:.3}s flips/s={:.0}",
                    out.flips,
                    out.tries,
                    out.elapsed.as_secs_f64(),
                    out.flips_per_second()
                );
                out.model
            };
            let Some(model) = model else {
                println!("s UNKNOWN");
                return Ok(ExitCode::from(1));
            };
            let s = f.decode(&model)?;
            write_or_print(formula.out.as_deref(), &render_scheme(&s))?;
        }
        Cmd::Sat { cnf, solver } => {
            let raw = parse_dimacs(&read(&cnf)?)?;
            let (units, rest): (Vec<_>, Vec<_>) =
                raw.clauses.into_iter().partition(|c| c.len() == 1);
            let units: Vec<_> = units.into_iter().map(|c| c[0]).collect();
            let out = solve_clauses(raw.var_count, &rest, &units, &solver.config());
            match out.model {
                Some(m) => {
                    println!("s SATISFIABLE");
                    print!("{}", m.to_v_lines());
                }
                None if out.refuted => {
                    println!("s UNSATISFIABLE");
                    return Ok(ExitCode::from(1));
                }
                None => {
                    println!("s UNKNOWN");
                    return Ok(ExitCode::from(1));
                }
            }
        }
        Cmd::Verify { scheme } => {
            let s = load_scheme(&scheme)?;
            let bad = brent_residual(&s);
            match bad.first() {
                None => println!(
                    "ok: n={} m={} satisfies all {} equations",
                    s.n(),
                    s.m(),
                    s.n().pow(6)
                ),
                Some(v) => {
                    println!(
                        "violated: {} (lhs={}, rhs={}); {} violations",
                        v.term,
                        v.lhs as u8,
                        v.rhs as u8,
                        bad.len()
                    );
                    return Ok(ExitCode::from(1));
                }
            }
        }
        Cmd::Neighbor {
            scheme,
            fraction,
            seed,
            out,
            solver,
        } => {
            let s = load_scheme(&scheme)?;
            match neighbor(&s, fraction, &solver.config(), seed)? {
                Some(t) => {
                    let same = canonical_key(&t) == canonical_key(&s);
                    eprintln!("c {}", if same { "same scheme" } else { "new scheme" });
                    write_or_print(out.as_deref(), &render_scheme(&t))?;
                }
                None => {
                    println!("s UNKNOWN");
                    return Ok(ExitCode::from(1));
                }
            }
        }
        Cmd::Walk {
            start,
            seconds,
            flips,
            threads,
            seed,
            fraction,
            interval,
            resume,
            out_dir,
        } => {
            let budget = match (seconds, flips) {
                (_, Some(f)) => WalkBudget::Flips(f),
                (Some(s), None) => WalkBudget::Seconds(s),
                (None, None) => bail!("one of --seconds or --flips is required"),
            };
            let mut cfg = WalkConfig::new(budget);
            cfg.threads = threads;
            cfg.master_seed = seed;
            cfg.fix_fraction = fraction;
            if let Some(i) = interval {
                cfg.sample_interval = i;
            }
            if let Some(r) = &resume {
                cfg.known = parse_keys(&read(r)?)?;
            }
            let known: HashSet<Vec<u8>> = cfg.known.clone();
            let st = random_walk(&load_scheme(&start)?, &cfg)?;
            write_walk_output(&out_dir, &st, &known)?;
            println!(
                "steps={} failed={} halted={} distinct={}",
                st.steps,
                st.failed_steps,
                st.halted_chains,
                st.discoveries.len()
            );
        }
        Cmd::Pairsearch {
            seeds,
            no_streamline,
            no_blocking,
            out_dir,
            solver,
        } => {
            let cfg = PairingSearchConfig {
                solver: solver.config(),
                streamline: !no_streamline,
                blocking: !no_blocking,
                ..PairingSearchConfig::default()
            };
            let seeds = parse_seeds(&seeds)?;
            if let Some(d) = &out_dir {
                std::fs::create_dir_all(d)?;
            }
            let attempts = pairing_search(&seeds, &cfg)?;
            let mut found = 0;
            for a in &attempts {
                let status = if a.scheme.is_some() { "sat" } else { "unknown" };
                println!(
                    "seed={} {status} flips={} time={:.3}s",
                    a.seed,
                    a.flips,
                    a.elapsed.as_secs_f64()
                );
                if let (Some(s), Some(d)) = (&a.scheme, &out_dir) {
                    std::fs::write(d.join(format!("pairing-{}.json", a.seed)), to_json(s))?;
                }
                found += a.scheme.is_some() as usize;
            }
            println!("found {found}/{}", attempts.len());
            if found == 0 {
                return Ok(ExitCode::from(1));
            }
        }
        Cmd::Stats {
            inputs,
            out_dir,
            each,
        } => {
            let mut files = Vec::new();
            for p in inputs {
                if p.is_dir() {
                    let mut inner: Vec<PathBuf> = std::fs::read_dir(&p)?
                        .filter_map(|e| e.ok().map(|e| e.path()))
                        .filter(|q| {
                            matches!(
                                q.extension().and_then(|x| x.to_str()),
                                Some("json" | "scheme")
                            )
                        })
                        .collect();
                    inner.sort();
                    files.extend(inner);
                } else {
                    files.push(p);
                }
            }
            let schemes: Vec<Scheme> = files
                .iter()
                .map(|p| load_scheme(p))
                .collect::<anyhow::Result<_>>()?;
            let st = corpus_stats(&schemes)?;
            if each {
                for (p, s) in files.iter().zip(&schemes) {
                    println!(
                        "{} {}",
                        p.display(),
                        serde_json::to_string(&SchemeStats::of(s))?
                    );
                }
            }
            match out_dir {
                Some(d) => {
                    std::fs::create_dir_all(&d)?;
                    std::fs::write(d.join("support.csv"), st.support_csv())?;
                    std::fs::write(d.join("cores.csv"), st.cores_csv())?;
                }
                None => print!("{}\n{}", st.support_csv(), st.cores_csv()),
            }
        }
        Cmd::Bundled { name, json } => {
            let s = match name.as_str() {
                "strassen" => strassen(),
                "fig1-a" => fig1_scheme_a(),
                "fig1-b" => fig1_scheme_b(),
                other => match other.strip_prefix("naive-").and_then(|k| k.parse().ok()) {
                    Some(k) => naive_scheme(k)?,
                    None => bail!("unknown bundled scheme {other:?}"),
                },
            };
            print!(
                "{}",
                if json {
                    to_json(&s) + "\n"
                } else {
                    render_scheme(&s)
                }
            );
        }
        Cmd::Challenge {
            id,
            seed,
            count,
            param,
            out_dir,
        } => {
            let specs = match (id, seed) {
                (1 | 2, Some(s)) => challenge_suite(id, s, count)?,
                _ => vec![ChallengeSpec::from_id(id, param)?],
            };
            std::fs::create_dir_all(&out_dir)?;
            for spec in specs {
                let f = generate_challenge(&spec)?;
                let path = out_dir.join(format!("{}.cnf", spec.name()));
                std::fs::write(&path, to_dimacs(&f))?;
                println!("{}", path.display());
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
