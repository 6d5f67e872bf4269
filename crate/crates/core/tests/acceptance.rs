//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test --release --test acceptance`. Takes a few minutes;
//! criterion 6 alone walks for 120 s.

use std::collections::HashSet;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use brentsat::challenge::{generate_challenge, ChallengeSpec, PairingSource};
use brentsat::encoder::{base_assignment, encode, parse_dimacs, to_dimacs};
use brentsat::scheme::{
    brent_residual, canonical_key, core, fig1_scheme_a, fig1_scheme_b, naive_scheme, strassen,
    support, verify, FIG1_SCHEME_A_TEXT, FIG1_SCHEME_B_TEXT,
};
use brentsat::search::{
    corpus_stats, pairing_search, random_walk, PairingSearchConfig, WalkBudget, WalkConfig,
};
use brentsat::sls::{check_model, solve, SolverConfig};

type Criterion = (&'static str, fn() -> Verdict);

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn c1_encoder_shape() -> Verdict {
    let t = Instant::now();
    let f = encode(3, 23).unwrap();
    let dt = t.elapsed();
    let (base, groups) = (f.base().len(), f.groups().len());
    verdict(
        base == 621 && groups == 729 && dt < Duration::from_secs(5),
        format!("base={base} groups={groups} time={:.3}s", dt.as_secs_f64()),
    )
}

/// Number of coefficient tokens such as `a13` in a rendered scheme.
fn token_count(text: &str) -> usize {
    let b = text.as_bytes();
    (0..b.len().saturating_sub(2))
        .filter(|&i| {
            matches!(b[i], b'a' | b'b' | b'c')
                && b[i + 1].is_ascii_digit()
                && b[i + 2].is_ascii_digit()
                && (i == 0 || !b[i - 1].is_ascii_alphanumeric())
        })
        .count()
}

fn c2_bundled_schemes() -> Verdict {
    let t = Instant::now();
    let mut all = vec![strassen(), fig1_scheme_a(), fig1_scheme_b()];
    for n in 1..=3 {
        all.push(naive_scheme(n).unwrap());
    }
    let valid = all.iter().all(verify);
    let (a, b) = (fig1_scheme_a(), fig1_scheme_b());
    let kb: Vec<_> = b.summands().to_vec();
    let shared = a.summands().iter().filter(|s| kb.contains(s)).count();
    let dt = t.elapsed();
    verdict(
        valid && shared == 19 && a.m() - shared == 4 && dt < Duration::from_secs(1),
        format!(
            "all valid={valid} shared={shared} differing={} time={:.3}s",
            a.m() - shared,
            dt.as_secs_f64()
        ),
    )
}

fn sound_on(f: &brentsat::CnfFormula, values: &[bool]) -> bool {
    let model = f.extend(values);
    let cnf_ok = check_model(f, &model);
    let oracle_ok = brent_residual(&f.scheme_from_model(&model)).is_empty();
    cnf_ok == oracle_ok
}

fn c3_soundness() -> Verdict {
    let f1 = encode(1, 1).unwrap();
    let mut bad = 0;
    for bits in 0..8u32 {
        let v: Vec<bool> = (0..3).map(|i| bits >> i & 1 == 1).collect();
        bad += !sound_on(&f1, &v) as usize;
    }
    let f2 = encode(2, 7).unwrap();
    let s = base_assignment(&strassen());
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut samples, mut positives) = (0, 0);
    for i in 0..1500 {
        let v: Vec<bool> = if i % 3 == 0 {
            (0..s.len()).map(|_| rng.gen()).collect()
        } else {
            // near a valid scheme, so both outcomes occur
            let mut v = s.clone();
            for _ in 0..(i % 3 - 1) {
                let k = rng.gen_range(0..v.len());
                v[k] = !v[k];
            }
            v
        };
        positives += check_model(&f2, &f2.extend(&v)) as usize;
        bad += !sound_on(&f2, &v) as usize;
        samples += 1;
    }
    verdict(
        bad == 0 && samples >= 1000 && positives > 0,
        format!("n=1: 8 assignments, n=2: {samples} assignments ({positives} valid), counterexamples={bad}"),
    )
}

fn c4_small_solve() -> Verdict {
    let f = encode(2, 7).unwrap();
    let mut ok = 0;
    let mut times = Vec::new();
    for seed in 0..10 {
        let out = solve(
            &f,
            &SolverConfig::default()
                .with_seed(seed)
                .with_timeout(Duration::from_secs(60)),
        );
        times.push(out.elapsed.as_secs_f64());
        if let Some(m) = &out.model {
            ok += f.decode(m).map(|s| verify(&s)).unwrap_or(false) as usize;
        }
    }
    let max = times.iter().cloned().fold(0.0, f64::max);
    verdict(
        ok >= 9,
        format!("{ok}/10 seeds solved within 60 s, slowest {max:.2}s"),
    )
}

fn c5_neighborhood() -> Verdict {
    let a = fig1_scheme_a();
    let plain = encode(3, 23).unwrap();
    let mut ok = 0;
    let mut bad = 0;
    let mut times = Vec::new();
    for seed in 0..10 {
        let f = plain.clone().fix_from_scheme(&a, 2.0 / 3.0, seed).unwrap();
        assert_eq!(f.assumptions().len(), 414);
        let out = solve(
            &f,
            &SolverConfig::default()
                .with_seed(seed)
                .with_timeout(Duration::from_secs(120)),
        );
        match &out.model {
            Some(m) => {
                let s = f.decode(m).unwrap();
                let base = base_assignment(&s);
                let agrees = f
                    .assumptions()
                    .iter()
                    .all(|l| base[l.var() as usize - 1] == l.is_positive());
                if verify(&s) && agrees {
                    ok += 1;
                } else {
                    bad += 1;
                }
                times.push(out.elapsed.as_secs_f64());
            }
            None => times.push(f64::INFINITY),
        }
    }
    times.sort_by(f64::total_cmp);
    let median = (times[4] + times[5]) / 2.0;
    verdict(
        ok >= 8 && bad == 0 && median <= 60.0,
        format!("{ok}/10 solved, {bad} wrong, median {median:.3}s"),
    )
}

fn c6_walk() -> Verdict {
    let mut cfg = WalkConfig::new(WalkBudget::Seconds(120.0));
    cfg.threads = 4;
    cfg.master_seed = 6;
    cfg.sample_interval = 10.0;
    let st = random_walk(&fig1_scheme_a(), &cfg).unwrap();
    let all_valid = st.schemes().all(verify);
    let keys: HashSet<Vec<u8>> = st.schemes().map(canonical_key).collect();
    let distinct_keys = keys.len() == st.discoveries.len();
    let monotone = st.series.windows(2).all(|w| w[0].distinct <= w[1].distinct);
    verdict(
        !st.discoveries.is_empty() && all_valid && distinct_keys && monotone,
        format!(
            "{} distinct schemes in {:.0}s on 4 threads ({} steps), valid={all_valid} keys distinct={distinct_keys} monotone={monotone}",
            st.discoveries.len(),
            st.elapsed_s,
            st.steps
        ),
    )
}

fn c7_streamlining() -> Verdict {
    let seeds: Vec<u64> = (0..20).collect();
    let mut counts = [0usize; 2];
    let mut consistent = true;
    for (i, streamline) in [true, false].into_iter().enumerate() {
        let cfg = PairingSearchConfig {
            streamline,
            blocking: true,
            solver: SolverConfig::single_try(0, 50_000),
            ..PairingSearchConfig::default()
        };
        for a in pairing_search(&seeds, &cfg).unwrap() {
            if let Some(s) = &a.scheme {
                counts[i] += 1;
                consistent &= verify(s) && core(s) == a.pairing.entries();
            }
        }
    }
    verdict(
        counts[0] >= counts[1] && consistent,
        format!(
            "20 pairings at 50000 flips: streamlined {} vs plain {} extended",
            counts[0], counts[1]
        ),
    )
}

fn c8_challenges() -> Verdict {
    let plain = encode(3, 23).unwrap();
    let c4 = generate_challenge(&ChallengeSpec::Plain(22)).unwrap();
    let header4 = parse_dimacs(&to_dimacs(&c4)).unwrap();
    let ok4 = c4.base().len() == 594 && header4.var_count == encode(3, 22).unwrap().var_count();

    let c3 = generate_challenge(&ChallengeSpec::BlockedSummand(23)).unwrap();
    let extra3 = &c3.clauses()[plain.clauses().len()..];
    let ok3 = c3.total_clauses() - plain.total_clauses() == 27
        && c3.clauses()[..plain.clauses().len()] == *plain.clauses()
        && extra3.iter().all(|c| {
            c.len() == 3
                && c.iter().all(|l| {
                    !l.is_positive() && c3.base().lookup(l.var()).is_some_and(|b| b.summand == 23)
                })
        });

    let mut ok12 = true;
    for spec in [
        ChallengeSpec::HardcodedSat(PairingSource::Demo),
        ChallengeSpec::HardcodedSat(PairingSource::Seed(1)),
        ChallengeSpec::HardcodedUnsat(PairingSource::Seed(2)),
    ] {
        let f = generate_challenge(&spec).unwrap();
        let extra = &f.clauses()[plain.clauses().len()..];
        let units = extra.iter().filter(|c| c.len() == 1).count();
        // no streamliner: no auxiliary variables beyond the plain encoding
        ok12 &= units == 81 && f.var_count() == plain.var_count() && f.pairing().is_some();
    }
    verdict(
        ok4 && ok3 && ok12,
        format!("challenge4={ok4} challenge3={ok3} challenges1-2={ok12}"),
    )
}

fn c9_statistics() -> Verdict {
    let naive = corpus_stats([&naive_scheme(3).unwrap()]).unwrap();
    let single_bin = naive.support.len() == 1 && naive.support.get(&81) == Some(&1);

    let mut cfg = WalkConfig::new(WalkBudget::Flips(100_000));
    cfg.master_seed = 9;
    let st = random_walk(&fig1_scheme_a(), &cfg).unwrap();
    let walk = corpus_stats(st.schemes()).unwrap();
    let bins_sum = walk.support.values().sum::<usize>() == st.discoveries.len();
    let range_ok = st.schemes().all(|s| (27..=621).contains(&support(s)));

    let golden = [
        (
            support(&fig1_scheme_a()),
            token_count(FIG1_SCHEME_A_TEXT),
            151,
        ),
        (
            support(&fig1_scheme_b()),
            token_count(FIG1_SCHEME_B_TEXT),
            156,
        ),
        (support(&strassen()), 36, 36),
        (support(&naive_scheme(3).unwrap()), 81, 81),
    ];
    let golden_ok = golden
        .iter()
        .all(|&(s, oracle, lit)| s == oracle && s == lit);
    verdict(
        single_bin && bins_sum && range_ok && golden_ok,
        format!(
            "naive single bin={single_bin}, walk corpus {} bin sum ok={bins_sum}, support in [27,621]={range_ok}, golden A/B/strassen/naive={golden_ok}",
            st.discoveries.len()
        ),
    )
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_brentsat"))
}

fn dir_files(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut out: Vec<(String, Vec<u8>)> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let p = e.unwrap().path();
            (
                p.file_name().unwrap().to_string_lossy().into_owned(),
                std::fs::read(&p).unwrap(),
            )
        })
        .collect();
    out.sort();
    out
}

fn c10_determinism() -> Verdict {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path();
    let a = d.join("a.scheme");
    let shown = bin().args(["bundled", "fig1-a"]).output().unwrap();
    std::fs::write(&a, shown.stdout).unwrap();
    let a = a.to_str().unwrap();

    let mut same = [true; 3];
    for run in 0..2 {
        let p = |name: &str| d.join(format!("{name}{run}")).to_str().unwrap().to_string();
        let enc = p("enc.cnf");
        bin()
            .args([
                "encode", "-n", "3", "-m", "23", "--scheme", a, "--seed", "4", "-o", &enc,
            ])
            .output()
            .unwrap();
        let sol = p("sol.scheme");
        bin()
            .args([
                "solve",
                "-n",
                "2",
                "-m",
                "7",
                "--solver-seed",
                "1",
                "--max-flips",
                "1000000",
                "--tries",
                "1",
                "-o",
                &sol,
            ])
            .output()
            .unwrap();
        let walk = p("walk");
        bin()
            .args([
                "walk",
                "--start",
                a,
                "--flips",
                "40000",
                "--threads",
                "2",
                "--seed",
                "10",
                "--out-dir",
                &walk,
            ])
            .output()
            .unwrap();
    }
    let read = |n: &str| std::fs::read(d.join(n)).ok();
    same[0] = read("enc.cnf0").is_some() && read("enc.cnf0") == read("enc.cnf1");
    same[0] &= read("enc.cnf0.varmap") == read("enc.cnf1.varmap");
    same[1] = read("sol.scheme0").is_some() && read("sol.scheme0") == read("sol.scheme1");
    let (w0, w1) = (dir_files(&d.join("walk0")), dir_files(&d.join("walk1")));
    same[2] = !w0.is_empty() && w0 == w1;
    verdict(
        same.iter().all(|&x| x),
        format!(
            "encode identical={} solve identical={} walk identical={} ({} files)",
            same[0],
            same[1],
            same[2],
            w0.len()
        ),
    )
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("encoder shape", c1_encoder_shape),
        ("bundled schemes verify", c2_bundled_schemes),
        ("encoding soundness", c3_soundness),
        ("small end-to-end solve", c4_small_solve),
        ("neighborhood method", c5_neighborhood),
        ("random walk", c6_walk),
        ("streamlining effect", c7_streamlining),
        ("challenge generator", c8_challenges),
        ("statistics", c9_statistics),
        ("determinism", c10_determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let v = check();
        failed += !v.pass as usize;
        println!(
            "criterion {:2} {:24} {} ({:.1}s) {}",
            i + 1,
            name,
            if v.pass { "PASS" } else { "FAIL" },
            t.elapsed().as_secs_f64(),
            v.detail
        );
    }
    println!(
        "acceptance: {}/{} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
