//! Finds a 7-multiplication scheme for 2x2 matrices from scratch.

use brentsat::encoder::encode;
use brentsat::scheme::{render_scheme, verify};
use brentsat::sls::{solve, Algorithm, SolverConfig};

fn main() -> brentsat::Result<()> {
    let f = encode(2, 7)?;
    for algorithm in [Algorithm::Ddfw, Algorithm::ProbSat] {
        for seed in 0..3 {
            let cfg = SolverConfig {
                algorithm,
                seed,
                timeout: Some(std::time::Duration::from_secs(10)),
                ..SolverConfig::default()
            };
            let out = solve(&f, &cfg);
            println!(
                "{algorithm:?} seed {seed}: sat={} flips={} time={:.3}s",
                out.is_sat(),
                out.flips,
                out.elapsed.as_secs_f64()
            );
            if let (Some(m), Algorithm::Ddfw, 0) = (&out.model, algorithm, seed) {
                let s = f.decode(m)?;
                assert!(verify(&s));
                println!("{}", render_scheme(&s));
            }
        }
    }
    Ok(())
}
