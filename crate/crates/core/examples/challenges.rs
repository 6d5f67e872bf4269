//! Writes the four challenge families as DIMACS files.
//!
//! `cargo run --example challenges -- out-dir`

use std::path::PathBuf;

use brentsat::challenge::{challenge_suite, generate_challenge, ChallengeSpec, PairingSource};
use brentsat::encoder::to_dimacs;

fn main() -> brentsat::Result<()> {
    let dir = PathBuf::from(
        std::env::args()
            .nth(1)
            .unwrap_or_else(|| "challenges".into()),
    );
    std::fs::create_dir_all(&dir)?;
    let mut specs = vec![ChallengeSpec::HardcodedSat(PairingSource::Demo)];
    specs.extend(challenge_suite(2, 0, 3)?);
    specs.push(ChallengeSpec::BlockedSummand(23));
    specs.push(ChallengeSpec::Plain(22));
    for spec in specs {
        let f = generate_challenge(&spec)?;
        let path = dir.join(format!("{}.cnf", spec.name()));
        std::fs::write(&path, to_dimacs(&f))?;
        println!(
            "{:40} base={} vars={} clauses={}",
            path.display(),
            f.base().len(),
            f.var_count(),
            f.total_clauses()
        );
    }
    Ok(())
}
