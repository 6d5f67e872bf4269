//! Hardcodes random pairings and tries to extend them to full schemes,
//! with and without streamlining.
//!
//! `cargo run --release --example pairing_search -- [pairings] [flips]`

use brentsat::search::{pairing_search, PairingSearchConfig};
use brentsat::sls::SolverConfig;

fn main() -> brentsat::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let count: u64 = args.first().and_then(|a| a.parse().ok()).unwrap_or(4);
    let flips: u64 = args.get(1).and_then(|a| a.parse().ok()).unwrap_or(200_000);
    let seeds: Vec<u64> = (0..count).collect();
    for streamline in [true, false] {
        let cfg = PairingSearchConfig {
            streamline,
            solver: SolverConfig::single_try(0, flips),
            ..PairingSearchConfig::default()
        };
        let attempts = pairing_search(&seeds, &cfg)?;
        let found = attempts.iter().filter(|a| a.scheme.is_some()).count();
        println!("streamline={streamline}: {found}/{count} pairings extended within {flips} flips");
        for a in &attempts {
            println!(
                "  seed {} found={} flips={} time={:.2}s",
                a.seed,
                a.scheme.is_some(),
                a.flips,
                a.elapsed.as_secs_f64()
            );
        }
    }
    Ok(())
}
