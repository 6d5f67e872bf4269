//! Random walk through neighborhoods, starting at a bundled scheme.
//!
//! `cargo run --release --example random_walk -- [seconds] [threads] [out-dir]`

use std::collections::HashSet;
use std::path::Path;

use brentsat::scheme::fig1_scheme_a;
use brentsat::search::{random_walk, write_walk_output, WalkBudget, WalkConfig};

fn main() -> brentsat::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let seconds: f64 = args.first().and_then(|a| a.parse().ok()).unwrap_or(10.0);
    let threads: usize = args.get(1).and_then(|a| a.parse().ok()).unwrap_or(2);

    let mut cfg = WalkConfig::new(WalkBudget::Seconds(seconds));
    cfg.threads = threads;
    let st = random_walk(&fig1_scheme_a(), &cfg)?;
    println!(
        "{} steps, {} failed, {} distinct schemes",
        st.steps,
        st.failed_steps,
        st.discoveries.len()
    );
    for d in st.discoveries.iter().take(5) {
        println!(
            "  thread {} step {:4} t={:6.2}s support={} core={:?}",
            d.thread, d.step, d.elapsed_s, d.support, d.core_signature
        );
    }
    print!("{}", st.series_csv());
    if let Some(dir) = args.get(2) {
        write_walk_output(Path::new(dir), &st, &HashSet::new())?;
        println!("wrote {dir}");
    }
    Ok(())
}
