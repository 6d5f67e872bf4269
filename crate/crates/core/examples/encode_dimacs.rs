//! Encodes the Brent equations as CNF and writes DIMACS.
//!
//! `cargo run --example encode_dimacs -- 3 23 out.cnf`

use brentsat::encoder::{encode, to_dimacs};

fn main() -> brentsat::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n: usize = args.first().and_then(|a| a.parse().ok()).unwrap_or(3);
    let m: usize = args.get(1).and_then(|a| a.parse().ok()).unwrap_or(23);
    let f = encode(n, m)?;
    let c = f.counts();
    println!("n={n} m={m}");
    println!("  base variables   {}", f.base().len());
    println!("  parity groups    {}", f.groups().len());
    println!("  variables        {}", f.var_count());
    println!("  clauses          {}", f.total_clauses());
    println!("  {c:?}");
    if let Some(path) = args.get(2) {
        std::fs::write(path, to_dimacs(&f))?;
        std::fs::write(format!("{path}.varmap"), f.base().to_sidecar())?;
        println!("wrote {path} and {path}.varmap");
    }
    Ok(())
}
