//! Fixes two thirds of the base variables of a known 3x3 scheme and solves
//! for the rest.

use brentsat::encoder::{base_assignment, encode};
use brentsat::scheme::{canonical_key, fig1_scheme_a, verify};
use brentsat::sls::{solve, SolverConfig};

fn main() -> brentsat::Result<()> {
    let a = fig1_scheme_a();
    let key_a = canonical_key(&a);
    let plain = encode(3, 23)?;
    for seed in 0..8 {
        let f = plain.clone().fix_from_scheme(&a, 2.0 / 3.0, seed)?;
        let out = solve(&f, &SolverConfig::default().with_seed(seed));
        let Some(model) = out.model else {
            println!("seed {seed}: no solution within budget");
            continue;
        };
        let s = f.decode(&model)?;
        let base = base_assignment(&s);
        let agrees = f
            .assumptions()
            .iter()
            .all(|l| base[l.var() as usize - 1] == l.is_positive());
        println!(
            "seed {seed}: fixed={} propagated={} flips={} valid={} agrees={} new={}",
            f.assumptions().len(),
            out.propagated,
            out.flips,
            verify(&s),
            agrees,
            canonical_key(&s) != key_a
        );
    }
    Ok(())
}
