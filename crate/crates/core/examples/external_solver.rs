//! Hands a formula to an external DIMACS solver named in `BRENTSAT_SOLVER`
//! (e.g. `BRENTSAT_SOLVER=yalsat`). The returned model is checked and
//! decoded like an embedded one.

use brentsat::encoder::encode;
use brentsat::scheme::{fig1_scheme_a, verify};
use brentsat::sls::{solve_external, SOLVER_ENV};

fn main() -> brentsat::Result<()> {
    let Ok(cmd) = std::env::var(SOLVER_ENV) else {
        println!("set {SOLVER_ENV} to a solver command that prints s/v lines");
        return Ok(());
    };
    let f = encode(3, 23)?.fix_from_scheme(&fig1_scheme_a(), 2.0 / 3.0, 1)?;
    match solve_external(&f, &cmd)? {
        Some(model) => {
            let s = f.decode(&model)?;
            println!("external solver found a scheme; valid: {}", verify(&s));
        }
        None => println!("external solver reported no model"),
    }
    Ok(())
}
