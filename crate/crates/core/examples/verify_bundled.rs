//! Checks the bundled schemes against the Brent equations and prints their
//! support and core.

use brentsat::scheme::{
    brent_residual, fig1_scheme_a, fig1_scheme_b, naive_scheme, render_scheme, strassen,
    SchemeStats,
};

fn main() -> brentsat::Result<()> {
    let schemes = [
        ("strassen", strassen()),
        ("naive 2", naive_scheme(2)?),
        ("naive 3", naive_scheme(3)?),
        ("fig1 A", fig1_scheme_a()),
        ("fig1 B", fig1_scheme_b()),
    ];
    for (name, s) in &schemes {
        let st = SchemeStats::of(s);
        println!(
            "{name:10} n={} m={:2} violations={} support={:3} core signature={:?}",
            s.n(),
            s.m(),
            brent_residual(s).len(),
            st.support,
            st.core_signature
        );
    }

    // one flipped coefficient breaks some equations
    let mut broken = strassen();
    broken.flip_bit(0, 0, 0, 0);
    let bad = brent_residual(&broken);
    println!(
        "\nstrassen with a11 flipped in summand 1: {} violations, first {}",
        bad.len(),
        bad[0].term
    );

    println!("\n{}", render_scheme(&strassen()));
    Ok(())
}
