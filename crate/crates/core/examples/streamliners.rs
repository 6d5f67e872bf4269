//! Pairings of type-3 terms and the structural constraints built on them.

use brentsat::encoder::{base_assignment, encode};
use brentsat::scheme::{fig1_scheme_a, fig1_scheme_b};
use brentsat::streamline::{
    even_occurrence_holds, hardcode_pairing, random_pairing, single_summand_structure_holds,
    streamline_even_occurrence, streamline_singletons, Pairing,
};

fn main() -> brentsat::Result<()> {
    let p = random_pairing(3, 23, 7)?;
    println!("random pairing (seed 7):\n{p}");

    let plain = encode(3, 23)?;
    let hard = hardcode_pairing(plain.clone(), &p, true)?;
    let full = streamline_even_occurrence(streamline_singletons(hard.clone())?)?;
    println!(
        "clauses: plain {}, hardcoded {}, streamlined {}",
        plain.total_clauses(),
        hard.total_clauses(),
        full.total_clauses()
    );

    for (name, s) in [("A", fig1_scheme_a()), ("B", fig1_scheme_b())] {
        let singles_ok = s
            .summands()
            .iter()
            .filter(|sm| single_summand_structure_holds(sm))
            .count();
        println!(
            "scheme {name}: core is a pairing: {}, summands with the single-summand structure: {singles_ok}/23, even occurrence: {}",
            Pairing::from_scheme_core(&s).is_ok(),
            even_occurrence_holds(&s)
        );
    }

    // A satisfies its own hardcoded pairing
    let a = fig1_scheme_a();
    let f = hardcode_pairing(encode(3, 23)?, &Pairing::from_scheme_core(&a)?, true)?;
    println!(
        "A satisfies its hardcoded core: {}",
        f.is_satisfied_by(&f.extend(&base_assignment(&a)))
    );
    Ok(())
}
