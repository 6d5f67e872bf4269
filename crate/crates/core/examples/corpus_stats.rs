//! Support histogram and core signatures, as CSV.

use brentsat::scheme::{fig1_scheme_a, fig1_scheme_b, naive_scheme};
use brentsat::search::corpus_stats;

fn main() -> brentsat::Result<()> {
    let corpus = [fig1_scheme_a(), fig1_scheme_b(), naive_scheme(3)?];
    let st = corpus_stats(&corpus)?;
    print!("{}\n{}", st.support_csv(), st.cores_csv());
    Ok(())
}
