use super::{enumerate_terms, Scheme, TermIndex};

/// One violated Brent equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Violation {
    pub term: TermIndex,
    /// GF(2) sum over the summands of `alpha * beta * gamma`.
    pub lhs: bool,
    /// 1 iff the term has type 3.
    pub rhs: bool,
}

/// Evaluates all `n^6` Brent equations and returns every mismatch, in
/// lexicographic term order. An empty result means the scheme is valid.
pub fn brent_residual(s: &Scheme) -> Vec<Violation> {
    let mut out = Vec::new();
    for term in enumerate_terms(s.n()) {
        let lhs = s
            .summands()
            .iter()
            .fold(false, |acc, sm| acc ^ sm.produces(&term));
        let rhs = term.term_type() == 3;
        if lhs != rhs {
            out.push(Violation { term, lhs, rhs });
        }
    }
    out
}

pub fn verify(s: &Scheme) -> bool {
    brent_residual(s).is_empty()
}
