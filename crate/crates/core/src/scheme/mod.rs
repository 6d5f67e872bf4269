//! Schemes over GF(2) and the Brent-equation oracle.
//!
//! Gamma is stored in the flipped convention: a valid scheme satisfies
//! `sum_l alpha[i1,i2] beta[j1,j2] gamma[k1,k2] = d(i2,j1) d(j2,k1) d(k2,i1)`
//! for all six indices, so the type-3 terms are exactly `a_ij b_jk c_ki`.
//! Schemes written in the application convention (`c_ik` is a linear
//! combination of the products) have their gamma transposed on import.

mod bundled;
mod format;
mod stats;
mod term;
mod verify;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use bundled::{fig1_scheme_a, fig1_scheme_b, strassen, FIG1_SCHEME_A_TEXT, FIG1_SCHEME_B_TEXT};
pub use format::{
    from_json, parse_scheme, parse_scheme_detect, render_scheme, to_json, SchemeRecord,
};
pub use stats::{canonical_key, core, core_signature, support, SchemeStats};
pub use term::{enumerate_terms, enumerate_type3, term_type, TermIndex};
pub use verify::{brent_residual, verify, Violation};

/// Largest supported matrix dimension; a coefficient matrix fits in one `u64`.
pub const MAX_DIM: usize = 8;

/// Which index order the gamma matrices are written in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GammaConvention {
    /// `gamma[k][i]` set means `M_l` feeds `c_ik`; Brent right-hand side is symmetric.
    Flipped,
    /// `gamma[i][k]` set means `M_l` feeds `c_ik`.
    Application,
}

impl GammaConvention {
    pub fn as_str(self) -> &'static str {
        match self {
            GammaConvention::Flipped => "flipped",
            GammaConvention::Application => "application",
        }
    }
}

impl std::str::FromStr for GammaConvention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "flipped" => Ok(GammaConvention::Flipped),
            "application" => Ok(GammaConvention::Application),
            other => Err(Error::Domain(format!("unknown gamma convention `{other}`"))),
        }
    }
}

/// An `n x n` matrix over GF(2), row-major in the low `n*n` bits of a word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BitMat {
    n: u8,
    bits: u64,
}

impl BitMat {
    pub fn zero(n: usize) -> Self {
        assert!((1..=MAX_DIM).contains(&n), "dimension {n} out of range");
        BitMat {
            n: n as u8,
            bits: 0,
        }
    }

    /// Builds a matrix from raw row-major bits; bits beyond `n*n` are rejected.
    pub fn from_bits(n: usize, bits: u64) -> Result<Self> {
        if !(1..=MAX_DIM).contains(&n) {
            return Err(Error::Domain(format!(
                "dimension {n} out of range 1..={MAX_DIM}"
            )));
        }
        let cells = n * n;
        if cells < 64 && bits >> cells != 0 {
            return Err(Error::Domain(format!("bits beyond {cells} cells set")));
        }
        Ok(BitMat { n: n as u8, bits })
    }

    /// A matrix with exactly one 1 at the zero-based `(row, col)`.
    pub fn unit(n: usize, row: usize, col: usize) -> Self {
        let mut m = BitMat::zero(n);
        m.set(row, col, true);
        m
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn bits(&self) -> u64 {
        self.bits
    }

    /// Zero-based access.
    #[inline]
    pub fn get(&self, row: usize, col: usize) -> bool {
        debug_assert!(row < self.n() && col < self.n());
        self.bits >> (row * self.n() + col) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        debug_assert!(row < self.n() && col < self.n());
        let mask = 1u64 << (row * self.n() + col);
        if value {
            self.bits |= mask;
        } else {
            self.bits &= !mask;
        }
    }

    #[inline]
    pub fn count_ones(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn transpose(&self) -> Self {
        let n = self.n();
        let mut t = BitMat::zero(n);
        for r in 0..n {
            for c in 0..n {
                if self.get(r, c) {
                    t.set(c, r, true);
                }
            }
        }
        t
    }

    /// Iterates the zero-based coordinates of the 1-entries in row-major order.
    pub fn ones(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n();
        (0..n * n)
            .filter(move |&i| self.bits >> i & 1 == 1)
            .map(move |i| (i / n, i % n))
    }
}

/// One multiplication `M_l`: the coefficient matrices of its A-factor,
/// B-factor and its gamma row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Summand {
    pub alpha: BitMat,
    pub beta: BitMat,
    pub gamma: BitMat,
}

impl Summand {
    pub fn zero(n: usize) -> Self {
        Summand {
            alpha: BitMat::zero(n),
            beta: BitMat::zero(n),
            gamma: BitMat::zero(n),
        }
    }

    pub fn n(&self) -> usize {
        self.alpha.n()
    }

    /// Matrix by role index: 0 = alpha, 1 = beta, 2 = gamma.
    pub fn matrix(&self, role: usize) -> &BitMat {
        match role {
            0 => &self.alpha,
            1 => &self.beta,
            2 => &self.gamma,
            _ => panic!("role {role} out of range"),
        }
    }

    pub fn matrix_mut(&mut self, role: usize) -> &mut BitMat {
        match role {
            0 => &mut self.alpha,
            1 => &mut self.beta,
            2 => &mut self.gamma,
            _ => panic!("role {role} out of range"),
        }
    }

    /// Whether this summand produces the term, i.e. all three coefficients are 1.
    #[inline]
    pub fn produces(&self, t: &TermIndex) -> bool {
        let (i1, i2, j1, j2, k1, k2) = t.zero_based();
        self.alpha.get(i1, i2) && self.beta.get(j1, j2) && self.gamma.get(k1, k2)
    }
}

/// A candidate multiplication scheme. Validity is checked by [`verify`],
/// not enforced by construction.
///
/// Equality compares the dimension and the ordered summands; the label is
/// provenance only.
#[derive(Debug, Clone, Eq)]
pub struct Scheme {
    n: usize,
    summands: Vec<Summand>,
    pub label: Option<String>,
}

impl PartialEq for Scheme {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.summands == other.summands
    }
}

impl Scheme {
    pub fn new(n: usize, summands: Vec<Summand>) -> Result<Self> {
        if !(1..=MAX_DIM).contains(&n) {
            return Err(Error::Domain(format!(
                "dimension {n} out of range 1..={MAX_DIM}"
            )));
        }
        if let Some((l, _)) = summands
            .iter()
            .enumerate()
            .find(|(_, s)| s.alpha.n() != n || s.beta.n() != n || s.gamma.n() != n)
        {
            return Err(Error::Dimension(format!(
                "summand {} is not {n}x{n}",
                l + 1
            )));
        }
        Ok(Scheme {
            n,
            summands,
            label: None,
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of multiplications.
    #[inline]
    pub fn m(&self) -> usize {
        self.summands.len()
    }

    pub fn summands(&self) -> &[Summand] {
        &self.summands
    }

    pub fn summands_mut(&mut self) -> &mut [Summand] {
        &mut self.summands
    }

    pub fn into_summands(self) -> Vec<Summand> {
        self.summands
    }

    /// Copy with every gamma transposed; converts between the two conventions.
    pub fn transpose_gamma(&self) -> Scheme {
        let summands = self
            .summands
            .iter()
            .map(|s| Summand {
                gamma: s.gamma.transpose(),
                ..*s
            })
            .collect();
        Scheme {
            n: self.n,
            summands,
            label: self.label.clone(),
        }
    }

    /// Flips one coefficient; `role` 0/1/2 selects alpha/beta/gamma, indices zero-based.
    pub fn flip_bit(&mut self, summand: usize, role: usize, row: usize, col: usize) {
        let m = self.summands[summand].matrix_mut(role);
        let v = m.get(row, col);
        m.set(row, col, !v);
    }
}

/// The schoolbook scheme with `n^3` summands: summand `(i, j, k)` has
/// `alpha[i,j] = beta[j,k] = gamma[k,i] = 1` and nothing else.
pub fn naive_scheme(n: usize) -> Result<Scheme> {
    if !(1..=MAX_DIM).contains(&n) {
        return Err(Error::Domain(format!(
            "dimension {n} out of range 1..={MAX_DIM}"
        )));
    }
    let mut summands = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                summands.push(Summand {
                    alpha: BitMat::unit(n, i, j),
                    beta: BitMat::unit(n, j, k),
                    gamma: BitMat::unit(n, k, i),
                });
            }
        }
    }
    Ok(Scheme::new(n, summands)?.with_label(format!("naive-{n}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bitmat_set_get_transpose() {
        let mut m = BitMat::zero(3);
        m.set(0, 2, true);
        m.set(2, 1, true);
        assert!(m.get(0, 2) && m.get(2, 1) && !m.get(2, 0));
        let t = m.transpose();
        assert!(t.get(2, 0) && t.get(1, 2));
        assert_eq!(t.transpose(), m);
        assert_eq!(m.ones().collect::<Vec<_>>(), vec![(0, 2), (2, 1)]);
    }

    #[test]
    fn from_bits_rejects_stray_bits() {
        assert!(BitMat::from_bits(2, 0b1_0000).is_err());
        assert!(BitMat::from_bits(2, 0b1111).is_ok());
        assert!(BitMat::from_bits(9, 0).is_err());
    }

    #[test]
    fn naive_sizes() {
        assert_eq!(naive_scheme(1).unwrap().m(), 1);
        assert_eq!(naive_scheme(2).unwrap().m(), 8);
        assert_eq!(naive_scheme(3).unwrap().m(), 27);
        assert!(naive_scheme(0).is_err());
    }

    #[test]
    fn scheme_rejects_mixed_dimensions() {
        let err = Scheme::new(3, vec![Summand::zero(3), Summand::zero(2)]).unwrap_err();
        assert!(matches!(err, Error::Dimension(_)));
    }

    #[test]
    fn label_does_not_affect_equality() {
        let a = naive_scheme(2).unwrap();
        let b = a.clone().with_label("other");
        assert_eq!(a, b);
    }
}
