use std::fmt;

use crate::error::{Error, Result};

use super::MAX_DIM;

/// One monomial `a_{i1 i2} b_{j1 j2} c_{k1 k2}`, indices 1-based.
///
/// The gamma indices follow the flipped convention, so the term is of
/// type 3 iff it has the shape `a_ij b_jk c_ki`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TermIndex {
    pub i1: u8,
    pub i2: u8,
    pub j1: u8,
    pub j2: u8,
    pub k1: u8,
    pub k2: u8,
}

impl TermIndex {
    /// Validating constructor; all six indices must lie in `1..=n`.
    pub fn new(n: usize, idx: [usize; 6]) -> Result<Self> {
        if !(1..=MAX_DIM).contains(&n) {
            return Err(Error::Domain(format!(
                "dimension {n} out of range 1..={MAX_DIM}"
            )));
        }
        if let Some(bad) = idx.iter().find(|&&v| v == 0 || v > n) {
            return Err(Error::Domain(format!("term index {bad} outside 1..={n}")));
        }
        Ok(Self::from_array_unchecked(idx))
    }

    pub(crate) fn from_array_unchecked(idx: [usize; 6]) -> Self {
        TermIndex {
            i1: idx[0] as u8,
            i2: idx[1] as u8,
            j1: idx[2] as u8,
            j2: idx[3] as u8,
            k1: idx[4] as u8,
            k2: idx[5] as u8,
        }
    }

    /// The type-3 term `a_ij b_jk c_ki` for 1-based `i, j, k`.
    pub fn type3(i: usize, j: usize, k: usize) -> Self {
        Self::from_array_unchecked([i, j, j, k, k, i])
    }

    /// `d(i2,j1) + d(j2,k1) + d(k2,i1)`.
    #[inline]
    pub fn term_type(&self) -> u8 {
        (self.i2 == self.j1) as u8 + (self.j2 == self.k1) as u8 + (self.k2 == self.i1) as u8
    }

    /// Zero-based `(i1, i2, j1, j2, k1, k2)`.
    #[inline]
    pub fn zero_based(&self) -> (usize, usize, usize, usize, usize, usize) {
        (
            self.i1 as usize - 1,
            self.i2 as usize - 1,
            self.j1 as usize - 1,
            self.j2 as usize - 1,
            self.k1 as usize - 1,
            self.k2 as usize - 1,
        )
    }

    pub fn max_index(&self) -> u8 {
        [self.i1, self.i2, self.j1, self.j2, self.k1, self.k2]
            .into_iter()
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for TermIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "a{}{}b{}{}c{}{}",
            self.i1, self.i2, self.j1, self.j2, self.k1, self.k2
        )
    }
}

impl std::str::FromStr for TermIndex {
    type Err = Error;

    /// Parses `a13b31c11`. Single-digit indices only.
    fn from_str(s: &str) -> Result<Self> {
        let b = s.trim().as_bytes();
        let bad = || Error::Domain(format!("malformed term `{s}`"));
        if b.len() != 9 || b[0] != b'a' || b[3] != b'b' || b[6] != b'c' {
            return Err(bad());
        }
        let mut idx = [0usize; 6];
        for (slot, &pos) in idx.iter_mut().zip(&[1, 2, 4, 5, 7, 8]) {
            let c = b[pos];
            if !c.is_ascii_digit() || c == b'0' {
                return Err(bad());
            }
            *slot = (c - b'0') as usize;
        }
        Ok(Self::from_array_unchecked(idx))
    }
}

/// Range-checked type of a term for dimension `n`.
pub fn term_type(n: usize, t: &TermIndex) -> Result<u8> {
    if t.max_index() as usize > n || [t.i1, t.i2, t.j1, t.j2, t.k1, t.k2].contains(&0) {
        return Err(Error::Domain(format!("term {t} out of range for n={n}")));
    }
    Ok(t.term_type())
}

/// All `n^6` terms in lexicographic `(i1, i2, j1, j2, k1, k2)` order.
pub fn enumerate_terms(n: usize) -> impl Iterator<Item = TermIndex> {
    let n6 = n.pow(6);
    (0..n6).map(move |mut x| {
        let mut idx = [0usize; 6];
        for slot in idx.iter_mut().rev() {
            *slot = x % n + 1;
            x /= n;
        }
        TermIndex::from_array_unchecked(idx)
    })
}

/// The `n^3` type-3 terms `a_ij b_jk c_ki`, ordered by `(i, j, k)`.
pub fn enumerate_type3(n: usize) -> Vec<TermIndex> {
    let mut out = Vec::with_capacity(n * n * n);
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                out.push(TermIndex::type3(i, j, k));
            }
        }
    }
    out
}
