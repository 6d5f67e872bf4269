use serde::Serialize;

use super::{enumerate_type3, Scheme, TermIndex};

/// Number of 1-coefficients over all summands.
pub fn support(s: &Scheme) -> usize {
    s.summands()
        .iter()
        .map(|sm| (sm.alpha.count_ones() + sm.beta.count_ones() + sm.gamma.count_ones()) as usize)
        .sum()
}

/// For each summand, the type-3 terms it produces.
pub fn core(s: &Scheme) -> Vec<Vec<TermIndex>> {
    let type3 = enumerate_type3(s.n());
    s.summands()
        .iter()
        .map(|sm| type3.iter().copied().filter(|t| sm.produces(t)).collect())
        .collect()
}

/// Sorted sizes of the core sets with at least two terms, e.g. `[2, 2, 2, 2]`.
pub fn core_signature(s: &Scheme) -> Vec<usize> {
    signature_of(&core(s))
}

pub(crate) fn signature_of(core: &[Vec<TermIndex>]) -> Vec<usize> {
    let mut sig: Vec<usize> = core.iter().map(Vec::len).filter(|&k| k >= 2).collect();
    sig.sort_unstable();
    sig
}

/// Identity of a scheme up to reordering of its summands.
///
/// Each summand becomes a `3 n^2`-bit string (alpha, beta, gamma, each
/// row-major), packed MSB-first into whole bytes so that byte order equals
/// bit order. The strings are sorted and concatenated after a two-byte
/// `(n, m)` prefix.
pub fn canonical_key(s: &Scheme) -> Vec<u8> {
    let n = s.n();
    let cells = n * n;
    let width = (3 * cells).div_ceil(8);
    let mut rows: Vec<Vec<u8>> = s
        .summands()
        .iter()
        .map(|sm| {
            let mut buf = vec![0u8; width];
            let mut pos = 0;
            for mat in [&sm.alpha, &sm.beta, &sm.gamma] {
                for cell in 0..cells {
                    if mat.bits() >> cell & 1 == 1 {
                        buf[pos / 8] |= 0x80 >> (pos % 8);
                    }
                    pos += 1;
                }
            }
            buf
        })
        .collect();
    rows.sort_unstable();
    let mut key = Vec::with_capacity(2 + width * rows.len());
    key.push(n as u8);
    key.push(s.m().min(255) as u8);
    for r in rows {
        key.extend_from_slice(&r);
    }
    key
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SchemeStats {
    pub support: usize,
    pub core: Vec<Vec<TermIndex>>,
    pub core_signature: Vec<usize>,
}

impl SchemeStats {
    pub fn of(s: &Scheme) -> Self {
        let core = core(s);
        SchemeStats {
            support: support(s),
            core_signature: signature_of(&core),
            core,
        }
    }
}

impl Serialize for TermIndex {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scheme::{naive_scheme, strassen, Scheme};

    #[test]
    fn naive_support_and_core() {
        let s = naive_scheme(3).unwrap();
        assert_eq!(support(&s), 81);
        assert!(core_signature(&s).is_empty());
        assert!(core(&s).iter().all(|c| c.len() == 1));
    }

    #[test]
    fn strassen_support_is_36() {
        // hand count from the integer scheme: 12 + 12 + 12 nonzero coefficients
        assert_eq!(support(&strassen()), 36);
    }

    #[test]
    fn key_ignores_order_but_not_bits() {
        let s = strassen();
        let mut rev = s.clone().into_summands();
        rev.reverse();
        let rev = Scheme::new(2, rev).unwrap();
        assert_eq!(canonical_key(&s), canonical_key(&rev));

        let mut flipped = s.clone();
        flipped.flip_bit(3, 2, 1, 0);
        assert_ne!(canonical_key(&s), canonical_key(&flipped));
    }

    #[test]
    fn stats_bundle() {
        let st = SchemeStats::of(&strassen());
        assert_eq!(st.support, 36);
        assert_eq!(st.core.len(), 7);
        assert_eq!(st.core.iter().map(Vec::len).sum::<usize>(), 8);
    }
}
