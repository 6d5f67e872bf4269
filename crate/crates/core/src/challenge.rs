//! Benchmark instances for SAT solvers, generated locally.
//!
//! 1. Satisfiable formulas with a hardcoded pairing of the type-3 terms and
//!    no streamlining constraints.
//! 2. The same construction for pairings that are expected (not known) to
//!    be unsatisfiable.
//! 3. Plain `encode(3, 23)` where one summand may not contain any type-3
//!    term.
//! 4. Plain `encode(3, 22)`.
//!
//! Only the structure of the published challenge files is reproduced
//! here (see the README for the upstream repository); variable numbering
//! and clause order follow this crate's encoder.

use std::fmt;
use std::str::FromStr;

use crate::encoder::{encode, CnfFormula};
use crate::error::{Error, Result};
use crate::scheme::fig1_scheme_a;
use crate::streamline::{block_type3, hardcode_pairing, random_pairing, Pairing};

/// Where a challenge-1/2 pairing comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairingSource {
    Seed(u64),
    /// The core of the bundled scheme A; satisfiable with A as witness.
    Demo,
}

impl PairingSource {
    pub fn pairing(self) -> Result<Pairing> {
        match self {
            PairingSource::Seed(s) => random_pairing(3, 23, s),
            PairingSource::Demo => demo_pairing(),
        }
    }
}

impl fmt::Display for PairingSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PairingSource::Seed(s) => write!(f, "seed{s}"),
            PairingSource::Demo => f.write_str("demo"),
        }
    }
}

pub fn demo_pairing() -> Result<Pairing> {
    Pairing::from_scheme_core(&fig1_scheme_a())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChallengeSpec {
    /// Challenge 1.
    HardcodedSat(PairingSource),
    /// Challenge 2.
    HardcodedUnsat(PairingSource),
    /// Challenge 3: no type-3 term in this summand (1-based).
    BlockedSummand(usize),
    /// Challenge 4: fewer multiplications.
    Plain(usize),
}

impl ChallengeSpec {
    /// Builds a spec from an id and its optional parameter: the pairing
    /// seed for 1-2 (absent means the demo pairing), the summand for 3
    /// (default 23), `m` for 4 (default 22).
    pub fn from_id(id: u8, param: Option<u64>) -> Result<Self> {
        let source = param.map_or(PairingSource::Demo, PairingSource::Seed);
        match id {
            1 => Ok(ChallengeSpec::HardcodedSat(source)),
            2 => Ok(ChallengeSpec::HardcodedUnsat(source)),
            3 => Ok(ChallengeSpec::BlockedSummand(param.unwrap_or(23) as usize)),
            4 => Ok(ChallengeSpec::Plain(param.unwrap_or(22) as usize)),
            _ => Err(Error::Domain(format!("challenge id {id} outside 1..=4"))),
        }
    }

    pub fn id(&self) -> u8 {
        match self {
            ChallengeSpec::HardcodedSat(_) => 1,
            ChallengeSpec::HardcodedUnsat(_) => 2,
            ChallengeSpec::BlockedSummand(_) => 3,
            ChallengeSpec::Plain(_) => 4,
        }
    }

    /// File stem, e.g. `challenge1-seed7` or `challenge4-m22`.
    pub fn name(&self) -> String {
        match self {
            ChallengeSpec::HardcodedSat(p) | ChallengeSpec::HardcodedUnsat(p) => {
                format!("challenge{}-{p}", self.id())
            }
            ChallengeSpec::BlockedSummand(l) => format!("challenge3-summand{l}"),
            ChallengeSpec::Plain(m) => format!("challenge4-m{m}"),
        }
    }
}

impl FromStr for ChallengeSpec {
    type Err = Error;

    /// `1`, `1:7`, `3:23`, `4:22`.
    fn from_str(s: &str) -> Result<Self> {
        let (id, param) = match s.split_once(':') {
            Some((a, b)) => (a, Some(b)),
            None => (s, None),
        };
        let id: u8 = id
            .trim()
            .parse()
            .map_err(|_| Error::Domain(format!("bad challenge id {id:?}")))?;
        let param = param
            .map(|p| {
                p.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Domain(format!("bad challenge parameter {p:?}")))
            })
            .transpose()?;
        ChallengeSpec::from_id(id, param)
    }
}

pub fn generate_challenge(spec: &ChallengeSpec) -> Result<CnfFormula> {
    match *spec {
        ChallengeSpec::HardcodedSat(src) | ChallengeSpec::HardcodedUnsat(src) => {
            hardcode_pairing(encode(3, 23)?, &src.pairing()?, true)
        }
        ChallengeSpec::BlockedSummand(l) => block_type3(encode(3, 23)?, l),
        ChallengeSpec::Plain(m) => encode(3, m),
    }
}

/// `count` seeded instances of challenge 1 or 2 (seeds `first..`), or the
/// single instance of challenge 3 or 4.
pub fn challenge_suite(id: u8, first: u64, count: usize) -> Result<Vec<ChallengeSpec>> {
    match id {
        1 | 2 => (first..first + count as u64)
            .map(|s| ChallengeSpec::from_id(id, Some(s)))
            .collect(),
        _ => Ok(vec![ChallengeSpec::from_id(id, None)?]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encoder::base_assignment;
    use crate::sls::{solve, SolverConfig};

    #[test]
    fn challenge4_has_594_base_vars() {
        let f = generate_challenge(&"4".parse().unwrap()).unwrap();
        assert_eq!(f.base().len(), 594);
        assert_eq!(f.m(), 22);
    }

    #[test]
    fn challenge3_adds_27_clauses_on_summand_23() {
        let plain = encode(3, 23).unwrap();
        let f = generate_challenge(&ChallengeSpec::BlockedSummand(23)).unwrap();
        assert_eq!(f.total_clauses(), plain.total_clauses() + 27);
        assert_eq!(f.var_count(), plain.var_count());
        let extra = &f.clauses()[plain.clauses().len()..];
        for c in extra {
            assert_eq!(c.len(), 3);
            for l in c {
                assert!(!l.is_positive());
                assert_eq!(f.base().lookup(l.var()).unwrap().summand, 23);
            }
        }
    }

    #[test]
    fn challenge1_embeds_a_pairing_without_streamliners() {
        let plain = encode(3, 23).unwrap();
        let f = generate_challenge(&ChallengeSpec::HardcodedSat(PairingSource::Seed(3))).unwrap();
        let extra = &f.clauses()[plain.clauses().len()..];
        assert_eq!(extra.iter().filter(|c| c.len() == 1).count(), 81);
        assert_eq!(f.var_count(), plain.var_count());
        assert_eq!(f.pairing(), Some(&random_pairing(3, 23, 3).unwrap()));
    }

    #[test]
    fn demo_challenge_has_a_witness() {
        let f = generate_challenge(&ChallengeSpec::HardcodedSat(PairingSource::Demo)).unwrap();
        let a = fig1_scheme_a();
        let witness = f.extend(&base_assignment(&a));
        assert!(f.is_satisfied_by(&witness));
        let cfg = SolverConfig {
            hint: Some(witness),
            ..SolverConfig::default()
        };
        assert_eq!(solve(&f, &cfg).flips, 0);
    }

    #[test]
    fn spec_parsing() {
        assert_eq!(
            "1".parse::<ChallengeSpec>().unwrap(),
            ChallengeSpec::HardcodedSat(PairingSource::Demo)
        );
        assert_eq!(
            "2:9".parse::<ChallengeSpec>().unwrap(),
            ChallengeSpec::HardcodedUnsat(PairingSource::Seed(9))
        );
        assert_eq!(
            "3".parse::<ChallengeSpec>().unwrap(),
            ChallengeSpec::BlockedSummand(23)
        );
        assert_eq!(
            "4".parse::<ChallengeSpec>().unwrap().name(),
            "challenge4-m22"
        );
        assert!("5".parse::<ChallengeSpec>().is_err());
        assert!("x".parse::<ChallengeSpec>().is_err());
        assert_eq!(challenge_suite(2, 0, 10).unwrap().len(), 10);
    }

    #[test]
    fn bad_summand_is_an_error() {
        assert!(generate_challenge(&ChallengeSpec::BlockedSummand(24)).is_err());
        assert!(generate_challenge(&ChallengeSpec::BlockedSummand(0)).is_err());
    }
}
