//! Search for fast matrix multiplication schemes over GF(2).
//!
//! A scheme for multiplying two `n x n` matrices with `m` multiplications is
//! a list of `m` summands, each a triple of GF(2) coefficient matrices
//! `(alpha, beta, gamma)`. It is valid iff it satisfies the Brent equations.
//! This crate compiles the Brent equations to CNF, solves them with an
//! embedded local search engine (DDFW or probSAT), and drives two search
//! methods on top:
//!
//! * [`search::pairing_search`]: hardcode a random pairing of the type-3
//!   terms, optionally with streamlining constraints, and solve from scratch.
//! * [`search::neighbor`] / [`search::random_walk`]: fix a random subset of
//!   the base variables of a known scheme and solve for the rest.
//!
//! Every scheme that leaves the search layer has been checked against
//! [`scheme::brent_residual`], which evaluates all `n^6` equations directly.

pub mod challenge;
pub mod encoder;
pub mod error;
pub mod scheme;
pub mod search;
pub mod sls;
pub mod streamline;

pub use encoder::{encode, BaseVarMap, CnfFormula, Lit, Model, Role};
pub use error::{Error, Result};
pub use scheme::{Scheme, Summand, TermIndex};
pub use sls::{SolveOutcome, SolveStatus, SolverConfig};
pub use streamline::Pairing;
