//! Extension-based semantics for abstract argumentation frameworks and
//! their transfer to propositional normal logic programs.
//!
//! The library has two symmetric halves. [`af`] and [`scc`] compute
//! extensions of argumentation frameworks: the classical semantics
//! (grounded, preferred, stable, complete) plus the SCC-recursive family
//! (CF1, CF2, AD1, AD2). [`lp`] models normal logic programs with
//! hypothesis-based derivation and brute-force stable models. The bridge
//! modules connect the two:
//!
//! * [`transfer`] builds an argumentation framework over the rules of a
//!   program and maps extensions back to derived atom sets,
//! * [`repr`] goes the other way, representing a framework as a program
//!   and checking that the round trip preserves extensions,
//! * [`hypo`] builds the framework whose arguments are self-consistent
//!   hypotheses of a program.
//!
//! [`oracle`] holds naive definitional re-implementations and random
//! instance generators used for differential testing.

pub mod af;
pub mod hypo;
pub mod lp;
pub mod oracle;
pub mod repr;
pub mod scc;
pub mod transfer;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("unknown semantics `{0}`")]
    UnknownSemantics(String),
    #[error("instance too large: {size} exceeds the cap of {cap}")]
    CapExceeded { size: usize, cap: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
