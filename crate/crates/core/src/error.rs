//! Error type shared by all planning and simulation routines.

use std::fmt;

/// Failure modes of the planning toolkit.
///
/// `InvalidInput` marks precondition violations the caller can fix by
/// changing an argument; `Infeasible` marks well-formed problems that have
/// no solution under the stated constraints (the distinction drives the
/// CLI exit codes).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A caller-supplied value violates an operation's precondition.
    InvalidInput(String),
    /// The problem is well-posed but has no feasible solution.
    Infeasible(String),
    /// A numeric solver failed to bracket or converge.
    Solver(String),
    /// A non-finite value surfaced where a finite one is required.
    NonFinite(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
            Error::Infeasible(msg) => write!(f, "infeasible: {msg}"),
            Error::Solver(msg) => write!(f, "solver failure: {msg}"),
            Error::NonFinite(msg) => write!(f, "non-finite value: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
