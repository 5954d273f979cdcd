//! Exact belief revision and contraction in the propositional closure of a
//! qualitative algebra.
//!
//! The crate is organised bottom-up:
//!
//! * [`algebra`]: base relations, converse and composition tables, and the
//!   neighborhood-graph distance between base relations.
//! * [`syntax`]: formulas over constraints, the formula parser, normal forms
//!   and the negation-free DNF transformation.
//! * [`solver`]: algebraic closure, scenario enumeration, model sets and the
//!   Allen interval realization check.
//! * [`revision`]: scenario distances, distance-based revision by
//!   branch-and-bound, and contraction through the Harper identity.
//!
//! ```
//! use qarev_core::{algebra::Algebra, revision, syntax};
//!
//! let allen = Algebra::allen();
//! let psi = syntax::parse(allen, "X {b} Y | X {bi} Y").unwrap();
//! let mu = syntax::parse(allen, "X {m} Y").unwrap();
//! let result = revision::revise(allen, &psi, &mu).unwrap();
//! assert_eq!(result.delta, Some(2));
//! ```

pub mod algebra;
mod relation;
pub mod revision;
pub mod solver;
pub mod syntax;

use thiserror::Error;

pub use algebra::{load_algebra, Algebra, AlgebraError, BaseRelation, Relation};
pub use syntax::ParseError;

/// Errors raised by engine operations on well-formed inputs.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("variable `{0}` is not in the variable list")]
    UnknownVariable(String),
    #[error("constraint relates variable `{0}` to itself")]
    SelfConstraint(String),
    #[error("operands are built over different variable lists")]
    VariableMismatch,
    #[error("interval realization is only defined for the Allen algebra")]
    NotAllen,
    #[error("distance to an empty scenario set is undefined")]
    EmptyScenarioSet,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
