//! Exact q-shift operator calculus over the rationals.
//!
//! This crate builds and machine-verifies the operator identities of the
//! q-Heun family on the exponential grid:
//!
//! - [`laurent::LaurentPoly`] / [`ratfunc::RatFunc`]: exact Laurent-polynomial
//!   and rational-function arithmetic over arbitrary-precision rationals.
//! - [`skewop::SkewOperator`]: the noncommutative algebra of operators
//!   `sum_k C_k(x) T^k` where `T^k f(x) = f(q^k x)`.
//! - [`families`]: the q-Pochhammer basis, the big q-Jacobi operator `Y`
//!   with its eigenvalues and three-term recurrence, and Pastro polynomials.
//! - [`heun`]: constructors for the big, little, Hahn and Takemura q-Heun
//!   operators, the transformations relating them, and executable checks
//!   of their characterizing properties (degree raising, tridiagonality,
//!   bilinear form in `X`, `Y`, finite-grid restriction).
//! - [`algebra`]: exact verification of the q-Hahn algebra relations,
//!   fitting of the Heun-AW structure constants, degeneration cases, and a
//!   staged solver for the Z3-symmetric Askey-Wilson triple.
//! - [`pastro`]: the little-q-Heun pencil `L1 - lambda_n L2` annihilating
//!   Pastro polynomials, and their Laurent-type recurrence.
//! - [`runner`] / [`report`]: seeded verification suites with exact,
//!   machine-readable JSON reports.
//!
//! Everything is computed in exact rational arithmetic; an identity check
//! succeeds only when the residual is identically zero.

pub mod algebra;
pub mod config;
pub mod families;
pub mod heun;
pub mod laurent;
pub mod linsolve;
mod mpoly;
pub mod pastro;
pub mod rat;
pub mod ratfunc;
pub mod report;
pub mod runner;
pub mod skewop;

pub use families::{Params, PolyFamily};
pub use heun::{HeunData, TauSet};
pub use laurent::LaurentPoly;
pub use linsolve::{LinSystem, SolveOutcome};
pub use rat::Rat;
pub use ratfunc::RatFunc;
pub use report::{CheckRecord, Report};
pub use skewop::SkewOperator;

use thiserror::Error;

/// Errors surfaced by the operator calculus and the verification suites.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Scaling or conjugating by zero.
    #[error("scale factor must be nonzero")]
    ZeroScale,
    /// Constructing a rational function with zero denominator.
    #[error("division by the zero polynomial")]
    DivisionByZero,
    /// An operator applied to a polynomial did not return a polynomial.
    #[error("operator application left a nontrivial denominator: {residual}")]
    NonPolynomialResult { residual: String },
    /// Combining operators over different shift bases.
    #[error("shift bases differ: {left} vs {right}")]
    BaseMismatch { left: String, right: String },
    /// Affine transformation with zero multiplier.
    #[error("affine multiplier must be nonzero")]
    ZeroMultiplier,
    /// Pochhammer expansion of a genuine Laurent polynomial.
    #[error("expansion requires a polynomial, found exponent {exponent}")]
    NegativeExponent { exponent: i64 },
    /// Coinciding eigenvalues block the triangular eigenproblem solve.
    #[error("degenerate spectrum: lambda_{m} = lambda_{n}")]
    DegenerateSpectrum { m: usize, n: usize },
    /// An overdetermined coefficient fit had no exact solution.
    #[error("coefficient fit is inconsistent: {context}")]
    FitFailure { context: String },
    /// A q-Pochhammer factor in a hypergeometric term vanishes.
    #[error("singular parameters: {factor} vanishes")]
    SingularParameters { factor: String },
    /// The leading-coefficient equation for the similarity scale has no
    /// rational root.
    #[error("no rational similarity scale: {equation}")]
    NoRationalScale { equation: String },
    /// An operator is outside the q-Heun class.
    #[error("operator is not of q-Heun shape: {reason}")]
    NotHeunShape { reason: String },
    /// A finite-grid restriction would shift weight off the grid.
    #[error("boundary leak at grid point {point}: coefficient {coefficient} is nonzero")]
    BoundaryLeak { point: String, coefficient: String },
    /// The finite-grid matrix disagreed with direct operator application.
    #[error("finite restriction disagrees with operator application on {witness}")]
    FiniteRestrictionMismatch { witness: String },
    /// A change of basis could not be carried out.
    #[error("basis expansion failed: {reason}")]
    ExpansionFailure { reason: String },
    /// The linear system for the structure constants is infeasible.
    #[error("inconsistent fit; infeasible equations: {subsystem}")]
    InconsistentFit { subsystem: String },
    /// The triple solver exceeded its elimination budget.
    #[error("solver exceeded its budget: {stage}")]
    SolverBlowup { stage: String },
    /// A construction needs an exact rational square root of q.
    #[error("q = {q} has no rational square root")]
    NonSquareBase { q: String },
    /// Invalid run configuration.
    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
