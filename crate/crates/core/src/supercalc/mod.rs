//! Supercommutative polynomial and matrix calculus over the rationals.

pub mod divide;
pub mod linalg;
pub mod matrix;
pub mod monomial;
pub mod poly;
pub mod ratfunc;
pub mod rational;
pub mod var;

pub use divide::{divides, EvenDivisor};
pub use matrix::{block_parities, SuperMatrix};
pub use monomial::Monomial;
pub use poly::{PolyParity, SuperPolynomial};
pub use ratfunc::RationalSuperFunction;
pub use rational::Rational;
pub use var::{Block, Parity, Var};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CalcError {
    #[error("variable {var} must be bound to a {expected} polynomial")]
    ParityMismatch { var: String, expected: Parity },
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("denominator contains odd generators")]
    OddDenominator,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("numeric part of the matrix is singular")]
    NotNumericCore,
    #[error("non-numeric part contains even variables; evaluate them first")]
    NonNilpotentRemainder,
}
