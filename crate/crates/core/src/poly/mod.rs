//! Exact multivariate polynomials and Gröbner bases.

mod field;
pub mod groebner;
mod ideal;
mod monomial;
mod order;
mod polynomial;

pub use field::{Field, Fp, Rational, ScreeningField};
pub use groebner::{buchberger, is_groebner_basis, normal_form, s_polynomial, GbConfig, GbStats};
pub(crate) use ideal::minimalize as minimalize_monomials;
pub use ideal::{
    eliminate, initial_ideal, minimal_generator_degrees, minimal_generators, Ideal, MonomialIdeal,
};
pub use monomial::{Monomial, MAX_EXPONENT, MAX_VARS};
pub use order::{Layout, TermOrder};
pub use polynomial::{parse_polynomial, PolyDisplay, Polynomial, VariableSet};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("Gröbner computation exceeded its step budget of {budget}")]
    BudgetExhausted { budget: u64 },
    #[error("{requested} variables requested, at most {limit} supported")]
    TooManyVariables { requested: usize, limit: usize },
    #[error("exponent exceeds {MAX_EXPONENT}")]
    ExponentOverflow,
    #[error("duplicate variable name {0:?}")]
    DuplicateVariable(String),
    #[error("ideal is not homogeneous for the requested grading")]
    NonHomogeneous,
    #[error("grading must assign a positive degree to every variable")]
    NonPositiveGrading,
    #[error("generators are not all of the same degree")]
    NotEquigenerated,
    #[error("polynomial syntax: {0}")]
    Syntax(String),
}
