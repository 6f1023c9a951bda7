//! Exact commutative polynomial arithmetic, monomial orders, reduction and
//! reduced Gröbner bases.

mod groebner;
mod monomial;
mod order;
mod parse;
mod polynomial;
mod variables;

pub use groebner::{
    buchberger, buchberger_with, is_groebner, reduce_fully, reduce_once, reduce_term,
    s_polynomial, GroebnerBasis, PairSelection,
};
pub use monomial::Monomial;
pub use order::MonomialOrder;
pub use parse::{parse_monomial, parse_polynomial};
pub use polynomial::{Coeff, Polynomial};
pub use variables::VariableTable;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("operands live over different variable tables ({left} vs {right} variables)")]
    TableMismatch { left: usize, right: usize },
    #[error("operands use different monomial orders")]
    OrderMismatch,
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("empty variable name")]
    EmptyVariableName,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("unknown monomial order `{0}` (expected lex, deglex or degrevlex)")]
    UnknownOrder(String),
    #[error("{0}")]
    Parse(String),
}
