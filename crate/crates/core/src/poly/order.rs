use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use super::{Monomial, PolyError};

/// Monomial orders. Variable index 0 is the smallest variable.
///
/// * `Lex` compares exponents starting from the largest variable; the
///   larger exponent wins.
/// * `DegLex` compares total degree, then falls back to `Lex`.
/// * `DegRevLex` compares total degree, then looks at the smallest variable
///   where the exponents differ; the smaller exponent wins.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    #[default]
    DegLex,
    DegRevLex,
}

impl MonomialOrder {
    pub const ALL: [MonomialOrder; 3] = [Self::Lex, Self::DegLex, Self::DegRevLex];

    /// Compares two monomials of equal arity.
    pub fn compare(self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.arity(), b.arity());
        match self {
            Self::Lex => lex(a, b),
            Self::DegLex => a.degree().cmp(&b.degree()).then_with(|| lex(a, b)),
            Self::DegRevLex => a.degree().cmp(&b.degree()).then_with(|| revlex(a, b)),
        }
    }

    pub fn try_compare(self, a: &Monomial, b: &Monomial) -> Result<Ordering, PolyError> {
        a.check_arity(b)?;
        Ok(self.compare(a, b))
    }

    /// Whether a larger total degree always means a larger monomial.
    pub fn is_degree_compatible(self) -> bool {
        !matches!(self, Self::Lex)
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Lex => "lex",
            Self::DegLex => "deglex",
            Self::DegRevLex => "degrevlex",
        }
    }
}

fn lex(a: &Monomial, b: &Monomial) -> Ordering {
    for (x, y) in a.exponents().iter().zip(b.exponents()).rev() {
        match x.cmp(y) {
            Ordering::Equal => continue,
            ord => return ord,
        }
    }
    Ordering::Equal
}

fn revlex(a: &Monomial, b: &Monomial) -> Ordering {
    for (x, y) in a.exponents().iter().zip(b.exponents()) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            ord => return ord.reverse(),
        }
    }
    Ordering::Equal
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MonomialOrder {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "lex" => Ok(Self::Lex),
            "deglex" | "grlex" => Ok(Self::DegLex),
            "degrevlex" | "grevlex" | "tdeg" => Ok(Self::DegRevLex),
            other => Err(PolyError::UnknownOrder(other.to_string())),
        }
    }
}
