use std::fmt::Write as _;

use super::{PolyError, VariableTable};

/// A power product over a fixed variable table, stored as a dense exponent
/// vector. The all-zero vector is the identity `1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: Box<[u32]>,
}

impl Monomial {
    pub fn one(arity: usize) -> Self {
        Self {
            exps: vec![0; arity].into_boxed_slice(),
        }
    }

    pub fn from_exponents(exps: impl Into<Vec<u32>>) -> Self {
        Self {
            exps: exps.into().into_boxed_slice(),
        }
    }

    /// `x_var^power` in a table of `arity` variables.
    pub fn var(arity: usize, var: usize, power: u32) -> Self {
        let mut exps = vec![0; arity];
        exps[var] = power;
        Self::from_exponents(exps)
    }

    pub fn arity(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.exps[var]
    }

    pub fn degree(&self) -> u64 {
        self.exps.iter().map(|&e| u64::from(e)).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Indices of variables with nonzero exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }

    pub(crate) fn check_arity(&self, other: &Monomial) -> Result<(), PolyError> {
        if self.arity() == other.arity() {
            Ok(())
        } else {
            Err(PolyError::TableMismatch {
                left: self.arity(),
                right: other.arity(),
            })
        }
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial, PolyError> {
        self.check_arity(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(other.exps.iter())
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// True when `self` divides `other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.arity(), other.arity());
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `self / divisor`, or `None` when the divisibility test fails.
    pub fn divide(&self, divisor: &Monomial) -> Option<Monomial> {
        if self.arity() != divisor.arity() || !divisor.divides(self) {
            return None;
        }
        Some(Monomial {
            exps: self
                .exps
                .iter()
                .zip(divisor.exps.iter())
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.arity(), other.arity(), "monomials over different tables");
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(other.exps.iter())
                .map(|(&a, &b)| a.max(b))
                .collect(),
        }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(other.exps.iter())
            .all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Canonical rendering: variables in table order joined by `*`, `^` for
    /// powers above one, `1` for the identity.
    pub fn render(&self, table: &VariableTable) -> String {
        let mut out = String::new();
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !out.is_empty() {
                out.push('*');
            }
            out.push_str(table.name(i));
            if e > 1 {
                let _ = write!(out, "^{e}");
            }
        }
        if out.is_empty() {
            out.push('1');
        }
        out
    }
}

impl std::ops::Mul for &Monomial {
    type Output = Monomial;

    fn mul(self, rhs: &Monomial) -> Monomial {
        assert_eq!(self.arity(), rhs.arity(), "monomials over different tables");
        self.mul_unchecked(rhs)
    }
}
