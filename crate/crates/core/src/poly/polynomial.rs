use std::cmp::Ordering;
use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Monomial, MonomialOrder, PolyError, VariableTable};

pub type Coeff = BigRational;

/// A polynomial with exact rational coefficients. Terms are kept sorted
/// descending under `order` and never carry a zero coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    arity: usize,
    order: MonomialOrder,
    terms: Vec<(Monomial, Coeff)>,
}

impl Polynomial {
    pub fn zero(arity: usize, order: MonomialOrder) -> Self {
        Self {
            arity,
            order,
            terms: Vec::new(),
        }
    }

    pub fn from_monomial(m: Monomial, order: MonomialOrder) -> Self {
        Self {
            arity: m.arity(),
            order,
            terms: vec![(m, Coeff::one())],
        }
    }

    /// Collects like terms, drops zeros and sorts.
    pub fn from_terms<I>(arity: usize, order: MonomialOrder, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (Monomial, Coeff)>,
    {
        let mut raw: Vec<(Monomial, Coeff)> = Vec::new();
        for (m, c) in terms {
            if m.arity() != arity {
                return Err(PolyError::TableMismatch {
                    left: arity,
                    right: m.arity(),
                });
            }
            raw.push((m, c));
        }
        raw.sort_by(|a, b| order.compare(&b.0, &a.0));
        let mut terms: Vec<(Monomial, Coeff)> = Vec::with_capacity(raw.len());
        for (m, c) in raw {
            match terms.last_mut() {
                Some((last, acc)) if *last == m => *acc += c,
                _ => terms.push((m, c)),
            }
        }
        terms.retain(|(_, c)| !c.is_zero());
        Ok(Self {
            arity,
            order,
            terms,
        })
    }

    /// `l - r`, the shape of every transition polynomial.
    pub fn binomial(l: Monomial, r: Monomial, order: MonomialOrder) -> Result<Self, PolyError> {
        let arity = l.arity();
        Self::from_terms(arity, order, [(l, Coeff::one()), (r, -Coeff::one())])
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn terms(&self) -> &[(Monomial, Coeff)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coeff(&self) -> Option<&Coeff> {
        self.terms.first().map(|(_, c)| c)
    }

    /// The same polynomial re-sorted under another order.
    pub fn with_order(&self, order: MonomialOrder) -> Self {
        if order == self.order {
            return self.clone();
        }
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| order.compare(&b.0, &a.0));
        Self {
            arity: self.arity,
            order,
            terms,
        }
    }

    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => {
                let inv = lc.recip();
                self.scale(&inv)
            }
        }
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        if c.is_zero() {
            return Self::zero(self.arity, self.order);
        }
        Self {
            arity: self.arity,
            order: self.order,
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k * c))
                .collect(),
        }
    }

    /// `c * u * self`.
    pub fn mul_term(&self, c: &Coeff, u: &Monomial) -> Self {
        if c.is_zero() {
            return Self::zero(self.arity, self.order);
        }
        // multiplication by a monomial preserves the term order
        Self {
            arity: self.arity,
            order: self.order,
            terms: self.terms.iter().map(|(m, k)| (m * u, k * c)).collect(),
        }
    }

    fn check(&self, other: &Self) -> Result<(), PolyError> {
        if self.arity != other.arity {
            return Err(PolyError::TableMismatch {
                left: self.arity,
                right: other.arity,
            });
        }
        if self.order != other.order {
            return Err(PolyError::OrderMismatch);
        }
        Ok(())
    }

    /// `self + c * other`, merging the two sorted term lists.
    pub fn add_scaled(&self, c: &Coeff, other: &Self) -> Result<Self, PolyError> {
        self.check(other)?;
        Ok(self.merge(c, other))
    }

    fn merge(&self, c: &Coeff, other: &Self) -> Self {
        let order = self.order;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other.terms.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some((m, k))) => {
                    out.push((m.clone(), k * c));
                    b.next();
                }
                (Some((ma, ka)), Some((mb, kb))) => match order.compare(ma, mb) {
                    Ordering::Greater => out.push(a.next().unwrap().clone()),
                    Ordering::Less => {
                        out.push((mb.clone(), kb * c));
                        b.next();
                    }
                    Ordering::Equal => {
                        let sum = ka + kb * c;
                        if !sum.is_zero() {
                            out.push((ma.clone(), sum));
                        }
                        a.next();
                        b.next();
                    }
                },
            }
        }
        Self {
            arity: self.arity,
            order,
            terms: out,
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.add_scaled(&Coeff::one(), other)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.add_scaled(&-Coeff::one(), other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check(other)?;
        let mut acc = Self::zero(self.arity, self.order);
        for (m, c) in &other.terms {
            acc = acc.merge(&Coeff::one(), &self.mul_term(c, m));
        }
        Ok(acc)
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Every term has the same total degree.
    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.iter().map(|(m, _)| m.degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// `Some((l, r))` when the polynomial is `l - r` for two distinct monic
    /// monomials with `l` leading.
    pub fn as_pure_binomial(&self) -> Option<(&Monomial, &Monomial)> {
        match self.terms.as_slice() {
            [(l, a), (r, b)] if a.is_one() && (-b).is_one() => Some((l, r)),
            _ => None,
        }
    }

    /// Canonical text: terms descending, e.g. `x2*x3 - x1`.
    pub fn render(&self, table: &VariableTable) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let abs = c.abs();
            if m.is_one() {
                let _ = write!(out, "{abs}");
            } else {
                if !abs.is_one() {
                    let _ = write!(out, "{abs}*");
                }
                out.push_str(&m.render(table));
            }
        }
        out
    }
}
