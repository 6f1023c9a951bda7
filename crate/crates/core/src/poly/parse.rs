//! Reader for the canonical text rendering (`x2*x3 - x1`, `x3*x6^2`,
//! `1/2*x1 + 3`).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::{Coeff, Monomial, MonomialOrder, PolyError, Polynomial, VariableTable};

/// Parses a product of variables such as `x3*x6^2`, or `1`.
pub fn parse_monomial(text: &str, table: &VariableTable) -> Result<Monomial, PolyError> {
    let (coeff, m) = parse_term(text.trim(), table)?;
    if !coeff.is_one() {
        return Err(PolyError::Parse(format!("`{text}` is not a monic monomial")));
    }
    Ok(m)
}

pub fn parse_polynomial(
    text: &str,
    table: &VariableTable,
    order: MonomialOrder,
) -> Result<Polynomial, PolyError> {
    let mut terms = Vec::new();
    let mut rest = text.trim();
    if rest.is_empty() {
        return Err(PolyError::Parse("empty polynomial".into()));
    }
    let mut sign = Coeff::one();
    if let Some(r) = rest.strip_prefix('-') {
        sign = -sign;
        rest = r.trim_start();
    } else if let Some(r) = rest.strip_prefix('+') {
        rest = r.trim_start();
    }
    loop {
        let end = rest.find(['+', '-']).unwrap_or(rest.len());
        let (term, tail) = rest.split_at(end);
        let (c, m) = parse_term(term.trim(), table)?;
        terms.push((m, c * &sign));
        if tail.is_empty() {
            break;
        }
        sign = if tail.starts_with('-') {
            -Coeff::one()
        } else {
            Coeff::one()
        };
        rest = tail[1..].trim_start();
    }
    Polynomial::from_terms(table.len(), order, terms)
}

fn parse_term(text: &str, table: &VariableTable) -> Result<(Coeff, Monomial), PolyError> {
    if text.is_empty() {
        return Err(PolyError::Parse("empty term".into()));
    }
    let mut coeff = Coeff::one();
    let mut exps = vec![0u32; table.len()];
    for factor in text.split('*') {
        let factor = factor.trim();
        if factor.is_empty() {
            return Err(PolyError::Parse(format!("empty factor in `{text}`")));
        }
        if factor.starts_with(|c: char| c.is_ascii_digit()) && table.index_of(factor).is_none() {
            coeff *= parse_rational(factor)?;
            continue;
        }
        let (name, power) = match factor.split_once('^') {
            Some((n, p)) => (
                n.trim(),
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| PolyError::Parse(format!("bad exponent in `{factor}`")))?,
            ),
            None => (factor, 1),
        };
        let var = table
            .index_of(name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
        exps[var] += power;
    }
    Ok((coeff, Monomial::from_exponents(exps)))
}

fn parse_rational(s: &str) -> Result<Coeff, PolyError> {
    let bad = || PolyError::Parse(format!("bad coefficient `{s}`"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n.trim().parse().map_err(|_| bad())?;
    let d: BigInt = d.trim().parse().map_err(|_| bad())?;
    if d == BigInt::from(0) {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}
