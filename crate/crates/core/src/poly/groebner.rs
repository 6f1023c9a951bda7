//! Reduction modulo a set of polynomials and Buchberger's algorithm.


use num_traits::{One, Zero};

use super::{Coeff, Monomial, MonomialOrder, PolyError, Polynomial};

/// One reduction step: cancels the largest monomial of `f` that is divisible
/// by the leading monomial of some element of `reducers`. Returns `None` when
/// `f` is irreducible.
pub fn reduce_once(f: &Polynomial, reducers: &[Polynomial]) -> Option<Polynomial> {
    for (i, (m, _)) in f.terms().iter().enumerate() {
        if let Some(p) = reducers
            .iter()
            .find(|p| p.leading_monomial().is_some_and(|lm| lm.divides(m)))
        {
            return Some(reduce_term(f, i, p).expect("reducer divides term"));
        }
    }
    None
}

/// Cancels term `index` of `f` using `reducer`. `None` if the leading
/// monomial of `reducer` does not divide that term.
pub fn reduce_term(f: &Polynomial, index: usize, reducer: &Polynomial) -> Option<Polynomial> {
    let (m, c) = f.terms().get(index)?;
    let lm = reducer.leading_monomial()?;
    let u = m.divide(lm)?;
    let factor = -(c / reducer.leading_coeff()?);
    Some(
        f.add_scaled(&Coeff::one(), &reducer.mul_term(&factor, &u))
            .expect("same table and order"),
    )
}

/// Fully reduces every term of `f` by `reducers` (division remainder).
pub fn reduce_fully(f: &Polynomial, reducers: &[Polynomial]) -> Polynomial {
    let mut rest = f.clone();
    let mut remainder: Vec<(Monomial, Coeff)> = Vec::new();
    while let Some((m, c)) = rest.terms().first().cloned() {
        let reducer = reducers
            .iter()
            .find(|p| p.leading_monomial().is_some_and(|lm| lm.divides(&m)));
        match reducer {
            Some(p) => rest = reduce_term(&rest, 0, p).expect("divisible"),
            None => {
                let tail: Vec<_> = rest.terms()[1..].to_vec();
                rest = Polynomial::from_terms(f.arity(), f.order(), tail).expect("same arity");
                remainder.push((m, c));
            }
        }
    }
    // remainder terms were emitted in strictly descending order
    Polynomial::from_terms(f.arity(), f.order(), remainder).expect("same arity")
}

/// Reduces the leading term of `f` until it is irreducible; the tail is
/// left alone.
fn reduce_head(f: &Polynomial, reducers: &[Polynomial]) -> Polynomial {
    let mut f = f.clone();
    while let Some(m) = f.leading_monomial() {
        match reducers
            .iter()
            .find(|p| p.leading_monomial().is_some_and(|lm| lm.divides(m)))
        {
            Some(p) => f = reduce_term(&f, 0, p).expect("divisible"),
            None => break,
        }
    }
    f
}

/// `(lcm / lt(p)) * p - (lcm / lt(q)) * q`.
pub fn s_polynomial(p: &Polynomial, q: &Polynomial) -> Result<Polynomial, PolyError> {
    let (Some(lp), Some(lq)) = (p.leading_monomial(), q.leading_monomial()) else {
        return Ok(Polynomial::zero(p.arity(), p.order()));
    };
    lp.check_arity(lq)?;
    let lcm = lp.lcm(lq);
    let up = lcm.divide(lp).expect("lcm divisible");
    let uq = lcm.divide(lq).expect("lcm divisible");
    let a = p.mul_term(&p.leading_coeff().unwrap().recip(), &up);
    let b = q.mul_term(&q.leading_coeff().unwrap().recip(), &uq);
    a.checked_sub(&b)
}

/// True iff every pairwise S-polynomial of `set` reduces to zero modulo `set`.
pub fn is_groebner(set: &[Polynomial]) -> bool {
    let set: Vec<Polynomial> = set.iter().filter(|p| !p.is_zero()).cloned().collect();
    for i in 0..set.len() {
        for j in i + 1..set.len() {
            let s = s_polynomial(&set[i], &set[j]).expect("same table");
            if !reduce_fully(&s, &set).is_zero() {
                return false;
            }
        }
    }
    true
}

/// How the next critical pair is chosen. The reduced basis does not depend on
/// the choice.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PairSelection {
    /// Smallest lcm of leading monomials first.
    #[default]
    Normal,
    /// Pairs in the order they were created.
    Fifo,
    /// Lowest total degree of the lcm first, ties in creation order.
    Degree,
    /// Largest lcm first; deliberately poor, used to cross-check uniqueness.
    Reverse,
}

/// A reduced Gröbner basis: monic, interreduced, sorted ascending by
/// leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    arity: usize,
    order: MonomialOrder,
    elements: Vec<Polynomial>,
    rules: Option<Vec<(Monomial, Monomial)>>,
}

impl GroebnerBasis {
    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        reduce_fully(&f.with_order(self.order), &self.elements)
    }

    /// Every element has a single total degree.
    pub fn is_homogeneous(&self) -> bool {
        self.elements.iter().all(Polynomial::is_homogeneous)
    }

    /// Every element is `l - r` for monic monomials.
    pub fn is_pure_binomial(&self) -> bool {
        self.rules.is_some()
    }

    /// Rewrite rules `l -> r`, present when the basis is pure binomial.
    pub fn rewrite_rules(&self) -> Option<&[(Monomial, Monomial)]> {
        self.rules.as_deref()
    }

    /// Normal form of a monomial when the basis is pure binomial; such a
    /// normal form is again a monomial.
    pub fn normal_form_monomial(&self, m: &Monomial) -> Option<Monomial> {
        let rules = self.rules.as_ref()?;
        let mut cur = m.clone();
        'outer: loop {
            for (l, r) in rules {
                if let Some(u) = cur.divide(l) {
                    cur = &u * r;
                    continue 'outer;
                }
            }
            return Some(cur);
        }
    }

    fn from_reduced(arity: usize, order: MonomialOrder, mut elements: Vec<Polynomial>) -> Self {
        elements.sort_by(|a, b| {
            order.compare(a.leading_monomial().unwrap(), b.leading_monomial().unwrap())
        });
        let rules = elements
            .iter()
            .map(|p| p.as_pure_binomial().map(|(l, r)| (l.clone(), r.clone())))
            .collect();
        Self {
            arity,
            order,
            elements,
            rules,
        }
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens` under `order`,
/// using the normal pair-selection strategy.
pub fn buchberger(
    gens: &[Polynomial],
    arity: usize,
    order: MonomialOrder,
) -> Result<GroebnerBasis, PolyError> {
    buchberger_with(gens, arity, order, PairSelection::Normal)
}

pub fn buchberger_with(
    gens: &[Polynomial],
    arity: usize,
    order: MonomialOrder,
    selection: PairSelection,
) -> Result<GroebnerBasis, PolyError> {
    let mut basis: Vec<Polynomial> = Vec::new();
    for g in gens {
        if g.arity() != arity {
            return Err(PolyError::TableMismatch {
                left: arity,
                right: g.arity(),
            });
        }
        let g = g.with_order(order);
        if !g.is_zero() {
            basis.push(g.monic());
        }
    }

    // Gebauer–Möller: `active` marks the current basis, `pairs` the
    // critical pairs still to be treated, each with its lcm.
    let mut polys: Vec<Polynomial> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    for g in basis {
        let g = reduce_head(&g, &active_set(&polys, &active));
        if !g.is_zero() {
            update(&mut polys, &mut active, &mut pairs, g.monic());
        }
    }

    while !pairs.is_empty() {
        let pick = select_pair(&pairs, order, selection);
        let pair = pairs.remove(pick);
        let s = s_polynomial(&polys[pair.i], &polys[pair.j])?;
        let h = reduce_head(&s, &active_set(&polys, &active));
        if !h.is_zero() {
            update(&mut polys, &mut active, &mut pairs, h.monic());
        }
    }

    Ok(GroebnerBasis::from_reduced(
        arity,
        order,
        interreduce(active_set(&polys, &active)),
    ))
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

fn active_set(polys: &[Polynomial], active: &[bool]) -> Vec<Polynomial> {
    polys
        .iter()
        .zip(active)
        .filter(|(_, &a)| a)
        .map(|(p, _)| p.clone())
        .collect()
}

/// Adds `h` to the basis, discarding pairs that the product and chain
/// criteria show to be unnecessary and basis elements made redundant by `h`.
fn update(polys: &mut Vec<Polynomial>, active: &mut Vec<bool>, pairs: &mut Vec<Pair>, h: Polynomial) {
    let n = polys.len();
    let lh = h.leading_monomial().unwrap().clone();
    let lm = |k: usize| polys[k].leading_monomial().unwrap();

    let mut candidates: Vec<(usize, Monomial, bool)> = (0..n)
        .filter(|&k| active[k])
        .map(|k| (k, lm(k).lcm(&lh), lm(k).is_coprime(&lh)))
        .collect();
    let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
    while let Some((k, l, coprime)) = candidates.pop() {
        let dominated = |others: &[(usize, Monomial, bool)]| others.iter().any(|(_, o, _)| o.divides(&l));
        if coprime || (!dominated(&candidates) && !dominated(&kept)) {
            kept.push((k, l, coprime));
        }
    }

    pairs.retain(|p| {
        !lh.divides(&p.lcm) || lm(p.i).lcm(&lh) == p.lcm || lm(p.j).lcm(&lh) == p.lcm
    });
    let mut fresh: Vec<Pair> = kept
        .into_iter()
        .filter(|(_, _, coprime)| !coprime)
        .map(|(k, lcm, _)| Pair { i: k, j: n, lcm })
        .collect();
    fresh.sort_by_key(|p| p.i);
    pairs.extend(fresh);

    for (k, live) in active.iter_mut().enumerate() {
        if *live && lh.divides(polys[k].leading_monomial().unwrap()) {
            *live = false;
        }
    }
    polys.push(h);
    active.push(true);
}

fn select_pair(pairs: &[Pair], order: MonomialOrder, selection: PairSelection) -> usize {
    match selection {
        PairSelection::Fifo => 0,
        PairSelection::Degree => {
            let mut best = 0;
            for (idx, pair) in pairs.iter().enumerate().skip(1) {
                if pair.lcm.degree() < pairs[best].lcm.degree() {
                    best = idx;
                }
            }
            best
        }
        PairSelection::Normal | PairSelection::Reverse => {
            let mut best = 0;
            for (idx, pair) in pairs.iter().enumerate().skip(1) {
                let ord = order.compare(&pair.lcm, &pairs[best].lcm);
                let better = match selection {
                    PairSelection::Normal => ord.is_lt(),
                    _ => ord.is_gt(),
                };
                if better {
                    best = idx;
                }
            }
            best
        }
    }
}

/// Minimalises and interreduces a Gröbner basis.
fn interreduce(basis: Vec<Polynomial>) -> Vec<Polynomial> {
    let mut minimal: Vec<Polynomial> = Vec::new();
    for (i, p) in basis.iter().enumerate() {
        let lm = p.leading_monomial().unwrap();
        let redundant = basis.iter().enumerate().any(|(j, q)| {
            let lq = q.leading_monomial().unwrap();
            j != i && lq.divides(lm) && (lq != lm || j < i)
        });
        if !redundant {
            minimal.push(p.clone());
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Polynomial> = minimal
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, q)| q.clone())
            .collect();
        let r = reduce_fully(&minimal[i], &others).monic();
        debug_assert!(!r.is_zero() && r.leading_coeff().is_some_and(|c| !c.is_zero()));
        reduced.push(r);
    }
    reduced
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, VariableTable};

    fn motors_table() -> VariableTable {
        VariableTable::new((1..=8).map(|i| format!("x{i}"))).unwrap()
    }

    fn polys(table: &VariableTable, order: MonomialOrder, src: &[&str]) -> Vec<Polynomial> {
        src.iter()
            .map(|s| parse_polynomial(s, table, order).unwrap())
            .collect()
    }

    const MOTORS: [&str; 8] = [
        "x1 - x2*x3",
        "x2 - x7",
        "x3*x6 - x4",
        "x4 - x5",
        "x7 - x6",
        "x5 - x3*x8",
        "x3*x8 - x1",
        "x8 - x7",
    ];

    fn motors_basis() -> (VariableTable, GroebnerBasis) {
        let t = motors_table();
        let p = polys(&t, MonomialOrder::DegLex, &MOTORS);
        let g = buchberger(&p, t.len(), MonomialOrder::DegLex).unwrap();
        (t, g)
    }

    #[test]
    fn motors_basis_is_exact() {
        let (t, g) = motors_basis();
        let rendered: Vec<String> = g.elements().iter().map(|p| p.render(&t)).collect();
        assert_eq!(
            rendered,
            ["x4 - x1", "x5 - x1", "x6 - x2", "x7 - x2", "x8 - x2", "x2*x3 - x1"]
        );
        assert!(is_groebner(g.elements()));
        assert!(!is_groebner(&polys(&t, MonomialOrder::DegLex, &MOTORS)));
    }

    #[test]
    fn reduce_once_examples() {
        let t = motors_table();
        let ord = MonomialOrder::DegLex;
        let t3 = polys(&t, ord, &["x3*x6 - x4"]);
        let f = parse_polynomial("x3*x6^2", &t, ord).unwrap();
        assert_eq!(reduce_once(&f, &t3).unwrap().render(&t), "x4*x6");
        let x1 = parse_polynomial("x1", &t, ord).unwrap();
        assert_eq!(reduce_once(&x1, &t3), None);

        let (_, g) = motors_basis();
        let x6 = parse_polynomial("x6", &t, ord).unwrap();
        assert_eq!(reduce_once(&x6, g.elements()).unwrap().render(&t), "x2");
    }

    #[test]
    fn normal_form_examples() {
        let (t, g) = motors_basis();
        let ord = MonomialOrder::DegLex;
        let nf = |s: &str| g.normal_form(&parse_polynomial(s, &t, ord).unwrap()).render(&t);
        assert_eq!(nf("x5"), "x1");
        assert_eq!(nf("x3*x6^2"), "x1*x2");
        assert_eq!(nf("x6"), "x2");
        assert!(g.normal_form(&Polynomial::zero(8, ord)).is_zero());
    }

    #[test]
    fn s_polynomial_examples() {
        // table listed smallest first, so x1 is the largest variable here
        let t = VariableTable::new(["x3", "x2", "x1"]).unwrap();
        let ord = MonomialOrder::DegLex;
        let p = parse_polynomial("x1 - x2", &t, ord).unwrap();
        let q = parse_polynomial("x2 - x3", &t, ord).unwrap();
        let s = s_polynomial(&p, &q).unwrap();
        // x2*(x1 - x2) - x1*(x2 - x3)
        assert_eq!(s.render(&t), "x3*x1 - x2^2");
        assert!(s_polynomial(&p, &p).unwrap().is_zero());

        let t = motors_table();
        let p = parse_polynomial("x3*x6 - x4", &t, ord).unwrap();
        let q = parse_polynomial("x3*x8 - x1", &t, ord).unwrap();
        assert_eq!(s_polynomial(&p, &q).unwrap().render(&t), "-x4*x8 + x1*x6");
    }

    #[test]
    fn small_chain_basis() {
        let t = VariableTable::new(["x3", "x2", "x1"]).unwrap();
        let ord = MonomialOrder::DegLex;
        let g = buchberger(&polys(&t, ord, &["x1 - x2", "x2 - x3"]), 3, ord).unwrap();
        let r: Vec<String> = g.elements().iter().map(|p| p.render(&t)).collect();
        assert_eq!(r, ["x2 - x3", "x1 - x3"]);
    }

    #[test]
    fn empty_and_zero_inputs() {
        let g = buchberger(&[], 3, MonomialOrder::Lex).unwrap();
        assert!(g.is_empty());
        let t = VariableTable::new(["a", "b", "c"]).unwrap();
        let f = parse_polynomial("a*b - c", &t, MonomialOrder::Lex).unwrap();
        assert_eq!(g.normal_form(&f), f);
        let g = buchberger(&[Polynomial::zero(3, MonomialOrder::Lex)], 3, MonomialOrder::Lex)
            .unwrap();
        assert!(g.is_empty());
    }

    #[test]
    fn single_binomial_is_groebner() {
        let t = motors_table();
        assert!(is_groebner(&polys(&t, MonomialOrder::DegLex, &["x3*x6 - x4"])));
    }

    #[test]
    fn strategies_agree_on_motors() {
        let t = motors_table();
        for ord in MonomialOrder::ALL {
            let p = polys(&t, ord, &MOTORS);
            let a = buchberger_with(&p, 8, ord, PairSelection::Normal).unwrap();
            let b = buchberger_with(&p, 8, ord, PairSelection::Fifo).unwrap();
            let c = buchberger_with(&p, 8, ord, PairSelection::Reverse).unwrap();
            let d = buchberger_with(&p, 8, ord, PairSelection::Degree).unwrap();
            assert_eq!(a, b);
            assert_eq!(a, c);
            assert_eq!(a, d);
        }
    }

    #[test]
    fn general_coefficients() {
        let t = VariableTable::new(["y", "x"]).unwrap();
        let ord = MonomialOrder::DegRevLex;
        // circle and line: x^2 + y^2 - 1, x - y
        let g = buchberger(&polys(&t, ord, &["x^2 + y^2 - 1", "x - y"]), 2, ord).unwrap();
        let r: Vec<String> = g.elements().iter().map(|p| p.render(&t)).collect();
        assert_eq!(r, ["x - y", "y^2 - 1/2"]);
        assert!(!g.is_pure_binomial());
        assert!(is_groebner(g.elements()));
    }

    #[test]
    fn monomial_fast_path_matches_polynomial_normal_form() {
        let (t, g) = motors_basis();
        let m = crate::poly::parse_monomial("x3^2*x6^2*x8", &t).unwrap();
        let via_poly = g.normal_form(&Polynomial::from_monomial(m.clone(), g.order()));
        let via_rules = g.normal_form_monomial(&m).unwrap();
        assert_eq!(via_poly, Polynomial::from_monomial(via_rules, g.order()));
    }
}
