//! Markings as monomials, transitions as binomials, and the Gröbner-basis
//! reachability decision.

use std::fmt;
use std::sync::OnceLock;

use crate::net::{ColouredMarking, ColouredPetriNet, FiringRule, Marking, PetriNet};
use crate::poly::{
    buchberger, GroebnerBasis, Monomial, MonomialOrder, PolyError, Polynomial, VariableTable,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BridgeError {
    #[error("place `{0}` has no variable in the table")]
    UnknownPlace(String),
    #[error("variable sequence must list each of the {expected} net variables exactly once: {detail}")]
    BadSequence { expected: usize, detail: String },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A net whose markings and transitions have polynomial counterparts. The
/// natural variable sequence is the one the net declares.
pub trait Algebraic: FiringRule {
    fn variable_names(&self) -> Vec<String>;
    fn marking_exponents(&self, m: &Self::Marking) -> Vec<u32>;
    fn marking_from_exponents(&self, exps: &[u32]) -> Self::Marking;
    /// Input and output exponent vectors of transition `t`.
    fn transition_sides(&self, t: usize) -> (Vec<u32>, Vec<u32>);
}

impl Algebraic for PetriNet {
    fn variable_names(&self) -> Vec<String> {
        self.places().to_vec()
    }

    fn marking_exponents(&self, m: &Marking) -> Vec<u32> {
        m.0.clone()
    }

    fn marking_from_exponents(&self, exps: &[u32]) -> Marking {
        Marking(exps.to_vec())
    }

    fn transition_sides(&self, t: usize) -> (Vec<u32>, Vec<u32>) {
        let tr = &self.transitions()[t];
        let dense = |ws: &[(usize, u32)]| {
            let mut v = vec![0; self.places().len()];
            for &(p, w) in ws {
                v[p] = w;
            }
            v
        };
        (dense(&tr.inputs), dense(&tr.outputs))
    }
}

impl Algebraic for ColouredPetriNet {
    fn variable_names(&self) -> Vec<String> {
        self.pairs()
            .into_iter()
            .map(|(p, c)| self.variable_name(p, c))
            .collect()
    }

    fn marking_exponents(&self, m: &ColouredMarking) -> Vec<u32> {
        self.pairs()
            .into_iter()
            .map(|(p, c)| self.count(m, p, c))
            .collect()
    }

    fn marking_from_exponents(&self, exps: &[u32]) -> ColouredMarking {
        let nc = self.colours().len();
        let mut m = self.empty_marking();
        for (&(p, c), &e) in self.pairs().iter().zip(exps) {
            m.0[p * nc + c] = e;
        }
        m
    }

    fn transition_sides(&self, t: usize) -> (Vec<u32>, Vec<u32>) {
        let pairs = self.pairs();
        let tr = &self.transitions()[t];
        let dense = |ws: &[(usize, crate::net::ColourBag)]| {
            pairs
                .iter()
                .map(|&(p, c)| {
                    ws.iter()
                        .find(|(q, _)| *q == p)
                        .map_or(0, |(_, bag)| bag.0[c])
                })
                .collect()
        };
        (dense(&tr.inputs), dense(&tr.outputs))
    }
}

/// `pol(M)` for a plain marking over an explicit table.
pub fn marking_to_monomial(
    net: &PetriNet,
    m: &Marking,
    table: &VariableTable,
) -> Result<Monomial, BridgeError> {
    let mut exps = vec![0; table.len()];
    for (p, &n) in m.0.iter().enumerate() {
        if n == 0 {
            continue;
        }
        let name = &net.places()[p];
        let v = table
            .index_of(name)
            .ok_or_else(|| BridgeError::UnknownPlace(name.clone()))?;
        exps[v] = n;
    }
    Ok(Monomial::from_exponents(exps))
}

/// Inverse of [`marking_to_monomial`].
pub fn monomial_to_marking(
    net: &PetriNet,
    mono: &Monomial,
    table: &VariableTable,
) -> Result<Marking, BridgeError> {
    let mut m = Marking::empty(net.places().len());
    for v in mono.support() {
        let p = net
            .place_index(table.name(v))
            .ok_or_else(|| BridgeError::UnknownPlace(table.name(v).to_string()))?;
        m.0[p] = mono.exponent(v);
    }
    Ok(m)
}

/// `pol(t)`: input monomial minus output monomial.
pub fn transition_polynomial(
    net: &PetriNet,
    t: usize,
    table: &VariableTable,
    order: MonomialOrder,
) -> Result<Polynomial, BridgeError> {
    let tr = &net.transitions()[t];
    let side = |ws: &[(usize, u32)]| {
        let mut exps = vec![0; table.len()];
        for &(p, w) in ws {
            let name = &net.places()[p];
            let v = table
                .index_of(name)
                .ok_or_else(|| BridgeError::UnknownPlace(name.clone()))?;
            exps[v] = w;
        }
        Ok::<_, BridgeError>(Monomial::from_exponents(exps))
    };
    Ok(Polynomial::binomial(side(&tr.inputs)?, side(&tr.outputs)?, order)?)
}

/// The ideal generated by the transition binomials of a net, with a lazily
/// computed reduced Gröbner basis.
#[derive(Debug)]
pub struct NetIdeal {
    table: VariableTable,
    /// table index of each natural variable
    placement: Vec<usize>,
    generators: Vec<Polynomial>,
    order: MonomialOrder,
    basis: OnceLock<GroebnerBasis>,
}

impl NetIdeal {
    /// Uses the net's own variable sequence, first variable smallest.
    pub fn build<N: Algebraic>(net: &N, order: MonomialOrder) -> Self {
        let names = net.variable_names();
        Self::assemble(net, order, names.clone(), (0..names.len()).collect())
    }

    /// `sequence` lists every net variable once, smallest first.
    pub fn with_sequence<N: Algebraic>(
        net: &N,
        order: MonomialOrder,
        sequence: &[String],
    ) -> Result<Self, BridgeError> {
        let names = net.variable_names();
        let bad = |detail: String| BridgeError::BadSequence {
            expected: names.len(),
            detail,
        };
        if sequence.len() != names.len() {
            return Err(bad(format!("got {} names", sequence.len())));
        }
        let table = VariableTable::new(sequence.iter().cloned()).map_err(|e| bad(e.to_string()))?;
        let placement = names
            .iter()
            .map(|n| {
                table
                    .index_of(n)
                    .ok_or_else(|| bad(format!("`{n}` is missing")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::assemble(net, order, sequence.to_vec(), placement))
    }

    fn assemble<N: Algebraic>(
        net: &N,
        order: MonomialOrder,
        sequence: Vec<String>,
        placement: Vec<usize>,
    ) -> Self {
        let table = VariableTable::new(sequence).expect("net variables are distinct");
        let mut ideal = Self {
            table,
            placement,
            generators: Vec::new(),
            order,
            basis: OnceLock::new(),
        };
        ideal.generators = (0..net.transition_count())
            .map(|t| {
                let (l, r) = net.transition_sides(t);
                Polynomial::binomial(ideal.place(&l), ideal.place(&r), order)
                    .expect("same arity")
            })
            .collect();
        ideal
    }

    fn place(&self, natural: &[u32]) -> Monomial {
        let mut exps = vec![0; self.table.len()];
        for (i, &e) in natural.iter().enumerate() {
            exps[self.placement[i]] = e;
        }
        Monomial::from_exponents(exps)
    }

    /// The same ideal and variable sequence under another order.
    pub fn with_order(&self, order: MonomialOrder) -> Self {
        Self {
            table: self.table.clone(),
            placement: self.placement.clone(),
            generators: self.generators.iter().map(|g| g.with_order(order)).collect(),
            order,
            basis: OnceLock::new(),
        }
    }

    pub fn table(&self) -> &VariableTable {
        &self.table
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    /// One binomial per transition, in transition order.
    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// The reduced Gröbner basis; computed once, on first use.
    pub fn basis(&self) -> &GroebnerBasis {
        self.basis.get_or_init(|| {
            let g = buchberger(&self.generators, self.table.len(), self.order)
                .expect("generators share the table");
            assert!(
                g.is_pure_binomial(),
                "basis of a net ideal must consist of monomial differences"
            );
            g
        })
    }

    pub fn monomial<N: Algebraic>(&self, net: &N, m: &N::Marking) -> Monomial {
        self.place(&net.marking_exponents(m))
    }

    pub fn marking<N: Algebraic>(&self, net: &N, mono: &Monomial) -> N::Marking {
        let natural: Vec<u32> = self.placement.iter().map(|&v| mono.exponent(v)).collect();
        net.marking_from_exponents(&natural)
    }

    /// Normal form of a monomial. For net ideals this is again a monomial.
    pub fn normal_form(&self, m: &Monomial) -> Monomial {
        self.basis()
            .normal_form_monomial(m)
            .expect("net ideal bases are pure binomial")
    }

    pub fn render(&self, m: &Monomial) -> String {
        m.render(&self.table)
    }

    pub fn decide(
        &self,
        initial: &Monomial,
        target: &Monomial,
        reversibility: ReversibilityStatus,
    ) -> ReachabilityVerdict {
        decide_reachable(self, initial, target, reversibility)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReversibilityStatus {
    Verified,
    NotVerified,
    Refuted,
}

impl fmt::Display for ReversibilityStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Verified => "verified",
            Self::NotVerified => "not verified",
            Self::Refuted => "refuted",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Conclusion {
    Reachable,
    Unreachable,
    EquivalentButUnconfirmed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReachabilityVerdict {
    pub equivalent: bool,
    pub reversibility: ReversibilityStatus,
    pub conclusion: Conclusion,
    pub initial_normal_form: Monomial,
    pub target_normal_form: Monomial,
    pub note: String,
}

/// Compares normal forms. Equivalence alone only proves reachability when
/// the net is reversible; inequivalence always proves unreachability.
pub fn decide_reachable(
    ideal: &NetIdeal,
    initial: &Monomial,
    target: &Monomial,
    reversibility: ReversibilityStatus,
) -> ReachabilityVerdict {
    let nf0 = ideal.normal_form(initial);
    let nf = ideal.normal_form(target);
    let equivalent = nf0 == nf;
    let (conclusion, note) = match (equivalent, reversibility) {
        (false, _) => (
            Conclusion::Unreachable,
            format!(
                "normal form {} differs from {}",
                ideal.render(&nf),
                ideal.render(&nf0)
            ),
        ),
        (true, ReversibilityStatus::Verified) => (
            Conclusion::Reachable,
            format!("normal form {} equals that of the initial marking", ideal.render(&nf)),
        ),
        (true, status) => (
            Conclusion::EquivalentButUnconfirmed,
            format!(
                "normal form {} equals that of the initial marking, but reversibility is {status}; \
                 equivalence does not imply reachability without it",
                ideal.render(&nf)
            ),
        ),
    };
    ReachabilityVerdict {
        equivalent,
        reversibility,
        conclusion,
        initial_normal_form: nf0,
        target_normal_form: nf,
        note,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::net::{explore, ExploreLimits, TransitionSpec};
    use crate::poly::parse_monomial;
    use crate::testnets::{compass, compass_initial, motors, COMPASS};

    #[test]
    fn marking_monomial_examples() {
        let n = motors();
        let ideal = NetIdeal::build(&n, MonomialOrder::DegLex);
        let t = ideal.table();
        let m = n.marking(&[("x1", 1)]).unwrap();
        assert_eq!(marking_to_monomial(&n, &m, t).unwrap().render(t), "x1");
        let m = n.marking(&[("x3", 1), ("x6", 2)]).unwrap();
        let mono = marking_to_monomial(&n, &m, t).unwrap();
        assert_eq!(mono.render(t), "x3*x6^2");
        assert_eq!(monomial_to_marking(&n, &mono, t).unwrap(), m);
        assert_eq!(ideal.monomial(&n, &m), mono);
        assert_eq!(ideal.marking(&n, &mono), m);

        let short = VariableTable::new(["x1"]).unwrap();
        assert!(matches!(
            marking_to_monomial(&n, &m, &short),
            Err(BridgeError::UnknownPlace(_))
        ));
    }

    #[test]
    fn transition_polynomial_examples() {
        let n = motors();
        let ideal = NetIdeal::build(&n, MonomialOrder::DegLex);
        let t = ideal.table();
        let render = |i| {
            transition_polynomial(&n, i, t, MonomialOrder::DegLex)
                .unwrap()
                .render(t)
        };
        assert_eq!(render(2), "x3*x6 - x4");
        // x1 - x2*x3, terms listed largest first
        assert_eq!(render(0), "-x2*x3 + x1");

        let sink = PetriNet::new(
            vec!["a".into()],
            vec![TransitionSpec::new("drop", &[("a", 2)], &[])],
        )
        .unwrap();
        let ideal = NetIdeal::build(&sink, MonomialOrder::DegLex);
        assert_eq!(ideal.generators()[0].render(ideal.table()), "a^2 - 1");
    }

    #[test]
    fn motors_ideal() {
        let n = motors();
        let ideal = NetIdeal::build(&n, MonomialOrder::DegLex);
        assert_eq!(ideal.generators().len(), 8);
        assert_eq!(ideal.basis().len(), 6);
    }

    #[test]
    fn compass_generators_match_listing() {
        let n = compass();
        let ideal = NetIdeal::build(&n, MonomialOrder::DegRevLex);
        assert_eq!(ideal.generators().len(), 25);
        assert_eq!(ideal.table().len(), 27);
        for (g, src) in ideal.generators().iter().zip(COMPASS) {
            let (l, r) = src.split_once(" - ").unwrap();
            let l = parse_monomial(l, ideal.table()).unwrap();
            let r = parse_monomial(r, ideal.table()).unwrap();
            let expected = Polynomial::binomial(l, r, MonomialOrder::DegRevLex).unwrap();
            assert_eq!(g, &expected, "{src}");
        }
        let m0 = ideal.monomial(&n, &compass_initial(&n));
        assert_eq!(
            parse_monomial("x1*x18*x19*y18*y19", ideal.table()).unwrap(),
            m0
        );
    }

    #[test]
    fn empty_net_ideal() {
        let n = PetriNet::new(vec!["a".into(), "b".into()], vec![]).unwrap();
        let ideal = NetIdeal::build(&n, MonomialOrder::DegLex);
        assert!(ideal.basis().is_empty());
        let a = Monomial::var(2, 0, 1);
        let b = Monomial::var(2, 1, 1);
        assert!(!ideal.decide(&a, &b, ReversibilityStatus::Verified).equivalent);
        assert!(ideal.decide(&a, &a, ReversibilityStatus::Verified).equivalent);
    }

    #[test]
    fn decide_examples() {
        let n = motors();
        let ideal = NetIdeal::build(&n, MonomialOrder::DegLex);
        let mono = |s| parse_monomial(s, ideal.table()).unwrap();
        let v = ideal.decide(&mono("x1"), &mono("x5"), ReversibilityStatus::Verified);
        assert_eq!(v.conclusion, Conclusion::Reachable);

        let v = ideal.decide(&mono("x1"), &mono("x6"), ReversibilityStatus::Verified);
        assert_eq!(v.conclusion, Conclusion::Unreachable);
        assert_eq!(v.note, "normal form x2 differs from x1");
        let g = explore(&n, &n.marking(&[("x1", 1)]).unwrap(), ExploreLimits::default());
        assert!(!g.contains(&n.marking(&[("x6", 1)]).unwrap()));

        let v = ideal.decide(&mono("x3*x7"), &mono("x3*x7"), ReversibilityStatus::Verified);
        assert_eq!(v.conclusion, Conclusion::Reachable);

        let v = ideal.decide(&mono("x1"), &mono("x5"), ReversibilityStatus::NotVerified);
        assert_eq!(v.conclusion, Conclusion::EquivalentButUnconfirmed);
        let v = ideal.decide(&mono("x1"), &mono("x5"), ReversibilityStatus::Refuted);
        assert_eq!(v.conclusion, Conclusion::EquivalentButUnconfirmed);
    }

    #[test]
    fn sequence_must_be_a_permutation() {
        let n = motors();
        let seq: Vec<String> = (1..=7).map(|i| format!("x{i}")).collect();
        assert!(NetIdeal::with_sequence(&n, MonomialOrder::DegLex, &seq).is_err());
        let mut seq: Vec<String> = (1..=8).map(|i| format!("x{i}")).collect();
        seq.reverse();
        let ideal = NetIdeal::with_sequence(&n, MonomialOrder::DegLex, &seq).unwrap();
        assert_eq!(ideal.basis().len(), 6);
        let m = n.marking(&[("x3", 1), ("x8", 2)]).unwrap();
        assert_eq!(ideal.marking(&n, &ideal.monomial(&n, &m)), m);
    }

    #[test]
    fn firing_identity_on_motors_edges() {
        let n = motors();
        let ideal = NetIdeal::build(&n, MonomialOrder::DegLex);
        let g = explore(&n, &n.marking(&[("x1", 2)]).unwrap(), ExploreLimits::default());
        for e in g.edges() {
            let from = ideal.monomial(&n, &g.nodes()[e.from]);
            let to = ideal.monomial(&n, &g.nodes()[e.to]);
            let (l, _) = n.transition_sides(e.transition);
            let u = from.divide(&ideal.place(&l)).unwrap();
            let lhs = Polynomial::binomial(from, to, ideal.order()).unwrap();
            let rhs = ideal.generators()[e.transition].mul_term(&num_traits::One::one(), &u);
            assert_eq!(lhs, rhs);
        }
    }
}
