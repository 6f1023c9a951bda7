//! Reachable-marking catalogues, token bounds, and cross-validation of the
//! algebraic answers against explicit exploration.

use std::collections::{HashSet, VecDeque};

use crate::bridge::{Algebraic, NetIdeal, ReversibilityStatus};
use crate::net::{explore, is_reversible, ExploreLimits, Reversibility};
use crate::poly::{Monomial, MonomialOrder};

/// Markings whose monomials share the initial marking's normal form,
/// ascending under the ideal's order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Catalogue {
    pub initial: Monomial,
    pub entries: Vec<Monomial>,
    pub degree_bound: u64,
    /// No equivalent marking can lie above the degree bound.
    pub complete: bool,
    pub diagnostics: Vec<String>,
}

impl Catalogue {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.entries.contains(m)
    }

    /// Entry count per total degree, ascending by degree.
    pub fn degree_histogram(&self) -> Vec<(u64, usize)> {
        let mut hist: Vec<(u64, usize)> = Vec::new();
        for e in &self.entries {
            let d = e.degree();
            match hist.iter_mut().find(|(k, _)| *k == d) {
                Some((_, n)) => *n += 1,
                None => hist.push((d, 1)),
            }
        }
        hist.sort_unstable();
        hist
    }
}

/// `deg(m0) + max growth per firing * |T|`, capped at 12 and never below
/// `deg(m0)`.
pub fn default_degree_bound(ideal: &NetIdeal, initial: &Monomial) -> u64 {
    let d0 = initial.degree();
    let growth = ideal
        .generators()
        .iter()
        .filter_map(|g| {
            // the generator is l - r or r - l; both orientations grow by |deg l - deg r|
            let degs: Vec<u64> = g.terms().iter().map(|(m, _)| m.degree()).collect();
            match degs.as_slice() {
                [a, b] => Some(a.abs_diff(*b)),
                _ => None,
            }
        })
        .max()
        .unwrap_or(0);
    let formula = d0 + growth * ideal.generators().len() as u64;
    formula.min(12).max(d0)
}

pub fn catalogue(ideal: &NetIdeal, initial: &Monomial, degree_bound: u64) -> Catalogue {
    let mut diagnostics = Vec::new();
    if degree_bound < initial.degree() {
        diagnostics.push(format!(
            "degree bound {degree_bound} is below the initial marking's {} tokens",
            initial.degree()
        ));
    }
    let mut entries = if ideal.order().is_degree_compatible() {
        catalogue_by_back_rewriting(ideal, initial, degree_bound)
    } else {
        catalogue_by_enumeration(ideal, initial, degree_bound)
    };
    let order = ideal.order();
    entries.sort_by(|a, b| order.compare(a, b));
    let complete = ideal.basis().is_homogeneous() && degree_bound >= initial.degree();
    Catalogue {
        initial: initial.clone(),
        entries,
        degree_bound,
        complete,
        diagnostics,
    }
}

/// Every monomial of degree at most `degree_bound` whose normal form matches
/// the initial marking's. Unsorted.
pub fn catalogue_by_enumeration(
    ideal: &NetIdeal,
    initial: &Monomial,
    degree_bound: u64,
) -> Vec<Monomial> {
    let target = ideal.normal_form(initial);
    let n = ideal.table().len();
    let mut out = Vec::new();
    let mut exps = vec![0u32; n];
    enumerate(&mut exps, 0, degree_bound, &mut |m| {
        if ideal.normal_form(m) == target {
            out.push(m.clone());
        }
    });
    out
}

fn enumerate(exps: &mut [u32], var: usize, budget: u64, visit: &mut impl FnMut(&Monomial)) {
    if var == exps.len() {
        visit(&Monomial::from_exponents(exps.to_vec()));
        return;
    }
    for e in 0..=budget {
        exps[var] = e as u32;
        enumerate(exps, var + 1, budget - e, visit);
    }
    exps[var] = 0;
}

/// Walks the rewrite rules backwards from the common normal form. Only valid
/// for degree-compatible orders, where rewriting never raises the degree.
fn catalogue_by_back_rewriting(
    ideal: &NetIdeal,
    initial: &Monomial,
    degree_bound: u64,
) -> Vec<Monomial> {
    let target = ideal.normal_form(initial);
    if target.degree() > degree_bound {
        return Vec::new();
    }
    let rules = ideal
        .basis()
        .rewrite_rules()
        .expect("net ideal bases are pure binomial");
    let mut seen: HashSet<Monomial> = HashSet::from([target.clone()]);
    let mut queue = VecDeque::from([target]);
    while let Some(cur) = queue.pop_front() {
        for (l, r) in rules {
            let Some(u) = cur.divide(r) else { continue };
            let pred = &u * l;
            if pred.degree() <= degree_bound && seen.insert(pred.clone()) {
                queue.push_back(pred);
            }
        }
    }
    seen.into_iter().collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundsReport {
    /// Every reachable marking carries the same number of tokens.
    pub conservative: bool,
    /// Fewest tokens of any marking equivalent to the initial one.
    pub min_tokens: u64,
    pub basis_homogeneous: bool,
}

pub fn bounds(ideal: &NetIdeal, initial: &Monomial) -> BoundsReport {
    let homogeneous = ideal.basis().is_homogeneous();
    // the normal form is the least monomial of its class, which has the
    // least degree only under a degree-compatible order
    let min_tokens = if ideal.order().is_degree_compatible() {
        ideal.normal_form(initial).degree()
    } else {
        ideal
            .with_order(MonomialOrder::DegRevLex)
            .normal_form(initial)
            .degree()
    };
    BoundsReport {
        conservative: homogeneous,
        min_tokens,
        basis_homogeneous: homogeneous,
    }
}

impl BoundsReport {
    /// `key: value` lines.
    pub fn render(&self) -> String {
        format!(
            "conservative: {}\nmin_tokens: {}\nbasis_homogeneous: {}\n",
            self.conservative, self.min_tokens, self.basis_homogeneous
        )
    }
}

pub fn reversibility_status<M>(r: &Reversibility<M>) -> ReversibilityStatus {
    match r {
        Reversibility::Reversible => ReversibilityStatus::Verified,
        Reversibility::NotReversible { .. } => ReversibilityStatus::Refuted,
        Reversibility::Unknown => ReversibilityStatus::NotVerified,
    }
}

#[derive(Debug, Clone)]
pub struct CrossValidation {
    pub catalogue: Catalogue,
    pub oracle: Vec<Monomial>,
    pub oracle_truncated: bool,
    pub reversibility: ReversibilityStatus,
    pub reversibility_witness: Option<Monomial>,
    /// Oracle markings within the degree bound that the catalogue misses.
    pub missing_from_catalogue: Vec<Monomial>,
    /// Catalogue entries the oracle never reached.
    pub missing_from_oracle: Vec<Monomial>,
}

impl CrossValidation {
    /// Oracle within the bound is a subset of the catalogue. Always required.
    pub fn oracle_in_catalogue(&self) -> bool {
        self.missing_from_catalogue.is_empty()
    }

    pub fn catalogue_in_oracle(&self) -> bool {
        self.missing_from_oracle.is_empty()
    }

    /// Whether the catalogue must equal the oracle: reversible, untruncated,
    /// and no oracle marking beyond the degree bound.
    pub fn exactness_required(&self) -> bool {
        self.reversibility == ReversibilityStatus::Verified
            && !self.oracle_truncated
            && self
                .oracle
                .iter()
                .all(|m| m.degree() <= self.catalogue.degree_bound)
    }

    pub fn passed(&self) -> bool {
        self.oracle_in_catalogue() && (!self.exactness_required() || self.catalogue_in_oracle())
    }
}

/// Runs the explorer and the catalogue side by side.
pub fn cross_validate<N: Algebraic>(
    net: &N,
    ideal: &NetIdeal,
    initial: &N::Marking,
    degree_bound: u64,
    limits: ExploreLimits,
) -> CrossValidation {
    let graph = explore(net, initial, limits);
    let rev = is_reversible(&graph);
    let m0 = ideal.monomial(net, initial);
    let mut catalogue = catalogue(ideal, &m0, degree_bound);

    let oracle: Vec<Monomial> = graph
        .nodes()
        .iter()
        .map(|m| ideal.monomial(net, m))
        .collect();
    let oracle_set: HashSet<&Monomial> = oracle.iter().collect();
    let catalogue_set: HashSet<&Monomial> = catalogue.entries.iter().collect();
    let missing_from_catalogue = oracle
        .iter()
        .filter(|m| m.degree() <= degree_bound && !catalogue_set.contains(m))
        .cloned()
        .collect();
    let missing_from_oracle = catalogue
        .entries
        .iter()
        .filter(|m| !oracle_set.contains(m))
        .cloned()
        .collect();

    let status = reversibility_status(&rev);
    let witness = match &rev {
        Reversibility::NotReversible { witness } => Some(ideal.monomial(net, witness)),
        _ => None,
    };
    let mut report = CrossValidation {
        catalogue: catalogue.clone(),
        oracle,
        oracle_truncated: graph.truncated(),
        reversibility: status,
        reversibility_witness: witness,
        missing_from_catalogue,
        missing_from_oracle,
    };
    // a reversible, fully explored region inside the bound is the whole class
    if report.exactness_required() {
        catalogue.complete = true;
        report.catalogue = catalogue;
    }
    report
}
