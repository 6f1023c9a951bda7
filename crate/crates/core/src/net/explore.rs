use std::collections::{HashMap, VecDeque};
use std::hash::Hash;

/// Firing semantics shared by plain and coloured nets.
pub trait FiringRule {
    type Marking: Clone + Eq + Hash;

    fn transition_count(&self) -> usize;
    fn transition_id(&self, t: usize) -> &str;
    fn is_enabled(&self, m: &Self::Marking, t: usize) -> bool;
    /// Fires `t`; the caller guarantees it is enabled.
    fn fire_enabled(&self, m: &Self::Marking, t: usize) -> Self::Marking;
    /// The marking that becomes `m` by firing `t`, if there is one.
    fn unfire(&self, m: &Self::Marking, t: usize) -> Option<Self::Marking>;
    fn token_count(&self, m: &Self::Marking) -> u64;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExploreLimits {
    pub max_states: usize,
    pub max_tokens: u64,
}

impl Default for ExploreLimits {
    fn default() -> Self {
        Self {
            max_states: 1_000_000,
            max_tokens: 32,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub from: usize,
    pub transition: usize,
    pub to: usize,
}

/// Markings reachable from `nodes[0]`, in breadth-first discovery order.
#[derive(Debug, Clone)]
pub struct ReachGraph<M> {
    nodes: Vec<M>,
    index: HashMap<M, usize>,
    edges: Vec<Edge>,
    truncated: bool,
    /// Markings outside the graph that fire into it: `(marking, transition, node)`.
    entrants: Vec<(M, usize, usize)>,
}

impl<M: Clone + Eq + Hash> ReachGraph<M> {
    pub fn root(&self) -> &M {
        &self.nodes[0]
    }

    pub fn nodes(&self) -> &[M] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn truncated(&self) -> bool {
        self.truncated
    }

    pub fn contains(&self, m: &M) -> bool {
        self.index.contains_key(m)
    }

    pub fn node_index(&self, m: &M) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn entrants(&self) -> &[(M, usize, usize)] {
        &self.entrants
    }
}

/// Breadth-first closure of `m0` under firing. Successors with more than
/// `max_tokens` tokens are pruned, and discovery stops at `max_states`
/// nodes; either event sets the truncation flag.
pub fn explore<N: FiringRule>(net: &N, m0: &N::Marking, limits: ExploreLimits) -> ReachGraph<N::Marking> {
    let max_states = limits.max_states.max(1);
    let mut g = ReachGraph {
        nodes: vec![m0.clone()],
        index: HashMap::from([(m0.clone(), 0)]),
        edges: Vec::new(),
        truncated: net.token_count(m0) > limits.max_tokens,
        entrants: Vec::new(),
    };
    let mut queue = VecDeque::from([0usize]);
    while let Some(from) = queue.pop_front() {
        for t in 0..net.transition_count() {
            let current = &g.nodes[from];
            if !net.is_enabled(current, t) {
                continue;
            }
            let next = net.fire_enabled(current, t);
            if net.token_count(&next) > limits.max_tokens {
                g.truncated = true;
                continue;
            }
            let to = match g.index.get(&next) {
                Some(&i) => i,
                None if g.nodes.len() >= max_states => {
                    g.truncated = true;
                    continue;
                }
                None => {
                    let i = g.nodes.len();
                    g.index.insert(next.clone(), i);
                    g.nodes.push(next);
                    queue.push_back(i);
                    i
                }
            };
            g.edges.push(Edge {
                from,
                transition: t,
                to,
            });
        }
    }
    for (to, m) in g.nodes.iter().enumerate() {
        for t in 0..net.transition_count() {
            if let Some(prev) = net.unfire(m, t) {
                if !g.index.contains_key(&prev) {
                    g.entrants.push((prev, t, to));
                }
            }
        }
    }
    g
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reversibility<M> {
    Reversible,
    /// `witness` is a reachable marking that cannot return to the root, or a
    /// marking that fires into the reachable set without being reachable.
    NotReversible { witness: M },
    /// The exploration was truncated.
    Unknown,
}

impl<M> Reversibility<M> {
    pub fn is_reversible(&self) -> bool {
        matches!(self, Self::Reversible)
    }
}

/// Reversibility on the explored region: every reachable marking can return
/// to the root, and every marking that can fire into the reachable set is
/// itself reachable.
pub fn is_reversible<M: Clone + Eq + Hash>(g: &ReachGraph<M>) -> Reversibility<M> {
    if g.truncated {
        return Reversibility::Unknown;
    }
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); g.nodes.len()];
    for e in &g.edges {
        preds[e.to].push(e.from);
    }
    let mut back = vec![false; g.nodes.len()];
    back[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(n) = queue.pop_front() {
        for &p in &preds[n] {
            if !back[p] {
                back[p] = true;
                queue.push_back(p);
            }
        }
    }
    if let Some(i) = back.iter().position(|&b| !b) {
        return Reversibility::NotReversible {
            witness: g.nodes[i].clone(),
        };
    }
    if let Some((m, _, _)) = g.entrants.first() {
        return Reversibility::NotReversible { witness: m.clone() };
    }
    Reversibility::Reversible
}
