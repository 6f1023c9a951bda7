#![allow(dead_code)]

use std::path::PathBuf;

use petrigb::format::{parse_net, LoadedNet, NetDocument};
use petrigb::net::{ColouredMarking, ColouredPetriNet, Marking, PetriNet, TransitionSpec};
use petrigb::poly::MonomialOrder;
use proptest::prelude::*;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

pub fn fixture(name: &str) -> NetDocument {
    let text = std::fs::read_to_string(fixture_path(name)).expect("fixture readable");
    parse_net(&text).expect("fixture parses")
}

pub fn motors() -> (NetDocument, PetriNet, Marking) {
    let doc = fixture("motors.net");
    match doc.load().unwrap() {
        LoadedNet::Plain { net, initial } => (doc, net, initial),
        _ => panic!("motors is a plain net"),
    }
}

pub fn compass() -> (NetDocument, ColouredPetriNet, ColouredMarking) {
    let doc = fixture("compass.net");
    match doc.load().unwrap() {
        LoadedNet::Coloured { net, initial } => (doc, net, initial),
        _ => panic!("compass is a coloured net"),
    }
}

/// A generated net: per-transition input and output weight vectors.
#[derive(Debug, Clone)]
pub struct NetShape {
    pub places: usize,
    pub transitions: Vec<(Vec<u32>, Vec<u32>)>,
    pub initial: Vec<u32>,
}

impl NetShape {
    pub fn build(&self) -> (PetriNet, Marking) {
        let names: Vec<String> = (1..=self.places).map(|i| format!("p{i}")).collect();
        let side = |w: &[u32]| -> Vec<(String, u32)> {
            w.iter()
                .enumerate()
                .filter(|(_, &n)| n > 0)
                .map(|(i, &n)| (names[i].clone(), n))
                .collect()
        };
        let specs = self
            .transitions
            .iter()
            .enumerate()
            .map(|(i, (a, b))| TransitionSpec {
                id: format!("t{}", i + 1),
                inputs: side(a),
                outputs: side(b),
            })
            .collect();
        let net = PetriNet::new(names.clone(), specs).expect("generated net is valid");
        (net, Marking(self.initial.clone()))
    }

    pub fn is_conservative(&self) -> bool {
        self.transitions
            .iter()
            .all(|(a, b)| a.iter().sum::<u32>() == b.iter().sum::<u32>())
    }
}

/// Up to `max_places` places, up to 8 transitions, weights at most 2.
pub fn arb_net(max_places: usize) -> impl Strategy<Value = NetShape> {
    (1..=max_places, 1..=8usize).prop_flat_map(|(n, m)| {
        let weights = || prop::collection::vec(0..=2u32, n);
        (
            prop::collection::vec((weights(), weights()), m),
            prop::collection::vec(0..=2u32, n),
        )
            .prop_map(move |(transitions, initial)| NetShape {
                places: n,
                transitions,
                initial,
            })
    })
}

/// Nets where every transition comes with its reverse.
pub fn arb_reversible_net(max_places: usize) -> impl Strategy<Value = NetShape> {
    (1..=max_places, 1..=4usize).prop_flat_map(|(n, m)| {
        let weights = || prop::collection::vec(0..=2u32, n);
        (
            prop::collection::vec((weights(), weights()), m),
            prop::collection::vec(0..=2u32, n),
        )
            .prop_map(move |(pairs, initial)| NetShape {
                places: n,
                transitions: pairs
                    .into_iter()
                    .flat_map(|(a, b)| [(a.clone(), b.clone()), (b, a)])
                    .collect(),
                initial,
            })
    })
}

/// Every transition moves `k ≤ 2` tokens to `k` (possibly other) places.
pub fn arb_conservative_net(max_places: usize) -> impl Strategy<Value = NetShape> {
    (1..=max_places, 1..=8usize).prop_flat_map(|(n, m)| {
        let transition = (1..=2usize).prop_flat_map(move |k| {
            (
                prop::collection::vec(0..n, k),
                prop::collection::vec(0..n, k),
            )
        });
        (
            prop::collection::vec(transition, m),
            prop::collection::vec(0..=2u32, n),
        )
            .prop_map(move |(ts, initial)| {
                let bag = |ps: &[usize]| {
                    let mut w = vec![0u32; n];
                    for &p in ps {
                        w[p] += 1;
                    }
                    w
                };
                NetShape {
                    places: n,
                    transitions: ts.iter().map(|(a, b)| (bag(a), bag(b))).collect(),
                    initial,
                }
            })
    })
}

pub fn arb_order() -> impl Strategy<Value = MonomialOrder> {
    prop::sample::select(MonomialOrder::ALL.to_vec())
}

/// Fires a pseudo-random sequence: each choice picks among the enabled
/// transitions. Returns every marking visited, starting with `m0`.
pub fn walk(net: &PetriNet, m0: &Marking, choices: &[usize]) -> Vec<(Marking, Option<usize>)> {
    use petrigb::net::FiringRule;
    let mut out = vec![(m0.clone(), None)];
    let mut m = m0.clone();
    for &c in choices {
        let enabled: Vec<usize> = (0..net.transition_count())
            .filter(|&t| net.is_enabled(&m, t))
            .collect();
        if enabled.is_empty() {
            break;
        }
        let t = enabled[c % enabled.len()];
        m = net.fire_enabled(&m, t);
        out.push((m.clone(), Some(t)));
    }
    out
}
