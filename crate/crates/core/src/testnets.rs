//! The two worked nets, built directly for unit tests. Integration tests
//! load the same nets from `fixtures/`.

use crate::net::{
    Colour, ColouredMarking, ColouredPetriNet, ColouredPlace, ColouredTransitionSpec, PetriNet,
    TransitionSpec,
};

pub(crate) fn motors() -> PetriNet {
    let places = (1..=8).map(|i| format!("x{i}")).collect();
    fn t(id: &str, i: &[&str], o: &[&str]) -> TransitionSpec {
        let w = |ps: &[&str]| ps.iter().map(|p| (p.to_string(), 1)).collect();
        TransitionSpec {
            id: id.to_string(),
            inputs: w(i),
            outputs: w(o),
        }
    }
    PetriNet::new(
        places,
        vec![
            t("t1", &["x1"], &["x2", "x3"]),
            t("t2", &["x2"], &["x7"]),
            t("t3", &["x3", "x6"], &["x4"]),
            t("t4", &["x4"], &["x5"]),
            t("t5", &["x7"], &["x6"]),
            t("t6", &["x5"], &["x3", "x8"]),
            t("t7", &["x3", "x8"], &["x1"]),
            t("t8", &["x8"], &["x7"]),
        ],
    )
    .unwrap()
}

pub(crate) const COMPASS: [&str; 25] = [
    "x1 - x2*x4",
    "x5 - x12",
    "x2*x18 - x3*x18",
    "y2*y18 - y3*y18",
    "x3*x13 - x6",
    "y3*x13 - y6",
    "x6 - x7",
    "y6 - y7",
    "x7 - x8",
    "y7 - y8",
    "x8 - x10",
    "x12 - x13",
    "x11 - x2*x14",
    "x14*x19 - x15*x19",
    "x14*y19 - y15*y19",
    "y15 - x17",
    "x3*x17 - x16",
    "y3*x17 - x16",
    "x2*x17 - x16",
    "x15 - x12",
    "x4 - x5",
    "y8 - x9",
    "x9 - x11",
    "x10 - x11",
    "x16 - x1",
];

/// `x<p>` is a pass token at place p, `y<p>` a fail token.
fn side(s: &str) -> Vec<(String, Vec<(String, u32)>)> {
    s.split('*')
        .map(|v| {
            let v = v.trim();
            let colour = if v.starts_with('x') { "pass" } else { "fail" };
            (v[1..].to_string(), vec![(colour.to_string(), 1)])
        })
        .collect()
}

pub(crate) fn compass() -> ColouredPetriNet {
    let fail_places = ["2", "3", "6", "7", "8", "15", "18", "19"];
    let places = (1..=19)
        .map(|i| {
            let name = i.to_string();
            if fail_places.contains(&name.as_str()) {
                ColouredPlace::restricted(name, &["pass", "fail"])
            } else {
                ColouredPlace::restricted(name, &["pass"])
            }
        })
        .collect();
    let transitions = COMPASS
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let (l, r) = p.split_once(" - ").unwrap();
            ColouredTransitionSpec {
                id: format!("t{}", i + 1),
                inputs: side(l),
                outputs: side(r),
            }
        })
        .collect();
    ColouredPetriNet::new(
        places,
        vec![Colour::with_prefix("pass", "x"), Colour::with_prefix("fail", "y")],
        transitions,
    )
    .unwrap()
}

pub(crate) fn compass_initial(net: &ColouredPetriNet) -> ColouredMarking {
    net.marking(&[
        ("1", "pass", 1),
        ("18", "pass", 1),
        ("19", "pass", 1),
        ("18", "fail", 1),
        ("19", "fail", 1),
    ])
    .unwrap()
}
