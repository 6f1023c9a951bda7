mod common;

use common::*;
use petrigb::bridge::NetIdeal;
use petrigb::format::{emit, parse_net, NetBody, NetDocument, FORMAT_VERSION};
use petrigb::net::{Colour, ColouredPlace, ColouredTransitionSpec};
use petrigb::poly::{parse_polynomial, MonomialOrder};
use proptest::prelude::*;

/// Transition polynomials of the compass net, input minus output.
const COMPASS_POLYNOMIALS: [&str; 25] = [
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

#[test]
fn motors_fixture_shape() {
    let (doc, net, m0) = motors();
    assert_eq!(doc.name, "motors");
    assert_eq!(net.places().len(), 8);
    assert_eq!(net.transitions().len(), 8);
    assert_eq!(m0.0, vec![1, 0, 0, 0, 0, 0, 0, 0]);
    assert_eq!(doc.order, Some(MonomialOrder::DegLex));
    assert!(doc.validate().is_empty());
}

#[test]
fn compass_fixture_matches_listed_polynomials() {
    let (doc, net, _) = compass();
    assert!(doc.validate().iter().all(|d| !d.is_error()));
    let order = MonomialOrder::DegRevLex;
    let ideal = NetIdeal::build(&net, order);
    assert_eq!(ideal.generators().len(), 25);
    for (g, text) in ideal.generators().iter().zip(COMPASS_POLYNOMIALS) {
        let expected = parse_polynomial(text, ideal.table(), order).unwrap();
        assert_eq!(g, &expected, "{text}");
    }
    assert_eq!(ideal.table().len(), 27);
}

#[test]
fn fixtures_are_canonical_up_to_comments() {
    for name in ["motors.net", "compass.net"] {
        let doc = fixture(name);
        let text = emit(&doc);
        assert_eq!(parse_net(&text).unwrap(), doc);
        assert_eq!(emit(&parse_net(&text).unwrap()), text);
    }
}

fn arb_coloured_doc() -> impl Strategy<Value = NetDocument> {
    (1..=4usize, 1..=3usize).prop_flat_map(|(n, k)| {
        let colour_names: Vec<String> = ["red", "green", "blue"][..k].iter().map(|s| s.to_string()).collect();
        let restriction = prop::collection::vec(any::<bool>(), k);
        (
            prop::collection::vec(any::<bool>(), k),
            prop::collection::vec(prop::option::of(restriction), n),
            prop::collection::vec(
                (
                    prop::collection::vec(prop::collection::vec(0..=2u32, k), n),
                    prop::collection::vec(prop::collection::vec(0..=2u32, k), n),
                ),
                0..=4,
            ),
            prop::collection::vec(prop::collection::vec(0..=2u32, k), n),
        )
            .prop_map(move |(prefixed, restrictions, transitions, init)| {
                let colours: Vec<Colour> = colour_names
                    .iter()
                    .zip(&prefixed)
                    .map(|(c, &p)| match p {
                        true => Colour::with_prefix(c.clone(), &c[..1]),
                        false => Colour::new(c.clone()),
                    })
                    .collect();
                // a place keeps its restriction only if it allows some colour
                let allowed: Vec<Vec<bool>> = restrictions
                    .iter()
                    .map(|r| match r {
                        Some(mask) if mask.iter().any(|&b| b) => mask.clone(),
                        _ => vec![true; colour_names.len()],
                    })
                    .collect();
                let places: Vec<ColouredPlace> = (0..allowed.len())
                    .map(|p| {
                        let name = format!("q{}", p + 1);
                        match &restrictions[p] {
                            Some(mask) if mask.iter().any(|&b| b) => ColouredPlace {
                                name,
                                colours: Some(
                                    colour_names
                                        .iter()
                                        .zip(mask)
                                        .filter(|(_, &b)| b)
                                        .map(|(c, _)| c.clone())
                                        .collect(),
                                ),
                            },
                            _ => ColouredPlace { name, colours: None },
                        }
                    })
                    .collect();
                let side = |w: &[Vec<u32>]| -> Vec<(String, Vec<(String, u32)>)> {
                    w.iter()
                        .enumerate()
                        .filter_map(|(p, bag)| {
                            let bag: Vec<(String, u32)> = bag
                                .iter()
                                .enumerate()
                                .filter(|&(c, &n)| n > 0 && allowed[p][c])
                                .map(|(c, &n)| (colour_names[c].clone(), n))
                                .collect();
                            (!bag.is_empty()).then(|| (format!("q{}", p + 1), bag))
                        })
                        .collect()
                };
                let transitions = transitions
                    .iter()
                    .enumerate()
                    .map(|(i, (a, b))| ColouredTransitionSpec {
                        id: format!("t{}", i + 1),
                        inputs: side(a),
                        outputs: side(b),
                    })
                    .collect();
                let init = side(&init)
                    .into_iter()
                    .flat_map(|(p, bag)| bag.into_iter().map(move |(c, n)| (p.clone(), c, n)))
                    .collect();
                NetDocument {
                    version: FORMAT_VERSION,
                    name: "random".into(),
                    order: None,
                    vars: None,
                    reversible: None,
                    body: NetBody::Coloured {
                        colours,
                        places,
                        transitions,
                        init,
                    },
                }
            })
    })
}

proptest! {
    #[test]
    fn plain_documents_round_trip(shape in arb_net(6), order in prop::option::of(arb_order()), reversible in prop::option::of(any::<bool>())) {
        let (net, m0) = shape.build();
        let mut doc = NetDocument::from_plain("random", &net, &m0);
        doc.order = order;
        doc.reversible = reversible;
        let text = emit(&doc);
        let parsed = parse_net(&text).unwrap();
        prop_assert_eq!(&parsed, &doc);
        prop_assert_eq!(emit(&parsed), text);
        prop_assert!(parsed.load().is_ok());
    }

    #[test]
    fn coloured_documents_round_trip(doc in arb_coloured_doc()) {
        let text = emit(&doc);
        let parsed = parse_net(&text).unwrap();
        prop_assert_eq!(&parsed, &doc);
        prop_assert_eq!(emit(&parsed), text);
        prop_assert!(parsed.load().is_ok());
    }

    #[test]
    fn arbitrary_text_never_panics(lines in prop::collection::vec("[a-z0-9:,^*{}= #-]{0,30}", 0..8)) {
        let text = format!("format: 1\n{}", lines.join("\n"));
        if let Err(e) = parse_net(&text) {
            prop_assert!(e.line >= 1 && e.column >= 1);
        }
    }
}
