use std::collections::{HashMap, HashSet};

use super::{Diagnostic, FiringRule, Marking, NetError, PetriNet, TransitionSpec};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Colour {
    pub name: String,
    /// When set, the variable for place `p` in this colour is named
    /// `<prefix><p>` instead of `<p>@<colour>`.
    pub prefix: Option<String>,
}

impl Colour {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            prefix: None,
        }
    }

    pub fn with_prefix(name: impl Into<String>, prefix: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            prefix: Some(prefix.into()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColouredPlace {
    pub name: String,
    /// Colours this place may hold; `None` means every colour.
    pub colours: Option<Vec<String>>,
}

impl ColouredPlace {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            colours: None,
        }
    }

    pub fn restricted(name: impl Into<String>, colours: &[&str]) -> Self {
        Self {
            name: name.into(),
            colours: Some(colours.iter().map(|c| c.to_string()).collect()),
        }
    }
}

/// Colour power product: multiplicity per colour index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ColourBag(pub Vec<u32>);

impl ColourBag {
    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

/// A coloured transition as written by the user. Each weight is a place and
/// a colour power product given as `(colour, multiplicity)` pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColouredTransitionSpec {
    pub id: String,
    pub inputs: Vec<(String, Vec<(String, u32)>)>,
    pub outputs: Vec<(String, Vec<(String, u32)>)>,
}

impl ColouredTransitionSpec {
    pub fn new(
        id: impl Into<String>,
        inputs: &[(&str, &[(&str, u32)])],
        outputs: &[(&str, &[(&str, u32)])],
    ) -> Self {
        let own = |ws: &[(&str, &[(&str, u32)])]| {
            ws.iter()
                .map(|(p, bag)| {
                    (
                        p.to_string(),
                        bag.iter().map(|&(c, n)| (c.to_string(), n)).collect(),
                    )
                })
                .collect()
        };
        Self {
            id: id.into(),
            inputs: own(inputs),
            outputs: own(outputs),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColouredTransition {
    pub id: String,
    pub inputs: Vec<(usize, ColourBag)>,
    pub outputs: Vec<(usize, ColourBag)>,
}

/// Colour counts per place, stored flat as `place * colours + colour`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColouredMarking(pub Vec<u32>);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColouredPetriNet {
    places: Vec<ColouredPlace>,
    allowed: Vec<Vec<usize>>,
    colours: Vec<Colour>,
    transitions: Vec<ColouredTransition>,
    place_index: HashMap<String, usize>,
    colour_index: HashMap<String, usize>,
}

impl ColouredPetriNet {
    pub fn new(
        places: Vec<ColouredPlace>,
        colours: Vec<Colour>,
        transitions: Vec<ColouredTransitionSpec>,
    ) -> Result<Self, NetError> {
        let errors: Vec<Diagnostic> = Self::validate_parts(&places, &colours, &transitions)
            .into_iter()
            .filter(Diagnostic::is_error)
            .collect();
        if !errors.is_empty() {
            return Err(NetError::Invalid(errors));
        }
        let place_index: HashMap<String, usize> = places
            .iter()
            .enumerate()
            .map(|(i, p)| (p.name.clone(), i))
            .collect();
        let colour_index: HashMap<String, usize> = colours
            .iter()
            .enumerate()
            .map(|(i, c)| (c.name.clone(), i))
            .collect();
        let allowed = places
            .iter()
            .map(|p| match &p.colours {
                None => (0..colours.len()).collect(),
                Some(cs) => {
                    let mut v: Vec<usize> = cs.iter().map(|c| colour_index[c]).collect();
                    v.sort_unstable();
                    v.dedup();
                    v
                }
            })
            .collect();
        let mut net = Self {
            places,
            allowed,
            colours,
            transitions: Vec::new(),
            place_index,
            colour_index,
        };
        net.transitions = transitions
            .iter()
            .map(|t| {
                Ok(ColouredTransition {
                    id: t.id.clone(),
                    inputs: net.resolve_weights(&t.inputs)?,
                    outputs: net.resolve_weights(&t.outputs)?,
                })
            })
            .collect::<Result<_, NetError>>()?;
        Ok(net)
    }

    fn resolve_weights(
        &self,
        ws: &[(String, Vec<(String, u32)>)],
    ) -> Result<Vec<(usize, ColourBag)>, NetError> {
        let mut out: Vec<(usize, ColourBag)> = Vec::new();
        for (place, bag) in ws {
            let p = self
                .place_index(place)
                .ok_or_else(|| NetError::UnknownPlace(place.clone()))?;
            let idx = match out.iter().position(|(q, _)| *q == p) {
                Some(i) => i,
                None => {
                    out.push((p, ColourBag(vec![0; self.colours.len()])));
                    out.len() - 1
                }
            };
            for (colour, n) in bag {
                let c = self
                    .colour_index(colour)
                    .ok_or_else(|| NetError::UnknownColour(colour.clone()))?;
                out[idx].1 .0[c] += n;
            }
        }
        out.sort_by_key(|(p, _)| *p);
        Ok(out)
    }

    /// Structural checks on a coloured net description.
    pub fn validate_parts(
        places: &[ColouredPlace],
        colours: &[Colour],
        transitions: &[ColouredTransitionSpec],
    ) -> Vec<Diagnostic> {
        let mut diags = Vec::new();
        let mut colour_names = HashSet::new();
        for c in colours {
            if !colour_names.insert(c.name.as_str()) {
                diags.push(Diagnostic::error(format!("duplicate colour `{}`", c.name)));
            }
        }
        if colours.is_empty() {
            diags.push(Diagnostic::error("coloured net declares no colours"));
        }
        let mut allowed: HashMap<&str, Option<HashSet<&str>>> = HashMap::new();
        for p in places {
            if let Some(cs) = &p.colours {
                for c in cs {
                    if !colour_names.contains(c.as_str()) {
                        diags.push(Diagnostic::error(format!(
                            "place `{}` lists undeclared colour `{c}`",
                            p.name
                        )));
                    }
                }
            }
            let set = p
                .colours
                .as_ref()
                .map(|cs| cs.iter().map(String::as_str).collect());
            if allowed.insert(p.name.as_str(), set).is_some() {
                diags.push(Diagnostic::error(format!("duplicate place `{}`", p.name)));
            }
        }
        let mut ids = HashSet::new();
        let mut touched = HashSet::new();
        for t in transitions {
            if !ids.insert(t.id.as_str()) {
                diags.push(Diagnostic::error(format!("duplicate transition `{}`", t.id)));
            }
            for (place, bag) in t.inputs.iter().chain(&t.outputs) {
                touched.insert(place.as_str());
                let Some(set) = allowed.get(place.as_str()) else {
                    diags.push(Diagnostic::error(format!(
                        "transition `{}` references undeclared place `{place}`",
                        t.id
                    )));
                    continue;
                };
                if bag.iter().all(|(_, n)| *n == 0) {
                    diags.push(Diagnostic::error(format!(
                        "transition `{}` has an empty colour product on place `{place}`",
                        t.id
                    )));
                }
                for (colour, _) in bag {
                    if !colour_names.contains(colour.as_str()) {
                        diags.push(Diagnostic::error(format!(
                            "transition `{}` references undeclared colour `{colour}`",
                            t.id
                        )));
                    } else if set.as_ref().is_some_and(|s| !s.contains(colour.as_str())) {
                        diags.push(Diagnostic::error(format!(
                            "transition `{}` uses colour `{colour}` on place `{place}`, which does not hold it",
                            t.id
                        )));
                    }
                }
            }
            if t.inputs.is_empty() {
                diags.push(Diagnostic::warning(format!(
                    "source transition `{}` has no input places",
                    t.id
                )));
            }
            if t.outputs.is_empty() {
                diags.push(Diagnostic::warning(format!(
                    "sink transition `{}` has no output places",
                    t.id
                )));
            }
        }
        for p in places {
            if !touched.contains(p.name.as_str()) {
                diags.push(Diagnostic::warning(format!("isolated place `{}`", p.name)));
            }
        }
        diags
    }

    pub fn validate(&self) -> Vec<Diagnostic> {
        Self::validate_parts(&self.places, &self.colours, &self.specs())
    }

    pub fn specs(&self) -> Vec<ColouredTransitionSpec> {
        let named = |ws: &[(usize, ColourBag)]| {
            ws.iter()
                .map(|(p, bag)| {
                    (
                        self.places[*p].name.clone(),
                        bag.0
                            .iter()
                            .enumerate()
                            .filter(|(_, &n)| n > 0)
                            .map(|(c, &n)| (self.colours[c].name.clone(), n))
                            .collect(),
                    )
                })
                .collect()
        };
        self.transitions
            .iter()
            .map(|t| ColouredTransitionSpec {
                id: t.id.clone(),
                inputs: named(&t.inputs),
                outputs: named(&t.outputs),
            })
            .collect()
    }

    pub fn places(&self) -> &[ColouredPlace] {
        &self.places
    }

    pub fn colours(&self) -> &[Colour] {
        &self.colours
    }

    pub fn transitions(&self) -> &[ColouredTransition] {
        &self.transitions
    }

    pub fn place_index(&self, name: &str) -> Option<usize> {
        self.place_index.get(name).copied()
    }

    pub fn colour_index(&self, name: &str) -> Option<usize> {
        self.colour_index.get(name).copied()
    }

    /// Colours place `p` may hold, ascending.
    pub fn allowed_colours(&self, p: usize) -> &[usize] {
        &self.allowed[p]
    }

    /// Declared `(place, colour)` pairs, place-major.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.allowed
            .iter()
            .enumerate()
            .flat_map(|(p, cs)| cs.iter().map(move |&c| (p, c)))
            .collect()
    }

    /// Canonical variable name for a `(place, colour)` pair.
    pub fn variable_name(&self, place: usize, colour: usize) -> String {
        let p = &self.places[place].name;
        let c = &self.colours[colour];
        match &c.prefix {
            Some(prefix) => format!("{prefix}{p}"),
            None => format!("{p}@{}", c.name),
        }
    }

    pub fn empty_marking(&self) -> ColouredMarking {
        ColouredMarking(vec![0; self.places.len() * self.colours.len()])
    }

    pub fn count(&self, m: &ColouredMarking, place: usize, colour: usize) -> u32 {
        m.0[place * self.colours.len() + colour]
    }

    /// A marking from `(place, colour, tokens)` triples.
    pub fn marking(&self, tokens: &[(&str, &str, u32)]) -> Result<ColouredMarking, NetError> {
        let mut m = self.empty_marking();
        for &(place, colour, n) in tokens {
            let p = self
                .place_index(place)
                .ok_or_else(|| NetError::UnknownPlace(place.to_string()))?;
            let c = self
                .colour_index(colour)
                .ok_or_else(|| NetError::UnknownColour(colour.to_string()))?;
            if n > 0 && !self.allowed[p].contains(&c) {
                return Err(NetError::UnknownColour(format!("{colour} at place {place}")));
            }
            m.0[p * self.colours.len() + c] += n;
        }
        Ok(m)
    }

    pub fn transition_index(&self, id: &str) -> Result<usize, NetError> {
        self.transitions
            .iter()
            .position(|t| t.id == id)
            .ok_or_else(|| NetError::UnknownTransition(id.to_string()))
    }

    pub fn enabled(&self, m: &ColouredMarking, transition: &str) -> Result<bool, NetError> {
        Ok(self.is_enabled(m, self.transition_index(transition)?))
    }

    pub fn fire(&self, m: &ColouredMarking, transition: &str) -> Result<ColouredMarking, NetError> {
        let t = self.transition_index(transition)?;
        if !self.is_enabled(m, t) {
            return Err(NetError::NotEnabled(transition.to_string()));
        }
        Ok(self.fire_enabled(m, t))
    }

    fn holds(&self, m: &ColouredMarking, ws: &[(usize, ColourBag)]) -> bool {
        let nc = self.colours.len();
        ws.iter().all(|(p, bag)| {
            bag.0
                .iter()
                .enumerate()
                .all(|(c, &n)| m.0[p * nc + c] >= n)
        })
    }

    fn shift(&self, m: &mut ColouredMarking, remove: &[(usize, ColourBag)], add: &[(usize, ColourBag)]) {
        let nc = self.colours.len();
        for (p, bag) in remove {
            for (c, &n) in bag.0.iter().enumerate() {
                m.0[p * nc + c] -= n;
            }
        }
        for (p, bag) in add {
            for (c, &n) in bag.0.iter().enumerate() {
                m.0[p * nc + c] += n;
            }
        }
    }

    /// The plain net with one place per declared `(place, colour)` pair and
    /// one transition per coloured transition.
    pub fn unfold(&self) -> Unfolding {
        let pairs = self.pairs();
        let pair_index: HashMap<(usize, usize), usize> =
            pairs.iter().enumerate().map(|(i, &pc)| (pc, i)).collect();
        let names: Vec<String> = pairs
            .iter()
            .map(|&(p, c)| self.variable_name(p, c))
            .collect();
        let plain = |ws: &[(usize, ColourBag)]| -> Vec<(String, u32)> {
            ws.iter()
                .flat_map(|(p, bag)| {
                    bag.0
                        .iter()
                        .enumerate()
                        .filter(|(_, &n)| n > 0)
                        .map(|(c, &n)| (names[pair_index[&(*p, c)]].clone(), n))
                        .collect::<Vec<_>>()
                })
                .collect()
        };
        let transitions = self
            .transitions
            .iter()
            .map(|t| TransitionSpec {
                id: t.id.clone(),
                inputs: plain(&t.inputs),
                outputs: plain(&t.outputs),
            })
            .collect();
        let net = PetriNet::new(names, transitions).expect("unfolding of a valid coloured net");
        Unfolding {
            net,
            colours: self.colours.len(),
            places: self.places.len(),
            pairs,
            pair_index,
        }
    }
}

impl FiringRule for ColouredPetriNet {
    type Marking = ColouredMarking;

    fn transition_count(&self) -> usize {
        self.transitions.len()
    }

    fn transition_id(&self, t: usize) -> &str {
        &self.transitions[t].id
    }

    fn is_enabled(&self, m: &ColouredMarking, t: usize) -> bool {
        self.holds(m, &self.transitions[t].inputs)
    }

    fn fire_enabled(&self, m: &ColouredMarking, t: usize) -> ColouredMarking {
        let tr = &self.transitions[t];
        let mut next = m.clone();
        self.shift(&mut next, &tr.inputs, &tr.outputs);
        next
    }

    fn unfire(&self, m: &ColouredMarking, t: usize) -> Option<ColouredMarking> {
        let tr = &self.transitions[t];
        if !self.holds(m, &tr.outputs) {
            return None;
        }
        let mut prev = m.clone();
        self.shift(&mut prev, &tr.outputs, &tr.inputs);
        Some(prev)
    }

    fn token_count(&self, m: &ColouredMarking) -> u64 {
        m.0.iter().map(|&n| u64::from(n)).sum()
    }
}

/// A coloured net's plain counterpart together with the place bijection.
#[derive(Debug, Clone)]
pub struct Unfolding {
    pub net: PetriNet,
    colours: usize,
    places: usize,
    pairs: Vec<(usize, usize)>,
    pair_index: HashMap<(usize, usize), usize>,
}

impl Unfolding {
    /// `(coloured place, colour)` behind each plain place.
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn plain_place(&self, place: usize, colour: usize) -> Option<usize> {
        self.pair_index.get(&(place, colour)).copied()
    }

    pub fn marking(&self, m: &ColouredMarking) -> Marking {
        let mut out = Marking::empty(self.pairs.len());
        for (i, &(p, c)) in self.pairs.iter().enumerate() {
            out.0[i] = m.0[p * self.colours + c];
        }
        out
    }

    pub fn fold(&self, m: &Marking) -> ColouredMarking {
        let mut out = ColouredMarking(vec![0; self.places * self.colours]);
        for (i, &(p, c)) in self.pairs.iter().enumerate() {
            out.0[p * self.colours + c] = m.0[i];
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::net::{explore, ExploreLimits};
    use crate::testnets::compass;

    fn pass_fail() -> ColouredPetriNet {
        ColouredPetriNet::new(
            vec![ColouredPlace::new("p")],
            vec![Colour::new("pass"), Colour::new("fail")],
            vec![ColouredTransitionSpec::new(
                "t",
                &[("p", &[("pass", 1)])],
                &[("p", &[("fail", 1)])],
            )],
        )
        .unwrap()
    }

    #[test]
    fn unfold_two_colours() {
        let u = pass_fail().unfold();
        assert_eq!(u.net.places(), ["p@pass", "p@fail"]);
        assert_eq!(u.net.transitions().len(), 1);
        assert_eq!(u.net.transitions()[0].inputs, vec![(0, 1)]);
        assert_eq!(u.net.transitions()[0].outputs, vec![(1, 1)]);
    }

    #[test]
    fn disabled_without_colour() {
        let n = pass_fail();
        let m = n.marking(&[("p", "fail", 3)]).unwrap();
        assert!(!n.enabled(&m, "t").unwrap());
        let m = n.marking(&[("p", "pass", 1)]).unwrap();
        assert_eq!(
            n.fire(&m, "t").unwrap(),
            n.marking(&[("p", "fail", 1)]).unwrap()
        );
    }

    #[test]
    fn return_data_fires_with_read_arc() {
        let n = compass();
        // x2*x18 - x3*x18
        let m = n
            .marking(&[("2", "pass", 1), ("18", "pass", 1), ("18", "fail", 1)])
            .unwrap();
        let t = (0..n.transition_count())
            .find(|&t| n.is_enabled(&m, t))
            .expect("return data enabled");
        assert_eq!(n.transition_id(t), "t3");
        assert_eq!(
            n.fire_enabled(&m, t),
            n.marking(&[("3", "pass", 1), ("18", "pass", 1), ("18", "fail", 1)])
                .unwrap()
        );
    }

    #[test]
    fn single_colour_matches_plain() {
        let coloured = ColouredPetriNet::new(
            vec![ColouredPlace::new("a"), ColouredPlace::new("b")],
            vec![Colour::with_prefix("tok", "")],
            vec![ColouredTransitionSpec::new(
                "t",
                &[("a", &[("tok", 2)])],
                &[("b", &[("tok", 1)])],
            )],
        )
        .unwrap();
        let u = coloured.unfold();
        let plain = PetriNet::new(
            vec!["a".into(), "b".into()],
            vec![TransitionSpec::new("t", &[("a", 2)], &[("b", 1)])],
        )
        .unwrap();
        assert_eq!(u.net, plain);
        let m0 = coloured.marking(&[("a", "tok", 5)]).unwrap();
        let gc = explore(&coloured, &m0, ExploreLimits::default());
        let gp = explore(&plain, &u.marking(&m0), ExploreLimits::default());
        assert_eq!(gc.len(), gp.len());
    }

    #[test]
    fn rejects_bad_colours() {
        let err = ColouredPetriNet::new(
            vec![ColouredPlace::restricted("p", &["pass"])],
            vec![Colour::new("pass"), Colour::new("fail")],
            vec![ColouredTransitionSpec::new(
                "t",
                &[("p", &[("fail", 1)])],
                &[("p", &[("blue", 1)])],
            )],
        )
        .unwrap_err();
        let NetError::Invalid(diags) = err else { panic!() };
        assert!(diags.iter().any(|d| d.message.contains("does not hold it")));
        assert!(diags.iter().any(|d| d.message.contains("undeclared colour `blue`")));
    }

    #[test]
    fn compass_unfolding_preserves_reach_graph() {
        let n = compass();
        let u = n.unfold();
        let m0 = crate::testnets::compass_initial(&n);
        let gc = explore(&n, &m0, ExploreLimits::default());
        let gp = explore(&u.net, &u.marking(&m0), ExploreLimits::default());
        // forward firing from the initial marking; the algebraic class has 43
        assert_eq!(gc.len(), 23);
        assert_eq!(gp.len(), gc.len());
        for m in gc.nodes() {
            assert!(gp.contains(&u.marking(m)));
            assert_eq!(&u.fold(&u.marking(m)), m);
        }
    }
}
