use std::collections::{HashMap, HashSet};

use super::{Diagnostic, FiringRule, NetError};

/// A transition as written by the user: weights refer to places by name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionSpec {
    pub id: String,
    pub inputs: Vec<(String, u32)>,
    pub outputs: Vec<(String, u32)>,
}

impl TransitionSpec {
    pub fn new(id: impl Into<String>, inputs: &[(&str, u32)], outputs: &[(&str, u32)]) -> Self {
        let own = |ws: &[(&str, u32)]| ws.iter().map(|&(p, w)| (p.to_string(), w)).collect();
        Self {
            id: id.into(),
            inputs: own(inputs),
            outputs: own(outputs),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transition {
    pub id: String,
    /// `(place index, weight)`, sorted by place, weights >= 1.
    pub inputs: Vec<(usize, u32)>,
    pub outputs: Vec<(usize, u32)>,
}

/// Token counts per place, indexed like the net's place list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Marking(pub Vec<u32>);

impl Marking {
    pub fn empty(places: usize) -> Self {
        Self(vec![0; places])
    }

    pub fn tokens(&self, place: usize) -> u32 {
        self.0[place]
    }

    pub fn total(&self) -> u64 {
        self.0.iter().map(|&t| u64::from(t)).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PetriNet {
    places: Vec<String>,
    place_index: HashMap<String, usize>,
    transitions: Vec<Transition>,
}

/// Checks a net description before it is turned into a [`PetriNet`].
pub fn validate_parts(places: &[String], transitions: &[TransitionSpec]) -> Vec<Diagnostic> {
    let mut diags = Vec::new();
    let mut seen = HashSet::new();
    for p in places {
        if !seen.insert(p.as_str()) {
            diags.push(Diagnostic::error(format!("duplicate place `{p}`")));
        }
    }
    let mut ids = HashSet::new();
    let mut touched = HashSet::new();
    for t in transitions {
        if !ids.insert(t.id.as_str()) {
            diags.push(Diagnostic::error(format!("duplicate transition `{}`", t.id)));
        }
        for (place, w) in t.inputs.iter().chain(&t.outputs) {
            if !seen.contains(place.as_str()) {
                diags.push(Diagnostic::error(format!(
                    "transition `{}` references undeclared place `{place}`",
                    t.id
                )));
            }
            if *w == 0 {
                diags.push(Diagnostic::error(format!(
                    "transition `{}` has zero weight on place `{place}`",
                    t.id
                )));
            }
            touched.insert(place.as_str());
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
        if !touched.contains(p.as_str()) {
            diags.push(Diagnostic::warning(format!("isolated place `{p}`")));
        }
    }
    diags
}

fn merge_weights(
    ws: &[(String, u32)],
    index: &HashMap<String, usize>,
) -> Result<Vec<(usize, u32)>, NetError> {
    let mut out: Vec<(usize, u32)> = Vec::with_capacity(ws.len());
    for (name, w) in ws {
        let p = *index
            .get(name)
            .ok_or_else(|| NetError::UnknownPlace(name.clone()))?;
        match out.iter_mut().find(|(q, _)| *q == p) {
            Some((_, acc)) => *acc += w,
            None => out.push((p, *w)),
        }
    }
    out.sort_unstable();
    Ok(out)
}

impl PetriNet {
    /// Builds a net, rejecting it if validation reports any error.
    pub fn new(places: Vec<String>, transitions: Vec<TransitionSpec>) -> Result<Self, NetError> {
        let errors: Vec<Diagnostic> = validate_parts(&places, &transitions)
            .into_iter()
            .filter(Diagnostic::is_error)
            .collect();
        if !errors.is_empty() {
            return Err(NetError::Invalid(errors));
        }
        let place_index: HashMap<String, usize> = places
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        let transitions = transitions
            .iter()
            .map(|t| {
                Ok(Transition {
                    id: t.id.clone(),
                    inputs: merge_weights(&t.inputs, &place_index)?,
                    outputs: merge_weights(&t.outputs, &place_index)?,
                })
            })
            .collect::<Result<_, NetError>>()?;
        Ok(Self {
            places,
            place_index,
            transitions,
        })
    }

    pub fn places(&self) -> &[String] {
        &self.places
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn place_index(&self, name: &str) -> Option<usize> {
        self.place_index.get(name).copied()
    }

    pub fn transition_index(&self, id: &str) -> Result<usize, NetError> {
        self.transitions
            .iter()
            .position(|t| t.id == id)
            .ok_or_else(|| NetError::UnknownTransition(id.to_string()))
    }

    /// The description this net was built from, with merged weights.
    pub fn specs(&self) -> Vec<TransitionSpec> {
        let named = |ws: &[(usize, u32)]| {
            ws.iter()
                .map(|&(p, w)| (self.places[p].clone(), w))
                .collect()
        };
        self.transitions
            .iter()
            .map(|t| TransitionSpec {
                id: t.id.clone(),
                inputs: named(&t.inputs),
                outputs: named(&t.outputs),
            })
            .collect()
    }

    /// Warnings for a net that already passed construction.
    pub fn validate(&self) -> Vec<Diagnostic> {
        validate_parts(&self.places, &self.specs())
    }

    /// A marking from `(place name, tokens)` pairs.
    pub fn marking(&self, tokens: &[(&str, u32)]) -> Result<Marking, NetError> {
        let mut m = Marking::empty(self.places.len());
        for &(name, n) in tokens {
            let p = self
                .place_index(name)
                .ok_or_else(|| NetError::UnknownPlace(name.to_string()))?;
            m.0[p] += n;
        }
        Ok(m)
    }

    pub fn enabled(&self, m: &Marking, transition: &str) -> Result<bool, NetError> {
        let t = self.transition_index(transition)?;
        Ok(self.is_enabled(m, t))
    }

    pub fn fire(&self, m: &Marking, transition: &str) -> Result<Marking, NetError> {
        let t = self.transition_index(transition)?;
        if !self.is_enabled(m, t) {
            return Err(NetError::NotEnabled(transition.to_string()));
        }
        Ok(self.fire_enabled(m, t))
    }
}

impl FiringRule for PetriNet {
    type Marking = Marking;

    fn transition_count(&self) -> usize {
        self.transitions.len()
    }

    fn transition_id(&self, t: usize) -> &str {
        &self.transitions[t].id
    }

    fn is_enabled(&self, m: &Marking, t: usize) -> bool {
        self.transitions[t]
            .inputs
            .iter()
            .all(|&(p, w)| m.0[p] >= w)
    }

    fn fire_enabled(&self, m: &Marking, t: usize) -> Marking {
        let tr = &self.transitions[t];
        let mut next = m.clone();
        for &(p, w) in &tr.inputs {
            next.0[p] -= w;
        }
        for &(p, w) in &tr.outputs {
            next.0[p] += w;
        }
        next
    }

    fn unfire(&self, m: &Marking, t: usize) -> Option<Marking> {
        let tr = &self.transitions[t];
        if tr.outputs.iter().any(|&(p, w)| m.0[p] < w) {
            return None;
        }
        let mut prev = m.clone();
        for &(p, w) in &tr.outputs {
            prev.0[p] -= w;
        }
        for &(p, w) in &tr.inputs {
            prev.0[p] += w;
        }
        Some(prev)
    }

    fn token_count(&self, m: &Marking) -> u64 {
        m.total()
    }
}
