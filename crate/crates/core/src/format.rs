//! Line-oriented net description format. See `docs/net-format.md`.

use std::collections::{HashMap, HashSet};
use std::fmt::{self, Write as _};

use crate::net::{
    Colour, ColouredMarking, ColouredPetriNet, ColouredPlace, ColouredTransitionSpec, Diagnostic,
    Marking, NetError, PetriNet, TransitionSpec,
};
use crate::poly::MonomialOrder;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NetKind {
    Plain,
    Coloured,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NetBody {
    Plain {
        places: Vec<String>,
        transitions: Vec<TransitionSpec>,
        init: Vec<(String, u32)>,
    },
    Coloured {
        colours: Vec<Colour>,
        places: Vec<ColouredPlace>,
        transitions: Vec<ColouredTransitionSpec>,
        init: Vec<(String, String, u32)>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NetDocument {
    pub version: u32,
    pub name: String,
    pub order: Option<MonomialOrder>,
    /// Variable sequence, smallest first.
    pub vars: Option<Vec<String>>,
    /// Reversibility asserted by the author of the file.
    pub reversible: Option<bool>,
    pub body: NetBody,
}

#[derive(Debug, Clone)]
pub enum LoadedNet {
    Plain { net: PetriNet, initial: Marking },
    Coloured { net: ColouredPetriNet, initial: ColouredMarking },
}

impl NetDocument {
    pub fn kind(&self) -> NetKind {
        match self.body {
            NetBody::Plain { .. } => NetKind::Plain,
            NetBody::Coloured { .. } => NetKind::Coloured,
        }
    }

    pub fn load(&self) -> Result<LoadedNet, NetError> {
        match &self.body {
            NetBody::Plain {
                places,
                transitions,
                init,
            } => {
                let net = PetriNet::new(places.clone(), transitions.clone())?;
                let pairs: Vec<(&str, u32)> = init.iter().map(|(p, n)| (p.as_str(), *n)).collect();
                let initial = net.marking(&pairs)?;
                Ok(LoadedNet::Plain { net, initial })
            }
            NetBody::Coloured {
                colours,
                places,
                transitions,
                init,
            } => {
                let net =
                    ColouredPetriNet::new(places.clone(), colours.clone(), transitions.clone())?;
                let triples: Vec<(&str, &str, u32)> = init
                    .iter()
                    .map(|(p, c, n)| (p.as_str(), c.as_str(), *n))
                    .collect();
                let initial = net.marking(&triples)?;
                Ok(LoadedNet::Coloured { net, initial })
            }
        }
    }

    /// Validation findings for the described net.
    pub fn validate(&self) -> Vec<Diagnostic> {
        match &self.body {
            NetBody::Plain {
                places,
                transitions,
                ..
            } => crate::net::validate_parts(places, transitions),
            NetBody::Coloured {
                colours,
                places,
                transitions,
                ..
            } => ColouredPetriNet::validate_parts(places, colours, transitions),
        }
    }

    /// A plain document describing `net` started at `initial`.
    pub fn from_plain(name: &str, net: &PetriNet, initial: &Marking) -> Self {
        let init = net
            .places()
            .iter()
            .zip(&initial.0)
            .filter(|(_, &n)| n > 0)
            .map(|(p, &n)| (p.clone(), n))
            .collect();
        Self {
            version: FORMAT_VERSION,
            name: name.to_string(),
            order: None,
            vars: None,
            reversible: None,
            body: NetBody::Plain {
                places: net.places().to_vec(),
                transitions: net.specs(),
                init,
            },
        }
    }
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '.' | '\'' | '@')
}

fn is_ident(s: &str) -> bool {
    !s.is_empty() && s.chars().all(is_ident_char)
}

/// A slice of the current line with its 1-based starting column.
#[derive(Clone, Copy)]
struct Span<'a> {
    text: &'a str,
    col: usize,
}

impl<'a> Span<'a> {
    fn trim(self) -> Span<'a> {
        let start = self.text.len() - self.text.trim_start().len();
        Span {
            text: self.text.trim(),
            col: self.col + self.text[..start].chars().count(),
        }
    }

    fn split_at(self, byte: usize) -> (Span<'a>, Span<'a>) {
        let (a, b) = self.text.split_at(byte);
        (
            Span { text: a, col: self.col },
            Span {
                text: b,
                col: self.col + a.chars().count(),
            },
        )
    }

    /// Pieces between `sep`, each trimmed.
    fn split(self, sep: char) -> Vec<Span<'a>> {
        let mut out = Vec::new();
        let mut rest = self;
        while let Some(i) = rest.text.find(sep) {
            let (head, tail) = rest.split_at(i);
            out.push(head.trim());
            rest = tail.split_at(sep.len_utf8()).1;
        }
        out.push(rest.trim());
        out
    }

    fn words(self) -> Vec<Span<'a>> {
        let mut out = Vec::new();
        let mut start: Option<(usize, usize)> = None;
        for (col, (i, c)) in (self.col..).zip(self.text.char_indices()) {
            if c.is_whitespace() {
                if let Some((s, sc)) = start.take() {
                    out.push(Span {
                        text: &self.text[s..i],
                        col: sc,
                    });
                }
            } else if start.is_none() {
                start = Some((i, col));
            }
        }
        if let Some((s, sc)) = start {
            out.push(Span {
                text: &self.text[s..],
                col: sc,
            });
        }
        out
    }
}

struct Parser {
    line: usize,
}

impl Parser {
    fn err<T>(&self, span: Span<'_>, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            line: self.line,
            column: span.col,
            message: message.into(),
        })
    }

    fn ident<'a>(&self, span: Span<'a>, what: &str) -> Result<&'a str, ParseError> {
        if is_ident(span.text) {
            Ok(span.text)
        } else if span.text.is_empty() {
            self.err(span, format!("expected {what}"))
        } else {
            self.err(span, format!("invalid {what} `{}`", span.text))
        }
    }

    fn count(&self, span: Span<'_>) -> Result<u32, ParseError> {
        match span.text.parse::<u32>() {
            Ok(0) => self.err(span, "weight must be at least 1"),
            Ok(n) => Ok(n),
            Err(_) => self.err(span, format!("expected a positive integer, found `{}`", span.text)),
        }
    }

    /// `name` or `name^k`.
    fn power<'a>(&self, span: Span<'a>, what: &str) -> Result<(Span<'a>, u32), ParseError> {
        match span.text.find('^') {
            Some(i) => {
                let (name, rest) = span.split_at(i);
                let exp = rest.split_at(1).1.trim();
                Ok((name.trim(), self.count(exp)?))
            }
            None => {
                self.ident(span, what)?;
                Ok((span, 1))
            }
        }
    }
}

/// Resolves names inside weight lists and marking literals.
struct Scope {
    kind: NetKind,
    places: Vec<String>,
    place_set: HashSet<String>,
    colours: Vec<String>,
    /// variable name -> (place, colour) for coloured nets
    variables: HashMap<String, (String, String)>,
}

impl Scope {
    fn plain(places: &[String]) -> Self {
        Self {
            kind: NetKind::Plain,
            places: places.to_vec(),
            place_set: places.iter().cloned().collect(),
            colours: Vec::new(),
            variables: HashMap::new(),
        }
    }

    fn coloured(places: &[ColouredPlace], colours: &[Colour]) -> Self {
        let colour_names: Vec<String> = colours.iter().map(|c| c.name.clone()).collect();
        let mut variables = HashMap::new();
        for p in places {
            let allowed = p.colours.clone().unwrap_or_else(|| colour_names.clone());
            for c in colours.iter().filter(|c| allowed.contains(&c.name)) {
                let var = match &c.prefix {
                    Some(prefix) => format!("{prefix}{}", p.name),
                    None => format!("{}@{}", p.name, c.name),
                };
                variables.insert(var, (p.name.clone(), c.name.clone()));
            }
        }
        Self {
            kind: NetKind::Coloured,
            places: places.iter().map(|p| p.name.clone()).collect(),
            place_set: places.iter().map(|p| p.name.clone()).collect(),
            colours: colour_names,
            variables,
        }
    }

    /// Exact place name, else a 1-based place position.
    fn place(&self, name: &str) -> Option<String> {
        if self.place_set.contains(name) {
            return Some(name.to_string());
        }
        let k: usize = name.parse().ok()?;
        (1..=self.places.len())
            .contains(&k)
            .then(|| self.places[k - 1].clone())
    }
}

/// One item of a weight list or marking literal, resolved.
enum Item {
    Plain(String, u32),
    Coloured(String, Vec<(String, u32)>),
}

impl Parser {
    fn item(&self, scope: &Scope, span: Span<'_>, counts: bool) -> Result<Item, ParseError> {
        if span.text.is_empty() {
            return self.err(span, "empty item");
        }
        if let Some(i) = span.text.find(':') {
            let (place_span, rest) = span.split_at(i);
            let rest = rest.split_at(1).1.trim();
            let place_span = place_span.trim();
            self.ident(place_span, "place")?;
            let Some(place) = scope.place(place_span.text) else {
                return self.err(place_span, format!("unknown place `{}`", place_span.text));
            };
            return match scope.kind {
                NetKind::Plain if counts => Ok(Item::Plain(place, self.count(rest)?)),
                NetKind::Plain => self.err(span, "use `place` or `place^k` for weights"),
                NetKind::Coloured => {
                    let mut bag: Vec<(String, u32)> = Vec::new();
                    for factor in rest.split('*') {
                        let (colour, n) = self.power(factor, "colour")?;
                        if !scope.colours.iter().any(|c| c == colour.text) {
                            return self.err(colour, format!("unknown colour `{}`", colour.text));
                        }
                        match bag.iter_mut().find(|(c, _)| c == colour.text) {
                            Some((_, acc)) => *acc += n,
                            None => bag.push((colour.text.to_string(), n)),
                        }
                    }
                    Ok(Item::Coloured(place, bag))
                }
            };
        }
        let (name, n) = self.power(span, "place")?;
        match scope.kind {
            NetKind::Plain => match scope.place(name.text) {
                Some(p) => Ok(Item::Plain(p, n)),
                None => self.err(name, format!("unknown place `{}`", name.text)),
            },
            NetKind::Coloured => match scope.variables.get(name.text) {
                Some((p, c)) => Ok(Item::Coloured(p.clone(), vec![(c.clone(), n)])),
                None => self.err(name, format!("unknown variable `{}`", name.text)),
            },
        }
    }

    fn items(&self, scope: &Scope, span: Span<'_>, counts: bool) -> Result<Vec<Item>, ParseError> {
        let span = span.trim();
        if span.text.is_empty() {
            return Ok(Vec::new());
        }
        span.split(',')
            .into_iter()
            .map(|s| self.item(scope, s, counts))
            .collect()
    }
}

/// Parses a marking literal such as `x3*x6^2`, `3:1,6:2` or
/// `18:pass*fail, 1:pass`. Commas and `*` both separate plain items.
pub fn parse_marking(doc_net: &LoadedNet, text: &str) -> Result<MarkingValue, ParseError> {
    let p = Parser { line: 1 };
    let span = Span { text, col: 1 };
    match doc_net {
        LoadedNet::Plain { net, .. } => {
            let scope = Scope::plain(net.places());
            let mut m = Marking::empty(net.places().len());
            for piece in span.split(',') {
                for item in split_products(piece) {
                    if let Item::Plain(place, n) = p.item(&scope, item, true)? {
                        m.0[net.place_index(&place).unwrap()] += n;
                    }
                }
            }
            Ok(MarkingValue::Plain(m))
        }
        LoadedNet::Coloured { net, .. } => {
            let places: Vec<ColouredPlace> = net.places().to_vec();
            let scope = Scope::coloured(&places, net.colours());
            let mut m = net.empty_marking();
            let nc = net.colours().len();
            for piece in span.split(',') {
                let pieces = if piece.text.contains(':') {
                    vec![piece]
                } else {
                    split_products(piece)
                };
                for item in pieces {
                    if item.text == "1" {
                        continue;
                    }
                    if let Item::Coloured(place, bag) = p.item(&scope, item, true)? {
                        let pi = net.place_index(&place).unwrap();
                        for (c, n) in bag {
                            let ci = net.colour_index(&c).unwrap();
                            if !net.allowed_colours(pi).contains(&ci) {
                                return p.err(item, format!("place `{place}` cannot hold `{c}`"));
                            }
                            m.0[pi * nc + ci] += n;
                        }
                    }
                }
            }
            Ok(MarkingValue::Coloured(m))
        }
    }
}

fn split_products(span: Span<'_>) -> Vec<Span<'_>> {
    if span.text.trim().is_empty() {
        return Vec::new();
    }
    span.split('*')
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MarkingValue {
    Plain(Marking),
    Coloured(ColouredMarking),
}

pub fn parse_net(text: &str) -> Result<NetDocument, ParseError> {
    let mut version = None;
    let mut name = None;
    let mut kind = None;
    let mut order = None;
    let mut vars = None;
    let mut reversible = None;
    let mut colours: Option<Vec<Colour>> = None;
    let mut places: Option<Vec<ColouredPlace>> = None;
    let mut scope: Option<Scope> = None;
    let mut plain_transitions: Vec<TransitionSpec> = Vec::new();
    let mut coloured_transitions: Vec<ColouredTransitionSpec> = Vec::new();
    let mut ids: HashSet<String> = HashSet::new();
    let mut init: Option<Vec<Item>> = None;
    let mut last_line = 0;

    for (i, raw) in text.lines().enumerate() {
        let p = Parser { line: i + 1 };
        last_line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let line = Span { text: content, col: 1 }.trim();
        if line.text.is_empty() {
            continue;
        }
        let (keyword, rest) = match line.text.find(char::is_whitespace) {
            Some(k) => {
                let (a, b) = line.split_at(k);
                (a, b.trim())
            }
            None => (line, Span { text: "", col: line.col + line.text.chars().count() }),
        };
        if version.is_none() && keyword.text != "format:" {
            return p.err(keyword, "file must start with `format: 1`");
        }
        match keyword.text {
            "format:" => {
                if version.is_some() {
                    return p.err(keyword, "duplicate `format:`");
                }
                match rest.text.parse::<u32>() {
                    Ok(FORMAT_VERSION) => version = Some(FORMAT_VERSION),
                    _ => return p.err(rest, format!("unsupported format version `{}`", rest.text)),
                }
            }
            "name:" => name = Some(p.ident(rest, "net name")?.to_string()),
            "kind:" => {
                if places.is_some() {
                    return p.err(keyword, "`kind:` must precede `places:`");
                }
                kind = Some(match rest.text {
                    "plain" => NetKind::Plain,
                    "coloured" | "colored" => NetKind::Coloured,
                    _ => return p.err(rest, "kind must be `plain` or `coloured`"),
                })
            }
            "order:" => match rest.text.parse::<MonomialOrder>() {
                Ok(o) => order = Some(o),
                Err(e) => return p.err(rest, e.to_string()),
            },
            "reversible:" => {
                reversible = Some(match rest.text {
                    "yes" => true,
                    "no" => false,
                    _ => return p.err(rest, "expected `yes` or `no`"),
                })
            }
            "vars:" => {
                let mut seen = HashSet::new();
                let mut list = Vec::new();
                for w in rest.words() {
                    let v = p.ident(w, "variable")?;
                    if !seen.insert(v) {
                        return p.err(w, format!("duplicate variable `{v}`"));
                    }
                    list.push(v.to_string());
                }
                vars = Some(list);
            }
            "colours:" | "colors:" => {
                if kind != Some(NetKind::Coloured) {
                    return p.err(keyword, "`colours:` needs `kind: coloured` first");
                }
                if places.is_some() {
                    return p.err(keyword, "`colours:` must precede `places:`");
                }
                let mut list: Vec<Colour> = Vec::new();
                for w in rest.words() {
                    let (cname, prefix) = match w.text.find('=') {
                        Some(k) => {
                            let (a, b) = w.split_at(k);
                            let b = b.split_at(1).1;
                            if !b.text.is_empty() && !is_ident(b.text) {
                                return p.err(b, format!("invalid prefix `{}`", b.text));
                            }
                            (a, Some(b.text.to_string()))
                        }
                        None => (w, None),
                    };
                    let cname = p.ident(cname, "colour")?;
                    if list.iter().any(|c| c.name == cname) {
                        return p.err(w, format!("duplicate colour `{cname}`"));
                    }
                    list.push(Colour {
                        name: cname.to_string(),
                        prefix,
                    });
                }
                if list.is_empty() {
                    return p.err(rest, "expected at least one colour");
                }
                colours = Some(list);
            }
            "places:" => {
                let k = match kind {
                    Some(k) => k,
                    None => return p.err(keyword, "`kind:` must precede `places:`"),
                };
                if places.is_some() {
                    return p.err(keyword, "duplicate `places:`");
                }
                if k == NetKind::Coloured && colours.is_none() {
                    return p.err(keyword, "`colours:` must precede `places:`");
                }
                let mut list: Vec<ColouredPlace> = Vec::new();
                for w in rest.words() {
                    let (pname, restriction) = match w.text.find('{') {
                        Some(b) => {
                            if k == NetKind::Plain {
                                return p.err(w, "colour lists are only allowed in coloured nets");
                            }
                            let (a, r) = w.split_at(b);
                            let Some(inner) = r.text.strip_prefix('{').and_then(|s| s.strip_suffix('}')) else {
                                return p.err(r, "expected `{colour,...}`");
                            };
                            let inner = Span { text: inner, col: r.col + 1 };
                            let mut cs = Vec::new();
                            for c in inner.split(',') {
                                let c = p.ident(c, "colour")?;
                                if !colours.as_ref().unwrap().iter().any(|x| x.name == c) {
                                    return p.err(inner, format!("unknown colour `{c}`"));
                                }
                                cs.push(c.to_string());
                            }
                            (a, Some(cs))
                        }
                        None => (w, None),
                    };
                    let pname = p.ident(pname, "place")?;
                    if list.iter().any(|q| q.name == pname) {
                        return p.err(w, format!("duplicate place `{pname}`"));
                    }
                    list.push(ColouredPlace {
                        name: pname.to_string(),
                        colours: restriction,
                    });
                }
                scope = Some(match k {
                    NetKind::Plain => {
                        let names: Vec<String> = list.iter().map(|q| q.name.clone()).collect();
                        Scope::plain(&names)
                    }
                    NetKind::Coloured => Scope::coloured(&list, colours.as_ref().unwrap()),
                });
                places = Some(list);
            }
            "transition" => {
                let Some(sc) = scope.as_ref() else {
                    return p.err(keyword, "`places:` must precede transitions");
                };
                let (id_span, body) = match rest.text.find(char::is_whitespace) {
                    Some(k) => {
                        let (a, b) = rest.split_at(k);
                        (a, b.trim())
                    }
                    None => (rest, Span { text: "", col: rest.col + rest.text.len() }),
                };
                let id = p.ident(id_span, "transition id")?;
                if !ids.insert(id.to_string()) {
                    return p.err(id_span, format!("duplicate transition `{id}`"));
                }
                let (ins, outs) = split_in_out(&p, body)?;
                let inputs = match ins {
                    Some(s) => p.items(sc, s, false)?,
                    None => Vec::new(),
                };
                let outputs = match outs {
                    Some(s) => p.items(sc, s, false)?,
                    None => Vec::new(),
                };
                match sc.kind {
                    NetKind::Plain => plain_transitions.push(TransitionSpec {
                        id: id.to_string(),
                        inputs: plain_items(inputs),
                        outputs: plain_items(outputs),
                    }),
                    NetKind::Coloured => {
                        let resolve = |items: Vec<Item>| -> Vec<(String, Vec<(String, u32)>)> {
                            let mut out: Vec<(String, Vec<(String, u32)>)> = Vec::new();
                            for it in items {
                                if let Item::Coloured(place, bag) = it {
                                    match out.iter_mut().find(|(q, _)| *q == place) {
                                        Some((_, acc)) => merge_bag(acc, bag),
                                        None => out.push((place, bag)),
                                    }
                                }
                            }
                            out
                        };
                        let spec = ColouredTransitionSpec {
                            id: id.to_string(),
                            inputs: resolve(inputs),
                            outputs: resolve(outputs),
                        };
                        check_colours_allowed(&p, &spec, places.as_ref().unwrap(), rest)?;
                        coloured_transitions.push(spec);
                    }
                }
            }
            "init:" => {
                let Some(sc) = scope.as_ref() else {
                    return p.err(keyword, "`places:` must precede `init:`");
                };
                if init.is_some() {
                    return p.err(keyword, "duplicate `init:`");
                }
                let mut items = Vec::new();
                for piece in rest.split(',') {
                    if piece.text.is_empty() {
                        continue;
                    }
                    let parts = if piece.text.contains(':') && sc.kind == NetKind::Coloured {
                        vec![piece]
                    } else {
                        split_products(piece)
                    };
                    for part in parts {
                        items.push(p.item(sc, part, true)?);
                    }
                }
                init = Some(items);
            }
            other => return p.err(keyword, format!("unknown directive `{other}`")),
        }
    }

    let end = Parser { line: last_line.max(1) };
    let at_end = Span { text: "", col: 1 };
    let Some(version) = version else {
        return end.err(at_end, "empty file; expected `format: 1`");
    };
    let Some(name) = name else {
        return end.err(at_end, "missing `name:`");
    };
    let Some(kind) = kind else {
        return end.err(at_end, "missing `kind:`");
    };
    let Some(places) = places else {
        return end.err(at_end, "missing `places:`");
    };
    let init = init.unwrap_or_default();
    let body = match kind {
        NetKind::Plain => {
            let names: Vec<String> = places.into_iter().map(|q| q.name).collect();
            let mut init = plain_items(init);
            init.sort_by_key(|(p, _)| names.iter().position(|q| q == p));
            NetBody::Plain {
                places: names,
                transitions: plain_transitions,
                init,
            }
        }
        NetKind::Coloured => {
            let mut triples: Vec<(String, String, u32)> = Vec::new();
            for it in init {
                if let Item::Coloured(place, bag) = it {
                    for (c, n) in bag {
                        match triples.iter_mut().find(|(q, d, _)| *q == place && *d == c) {
                            Some((_, _, acc)) => *acc += n,
                            None => triples.push((place.clone(), c, n)),
                        }
                    }
                }
            }
            let colours = colours.unwrap_or_default();
            // canonical order: place declaration, then colour declaration
            triples.sort_by_key(|(p, c, _)| {
                (
                    places.iter().position(|q| &q.name == p),
                    colours.iter().position(|d| &d.name == c),
                )
            });
            NetBody::Coloured {
                colours,
                places,
                transitions: coloured_transitions,
                init: triples,
            }
        }
    };
    Ok(NetDocument {
        version,
        name,
        order,
        vars,
        reversible,
        body,
    })
}

fn plain_items(items: Vec<Item>) -> Vec<(String, u32)> {
    let mut out: Vec<(String, u32)> = Vec::new();
    for it in items {
        if let Item::Plain(place, n) = it {
            match out.iter_mut().find(|(q, _)| *q == place) {
                Some((_, acc)) => *acc += n,
                None => out.push((place, n)),
            }
        }
    }
    out
}

fn merge_bag(acc: &mut Vec<(String, u32)>, bag: Vec<(String, u32)>) {
    for (c, n) in bag {
        match acc.iter_mut().find(|(d, _)| *d == c) {
            Some((_, k)) => *k += n,
            None => acc.push((c, n)),
        }
    }
}

fn check_colours_allowed(
    p: &Parser,
    spec: &ColouredTransitionSpec,
    places: &[ColouredPlace],
    at: Span<'_>,
) -> Result<(), ParseError> {
    for (place, bag) in spec.inputs.iter().chain(&spec.outputs) {
        let decl = places.iter().find(|q| &q.name == place).unwrap();
        if let Some(allowed) = &decl.colours {
            for (c, _) in bag {
                if !allowed.contains(c) {
                    return p.err(at, format!("place `{place}` cannot hold colour `{c}`"));
                }
            }
        }
    }
    Ok(())
}

/// Splits `in: ... out: ...` into its two lists.
fn split_in_out<'a>(
    p: &Parser,
    body: Span<'a>,
) -> Result<(Option<Span<'a>>, Option<Span<'a>>), ParseError> {
    if body.text.is_empty() {
        return Ok((None, None));
    }
    let find = |kw: &str| {
        body.text
            .match_indices(kw)
            .find(|(i, _)| *i == 0 || body.text[..*i].ends_with(char::is_whitespace))
            .map(|(i, _)| i)
    };
    let in_at = find("in:");
    let out_at = find("out:");
    match (in_at, out_at) {
        (Some(0), Some(o)) => {
            let (a, b) = body.split_at(o);
            Ok((Some(a.split_at(3).1), Some(b.split_at(4).1)))
        }
        (Some(0), None) => Ok((Some(body.split_at(3).1), None)),
        (None, Some(0)) => Ok((None, Some(body.split_at(4).1))),
        _ => p.err(body, "expected `in: <weights>` and/or `out: <weights>`"),
    }
}

fn write_power(out: &mut String, name: &str, n: u32) {
    out.push_str(name);
    if n > 1 {
        let _ = write!(out, "^{n}");
    }
}

fn write_bag(out: &mut String, bag: &[(String, u32)]) {
    for (i, (c, n)) in bag.iter().enumerate() {
        if i > 0 {
            out.push('*');
        }
        write_power(out, c, *n);
    }
}

/// Canonical text for a document; `parse_net(emit(d)) == d` for documents
/// produced by the parser.
pub fn emit(doc: &NetDocument) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "format: {}", doc.version);
    let _ = writeln!(out, "name: {}", doc.name);
    match &doc.body {
        NetBody::Plain {
            places,
            transitions,
            init,
        } => {
            out.push_str("kind: plain\n");
            emit_options(&mut out, doc);
            let _ = writeln!(out, "places: {}", places.join(" "));
            for t in transitions {
                let _ = write!(out, "transition {}", t.id);
                for (kw, ws) in [("in:", &t.inputs), ("out:", &t.outputs)] {
                    if ws.is_empty() {
                        continue;
                    }
                    let _ = write!(out, " {kw} ");
                    for (i, (p, n)) in ws.iter().enumerate() {
                        if i > 0 {
                            out.push_str(", ");
                        }
                        write_power(&mut out, p, *n);
                    }
                }
                out.push('\n');
            }
            out.push_str("init:");
            for (i, (p, n)) in init.iter().enumerate() {
                out.push_str(if i == 0 { " " } else { ", " });
                write_power(&mut out, p, *n);
            }
            out.push('\n');
        }
        NetBody::Coloured {
            colours,
            places,
            transitions,
            init,
        } => {
            out.push_str("kind: coloured\n");
            emit_options(&mut out, doc);
            out.push_str("colours:");
            for c in colours {
                let _ = write!(out, " {}", c.name);
                if let Some(prefix) = &c.prefix {
                    let _ = write!(out, "={prefix}");
                }
            }
            out.push('\n');
            out.push_str("places:");
            for q in places {
                let _ = write!(out, " {}", q.name);
                if let Some(cs) = &q.colours {
                    let _ = write!(out, "{{{}}}", cs.join(","));
                }
            }
            out.push('\n');
            for t in transitions {
                let _ = write!(out, "transition {}", t.id);
                for (kw, ws) in [("in:", &t.inputs), ("out:", &t.outputs)] {
                    if ws.is_empty() {
                        continue;
                    }
                    let _ = write!(out, " {kw} ");
                    for (i, (p, bag)) in ws.iter().enumerate() {
                        if i > 0 {
                            out.push_str(", ");
                        }
                        let _ = write!(out, "{p}:");
                        write_bag(&mut out, bag);
                    }
                }
                out.push('\n');
            }
            out.push_str("init:");
            let mut grouped: Vec<(String, Vec<(String, u32)>)> = Vec::new();
            for (p, c, n) in init {
                match grouped.iter_mut().find(|(q, _)| q == p) {
                    Some((_, bag)) => bag.push((c.clone(), *n)),
                    None => grouped.push((p.clone(), vec![(c.clone(), *n)])),
                }
            }
            for (i, (p, bag)) in grouped.iter().enumerate() {
                out.push_str(if i == 0 { " " } else { ", " });
                let _ = write!(out, "{p}:");
                write_bag(&mut out, bag);
            }
            out.push('\n');
        }
    }
    if let Some(vars) = &doc.vars {
        let _ = writeln!(out, "vars: {}", vars.join(" "));
    }
    out
}

fn emit_options(out: &mut String, doc: &NetDocument) {
    if let Some(order) = doc.order {
        let _ = writeln!(out, "order: {order}");
    }
    if let Some(r) = doc.reversible {
        let _ = writeln!(out, "reversible: {}", if r { "yes" } else { "no" });
    }
}

impl fmt::Display for NetDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&emit(self))
    }
}
