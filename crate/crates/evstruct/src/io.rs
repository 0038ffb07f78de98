//! The line-oriented model format.
//!
//! ```text
//! // or-causality
//! kind cdes
//! events a b c
//! conflict a b
//! entry a : ({}|{})
//! entry b : ({}|{})
//! entry c : ({a}|{}) ({b}|{})
//! ```
//!
//! One declaration per line, `//` starts a comment, sets are written
//! `{a b c}`. Which declarations are allowed depends on the `kind` line:
//!
//! | kind | declarations |
//! |------|--------------|
//! | `cdes` | `conflict a b`, `entry e : ({X}\|{Y}) ...` |
//! | `pes`  | `conflict a b`, `le a b` |
//! | `fes`  | `conflict a b`, `flow a b`, `selfconflict a` |
//! | `rpes` | `conflict a b`, `en a b` |
//! | `dces` | `conflict a b`, `en a b`, `shrink mod=M target=T contrib=C`, `grow mod=M target=T contrib=C` |
//! | `ies`  | `inh {a} e {A}` (the first set has at most one event) |
//! | `rces` | `turnstile {X} {Y}` |
//! | `ea`   | `init {}`, `state {a b}`, `trans {a} {a b}` |

use std::collections::BTreeSet;
use std::fmt::Write as _;

use evstruct_core::classical::Relation;
use evstruct_core::{
    CdEntry, Cdes, ConflictRelation, Dces, EntryElement, EventAutomaton, EventId, EventSet, Fes, GrowTriple, Ies,
    InhibitorTriple, Kind, Lattice, Pes, Rces, Rpes, Rule, ShrinkTriple, Structure, ValidationError,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("line {line}, column {col}: {message}")]
    Syntax { line: usize, col: usize, message: String },

    #[error("{}{rule}: {witness}", line.map(|l| format!("line {l}: ")).unwrap_or_default())]
    Validation { rule: Rule, witness: String, line: Option<usize> },
}

impl ParseError {
    fn syntax(line: usize, col: usize, message: impl Into<String>) -> Self {
        ParseError::Syntax { line, col, message: message.into() }
    }

    fn validation(e: ValidationError, line: Option<usize>) -> Self {
        ParseError::Validation { rule: e.rule, witness: e.witness, line }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Word(String),
    Punct(char),
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    col: usize,
}

fn lex(text: &str, line: usize) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c == '/' && chars.get(i + 1) == Some(&'/') {
            break;
        } else if c.is_ascii_alphanumeric() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token { tok: Tok::Word(chars[start..i].iter().collect()), col: start + 1 });
        } else if "{}()|:=".contains(c) {
            out.push(Token { tok: Tok::Punct(c), col: i + 1 });
            i += 1;
        } else {
            return Err(ParseError::syntax(line, i + 1, format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

/// An event mention, kept for reporting undeclared events by position.
struct Mention {
    event: EventId,
    line: usize,
}

struct Cursor<'a> {
    toks: &'a [Token],
    pos: usize,
    line: usize,
    end_col: usize,
    mentions: &'a mut Vec<Mention>,
}

impl Cursor<'_> {
    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |t| t.col)
    }

    fn err(&self, message: impl Into<String>) -> ParseError {
        ParseError::syntax(self.line, self.col(), message)
    }

    fn peek_punct(&self, c: char) -> bool {
        matches!(self.toks.get(self.pos), Some(Token { tok: Tok::Punct(p), .. }) if *p == c)
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn word(&mut self, what: &str) -> Result<String, ParseError> {
        match self.toks.get(self.pos) {
            Some(Token { tok: Tok::Word(w), .. }) => {
                self.pos += 1;
                Ok(w.clone())
            }
            _ => Err(self.err(format!("expected {what}"))),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        let col = self.col();
        let w = self.word(&format!("`{kw}`"))?;
        if w == kw {
            Ok(())
        } else {
            Err(ParseError::syntax(self.line, col, format!("expected `{kw}`, found `{w}`")))
        }
    }

    fn punct(&mut self, c: char) -> Result<(), ParseError> {
        if self.peek_punct(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected `{c}`")))
        }
    }

    fn event(&mut self) -> Result<EventId, ParseError> {
        let col = self.col();
        let w = self.word("an event name")?;
        let e = EventId::new(w).map_err(|e| ParseError::syntax(self.line, col, e.to_string()))?;
        self.mentions.push(Mention { event: e.clone(), line: self.line });
        Ok(e)
    }

    fn set(&mut self) -> Result<EventSet, ParseError> {
        self.punct('{')?;
        let mut out = EventSet::new();
        while !self.peek_punct('}') {
            if self.at_end() {
                return Err(self.err("unterminated set, expected `}`"));
            }
            out.insert(self.event()?);
        }
        self.punct('}')?;
        Ok(out)
    }

    fn named(&mut self, key: &str) -> Result<EventId, ParseError> {
        self.keyword(key)?;
        self.punct('=')?;
        self.event()
    }

    fn finish(&self) -> Result<(), ParseError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.err("unexpected trailing input"))
        }
    }
}

/// Everything a file may declare, before kind-specific validation.
#[derive(Default)]
struct Decls {
    events: EventSet,
    conflict: Vec<(EventId, EventId, usize)>,
    entries: Vec<(EventId, Vec<EntryElement>, usize)>,
    pairs: Relation,
    self_conflict: EventSet,
    shrink: BTreeSet<ShrinkTriple>,
    grow: BTreeSet<GrowTriple>,
    inh: BTreeSet<InhibitorTriple>,
    turnstile: BTreeSet<(EventSet, EventSet)>,
    init: Option<EventSet>,
    states: BTreeSet<EventSet>,
    trans: BTreeSet<(EventSet, EventSet)>,
}

fn allowed(kind: Kind, directive: &str) -> bool {
    match directive {
        "events" => true,
        "conflict" => matches!(kind, Kind::Cdes | Kind::Pes | Kind::Fes | Kind::Rpes | Kind::Dces),
        "entry" => kind == Kind::Cdes,
        "le" => kind == Kind::Pes,
        "flow" | "selfconflict" => kind == Kind::Fes,
        "en" => matches!(kind, Kind::Rpes | Kind::Dces),
        "shrink" | "grow" => kind == Kind::Dces,
        "inh" => kind == Kind::Ies,
        "turnstile" => kind == Kind::Rces,
        "init" | "state" | "trans" => kind == Kind::Ea,
        _ => false,
    }
}

/// Parses and validates a model file.
pub fn parse(text: &str) -> Result<Structure, ParseError> {
    let mut kind: Option<Kind> = None;
    let mut d = Decls::default();
    let mut mentions = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let toks = lex(raw, line)?;
        if toks.is_empty() {
            continue;
        }
        let mut cur = Cursor { toks: &toks, pos: 0, line, end_col: raw.chars().count() + 1, mentions: &mut mentions };
        let head_col = cur.col();
        let head = cur.word("a declaration")?;
        let Some(k) = kind else {
            if head != "kind" {
                return Err(ParseError::syntax(line, head_col, "the first declaration must be `kind`"));
            }
            let tag_col = cur.col();
            let tag = cur.word("a kind tag")?;
            kind = Some(tag.parse().map_err(|e: evstruct_core::structure::UnknownKind| {
                ParseError::syntax(line, tag_col, e.to_string())
            })?);
            cur.finish()?;
            continue;
        };
        if head == "kind" {
            return Err(ParseError::syntax(line, head_col, "duplicate `kind` declaration"));
        }
        if !allowed(k, &head) {
            return Err(ParseError::syntax(line, head_col, format!("`{head}` is not a {k} declaration")));
        }
        match head.as_str() {
            "events" => {
                while !cur.at_end() {
                    let col = cur.col();
                    let w = cur.word("an event name")?;
                    d.events.insert(EventId::new(w).map_err(|e| ParseError::syntax(line, col, e.to_string()))?);
                }
            }
            "conflict" => {
                let a = cur.event()?;
                let b = cur.event()?;
                d.conflict.push((a, b, line));
            }
            "entry" => {
                let target = cur.event()?;
                cur.punct(':')?;
                let mut elements = Vec::new();
                while !cur.at_end() {
                    cur.punct('(')?;
                    let x = cur.set()?;
                    cur.punct('|')?;
                    let y = cur.set()?;
                    cur.punct(')')?;
                    elements.push(EntryElement::new(x, y));
                }
                d.entries.push((target, elements, line));
            }
            "le" | "flow" | "en" => {
                let a = cur.event()?;
                let b = cur.event()?;
                d.pairs.insert((a, b));
            }
            "selfconflict" => {
                d.self_conflict.insert(cur.event()?);
            }
            "shrink" | "grow" => {
                let m = cur.named("mod")?;
                let t = cur.named("target")?;
                let c = cur.named("contrib")?;
                if head == "shrink" {
                    d.shrink.insert(ShrinkTriple::new(m, t, c));
                } else {
                    d.grow.insert(GrowTriple::new(m, t, c));
                }
            }
            "inh" => {
                let col = cur.col();
                let a = cur.set()?;
                if a.len() > 1 {
                    return Err(ParseError::syntax(line, col, "an inhibitor set has at most one event"));
                }
                let e = cur.event()?;
                let alts = cur.set()?;
                d.inh.insert(InhibitorTriple::new(a.into_iter().next(), e, alts));
            }
            "turnstile" => {
                let x = cur.set()?;
                let y = cur.set()?;
                d.turnstile.insert((x, y));
            }
            "init" => {
                if d.init.is_some() {
                    return Err(ParseError::syntax(line, head_col, "duplicate `init` declaration"));
                }
                d.init = Some(cur.set()?);
            }
            "state" => {
                d.states.insert(cur.set()?);
            }
            "trans" => {
                let s = cur.set()?;
                let t = cur.set()?;
                d.trans.insert((s, t));
            }
            _ => unreachable!("filtered by `allowed`"),
        }
        cur.finish()?;
    }
    let Some(kind) = kind else {
        return Err(ParseError::syntax(last_line.max(1), 1, "missing `kind` declaration"));
    };
    if let Some(m) = mentions.iter().find(|m| !d.events.contains(&m.event)) {
        return Err(ParseError::Validation {
            rule: Rule::UndeclaredEvent,
            witness: m.event.to_string(),
            line: Some(m.line),
        });
    }
    build(kind, d)
}

fn build(kind: Kind, d: Decls) -> Result<Structure, ParseError> {
    let v = |e: ValidationError| ParseError::validation(e, None);
    let mut conflict = ConflictRelation::new();
    for (a, b, line) in d.conflict {
        conflict.insert(a, b).map_err(|e| ParseError::validation(e, Some(line)))?;
    }
    Ok(match kind {
        Kind::Cdes => {
            let mut entries = Vec::new();
            for (target, elements, line) in d.entries {
                entries.push(CdEntry::new(target, elements).map_err(|e| ParseError::validation(e, Some(line)))?);
            }
            Structure::Cdes(Cdes::new(d.events, conflict, entries).map_err(v)?)
        }
        Kind::Pes => Structure::Pes(Pes::new(d.events, d.pairs, conflict).map_err(v)?),
        Kind::Fes => Structure::Fes(Fes::new(d.events, d.pairs, conflict, d.self_conflict).map_err(v)?),
        Kind::Rpes => Structure::Rpes(Rpes::new(d.events, d.pairs, conflict).map_err(v)?),
        Kind::Dces => {
            let base = Rpes::new(d.events, d.pairs, conflict).map_err(v)?;
            Structure::Dces(Dces::new(base, d.shrink, d.grow).map_err(v)?)
        }
        Kind::Ies => Structure::Ies(Ies::new(d.events, d.inh).map_err(v)?),
        Kind::Rces => Structure::Rces(Rces::new(d.events, d.turnstile).map_err(v)?),
        Kind::Ea => {
            let init = d.init.unwrap_or_default();
            let mut states = d.states;
            states.insert(init.clone());
            Structure::Ea(EventAutomaton::new(d.events, states, d.trans, init).map_err(v)?)
        }
    })
}

fn set_text(x: &EventSet) -> String {
    let names: Vec<&str> = x.iter().map(EventId::as_str).collect();
    format!("{{{}}}", names.join(" "))
}

fn conflict_lines(out: &mut String, k: &ConflictRelation) {
    for (a, b) in k.iter() {
        let _ = writeln!(out, "conflict {a} {b}");
    }
}

fn pair_lines(out: &mut String, keyword: &str, r: &Relation) {
    for (a, b) in r {
        let _ = writeln!(out, "{keyword} {a} {b}");
    }
}

/// Canonical text of a structure: declarations in a fixed order, names
/// sorted, LF line endings.
pub fn serialize(x: &Structure) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "kind {}", x.kind());
    let names: Vec<&str> = x.events().iter().map(EventId::as_str).collect();
    if names.is_empty() {
        out.push_str("events\n");
    } else {
        let _ = writeln!(out, "events {}", names.join(" "));
    }
    match x {
        Structure::Cdes(c) => {
            conflict_lines(&mut out, c.conflict());
            for z in c.entries() {
                let _ = write!(out, "entry {} :", z.target());
                for el in z.elements() {
                    let _ = write!(out, " ({}|{})", set_text(&el.modifiers), set_text(&el.dependencies));
                }
                out.push('\n');
            }
        }
        Structure::Pes(p) => {
            conflict_lines(&mut out, p.conflict());
            pair_lines(&mut out, "le", &p.covering());
        }
        Structure::Fes(f) => {
            conflict_lines(&mut out, f.conflict());
            for e in f.self_conflict() {
                let _ = writeln!(out, "selfconflict {e}");
            }
            pair_lines(&mut out, "flow", f.flow());
        }
        Structure::Rpes(r) => {
            conflict_lines(&mut out, r.conflict());
            pair_lines(&mut out, "en", r.enabling());
        }
        Structure::Dces(d) => {
            conflict_lines(&mut out, d.conflict());
            pair_lines(&mut out, "en", d.enabling());
            for s in d.shrink() {
                let _ = writeln!(out, "shrink mod={} target={} contrib={}", s.modifier, s.target, s.contribution);
            }
            for g in d.grow() {
                let _ = writeln!(out, "grow mod={} target={} contrib={}", g.modifier, g.target, g.contribution);
            }
        }
        Structure::Ies(i) => {
            for t in i.triples() {
                let _ = writeln!(out, "inh {} {} {}", set_text(&t.inhibitor_set()), t.target, set_text(&t.alternatives));
            }
        }
        Structure::Rces(r) => {
            for (x, y) in r.enabling() {
                let _ = writeln!(out, "turnstile {} {}", set_text(x), set_text(y));
            }
        }
        Structure::Ea(a) => {
            let _ = writeln!(out, "init {}", set_text(a.initial()));
            let mut states: Vec<&EventSet> = a.states().iter().collect();
            states.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
            for s in states {
                let _ = writeln!(out, "state {}", set_text(s));
            }
            let mut trans: Vec<&(EventSet, EventSet)> = a.trans().iter().collect();
            trans.sort_by(|(s1, t1), (s2, t2)| {
                (s1.len(), s1, t1.len(), t1).cmp(&(s2.len(), s2, t2.len(), t2))
            });
            for (s, t) in trans {
                let _ = writeln!(out, "trans {} {}", set_text(s), set_text(t));
            }
        }
    }
    out
}

/// The lattice in DOT syntax. Nodes are ordered by size, then by name.
pub fn export_dot(l: &Lattice) -> String {
    let order = l.states_by_size();
    let id = |s: &EventSet| order.iter().position(|x| *x == s).expect("edge endpoints are states");
    let mut out = String::from("digraph configurations {\n  rankdir=BT;\n  node [shape=plaintext];\n");
    for (i, s) in order.iter().enumerate() {
        let _ = writeln!(out, "  n{i} [label=\"{s}\"];");
    }
    let mut edges: Vec<_> = l.edges().iter().collect();
    edges.sort_by_key(|e| (id(&e.source), id(&e.target)));
    for e in edges {
        let _ = writeln!(out, "  n{} -> n{} [label=\"{}\"];", id(&e.source), id(&e.target), e.event);
    }
    out.push_str("}\n");
    out
}

/// Plain listing: one state per line, then one step per line.
pub fn export_text(l: &Lattice) -> String {
    let mut out = String::new();
    for s in l.states_by_size() {
        let _ = writeln!(out, "state {s}");
    }
    let order = l.states_by_size();
    let id = |s: &EventSet| order.iter().position(|x| *x == s).expect("a state");
    let mut edges: Vec<_> = l.edges().iter().collect();
    edges.sort_by_key(|e| (id(&e.source), id(&e.target)));
    for e in edges {
        let _ = writeln!(out, "step {} -{}-> {}", e.source, e.event, e.target);
    }
    out
}

#[derive(serde::Serialize)]
struct JsonEdge<'a> {
    source: Vec<&'a str>,
    event: &'a str,
    target: Vec<&'a str>,
}

#[derive(serde::Serialize)]
struct JsonLattice<'a> {
    states: Vec<Vec<&'a str>>,
    edges: Vec<JsonEdge<'a>>,
}

fn names(s: &EventSet) -> Vec<&str> {
    s.iter().map(EventId::as_str).collect()
}

/// The lattice as a JSON object with `states` and `edges`.
pub fn export_json(l: &Lattice) -> String {
    let doc = JsonLattice {
        states: l.states_by_size().into_iter().map(names).collect(),
        edges: l
            .edges()
            .iter()
            .map(|e| JsonEdge { source: names(&e.source), event: e.event.as_str(), target: names(&e.target) })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("plain data serializes");
    s.push('\n');
    s
}
