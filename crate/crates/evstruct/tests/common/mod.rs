#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use evstruct::core::classical::Relation;
use evstruct::core::{
    CdEntry, Cdes, ConflictRelation, Dces, EntryElement, EventAutomaton, EventId, EventSet, Fes, GrowTriple, Ies,
    InhibitorTriple, Lattice, Pes, Rces, Rpes, ShrinkTriple, Structure,
};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

pub fn fixture_path(name: &str) -> PathBuf {
    fixtures_dir().join(format!("{name}.es"))
}

pub fn fixture(name: &str) -> Structure {
    let text = std::fs::read_to_string(fixture_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"));
    evstruct::parse(&text).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// Every valid fixture, by file stem.
pub fn all_fixtures() -> Vec<(String, Structure)> {
    let mut names: Vec<String> = std::fs::read_dir(fixtures_dir())
        .unwrap()
        .filter_map(|d| {
            let p = d.unwrap().path();
            (p.extension()? == "es").then(|| p.file_stem().unwrap().to_string_lossy().into_owned())
        })
        .collect();
    names.sort();
    names.into_iter().map(|n| (n.clone(), fixture(&n))).collect()
}

pub fn ev(s: &str) -> EventId {
    EventId::new(s).unwrap()
}

pub fn set(names: &[&str]) -> EventSet {
    EventSet::from_names(names.iter().copied()).unwrap()
}

pub fn states(list: &[&[&str]]) -> BTreeSet<EventSet> {
    list.iter().map(|s| set(s)).collect()
}

/// Steps as `(source, target)` pairs.
pub fn steps(list: &[(&[&str], &[&str])]) -> BTreeSet<(EventSet, EventSet)> {
    list.iter().map(|(s, t)| (set(s), set(t))).collect()
}

pub fn lattice_steps(l: &Lattice) -> BTreeSet<(EventSet, EventSet)> {
    l.edges().iter().map(|e| (e.source.clone(), e.target.clone())).collect()
}

const NAMES: [&str; 5] = ["a", "b", "c", "d", "e"];

fn events(rng: &mut ChaCha8Rng) -> Vec<EventId> {
    let n = rng.gen_range(0..=NAMES.len());
    NAMES[..n].iter().map(|s| ev(s)).collect()
}

fn subset(rng: &mut ChaCha8Rng, from: &[EventId], p: f64, max: usize) -> EventSet {
    let mut out = EventSet::new();
    let mut pool = from.to_vec();
    pool.shuffle(rng);
    for e in pool {
        if out.len() < max && rng.gen_bool(p) {
            out.insert(e);
        }
    }
    out
}

fn conflict(rng: &mut ChaCha8Rng, es: &[EventId], p: f64) -> ConflictRelation {
    let mut k = ConflictRelation::new();
    for (i, a) in es.iter().enumerate() {
        for b in &es[i + 1..] {
            if rng.gen_bool(p) {
                k.insert(a.clone(), b.clone()).unwrap();
            }
        }
    }
    k
}

fn pairs(rng: &mut ChaCha8Rng, es: &[EventId], p: f64) -> Relation {
    let mut r = Relation::new();
    for a in es {
        for b in es {
            if a != b && rng.gen_bool(p) {
                r.insert((a.clone(), b.clone()));
            }
        }
    }
    r
}

fn cf(x: &EventSet, k: &ConflictRelation) -> bool {
    evstruct::core::is_conflict_free(x, k)
}

pub fn random_cdes(rng: &mut ChaCha8Rng) -> Cdes {
    let es = events(rng);
    let k = conflict(rng, &es, 0.2);
    let mut entries = Vec::new();
    for e in &es {
        let count = [0, 1, 1, 1, 2][rng.gen_range(0..5)];
        for _ in 0..count {
            let cxt = subset(rng, &es, 0.35, 3);
            let mut elements = Vec::new();
            for x in cxt.subsets() {
                if !cf(&x, &k) || !rng.gen_bool(0.7) {
                    continue;
                }
                let mut y = subset(rng, &es, 0.2, 2);
                if !cf(&y, &k) {
                    y = EventSet::new();
                }
                elements.push(EntryElement::new(x, y));
            }
            if elements.is_empty() {
                elements.push(EntryElement::new(EventSet::new(), EventSet::new()));
            }
            entries.push(CdEntry::new(e.clone(), elements).unwrap());
        }
    }
    Cdes::new(es.into_iter().collect(), k, entries).unwrap()
}

pub fn random_pes(rng: &mut ChaCha8Rng) -> Pes {
    'retry: loop {
        let es = events(rng);
        let mut leq = Relation::new();
        for (i, a) in es.iter().enumerate() {
            for b in &es[i + 1..] {
                if rng.gen_bool(0.3) {
                    leq.insert((a.clone(), b.clone()));
                }
            }
        }
        let seed = conflict(rng, &es, 0.2);
        let probe = Pes::new(es.iter().cloned().collect(), leq.clone(), ConflictRelation::new()).unwrap();
        // saturate by inheritance, dropping seeds between comparable events
        let mut k = ConflictRelation::new();
        for (a, b) in seed.iter() {
            if probe.leq(a, b) || probe.leq(b, a) {
                continue;
            }
            for x in &es {
                for y in &es {
                    if probe.leq(a, x) && probe.leq(b, y) {
                        // a shared successor would be in conflict with itself
                        if k.insert(x.clone(), y.clone()).is_err() {
                            continue 'retry;
                        }
                    }
                }
            }
        }
        if let Ok(p) = Pes::new(es.into_iter().collect(), leq, k) {
            return p;
        }
    }
}

pub fn random_rpes(rng: &mut ChaCha8Rng) -> Rpes {
    loop {
        let es = events(rng);
        let en = pairs(rng, &es, 0.2);
        let k = conflict(rng, &es, 0.2);
        if let Ok(r) = Rpes::new(es.into_iter().collect(), en, k) {
            return r;
        }
    }
}

pub fn random_fes(rng: &mut ChaCha8Rng) -> Fes {
    let es = events(rng);
    let flow = pairs(rng, &es, 0.2);
    let k = conflict(rng, &es, 0.2);
    let selfc = subset(rng, &es, 0.08, 1);
    Fes::new(es.into_iter().collect(), flow, k, selfc).unwrap()
}

fn triples(rng: &mut ChaCha8Rng, es: &[EventId], n: usize) -> Vec<(EventId, EventId, EventId)> {
    (0..n)
        .filter_map(|_| {
            if es.len() < 3 {
                return None;
            }
            let mut pick = es.to_vec();
            pick.shuffle(rng);
            Some((pick[0].clone(), pick[1].clone(), pick[2].clone()))
        })
        .collect()
}

pub fn random_dces(rng: &mut ChaCha8Rng, shrinking: bool) -> Dces {
    loop {
        let base = random_rpes(rng);
        let es: Vec<EventId> = base.events().iter().cloned().collect();
        let n = rng.gen_range(0..=3);
        let mut shrink = BTreeSet::new();
        let mut grow = BTreeSet::new();
        for (m, t, c) in triples(rng, &es, n) {
            if shrinking && rng.gen_bool(0.5) {
                shrink.insert(ShrinkTriple::new(m, t, c));
            } else {
                grow.insert(GrowTriple::new(m, t, c));
            }
        }
        if let Ok(d) = Dces::new(base, shrink, grow) {
            return d;
        }
    }
}

pub fn random_ies(rng: &mut ChaCha8Rng) -> Ies {
    loop {
        let es = events(rng);
        let mut ts = BTreeSet::new();
        for e in &es {
            for _ in 0..rng.gen_range(0..=2) {
                let a = if rng.gen_bool(0.5) { es.choose(rng).cloned() } else { None };
                let alts = subset(rng, &es, 0.3, 2);
                ts.insert(InhibitorTriple::new(a, e.clone(), alts));
            }
        }
        if let Ok(i) = Ies::new(es.into_iter().collect(), ts) {
            return i;
        }
    }
}

pub fn random_rces(rng: &mut ChaCha8Rng) -> Rces {
    let es = events(rng);
    let all: EventSet = es.iter().cloned().collect();
    let mut en = BTreeSet::new();
    if rng.gen_bool(0.95) {
        en.insert((EventSet::new(), EventSet::new()));
    }
    let subsets = all.subsets();
    for _ in 0..rng.gen_range(0..=10) {
        let x = subset(rng, &es, 0.25, 2);
        let y = subsets.choose(rng).cloned().unwrap_or_default();
        en.insert((x, y));
    }
    Rces::new(all, en).unwrap()
}

/// A random strictly growing automaton rooted at `∅`.
pub fn random_automaton(rng: &mut ChaCha8Rng) -> EventAutomaton {
    let es = events(rng);
    let all: EventSet = es.iter().cloned().collect();
    let mut ss: BTreeSet<EventSet> = all.subsets().into_iter().filter(|_| rng.gen_bool(0.5)).collect();
    ss.insert(EventSet::new());
    let list: Vec<&EventSet> = ss.iter().collect();
    let mut trans = BTreeSet::new();
    for s in &list {
        for t in &list {
            if s.is_subset(t) && s != t && rng.gen_bool(if t.len() == s.len() + 1 { 0.7 } else { 0.1 }) {
                trans.insert(((*s).clone(), (*t).clone()));
            }
        }
    }
    EventAutomaton::new(all, ss, trans, EventSet::new()).unwrap()
}

/// A random structure of any kind, the kind chosen by `which`.
pub fn random_structure(rng: &mut ChaCha8Rng, which: usize) -> Structure {
    match which % 8 {
        0 => random_cdes(rng).into(),
        1 => random_pes(rng).into(),
        2 => random_fes(rng).into(),
        3 => random_rpes(rng).into(),
        4 => random_dces(rng, true).into(),
        5 => random_ies(rng).into(),
        6 => random_rces(rng).into(),
        _ => random_automaton(rng).into(),
    }
}
