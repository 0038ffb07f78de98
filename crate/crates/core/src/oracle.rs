//! An independent recomputation of configuration spaces.
//!
//! Trace-based kinds (CDES, DCES, IES, RCES) are unfolded by enumerating
//! every sequence of distinct events whose prefixes each enable the next
//! event. Declarative kinds (PES, rPES, FES) are checked subset by subset.
//! The result is compared with [`Structure::lattice`]. Enabling is
//! reimplemented here from the raw relations on purpose, so the two sides
//! share no code beyond the data types.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;
use crate::kernel::{ConflictRelation, EventId, EventSet};
use crate::lattice::Edge;
use crate::structure::Structure;

/// States and steps found by the oracle, with one witnessing trace per state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleRun {
    pub states: BTreeSet<EventSet>,
    pub edges: BTreeSet<Edge>,
    pub traces: BTreeMap<EventSet, Vec<EventId>>,
}

/// A disagreement between the oracle and the explorer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Counterexample {
    StateOnlyInOracle { state: EventSet, trace: Vec<EventId> },
    StateOnlyInExplorer { state: EventSet },
    EdgeOnlyInOracle { edge: Edge },
    EdgeOnlyInExplorer { edge: Edge },
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Counterexample::StateOnlyInOracle { state, trace } => {
                write!(f, "state {state} reached by trace")?;
                if trace.is_empty() {
                    f.write_str(" (empty)")?;
                }
                for e in trace {
                    write!(f, " {e}")?;
                }
                f.write_str(" is missing from the explored lattice")
            }
            Counterexample::StateOnlyInExplorer { state } => {
                write!(f, "state {state} is explored but reached by no trace")
            }
            Counterexample::EdgeOnlyInOracle { edge } => {
                write!(f, "step {} -{}-> {} is missing from the explored lattice", edge.source, edge.event, edge.target)
            }
            Counterexample::EdgeOnlyInExplorer { edge } => {
                write!(f, "step {} -{}-> {} is explored but not found by the oracle", edge.source, edge.event, edge.target)
            }
        }
    }
}

/// Recomputes the configurations of `x` without the explorer.
pub fn run(x: &Structure) -> OracleRun {
    match x {
        Structure::Cdes(c) => traces(c.events(), |h, e| {
            let mut entries = c.entries_for(e).peekable();
            entries.peek().is_some()
                && entries.all(|z| {
                    let cxt: EventSet = z.elements().iter().flat_map(|el| el.modifiers.iter().cloned()).collect();
                    let seen = cxt.intersection(h);
                    z.elements().iter().any(|el| el.modifiers == seen && el.dependencies.is_subset(h))
                })
                && free_with(h, e, c.conflict())
        }),
        Structure::Dces(d) => traces(d.events(), |h, e| {
            let mut need: EventSet = d.enabling().iter().filter(|(_, t)| t == e).map(|(c, _)| c.clone()).collect();
            for g in d.grow() {
                if &g.target == e && h.contains(&g.modifier) {
                    need.insert(g.contribution.clone());
                }
            }
            for s in d.shrink() {
                if &s.target == e && h.contains(&s.modifier) {
                    need.remove(&s.contribution);
                }
            }
            need.is_subset(h) && free_with(h, e, d.conflict())
        }),
        Structure::Ies(i) => traces(i.events(), |h, e| {
            i.triples().iter().filter(|t| &t.target == e).all(|t| {
                let inhibited = t.inhibitor.as_ref().is_none_or(|a| h.contains(a));
                !inhibited || t.alternatives.iter().any(|y| h.contains(y))
            })
        }),
        Structure::Rces(r) => {
            let leads = |x: &EventSet, y: &EventSet| {
                x.is_subset(y)
                    && y.len() <= x.len() + 1
                    && powerset(y).iter().all(|z| powerset(x).iter().any(|w| r.enables(w, z)))
            };
            if !leads(&EventSet::new(), &EventSet::new()) {
                return OracleRun { states: BTreeSet::new(), edges: BTreeSet::new(), traces: BTreeMap::new() };
            }
            traces(r.events(), |h, e| {
                let next = h.with(e);
                leads(h, &next) && leads(&next, &next)
            })
        }
        Structure::Pes(p) => declarative(p.events(), |c| {
            free(c, p.conflict())
                && c.iter().all(|e| p.order().iter().all(|(lo, hi)| hi != e || c.contains(lo)))
        }),
        Structure::Rpes(r) => declarative(r.events(), |c| {
            free(c, r.conflict()) && r.enabling().iter().all(|(cause, e)| !c.contains(e) || c.contains(cause))
        }),
        Structure::Fes(f) => {
            let idx: Vec<&EventId> = f.events().iter().collect();
            let n = idx.len();
            let pos = |e: &EventId| idx.iter().position(|x| *x == e).expect("declared");
            let mut reach = alloc::vec![alloc::vec![false; n]; n];
            for (a, b) in f.flow() {
                reach[pos(a)][pos(b)] = true;
            }
            for k in 0..n {
                for i in 0..n {
                    for j in 0..n {
                        if reach[i][k] && reach[k][j] {
                            reach[i][j] = true;
                        }
                    }
                }
            }
            declarative(f.events(), |c| {
                let clash = |a: &EventId, b: &EventId| f.in_conflict(a, b);
                c.iter().all(|a| c.iter().all(|b| !clash(a, b)))
                    && c.iter().all(|e| {
                        let preds: Vec<&EventId> = f.flow().iter().filter(|(_, t)| t == e).map(|(s, _)| s).collect();
                        preds.iter().all(|x| c.contains(x) || preds.iter().any(|y| c.contains(y) && clash(x, y)))
                    })
                    && c.iter().all(|a| c.iter().all(|b| a == b || !(reach[pos(a)][pos(b)] && reach[pos(b)][pos(a)])))
            })
        }
        Structure::Ea(a) => {
            let states = a.states().clone();
            let mut edges = BTreeSet::new();
            for (s, t) in a.trans() {
                let added = t.difference(s);
                if added.len() == 1 {
                    let event = added.into_iter().next().expect("one event");
                    edges.insert(Edge { source: s.clone(), event, target: t.clone() });
                }
            }
            OracleRun { states, edges, traces: BTreeMap::new() }
        }
    }
}

/// `Ok(None)` when the oracle and the explorer agree, otherwise the
/// smallest disagreement.
pub fn check(x: &Structure) -> Result<Option<Counterexample>, Error> {
    let lattice = x.lattice()?;
    let oracle = run(x);
    let by_size = |a: &&EventSet, b: &&EventSet| a.len().cmp(&b.len()).then_with(|| a.cmp(b));
    let mut missing: Vec<&EventSet> = oracle.states.difference(lattice.states()).collect();
    missing.sort_by(by_size);
    let mut extra: Vec<&EventSet> = lattice.states().difference(&oracle.states).collect();
    extra.sort_by(by_size);
    match (missing.first(), extra.first()) {
        (Some(m), Some(x)) if x.len() < m.len() => {
            return Ok(Some(Counterexample::StateOnlyInExplorer { state: (*x).clone() }))
        }
        (Some(m), _) => {
            let trace = oracle.traces.get(*m).cloned().unwrap_or_default();
            return Ok(Some(Counterexample::StateOnlyInOracle { state: (*m).clone(), trace }));
        }
        (None, Some(x)) => return Ok(Some(Counterexample::StateOnlyInExplorer { state: (*x).clone() })),
        (None, None) => {}
    }
    if let Some(edge) = oracle.edges.difference(lattice.edges()).next() {
        return Ok(Some(Counterexample::EdgeOnlyInOracle { edge: edge.clone() }));
    }
    if let Some(edge) = lattice.edges().difference(&oracle.edges).next() {
        return Ok(Some(Counterexample::EdgeOnlyInExplorer { edge: edge.clone() }));
    }
    Ok(None)
}

fn free(c: &EventSet, k: &ConflictRelation) -> bool {
    k.iter().all(|(a, b)| !(c.contains(a) && c.contains(b)))
}

fn free_with(h: &EventSet, e: &EventId, k: &ConflictRelation) -> bool {
    h.iter().all(|x| !k.contains(x, e))
}

fn powerset(x: &EventSet) -> Vec<EventSet> {
    let mut out = alloc::vec![EventSet::new()];
    for e in x {
        let grown: Vec<EventSet> = out.iter().map(|s| s.with(e)).collect();
        out.extend(grown);
    }
    out
}

/// Depth-first enumeration of every trace of distinct events.
fn traces<F>(events: &EventSet, enabled: F) -> OracleRun
where
    F: Fn(&EventSet, &EventId) -> bool,
{
    let all: Vec<&EventId> = events.iter().collect();
    let mut out = OracleRun { states: BTreeSet::new(), edges: BTreeSet::new(), traces: BTreeMap::new() };
    let mut trace: Vec<EventId> = Vec::new();
    extend(&all, &enabled, &mut trace, &EventSet::new(), &mut out);
    out
}

fn extend<F>(all: &[&EventId], enabled: &F, trace: &mut Vec<EventId>, h: &EventSet, out: &mut OracleRun)
where
    F: Fn(&EventSet, &EventId) -> bool,
{
    out.states.insert(h.clone());
    out.traces.entry(h.clone()).or_insert_with(|| trace.clone());
    for e in all {
        if h.contains(e) || !enabled(h, e) {
            continue;
        }
        let next = h.with(e);
        out.edges.insert(Edge { source: h.clone(), event: (*e).clone(), target: next.clone() });
        trace.push((*e).clone());
        extend(all, enabled, trace, &next, out);
        trace.pop();
    }
}

/// Subsets satisfying `is_conf`, linked by single-event inclusion.
fn declarative<F>(events: &EventSet, is_conf: F) -> OracleRun
where
    F: Fn(&EventSet) -> bool,
{
    let states: BTreeSet<EventSet> = powerset(events).into_iter().filter(|c| is_conf(c)).collect();
    let mut edges = BTreeSet::new();
    for s in &states {
        for e in events {
            if s.contains(e) {
                continue;
            }
            let t = s.with(e);
            if states.contains(&t) {
                edges.insert(Edge { source: s.clone(), event: e.clone(), target: t });
            }
        }
    }
    let traces = states.iter().map(|s| (s.clone(), s.iter().cloned().collect())).collect();
    OracleRun { states, edges, traces }
}
