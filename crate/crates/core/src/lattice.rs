//! Configuration spaces: configurations plus labelled single-event steps.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec::Vec;

use crate::kernel::{ConflictRelation, EventId, EventSet};

/// `source ↦ target` where `target = source ∪ {event}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub source: EventSet,
    pub event: EventId,
    pub target: EventSet,
}

/// The configurations of a structure together with its `↦` relation.
/// The initial state is always `∅`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    states: BTreeSet<EventSet>,
    edges: BTreeSet<Edge>,
}

impl Lattice {
    /// Breadth-first unfolding from `∅`: `step(C, e)` decides whether `e`
    /// (never in `C`) may extend `C`.
    pub fn explore<F>(events: &EventSet, mut step: F) -> Lattice
    where
        F: FnMut(&EventSet, &EventId) -> bool,
    {
        let mut states = BTreeSet::new();
        let mut edges = BTreeSet::new();
        let mut queue = VecDeque::new();
        states.insert(EventSet::new());
        queue.push_back(EventSet::new());
        while let Some(c) = queue.pop_front() {
            for e in events.iter().filter(|e| !c.contains(e)) {
                if !step(&c, e) {
                    continue;
                }
                let next = c.with(e);
                if states.insert(next.clone()) {
                    queue.push_back(next.clone());
                }
                edges.insert(Edge { source: c.clone(), event: e.clone(), target: next });
            }
        }
        Lattice { states, edges }
    }

    /// Takes the given states (which must include `∅`) and connects every
    /// pair that differs by exactly one added event.
    pub fn from_states(states: BTreeSet<EventSet>) -> Lattice {
        let mut edges = BTreeSet::new();
        for s in &states {
            for t in &states {
                if t.len() == s.len() + 1 && s.is_subset(t) {
                    let event = t.difference(s).into_iter().next().expect("one added event");
                    edges.insert(Edge { source: s.clone(), event, target: t.clone() });
                }
            }
        }
        Lattice { states, edges }
    }

    pub(crate) fn from_parts(states: BTreeSet<EventSet>, edges: BTreeSet<Edge>) -> Lattice {
        Lattice { states, edges }
    }

    pub fn states(&self) -> &BTreeSet<EventSet> {
        &self.states
    }

    pub fn edges(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn initial(&self) -> EventSet {
        EventSet::new()
    }

    pub fn contains(&self, c: &EventSet) -> bool {
        self.states.contains(c)
    }

    pub fn predecessors(&self, c: &EventSet) -> Vec<&EventSet> {
        self.edges.iter().filter(|e| &e.target == c).map(|e| &e.source).collect()
    }

    pub fn successors(&self, c: &EventSet) -> Vec<&EventSet> {
        self.edges.iter().filter(|e| &e.source == c).map(|e| &e.target).collect()
    }

    /// States sorted by size, then lexicographically.
    pub fn states_by_size(&self) -> Vec<&EventSet> {
        let mut v: Vec<&EventSet> = self.states.iter().collect();
        v.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        v
    }

    /// States not reachable from `∅` along edges.
    pub fn unreachable_states(&self) -> Vec<EventSet> {
        let mut succ: BTreeMap<&EventSet, Vec<&EventSet>> = BTreeMap::new();
        for e in &self.edges {
            succ.entry(&e.source).or_default().push(&e.target);
        }
        let root = EventSet::new();
        let mut seen: BTreeSet<&EventSet> = BTreeSet::new();
        let mut stack = Vec::new();
        if let Some(r) = self.states.get(&root) {
            seen.insert(r);
            stack.push(r);
        }
        while let Some(s) = stack.pop() {
            for t in succ.get(s).into_iter().flatten() {
                if seen.insert(t) {
                    stack.push(t);
                }
            }
        }
        self.states.iter().filter(|s| !seen.contains(s)).cloned().collect()
    }

    /// Events occurring in at least one state.
    pub fn occurring_events(&self) -> EventSet {
        self.states.iter().flat_map(|s| s.iter().cloned()).collect()
    }

    /// Pairs of distinct events from `events` that no state contains together.
    pub fn semantic_conflict(&self, events: &EventSet) -> ConflictRelation {
        let list: Vec<&EventId> = events.iter().collect();
        let mut k = ConflictRelation::new();
        for (i, a) in list.iter().enumerate() {
            for b in &list[i + 1..] {
                if !self.states.iter().any(|s| s.contains(a) && s.contains(b)) {
                    k.insert((*a).clone(), (*b).clone()).expect("distinct events");
                }
            }
        }
        k
    }

    /// Every event of `events` occurs in some state.
    pub fn is_full(&self, events: &EventSet) -> bool {
        events.is_subset(&self.occurring_events())
    }

    /// Every semantic conflict is declared in `declared`.
    pub fn is_faithful(&self, events: &EventSet, declared: &ConflictRelation) -> bool {
        self.semantic_conflict(events).is_subset(declared)
    }
}
