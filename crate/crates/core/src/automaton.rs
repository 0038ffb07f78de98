//! Event automata `⟨E, S, ↦, s0⟩` and their equivalence.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;
use crate::kernel::{require_declared_set, EventSet, Rule, ValidationError};
use crate::lattice::{Edge, Lattice};
use crate::structure::Structure;

/// An event automaton. Transitions are unlabelled and strictly growing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EventAutomaton {
    events: EventSet,
    states: BTreeSet<EventSet>,
    trans: BTreeSet<(EventSet, EventSet)>,
    initial: EventSet,
}

/// Which side of a comparison a witness belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "first",
            Side::Right => "second",
        })
    }
}

/// The first difference found between two automata.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mismatch {
    Events { left: EventSet, right: EventSet },
    Initial { left: EventSet, right: EventSet },
    State { state: EventSet, only_in: Side },
    Transition { from: EventSet, to: EventSet, only_in: Side },
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mismatch::Events { left, right } => write!(f, "event sets differ: {left} vs {right}"),
            Mismatch::Initial { left, right } => write!(f, "initial states differ: {left} vs {right}"),
            Mismatch::State { state, only_in } => write!(f, "state {state} only in the {only_in} automaton"),
            Mismatch::Transition { from, to, only_in } => {
                write!(f, "transition {from} -> {to} only in the {only_in} automaton")
            }
        }
    }
}

impl EventAutomaton {
    pub fn new(
        events: EventSet,
        states: BTreeSet<EventSet>,
        trans: BTreeSet<(EventSet, EventSet)>,
        initial: EventSet,
    ) -> Result<Self, ValidationError> {
        for s in &states {
            require_declared_set(&events, s)?;
        }
        if !states.contains(&initial) {
            return Err(ValidationError::new(Rule::InitialState, format!("{initial} is not a state")));
        }
        for (s, t) in &trans {
            for x in [s, t] {
                if !states.contains(x) {
                    return Err(ValidationError::new(Rule::UnknownState, format!("{s} -> {t}: {x}")));
                }
            }
            if !(s.is_subset(t) && s.len() < t.len()) {
                return Err(ValidationError::new(Rule::StrictGrowth, format!("{s} -> {t}")));
            }
        }
        Ok(EventAutomaton { events, states, trans, initial })
    }

    /// `⟨E, Conf, ↦, ∅⟩` for a configuration lattice over `events`.
    pub fn from_lattice(events: &EventSet, lattice: &Lattice) -> Self {
        let trans = lattice.edges().iter().map(|e| (e.source.clone(), e.target.clone())).collect();
        EventAutomaton {
            events: events.clone(),
            states: lattice.states().clone(),
            trans,
            initial: lattice.initial(),
        }
    }

    /// The automaton of any structure.
    pub fn from_structure(x: &Structure) -> Result<Self, Error> {
        x.automaton()
    }

    pub fn events(&self) -> &EventSet {
        &self.events
    }

    pub fn states(&self) -> &BTreeSet<EventSet> {
        &self.states
    }

    pub fn trans(&self) -> &BTreeSet<(EventSet, EventSet)> {
        &self.trans
    }

    pub fn initial(&self) -> &EventSet {
        &self.initial
    }

    pub fn has_transition(&self, s: &EventSet, t: &EventSet) -> bool {
        self.trans.contains(&(s.clone(), t.clone()))
    }

    /// Every event is added by a single step somewhere.
    pub fn is_simple(&self) -> bool {
        self.events.iter().all(|e| {
            self.trans.iter().any(|(s, t)| !s.contains(e) && t == &s.with(e))
        })
    }

    /// Events never added by a single step.
    pub fn unsimple_events(&self) -> EventSet {
        self.events
            .iter()
            .filter(|e| !self.trans.iter().any(|(s, t)| !s.contains(e) && t == &s.with(e)))
            .cloned()
            .collect()
    }

    /// `{s′ : s ↦ s′}`.
    pub fn reach(&self, s: &EventSet) -> Result<BTreeSet<EventSet>, Error> {
        if !self.states.contains(s) {
            return Err(Error::UnknownState(s.clone()));
        }
        Ok(self.trans.iter().filter(|(a, _)| a == s).map(|(_, b)| b.clone()).collect())
    }

    /// The iterates `X0 = {s0}`, `X(n+1) = Xn ∪ reach(Xn)` up to the fixed
    /// point, which is the last element.
    pub fn lfp_iterates(&self) -> Vec<BTreeSet<EventSet>> {
        let mut current: BTreeSet<EventSet> = [self.initial.clone()].into_iter().collect();
        let mut out = alloc::vec![current.clone()];
        loop {
            let mut next = current.clone();
            for (s, t) in &self.trans {
                if current.contains(s) {
                    next.insert(t.clone());
                }
            }
            if next == current {
                return out;
            }
            out.push(next.clone());
            current = next;
        }
    }

    /// `lfp(reach({s0}))`.
    pub fn lfp(&self) -> BTreeSet<EventSet> {
        self.lfp_iterates().pop().expect("at least the initial iterate")
    }

    /// Every state is reachable from the initial one.
    pub fn is_complete(&self) -> bool {
        self.lfp() == self.states
    }

    /// States outside `lfp(reach({s0}))`.
    pub fn unreachable_states(&self) -> Vec<EventSet> {
        let reached = self.lfp();
        self.states.iter().filter(|s| !reached.contains(s)).cloned().collect()
    }

    /// Component-wise equality, with the first difference as witness.
    pub fn compare(&self, other: &EventAutomaton) -> Result<(), Mismatch> {
        if self.events != other.events {
            return Err(Mismatch::Events { left: self.events.clone(), right: other.events.clone() });
        }
        if self.initial != other.initial {
            return Err(Mismatch::Initial { left: self.initial.clone(), right: other.initial.clone() });
        }
        if let Some(s) = self.states.difference(&other.states).next() {
            return Err(Mismatch::State { state: s.clone(), only_in: Side::Left });
        }
        if let Some(s) = other.states.difference(&self.states).next() {
            return Err(Mismatch::State { state: s.clone(), only_in: Side::Right });
        }
        if let Some((s, t)) = self.trans.difference(&other.trans).next() {
            return Err(Mismatch::Transition { from: s.clone(), to: t.clone(), only_in: Side::Left });
        }
        if let Some((s, t)) = other.trans.difference(&self.trans).next() {
            return Err(Mismatch::Transition { from: s.clone(), to: t.clone(), only_in: Side::Right });
        }
        Ok(())
    }

    pub fn equivalent(&self, other: &EventAutomaton) -> bool {
        self.compare(other).is_ok()
    }

    /// The automaton as a labelled lattice. Only possible when the initial
    /// state is `∅` and every transition adds exactly one event.
    pub fn to_lattice(&self) -> Result<Lattice, Error> {
        if !self.initial.is_empty() {
            return Err(Error::NonEmptyInitial(self.initial.clone()));
        }
        let mut edges = BTreeSet::new();
        for (s, t) in &self.trans {
            let added = t.difference(s);
            if added.len() != 1 {
                return Err(Error::MultiEventTransition { from: s.clone(), to: t.clone() });
            }
            let event = added.into_iter().next().expect("one event");
            edges.insert(Edge { source: s.clone(), event, target: t.clone() });
        }
        Ok(Lattice::from_parts(self.states.clone(), edges))
    }
}

/// `Ge(X) = G(X′)` for the automata of two structures.
pub fn equivalent(a: &EventAutomaton, b: &EventAutomaton) -> bool {
    a.equivalent(b)
}
