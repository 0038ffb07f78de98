use alloc::format;
use alloc::vec::Vec;

use super::{predecessors, reachable_from, require_relation_declared, transitive_closure, Relation};
use crate::kernel::{
    is_conflict_free, require_conflict_declared, require_declared_set, ConflictRelation, EventId,
    EventSet, Rule, ValidationError,
};
use crate::lattice::Lattice;

/// A flow event structure `(E, ≺, #)`.
///
/// Conflict is only required to be symmetric: self-conflicting events are
/// listed separately and never occur in a configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fes {
    events: EventSet,
    flow: Relation,
    conflict: ConflictRelation,
    self_conflict: EventSet,
}

/// Configurations of a [`Fes`] plus the states not reachable from `∅`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FesConfigurations {
    pub lattice: Lattice,
    pub unreachable: Vec<EventSet>,
}

impl Fes {
    pub fn new(
        events: EventSet,
        flow: Relation,
        conflict: ConflictRelation,
        self_conflict: EventSet,
    ) -> Result<Self, ValidationError> {
        require_relation_declared(&events, &flow)?;
        require_conflict_declared(&events, &conflict)?;
        require_declared_set(&events, &self_conflict)?;
        if let Some((a, _)) = flow.iter().find(|(a, b)| a == b) {
            return Err(ValidationError::new(Rule::IrreflexiveFlow, format!("{a} < {a}")));
        }
        Ok(Fes { events, flow, conflict, self_conflict })
    }

    pub fn events(&self) -> &EventSet {
        &self.events
    }

    pub fn flow(&self) -> &Relation {
        &self.flow
    }

    /// Conflict between distinct events.
    pub fn conflict(&self) -> &ConflictRelation {
        &self.conflict
    }

    pub fn self_conflict(&self) -> &EventSet {
        &self.self_conflict
    }

    pub fn in_conflict(&self, a: &EventId, b: &EventId) -> bool {
        if a == b {
            self.self_conflict.contains(a)
        } else {
            self.conflict.contains(a, b)
        }
    }

    /// `fl(e) = {e′ : e′ ≺ e}`.
    pub fn fl(&self, e: &EventId) -> EventSet {
        predecessors(&self.flow, e)
    }

    /// The three defining conditions, checked directly on `c`.
    pub fn is_configuration(&self, c: &EventSet) -> bool {
        self.is_configuration_with(c, &transitive_closure(&self.flow))
    }

    fn is_configuration_with(&self, c: &EventSet, plus: &Relation) -> bool {
        if !c.is_disjoint(&self.self_conflict) || !is_conflict_free(c, &self.conflict) {
            return false;
        }
        let covered = c.iter().all(|e| {
            let fl = self.fl(e);
            fl.iter().all(|x| c.contains(x) || fl.iter().any(|y| c.contains(y) && self.in_conflict(x, y)))
        });
        // ≺* restricted to c is reflexive and transitive by construction;
        // it is antisymmetric iff no member of c lies on a ≺⁺ cycle through c.
        covered
            && c.iter().all(|a| {
                c.iter().all(|b| a == b || !(plus.contains(&(a.clone(), b.clone())) && plus.contains(&(b.clone(), a.clone()))))
            })
    }

    /// All subsets satisfying the definition, linked by single-event
    /// inclusion. States that cannot be reached from `∅` are reported.
    pub fn configurations(&self) -> FesConfigurations {
        let plus = transitive_closure(&self.flow);
        let states = self.events.subsets().into_iter().filter(|c| self.is_configuration_with(c, &plus)).collect();
        let lattice = Lattice::from_states(states);
        let unreachable = lattice.unreachable_states();
        FesConfigurations { lattice, unreachable }
    }

    /// Events lying on a flow cycle.
    pub fn cyclic_events(&self) -> EventSet {
        self.events.iter().filter(|e| reachable_from(&self.flow, e).contains(e)).cloned().collect()
    }
}
