use alloc::format;

use super::{predecessors, reachable_from, reflexive_transitive_closure, require_relation_declared, Relation};
use crate::kernel::{
    is_conflict_free, require_conflict_declared, ConflictRelation, EventId, EventSet, Rule,
    ValidationError,
};
use crate::lattice::Lattice;

/// A relaxed prime event structure `(E, →, #)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rpes {
    events: EventSet,
    enabling: Relation,
    conflict: ConflictRelation,
}

impl Rpes {
    pub fn new(events: EventSet, enabling: Relation, conflict: ConflictRelation) -> Result<Self, ValidationError> {
        require_relation_declared(&events, &enabling)?;
        require_conflict_declared(&events, &conflict)?;
        for e in &events {
            for x in &predecessors(&enabling, e) {
                if reachable_from(&enabling, x).contains(x) {
                    return Err(ValidationError::new(
                        Rule::AcyclicCauses,
                        format!("{x} is an immediate cause of {e} and lies on a cycle"),
                    ));
                }
            }
        }
        Ok(Rpes { events, enabling, conflict })
    }

    pub fn events(&self) -> &EventSet {
        &self.events
    }

    pub fn conflict(&self) -> &ConflictRelation {
        &self.conflict
    }

    pub fn enabling(&self) -> &Relation {
        &self.enabling
    }

    /// `ic(e) = {e′ : e′ → e}`.
    pub fn ic(&self, e: &EventId) -> EventSet {
        predecessors(&self.enabling, e)
    }

    /// Conflict-free sets closed under immediate causes.
    pub fn is_configuration(&self, c: &EventSet) -> bool {
        is_conflict_free(c, &self.conflict) && c.iter().all(|e| self.ic(e).is_subset(c))
    }

    pub fn configurations(&self) -> Lattice {
        Lattice::explore(&self.events, |c, e| {
            !self.conflict.conflicts_with_any(e, c) && self.ic(e).is_subset(c)
        })
    }

    /// Whether `→* ∩ C × C` is a partial order.
    pub fn po_check(&self, c: &EventSet) -> bool {
        let star = reflexive_transitive_closure(&self.enabling, &self.events);
        c.iter().all(|a| {
            c.iter().all(|b| a == b || !(star.contains(&(a.clone(), b.clone())) && star.contains(&(b.clone(), a.clone()))))
        })
    }
}
