use alloc::format;

use super::{reflexive_transitive_closure, require_relation_declared, Relation, Rpes};
use crate::kernel::{
    is_conflict_free, require_conflict_declared, ConflictRelation, EventId, EventSet, Rule,
    ValidationError,
};
use crate::lattice::Lattice;

/// A prime event structure `(E, ≤, #)`.
///
/// The order is given by generators; its reflexive and transitive closure
/// is taken before validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pes {
    events: EventSet,
    order: Relation,
    conflict: ConflictRelation,
}

impl Pes {
    pub fn new(events: EventSet, leq: Relation, conflict: ConflictRelation) -> Result<Self, ValidationError> {
        require_relation_declared(&events, &leq)?;
        require_conflict_declared(&events, &conflict)?;
        let order = reflexive_transitive_closure(&leq, &events);
        for (a, b) in &order {
            if a != b && order.contains(&(b.clone(), a.clone())) {
                return Err(ValidationError::new(Rule::PartialOrder, format!("{a} <= {b} <= {a}")));
            }
        }
        for (a, b) in &order {
            if a != b && conflict.contains(a, b) {
                return Err(ValidationError::new(Rule::CausalityConflictDisjoint, format!("{a} <= {b} and {a} # {b}")));
            }
        }
        for (x, y) in conflict.iter() {
            for (p, q) in [(x, y), (y, x)] {
                for (lo, hi) in &order {
                    if lo == q && !conflict.contains(p, hi) {
                        return Err(ValidationError::new(
                            Rule::ConflictInheritance,
                            format!("{p} # {q} <= {hi} but not {p} # {hi}"),
                        ));
                    }
                }
            }
        }
        Ok(Pes { events, order, conflict })
    }

    pub fn events(&self) -> &EventSet {
        &self.events
    }

    pub fn conflict(&self) -> &ConflictRelation {
        &self.conflict
    }

    /// The full (reflexive, transitive) order.
    pub fn order(&self) -> &Relation {
        &self.order
    }

    pub fn leq(&self, a: &EventId, b: &EventId) -> bool {
        self.order.contains(&(a.clone(), b.clone()))
    }

    /// `⌊e⌋ = {e′ : e′ ≤ e}`.
    pub fn down(&self, e: &EventId) -> EventSet {
        self.order.iter().filter(|(_, b)| b == e).map(|(a, _)| a.clone()).collect()
    }

    /// The covering pairs of `<`: the smallest generating set.
    pub fn covering(&self) -> Relation {
        let strict: Relation = self.order.iter().filter(|(a, b)| a != b).cloned().collect();
        strict
            .iter()
            .filter(|(a, c)| {
                !self.events.iter().any(|b| {
                    b != a && b != c && strict.contains(&(a.clone(), b.clone())) && strict.contains(&(b.clone(), c.clone()))
                })
            })
            .cloned()
            .collect()
    }

    /// Conflict-free, downward closed subsets.
    pub fn is_configuration(&self, c: &EventSet) -> bool {
        is_conflict_free(c, &self.conflict) && c.iter().all(|e| self.down(e).is_subset(c))
    }

    pub fn configurations(&self) -> Lattice {
        Lattice::explore(&self.events, |c, e| {
            !self.conflict.conflicts_with_any(e, c) && self.down(e).iter().all(|x| x == e || c.contains(x))
        })
    }

    /// The same structure read as a relaxed PES, with `<` as enabling.
    pub fn to_rpes(&self) -> Rpes {
        let strict: Relation = self.order.iter().filter(|(a, b)| a != b).cloned().collect();
        Rpes::new(self.events.clone(), strict, self.conflict.clone()).expect("a partial order has no cycles")
    }
}
