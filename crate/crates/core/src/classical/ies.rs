use alloc::collections::BTreeSet;
use alloc::format;
use core::fmt;

use crate::kernel::{require_declared, require_declared_set, ConflictRelation, EventId, EventSet, Rule, ValidationError};
use crate::lattice::Lattice;

/// `a ⊢ target ↠ alternatives`: once the inhibitor `a` has occurred, some
/// alternative must have occurred too before `target` may.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InhibitorTriple {
    pub inhibitor: Option<EventId>,
    pub target: EventId,
    pub alternatives: EventSet,
}

impl InhibitorTriple {
    pub fn new(inhibitor: Option<EventId>, target: EventId, alternatives: EventSet) -> Self {
        InhibitorTriple { inhibitor, target, alternatives }
    }

    /// The inhibitor as a set of at most one event.
    pub fn inhibitor_set(&self) -> EventSet {
        self.inhibitor.iter().cloned().collect()
    }

    /// Whether the triple lets `target` occur after `c`.
    pub fn allows(&self, c: &EventSet) -> bool {
        match &self.inhibitor {
            Some(a) if c.contains(a) => !c.is_disjoint(&self.alternatives),
            Some(_) => true,
            None => !c.is_disjoint(&self.alternatives),
        }
    }
}

impl fmt::Display for InhibitorTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} |- {} ->> {}", self.inhibitor_set(), self.target, self.alternatives)
    }
}

/// An inhibitor event structure `(E, ⊢↠)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ies {
    events: EventSet,
    triples: BTreeSet<InhibitorTriple>,
    conflict: ConflictRelation,
}

impl Ies {
    pub fn new(events: EventSet, triples: BTreeSet<InhibitorTriple>) -> Result<Self, ValidationError> {
        for t in &triples {
            require_declared(&events, &t.target)?;
            require_declared_set(&events, &t.alternatives)?;
            if let Some(a) = &t.inhibitor {
                require_declared(&events, a)?;
            } else if t.alternatives.is_empty() {
                return Err(ValidationError::new(Rule::InhibitorNonEmpty, format!("{t}")));
            }
        }
        let conflict = induced_conflict(&triples);
        for t in &triples {
            let alts: alloc::vec::Vec<&EventId> = t.alternatives.iter().collect();
            for (i, x) in alts.iter().enumerate() {
                for y in &alts[i + 1..] {
                    if !conflict.contains(x, y) {
                        return Err(ValidationError::new(
                            Rule::InhibitorConflict,
                            format!("{t}: {x} and {y} are not in conflict"),
                        ));
                    }
                }
            }
        }
        Ok(Ies { events, triples, conflict })
    }

    pub fn events(&self) -> &EventSet {
        &self.events
    }

    pub fn triples(&self) -> &BTreeSet<InhibitorTriple> {
        &self.triples
    }

    pub fn triples_for<'a>(&'a self, e: &'a EventId) -> impl Iterator<Item = &'a InhibitorTriple> + 'a {
        self.triples.iter().filter(move |t| &t.target == e)
    }

    /// `e # e′` iff both `{e′} ⊢ e ↠ ∅` and `{e} ⊢ e′ ↠ ∅`.
    pub fn conflict(&self) -> &ConflictRelation {
        &self.conflict
    }

    pub fn enables(&self, c: &EventSet, e: &EventId) -> bool {
        self.triples_for(e).all(|t| t.allows(c))
    }

    pub fn configurations(&self) -> Lattice {
        Lattice::explore(&self.events, |c, e| self.enables(c, e))
    }
}

fn induced_conflict(triples: &BTreeSet<InhibitorTriple>) -> ConflictRelation {
    let mut k = ConflictRelation::new();
    for t in triples {
        if let (Some(a), true) = (&t.inhibitor, t.alternatives.is_empty()) {
            let mirror = InhibitorTriple::new(Some(t.target.clone()), a.clone(), EventSet::new());
            if a != &t.target && triples.contains(&mirror) {
                k.insert(a.clone(), t.target.clone()).expect("distinct events");
            }
        }
    }
    k
}
