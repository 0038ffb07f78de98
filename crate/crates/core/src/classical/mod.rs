//! The classical event-structure kinds.
//!
//! Each kind validates its own well-formedness rules on construction and
//! unfolds into a [`Lattice`](crate::Lattice) of configurations.

mod dces;
mod fes;
mod ies;
mod pes;
mod rces;
mod rpes;

pub use dces::{Dces, GrowTriple, ShrinkTriple};
pub use fes::{Fes, FesConfigurations};
pub use ies::{Ies, InhibitorTriple};
pub use pes::Pes;
pub use rces::Rces;
pub use rpes::Rpes;

use alloc::collections::{BTreeMap, BTreeSet};

use crate::kernel::{require_declared, EventId, EventSet, ValidationError};

/// A binary relation on events, as ordered pairs.
pub type Relation = BTreeSet<(EventId, EventId)>;

pub(crate) fn require_relation_declared(events: &EventSet, r: &Relation) -> Result<(), ValidationError> {
    r.iter().try_for_each(|(a, b)| {
        require_declared(events, a)?;
        require_declared(events, b)
    })
}

/// Successor lists of `r`.
pub(crate) fn successors(r: &Relation) -> BTreeMap<&EventId, BTreeSet<&EventId>> {
    let mut out: BTreeMap<&EventId, BTreeSet<&EventId>> = BTreeMap::new();
    for (a, b) in r {
        out.entry(a).or_default().insert(b);
    }
    out
}

/// Events reachable from `from` in one or more steps of `r`.
pub(crate) fn reachable_from(r: &Relation, from: &EventId) -> EventSet {
    let succ = successors(r);
    let mut seen = EventSet::new();
    let mut stack: alloc::vec::Vec<&EventId> = succ.get(from).into_iter().flatten().copied().collect();
    while let Some(x) = stack.pop() {
        if seen.insert(x.clone()) {
            stack.extend(succ.get(x).into_iter().flatten().copied());
        }
    }
    seen
}

/// The transitive closure `r⁺`.
pub(crate) fn transitive_closure(r: &Relation) -> Relation {
    let sources: EventSet = r.iter().map(|(a, _)| a.clone()).collect();
    let mut out = Relation::new();
    for a in &sources {
        for b in &reachable_from(r, a) {
            out.insert((a.clone(), b.clone()));
        }
    }
    out
}

/// The reflexive and transitive closure `r*` over `events`.
pub(crate) fn reflexive_transitive_closure(r: &Relation, events: &EventSet) -> Relation {
    let mut out = transitive_closure(r);
    out.extend(events.iter().map(|e| (e.clone(), e.clone())));
    out
}

/// The predecessors `{x : (x, e) ∈ r}`.
pub(crate) fn predecessors(r: &Relation, e: &EventId) -> EventSet {
    r.iter().filter(|(_, b)| b == e).map(|(a, _)| a.clone()).collect()
}
