use alloc::collections::BTreeSet;

use crate::error::Error;
use crate::kernel::{require_declared_set, EventSet, ValidationError};
use crate::lattice::Lattice;

/// An event structure with resolvable conflicts `(E, ⊢)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rces {
    events: EventSet,
    enabling: BTreeSet<(EventSet, EventSet)>,
}

impl Rces {
    pub fn new(events: EventSet, enabling: BTreeSet<(EventSet, EventSet)>) -> Result<Self, ValidationError> {
        for (x, y) in &enabling {
            require_declared_set(&events, x)?;
            require_declared_set(&events, y)?;
        }
        Ok(Rces { events, enabling })
    }

    pub fn events(&self) -> &EventSet {
        &self.events
    }

    /// The pairs `X ⊢ Y`.
    pub fn enabling(&self) -> &BTreeSet<(EventSet, EventSet)> {
        &self.enabling
    }

    pub fn enables(&self, w: &EventSet, z: &EventSet) -> bool {
        self.enabling.contains(&(w.clone(), z.clone()))
    }

    /// `X ⇝ Y`. Exponential in `|Y|`.
    pub fn step(&self, x: &EventSet, y: &EventSet) -> bool {
        x.is_subset(y)
            && y.len() - x.len() <= 1
            && y.subsets().iter().all(|z| self.enabling.iter().any(|(w, z2)| z2 == z && w.is_subset(x)))
    }

    /// `C ⇝ C`.
    pub fn is_consistent(&self, c: &EventSet) -> bool {
        self.step(c, c)
    }

    /// Sets `C` with `C ⇝ C` reachable from `∅` by single-event steps
    /// through such sets.
    pub fn configurations(&self) -> Result<Lattice, Error> {
        if !self.is_consistent(&EventSet::new()) {
            return Err(Error::EmptyNotConfiguration);
        }
        Ok(Lattice::explore(&self.events, |c, e| {
            let next = c.with(e);
            self.step(c, &next) && self.is_consistent(&next)
        }))
    }
}
