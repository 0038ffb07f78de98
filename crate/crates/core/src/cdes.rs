//! Context-dependent event structures.
//!
//! A [`Cdes`] attaches to each event a number of entries `Z ≫ e`. Every
//! entry is a set of elements `(X, Y)`: `X` is a pattern of *modifiers*,
//! `Y` a set of *dependencies*. The context of an entry is the union of its
//! modifier sets. An event `e ∉ C` is enabled at `C` when, for every entry
//! of `e`, the element whose modifiers equal `context ∩ C` exists and its
//! dependencies are already in `C`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;
use crate::kernel::{
    is_conflict_free, require_conflict_declared, require_declared, require_declared_set,
    ConflictRelation, EventId, EventSet, Rule, ValidationError,
};
use crate::lattice::Lattice;

/// One `(modifiers, dependencies)` pair of an entry.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EntryElement {
    pub modifiers: EventSet,
    pub dependencies: EventSet,
}

impl EntryElement {
    pub fn new(modifiers: EventSet, dependencies: EventSet) -> Self {
        EntryElement { modifiers, dependencies }
    }
}

impl fmt::Display for EntryElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.modifiers, self.dependencies)
    }
}

/// An entry `Z ≫ target`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CdEntry {
    target: EventId,
    elements: BTreeSet<EntryElement>,
    context: EventSet,
}

impl CdEntry {
    /// Identical elements collapse; two elements sharing a modifier set
    /// but not their dependencies are rejected, as is an empty entry.
    pub fn new<I>(target: EventId, elements: I) -> Result<Self, ValidationError>
    where
        I: IntoIterator<Item = EntryElement>,
    {
        let elements: BTreeSet<EntryElement> = elements.into_iter().collect();
        if elements.is_empty() {
            return Err(ValidationError::new(Rule::EmptyEntry, target.as_str()));
        }
        let mut seen: BTreeSet<&EventSet> = BTreeSet::new();
        for el in &elements {
            if !seen.insert(&el.modifiers) {
                return Err(ValidationError::new(
                    Rule::DistinctModifiers,
                    alloc::format!("entry for {target}: modifiers {}", el.modifiers),
                ));
            }
        }
        let context = elements.iter().flat_map(|el| el.modifiers.iter().cloned()).collect();
        Ok(CdEntry { target, elements, context })
    }

    pub fn target(&self) -> &EventId {
        &self.target
    }

    pub fn elements(&self) -> &BTreeSet<EntryElement> {
        &self.elements
    }

    /// `Cxt(Z ≫ e)`: the union of all modifier sets.
    pub fn context(&self) -> &EventSet {
        &self.context
    }

    /// The element whose modifiers equal `Cxt ∩ c`, if any.
    pub fn select(&self, c: &EventSet) -> Option<&EntryElement> {
        let seen = self.context.intersection(c);
        let mut hits = self.elements.iter().filter(|el| el.modifiers == seen);
        let hit = hits.next();
        debug_assert!(hits.next().is_none(), "modifier sets of an entry are distinct");
        hit
    }

    /// The entry is satisfied at `c`.
    pub fn admits(&self, c: &EventSet) -> bool {
        self.select(c).is_some_and(|el| el.dependencies.is_subset(c))
    }
}

impl fmt::Display for CdEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, el) in self.elements.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{el}")?;
        }
        write!(f, "}} >> {}", self.target)
    }
}

/// `Cxt` of an entry.
pub fn context(entry: &CdEntry) -> EventSet {
    entry.context().clone()
}

/// A context-dependent event structure `(E, #, ≫)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cdes {
    events: EventSet,
    conflict: ConflictRelation,
    entries: BTreeMap<EventId, BTreeSet<CdEntry>>,
}

impl Cdes {
    pub fn new<I>(events: EventSet, conflict: ConflictRelation, entries: I) -> Result<Self, ValidationError>
    where
        I: IntoIterator<Item = CdEntry>,
    {
        require_conflict_declared(&events, &conflict)?;
        let mut by_target: BTreeMap<EventId, BTreeSet<CdEntry>> = BTreeMap::new();
        for entry in entries {
            require_declared(&events, &entry.target)?;
            for el in &entry.elements {
                require_declared_set(&events, &el.modifiers)?;
                require_declared_set(&events, &el.dependencies)?;
                if !is_conflict_free(&el.modifiers, &conflict) {
                    return Err(ValidationError::new(
                        Rule::ConflictFreeModifiers,
                        alloc::format!("entry for {}: {}", entry.target, el.modifiers),
                    ));
                }
                if !is_conflict_free(&el.dependencies, &conflict) {
                    return Err(ValidationError::new(
                        Rule::ConflictFreeDependencies,
                        alloc::format!("entry for {}: {}", entry.target, el.dependencies),
                    ));
                }
            }
            by_target.entry(entry.target.clone()).or_default().insert(entry);
        }
        Ok(Cdes { events, conflict, entries: by_target })
    }

    pub fn events(&self) -> &EventSet {
        &self.events
    }

    pub fn conflict(&self) -> &ConflictRelation {
        &self.conflict
    }

    /// All entries, grouped by target in event order.
    pub fn entries(&self) -> impl Iterator<Item = &CdEntry> + '_ {
        self.entries.values().flatten()
    }

    pub fn entries_for(&self, e: &EventId) -> impl Iterator<Item = &CdEntry> + '_ {
        self.entries.get(e).into_iter().flatten()
    }

    pub fn entry_count(&self) -> usize {
        self.entries.values().map(BTreeSet::len).sum()
    }

    /// `C ⊢ e` with its preconditions checked: `e` is a known event not yet
    /// in `c`, and `c` only holds known events.
    ///
    /// An event without any entry is never enabled. Conflict with `c` is
    /// not part of enabling; [`Cdes::configurations`] checks it.
    pub fn enabled(&self, c: &EventSet, e: &EventId) -> Result<bool, Error> {
        if !self.events.contains(e) {
            return Err(Error::UnknownEvent(e.clone()));
        }
        if !c.is_subset(&self.events) {
            return Err(Error::UndeclaredEvents { set: c.difference(&self.events) });
        }
        if c.contains(e) {
            return Err(Error::AlreadyOccurred { event: e.clone(), set: c.clone() });
        }
        Ok(self.enables(c, e))
    }

    pub(crate) fn enables(&self, c: &EventSet, e: &EventId) -> bool {
        match self.entries.get(e) {
            Some(entries) if !entries.is_empty() => entries.iter().all(|z| z.admits(c)),
            _ => false,
        }
    }

    /// `Conf_CDES` with `↦_CDES`, explored from `∅`.
    pub fn configurations(&self) -> Lattice {
        Lattice::explore(&self.events, |c, e| {
            self.enables(c, e) && !self.conflict.conflicts_with_any(e, c)
        })
    }

    /// Pairs never found together in a configuration.
    pub fn semantic_conflict(&self) -> ConflictRelation {
        self.configurations().semantic_conflict(&self.events)
    }

    pub fn is_full(&self) -> bool {
        self.configurations().is_full(&self.events)
    }

    pub fn is_faithful(&self) -> bool {
        self.semantic_conflict().is_subset(&self.conflict)
    }

    /// Human readable one-line-per-entry listing, used in diagnostics.
    pub fn describe(&self) -> String {
        let lines: Vec<String> = self.entries().map(|z| alloc::format!("{z}")).collect();
        lines.join("\n")
    }
}
