//! Events, sets of events and conflict relations.

use alloc::collections::btree_set::{self, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

/// Name of an event. Names are non-empty tokens over ASCII letters, digits
/// and `_`; two events are equal iff their names are.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EventId(String);

impl EventId {
    pub fn new(name: impl Into<String>) -> Result<Self, ValidationError> {
        let name = name.into();
        if is_token(&name) {
            Ok(EventId(name))
        } else {
            Err(ValidationError::new(Rule::EventName, name))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

pub(crate) fn is_token(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

impl fmt::Display for EventId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl AsRef<str> for EventId {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

/// A finite set of events, ordered lexicographically by name.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EventSet(BTreeSet<EventId>);

impl EventSet {
    pub fn new() -> Self {
        EventSet(BTreeSet::new())
    }

    pub fn singleton(e: EventId) -> Self {
        let mut s = BTreeSet::new();
        s.insert(e);
        EventSet(s)
    }

    /// Builds a set from raw names, rejecting invalid tokens.
    pub fn from_names<I, S>(names: I) -> Result<Self, ValidationError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        names.into_iter().map(EventId::new).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, e: &EventId) -> bool {
        self.0.contains(e)
    }

    pub fn insert(&mut self, e: EventId) -> bool {
        self.0.insert(e)
    }

    pub fn remove(&mut self, e: &EventId) -> bool {
        self.0.remove(e)
    }

    /// `self ∪ {e}` as a new set.
    pub fn with(&self, e: &EventId) -> EventSet {
        let mut s = self.clone();
        s.0.insert(e.clone());
        s
    }

    pub fn iter(&self) -> btree_set::Iter<'_, EventId> {
        self.0.iter()
    }

    pub fn is_subset(&self, other: &EventSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_disjoint(&self, other: &EventSet) -> bool {
        self.0.is_disjoint(&other.0)
    }

    pub fn union(&self, other: &EventSet) -> EventSet {
        EventSet(self.0.union(&other.0).cloned().collect())
    }

    pub fn intersection(&self, other: &EventSet) -> EventSet {
        EventSet(self.0.intersection(&other.0).cloned().collect())
    }

    pub fn difference(&self, other: &EventSet) -> EventSet {
        EventSet(self.0.difference(&other.0).cloned().collect())
    }

    /// All subsets, in no particular order. Exponential; meant for the
    /// handful of events a model has.
    pub fn subsets(&self) -> Vec<EventSet> {
        let items: Vec<&EventId> = self.0.iter().collect();
        assert!(items.len() < 32, "subset enumeration over {} events", items.len());
        (0u32..(1u32 << items.len()))
            .map(|mask| {
                items
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, e)| (*e).clone())
                    .collect()
            })
            .collect()
    }
}

impl FromIterator<EventId> for EventSet {
    fn from_iter<T: IntoIterator<Item = EventId>>(iter: T) -> Self {
        EventSet(iter.into_iter().collect())
    }
}

impl<'a> FromIterator<&'a EventId> for EventSet {
    fn from_iter<T: IntoIterator<Item = &'a EventId>>(iter: T) -> Self {
        EventSet(iter.into_iter().cloned().collect())
    }
}

impl Extend<EventId> for EventSet {
    fn extend<T: IntoIterator<Item = EventId>>(&mut self, iter: T) {
        self.0.extend(iter)
    }
}

impl<'a> IntoIterator for &'a EventSet {
    type Item = &'a EventId;
    type IntoIter = btree_set::Iter<'a, EventId>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl IntoIterator for EventSet {
    type Item = EventId;
    type IntoIter = btree_set::IntoIter<EventId>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

/// Renders as `{a,b,c}`, `{}` for the empty set.
impl fmt::Display for EventSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(e.as_str())?;
        }
        f.write_str("}")
    }
}

/// Irreflexive, symmetric binary conflict. Pairs are stored unordered as
/// `(min, max)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConflictRelation(BTreeSet<(EventId, EventId)>);

impl ConflictRelation {
    pub fn new() -> Self {
        ConflictRelation(BTreeSet::new())
    }

    pub fn from_pairs<I>(pairs: I) -> Result<Self, ValidationError>
    where
        I: IntoIterator<Item = (EventId, EventId)>,
    {
        let mut k = ConflictRelation::new();
        for (a, b) in pairs {
            k.insert(a, b)?;
        }
        Ok(k)
    }

    /// Adds `a # b`. A reflexive pair is rejected.
    pub fn insert(&mut self, a: EventId, b: EventId) -> Result<bool, ValidationError> {
        if a == b {
            return Err(ValidationError::new(Rule::IrreflexiveConflict, format_pair(&a, &b)));
        }
        Ok(self.0.insert(ordered(a, b)))
    }

    pub fn contains(&self, a: &EventId, b: &EventId) -> bool {
        if a <= b {
            self.0.contains(&(a.clone(), b.clone()))
        } else {
            self.0.contains(&(b.clone(), a.clone()))
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&EventId, &EventId)> + '_ {
        self.0.iter().map(|(a, b)| (a, b))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_subset(&self, other: &ConflictRelation) -> bool {
        self.0.is_subset(&other.0)
    }

    /// Events mentioned by some pair.
    pub fn support(&self) -> EventSet {
        self.0.iter().flat_map(|(a, b)| [a.clone(), b.clone()]).collect()
    }

    /// Whether `e` conflicts with some member of `x`.
    pub fn conflicts_with_any(&self, e: &EventId, x: &EventSet) -> bool {
        x.iter().any(|y| self.contains(e, y))
    }
}

fn ordered(a: EventId, b: EventId) -> (EventId, EventId) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

fn format_pair(a: &EventId, b: &EventId) -> String {
    let mut s = a.to_string();
    s.push_str(" # ");
    s.push_str(b.as_str());
    s
}

/// `CF(X)`: no two members of `x` are in conflict.
pub fn is_conflict_free(x: &EventSet, k: &ConflictRelation) -> bool {
    if x.len() < 2 || k.is_empty() {
        return true;
    }
    k.iter().all(|(a, b)| !(x.contains(a) && x.contains(b)))
}

/// Well-formedness rules checked when a structure is built.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    EventName,
    UndeclaredEvent,
    IrreflexiveConflict,
    EmptyEntry,
    DistinctModifiers,
    ConflictFreeModifiers,
    ConflictFreeDependencies,
    PartialOrder,
    ConflictInheritance,
    CausalityConflictDisjoint,
    IrreflexiveFlow,
    AcyclicCauses,
    ModifierDistinct,
    DcesCondition1,
    DcesCondition2,
    DcesCondition3,
    DcesCondition4,
    InhibitorNonEmpty,
    InhibitorConflict,
    InitialState,
    StrictGrowth,
    UnknownState,
}

impl Rule {
    pub fn as_str(self) -> &'static str {
        match self {
            Rule::EventName => "event name",
            Rule::UndeclaredEvent => "undeclared event",
            Rule::IrreflexiveConflict => "irreflexive conflict",
            Rule::EmptyEntry => "non-empty entry",
            Rule::DistinctModifiers => "distinct modifier sets",
            Rule::ConflictFreeModifiers => "conflict-free modifiers",
            Rule::ConflictFreeDependencies => "conflict-free dependencies",
            Rule::PartialOrder => "partial order",
            Rule::ConflictInheritance => "conflict inheritance",
            Rule::CausalityConflictDisjoint => "causality and conflict disjoint",
            Rule::IrreflexiveFlow => "irreflexive flow",
            Rule::AcyclicCauses => "acyclic immediate causes",
            Rule::ModifierDistinct => "modifier distinct from target and contribution",
            Rule::DcesCondition1 => "condition 1",
            Rule::DcesCondition2 => "condition 2",
            Rule::DcesCondition3 => "condition 3",
            Rule::DcesCondition4 => "condition 4",
            Rule::InhibitorNonEmpty => "non-empty inhibitor triple",
            Rule::InhibitorConflict => "pairwise conflicting alternatives",
            Rule::InitialState => "initial state",
            Rule::StrictGrowth => "strict growth",
            Rule::UnknownState => "transition endpoint is a state",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A broken well-formedness rule and the offending piece of the model.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{rule}: {witness}")]
pub struct ValidationError {
    pub rule: Rule,
    pub witness: String,
}

impl ValidationError {
    pub fn new(rule: Rule, witness: impl Into<String>) -> Self {
        ValidationError { rule, witness: witness.into() }
    }
}

pub(crate) fn require_declared(events: &EventSet, e: &EventId) -> Result<(), ValidationError> {
    if events.contains(e) {
        Ok(())
    } else {
        Err(ValidationError::new(Rule::UndeclaredEvent, e.as_str()))
    }
}

pub(crate) fn require_declared_set(events: &EventSet, x: &EventSet) -> Result<(), ValidationError> {
    x.iter().try_for_each(|e| require_declared(events, e))
}

pub(crate) fn require_conflict_declared(
    events: &EventSet,
    k: &ConflictRelation,
) -> Result<(), ValidationError> {
    k.iter().try_for_each(|(a, b)| {
        require_declared(events, a)?;
        require_declared(events, b)
    })
}
