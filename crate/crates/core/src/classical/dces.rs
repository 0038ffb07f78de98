use alloc::collections::BTreeSet;
use alloc::format;

use super::{Relation, Rpes};
use crate::kernel::{require_declared, ConflictRelation, EventId, EventSet, Rule, ValidationError};
use crate::lattice::Lattice;

/// `modifier` drops the cause `contribution` of `target`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ShrinkTriple {
    pub modifier: EventId,
    pub target: EventId,
    pub contribution: EventId,
}

/// `modifier` adds the cause `contribution` to `target`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GrowTriple {
    pub modifier: EventId,
    pub target: EventId,
    pub contribution: EventId,
}

impl ShrinkTriple {
    pub fn new(modifier: EventId, target: EventId, contribution: EventId) -> Self {
        ShrinkTriple { modifier, target, contribution }
    }
}

impl GrowTriple {
    pub fn new(modifier: EventId, target: EventId, contribution: EventId) -> Self {
        GrowTriple { modifier, target, contribution }
    }
}

/// A dynamic causality event structure: a relaxed PES with shrinking and
/// growing causality, restricted to the single-state variant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dces {
    base: Rpes,
    shrink: BTreeSet<ShrinkTriple>,
    grow: BTreeSet<GrowTriple>,
}

impl Dces {
    pub fn new(
        base: Rpes,
        shrink: BTreeSet<ShrinkTriple>,
        grow: BTreeSet<GrowTriple>,
    ) -> Result<Self, ValidationError> {
        let events = base.events();
        let triples = shrink
            .iter()
            .map(|t| (&t.modifier, &t.target, &t.contribution))
            .chain(grow.iter().map(|t| (&t.modifier, &t.target, &t.contribution)));
        for (m, t, c) in triples {
            require_declared(events, m)?;
            require_declared(events, t)?;
            require_declared(events, c)?;
            if m == t || m == c {
                return Err(ValidationError::new(
                    Rule::ModifierDistinct,
                    format!("modifier {m}, target {t}, contribution {c}"),
                ));
            }
        }
        let enables = |c: &EventId, t: &EventId| base.enabling().contains(&(c.clone(), t.clone()));
        let grown = |c: &EventId, t: &EventId| grow.iter().any(|g| &g.contribution == c && &g.target == t);
        let shrunk = |c: &EventId, t: &EventId| shrink.iter().any(|s| &s.contribution == c && &s.target == t);
        for s in &shrink {
            if !grown(&s.contribution, &s.target) && !enables(&s.contribution, &s.target) {
                return Err(ValidationError::new(
                    Rule::DcesCondition1,
                    format!("shrink {} drops {} -> {}, which is not an enabling", s.modifier, s.contribution, s.target),
                ));
            }
        }
        for g in &grow {
            if !shrunk(&g.contribution, &g.target) && enables(&g.contribution, &g.target) {
                return Err(ValidationError::new(
                    Rule::DcesCondition2,
                    format!("grow {} adds {} -> {}, which is already an enabling", g.modifier, g.contribution, g.target),
                ));
            }
        }
        for g in &grow {
            let twin = ShrinkTriple::new(g.modifier.clone(), g.target.clone(), g.contribution.clone());
            if shrink.contains(&twin) {
                return Err(ValidationError::new(
                    Rule::DcesCondition3,
                    format!("{} both adds and drops {} -> {}", g.modifier, g.contribution, g.target),
                ));
            }
        }
        for g in &grow {
            if let Some(s) = shrink.iter().find(|s| s.contribution == g.contribution && s.target == g.target) {
                return Err(ValidationError::new(
                    Rule::DcesCondition4,
                    format!(
                        "{} -> {} is dropped by {} and added by {}",
                        g.contribution, g.target, s.modifier, g.modifier
                    ),
                ));
            }
        }
        Ok(Dces { base, shrink, grow })
    }

    pub fn base(&self) -> &Rpes {
        &self.base
    }

    pub fn events(&self) -> &EventSet {
        self.base.events()
    }

    pub fn conflict(&self) -> &ConflictRelation {
        self.base.conflict()
    }

    pub fn enabling(&self) -> &Relation {
        self.base.enabling()
    }

    pub fn shrink(&self) -> &BTreeSet<ShrinkTriple> {
        &self.shrink
    }

    pub fn grow(&self) -> &BTreeSet<GrowTriple> {
        &self.grow
    }

    pub fn ic(&self, e: &EventId) -> EventSet {
        self.base.ic(e)
    }

    /// `shr(e)`: modifiers that drop some cause of `e`.
    pub fn shr(&self, e: &EventId) -> EventSet {
        self.shrink.iter().filter(|s| &s.target == e).map(|s| s.modifier.clone()).collect()
    }

    /// `gro(e)`: modifiers that add some cause to `e`.
    pub fn gro(&self, e: &EventId) -> EventSet {
        self.grow.iter().filter(|g| &g.target == e).map(|g| g.modifier.clone()).collect()
    }

    /// `Drop(m, e)`.
    pub fn dropped_by(&self, m: &EventId, e: &EventId) -> EventSet {
        self.shrink
            .iter()
            .filter(|s| &s.modifier == m && &s.target == e)
            .map(|s| s.contribution.clone())
            .collect()
    }

    /// `Add(m, e)`.
    pub fn added_by(&self, m: &EventId, e: &EventId) -> EventSet {
        self.grow
            .iter()
            .filter(|g| &g.modifier == m && &g.target == e)
            .map(|g| g.contribution.clone())
            .collect()
    }

    /// `dc(H, e)`.
    pub fn dc(&self, h: &EventSet, e: &EventId) -> EventSet {
        h.intersection(&self.shr(e)).iter().flat_map(|m| self.dropped_by(m, e)).collect()
    }

    /// `ac(H, e)`.
    pub fn ac(&self, h: &EventSet, e: &EventId) -> EventSet {
        h.intersection(&self.gro(e)).iter().flat_map(|m| self.added_by(m, e)).collect()
    }

    /// `(dc(H, e), ac(H, e))`.
    pub fn aux(&self, h: &EventSet, e: &EventId) -> (EventSet, EventSet) {
        (self.dc(h, e), self.ac(h, e))
    }

    /// Causes `e` still needs after history `h`.
    pub fn required(&self, h: &EventSet, e: &EventId) -> EventSet {
        self.ic(e).union(&self.ac(h, e)).difference(&self.dc(h, e))
    }

    pub fn configurations(&self) -> Lattice {
        Lattice::explore(self.events(), |c, e| {
            !self.conflict().conflicts_with_any(e, c) && self.required(c, e).is_subset(c)
        })
    }
}
