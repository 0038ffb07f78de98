//! Translations of every kind into context-dependent event structures.
//!
//! Two routes exist: a direct construction per kind and the generic route
//! through the event automaton ([`ea_to_cdes`]). Both are checked by
//! comparing automata, see [`TranslationReport`].

use alloc::collections::BTreeSet;
use alloc::string::ToString;
use alloc::vec::Vec;

use crate::automaton::{EventAutomaton, Mismatch};
use crate::cdes::{CdEntry, Cdes, EntryElement};
use crate::classical::{Dces, Fes, Ies, InhibitorTriple, Pes, Rpes};
use crate::error::Error;
use crate::kernel::{is_conflict_free, ConflictRelation, EventId, EventSet};
use crate::structure::{Kind, Structure};

/// `Ctr(a, e)`: states from which a single step adds `e`.
pub fn ctr(a: &EventAutomaton, e: &EventId) -> Result<BTreeSet<EventSet>, Error> {
    known(a, e)?;
    Ok(a.states()
        .iter()
        .filter(|s| !s.contains(e) && a.has_transition(s, &s.with(e)))
        .cloned()
        .collect())
}

/// `Rtc(a, e)`: states whose extension by `e` is not a state.
pub fn rtc(a: &EventAutomaton, e: &EventId) -> Result<BTreeSet<EventSet>, Error> {
    known(a, e)?;
    Ok(a.states().iter().filter(|s| !a.states().contains(&s.with(e))).cloned().collect())
}

/// States from which `e` cannot be added by a step: [`rtc`] plus the
/// states `s` with `s ∪ {e}` a state that `s` does not step to.
pub fn blocked(a: &EventAutomaton, e: &EventId) -> Result<BTreeSet<EventSet>, Error> {
    known(a, e)?;
    Ok(a.states()
        .iter()
        .filter(|s| !s.contains(e) && !a.has_transition(s, &s.with(e)))
        .cloned()
        .collect())
}

fn known(a: &EventAutomaton, e: &EventId) -> Result<(), Error> {
    if a.events().contains(e) {
        Ok(())
    } else {
        Err(Error::UnknownEvent(e.clone()))
    }
}

/// Pairs of events never found together in a state.
pub fn automaton_conflict(a: &EventAutomaton) -> ConflictRelation {
    let events: Vec<&EventId> = a.events().iter().collect();
    let mut k = ConflictRelation::new();
    for (i, x) in events.iter().enumerate() {
        for y in &events[i + 1..] {
            if !a.states().iter().any(|s| s.contains(x) && s.contains(y)) {
                k.insert((*x).clone(), (*y).clone()).expect("distinct events");
            }
        }
    }
    k
}

/// The CDES of a simple, complete automaton in which every event occurs
/// and every transition adds a single event:
/// `{(X, ∅) | X ∈ Ctr(e)} ∪ {(X, {e}) | X ∈ blocked(e)} ≫ e`, with conflict
/// the pairs that never co-occur.
///
/// With [`rtc`] in place of [`blocked`] a state `s` such that `s ∪ {e}` is a
/// state but not a successor of `s` would match no element, and `e` would
/// wrongly be enabled there (asymmetric conflict is the smallest case).
pub fn ea_to_cdes(a: &EventAutomaton) -> Result<Cdes, Error> {
    let occurring: EventSet = a.states().iter().flat_map(|s| s.iter().cloned()).collect();
    if let Some(e) = a.events().difference(&occurring).iter().next() {
        return Err(Error::DanglingEvent(e.clone()));
    }
    if !a.initial().is_empty() {
        return Err(Error::NonEmptyInitial(a.initial().clone()));
    }
    if let Some(e) = a.unsimple_events().iter().next() {
        return Err(Error::NotSimple(e.clone()));
    }
    if let Some(s) = a.unreachable_states().into_iter().next() {
        return Err(Error::NotComplete(s));
    }
    if let Some((s, t)) = a.trans().iter().find(|(s, t)| t.len() != s.len() + 1) {
        return Err(Error::MultiEventTransition { from: s.clone(), to: t.clone() });
    }
    let conflict = automaton_conflict(a);
    let mut entries = Vec::new();
    for e in a.events() {
        let positive = ctr(a, e)?.into_iter().map(|x| EntryElement::new(x, EventSet::new()));
        let negative = blocked(a, e)?.into_iter().map(|x| EntryElement::new(x, EventSet::singleton(e.clone())));
        entries.push(CdEntry::new(e.clone(), positive.chain(negative))?);
    }
    let out = Cdes::new(a.events().clone(), conflict, entries)?;
    EventAutomaton::from_lattice(out.events(), &out.configurations())
        .compare(a)
        .map_err(Error::NotEquivalent)?;
    Ok(out)
}

/// `(x, y)`, or `(x, {e})` when `y` is not conflict-free: such a
/// dependency set can never be met, and neither can `{e}`.
fn element(x: EventSet, y: EventSet, e: &EventId, k: &ConflictRelation) -> EntryElement {
    if is_conflict_free(&y, k) {
        EntryElement::new(x, y)
    } else {
        EntryElement::new(x, EventSet::singleton(e.clone()))
    }
}

/// `{(∅, ⌊e⌋ ∖ {e})} ≫ e` for every event.
pub fn pes_to_cdes(p: &Pes) -> Result<Cdes, Error> {
    let entries = p
        .events()
        .iter()
        .map(|e| {
            let mut down = p.down(e);
            down.remove(e);
            CdEntry::new(e.clone(), [element(EventSet::new(), down, e, p.conflict())])
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Cdes::new(p.events().clone(), p.conflict().clone(), entries)?)
}

/// `{(∅, ic(e))} ≫ e` for every event.
pub fn rpes_to_cdes(r: &Rpes) -> Result<Cdes, Error> {
    let entries = r
        .events()
        .iter()
        .map(|e| CdEntry::new(e.clone(), [element(EventSet::new(), r.ic(e), e, r.conflict())]))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Cdes::new(r.events().clone(), r.conflict().clone(), entries)?)
}

/// Maximal conflict-free subsets of `fl(e)`.
pub fn maxfl(f: &Fes, e: &EventId) -> Result<BTreeSet<EventSet>, Error> {
    if !f.events().contains(e) {
        return Err(Error::UnknownEvent(e.clone()));
    }
    let fl = f.fl(e);
    let cf = |x: &EventSet| x.iter().all(|a| x.iter().all(|b| !f.in_conflict(a, b)));
    Ok(fl
        .subsets()
        .into_iter()
        .filter(|x| cf(x) && fl.difference(x).iter().all(|y| !cf(&x.with(y))))
        .collect())
}

/// `{(X, ∅) | X ∈ maxfl(e)} ≫ e`. The structure must be full and faithful.
pub fn fes_to_cdes(f: &Fes) -> Result<Cdes, Error> {
    let lattice = f.configurations().lattice;
    if let Some(e) = f.events().difference(&lattice.occurring_events()).iter().next() {
        return Err(Error::NotFull(e.clone()));
    }
    let semantic = lattice.semantic_conflict(f.events());
    if let Some((a, b)) = semantic.iter().find(|(a, b)| !f.conflict().contains(a, b)) {
        return Err(Error::NotFaithful(a.clone(), b.clone()));
    }
    let mut entries = Vec::new();
    for e in f.events() {
        let elements = maxfl(f, e)?.into_iter().map(|x| EntryElement::new(x, EventSet::new()));
        entries.push(CdEntry::new(e.clone(), elements)?);
    }
    Ok(Cdes::new(f.events().clone(), f.conflict().clone(), entries)?)
}

/// One entry per event ranging over the conflict-free subsets `X` of
/// `gro(e) ∪ shr(e)`, with dependencies `(ic(e) ∖ ⋃Drop) ∪ ⋃Add`.
pub fn dces_to_cdes(d: &Dces) -> Result<Cdes, Error> {
    let k = d.conflict();
    let mut entries = Vec::new();
    for e in d.events() {
        let modifiers = d.gro(e).union(&d.shr(e));
        let elements = modifiers.subsets().into_iter().filter(|x| is_conflict_free(x, k)).map(|x| {
            let y = d.ic(e).difference(&d.dc(&x, e)).union(&d.ac(&x, e));
            element(x, y, e, k)
        });
        entries.push(CdEntry::new(e.clone(), elements)?);
    }
    Ok(Cdes::new(d.events().clone(), k.clone(), entries)?)
}

/// One entry per inhibitor triple `a ⊢ e ↠ A`, plus `{(∅, ∅)} ≫ e` for
/// events without triples. Conflict is the induced one.
pub fn ies_to_cdes(i: &Ies) -> Result<Cdes, Error> {
    let k = i.conflict();
    let mut entries = Vec::new();
    for e in i.events() {
        if i.triples_for(e).next().is_none() {
            entries.push(CdEntry::new(e.clone(), [EntryElement::new(EventSet::new(), EventSet::new())])?);
        }
    }
    for t in i.triples() {
        entries.push(CdEntry::new(t.target.clone(), inhibitor_elements(t, k))?);
    }
    Ok(Cdes::new(i.events().clone(), k.clone(), entries)?)
}

fn inhibitor_elements(t: &InhibitorTriple, k: &ConflictRelation) -> Vec<EntryElement> {
    let none = || EntryElement::new(EventSet::new(), EventSet::new());
    let alts: Vec<&EventId> = t.alternatives.iter().collect();
    match (&t.inhibitor, alts.as_slice()) {
        (Some(x), []) => {
            alloc::vec![none(), EntryElement::new(EventSet::singleton(x.clone()), EventSet::singleton(t.target.clone()))]
        }
        (None, [y]) => alloc::vec![EntryElement::new(EventSet::new(), EventSet::singleton((*y).clone()))],
        (Some(x), [y]) => {
            alloc::vec![none(), EntryElement::new(EventSet::singleton(x.clone()), EventSet::singleton((*y).clone()))]
        }
        (None, ys) => ys.iter().map(|y| EntryElement::new(EventSet::singleton((*y).clone()), EventSet::new())).collect(),
        (Some(x), ys) => {
            let mut out = alloc::vec![none()];
            for y in ys {
                let single = EventSet::singleton((*y).clone());
                let pair = single.with(x);
                out.push(EntryElement::new(single, EventSet::new()));
                if is_conflict_free(&pair, k) {
                    out.push(EntryElement::new(pair, EventSet::new()));
                }
            }
            out
        }
    }
}

/// The IES of a growing event structure (a DCES without shrinking).
pub fn ges_to_ies(d: &Dces) -> Result<Ies, Error> {
    if !d.shrink().is_empty() {
        return Err(Error::NotGes);
    }
    let mut triples = BTreeSet::new();
    for (a, b) in d.conflict().iter() {
        triples.insert(InhibitorTriple::new(Some(a.clone()), b.clone(), EventSet::new()));
        triples.insert(InhibitorTriple::new(Some(b.clone()), a.clone(), EventSet::new()));
    }
    for (c, t) in d.enabling() {
        triples.insert(InhibitorTriple::new(None, t.clone(), EventSet::singleton(c.clone())));
    }
    for g in d.grow() {
        triples.insert(InhibitorTriple::new(
            Some(g.modifier.clone()),
            g.target.clone(),
            EventSet::singleton(g.contribution.clone()),
        ));
    }
    Ok(Ies::new(d.events().clone(), triples)?)
}

/// Target kind of a translation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Cdes,
    Ies,
}

/// How a translation is computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    Direct,
    Automaton,
}

/// A translated structure with the outcome of the equivalence check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslationReport {
    pub output: Structure,
    pub source: Kind,
    pub verified: bool,
    pub witness: Option<Mismatch>,
}

impl TranslationReport {
    fn check(source: &Structure, output: Structure) -> Result<Self, Error> {
        let witness = source.automaton()?.compare(&output.automaton()?).err();
        Ok(TranslationReport { output, source: source.kind(), verified: witness.is_none(), witness })
    }
}

/// `ea_to_cdes` of the structure's automaton.
pub fn any_to_cdes(x: &Structure) -> Result<TranslationReport, Error> {
    let out = ea_to_cdes(&x.automaton()?)?;
    TranslationReport::check(x, Structure::Cdes(out))
}

/// Translates `x` along `route`, then compares automata.
pub fn translate(x: &Structure, target: Target, route: Route) -> Result<TranslationReport, Error> {
    let no_route = || Error::NoRoute {
        from: x.kind().to_string(),
        to: match target {
            Target::Cdes => "cdes",
            Target::Ies => "ies",
        }
        .to_string(),
    };
    let output = match (target, route, x) {
        (Target::Cdes, Route::Automaton, _) => return any_to_cdes(x),
        (Target::Cdes, Route::Direct, Structure::Cdes(c)) => Structure::Cdes(c.clone()),
        (Target::Cdes, Route::Direct, Structure::Pes(p)) => Structure::Cdes(pes_to_cdes(p)?),
        (Target::Cdes, Route::Direct, Structure::Rpes(r)) => Structure::Cdes(rpes_to_cdes(r)?),
        (Target::Cdes, Route::Direct, Structure::Fes(f)) => Structure::Cdes(fes_to_cdes(f)?),
        (Target::Cdes, Route::Direct, Structure::Dces(d)) => Structure::Cdes(dces_to_cdes(d)?),
        (Target::Cdes, Route::Direct, Structure::Ies(i)) => Structure::Cdes(ies_to_cdes(i)?),
        (Target::Cdes, Route::Direct, Structure::Ea(a)) => Structure::Cdes(ea_to_cdes(a)?),
        (Target::Ies, _, Structure::Dces(d)) => Structure::Ies(ges_to_ies(d)?),
        (Target::Ies, _, Structure::Ies(i)) => Structure::Ies(i.clone()),
        _ => return Err(no_route()),
    };
    TranslationReport::check(x, output)
}
