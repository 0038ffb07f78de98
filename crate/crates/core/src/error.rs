use alloc::string::String;

use crate::automaton::Mismatch;
use crate::kernel::{EventId, EventSet, ValidationError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Validation(#[from] ValidationError),

    #[error("unknown event `{0}`")]
    UnknownEvent(EventId),

    #[error("event `{event}` already occurs in {set}")]
    AlreadyOccurred { event: EventId, set: EventSet },

    #[error("{set} is not a subset of the declared events")]
    UndeclaredEvents { set: EventSet },

    #[error("unknown state {0}")]
    UnknownState(EventSet),

    #[error("the empty set is not a configuration (no `{{}} |- {{}}` enabling)")]
    EmptyNotConfiguration,

    #[error("transition {from} -> {to} adds more than one event")]
    MultiEventTransition { from: EventSet, to: EventSet },

    #[error("automaton is not simple: event `{0}` is never added by a single step")]
    NotSimple(EventId),

    #[error("automaton is not complete: state {0} is unreachable from the initial state")]
    NotComplete(EventSet),

    #[error("event `{0}` occurs in no state")]
    DanglingEvent(EventId),

    #[error("initial state {0} is not the empty set")]
    NonEmptyInitial(EventSet),

    #[error("structure is not full: event `{0}` occurs in no configuration")]
    NotFull(EventId),

    #[error("structure is not faithful: `{0}` and `{1}` never co-occur but are not in conflict")]
    NotFaithful(EventId, EventId),

    #[error("not a growing event structure: the shrinking relation is not empty")]
    NotGes,

    #[error("no {to} translation defined for {from} structures")]
    NoRoute { from: String, to: String },

    #[error("translation is not equivalent to its source: {0}")]
    NotEquivalent(Mismatch),
}
