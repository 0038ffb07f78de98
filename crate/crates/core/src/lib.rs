//! Event structures and their configuration spaces.
//!
//! The crate models context-dependent event structures ([`Cdes`]) next to
//! six classical kinds (prime, flow, relaxed prime, dynamic causality,
//! inhibitor and resolvable-conflict event structures). Every kind can be
//! unfolded into its [`Lattice`] of configurations and viewed as an
//! [`EventAutomaton`]; two structures are equivalent exactly when their
//! automata coincide. The [`translate`] module embeds every kind into a
//! [`Cdes`], either directly or through the automaton.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod automaton;
pub mod cdes;
pub mod classical;
mod error;
pub mod kernel;
pub mod lattice;
pub mod oracle;
pub mod structure;
pub mod translate;

pub use automaton::{EventAutomaton, Mismatch};
pub use cdes::{Cdes, CdEntry, EntryElement};
pub use classical::{Dces, Fes, GrowTriple, Ies, InhibitorTriple, Pes, Rces, Rpes, ShrinkTriple};
pub use error::Error;
pub use kernel::{is_conflict_free, ConflictRelation, EventId, EventSet, Rule, ValidationError};
pub use lattice::{Edge, Lattice};
pub use structure::{Kind, Structure};
