//! A tagged union over every supported kind.

use core::fmt;
use core::str::FromStr;

use crate::automaton::EventAutomaton;
use crate::cdes::Cdes;
use crate::classical::{Dces, Fes, Ies, Pes, Rces, Rpes};
use crate::error::Error;
use crate::kernel::EventSet;
use crate::lattice::Lattice;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    Cdes,
    Pes,
    Fes,
    Rpes,
    Dces,
    Ies,
    Rces,
    Ea,
}

impl Kind {
    pub const ALL: [Kind; 8] =
        [Kind::Cdes, Kind::Pes, Kind::Fes, Kind::Rpes, Kind::Dces, Kind::Ies, Kind::Rces, Kind::Ea];

    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Cdes => "cdes",
            Kind::Pes => "pes",
            Kind::Fes => "fes",
            Kind::Rpes => "rpes",
            Kind::Dces => "dces",
            Kind::Ies => "ies",
            Kind::Rces => "rces",
            Kind::Ea => "ea",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Error for an unrecognised kind tag.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("unknown kind `{0}`")]
pub struct UnknownKind(pub alloc::string::String);

impl FromStr for Kind {
    type Err = UnknownKind;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Kind::ALL.into_iter().find(|k| k.as_str() == s).ok_or_else(|| UnknownKind(s.into()))
    }
}

/// Any supported structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Structure {
    Cdes(Cdes),
    Pes(Pes),
    Fes(Fes),
    Rpes(Rpes),
    Dces(Dces),
    Ies(Ies),
    Rces(Rces),
    Ea(EventAutomaton),
}

impl Structure {
    pub fn kind(&self) -> Kind {
        match self {
            Structure::Cdes(_) => Kind::Cdes,
            Structure::Pes(_) => Kind::Pes,
            Structure::Fes(_) => Kind::Fes,
            Structure::Rpes(_) => Kind::Rpes,
            Structure::Dces(_) => Kind::Dces,
            Structure::Ies(_) => Kind::Ies,
            Structure::Rces(_) => Kind::Rces,
            Structure::Ea(_) => Kind::Ea,
        }
    }

    pub fn events(&self) -> &EventSet {
        match self {
            Structure::Cdes(x) => x.events(),
            Structure::Pes(x) => x.events(),
            Structure::Fes(x) => x.events(),
            Structure::Rpes(x) => x.events(),
            Structure::Dces(x) => x.events(),
            Structure::Ies(x) => x.events(),
            Structure::Rces(x) => x.events(),
            Structure::Ea(x) => x.events(),
        }
    }

    /// The configurations and `↦` of the structure's kind.
    pub fn lattice(&self) -> Result<Lattice, Error> {
        Ok(match self {
            Structure::Cdes(x) => x.configurations(),
            Structure::Pes(x) => x.configurations(),
            Structure::Fes(x) => x.configurations().lattice,
            Structure::Rpes(x) => x.configurations(),
            Structure::Dces(x) => x.configurations(),
            Structure::Ies(x) => x.configurations(),
            Structure::Rces(x) => x.configurations()?,
            Structure::Ea(x) => x.to_lattice()?,
        })
    }

    /// `⟨E, Conf, ↦, ∅⟩`; an automaton is returned as it is.
    pub fn automaton(&self) -> Result<EventAutomaton, Error> {
        match self {
            Structure::Ea(x) => Ok(x.clone()),
            other => Ok(EventAutomaton::from_lattice(other.events(), &other.lattice()?)),
        }
    }
}

macro_rules! from_variant {
    ($($t:ident),*) => {
        $(impl From<$t> for Structure {
            fn from(x: $t) -> Self {
                Structure::$t(x)
            }
        })*
    };
}

from_variant!(Cdes, Pes, Fes, Rpes, Dces, Ies, Rces);

impl From<EventAutomaton> for Structure {
    fn from(x: EventAutomaton) -> Self {
        Structure::Ea(x)
    }
}
