//! Petri net models, firing semantics and explicit state-space exploration.

mod coloured;
mod explore;
mod plain;

pub use coloured::{
    Colour, ColourBag, ColouredMarking, ColouredPetriNet, ColouredPlace, ColouredTransition,
    ColouredTransitionSpec, Unfolding,
};
pub use explore::{explore, is_reversible, Edge, ExploreLimits, FiringRule, ReachGraph, Reversibility};
pub use plain::{validate_parts, Marking, PetriNet, Transition, TransitionSpec};

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NetError {
    #[error("unknown transition `{0}`")]
    UnknownTransition(String),
    #[error("unknown place `{0}`")]
    UnknownPlace(String),
    #[error("unknown colour `{0}`")]
    UnknownColour(String),
    #[error("transition `{0}` is not enabled")]
    NotEnabled(String),
    #[error("invalid net: {}", join(.0))]
    Invalid(Vec<Diagnostic>),
}

fn join(diags: &[Diagnostic]) -> String {
    diags
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Severity {
    Warning,
    Error,
}

/// A finding from net validation. Errors make a net unusable, warnings flag
/// suspicious structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub message: String,
}

impl Diagnostic {
    pub fn error(message: impl Into<String>) -> Self {
        Self {
            severity: Severity::Error,
            message: message.into(),
        }
    }

    pub fn warning(message: impl Into<String>) -> Self {
        Self {
            severity: Severity::Warning,
            message: message.into(),
        }
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.severity {
            Severity::Warning => "warning",
            Severity::Error => "error",
        };
        write!(f, "{tag}: {}", self.message)
    }
}
