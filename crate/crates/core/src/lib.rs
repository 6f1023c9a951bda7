//! Reachability analysis for plain and coloured Petri nets through binomial
//! ideals and reduced Gröbner bases, with an explicit state-space explorer
//! as a cross-check.

pub mod analysis;
pub mod bridge;
pub mod cli;
pub mod format;
pub mod net;
pub mod poly;

#[cfg(test)]
mod testnets;
