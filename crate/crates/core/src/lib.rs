//! Exact verification of q-series identities around Euler's pentagonal
//! number theorem and Zagier's identity, by truncated power-series algebra on
//! one side and signed enumeration over Franklin's involution on the other.

pub mod cli;
pub mod dsl;
pub mod identities;
pub mod partition;
pub mod series;
pub mod suite;
