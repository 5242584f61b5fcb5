//! Enumeration and asymptotic analysis of pattern-avoiding ascent sequences.

pub mod combinatorics;
pub mod dp;
pub mod series;
pub mod analysis;
pub mod da;
pub mod verify;
pub mod cli;
