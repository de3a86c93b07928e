//! Exact invariants, embedding enumerations and rational blow-down checks for
//! contact boundaries of rational cuspidal curve neighborhoods.

#![allow(clippy::needless_range_loop)]

pub mod blowdown;
pub mod embedding;
pub mod io;
pub mod lattice;
pub mod plumbing;
pub mod registry;
pub mod singularity;
pub mod spin_gamma;
