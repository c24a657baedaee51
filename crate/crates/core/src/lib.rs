//! Exact algorithms for creating and reconfiguring two-level
//! selector/procedure software systems, with Dominating Set reductions
//! checked against a brute-force oracle.

pub mod bench;
pub mod cli;
pub mod enumerate;
pub mod format;
pub mod graph;
pub mod model;
pub mod reduce;
pub mod solve;
