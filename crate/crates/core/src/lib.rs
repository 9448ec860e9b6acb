//! Exact solver for the longest induced path problem.
//!
//! The input graph is extended by a virtual node `s` adjacent to every node;
//! an induced path then corresponds to a chordless cycle through `s`. The
//! crate builds cut, flow and walk ILP formulations of that view and solves
//! them with its own simplex kernel and branch-and-cut driver.

pub mod bnb;
pub mod cli;
pub mod cliques;
pub mod generators;
pub mod graph;
pub mod lp;
pub mod models;
pub mod oracle;
pub mod separation;
