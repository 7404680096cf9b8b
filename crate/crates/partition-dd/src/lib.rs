//! Decision-diagram engine for graph partitions with a component weight
//! floor.
//!
//! Given a vertex-weighted graph, a family of candidate edge subsets, and a
//! lower bound `L`, the pipeline in [`pipeline`] keeps exactly the candidates
//! in which every connected component — isolated vertices included — weighs
//! at least `L`. It works entirely on decision diagrams:
//!
//! 1. [`light`] builds the zero-suppressed diagram of all connected subgraphs
//!    lighter than `L`;
//! 2. [`cutset`] turns each of those subgraphs into its minimal signed
//!    cutset, stored in a ternary diagram;
//! 3. [`superset`] expands the signed sets into every edge set containing a
//!    light component, folding in light isolated vertices;
//! 4. a set difference removes those from the candidate family.
//!
//! Start with the runnable examples (`cargo run -p partition-dd --example
//! end_to_end`) or the `partition-dd` binary (`solve`, `count`, `oracle`,
//! `bound` subcommands).

pub mod cli;
pub mod cutset;
pub mod error;
pub mod frontier;
pub mod graph;
pub mod light;
pub mod pipeline;
pub mod superset;
pub mod tdd;
pub mod zdd;

pub use error::{Error, Result};
