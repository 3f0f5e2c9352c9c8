//! SAT-based reversible pebbling for quantum memory management.
//!
//! Computations that must run reversibly (for example on a quantum
//! computer) cannot simply discard intermediate values: every helper
//! register has to be returned to its initial state by *uncomputing* it.
//! Given a dependency DAG of operations and a budget of `P` pebbles
//! (ancilla qubits), this crate finds a legal order of compute and
//! uncompute steps (a *reversible pebbling strategy*) with the minimum
//! number of steps, by encoding the fixed-length decision problem as CNF
//! and iteratively deepening the step count until a SAT solver finds a
//! model.
//!
//! The main pieces:
//!
//! - [`graph`]: the [`Dag`](graph::Dag) type, a text format, and
//!   generators for AND-reduction trees and random graphs.
//! - [`encode`]: pebble state variables and the CNF clause families
//!   (initial/final, move legality, cardinality).
//! - [`solve`]: an embedded CDCL solver plus a harness for external
//!   DIMACS solvers.
//! - [`search`]: iterative deepening on the step count and the
//!   descending sweep over pebble budgets.
//! - [`strategy`]: strategy validation, model decoding, the
//!   compute-all-then-uncompute baseline, and an exhaustive BFS oracle
//!   for small graphs.
//! - [`schedule`]: turning strategies into reversible-circuit schedules
//!   with ancilla assignment and per-label operation counts.
//! - [`render`]: pebbling grids and memory-profile curves as ASCII or
//!   SVG.
//!
//! ```
//! use qpebble::graph::parse_dag;
//! use qpebble::search::{min_steps, SearchStatus};
//! use qpebble::solve::Backend;
//! use qpebble::strategy::Mode;
//!
//! let (dag, _) = parse_dag("node x\nnode y x\noutput y\n").unwrap();
//! let outcome = min_steps(&dag, 2, Mode::Sequential, &Backend::Embedded, 64, 10_000).unwrap();
//! assert_eq!(outcome.status, SearchStatus::Found);
//! assert_eq!(outcome.steps, Some(3)); // pebble x, pebble y, unpebble x
//! ```

pub mod cli;
pub mod encode;
pub mod graph;
pub mod render;
pub mod schedule;
pub mod search;
pub mod solve;
pub mod strategy;

#[cfg(test)]
mod testutil;

pub use graph::{parse_dag, Dag};
pub use search::{min_pebbles, min_steps, SearchOutcome, SearchStatus};
pub use strategy::{Mode, PebblingStrategy};
