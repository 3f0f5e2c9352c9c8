//! Shared fixtures for the unit-test suite.

use crate::graph::{parse_dag, Dag};
use crate::strategy::{Mode, PebblingStrategy};

/// Six-node worked example: two small trees sharing node `A`.
///
/// `C` reads `A`, `D` reads `B`, `E` reads `C` and `D`, `F` reads `A`;
/// outputs are `E` and `F`, plus four primary inputs.
pub const SIX_NODE_TEXT: &str = "\
node A
node B
node C A
node D B
node E C D
node F A
output E
output F
inputs 4
";

pub fn six_node() -> Dag {
    parse_dag(SIX_NODE_TEXT).unwrap().0
}

/// The classic compute-everything-then-uncompute sequence on the six-node
/// example: 11 configurations, peak 6 pebbles, 10 moves.
pub const SIX_NODE_BENNETT: &[&[&str]] = &[
    &[],
    &["A"],
    &["A", "B"],
    &["A", "B", "C"],
    &["A", "B", "C", "D"],
    &["A", "B", "C", "D", "E"],
    &["A", "B", "C", "D", "E", "F"],
    &["A", "B", "C", "E", "F"],
    &["A", "B", "E", "F"],
    &["A", "E", "F"],
    &["E", "F"],
];

/// A hand-made 4-pebble sequence on the six-node example: 15
/// configurations, 14 moves, recomputes `A` and `B`.
pub const SIX_NODE_FOUR_PEBBLE: &[&[&str]] = &[
    &[],
    &["A"],
    &["A", "C"],
    &["C"],
    &["B", "C"],
    &["B", "C", "D"],
    &["C", "D"],
    &["C", "D", "E"],
    &["A", "C", "D", "E"],
    &["A", "D", "E"],
    &["A", "D", "E", "F"],
    &["D", "E", "F"],
    &["B", "D", "E", "F"],
    &["B", "E", "F"],
    &["E", "F"],
];

pub fn strategy_from(configs: &[&[&str]], mode: Mode, pebbles: usize) -> PebblingStrategy {
    PebblingStrategy::from_names(
        mode,
        pebbles,
        configs.iter().map(|c| c.iter().map(|s| s.to_string())),
    )
}
