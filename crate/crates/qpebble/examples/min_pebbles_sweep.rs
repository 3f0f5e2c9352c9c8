//! Sweep the pebble budget downward to map the full space/time frontier
//! of a labeled straight-line program, with per-operation counts.
//!
//! ```bash
//! cargo run --release --example min_pebbles_sweep
//! ```

use qpebble::graph::parse_dag;
use qpebble::schedule::{memory_profile, op_counts};
use qpebble::search::{min_pebbles, SearchStatus};
use qpebble::solve::Backend;
use qpebble::strategy::Mode;

fn main() {
    let text =
        std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/graphs/butterfly.dag"))
            .unwrap();
    let (dag, _) = parse_dag(&text).unwrap();

    let outcomes = min_pebbles(
        &dag,
        Mode::Sequential,
        &Backend::Embedded,
        120_000,
        4 * dag.len(),
    )
    .unwrap();

    for outcome in &outcomes {
        match outcome.status {
            SearchStatus::Found => {
                let s = outcome.strategy.as_ref().unwrap();
                let counts = op_counts(&dag, s).unwrap();
                let ops: Vec<String> = counts
                    .iter()
                    .map(|(label, n)| format!("{label}:{n}"))
                    .collect();
                println!(
                    "P={} K={:2}  ops {}  profile {:?}",
                    outcome.pebbles,
                    outcome.steps.unwrap(),
                    ops.join(" "),
                    memory_profile(s)
                );
            }
            _ => println!(
                "P={}  gave up: {}",
                outcome.pebbles,
                outcome.diagnostic.as_deref().unwrap_or("unknown")
            ),
        }
    }

    if let Some(best) = outcomes
        .iter()
        .rev()
        .find(|o| o.status == SearchStatus::Found)
    {
        println!(
            "\nbest budget: {} pebbles at {} steps",
            best.pebbles,
            best.steps.unwrap()
        );
    }
}
