//! Solve one graph at several pebble budgets and watch steps trade off
//! against qubits.
//!
//! ```bash
//! cargo run --release --example solve_tradeoff
//! ```

use qpebble::graph::parse_dag;
use qpebble::render::render_ascii;
use qpebble::search::{min_steps, SearchStatus};
use qpebble::solve::Backend;
use qpebble::strategy::Mode;

fn main() {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/graphs/demo.dag"))
        .expect("sample graph ships with the crate");
    let (dag, _) = parse_dag(&text).expect("sample graph is valid");

    println!(
        "graph: {} nodes, {} outputs\n",
        dag.len(),
        dag.outputs().len()
    );
    for pebbles in (3..=dag.len()).rev() {
        let outcome = min_steps(
            &dag,
            pebbles,
            Mode::Sequential,
            &Backend::Embedded,
            4 * dag.len(),
            120_000,
        )
        .expect("embedded backend does not fail");
        match outcome.status {
            SearchStatus::Found => {
                let strategy = outcome.strategy.unwrap();
                println!(
                    "budget {pebbles}: minimum {} steps ({} ms)",
                    outcome.steps.unwrap(),
                    outcome.total_time_ms
                );
                println!("{}", render_ascii(&strategy, &dag));
            }
            _ => {
                println!(
                    "budget {pebbles}: no strategy ({})\n",
                    outcome.diagnostic.unwrap_or_default()
                );
            }
        }
    }
}
