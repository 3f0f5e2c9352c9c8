//! Parallel mode: any number of pebbles may move in one step as long as
//! each moving node has its dependencies pebbled and untouched. Step
//! counts then measure circuit depth rather than gate count.
//!
//! ```bash
//! cargo run --release --example parallel_mode
//! ```

use qpebble::graph::gen_and_tree;
use qpebble::render::render_ascii;
use qpebble::search::{min_steps, SearchStatus};
use qpebble::solve::Backend;
use qpebble::strategy::Mode;

fn main() {
    let dag = gen_and_tree(9).unwrap();

    for (mode, pebbles) in [
        (Mode::Sequential, 8),
        (Mode::Parallel, 8),
        (Mode::Parallel, 6),
        (Mode::Parallel, 5),
    ] {
        let outcome = min_steps(
            &dag,
            pebbles,
            mode,
            &Backend::Embedded,
            4 * dag.len(),
            120_000,
        )
        .unwrap();
        match outcome.status {
            SearchStatus::Found => {
                println!(
                    "{mode} with {pebbles} pebbles: {} steps",
                    outcome.steps.unwrap()
                );
                if mode == Mode::Parallel && pebbles == 6 {
                    println!("\n{}", render_ascii(&outcome.strategy.unwrap(), &dag));
                }
            }
            _ => println!(
                "{mode} with {pebbles} pebbles: {}",
                outcome.diagnostic.unwrap_or_default()
            ),
        }
    }
}
