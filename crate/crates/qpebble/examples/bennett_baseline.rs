//! The naive baseline: compute every node in topological order, then
//! uncompute every intermediate in reverse. Fewest possible steps,
//! maximal qubit usage.
//!
//! ```bash
//! cargo run --example bennett_baseline
//! ```

use qpebble::graph::parse_dag;
use qpebble::schedule::emit_schedule;
use qpebble::strategy::{bennett, validate};

fn main() {
    let text =
        std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/graphs/demo.dag")).unwrap();
    let (dag, _) = parse_dag(&text).unwrap();

    let strategy = bennett(&dag);
    validate(&dag, &strategy, true).expect("the baseline is always strictly legal");

    println!(
        "baseline on {} nodes: {} steps, peak {} pebbles",
        dag.len(),
        strategy.num_steps(),
        strategy.peak_pebbles()
    );
    for (i, config) in strategy.configs().iter().enumerate() {
        let names: Vec<&str> = config.iter().map(String::as_str).collect();
        println!("  step {i:2}: {{{}}}", names.join(", "));
    }

    let schedule = emit_schedule(&dag, &strategy).unwrap();
    println!("\nas a circuit:\n{}", schedule.to_text());
}
