//! Cross-check the SAT pipeline against exhaustive breadth-first search
//! on random graphs small enough to enumerate.
//!
//! ```bash
//! cargo run --release --example oracle_crosscheck
//! ```

use qpebble::graph::gen_random_dag;
use qpebble::search::{default_k_max, min_steps, SearchStatus};
use qpebble::solve::Backend;
use qpebble::strategy::{oracle_min_steps, Mode};

fn main() {
    let mut agreements = 0;
    for seed in 0..20u64 {
        let dag = gen_random_dag(3 + (seed as usize % 5), 2, seed);
        print!("seed {seed:2} ({} nodes):", dag.len());
        for pebbles in 1..=dag.len() {
            let exact = oracle_min_steps(&dag, pebbles, Mode::Sequential).unwrap();
            let k_cap = exact.unwrap_or(0).max(default_k_max(&dag));
            let outcome = min_steps(
                &dag,
                pebbles,
                Mode::Sequential,
                &Backend::Embedded,
                k_cap,
                120_000,
            )
            .unwrap();
            let found = (outcome.status == SearchStatus::Found)
                .then_some(outcome.steps)
                .flatten();
            assert_eq!(found, exact, "disagreement at seed {seed}, P={pebbles}");
            agreements += 1;
            match exact {
                Some(k) => print!("  P{pebbles}:{k}"),
                None => print!("  P{pebbles}:-"),
            }
        }
        println!();
    }
    println!("\nsolver and oracle agree on all {agreements} points");
}
