//! Build strategies by hand and run them through the rule validator.
//!
//! ```bash
//! cargo run --example validate_strategy
//! ```

use qpebble::graph::parse_dag;
use qpebble::strategy::{validate, Mode, PebblingStrategy};

fn strategy(configs: &[&[&str]], pebbles: usize) -> PebblingStrategy {
    PebblingStrategy::from_names(
        Mode::Sequential,
        pebbles,
        configs.iter().map(|c| c.iter().map(|s| s.to_string())),
    )
}

fn main() {
    let (dag, _) = parse_dag("node x\nnode y x\nnode z y\noutput z\ninputs 2\n").unwrap();

    // compute x, y, z, then clean up the temporaries inside 3 pebbles
    let good = strategy(
        &[
            &[],
            &["x"],
            &["x", "y"],
            &["x", "y", "z"],
            &["x", "z"],
            &["z"],
        ],
        3,
    );
    match validate(&dag, &good, true) {
        Ok(()) => println!("hand-made strategy: ok ({} steps)", good.num_steps()),
        Err(v) => println!("hand-made strategy: rejected: {v}"),
    }

    // uncomputing x too early: y still needs it later
    let bad = strategy(&[&[], &["x"], &["x", "y"], &["y"], &["y", "z"], &["z"]], 3);
    match validate(&dag, &bad, true) {
        Ok(()) => println!("greedy cleanup: ok"),
        Err(v) => println!("greedy cleanup: rejected: {v}"),
    }

    // exceeding the declared bound
    let tight = strategy(
        &[
            &[],
            &["x"],
            &["x", "y"],
            &["x", "y", "z"],
            &["y", "z"],
            &["z"],
        ],
        2,
    );
    match validate(&dag, &tight, true) {
        Ok(()) => println!("2-pebble claim: ok"),
        Err(v) => println!("2-pebble claim: rejected: {v}"),
    }
}
