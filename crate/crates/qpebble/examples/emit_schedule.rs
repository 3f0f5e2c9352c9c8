//! Fit a 9-input AND oracle onto a 16-qubit machine.
//!
//! The naive schedule needs 9 input qubits plus 8 ancillae = 17 qubits.
//! Capping the ancilla budget at 7 keeps the total at 16 for a few
//! extra gates.
//!
//! ```bash
//! cargo run --release --example emit_schedule
//! ```

use qpebble::graph::gen_and_tree;
use qpebble::schedule::emit_schedule;
use qpebble::search::{min_steps, SearchStatus};
use qpebble::solve::Backend;
use qpebble::strategy::{bennett, Mode};

fn main() {
    let dag = gen_and_tree(9).unwrap();

    let naive = emit_schedule(&dag, &bennett(&dag)).unwrap();
    println!(
        "naive:   {} gates on {} qubits",
        naive.gates.len(),
        naive.qubit_total
    );

    let outcome = min_steps(&dag, 7, Mode::Sequential, &Backend::Embedded, 32, 120_000).unwrap();
    assert_eq!(outcome.status, SearchStatus::Found);
    let squeezed = emit_schedule(&dag, &outcome.strategy.unwrap()).unwrap();
    println!(
        "16-qubit: {} gates on {} qubits\n",
        squeezed.gates.len(),
        squeezed.qubit_total
    );
    println!("{}", squeezed.to_text());
}
