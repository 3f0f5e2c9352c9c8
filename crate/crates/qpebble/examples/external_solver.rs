//! Route queries to an external DIMACS solver and compare against the
//! embedded engine. Set `PEBBLE_SOLVER` to any SAT-competition-style
//! solver command, e.g.:
//!
//! ```bash
//! PEBBLE_SOLVER="minisat" cargo run --release --example external_solver
//! # or self-host through the bundled CLI:
//! cargo build --release
//! PEBBLE_SOLVER="target/release/qpebble sat" cargo run --release --example external_solver
//! ```

use qpebble::encode::build_cnf;
use qpebble::graph::parse_dag;
use qpebble::solve::{solve_embedded, Backend, Status};
use qpebble::strategy::Mode;

fn main() {
    let Ok(cmd) = std::env::var("PEBBLE_SOLVER") else {
        println!("PEBBLE_SOLVER is not set; nothing to compare against.");
        println!("Point it at a DIMACS solver command and re-run.");
        return;
    };
    let external = Backend::External(cmd.clone());

    let text =
        std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/graphs/demo.dag")).unwrap();
    let (dag, _) = parse_dag(&text).unwrap();

    println!("external solver: {cmd}\n");
    for (pebbles, steps) in [(6usize, 9usize), (6, 10), (4, 11), (4, 12), (3, 20)] {
        let cnf = build_cnf(&dag, pebbles, steps, Mode::Sequential);
        let ours = solve_embedded(&cnf, 120_000);
        match external.solve(&cnf, 120_000) {
            Ok(theirs) => {
                let mark = if ours.status == theirs.status {
                    "agree"
                } else {
                    "MISMATCH"
                };
                println!(
                    "P={pebbles} K={steps:2}: embedded {:?} / external {:?} -> {mark}",
                    ours.status, theirs.status
                );
                if theirs.status == Status::Sat {
                    // the harness has already re-verified the model
                    assert!(theirs.model.is_some());
                }
            }
            Err(e) => {
                println!("P={pebbles} K={steps:2}: external solver failed: {e}");
                return;
            }
        }
    }
}
