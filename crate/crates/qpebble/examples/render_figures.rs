//! Render pebbling grids: ASCII to the terminal, SVG to files.
//!
//! ```bash
//! cargo run --release --example render_figures
//! ```

use qpebble::graph::parse_dag;
use qpebble::render::{render_ascii, render_svg};
use qpebble::search::min_steps;
use qpebble::solve::Backend;
use qpebble::strategy::{bennett, Mode};

fn main() {
    let text =
        std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/graphs/demo.dag")).unwrap();
    let (dag, _) = parse_dag(&text).unwrap();

    let baseline = bennett(&dag);
    let squeezed = min_steps(&dag, 4, Mode::Sequential, &Backend::Embedded, 24, 120_000)
        .unwrap()
        .strategy
        .expect("4 pebbles suffice for the demo graph");

    println!("baseline ({} pebbles):", baseline.peak_pebbles());
    println!("{}", render_ascii(&baseline, &dag));
    println!("squeezed ({} pebbles):", squeezed.peak_pebbles());
    println!("{}", render_ascii(&squeezed, &dag));

    let out = std::env::temp_dir();
    for (name, strategy) in [("baseline.svg", &baseline), ("squeezed.svg", &squeezed)] {
        let path = out.join(name);
        std::fs::write(&path, render_svg(strategy, &dag)).unwrap();
        println!("wrote {}", path.display());
    }
}
