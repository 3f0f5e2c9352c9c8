//! Pebbling figures: a grid with one row per node and one column per
//! step (filled cell = pebbled), plus the memory profile, the pebble
//! count over time, as a footer row in ASCII or a step curve above the
//! grid in SVG.

use std::fmt::Write as _;

use crate::graph::Dag;
use crate::schedule::memory_profile;
use crate::strategy::PebblingStrategy;

/// Boolean occupancy matrix of a strategy: rows in node declaration
/// order, one column per configuration (column 0 is the initial empty
/// one).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridFigure {
    pub rows: Vec<String>,
    pub columns: usize,
    pub cells: Vec<Vec<bool>>,
    pub profile: Vec<usize>,
}

impl GridFigure {
    pub fn new(s: &PebblingStrategy, g: &Dag) -> Self {
        let rows: Vec<String> = g.nodes().iter().map(|n| n.name.clone()).collect();
        let columns = s.configs().len();
        let cells = rows
            .iter()
            .map(|name| s.configs().iter().map(|c| c.contains(name)).collect())
            .collect();
        GridFigure {
            rows,
            columns,
            cells,
            profile: memory_profile(s),
        }
    }
}

/// Text grid: a step-index ruler, one row per node (`█` pebbled, `·`
/// not), and the memory profile as a footer.
pub fn render_ascii(s: &PebblingStrategy, g: &Dag) -> String {
    let fig = GridFigure::new(s, g);
    let width = fig.rows.iter().map(String::len).max().unwrap_or(0).max(4);
    let mut out = String::new();

    let ruler: String = (0..fig.columns)
        .map(|i| char::from(b'0' + (i % 10) as u8))
        .collect();
    let _ = writeln!(out, "{:>width$}: {ruler}", "step");
    for (name, row) in fig.rows.iter().zip(&fig.cells) {
        let cells: String = row.iter().map(|&p| if p { '█' } else { '·' }).collect();
        let _ = writeln!(out, "{name:>width$}: {cells}");
    }
    let profile: Vec<String> = fig.profile.iter().map(usize::to_string).collect();
    let _ = writeln!(out, "{:>width$}: {}", "load", profile.join(" "));
    out
}

const CELL: usize = 16;
const CURVE_HEIGHT: usize = 48;

/// Standalone SVG: the occupancy grid with the memory profile drawn as
/// a step function above it. Fixed cell size; byte-deterministic for a
/// given strategy.
pub fn render_svg(s: &PebblingStrategy, g: &Dag) -> String {
    let fig = GridFigure::new(s, g);
    let label_w = 8 * fig.rows.iter().map(String::len).max().unwrap_or(1) + 12;
    let x0 = label_w;
    let curve_top = 10usize;
    let y0 = curve_top + CURVE_HEIGHT + 12;
    let width = x0 + fig.columns * CELL + 10;
    let height = y0 + fig.rows.len() * CELL + 24;
    let peak = fig.profile.iter().copied().max().unwrap_or(0).max(1);

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(
        out,
        r#"<rect width="{width}" height="{height}" fill="white"/>"#
    );

    // memory profile as a step function over the columns
    let mut points = Vec::with_capacity(2 * fig.profile.len());
    for (i, &load) in fig.profile.iter().enumerate() {
        let y = curve_top + CURVE_HEIGHT - load * CURVE_HEIGHT / peak;
        points.push(format!("{},{y}", x0 + i * CELL));
        points.push(format!("{},{y}", x0 + (i + 1) * CELL));
    }
    let _ = writeln!(
        out,
        r##"<polyline points="{}" fill="none" stroke="#c0392b" stroke-width="2"/>"##,
        points.join(" ")
    );

    for (r, (name, row)) in fig.rows.iter().zip(&fig.cells).enumerate() {
        let y = y0 + r * CELL;
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" font-family="monospace" font-size="12" text-anchor="end">{}</text>"#,
            x0 - 6,
            y + CELL - 4,
            xml_escape(name)
        );
        for (c, &pebbled) in row.iter().enumerate() {
            let (fill, stroke) = if pebbled {
                ("#2c3e50", "#2c3e50")
            } else {
                ("#ffffff", "#cccccc")
            };
            let _ = writeln!(
                out,
                r#"<rect x="{}" y="{y}" width="{CELL}" height="{CELL}" fill="{fill}" stroke="{stroke}"/>"#,
                x0 + c * CELL
            );
        }
    }

    // step indices every five columns
    for c in (0..fig.columns).step_by(5) {
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" font-family="monospace" font-size="10" text-anchor="middle">{c}</text>"#,
            x0 + c * CELL + CELL / 2,
            y0 + fig.rows.len() * CELL + 14
        );
    }
    out.push_str("</svg>\n");
    out
}

fn xml_escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}
