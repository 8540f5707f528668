//! Graphviz DOT export. With a decomposition attached, each forest becomes
//! one color class with a matching edge label, so the chain can be eyeballed
//! from a single rendering.

use starforest::graph::{BipartiteGraph, Decomposition};

const PALETTE: [&str; 10] = [
    "black", "red", "blue", "forestgreen", "orange", "purple", "brown", "cyan3", "magenta",
    "gray40",
];

pub fn export(g: &BipartiteGraph, dec: Option<&Decomposition>) -> String {
    let mut out = String::from("graph starforest {\n  rankdir=LR;\n  node [shape=circle];\n");
    out.push_str("  { rank=source;");
    for x in 1..=g.x_count() {
        out.push_str(&format!(" x{x};"));
    }
    out.push_str(" }\n  { rank=sink;");
    for y in 1..=g.y_count() {
        out.push_str(&format!(" y{y};"));
    }
    out.push_str(" }\n");

    let forest_of = |x: usize, y: usize| -> Option<usize> {
        dec.and_then(|d| {
            d.forests()
                .iter()
                .position(|f| f.contains(x, y))
                .map(|i| i + 1)
        })
    };

    for (x, y) in g.edges() {
        match forest_of(x, y) {
            Some(i) => {
                let color = PALETTE[(i - 1) % PALETTE.len()];
                out.push_str(&format!(
                    "  x{x} -- y{y} [color={color}, label=\"F{i}\"];\n"
                ));
            }
            None => out.push_str(&format!("  x{x} -- y{y};\n")),
        }
    }
    out.push_str("}\n");
    out
}
