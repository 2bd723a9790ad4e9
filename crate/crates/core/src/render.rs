//! Text renderings of ordered graphs: arc diagrams (SVG) and Graphviz DOT.

use std::fmt::Write;

use crate::graph::OrderedGraph;

const STEP: usize = 40;
const MARGIN: usize = 20;

/// Vertices on a horizontal baseline in order, each edge a semicircle above it.
/// Coordinates are integers, so the output is byte-stable.
pub fn render_arc(g: &OrderedGraph) -> String {
    let n = g.n().max(1);
    let x = |v: usize| MARGIN + (v - 1) * STEP;
    let longest = g.edges().iter().map(|e| e.length()).max().unwrap_or(0);
    let base = MARGIN + longest * STEP / 2;
    let width = 2 * MARGIN + (n - 1) * STEP;
    let height = base + MARGIN + 12;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(out, r#"  <g fill="none" stroke="black" stroke-width="1.5">"#);
    for e in g.edges() {
        let r = e.length() * STEP / 2;
        let _ = writeln!(out, r#"    <path d="M {} {base} A {r} {r} 0 0 1 {} {base}"/>"#, x(e.u()), x(e.v()));
    }
    let _ = writeln!(out, "  </g>");
    let _ = writeln!(out, r#"  <g fill="black" font-family="sans-serif" font-size="10" text-anchor="middle">"#);
    for v in 1..=g.n() {
        let _ = writeln!(out, r#"    <circle cx="{}" cy="{base}" r="3"/>"#, x(v));
        let _ = writeln!(out, r#"    <text x="{}" y="{}">{v}</text>"#, x(v), base + 14);
    }
    let _ = writeln!(out, "  </g>");
    out.push_str("</svg>\n");
    out
}

/// Graphviz source pinning vertices to a line in their order.
pub fn render_dot(g: &OrderedGraph) -> String {
    let mut out = String::from("graph ordered {\n  node [shape=circle];\n");
    for v in 1..=g.n() {
        let _ = writeln!(out, "  {v} [pos=\"{},0!\"];", v - 1);
    }
    for e in g.edges() {
        let _ = writeln!(out, "  {} -- {};", e.u(), e.v());
    }
    out.push_str("}\n");
    out
}
