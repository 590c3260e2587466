use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write;

use cubemedian::Error;

use crate::error::CliResult;
use crate::space::Space;

const PALETTE: [&str; 10] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
];

pub struct DotSummary {
    pub nodes: usize,
    pub edges: usize,
    pub walls: usize,
    pub highlighted: usize,
}

fn quote(text: &str) -> String {
    let mut out = String::with_capacity(text.len() + 2);
    out.push('"');
    for c in text.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

/// Node name: the vertex label, with `1` for the empty word.
fn node_name<S: Space>(space: &S, v: &S::Vertex) -> String {
    match space.label(v) {
        l if l.is_empty() => "1".into(),
        l => l,
    }
}

/// Draws the subgraph induced on `vertices`. Edges are colored by wall, walls
/// numbered in order of first appearance; `highlight` members get
/// `geodiff=true` and a fill.
pub fn render<S: Space>(
    space: &S,
    vertices: &[S::Vertex],
    highlight: &BTreeSet<S::Vertex>,
    node_cap: usize,
) -> CliResult<(String, DotSummary)> {
    if vertices.len() > node_cap {
        return Err(Error::ResourceCap {
            what: "DOT export",
            limit: node_cap,
        }
        .into());
    }
    let index: HashMap<&S::Vertex, usize> = vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let names: Vec<String> = vertices.iter().map(|v| quote(&node_name(space, v))).collect();

    let mut out = String::from("graph cubemedian {\n  node [shape=ellipse];\n");
    for (v, name) in vertices.iter().zip(&names) {
        if highlight.contains(v) {
            writeln!(out, "  {name} [geodiff=true, style=filled, fillcolor=\"#ffd700\"];").unwrap();
        } else {
            writeln!(out, "  {name};").unwrap();
        }
    }

    let mut walls: BTreeMap<String, usize> = BTreeMap::new();
    let mut edges = 0;
    for (i, u) in vertices.iter().enumerate() {
        for (_, w) in space.neighbors(u) {
            let Some(&j) = index.get(&w) else { continue };
            if j <= i {
                continue;
            }
            let wall = space.format_wall(&space.wall_of_edge(u, &w)?);
            let next = walls.len();
            let k = *walls.entry(wall.clone()).or_insert(next);
            writeln!(
                out,
                "  {} -- {} [color={}, wall={}];",
                names[i],
                names[j],
                quote(PALETTE[k % PALETTE.len()]),
                quote(&wall)
            )
            .unwrap();
            edges += 1;
        }
    }
    out.push_str("}\n");
    let summary = DotSummary {
        nodes: vertices.len(),
        edges,
        walls: walls.len(),
        highlighted: vertices.iter().filter(|v| highlight.contains(v)).count(),
    };
    Ok((out, summary))
}
