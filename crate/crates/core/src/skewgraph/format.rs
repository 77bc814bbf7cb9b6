//! Text, JSON and ASCII-art forms of skew-graphs.
//!
//! Text form: one line per component, nodes written `x,y` with each
//! coordinate as `p/q` (or a bare integer), separated by whitespace. Graphs in
//! one file are separated by blank lines; `#` starts a comment line. Arrows are
//! implied by adjacency.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{lattice_cells, Arrow, Component, Node, SkewGraph};
use crate::error::{Error, Result};
use crate::rational::{parse_rational, Rational};

/// Upper bound on nodes accepted from any parsed document.
pub const MAX_PARSED_NODES: usize = 4096;
/// Upper bound on the absolute value of parsed numerators and denominators.
pub const MAX_PARSED_COORDINATE: i128 = 1 << 31;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentJson {
    pub nodes: Vec<Node>,
    /// Absent means "implied by adjacency".
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arrows: Option<Vec<Arrow>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub components: Vec<ComponentJson>,
}

impl From<SkewGraph> for GraphJson {
    fn from(graph: SkewGraph) -> Self {
        GraphJson {
            components: graph
                .components
                .into_iter()
                .map(|c| ComponentJson {
                    nodes: c.nodes,
                    arrows: Some(c.arrows),
                })
                .collect(),
        }
    }
}

impl TryFrom<GraphJson> for SkewGraph {
    type Error = Error;

    fn try_from(doc: GraphJson) -> Result<Self> {
        let total: usize = doc.components.iter().map(|c| c.nodes.len()).sum();
        check_node_budget(total)?;
        let mut components = Vec::with_capacity(doc.components.len());
        for c in doc.components {
            for n in &c.nodes {
                check_coordinate(&n.x)?;
                check_coordinate(&n.y)?;
            }
            let component = match c.arrows {
                None => Component::from_nodes(c.nodes),
                Some(arrows) => {
                    if arrows.len() > 2 * MAX_PARSED_NODES {
                        return Err(Error::Parse("too many arrows".into()));
                    }
                    for a in &arrows {
                        for n in [&a.from, &a.to] {
                            check_coordinate(&n.x)?;
                            check_coordinate(&n.y)?;
                        }
                    }
                    Component {
                        nodes: c.nodes,
                        arrows,
                    }
                }
            };
            components.push(component);
        }
        Ok(SkewGraph::new(components))
    }
}

impl Serialize for SkewGraph {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        to_json(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SkewGraph {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let doc = GraphJson::deserialize(deserializer)?;
        SkewGraph::try_from(doc).map_err(serde::de::Error::custom)
    }
}

fn check_node_budget(total: usize) -> Result<()> {
    if total > MAX_PARSED_NODES {
        return Err(Error::ResourceLimit {
            what: "parsed graph",
            requested: total,
            limit: MAX_PARSED_NODES,
        });
    }
    Ok(())
}

fn check_coordinate(r: &Rational) -> Result<()> {
    if r.numer().abs() > MAX_PARSED_COORDINATE || *r.denom() > MAX_PARSED_COORDINATE {
        return Err(Error::Parse(format!("coordinate {r} out of range")));
    }
    Ok(())
}

pub fn to_json(graph: &SkewGraph) -> GraphJson {
    GraphJson::from(graph.clone())
}

pub fn to_json_string(graph: &SkewGraph) -> String {
    serde_json::to_string(&to_json(graph)).expect("graph serialization is infallible")
}

pub fn parse_graph_json(text: &str) -> Result<SkewGraph> {
    let doc: GraphJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    SkewGraph::try_from(doc)
}

/// Text form of one graph, one component per line, trailing newline included.
pub fn to_text(graph: &SkewGraph) -> String {
    let mut out = String::new();
    for c in &graph.components {
        let tokens: Vec<String> = c.nodes.iter().map(ToString::to_string).collect();
        out.push_str(&tokens.join(" "));
        out.push('\n');
    }
    out
}

fn parse_node(token: &str) -> Result<Node> {
    let (x, y) = token
        .split_once(',')
        .ok_or_else(|| Error::Parse(format!("node {token:?} is not of the form x,y")))?;
    let x = parse_rational(x).map_err(|e| Error::Parse(e.to_string()))?;
    let y = parse_rational(y).map_err(|e| Error::Parse(e.to_string()))?;
    check_coordinate(&x)?;
    check_coordinate(&y)?;
    Ok(Node::new(x, y))
}

/// Parses every graph in a text document.
pub fn parse_graphs_text(text: &str) -> Result<Vec<SkewGraph>> {
    let mut graphs = Vec::new();
    let mut current: Vec<Vec<Node>> = Vec::new();
    let mut total = 0usize;
    for line in text.lines() {
        let line = line.trim();
        if line.starts_with('#') {
            continue;
        }
        if line.is_empty() {
            if !current.is_empty() {
                graphs.push(SkewGraph::from_node_sets(std::mem::take(&mut current)));
            }
            continue;
        }
        let mut nodes = Vec::new();
        for token in line.split_whitespace() {
            total += 1;
            check_node_budget(total)?;
            nodes.push(parse_node(token)?);
        }
        current.push(nodes);
    }
    if !current.is_empty() {
        graphs.push(SkewGraph::from_node_sets(current));
    }
    Ok(graphs)
}

/// ASCII art: `o` for nodes, `-` and `|` for arrows, highest row first.
/// Multi-component graphs are drawn one component at a time.
pub fn render_ascii(graph: &SkewGraph) -> String {
    let mut out = String::new();
    let many = graph.components.len() > 1;
    for (idx, c) in graph.components.iter().enumerate() {
        if many {
            let noun = if c.len() == 1 { "node" } else { "nodes" };
            out.push_str(&format!("component {idx} ({} {noun})\n", c.len()));
        }
        out.push_str(&render_component(c));
    }
    out
}

fn render_component(component: &Component) -> String {
    let Some((_, cells)) = lattice_cells(component) else {
        return "(nodes not on one lattice)\n".to_string();
    };
    let set: BTreeSet<(i64, i64)> = cells.iter().copied().collect();
    let w = cells.iter().map(|c| c.0).max().unwrap_or(0) as usize + 1;
    let h = cells.iter().map(|c| c.1).max().unwrap_or(0) as usize + 1;
    let mut grid = vec![vec![' '; 2 * w - 1]; 2 * h - 1];
    for &(x, y) in &cells {
        let (col, row) = (2 * x as usize, 2 * (h - 1 - y as usize));
        grid[row][col] = 'o';
        if set.contains(&(x + 1, y)) {
            grid[row][col + 1] = '-';
        }
        if set.contains(&(x, y + 1)) {
            grid[row - 1][col] = '|';
        }
    }
    let mut out = String::new();
    for row in grid {
        let line: String = row.into_iter().collect();
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}
