use std::collections::{BTreeSet, HashSet};

use super::{Node, SkewGraph};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Default bound on the node count accepted by [`enumerate_connected`].
pub const DEFAULT_MAX_NODES: usize = 12;

/// Translation class of a connected shape: sorted cells with minimum x and y 0.
pub(crate) type Cells = Vec<(i64, i64)>;

/// All connected skew-graphs with `n` nodes up to translation, in canonical
/// form and sorted.
pub fn enumerate_connected(n: usize) -> Result<Vec<SkewGraph>> {
    enumerate_connected_with_limit(n, DEFAULT_MAX_NODES)
}

pub fn enumerate_connected_with_limit(n: usize, max_nodes: usize) -> Result<Vec<SkewGraph>> {
    if n == 0 {
        return Err(Error::InvalidGraph("a skew-graph needs at least one node".into()));
    }
    if n > max_nodes {
        return Err(Error::ResourceLimit {
            what: "connected enumeration",
            requested: n,
            limit: max_nodes,
        });
    }
    let mut graphs: Vec<SkewGraph> = connected_shapes(n).iter().map(|c| cells_to_graph(c)).collect();
    graphs.sort();
    Ok(graphs)
}

/// Shapes are grown one cell at a time. Every connected skew shape with more
/// than one cell has a removable cell on its top row (the single cell of a
/// length-one row, else the leftmost or rightmost end), so growing level by
/// level reaches all of them.
pub(crate) fn connected_shapes(n: usize) -> Vec<Cells> {
    let mut level: HashSet<Cells> = HashSet::from([vec![(0, 0)]]);
    for _ in 1..n {
        let mut next: HashSet<Cells> = HashSet::new();
        for shape in &level {
            let set: BTreeSet<(i64, i64)> = shape.iter().copied().collect();
            let mut candidates = BTreeSet::new();
            for &(x, y) in shape {
                for c in [(x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)] {
                    if !set.contains(&c) {
                        candidates.insert(c);
                    }
                }
            }
            for c in candidates {
                if creates_violation(&set, c) {
                    continue;
                }
                let mut grown: Cells = shape.clone();
                grown.push(c);
                next.insert(normalize(grown));
            }
        }
        level = next;
    }
    let mut out: Vec<Cells> = level.into_iter().collect();
    out.sort();
    out
}

/// Whether adding `c` to a valid shape breaks the square rule. Only squares
/// touching `c` can change.
fn creates_violation(set: &BTreeSet<(i64, i64)>, c: (i64, i64)) -> bool {
    let has = |p: (i64, i64)| p == c || set.contains(&p);
    let (x, y) = c;
    for (ox, oy) in [(x, y), (x - 1, y - 1), (x - 1, y), (x, y - 1)] {
        let diag = has((ox, oy)) && has((ox + 1, oy + 1));
        if diag && !(has((ox + 1, oy)) && has((ox, oy + 1))) {
            return true;
        }
    }
    false
}

pub(crate) fn normalize(mut cells: Cells) -> Cells {
    let min_x = cells.iter().map(|c| c.0).min().unwrap_or(0);
    let min_y = cells.iter().map(|c| c.1).min().unwrap_or(0);
    for c in cells.iter_mut() {
        c.0 -= min_x;
        c.1 -= min_y;
    }
    cells.sort_unstable();
    cells
}

/// Places a shape with its barycentre at the origin.
pub(crate) fn cells_to_graph(cells: &[(i64, i64)]) -> SkewGraph {
    let n = cells.len() as i128;
    let sx: i128 = cells.iter().map(|c| c.0 as i128).sum();
    let sy: i128 = cells.iter().map(|c| c.1 as i128).sum();
    let bx = Rational::new(sx, n);
    let by = Rational::new(sy, n);
    SkewGraph::connected(
        cells
            .iter()
            .map(|&(x, y)| Node::new(Rational::from_integer(x as i128) - bx, Rational::from_integer(y as i128) - by)),
    )
}
