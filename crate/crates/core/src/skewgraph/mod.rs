//! Skew-graphs: finite oriented graphs on rational plane points whose arrows
//! are unit steps to the right or upwards.
//!
//! A [`SkewGraph`] is a list of [`Component`]s. Each component stores its
//! nodes and arrows explicitly so that arbitrary candidate data can be checked
//! by [`validate`]; the usual constructors derive the arrows from node
//! adjacency.

mod admissible;
mod enumerate;
mod format;
mod shape;

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::{Pq, PqString, Rational};

pub use admissible::{
    admissible_reason, enumerate_admissible, enumerate_admissible_with_limit, is_admissible, is_principal_class,
};
pub use enumerate::{enumerate_connected, enumerate_connected_with_limit, DEFAULT_MAX_NODES};
pub use format::{
    parse_graph_json, parse_graphs_text, render_ascii, to_json, to_json_string, to_text,
    ComponentJson, GraphJson, MAX_PARSED_COORDINATE, MAX_PARSED_NODES,
};
pub use shape::{
    classify_component, near_rectangular, NearShape, ShapeClass, Symmetry, Young,
};

/// A point of the plane with exact rational coordinates `(x, y) = (i, j)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Node {
    pub x: Rational,
    pub y: Rational,
}

impl Node {
    pub fn new(x: Rational, y: Rational) -> Self {
        Self { x, y }
    }

    pub fn int(x: i128, y: i128) -> Self {
        Self::new(Rational::from_integer(x), Rational::from_integer(y))
    }

    /// `(xn/xd, yn/yd)`.
    pub fn frac(xn: i128, xd: i128, yn: i128, yd: i128) -> Self {
        Self::new(Rational::new(xn, xd), Rational::new(yn, yd))
    }

    pub fn origin() -> Self {
        Self::int(0, 0)
    }

    pub fn offset(&self, dx: i128, dy: i128) -> Self {
        Self::new(self.x + dx, self.y + dy)
    }

    pub fn right(&self) -> Self {
        self.offset(1, 0)
    }

    pub fn up(&self) -> Self {
        self.offset(0, 1)
    }

    pub fn neg(&self) -> Self {
        Self::new(-self.x, -self.y)
    }

    pub fn is_origin(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }
}

impl fmt::Debug for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", Pq(&self.x), Pq(&self.y))
    }
}

impl Serialize for Node {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        (PqString(self.x), PqString(self.y)).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Node {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let (x, y) = <(PqString, PqString)>::deserialize(deserializer)?;
        Ok(Node::new(x.0, y.0))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Horizontal,
    Vertical,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Arrow {
    pub from: Node,
    pub to: Node,
}

impl Arrow {
    pub fn new(from: Node, to: Node) -> Self {
        Self { from, to }
    }

    /// `Some` only for a unit step right or up.
    pub fn direction(&self) -> Option<Direction> {
        let dx = self.to.x - self.from.x;
        let dy = self.to.y - self.from.y;
        if dx.is_one() && dy.is_zero() {
            Some(Direction::Horizontal)
        } else if dx.is_zero() && dy.is_one() {
            Some(Direction::Vertical)
        } else {
            None
        }
    }
}

impl fmt::Display for Arrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) -> ({})", self.from, self.to)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Component {
    pub nodes: Vec<Node>,
    pub arrows: Vec<Arrow>,
}

impl Component {
    /// Sorted, deduplicated nodes with the arrows implied by adjacency.
    pub fn from_nodes(nodes: impl IntoIterator<Item = Node>) -> Self {
        let set: BTreeSet<Node> = nodes.into_iter().collect();
        let arrows = implied_arrows(&set);
        Self {
            nodes: set.into_iter().collect(),
            arrows,
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn contains(&self, node: &Node) -> bool {
        self.nodes.contains(node)
    }

    pub fn node_set(&self) -> BTreeSet<Node> {
        self.nodes.iter().cloned().collect()
    }

    pub fn has_direction(&self, direction: Direction) -> bool {
        self.arrows.iter().any(|a| a.direction() == Some(direction))
    }
}

fn implied_arrows(nodes: &BTreeSet<Node>) -> Vec<Arrow> {
    let mut arrows = Vec::new();
    for n in nodes {
        for next in [n.right(), n.up()] {
            if nodes.contains(&next) {
                arrows.push(Arrow::new(n.clone(), next));
            }
        }
    }
    arrows.sort();
    arrows
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SkewGraph {
    pub components: Vec<Component>,
}

impl SkewGraph {
    pub fn new(components: Vec<Component>) -> Self {
        Self { components }
    }

    pub fn from_node_sets(sets: impl IntoIterator<Item = Vec<Node>>) -> Self {
        Self::new(sets.into_iter().map(Component::from_nodes).collect())
    }

    pub fn connected(nodes: impl IntoIterator<Item = Node>) -> Self {
        Self::new(vec![Component::from_nodes(nodes)])
    }

    /// Number of nodes counted once per component containing them (= dimV).
    pub fn node_count(&self) -> usize {
        self.components.iter().map(Component::len).sum()
    }

    pub fn is_connected(&self) -> bool {
        self.components.len() == 1
    }

    /// Barycentre of the per-component node multiset.
    pub fn barycentre(&self) -> (BigRational, BigRational) {
        let mut sx = BigRational::zero();
        let mut sy = BigRational::zero();
        let mut count = 0usize;
        for n in self.components.iter().flat_map(|c| &c.nodes) {
            sx += to_big(&n.x);
            sy += to_big(&n.y);
            count += 1;
        }
        if count == 0 {
            return (sx, sy);
        }
        let c = BigRational::from_integer(BigInt::from(count));
        (sx / &c, sy / c)
    }

    /// Canonical form: barycentre at the origin, nodes sorted, arrows rebuilt
    /// from adjacency, components ordered by (size descending, smallest node,
    /// full node list).
    pub fn canonical(&self) -> SkewGraph {
        let (bx, by) = self.barycentre();
        let shift = match (from_big(&bx), from_big(&by)) {
            (Some(x), Some(y)) => Node::new(x, y),
            _ => Node::origin(),
        };
        let mut components: Vec<Component> = self
            .components
            .iter()
            .map(|c| {
                Component::from_nodes(
                    c.nodes
                        .iter()
                        .map(|n| Node::new(n.x - shift.x, n.y - shift.y)),
                )
            })
            .collect();
        components.sort_by(|a, b| {
            b.len()
                .cmp(&a.len())
                .then_with(|| a.nodes.first().cmp(&b.nodes.first()))
                .then_with(|| a.nodes.cmp(&b.nodes))
        });
        SkewGraph { components }
    }

    pub fn is_canonical(&self) -> bool {
        *self == self.canonical()
    }

    /// All distinct nodes of the graph.
    pub fn node_set(&self) -> BTreeSet<Node> {
        self.components
            .iter()
            .flat_map(|c| c.nodes.iter().cloned())
            .collect()
    }
}

impl fmt::Display for SkewGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(to_text(self).trim_end())
    }
}

fn to_big(r: &Rational) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

fn from_big(r: &BigRational) -> Option<Rational> {
    use num_traits::ToPrimitive;
    Some(Rational::new(r.numer().to_i128()?, r.denom().to_i128()?))
}

/// An axiom or structural rule broken by a candidate skew-graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum Violation {
    EmptyGraph,
    EmptyComponent { component: usize },
    DuplicateNode { component: usize, node: Node },
    ArrowEndpointMissing { component: usize, arrow: Arrow },
    ArrowLength { component: usize, arrow: Arrow },
    ArrowDirection { component: usize, arrow: Arrow },
    DuplicateArrow { component: usize, arrow: Arrow },
    MissingArrow { component: usize, arrow: Arrow },
    Disconnected { component: usize },
    SquareAxiom { component: usize, corner: Node },
    Barycentre { x: String, y: String },
    SharedNodes { first: usize, second: usize, nodes: Vec<Node> },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptyGraph => write!(f, "graph has no components"),
            Violation::EmptyComponent { component } => {
                write!(f, "component {component} has no nodes")
            }
            Violation::DuplicateNode { component, node } => {
                write!(f, "component {component}: node {node} listed twice")
            }
            Violation::ArrowEndpointMissing { component, arrow } => {
                write!(f, "component {component}: arrow {arrow} ends outside the node set")
            }
            Violation::ArrowLength { component, arrow } => {
                write!(f, "component {component}: arrow {arrow} is not a unit step")
            }
            Violation::ArrowDirection { component, arrow } => {
                write!(f, "component {component}: arrow {arrow} points left or down")
            }
            Violation::DuplicateArrow { component, arrow } => {
                write!(f, "component {component}: arrow {arrow} listed twice")
            }
            Violation::MissingArrow { component, arrow } => {
                write!(f, "component {component}: adjacent nodes lack arrow {arrow}")
            }
            Violation::Disconnected { component } => {
                write!(f, "component {component} is not connected")
            }
            Violation::SquareAxiom { component, corner } => write!(
                f,
                "component {component}: square at {corner} has both diagonal corners but is not filled"
            ),
            Violation::Barycentre { x, y } => write!(f, "barycentre is ({x},{y}), not the origin"),
            Violation::SharedNodes { first, second, nodes } => {
                let list: Vec<String> = nodes.iter().map(|n| format!("({n})")).collect();
                write!(
                    f,
                    "components {first} and {second} share nodes {}",
                    list.join(" ")
                )
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("valid");
        }
        let parts: Vec<String> = self.violations.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join("; "))
    }
}

/// Checks every axiom and structural rule; an empty report means valid.
pub fn validate(graph: &SkewGraph) -> ValidationReport {
    let mut violations = Vec::new();
    if graph.components.is_empty() {
        violations.push(Violation::EmptyGraph);
        return ValidationReport { violations };
    }
    for (idx, component) in graph.components.iter().enumerate() {
        violations.extend(component_violations(idx, component));
    }
    let (bx, by) = graph.barycentre();
    if !bx.is_zero() || !by.is_zero() {
        violations.push(Violation::Barycentre {
            x: format!("{}/{}", bx.numer(), bx.denom()),
            y: format!("{}/{}", by.numer(), by.denom()),
        });
    }
    violations.extend(sharing_violations(graph));
    ValidationReport { violations }
}

/// Rules that concern a single component (everything except the barycentre
/// and sharing between components).
pub(crate) fn component_violations(idx: usize, component: &Component) -> Vec<Violation> {
    let mut out = Vec::new();
    if component.nodes.is_empty() {
        out.push(Violation::EmptyComponent { component: idx });
        return out;
    }
    let mut nodes: HashSet<&Node> = HashSet::new();
    for n in &component.nodes {
        if !nodes.insert(n) {
            out.push(Violation::DuplicateNode {
                component: idx,
                node: n.clone(),
            });
        }
    }

    let mut arrows: HashSet<&Arrow> = HashSet::new();
    let mut good_arrows: Vec<&Arrow> = Vec::new();
    for a in &component.arrows {
        if !arrows.insert(a) {
            out.push(Violation::DuplicateArrow {
                component: idx,
                arrow: a.clone(),
            });
            continue;
        }
        let mut ok = true;
        if !nodes.contains(&a.from) || !nodes.contains(&a.to) {
            out.push(Violation::ArrowEndpointMissing {
                component: idx,
                arrow: a.clone(),
            });
            ok = false;
        }
        if a.direction().is_none() {
            let dx = a.to.x - a.from.x;
            let dy = a.to.y - a.from.y;
            let reversed_unit = (dx.is_zero() && (-dy).is_one())
                || (dy.is_zero() && (-dx).is_one());
            out.push(if reversed_unit {
                Violation::ArrowDirection {
                    component: idx,
                    arrow: a.clone(),
                }
            } else {
                Violation::ArrowLength {
                    component: idx,
                    arrow: a.clone(),
                }
            });
            ok = false;
        }
        if ok {
            good_arrows.push(a);
        }
    }

    let node_list: Vec<&Node> = {
        let mut v: Vec<&Node> = nodes.iter().copied().collect();
        v.sort();
        v
    };
    for n in &node_list {
        for next in [n.right(), n.up()] {
            if nodes.contains(&next) {
                let arrow = Arrow::new((*n).clone(), next);
                if !arrows.contains(&arrow) {
                    out.push(Violation::MissingArrow {
                        component: idx,
                        arrow,
                    });
                }
            }
        }
        let diagonal = n.offset(1, 1);
        if nodes.contains(&diagonal) && (!nodes.contains(&n.right()) || !nodes.contains(&n.up())) {
            out.push(Violation::SquareAxiom {
                component: idx,
                corner: (*n).clone(),
            });
        }
    }

    // Connectivity through the well-formed arrows, ignoring orientation.
    let index: HashMap<&Node, usize> = node_list.iter().enumerate().map(|(i, n)| (*n, i)).collect();
    let mut parent: Vec<usize> = (0..node_list.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for a in good_arrows {
        let (Some(&p), Some(&q)) = (index.get(&a.from), index.get(&a.to)) else {
            continue;
        };
        let (rp, rq) = (find(&mut parent, p), find(&mut parent, q));
        parent[rp] = rq;
    }
    let root = find(&mut parent, 0);
    if (0..node_list.len()).any(|i| find(&mut parent, i) != root) {
        out.push(Violation::Disconnected { component: idx });
    }
    out
}

fn sharing_violations(graph: &SkewGraph) -> Vec<Violation> {
    let sets: Vec<HashSet<&Node>> = graph
        .components
        .iter()
        .map(|c| c.nodes.iter().collect())
        .collect();
    let mut out = Vec::new();
    let mut origin_holders = Vec::new();
    for (i, set) in sets.iter().enumerate() {
        if set.contains(&Node::origin()) {
            origin_holders.push(i);
        }
    }
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            let mut common: Vec<Node> = sets[i]
                .intersection(&sets[j])
                .map(|n| (*n).clone())
                .collect();
            if common.is_empty() {
                continue;
            }
            common.sort();
            let only_origin = common.len() == 1 && common[0].is_origin();
            // At most two components may meet, and only at the origin.
            if !only_origin || origin_holders.len() > 2 {
                out.push(Violation::SharedNodes {
                    first: i,
                    second: j,
                    nodes: common,
                });
            }
        }
    }
    out
}

/// Integer cells of a component relative to its lower-left bounding corner,
/// plus that corner. Requires all nodes to be congruent modulo `Z²`.
pub(crate) fn lattice_cells(component: &Component) -> Option<(Node, Vec<(i64, i64)>)> {
    let min_x = *component.nodes.iter().map(|n| &n.x).min()?;
    let min_y = *component.nodes.iter().map(|n| &n.y).min()?;
    let corner = Node::new(min_x, min_y);
    let mut cells = Vec::with_capacity(component.len());
    for n in &component.nodes {
        let dx = n.x - corner.x;
        let dy = n.y - corner.y;
        if !dx.is_integer() || !dy.is_integer() {
            return None;
        }
        let (dx, dy) = (dx.to_integer(), dy.to_integer());
        cells.push((i64::try_from(dx).ok()?, i64::try_from(dy).ok()?));
    }
    cells.sort_unstable();
    Some((corner, cells))
}
