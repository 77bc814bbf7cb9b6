use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{component_violations, lattice_cells, Component, Node};
use crate::error::{Error, Result};
use crate::rational::is_half_odd;

/// Central symmetry class of a component about the origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Symmetry {
    NotCs,
    Integral,
    /// `j` integral, `i ∈ 1/2 + Z`.
    SemiIntegralRowsort,
    /// `i` integral, `j ∈ 1/2 + Z`.
    SemiIntegralColsort,
    NonIntegral,
}

impl Symmetry {
    pub fn is_cs(self) -> bool {
        self != Symmetry::NotCs
    }

    pub fn is_semi_integral(self) -> bool {
        matches!(
            self,
            Symmetry::SemiIntegralRowsort | Symmetry::SemiIntegralColsort
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NearShape {
    /// Leftmost column keeps only its top cell, rightmost only its bottom cell.
    First,
    /// Bottom row keeps only its rightmost cell, top row only its leftmost cell.
    Second,
    /// Bottom-left and top-right cells removed.
    Third,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Young {
    Sw,
    Ne,
    Both,
    Neither,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ShapeClass {
    pub symmetry: Symmetry,
    /// `(width, height)` when the component fills its bounding box.
    pub rectangle: Option<(usize, usize)>,
    pub near_rectangular: Option<NearShape>,
    pub young: Young,
    /// Bounding box `(width, height)`.
    pub bounding_box: (usize, usize),
    /// Number of source and sink nodes.
    pub sources: usize,
    pub sinks: usize,
}

impl ShapeClass {
    pub fn is_rectangle(&self) -> bool {
        self.rectangle.is_some()
    }

    pub fn is_young(&self) -> bool {
        self.young != Young::Neither
    }

    pub fn is_horizontal_chain(&self) -> bool {
        matches!(self.rectangle, Some((_, 1)))
    }

    pub fn is_vertical_chain(&self) -> bool {
        matches!(self.rectangle, Some((1, _)))
    }
}

/// Classifies a single component. The component must satisfy every
/// single-component rule of [`super::validate`]; its barycentre may be anywhere.
pub fn classify_component(component: &Component) -> Result<ShapeClass> {
    let violations = component_violations(0, component);
    if let Some(v) = violations.first() {
        return Err(Error::InvalidGraph(v.to_string()));
    }
    let (_, cells) = lattice_cells(component)
        .ok_or_else(|| Error::InvalidGraph("component nodes are not on one lattice".into()))?;
    let cell_set: BTreeSet<(i64, i64)> = cells.iter().copied().collect();
    let width = cells.iter().map(|c| c.0).max().unwrap_or(0) as usize + 1;
    let height = cells.iter().map(|c| c.1).max().unwrap_or(0) as usize + 1;

    let symmetry = symmetry_of(component);
    let rectangle = (cells.len() == width * height).then_some((width, height));

    let sources = cells
        .iter()
        .filter(|(x, y)| !cell_set.contains(&(x - 1, *y)) && !cell_set.contains(&(*x, y - 1)))
        .count();
    let sinks = cells
        .iter()
        .filter(|(x, y)| !cell_set.contains(&(x + 1, *y)) && !cell_set.contains(&(*x, y + 1)))
        .count();
    let young = match (sources == 1, sinks == 1) {
        (true, true) => Young::Both,
        (true, false) => Young::Sw,
        (false, true) => Young::Ne,
        (false, false) => Young::Neither,
    };

    let near_rectangular = if symmetry == Symmetry::NonIntegral && rectangle.is_none() {
        [NearShape::Third, NearShape::First, NearShape::Second]
            .into_iter()
            .find(|&shape| near_rectangular(width, height, shape).is_some_and(|s| s == cell_set))
    } else {
        None
    };

    Ok(ShapeClass {
        symmetry,
        rectangle,
        near_rectangular,
        young,
        bounding_box: (width, height),
        sources,
        sinks,
    })
}

fn symmetry_of(component: &Component) -> Symmetry {
    let set: BTreeSet<&Node> = component.nodes.iter().collect();
    let symmetric = component.nodes.iter().all(|n| set.contains(&n.neg()));
    if !symmetric {
        return Symmetry::NotCs;
    }
    let n = &component.nodes[0];
    match (n.x.is_integer(), n.y.is_integer()) {
        (true, true) => Symmetry::Integral,
        (false, true) if is_half_odd(&n.x) => Symmetry::SemiIntegralRowsort,
        (true, false) if is_half_odd(&n.y) => Symmetry::SemiIntegralColsort,
        (false, false) if is_half_odd(&n.x) && is_half_odd(&n.y) => Symmetry::NonIntegral,
        // Central symmetry of a connected component pins coordinates to 1/2·Z.
        _ => Symmetry::NotCs,
    }
}

/// Cells (relative to the lower-left corner) of the near-rectangular
/// modification of a `width × height` rectangle, both sides even. `None` when
/// the sides are odd, the recipe does not apply, or the result is disconnected.
pub fn near_rectangular(width: usize, height: usize, shape: NearShape) -> Option<BTreeSet<(i64, i64)>> {
    if width == 0 || height == 0 || width % 2 == 1 || height % 2 == 1 {
        return None;
    }
    let (w, h) = (width as i64, height as i64);
    let keep = |x: i64, y: i64| -> bool {
        match shape {
            NearShape::First => {
                if x == 0 {
                    y == h - 1
                } else if x == w - 1 {
                    y == 0
                } else {
                    true
                }
            }
            NearShape::Second => {
                if y == 0 {
                    x == w - 1
                } else if y == h - 1 {
                    x == 0
                } else {
                    true
                }
            }
            NearShape::Third => !((x, y) == (0, 0) || (x, y) == (w - 1, h - 1)),
        }
    };
    if shape == NearShape::First && width < 4 {
        return None;
    }
    if shape == NearShape::Second && height < 4 {
        return None;
    }
    let cells: BTreeSet<(i64, i64)> = (0..w)
        .flat_map(|x| (0..h).map(move |y| (x, y)))
        .filter(|&(x, y)| keep(x, y))
        .collect();
    is_connected(&cells).then_some(cells)
}

fn is_connected(cells: &BTreeSet<(i64, i64)>) -> bool {
    let Some(&start) = cells.iter().next() else {
        return false;
    };
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some((x, y)) = stack.pop() {
        for next in [(x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)] {
            if cells.contains(&next) && seen.insert(next) {
                stack.push(next);
            }
        }
    }
    seen.len() == cells.len()
}
