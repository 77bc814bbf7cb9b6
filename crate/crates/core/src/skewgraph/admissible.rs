use std::collections::BTreeSet;

use super::enumerate::{cells_to_graph, connected_shapes, Cells, DEFAULT_MAX_NODES};
use super::shape::{classify_component, ShapeClass, Symmetry};
use super::{validate, Component, SkewGraph};
use crate::error::{Error, Result};
use crate::series::{PairKind, Series};

/// Every admissible graph for `(series, dimv, kind)`, canonical and sorted.
pub fn enumerate_admissible(series: Series, dimv: usize, kind: PairKind) -> Result<Vec<SkewGraph>> {
    enumerate_admissible_with_limit(series, dimv, kind, DEFAULT_MAX_NODES)
}

/// [`enumerate_admissible`] with an explicit bound on `dimv`.
pub fn enumerate_admissible_with_limit(
    series: Series,
    dimv: usize,
    kind: PairKind,
    max_nodes: usize,
) -> Result<Vec<SkewGraph>> {
    series.check_dimv(dimv)?;
    if dimv > max_nodes {
        return Err(Error::ResourceLimit {
            what: "admissible enumeration",
            requested: dimv,
            limit: max_nodes,
        });
    }
    let mut graphs = distinguished_graphs(series, dimv);
    if kind == PairKind::Principal {
        graphs.retain(|g| is_principal_class(series, g));
    }
    graphs = graphs.into_iter().map(|g| g.canonical()).collect();
    graphs.sort();
    graphs.dedup();
    Ok(graphs)
}

fn distinguished_graphs(series: Series, dimv: usize) -> Vec<SkewGraph> {
    match series {
        Series::A => connected_shapes(dimv)
            .iter()
            .map(|c| cells_to_graph(c))
            .collect(),
        Series::B => {
            let mut out = Vec::new();
            for k in (1..=dimv).step_by(2) {
                for g0 in cs_components(k, Symmetry::Integral) {
                    if k == dimv {
                        out.push(SkewGraph::new(vec![g0.clone()]));
                        continue;
                    }
                    for g1 in cs_components(dimv - k, Symmetry::NonIntegral) {
                        out.push(SkewGraph::new(vec![g0.clone(), g1]));
                    }
                }
            }
            out
        }
        Series::C => {
            let mut out: Vec<SkewGraph> = cs_components(dimv, Symmetry::SemiIntegralColsort)
                .into_iter()
                .chain(cs_components(dimv, Symmetry::SemiIntegralRowsort))
                .map(|c| SkewGraph::new(vec![c]))
                .collect();
            for a in (2..dimv).step_by(2) {
                let rows = cs_components(dimv - a, Symmetry::SemiIntegralRowsort);
                for g0 in cs_components(a, Symmetry::SemiIntegralColsort) {
                    for g1 in &rows {
                        out.push(SkewGraph::new(vec![g0.clone(), g1.clone()]));
                    }
                }
            }
            out
        }
        Series::D => {
            let mut out: Vec<SkewGraph> = cs_components(dimv, Symmetry::NonIntegral)
                .into_iter()
                .map(|c| SkewGraph::new(vec![c]))
                .collect();
            for s in (0..=dimv.saturating_sub(4)).step_by(2) {
                let rest = dimv - s;
                let nonintegral: Vec<Option<Component>> = if s == 0 {
                    vec![None]
                } else {
                    cs_components(s, Symmetry::NonIntegral).into_iter().map(Some).collect()
                };
                for pair in integral_pairs(rest) {
                    for g0 in &nonintegral {
                        let mut components = pair.clone();
                        components.extend(g0.iter().cloned());
                        out.push(SkewGraph::new(components));
                    }
                }
            }
            out
        }
    }
}

/// Two integral components with `total` nodes that meet exactly at the origin,
/// with either a single point or both of size at least three.
fn integral_pairs(total: usize) -> Vec<Vec<Component>> {
    let mut out = Vec::new();
    if total < 4 || total % 2 == 1 {
        return out;
    }
    let point = Component::from_nodes([super::Node::origin()]);
    for g in cs_components(total - 1, Symmetry::Integral) {
        out.push(vec![g, point.clone()]);
    }
    for a in (3..=total / 2).step_by(2) {
        let b = total - a;
        if b < 3 {
            continue;
        }
        let small = cs_components(a, Symmetry::Integral);
        let large = if a == b { small.clone() } else { cs_components(b, Symmetry::Integral) };
        for (i, g1) in small.iter().enumerate() {
            for (j, g2) in large.iter().enumerate() {
                if a == b && j <= i {
                    continue;
                }
                let s1 = g1.node_set();
                let common: Vec<_> = g2.nodes.iter().filter(|n| s1.contains(n)).collect();
                if common.len() == 1 && common[0].is_origin() {
                    out.push(vec![g1.clone(), g2.clone()]);
                }
            }
        }
    }
    out
}

/// Connected components of the given size that are centrally symmetric about
/// their centre with the requested residue class, placed with centre at the origin.
fn cs_components(size: usize, symmetry: Symmetry) -> Vec<Component> {
    if size == 0 {
        return Vec::new();
    }
    connected_shapes(size)
        .into_iter()
        .filter(|cells| cells_symmetry(cells) == symmetry)
        .map(|cells| cells_to_graph(&cells).components.remove(0))
        .collect()
}

fn cells_symmetry(cells: &Cells) -> Symmetry {
    let w = cells.iter().map(|c| c.0).max().unwrap_or(0);
    let h = cells.iter().map(|c| c.1).max().unwrap_or(0);
    let set: BTreeSet<(i64, i64)> = cells.iter().copied().collect();
    if !cells.iter().all(|&(x, y)| set.contains(&(w - x, h - y))) {
        return Symmetry::NotCs;
    }
    match (w % 2 == 0, h % 2 == 0) {
        (true, true) => Symmetry::Integral,
        (false, true) => Symmetry::SemiIntegralRowsort,
        (true, false) => Symmetry::SemiIntegralColsort,
        (false, false) => Symmetry::NonIntegral,
    }
}

fn classes(graph: &SkewGraph) -> std::result::Result<Vec<ShapeClass>, String> {
    graph
        .components
        .iter()
        .map(|c| classify_component(c).map_err(|e| e.to_string()))
        .collect()
}

/// `Ok(())` if the graph is admissible, otherwise the reason it is not.
pub fn admissible_reason(series: Series, graph: &SkewGraph, kind: PairKind) -> std::result::Result<(), String> {
    let report = validate(graph);
    if !report.is_valid() {
        return Err(report.to_string());
    }
    series
        .check_dimv(graph.node_count())
        .map_err(|e| e.to_string())?;
    let cls = classes(graph)?;
    distinguished_reason(series, graph, &cls)?;
    if kind == PairKind::Principal && !principal_shape(series, graph, &cls) {
        return Err(format!("graph is not in the principal list for series {series}"));
    }
    Ok(())
}

pub fn is_admissible(series: Series, graph: &SkewGraph, kind: PairKind) -> bool {
    admissible_reason(series, graph, kind).is_ok()
}

/// Whether a graph admissible for distinguished pairs is in the principal list.
pub fn is_principal_class(series: Series, graph: &SkewGraph) -> bool {
    match classes(graph) {
        Ok(cls) => principal_shape(series, graph, &cls),
        Err(_) => false,
    }
}

fn distinguished_reason(series: Series, graph: &SkewGraph, cls: &[ShapeClass]) -> std::result::Result<(), String> {
    let count = |s: Symmetry| cls.iter().filter(|c| c.symmetry == s).count();
    match series {
        Series::A => {
            if graph.is_connected() {
                Ok(())
            } else {
                Err("series A needs a connected graph".into())
            }
        }
        Series::B => {
            let ok = count(Symmetry::Integral) == 1
                && count(Symmetry::NonIntegral) == cls.len() - 1
                && cls.len() <= 2;
            if ok {
                Ok(())
            } else {
                Err("series B needs one integral c.-s. component plus at most one non-integral one".into())
            }
        }
        Series::C => {
            let rows = count(Symmetry::SemiIntegralRowsort);
            let cols = count(Symmetry::SemiIntegralColsort);
            if rows <= 1 && cols <= 1 && rows + cols == cls.len() && !cls.is_empty() {
                Ok(())
            } else {
                Err("series C needs one or two semi-integral c.-s. components of different sorts".into())
            }
        }
        Series::D => {
            let integral: Vec<usize> = (0..cls.len())
                .filter(|&i| cls[i].symmetry == Symmetry::Integral)
                .collect();
            let nonintegral = count(Symmetry::NonIntegral);
            if integral.len() + nonintegral != cls.len() {
                return Err("series D components must be integral or non-integral c.-s.".into());
            }
            match (integral.len(), nonintegral) {
                (0, 1) => Ok(()),
                (2, 0) | (2, 1) => {
                    let a = &graph.components[integral[0]];
                    let b = &graph.components[integral[1]];
                    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
                    if small.len() == 1 && large.len() > 1 {
                        return Ok(());
                    }
                    if small.len() == 1 {
                        return Err("two single-point components do not give a distinguished pair".into());
                    }
                    let s: BTreeSet<_> = small.nodes.iter().collect();
                    let common: Vec<_> = large.nodes.iter().filter(|n| s.contains(n)).collect();
                    if common.len() == 1 && common[0].is_origin() {
                        Ok(())
                    } else {
                        Err("integral components must meet exactly at the origin".into())
                    }
                }
                _ => Err("unsupported component configuration for series D".into()),
            }
        }
    }
}

fn principal_shape(series: Series, graph: &SkewGraph, cls: &[ShapeClass]) -> bool {
    let connected = graph.is_connected();
    match series {
        Series::A => connected && cls[0].is_young(),
        Series::B => connected && cls[0].symmetry == Symmetry::Integral && cls[0].is_rectangle(),
        Series::C => connected && cls[0].symmetry.is_semi_integral() && cls[0].is_rectangle(),
        Series::D => {
            if connected {
                let c = &cls[0];
                return c.symmetry == Symmetry::NonIntegral
                    && (c.is_rectangle() || c.near_rectangular.is_some());
            }
            if cls.len() != 2 || cls.iter().any(|c| c.symmetry != Symmetry::Integral) {
                return false;
            }
            let (a, b) = (&graph.components[0], &graph.components[1]);
            let (ca, cb) = (&cls[0], &cls[1]);
            let rect_plus_point = |big: &ShapeClass, small: &Component, bigc: &Component| {
                small.len() == 1 && bigc.len() > 1 && big.is_rectangle()
            };
            let chains = |h: &ShapeClass, hc: &Component, v: &ShapeClass, vc: &Component| {
                hc.len() > 1 && vc.len() > 1 && h.is_horizontal_chain() && v.is_vertical_chain()
            };
            rect_plus_point(ca, b, a)
                || rect_plus_point(cb, a, b)
                || chains(ca, a, cb, b)
                || chains(cb, b, ca, a)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(series: Series, dimv: usize, kind: PairKind) -> usize {
        enumerate_admissible(series, dimv, kind).unwrap().len()
    }

    #[test]
    fn principal_counts() {
        assert_eq!(count(Series::A, 4, PairKind::Principal), 7);
        assert_eq!(count(Series::B, 9, PairKind::Principal), 3);
        assert_eq!(count(Series::C, 4, PairKind::Principal), 2);
    }

    #[test]
    fn every_output_is_admissible() {
        for series in Series::ALL {
            for dimv in series.min_dimv()..=8 {
                if series.check_dimv(dimv).is_err() {
                    continue;
                }
                for kind in [PairKind::Distinguished, PairKind::Principal] {
                    for g in enumerate_admissible(series, dimv, kind).unwrap() {
                        assert_eq!(admissible_reason(series, &g, kind), Ok(()), "{series} {g}");
                    }
                }
            }
        }
    }

    #[test]
    fn d6_principal_contains_expected_families() {
        let graphs = enumerate_admissible(Series::D, 6, PairKind::Principal).unwrap();
        let disconnected = graphs.iter().filter(|g| !g.is_connected()).count();
        // 5-chain + point (two orientations), 3-chain + 3-chain.
        assert_eq!(disconnected, 3);
    }

    #[test]
    fn bad_dimensions_are_rejected() {
        assert!(enumerate_admissible(Series::B, 4, PairKind::Distinguished).is_err());
        assert!(enumerate_admissible(Series::D, 14, PairKind::Principal).is_err());
    }
}
