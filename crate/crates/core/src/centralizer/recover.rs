//! Reading the skew-graph back off a pair.
//!
//! Nodes are the joint eigenvalues of `(h₁, h₂)` on `V` and arrows record
//! where `e₁`, `e₂` act nontrivially between eigenlines. In series D the
//! `(0,0)`-eigenspace may be a plane shared by two integral components; it is
//! split by growing, from each lower-left integral eigenline, the smallest
//! subspace closed under `e₁`, `e₂` and under taking eigenlines that `e`
//! maps nontrivially into it.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::spectrum::{joint_eigenspaces, Key};
use crate::error::{Error, Result};
use crate::liealg::AlgebraSpec;
use crate::linalg::{sparse_from_dense, Subspace};
use crate::matrix::Matrix;
use crate::rational::{one, Rational};
use crate::series::Series;
use crate::skewgraph::{validate, Arrow, Component, Node, SkewGraph};

type Vector = Vec<Rational>;

fn is_zero(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

fn node_of(key: &Key) -> Node {
    Node::new(key.0, key.1)
}

fn check_relations(e1: &Matrix, e2: &Matrix, h1: &Matrix, h2: &Matrix) -> Result<()> {
    let zero = Matrix::zeros(e1.rows(), e1.cols());
    let checks = [
        ("[e1,e2] = 0", e1.commutator(e2) == zero),
        ("[h1,h2] = 0", h1.commutator(h2) == zero),
        ("[h1,e1] = e1", h1.commutator(e1) == *e1),
        ("[h1,e2] = 0", h1.commutator(e2) == zero),
        ("[h2,e1] = 0", h2.commutator(e1) == zero),
        ("[h2,e2] = e2", h2.commutator(e2) == *e2),
    ];
    let failed: Vec<&str> = checks.iter().filter(|c| !c.1).map(|c| c.0).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Error::RelationsFailed(failed.join(", ")))
    }
}

/// One component under construction: the vector standing for each node.
struct Piece {
    vectors: BTreeMap<Key, Vector>,
}

impl Piece {
    fn into_component(self, e1: &Matrix, e2: &Matrix) -> Component {
        let mut arrows = Vec::new();
        for (key, v) in &self.vectors {
            let node = node_of(key);
            for (e, next) in [(e1, node.right()), (e2, node.up())] {
                if !is_zero(&e.apply(v)) {
                    arrows.push(Arrow::new(node.clone(), next));
                }
            }
        }
        arrows.sort();
        Component {
            nodes: self.vectors.keys().map(node_of).collect(),
            arrows,
        }
    }
}

/// Groups eigenlines into classes connected by nonzero `e`-arrows.
fn line_classes(lines: &BTreeMap<Key, Vector>, e1: &Matrix, e2: &Matrix) -> Vec<Piece> {
    let keys: Vec<&Key> = lines.keys().collect();
    let index: BTreeMap<&Key, usize> = keys.iter().enumerate().map(|(i, k)| (*k, i)).collect();
    let mut parent: Vec<usize> = (0..keys.len()).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for (key, v) in lines {
        for (e, next) in [(e1, (key.0 + one(), key.1)), (e2, (key.0, key.1 + one()))] {
            if is_zero(&e.apply(v)) {
                continue;
            }
            if let Some(&j) = index.get(&next) {
                let (a, b) = (find(&mut parent, index[key]), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let mut groups: BTreeMap<usize, Piece> = BTreeMap::new();
    for (i, key) in keys.iter().enumerate() {
        let root = find(&mut parent, i);
        groups
            .entry(root)
            .or_insert_with(|| Piece { vectors: BTreeMap::new() })
            .vectors
            .insert(*(*key), lines[*key].clone());
    }
    groups.into_values().collect()
}

/// Smallest subspace containing `seed`, closed under `e₁`, `e₂` and under
/// adding eigenlines mapped nontrivially into it.
fn envelope(seed: &Vector, lines: &BTreeMap<Key, Vector>, e1: &Matrix, e2: &Matrix, n: usize) -> Subspace {
    let mut w = Subspace::span_dense(n, std::slice::from_ref(seed));
    loop {
        let before = w.dim();
        loop {
            let images: Vec<Vector> = w
                .basis_dense()
                .iter()
                .flat_map(|v| [e1.apply(v), e2.apply(v)])
                .filter(|v| !is_zero(v))
                .collect();
            let grown = w.sum(&Subspace::span_dense(n, &images));
            if grown.dim() == w.dim() {
                break;
            }
            w = grown;
        }
        let predecessors: Vec<Vector> = lines
            .values()
            .filter(|x| !w.contains_dense(x))
            .filter(|x| {
                [e1.apply(x), e2.apply(x)]
                    .iter()
                    .any(|y| !is_zero(y) && w.contains_dense(y))
            })
            .cloned()
            .collect();
        w = w.sum(&Subspace::span_dense(n, &predecessors));
        if w.dim() == before {
            return w;
        }
    }
}

/// The skew-graph of a pair `(e, h)` in the normal form produced by
/// [`crate::liealg::build_pair`], or of any pair conjugate to one.
pub fn graph_from_pair(spec: &AlgebraSpec, e1: &Matrix, e2: &Matrix, h1: &Matrix, h2: &Matrix) -> Result<SkewGraph> {
    let n = spec.dimv;
    for m in [e1, e2, h1, h2] {
        if m.rows() != n || m.cols() != n {
            return Err(Error::DimensionMismatch { expected: n, found: m.rows().max(m.cols()) });
        }
    }
    check_relations(e1, e2, h1, h2)?;
    let spaces = joint_eigenspaces(h1, h2)?;
    let origin: Key = (Rational::zero(), Rational::zero());
    let mut lines: BTreeMap<Key, Vector> = BTreeMap::new();
    let mut plane: Option<Subspace> = None;
    for (key, space) in spaces {
        match space.dim() {
            1 => {
                lines.insert(key, space.basis_dense().remove(0));
            }
            2 if key == origin && spec.series == Series::D => plane = Some(space),
            d => {
                return Err(Error::NotNormalForm(format!(
                    "eigenspace ({}, {}) has dimension {d}",
                    crate::rational::format_rational(&key.0),
                    crate::rational::format_rational(&key.1)
                )))
            }
        }
    }

    let components: Vec<Component> = match plane {
        None => line_classes(&lines, e1, e2)
            .into_iter()
            .map(|p| p.into_component(e1, e2))
            .collect(),
        Some(plane) => split_plane(&lines, &plane, e1, e2, n)?,
    };
    let graph = SkewGraph::new(components);
    let report = validate(&graph);
    if !report.is_valid() {
        return Err(Error::InvalidGraph(report.to_string()));
    }
    Ok(graph.canonical())
}

fn split_plane(
    lines: &BTreeMap<Key, Vector>,
    plane: &Subspace,
    e1: &Matrix,
    e2: &Matrix,
    n: usize,
) -> Result<Vec<Component>> {
    let integral = |k: &Key| k.0.is_integer() && k.1.is_integer();
    let integral_lines: BTreeMap<Key, Vector> =
        lines.iter().filter(|(k, _)| integral(k)).map(|(k, v)| (*k, v.clone())).collect();
    let other_lines: BTreeMap<Key, Vector> =
        lines.iter().filter(|(k, _)| !integral(k)).map(|(k, v)| (*k, v.clone())).collect();

    let mut envelopes: Vec<Subspace> = Vec::new();
    for (key, v) in &integral_lines {
        if key.0 > Rational::zero() || key.1 > Rational::zero() {
            continue;
        }
        let w = envelope(v, &integral_lines, e1, e2, n);
        if !envelopes.contains(&w) {
            envelopes.push(w);
        }
    }

    let mut pieces = Vec::new();
    let mut covered = Subspace::zero(n);
    let mut total = 0;
    for w in &envelopes {
        let mut vectors: BTreeMap<Key, Vector> = integral_lines
            .iter()
            .filter(|(_, v)| w.contains_dense(v))
            .map(|(k, v)| (*k, v.clone()))
            .collect();
        let centre = w.intersect(plane);
        match centre.dim() {
            0 => {}
            1 => {
                vectors.insert((Rational::zero(), Rational::zero()), centre.basis_dense().remove(0));
            }
            _ => return Err(Error::NotNormalForm("an envelope contains the whole (0,0)-eigenspace".into())),
        }
        if vectors.len() != w.dim() {
            return Err(Error::NotNormalForm("an envelope is not spanned by eigenlines".into()));
        }
        total += w.dim();
        covered = covered.sum(w);
        pieces.push(Piece { vectors });
    }
    if covered.dim() != total {
        return Err(Error::NotNormalForm("envelopes are not independent".into()));
    }
    if integral_lines.values().any(|v| !covered.contains_dense(v)) {
        return Err(Error::NotNormalForm("an integral eigenline lies in no envelope".into()));
    }
    // Remaining directions of the plane become single-point components; they
    // must be killed by e.
    let rows: Vec<_> = (0..n)
        .flat_map(|r| [e1, e2].map(|e| sparse_from_dense(&e.as_slice()[r * n..(r + 1) * n])))
        .collect();
    let kernel = Subspace::span(n, &crate::linalg::nullspace(&rows, n)).intersect(plane);
    for v in kernel.basis_dense() {
        let grown = covered.sum(&Subspace::span_dense(n, std::slice::from_ref(&v)));
        if grown.dim() > covered.dim() {
            covered = grown;
            pieces.push(Piece {
                vectors: BTreeMap::from([((Rational::zero(), Rational::zero()), v)]),
            });
        }
    }
    if plane.intersect(&covered).dim() != plane.dim() {
        return Err(Error::NotNormalForm("the (0,0)-eigenspace is not split by the envelopes".into()));
    }
    let mut components: Vec<Component> = pieces.into_iter().map(|p| p.into_component(e1, e2)).collect();
    components.extend(line_classes(&other_lines, e1, e2).into_iter().map(|p| p.into_component(e1, e2)));
    Ok(components)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{build_pair, OrbitSign};
    use crate::rational::int;
    use crate::series::PairKind;
    use crate::skewgraph::enumerate_admissible;

    #[test]
    fn round_trip_small_catalogs() {
        for series in Series::ALL {
            for dimv in series.min_dimv()..=7 {
                if series.check_dimv(dimv).is_err() {
                    continue;
                }
                for g in enumerate_admissible(series, dimv, PairKind::Distinguished).unwrap() {
                    let r = build_pair(series, &g, None).unwrap();
                    let back = graph_from_pair(&r.spec, &r.e1, &r.e2, &r.h1, &r.h2).unwrap();
                    assert_eq!(back, g, "{series} {g}");
                }
            }
        }
    }

    #[test]
    fn shared_origin_chains() {
        let h: Vec<Node> = (-1..=1).map(|x| Node::int(x, 0)).collect();
        let v: Vec<Node> = (-1..=1).map(|y| Node::int(0, y)).collect();
        let g = SkewGraph::from_node_sets([h, v]).canonical();
        let r = build_pair(Series::D, &g, None).unwrap();
        let back = graph_from_pair(&r.spec, &r.e1, &r.e2, &r.h1, &r.h2).unwrap();
        assert_eq!(back.components.len(), 2);
        assert_eq!(back, g);
    }

    #[test]
    fn conjugated_pair_is_recognised() {
        let g = SkewGraph::connected([(0, 0), (1, 0), (0, 1), (1, 1), (2, 0)].map(|(x, y)| Node::int(x, y))).canonical();
        let r = build_pair(Series::A, &g, None).unwrap();
        let n = r.dimv();
        let mut p = Matrix::identity(n);
        let mut p_inv = Matrix::identity(n);
        p.set(0, n - 1, int(2));
        p_inv.set(0, n - 1, int(-2));
        let conj = |m: &Matrix| p.mul(m).mul(&p_inv);
        let back = graph_from_pair(&r.spec, &conj(&r.e1), &conj(&r.e2), &conj(&r.h1), &conj(&r.h2)).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn minus_orbit_has_the_same_graph() {
        let g = SkewGraph::connected([(0, 0), (1, 0), (0, 1), (1, 1)].map(|(x, y)| Node::int(x, y))).canonical();
        let r = build_pair(Series::D, &g, Some(OrbitSign::Minus)).unwrap();
        assert_eq!(graph_from_pair(&r.spec, &r.e1, &r.e2, &r.h1, &r.h2).unwrap(), g);
    }

    #[test]
    fn relations_are_checked() {
        let g = SkewGraph::connected([Node::frac(-1, 2, 0, 1), Node::frac(1, 2, 0, 1)]);
        let r = build_pair(Series::A, &g, None).unwrap();
        let err = graph_from_pair(&r.spec, &r.e1, &r.e1, &r.h1, &r.h2).unwrap_err();
        assert!(matches!(err, Error::RelationsFailed(_)));
    }
}
