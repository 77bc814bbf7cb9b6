//! Explicit centralizer bases of principal pairs.
//!
//! Each case lists the powers `e₁ᵏe₂ˡ` spanning `z_g(e)` and, for the
//! exceptional series-D shapes, one extra operator `A` given by two matrix
//! entries in a basis with `(x, y) = (u, z) = 1`.

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use serde::Serialize;

use super::{CentralizerReport, Key};
use crate::error::{Error, Result};
use crate::liealg::{matrix_to_vector, BasisLabel, PairRealization};
use crate::matrix::Matrix;
use crate::rational::{int, Rational};
use crate::series::{PairKind, Series};
use crate::skewgraph::{
    admissible_reason, classify_component, lattice_cells, Component, NearShape, Node, ShapeClass, SkewGraph, Young,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClosedFormCase {
    /// Series A, unique source.
    YoungSw,
    /// Series A, unique sink only.
    YoungNe,
    /// Connected rectangle in series B, C or D.
    Rectangle,
    NearFirst,
    NearSecond,
    NearThird,
    /// Horizontal chain and vertical chain sharing the origin.
    Chains,
    /// Integral rectangle plus a single point.
    RectanglePlusPoint,
}

/// `A v_source = coefficient · v_target` for each entry, in the normalized basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtraOperator {
    pub entries: Vec<OperatorEntry>,
    /// Pairs `(a, b)` with `(a, b) = 1` in the normalized basis.
    pub dual_pairs: Vec<(BasisLabel, BasisLabel)>,
    pub bidegree: (i64, i64),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OperatorEntry {
    pub source: BasisLabel,
    pub target: BasisLabel,
    pub coefficient: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosedForm {
    pub case: ClosedFormCase,
    pub powers: Vec<(u32, u32)>,
    pub extra: Option<ExtraOperator>,
    pub predicted_rank: usize,
}

impl ClosedForm {
    /// Predicted bi-exponents, sorted.
    pub fn biexponents(&self) -> Vec<(i64, i64)> {
        let mut out: Vec<(i64, i64)> = self.powers.iter().map(|&(k, l)| (k as i64, l as i64)).collect();
        if let Some(a) = &self.extra {
            out.push(a.bidegree);
        }
        out.sort();
        out
    }

    /// The predicted basis as matrices in the realization's labeled basis.
    pub fn matrices(&self, r: &PairRealization) -> Result<Vec<Matrix>> {
        let mut out: Vec<Matrix> = self
            .powers
            .iter()
            .map(|&(k, l)| r.e1.pow(k).mul(&r.e2.pow(l)))
            .collect();
        if let Some(a) = &self.extra {
            out.push(extra_matrix(a, r)?);
        }
        Ok(out)
    }
}

fn label_index(r: &PairRealization, label: &BasisLabel) -> Result<usize> {
    r.labels
        .iter()
        .position(|l| l == label)
        .ok_or_else(|| Error::Internal(format!("label {}:{} missing from realization", label.component, label.node)))
}

fn extra_matrix(a: &ExtraOperator, r: &PairRealization) -> Result<Matrix> {
    let n = r.dimv();
    let form = r
        .spec
        .form
        .as_ref()
        .ok_or_else(|| Error::Internal("extra operator needs a bilinear form".into()))?;
    // Scale of each model basis vector relative to the normalized one.
    let mut scale = vec![Rational::one(); n];
    for (first, second) in &a.dual_pairs {
        let (i, j) = (label_index(r, first)?, label_index(r, second)?);
        let g = *form.get(i, j);
        if g.is_zero() {
            return Err(Error::Internal(format!("labels {i} and {j} are not dual")));
        }
        if i == j {
            if !g.is_one() {
                return Err(Error::Internal("self-dual vector does not have norm 1".into()));
            }
        } else {
            scale[j] = Rational::one() / g;
        }
    }
    let mut m = Matrix::zeros(n, n);
    for e in &a.entries {
        let (s, t) = (label_index(r, &e.source)?, label_index(r, &e.target)?);
        m.set(t, s, int(e.coefficient as i128) * scale[t] / scale[s]);
    }
    Ok(m)
}

fn label(component: usize, corner: &Node, cell: (i64, i64)) -> BasisLabel {
    BasisLabel {
        component,
        node: corner.offset(cell.0 as i128, cell.1 as i128),
    }
}

fn operator(x: BasisLabel, y: BasisLabel, u: BasisLabel, z: BasisLabel, bidegree: (i64, i64)) -> ExtraOperator {
    ExtraOperator {
        entries: vec![
            OperatorEntry { source: x.clone(), target: z.clone(), coefficient: 1 },
            OperatorEntry { source: u.clone(), target: y.clone(), coefficient: -1 },
        ],
        dual_pairs: vec![(x, y), (u, z)],
        bidegree,
    }
}

fn grid_powers(width: usize, height: usize, keep: impl Fn(u32, u32) -> bool) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for k in 0..width as u32 {
        for l in 0..height as u32 {
            if keep(k, l) {
                out.push((k, l));
            }
        }
    }
    out
}

fn odd(k: u32, l: u32) -> bool {
    (k + l) % 2 == 1
}

/// The explicit centralizer description of a principal-class graph.
pub fn closed_form_centralizer(series: Series, graph: &SkewGraph) -> Result<ClosedForm> {
    admissible_reason(series, graph, PairKind::Principal).map_err(Error::NoClosedForm)?;
    let graph = graph.canonical();
    let classes: Vec<ShapeClass> = graph.components.iter().map(classify_component).collect::<Result<_>>()?;
    let cells_of = |c: &Component| {
        lattice_cells(c).ok_or_else(|| Error::Internal("component is not on one lattice".into()))
    };
    let rank = series.rank(graph.node_count());

    if series == Series::A {
        let (_, cells) = cells_of(&graph.components[0])?;
        let set: BTreeSet<(i64, i64)> = cells.iter().copied().collect();
        let (case, powers) = match classes[0].young {
            Young::Sw | Young::Both => {
                let source = cells
                    .iter()
                    .copied()
                    .find(|&(x, y)| !set.contains(&(x - 1, y)) && !set.contains(&(x, y - 1)))
                    .ok_or_else(|| Error::Internal("no source".into()))?;
                let powers = offsets(&cells, |&(x, y)| (x - source.0, y - source.1));
                (ClosedFormCase::YoungSw, powers)
            }
            Young::Ne => {
                let sink = cells
                    .iter()
                    .copied()
                    .find(|&(x, y)| !set.contains(&(x + 1, y)) && !set.contains(&(x, y + 1)))
                    .ok_or_else(|| Error::Internal("no sink".into()))?;
                let powers = offsets(&cells, |&(x, y)| (sink.0 - x, sink.1 - y));
                (ClosedFormCase::YoungNe, powers)
            }
            Young::Neither => return Err(Error::NoClosedForm("graph is not a Young graph".into())),
        };
        return Ok(ClosedForm { case, powers, extra: None, predicted_rank: rank });
    }

    if graph.is_connected() {
        let class = &classes[0];
        let (w, h) = class.bounding_box;
        if class.is_rectangle() {
            return Ok(ClosedForm {
                case: ClosedFormCase::Rectangle,
                powers: grid_powers(w, h, odd),
                extra: None,
                predicted_rank: w * h / 2,
            });
        }
        let (corner, _) = cells_of(&graph.components[0])?;
        let (wi, hi) = (w as i64, h as i64);
        let (n, m) = (w / 2, h / 2);
        let at = |cell| label(0, &corner, cell);
        let near = class
            .near_rectangular
            .ok_or_else(|| Error::NoClosedForm("connected graph is neither rectangular nor near-rectangular".into()))?;
        let form = match near {
            NearShape::First => ClosedForm {
                case: ClosedFormCase::NearFirst,
                powers: grid_powers(w - 2, h, odd),
                extra: Some(operator(at((0, hi - 1)), at((wi - 1, 0)), at((1, 0)), at((wi - 2, hi - 1)), (wi - 2, 0))),
                predicted_rank: 2 * m * (n - 1) + 1,
            },
            NearShape::Second => ClosedForm {
                case: ClosedFormCase::NearSecond,
                powers: grid_powers(w, h - 2, odd),
                extra: Some(operator(at((wi - 1, 0)), at((0, hi - 1)), at((0, 1)), at((wi - 1, hi - 2)), (0, hi - 2))),
                predicted_rank: 2 * n * (m - 1) + 1,
            },
            NearShape::Third => {
                let excluded = (2 * m + 2 * n - 3) as u32;
                ClosedForm {
                    case: ClosedFormCase::NearThird,
                    powers: grid_powers(w, h, |k, l| odd(k, l) && k + l != excluded),
                    extra: Some(operator(
                        at((0, 1)),
                        at((wi - 1, hi - 2)),
                        at((1, 0)),
                        at((wi - 2, hi - 1)),
                        (wi - 2, hi - 2),
                    )),
                    predicted_rank: 2 * m * n - 1,
                }
            }
        };
        return Ok(form);
    }

    // Two integral components sharing the origin.
    let origin = |component| BasisLabel { component, node: Node::origin() };
    if let Some(point) = graph.components.iter().position(|c| c.len() == 1) {
        let big = 1 - point;
        let (w, h) = classes[big].bounding_box;
        let (n, m) = ((w / 2) as i128, (h / 2) as i128);
        let at = |x, y| BasisLabel { component: big, node: Node::int(x, y) };
        return Ok(ClosedForm {
            case: ClosedFormCase::RectanglePlusPoint,
            powers: grid_powers(w, h, odd),
            extra: Some(ExtraOperator {
                entries: vec![
                    OperatorEntry { source: at(-n, -m), target: origin(point), coefficient: 1 },
                    OperatorEntry { source: origin(point), target: at(n, m), coefficient: -1 },
                ],
                dual_pairs: vec![(at(-n, -m), at(n, m)), (origin(point), origin(point))],
                bidegree: (n as i64, m as i64),
            }),
            predicted_rank: (2 * m * n + m + n + 1) as usize,
        });
    }
    let horizontal = (0..2)
        .find(|&i| classes[i].is_horizontal_chain())
        .ok_or_else(|| Error::NoClosedForm("no horizontal chain".into()))?;
    let vertical = 1 - horizontal;
    let n = (graph.components[horizontal].len() / 2) as i128;
    let m = (graph.components[vertical].len() / 2) as i128;
    let h_at = |x| BasisLabel { component: horizontal, node: Node::int(x, 0) };
    let v_at = |y| BasisLabel { component: vertical, node: Node::int(0, y) };
    let mut powers: Vec<(u32, u32)> = (1..2 * n as u32).step_by(2).map(|k| (k, 0)).collect();
    powers.extend((1..2 * m as u32).step_by(2).map(|l| (0, l)));
    Ok(ClosedForm {
        case: ClosedFormCase::Chains,
        powers,
        extra: Some(operator(h_at(-n), h_at(n), v_at(-m), v_at(m), (n as i64, m as i64))),
        predicted_rank: (n + m + 1) as usize,
    })
}

fn offsets(cells: &[(i64, i64)], f: impl Fn(&(i64, i64)) -> (i64, i64)) -> Vec<(u32, u32)> {
    let mut out: Vec<(u32, u32)> = cells
        .iter()
        .map(f)
        .filter(|&(k, l)| k >= 0 && l >= 0 && (k, l) != (0, 0))
        .map(|(k, l)| (k as u32, l as u32))
        .collect();
    out.sort_unstable();
    out
}

/// Outcome of comparing a closed form against a computed centralizer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClosedFormCheck {
    pub rank_match: bool,
    pub dimension_match: bool,
    pub degree_multiset_match: bool,
    pub elements_in_centralizer: bool,
    pub span_equal: bool,
}

impl ClosedFormCheck {
    pub fn passed(&self) -> bool {
        self.rank_match
            && self.dimension_match
            && self.degree_multiset_match
            && self.elements_in_centralizer
            && self.span_equal
    }
}

/// Compares `form` with `report`, the analysis of `r`.
pub fn check_closed_form(form: &ClosedForm, r: &PairRealization, report: &CentralizerReport) -> Result<ClosedFormCheck> {
    let predicted = form.matrices(r)?;
    let space = report.space();
    let vectors: Vec<_> = predicted.iter().map(matrix_to_vector).collect();
    let elements_in_centralizer = vectors.iter().all(|v| !v.is_empty() && space.contains(v));
    let spanned = crate::linalg::Subspace::span(space.ambient(), &vectors);
    let computed: Vec<Key> = report.biexponents.clone();
    let expected: Vec<Key> = form
        .biexponents()
        .into_iter()
        .map(|(p, q)| (int(p as i128), int(q as i128)))
        .collect();
    Ok(ClosedFormCheck {
        rank_match: form.predicted_rank == report.rank,
        dimension_match: predicted.len() == report.dimension,
        degree_multiset_match: computed == expected,
        elements_in_centralizer,
        span_equal: elements_in_centralizer && spanned.dim() == space.dim(),
    })
}
