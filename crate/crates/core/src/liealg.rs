//! Matrix realizations of skew-graphs as nilpotent pairs `(e₁, e₂)` with
//! characteristic `(h₁, h₂)` inside `sl(V)`, `so(V)` or `sp(V)`.
//!
//! The basis of `V` is indexed by [`BasisLabel`]s sorted by
//! `(component, x, y)`. `e₁` moves `v_{i,j}` to a multiple of `v_{i+1,j}` and
//! `e₂` to a multiple of `v_{i,j+1}`; `h₁`, `h₂` are diagonal with entries
//! `i` and `j`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, SparseVec};
use crate::matrix::{Matrix, MatrixFormat, MatrixRepr, MAX_PARSED_DIM};
use crate::rational::{sign_power, Rational};
use crate::series::{PairKind, Series};
use crate::skewgraph::{admissible_reason, classify_component, Node, SkewGraph, Symmetry};

/// The ambient Lie algebra: the series, `dim V`, and for B/C/D the Gram
/// matrix of the invariant form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraSpec {
    pub series: Series,
    pub dimv: usize,
    pub rank: usize,
    pub form: Option<Matrix>,
}

impl AlgebraSpec {
    pub fn new(series: Series, dimv: usize, form: Option<Matrix>) -> Result<Self> {
        series.check_dimv(dimv)?;
        match (&form, series.has_form()) {
            (Some(_), false) => {
                return Err(Error::Parse("series A takes no bilinear form".into()));
            }
            (None, true) => {
                return Err(Error::Parse(format!("series {series} needs a Gram matrix")));
            }
            (Some(g), true) if g.rows() != dimv || g.cols() != dimv => {
                return Err(Error::DimensionMismatch {
                    expected: dimv,
                    found: g.rows().max(g.cols()),
                });
            }
            _ => {}
        }
        Ok(Self {
            series,
            dimv,
            rank: series.rank(dimv),
            form,
        })
    }

    pub fn sl(dimv: usize) -> Result<Self> {
        Self::new(Series::A, dimv, None)
    }

    /// `so` or `sp` with the antidiagonal form `(v_k, v_{n-1-k}) = ±1`:
    /// symmetric for B/D, alternating (`+1` on the first half) for C.
    pub fn standard(series: Series, dimv: usize) -> Result<Self> {
        if series == Series::A {
            return Self::sl(dimv);
        }
        let mut g = Matrix::zeros(dimv, dimv);
        for k in 0..dimv {
            let v = if series == Series::C && k >= dimv / 2 {
                -Rational::one()
            } else {
                Rational::one()
            };
            g.set(k, dimv - 1 - k, v);
        }
        Self::new(series, dimv, Some(g))
    }

    pub fn algebra_dim(&self) -> usize {
        self.series.algebra_dim(self.dimv)
    }

    /// Linear equations (over the `n²` matrix entries, row-major) cutting the
    /// algebra out of `gl(V)`.
    pub(crate) fn membership_equations(&self) -> Vec<SparseVec> {
        let n = self.dimv;
        match &self.form {
            None => vec![(0..n).map(|k| (k * n + k, Rational::one())).collect()],
            Some(g) => {
                // (XᵀG + GX)_{rc} = Σ_k X_{kr} G_{kc} + Σ_k G_{rk} X_{kc}
                let mut rows = Vec::with_capacity(n * n);
                for r in 0..n {
                    for c in 0..n {
                        let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
                        for k in 0..n {
                            let gkc = g.get(k, c);
                            if !gkc.is_zero() {
                                *acc.entry(k * n + r).or_insert_with(Rational::zero) += gkc;
                            }
                            let grk = g.get(r, k);
                            if !grk.is_zero() {
                                *acc.entry(k * n + c).or_insert_with(Rational::zero) += grk;
                            }
                        }
                        let row: SparseVec = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
                        if !row.is_empty() {
                            rows.push(row);
                        }
                    }
                }
                rows
            }
        }
    }

    /// Whether `x` lies in the algebra.
    pub fn contains(&self, x: &Matrix) -> bool {
        if x.rows() != self.dimv || x.cols() != self.dimv {
            return false;
        }
        match &self.form {
            None => x.trace().is_zero(),
            Some(g) => x.transpose().mul(g).add(&g.mul(x)).is_zero(),
        }
    }
}

/// A basis of the algebra inside the full matrix algebra.
///
/// Series A uses the elementary matrices `E_ij` (`i ≠ j`) and
/// `E_ii − E_{i+1,i+1}`; series B/C/D use the reduced echelon basis of the
/// form-skew condition `XᵀG + GX = 0`.
pub fn algebra_basis(spec: &AlgebraSpec) -> Vec<Matrix> {
    let n = spec.dimv;
    match spec.series {
        Series::A => {
            let mut out = Vec::with_capacity(n * n - 1);
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        out.push(Matrix::unit(n, i, j));
                    }
                }
            }
            for i in 0..n.saturating_sub(1) {
                out.push(Matrix::unit(n, i, i).sub(&Matrix::unit(n, i + 1, i + 1)));
            }
            out
        }
        _ => linalg::nullspace(&spec.membership_equations(), n * n)
            .into_iter()
            .map(|v| vector_to_matrix(&v, n))
            .collect(),
    }
}

pub(crate) fn vector_to_matrix(v: &[(usize, Rational)], n: usize) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    for (idx, value) in v {
        m.set(idx / n, idx % n, *value);
    }
    m
}

pub(crate) fn matrix_to_vector(m: &Matrix) -> SparseVec {
    let n = m.cols();
    m.nonzeros().map(|(r, c, v)| (r * n + c, *v)).collect()
}

/// Which of the two `SO(V)`-orbit representatives to build for a connected
/// series-D graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrbitSign {
    Plus,
    Minus,
}

impl OrbitSign {
    pub fn suffix(self) -> char {
        match self {
            OrbitSign::Plus => '+',
            OrbitSign::Minus => '-',
        }
    }
}

impl fmt::Display for OrbitSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrbitSign::Plus => "plus",
            OrbitSign::Minus => "minus",
        })
    }
}

impl std::str::FromStr for OrbitSign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "plus" | "+" => Ok(OrbitSign::Plus),
            "minus" | "-" => Ok(OrbitSign::Minus),
            other => Err(Error::Parse(format!("unknown orbit sign {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BasisLabel {
    pub component: usize,
    pub node: Node,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairRealization {
    pub spec: AlgebraSpec,
    pub graph: SkewGraph,
    pub labels: Vec<BasisLabel>,
    pub e1: Matrix,
    pub e2: Matrix,
    pub h1: Matrix,
    pub h2: Matrix,
    pub orbit_sign: Option<OrbitSign>,
}

/// Whether a graph realizes two orbit representatives (connected, series D).
pub fn has_two_orbits(series: Series, graph: &SkewGraph) -> bool {
    series == Series::D && graph.is_connected()
}

/// Builds the model pair of an admissible graph.
pub fn build_pair(series: Series, graph: &SkewGraph, orbit_sign: Option<OrbitSign>) -> Result<PairRealization> {
    admissible_reason(series, graph, PairKind::Distinguished).map_err(|reason| Error::NotAdmissible { series, reason })?;
    let two_orbits = has_two_orbits(series, graph);
    if orbit_sign.is_some() && !two_orbits {
        return Err(Error::OrbitSignNotApplicable);
    }
    let graph = graph.canonical();
    let n = graph.node_count();

    let mut labels: Vec<BasisLabel> = graph
        .components
        .iter()
        .enumerate()
        .flat_map(|(c, comp)| comp.nodes.iter().map(move |node| BasisLabel { component: c, node: node.clone() }))
        .collect();
    labels.sort();
    let index: BTreeMap<&BasisLabel, usize> = labels.iter().enumerate().map(|(k, l)| (l, k)).collect();
    let position = |component: usize, node: Node| index.get(&BasisLabel { component, node }).copied();

    let symmetries: Vec<Symmetry> = graph
        .components
        .iter()
        .map(|c| classify_component(c).map(|s| s.symmetry))
        .collect::<Result<_>>()?;

    let mut e1 = Matrix::zeros(n, n);
    let mut e2 = Matrix::zeros(n, n);
    let mut gram = series.has_form().then(|| Matrix::zeros(n, n));
    for (src, label) in labels.iter().enumerate() {
        let (i, j) = (&label.node.x, &label.node.y);
        let sym = symmetries[label.component];
        if let Some(dst) = position(label.component, label.node.right()) {
            e1.set(dst, src, e1_sign(series, sym, i, j));
        }
        if let Some(dst) = position(label.component, label.node.up()) {
            e2.set(dst, src, e2_sign(series, sym, i, j));
        }
        if let Some(g) = gram.as_mut() {
            let dual = position(label.component, label.node.neg())
                .ok_or_else(|| Error::Internal(format!("node {} has no opposite node", label.node)))?;
            g.set(src, dual, gram_entry(series, sym, i, j));
        }
    }
    let h1 = Matrix::diagonal(&labels.iter().map(|l| l.node.x).collect::<Vec<_>>());
    let h2 = Matrix::diagonal(&labels.iter().map(|l| l.node.y).collect::<Vec<_>>());

    let mut realization = PairRealization {
        spec: AlgebraSpec::new(series, n, gram)?,
        graph,
        labels,
        e1,
        e2,
        h1,
        h2,
        orbit_sign: two_orbits.then(|| orbit_sign.unwrap_or(OrbitSign::Plus)),
    };
    if realization.orbit_sign == Some(OrbitSign::Minus) {
        realization = realization.flip_orbit()?;
    }
    Ok(realization)
}

fn e1_sign(series: Series, sym: Symmetry, i: &Rational, j: &Rational) -> Rational {
    let one = Rational::one();
    match series {
        Series::A => one,
        Series::B | Series::D => sign_power(&(i + j)),
        Series::C => match sym {
            Symmetry::SemiIntegralColsort => {
                if j > &Rational::zero() {
                    -one
                } else {
                    one
                }
            }
            _ => {
                if i > &Rational::zero() {
                    one
                } else if is_minus_half(i) {
                    sign_power(j)
                } else {
                    -one
                }
            }
        },
    }
}

fn e2_sign(series: Series, sym: Symmetry, i: &Rational, j: &Rational) -> Rational {
    let one = Rational::one();
    match series {
        Series::A => one,
        Series::B | Series::D => sign_power(&(i + j + one)),
        Series::C => match sym {
            Symmetry::SemiIntegralColsort => {
                if j > &Rational::zero() {
                    one
                } else if is_minus_half(j) {
                    sign_power(i)
                } else {
                    -one
                }
            }
            _ => {
                if i > &Rational::zero() {
                    -one
                } else {
                    one
                }
            }
        },
    }
}

fn is_minus_half(r: &Rational) -> bool {
    *r == Rational::new(-1, 2)
}

/// `(v_{i,j}, v_{-i,-j})` in the model form.
fn gram_entry(series: Series, sym: Symmetry, i: &Rational, j: &Rational) -> Rational {
    let positive = match (series, sym) {
        (Series::C, Symmetry::SemiIntegralColsort) => j > &Rational::zero(),
        (Series::C, _) => i > &Rational::zero(),
        _ => true,
    };
    if positive {
        Rational::one()
    } else {
        -Rational::one()
    }
}

impl PairRealization {
    pub fn dimv(&self) -> usize {
        self.spec.dimv
    }

    /// Conjugates by the isometry exchanging `v_{1/2,1/2}` and
    /// `v_{-1/2,-1/2}` (determinant −1), moving to the other `SO(V)`-orbit.
    /// Labels follow their vectors so that `h` stays `diag(i)`, `diag(j)`.
    fn flip_orbit(mut self) -> Result<Self> {
        let find = |node: Node| {
            self.labels
                .iter()
                .position(|l| l.node == node)
                .ok_or_else(|| Error::Internal(format!("node {node} missing from a non-integral graph")))
        };
        let p = find(Node::frac(1, 2, 1, 2))?;
        let q = find(Node::frac(-1, 2, -1, 2))?;
        let mut perm: Vec<usize> = (0..self.dimv()).collect();
        perm.swap(p, q);
        self.e1 = self.e1.permute(&perm);
        self.e2 = self.e2.permute(&perm);
        self.h1 = self.h1.permute(&perm);
        self.h2 = self.h2.permute(&perm);
        // The Gram matrix is invariant under this swap.
        self.labels.swap(p, q);
        self.orbit_sign = Some(OrbitSign::Minus);
        Ok(self)
    }

    pub fn matrices(&self) -> [(&'static str, &Matrix); 4] {
        [("e1", &self.e1), ("e2", &self.e2), ("h1", &self.h1), ("h2", &self.h2)]
    }

    pub fn to_json(&self, format: MatrixFormat) -> RealizationJson {
        RealizationJson {
            series: self.spec.series,
            dimv: self.spec.dimv,
            rank: self.spec.rank,
            form: self.spec.form.as_ref().map(|g| MatrixRepr::encode(g, format)),
            graph: self.graph.clone(),
            labels: self.labels.clone(),
            orbit_sign: self.orbit_sign,
            e1: MatrixRepr::encode(&self.e1, format),
            e2: MatrixRepr::encode(&self.e2, format),
            h1: MatrixRepr::encode(&self.h1, format),
            h2: MatrixRepr::encode(&self.h2, format),
        }
    }

    pub fn to_json_string(&self, format: MatrixFormat) -> String {
        serde_json::to_string_pretty(&self.to_json(format)).expect("realization serialization is infallible")
    }

    /// Parses and shape-checks a realization document. The relations are not
    /// checked here; use [`verify_relations`].
    pub fn from_json_str(text: &str) -> Result<Self> {
        let doc: RealizationJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::try_from(doc)
    }
}

/// Serialized form of a [`PairRealization`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RealizationJson {
    pub series: Series,
    pub dimv: usize,
    pub rank: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub form: Option<MatrixRepr>,
    pub graph: SkewGraph,
    pub labels: Vec<BasisLabel>,
    #[serde(default)]
    pub orbit_sign: Option<OrbitSign>,
    pub e1: MatrixRepr,
    pub e2: MatrixRepr,
    pub h1: MatrixRepr,
    pub h2: MatrixRepr,
}

impl TryFrom<RealizationJson> for PairRealization {
    type Error = Error;

    fn try_from(doc: RealizationJson) -> Result<Self> {
        if doc.dimv > MAX_PARSED_DIM {
            return Err(Error::ResourceLimit {
                what: "parsed realization",
                requested: doc.dimv,
                limit: MAX_PARSED_DIM,
            });
        }
        let decode = |m: &MatrixRepr| -> Result<Matrix> {
            let m = m.decode().map_err(|e| Error::Parse(e.to_string()))?;
            if m.rows() != doc.dimv || m.cols() != doc.dimv {
                return Err(Error::DimensionMismatch {
                    expected: doc.dimv,
                    found: if m.rows() != doc.dimv { m.rows() } else { m.cols() },
                });
            }
            Ok(m)
        };
        let form = doc.form.as_ref().map(decode).transpose()?;
        let spec = AlgebraSpec::new(doc.series, doc.dimv, form)?;
        if spec.rank != doc.rank {
            return Err(Error::Parse(format!(
                "rank {} does not match series {} with dimV {}",
                doc.rank, doc.series, doc.dimv
            )));
        }
        if doc.labels.len() != doc.dimv {
            return Err(Error::DimensionMismatch {
                expected: doc.dimv,
                found: doc.labels.len(),
            });
        }
        Ok(PairRealization {
            e1: decode(&doc.e1)?,
            e2: decode(&doc.e2)?,
            h1: decode(&doc.h1)?,
            h2: decode(&doc.h2)?,
            spec,
            graph: doc.graph,
            labels: doc.labels,
            orbit_sign: doc.orbit_sign,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationCheck {
    pub name: String,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct RelationReport {
    pub checks: Vec<RelationCheck>,
}

impl RelationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect()
    }

    fn push(&mut self, name: impl Into<String>, passed: bool) {
        self.checks.push(RelationCheck {
            name: name.into(),
            passed,
        });
    }
}

impl fmt::Display for RelationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{:<28} {}", c.name, if c.passed { "ok" } else { "FAILED" })?;
        }
        Ok(())
    }
}

/// Checks the commutation relations, the grading relations, membership of
/// all four matrices in the algebra, and nondegeneracy of the form.
pub fn verify_relations(r: &PairRealization) -> RelationReport {
    let mut report = RelationReport::default();
    let n = r.dimv();
    let shapes_ok = r.matrices().iter().all(|(_, m)| m.rows() == n && m.cols() == n);
    report.push("matrix sizes match dimV", shapes_ok);
    if !shapes_ok {
        return report;
    }
    let zero = Matrix::zeros(n, n);
    report.push("[e1,e2] = 0", r.e1.commutator(&r.e2).is_zero());
    report.push("[h1,h2] = 0", r.h1.commutator(&r.h2).is_zero());
    report.push("[h1,e1] = e1", r.h1.commutator(&r.e1) == r.e1);
    report.push("[h1,e2] = 0", r.h1.commutator(&r.e2) == zero);
    report.push("[h2,e1] = 0", r.h2.commutator(&r.e1) == zero);
    report.push("[h2,e2] = e2", r.h2.commutator(&r.e2) == r.e2);
    for (name, m) in r.matrices() {
        report.push(format!("{name} in {}", r.spec.series.algebra_name(n)), r.spec.contains(m));
    }
    if let Some(g) = &r.spec.form {
        let expected = match r.spec.series {
            Series::C => g.transpose() == g.scale(&-Rational::one()) && (0..n).all(|k| g.get(k, k).is_zero()),
            _ => g.transpose() == *g,
        };
        let kind = if r.spec.series == Series::C { "alternating" } else { "symmetric" };
        report.push(format!("form is {kind}"), expected);
        let rows: Vec<SparseVec> = (0..n)
            .map(|i| (0..n).filter_map(|j| {
                let v = g.get(i, j);
                (!v.is_zero()).then_some((j, *v))
            }).collect())
            .collect();
        report.push("form is nondegenerate", linalg::rank(&rows, n) == n);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn rect(w: i128, h: i128) -> SkewGraph {
        SkewGraph::connected((0..w).flat_map(|x| (0..h).map(move |y| Node::int(x, y)))).canonical()
    }

    #[test]
    fn basis_cardinalities() {
        assert_eq!(algebra_basis(&AlgebraSpec::sl(2).unwrap()).len(), 3);
        let sp4 = AlgebraSpec::standard(Series::C, 4).unwrap();
        assert_eq!(algebra_basis(&sp4).len(), 10);
        let so5 = AlgebraSpec::standard(Series::B, 5).unwrap();
        let basis = algebra_basis(&so5);
        assert_eq!(basis.len(), 10);
        assert!(basis.iter().all(|x| so5.contains(x)));
    }

    #[test]
    fn horizontal_domino_in_sl2() {
        let r = build_pair(Series::A, &rect(2, 1), None).unwrap();
        assert_eq!(r.e1, Matrix::unit(2, 1, 0));
        assert!(r.e2.is_zero());
        assert_eq!(r.h1.diagonal_entries(), vec![frac(-1, 2), frac(1, 2)]);
        assert!(r.h2.is_zero());
    }

    #[test]
    fn b_chain_is_regular() {
        let r = build_pair(Series::B, &rect(5, 1), None).unwrap();
        assert!(r.e2.is_zero());
        assert!(!r.e1.pow(4).is_zero());
        assert!(r.e1.pow(5).is_zero());
        assert!(verify_relations(&r).all_passed());
    }

    #[test]
    fn b_square_relations() {
        let r = build_pair(Series::B, &rect(3, 3), None).unwrap();
        assert!(verify_relations(&r).all_passed(), "{}", verify_relations(&r));
        assert!(r.e1.pow(3).is_zero() && r.e2.pow(3).is_zero());
        assert!(!r.e1.pow(2).is_zero());
    }

    #[test]
    fn wrong_degree_is_caught() {
        let mut r = build_pair(Series::A, &rect(2, 2), None).unwrap();
        r.e2 = r.e1.clone();
        assert!(verify_relations(&r).failures().contains(&"[h2,e2] = e2"));
    }

    #[test]
    fn dropping_signs_breaks_skewness() {
        let mut r = build_pair(Series::B, &rect(3, 3), None).unwrap();
        r.e1 = Matrix::from_row_major(9, 9, r.e1.as_slice().iter().map(crate::rational::abs).collect());
        r.e2 = Matrix::from_row_major(9, 9, r.e2.as_slice().iter().map(crate::rational::abs).collect());
        let failures = verify_relations(&r).failures().join(",");
        assert!(failures.contains("e1 in so9") || failures.contains("e2 in so9"), "{failures}");
    }

    #[test]
    fn d_orbit_signs() {
        let g = rect(4, 2);
        let plus = build_pair(Series::D, &g, None).unwrap();
        assert_eq!(plus.orbit_sign, Some(OrbitSign::Plus));
        let minus = build_pair(Series::D, &g, Some(OrbitSign::Minus)).unwrap();
        assert!(verify_relations(&minus).all_passed());
        assert_ne!(plus.e1, minus.e1);
        assert!(matches!(
            build_pair(Series::B, &rect(3, 3), Some(OrbitSign::Plus)),
            Err(Error::OrbitSignNotApplicable)
        ));
    }

    #[test]
    fn json_round_trip() {
        let r = build_pair(Series::C, &rect(2, 1), None).unwrap();
        for format in [MatrixFormat::Dense, MatrixFormat::Sparse] {
            let back = PairRealization::from_json_str(&r.to_json_string(format)).unwrap();
            assert_eq!(back, r);
        }
    }

    #[test]
    fn inadmissible_graph_is_rejected() {
        assert!(matches!(
            build_pair(Series::B, &rect(2, 2), None),
            Err(Error::NotAdmissible { .. }) | Err(Error::InvalidDimension { .. })
        ));
    }
}
