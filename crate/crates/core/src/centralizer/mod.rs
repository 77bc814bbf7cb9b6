//! Centralizers, bi-gradings and the distinguished / principal / rectangular
//! predicates.
//!
//! Elements of `gl(V)` are handled as vectors of their `n²` entries in
//! row-major order. A centralizer inside the algebra is the nullspace of the
//! algebra's membership equations stacked with the equations `[m, x] = 0`;
//! its basis is the reduced echelon basis in entry coordinates, which makes
//! it independent of any choice of algebra basis.

#![allow(clippy::needless_range_loop)]

mod closed_form;
mod recover;
pub mod spectrum;

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::liealg::{vector_to_matrix, verify_relations, AlgebraSpec, PairRealization};
use crate::linalg::{self, SparseVec, Subspace};
use crate::matrix::{Matrix, MatrixFormat, MatrixRepr};
use crate::rational::{PqString, Rational};

pub use closed_form::{
    check_closed_form, closed_form_centralizer, ClosedForm, ClosedFormCase, ClosedFormCheck,
    ExtraOperator,
};
pub use recover::graph_from_pair;
pub use spectrum::Key;

/// Rows of the linear map `x ↦ [m, x] = m x − x m` on entry coordinates.
pub(crate) fn commutator_rows(m: &Matrix) -> Vec<SparseVec> {
    let n = m.rows();
    let mut by_row: Vec<Vec<(usize, &Rational)>> = vec![Vec::new(); n];
    let mut by_col: Vec<Vec<(usize, &Rational)>> = vec![Vec::new(); n];
    for (r, c, v) in m.nonzeros() {
        by_row[r].push((c, v));
        by_col[c].push((r, v));
    }
    let mut rows = Vec::new();
    for r in 0..n {
        for c in 0..n {
            let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
            for &(k, v) in &by_row[r] {
                *acc.entry(k * n + c).or_insert_with(Rational::zero) += v;
            }
            for &(k, v) in &by_col[c] {
                *acc.entry(r * n + k).or_insert_with(Rational::zero) -= v;
            }
            let row: SparseVec = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
            if !row.is_empty() {
                rows.push(row);
            }
        }
    }
    rows
}

fn check_sizes(spec: &AlgebraSpec, elements: &[&Matrix]) -> Result<()> {
    for m in elements {
        if m.rows() != spec.dimv || m.cols() != spec.dimv {
            return Err(Error::DimensionMismatch {
                expected: spec.dimv,
                found: if m.rows() != spec.dimv { m.rows() } else { m.cols() },
            });
        }
    }
    Ok(())
}

/// `z_g(M)` as a subspace of entry coordinates.
pub fn centralizer_space(spec: &AlgebraSpec, elements: &[&Matrix]) -> Result<Subspace> {
    check_sizes(spec, elements)?;
    let n = spec.dimv;
    let mut rows = spec.membership_equations();
    for m in elements {
        rows.extend(commutator_rows(m));
    }
    Ok(Subspace::span(n * n, &linalg::nullspace(&rows, n * n)))
}

/// Basis of `{x ∈ g : [x, m] = 0 for all m}` in reduced echelon form.
pub fn centralizer(spec: &AlgebraSpec, elements: &[Matrix]) -> Result<Vec<Matrix>> {
    let refs: Vec<&Matrix> = elements.iter().collect();
    let space = centralizer_space(spec, &refs)?;
    Ok(space.basis().iter().map(|v| vector_to_matrix(v, spec.dimv)).collect())
}

/// One joint ad-eigenspace of a graded subspace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedPiece {
    pub key: Key,
    pub basis: Vec<SparseVec>,
}

/// Dimensions of the joint `(ad h₁, ad h₂)`-eigenspaces of a subspace.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BiGrading {
    pub table: BTreeMap<Key, usize>,
    pub total: usize,
}

impl BiGrading {
    fn from_pieces(pieces: &[GradedPiece]) -> Self {
        let table: BTreeMap<Key, usize> = pieces.iter().map(|p| (p.key, p.basis.len())).collect();
        let total = table.values().sum();
        Self { table, total }
    }

    pub fn get(&self, p: &Rational, q: &Rational) -> usize {
        self.table.get(&(*p, *q)).copied().unwrap_or(0)
    }

    /// Keys repeated by multiplicity, in sorted order.
    pub fn multiset(&self) -> Vec<Key> {
        self.table
            .iter()
            .flat_map(|(k, &d)| std::iter::repeat_n(*k, d))
            .collect()
    }

    pub fn is_positive_integral(&self) -> bool {
        self.table.keys().all(|(p, q)| {
            p.is_integer() && q.is_integer() && !p.is_negative() && !q.is_negative() && !(p.is_zero() && q.is_zero())
        })
    }
}

#[derive(Serialize)]
struct GradingEntry {
    p: PqString,
    q: PqString,
    dim: usize,
}

impl Serialize for BiGrading {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let entries: Vec<GradingEntry> = self
            .table
            .iter()
            .map(|((p, q), &dim)| GradingEntry {
                p: PqString(*p),
                q: PqString(*q),
                dim,
            })
            .collect();
        entries.serialize(serializer)
    }
}

/// Splits an ad-stable subspace into joint eigenspaces of `(ad h₁, ad h₂)`.
pub(crate) fn graded_pieces(h1: &Matrix, h2: &Matrix, space: &Subspace) -> Result<Vec<GradedPiece>> {
    let n = h1.rows();
    let dim = space.dim();
    let mut pieces: Vec<GradedPiece> = Vec::new();
    if h1.is_diagonal() && h2.is_diagonal() {
        let d1 = h1.diagonal_entries();
        let d2 = h2.diagonal_entries();
        let mut projections: BTreeMap<Key, Vec<SparseVec>> = BTreeMap::new();
        for v in space.basis() {
            let mut parts: BTreeMap<Key, SparseVec> = BTreeMap::new();
            for (idx, value) in v {
                let (r, c) = (idx / n, idx % n);
                let key = (d1[r] - d1[c], d2[r] - d2[c]);
                parts.entry(key).or_default().push((*idx, *value));
            }
            for (key, part) in parts {
                if !space.contains(&part) {
                    return Err(Error::NotAdStable);
                }
                projections.entry(key).or_default().push(part);
            }
        }
        for (key, vectors) in projections {
            let piece = Subspace::span(n * n, &vectors);
            pieces.push(GradedPiece {
                key,
                basis: piece.basis().to_vec(),
            });
        }
    } else {
        let spectrum = spectrum::joint_eigenspaces(h1, h2)?;
        let keys: Vec<&Key> = spectrum.keys().collect();
        let mut candidates: Vec<Key> = Vec::new();
        for a in &keys {
            for b in &keys {
                candidates.push((a.0 - b.0, a.1 - b.1));
            }
        }
        candidates.sort();
        candidates.dedup();
        // Matrices of ad h₁, ad h₂ in the echelon basis of the subspace.
        let basis = space.basis();
        let mut ad: [Vec<Vec<Rational>>; 2] = [Vec::new(), Vec::new()];
        for (slot, h) in [h1, h2].into_iter().enumerate() {
            for v in basis {
                let x = vector_to_matrix(v, n);
                let image = crate::liealg::matrix_to_vector(&h.commutator(&x));
                ad[slot].push(space.coordinates(&image).ok_or(Error::NotAdStable)?);
            }
        }
        for (p, q) in candidates {
            let mut rows: Vec<SparseVec> = Vec::new();
            for (slot, lambda) in [(0, &p), (1, &q)] {
                for j in 0..dim {
                    let mut row: SparseVec = Vec::new();
                    for k in 0..dim {
                        let mut a = ad[slot][k][j];
                        if k == j {
                            a -= lambda;
                        }
                        if !a.is_zero() {
                            row.push((k, a));
                        }
                    }
                    rows.push(row);
                }
            }
            let kernel = linalg::nullspace(&rows, dim);
            if kernel.is_empty() {
                continue;
            }
            let vectors: Vec<SparseVec> = kernel
                .iter()
                .map(|coeffs| {
                    let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
                    for (k, c) in coeffs {
                        for (idx, value) in &basis[*k] {
                            *acc.entry(*idx).or_insert_with(Rational::zero) += c * value;
                        }
                    }
                    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
                })
                .collect();
            let piece = Subspace::span(n * n, &vectors);
            pieces.push(GradedPiece {
                key: (p, q),
                basis: piece.basis().to_vec(),
            });
        }
    }
    let total: usize = pieces.iter().map(|p| p.basis.len()).sum();
    if total != dim {
        return Err(Error::NotAdStable);
    }
    Ok(pieces)
}

/// Bi-grading of the span of `basis` under `(ad h₁, ad h₂)`.
pub fn bigrade(spec: &AlgebraSpec, h1: &Matrix, h2: &Matrix, basis: &[Matrix]) -> Result<BiGrading> {
    let mut all: Vec<&Matrix> = vec![h1, h2];
    all.extend(basis.iter());
    check_sizes(spec, &all)?;
    let vectors: Vec<SparseVec> = basis.iter().map(crate::liealg::matrix_to_vector).collect();
    let space = Subspace::span(spec.dimv * spec.dimv, &vectors);
    Ok(BiGrading::from_pieces(&graded_pieces(h1, h2, &space)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct ReportFlags {
    pub relations_ok: bool,
    pub cartan_h: bool,
    pub trivial_intersection: bool,
    pub distinguished: bool,
    pub principal: bool,
    pub rectangular: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralizerReport {
    pub rank: usize,
    /// `dim z_g(e)`.
    pub dimension: usize,
    /// Echelon basis of `z_g(e)`.
    pub basis: Vec<Matrix>,
    pub grading: BiGrading,
    pub biexponents: Vec<Key>,
    /// `dim z_g(h)`.
    pub h_centralizer_dimension: usize,
    pub flags: ReportFlags,
    pub nonpositive_witness: Option<(Matrix, Key)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessJson {
    pub p: PqString,
    pub q: PqString,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix: Option<MatrixRepr>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportJson {
    pub dimension: usize,
    pub rank: usize,
    pub h_centralizer_dimension: usize,
    pub grading: BiGrading,
    pub biexponents: Vec<(PqString, PqString)>,
    pub flags: ReportFlags,
    pub nonpositive_witness: Option<WitnessJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<MatrixRepr>>,
}

impl CentralizerReport {
    pub fn to_json(&self, matrices: Option<MatrixFormat>) -> ReportJson {
        ReportJson {
            dimension: self.dimension,
            rank: self.rank,
            h_centralizer_dimension: self.h_centralizer_dimension,
            grading: self.grading.clone(),
            biexponents: self
                .biexponents
                .iter()
                .map(|(p, q)| (PqString(*p), PqString(*q)))
                .collect(),
            flags: self.flags,
            nonpositive_witness: self.nonpositive_witness.as_ref().map(|(m, (p, q))| WitnessJson {
                p: PqString(*p),
                q: PqString(*q),
                matrix: matrices.map(|f| MatrixRepr::encode(m, f)),
            }),
            basis: matrices.map(|f| self.basis.iter().map(|m| MatrixRepr::encode(m, f)).collect()),
        }
    }

    /// The centralizer as a subspace of entry coordinates.
    pub fn space(&self) -> Subspace {
        let n = self.basis.first().map_or(0, Matrix::rows);
        let vectors: Vec<SparseVec> = self.basis.iter().map(crate::liealg::matrix_to_vector).collect();
        Subspace::span(n * n, &vectors)
    }
}

fn require_relations(r: &PairRealization) -> Result<()> {
    let report = verify_relations(r);
    if report.all_passed() {
        Ok(())
    } else {
        Err(Error::RelationsFailed(report.failures().join(", ")))
    }
}

/// Computes `z_g(e)`, `z_g(h)`, the bi-grading and all predicate flags.
pub fn analyze(r: &PairRealization) -> Result<CentralizerReport> {
    require_relations(r)?;
    let spec = &r.spec;
    let z_e = centralizer_space(spec, &[&r.e1, &r.e2])?;
    let z_h = centralizer_space(spec, &[&r.h1, &r.h2])?;
    let cartan_h = z_h.dim() == spec.rank;
    let trivial_intersection = z_h.intersect(&z_e).dim() == 0;
    let pieces = graded_pieces(&r.h1, &r.h2, &z_e)?;
    let grading = BiGrading::from_pieces(&pieces);
    let nonpositive_witness = pieces
        .iter()
        .find(|p| p.key.0.is_negative() || p.key.1.is_negative())
        .map(|p| (vector_to_matrix(&p.basis[0], spec.dimv), p.key));
    let rectangular = rectangularity(r)?;
    let n = spec.dimv;
    Ok(CentralizerReport {
        rank: spec.rank,
        dimension: z_e.dim(),
        basis: z_e.basis().iter().map(|v| vector_to_matrix(v, n)).collect(),
        biexponents: grading.multiset(),
        grading,
        h_centralizer_dimension: z_h.dim(),
        flags: ReportFlags {
            relations_ok: true,
            cartan_h,
            trivial_intersection,
            distinguished: cartan_h && trivial_intersection,
            principal: z_e.dim() == spec.rank,
            rectangular,
        },
        nonpositive_witness,
    })
}

/// Whether `[e, x] = h` has a solution `x ∈ g`.
fn in_image_of_ad(spec: &AlgebraSpec, e: &Matrix, h: &Matrix) -> bool {
    let n = spec.dimv;
    let membership = spec.membership_equations();
    let mut rhs = vec![Rational::zero(); membership.len()];
    let mut rows = membership;
    // Row (r, c) of [e, x] must equal h[r][c]; include all-zero rows so that a
    // nonzero right-hand side on them is detected.
    let mut by_row: Vec<Vec<(usize, &Rational)>> = vec![Vec::new(); n];
    let mut by_col: Vec<Vec<(usize, &Rational)>> = vec![Vec::new(); n];
    for (r, c, v) in e.nonzeros() {
        by_row[r].push((c, v));
        by_col[c].push((r, v));
    }
    for r in 0..n {
        for c in 0..n {
            let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
            for &(k, v) in &by_row[r] {
                *acc.entry(k * n + c).or_insert_with(Rational::zero) += v;
            }
            for &(k, v) in &by_col[c] {
                *acc.entry(r * n + k).or_insert_with(Rational::zero) -= v;
            }
            let row: SparseVec = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
            let target = *h.get(r, c);
            if row.is_empty() && target.is_zero() {
                continue;
            }
            rows.push(row);
            rhs.push(target);
        }
    }
    linalg::solve(&rows, &rhs, n * n).is_some()
}

fn rectangularity(r: &PairRealization) -> Result<bool> {
    let first = in_image_of_ad(&r.spec, &r.e1, &r.h1);
    let second = in_image_of_ad(&r.spec, &r.e2, &r.h2);
    if first != second {
        return Err(Error::Internal(format!(
            "h1 ∈ Im(ad e1) is {first} but h2 ∈ Im(ad e2) is {second}"
        )));
    }
    Ok(first)
}

/// Whether `h₁ ∈ [e₁, g]`; the analogous test for `(e₂, h₂)` is run as well
/// and any disagreement is an error.
pub fn is_rectangular_pair(r: &PairRealization) -> Result<bool> {
    require_relations(r)?;
    rectangularity(r)
}
