//! Exact sparse linear algebra over the rationals.
//!
//! Systems are reduced with fraction-free Gauss–Jordan elimination: each row
//! is scaled to a primitive integer vector, combined with integer multipliers,
//! and divided by its content after every step. Pivots are the first nonzero
//! column of each row; rows are consumed in input order. Elimination runs in
//! `i128` and restarts in arbitrary precision if any intermediate overflows.
//! The final reduced row echelon form is unique, so results do not depend on
//! which path produced them.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::rational::Rational;

/// Sparse vector: `(index, value)` pairs with strictly increasing indices and
/// no stored zeros.
pub type SparseVec = Vec<(usize, Rational)>;

pub fn sparse_from_dense(values: &[Rational]) -> SparseVec {
    values
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(i, v)| (i, *v))
        .collect()
}

pub fn dense_from_sparse(values: &[(usize, Rational)], len: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); len];
    for (i, v) in values {
        out[*i] = *v;
    }
    out
}

/// Reduced row echelon form of a row set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub ncols: usize,
    /// Nonzero rows; row `k` has a 1 in column `pivots[k]` and zeros in every
    /// other pivot column.
    pub rows: Vec<SparseVec>,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Basis of `{x : A x = 0}` in reduced echelon form.
    pub fn nullspace(&self) -> Vec<SparseVec> {
        let mut pivot_of_col = vec![None; self.ncols];
        for (k, &p) in self.pivots.iter().enumerate() {
            pivot_of_col[p] = Some(k);
        }
        let mut basis = Vec::new();
        for free in (0..self.ncols).filter(|c| pivot_of_col[*c].is_none()) {
            let mut v: SparseVec = Vec::new();
            for (k, row) in self.rows.iter().enumerate() {
                if let Some(val) = lookup(row, free) {
                    v.push((self.pivots[k], -*val));
                }
            }
            v.push((free, Rational::one()));
            v.sort_by_key(|(i, _)| *i);
            basis.push(v);
        }
        rref(&basis, self.ncols).rows
    }

    /// Reduces `v` against the rows; the result is zero iff `v` lies in the row space.
    pub fn reduce(&self, v: &[(usize, Rational)]) -> SparseVec {
        let mut out: SparseVec = v.to_vec();
        for (k, row) in self.rows.iter().enumerate() {
            if let Some(c) = lookup(&out, self.pivots[k]).cloned() {
                out = axpy_rational(&out, &(-c), row);
            }
        }
        out
    }
}

fn lookup<T>(row: &[(usize, T)], col: usize) -> Option<&T> {
    row.binary_search_by_key(&col, |(c, _)| *c)
        .ok()
        .map(|idx| &row[idx].1)
}

/// `x + a·y` on sparse rational vectors.
fn axpy_rational(x: &[(usize, Rational)], a: &Rational, y: &[(usize, Rational)]) -> SparseVec {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let ord = match (x.get(i), y.get(j)) {
            (Some(a), Some(b)) => a.0.cmp(&b.0),
            (Some(_), None) => Ordering::Less,
            (None, _) => Ordering::Greater,
        };
        match ord {
            Ordering::Less => {
                out.push(x[i]);
                i += 1;
            }
            Ordering::Greater => {
                out.push((y[j].0, a * y[j].1));
                j += 1;
            }
            Ordering::Equal => {
                let v = x[i].1 + a * y[j].1;
                if !v.is_zero() {
                    out.push((x[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Integer arithmetic used by the elimination core. `None` signals overflow.
trait ExactInt: Clone + PartialEq + Sized {
    fn from_i128(v: i128) -> Self;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn neg(&self) -> Option<Self>;
    fn mul(&self, other: &Self) -> Option<Self>;
    fn sub(&self, other: &Self) -> Option<Self>;
    fn gcd(&self, other: &Self) -> Self;
    fn div_exact(&self, other: &Self) -> Self;
    fn is_one(&self) -> bool;
    fn to_big(&self) -> BigInt;
}

impl ExactInt for i128 {
    fn from_i128(v: i128) -> Self {
        v
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        self.checked_mul(*other)
    }
    fn sub(&self, other: &Self) -> Option<Self> {
        self.checked_sub(*other)
    }
    fn gcd(&self, other: &Self) -> Self {
        // |i128::MIN| is not representable; callers never feed it because
        // every produced value came through checked arithmetic.
        Integer::gcd(self, other)
    }
    fn div_exact(&self, other: &Self) -> Self {
        self / other
    }
    fn is_one(&self) -> bool {
        *self == 1
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl ExactInt for BigInt {
    fn from_i128(v: i128) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn sub(&self, other: &Self) -> Option<Self> {
        Some(self - other)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, other: &Self) -> Self {
        self / other
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

type IntRow<T> = Vec<(usize, T)>;

/// Divides a row by the gcd of its entries and makes the leading entry positive.
fn make_primitive<T: ExactInt>(row: &mut IntRow<T>) -> Option<()> {
    let Some(first) = row.first() else {
        return Some(());
    };
    let mut g = first.1.gcd(&first.1);
    for (_, v) in row.iter().skip(1) {
        if g.is_one() {
            break;
        }
        g = g.gcd(v);
    }
    if row[0].1.is_negative() {
        g = g.neg()?;
    }
    if !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v = v.div_exact(&g);
        }
    }
    Some(())
}

/// `a·x − b·y`, made primitive.
fn combine<T: ExactInt>(a: &T, x: &[(usize, T)], b: &T, y: &[(usize, T)]) -> Option<IntRow<T>> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let ord = match (x.get(i), y.get(j)) {
            (Some(p), Some(q)) => p.0.cmp(&q.0),
            (Some(_), None) => Ordering::Less,
            (None, _) => Ordering::Greater,
        };
        match ord {
            Ordering::Less => {
                out.push((x[i].0, a.mul(&x[i].1)?));
                i += 1;
            }
            Ordering::Greater => {
                out.push((y[j].0, b.mul(&y[j].1)?.neg()?));
                j += 1;
            }
            Ordering::Equal => {
                let v = a.mul(&x[i].1)?.sub(&b.mul(&y[j].1)?)?;
                if !v.is_zero() {
                    out.push((x[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    make_primitive(&mut out)?;
    Some(out)
}

/// Eliminates column `col` of `target` using `pivot_row` (which has a nonzero there).
fn eliminate<T: ExactInt>(target: &[(usize, T)], pivot_row: &[(usize, T)], col: usize) -> Option<Option<IntRow<T>>> {
    let Some(c) = lookup(target, col) else {
        return Some(None);
    };
    let p = lookup(pivot_row, col).expect("pivot entry present");
    let g = c.gcd(p);
    let a = p.div_exact(&g);
    let b = c.div_exact(&g);
    combine(&a, target, &b, pivot_row).map(Some)
}

fn integer_row<T: ExactInt>(row: &[(usize, Rational)]) -> Option<IntRow<T>> {
    let mut lcm: i128 = 1;
    for (_, v) in row {
        let d = *v.denom();
        let g = Integer::gcd(&lcm, &d);
        lcm = (lcm / g).checked_mul(d)?;
    }
    let scale = T::from_i128(lcm);
    let mut out = Vec::with_capacity(row.len());
    for (c, v) in row {
        if v.is_zero() {
            continue;
        }
        let factor = T::from_i128(lcm / v.denom());
        out.push((*c, T::from_i128(*v.numer()).mul(&factor)?));
    }
    let _ = scale;
    let mut out = out;
    out.sort_by_key(|(c, _)| *c);
    make_primitive(&mut out)?;
    Some(out)
}

fn big_integer_row(row: &[(usize, Rational)]) -> IntRow<BigInt> {
    let mut lcm = BigInt::one();
    for (_, v) in row {
        lcm = lcm.lcm(&BigInt::from(*v.denom()));
    }
    let mut out: IntRow<BigInt> = row
        .iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|(c, v)| (*c, BigInt::from(*v.numer()) * (&lcm / BigInt::from(*v.denom()))))
        .collect();
    out.sort_by_key(|(c, _)| *c);
    make_primitive(&mut out);
    out
}

fn rref_core<T: ExactInt>(rows: Vec<IntRow<T>>) -> Option<Vec<IntRow<T>>> {
    let mut basis: Vec<IntRow<T>> = Vec::new();
    for mut r in rows {
        for b in &basis {
            let pivot = b[0].0;
            if let Some(reduced) = eliminate(&r, b, pivot)? {
                r = reduced;
            }
            if r.is_empty() {
                break;
            }
        }
        if r.is_empty() {
            continue;
        }
        let col = r[0].0;
        for b in basis.iter_mut() {
            if let Some(reduced) = eliminate(b, &r, col)? {
                *b = reduced;
            }
        }
        basis.push(r);
    }
    basis.sort_by_key(|row| row[0].0);
    Some(basis)
}

fn to_rational_row<T: ExactInt>(row: &[(usize, T)]) -> SparseVec {
    let pivot = row[0].1.to_big();
    row.iter()
        .map(|(c, v)| {
            let q = Ratio::new(v.to_big(), pivot.clone());
            let n = q.numer().to_i128();
            let d = q.denom().to_i128();
            match (n, d) {
                (Some(n), Some(d)) => (*c, Rational::new_raw(n, d)),
                _ => panic!("reduced echelon entry exceeds the 128-bit rational range"),
            }
        })
        .collect()
}

/// Computes the reduced row echelon form of `rows` (each a sparse vector of
/// length `ncols`).
pub fn rref(rows: &[SparseVec], ncols: usize) -> Rref {
    debug_assert!(rows.iter().all(|r| r.iter().all(|(c, _)| *c < ncols)));
    let fast: Option<Vec<IntRow<i128>>> = rows
        .iter()
        .map(|r| integer_row::<i128>(r))
        .collect::<Option<Vec<_>>>()
        .and_then(rref_core);
    let reduced: Vec<SparseVec> = match fast {
        Some(basis) => basis.iter().map(|r| to_rational_row(r)).collect(),
        None => {
            let big: Vec<IntRow<BigInt>> = rows.iter().map(|r| big_integer_row(r)).collect();
            rref_core(big)
                .expect("arbitrary precision elimination cannot overflow")
                .iter()
                .map(|r| to_rational_row(r))
                .collect()
        }
    };
    let pivots = reduced.iter().map(|r| r[0].0).collect();
    Rref {
        ncols,
        rows: reduced,
        pivots,
    }
}

pub fn rank(rows: &[SparseVec], ncols: usize) -> usize {
    rref(rows, ncols).rank()
}

/// Basis of the nullspace of the matrix with the given rows.
pub fn nullspace(rows: &[SparseVec], ncols: usize) -> Vec<SparseVec> {
    rref(rows, ncols).nullspace()
}

/// A particular solution of `A x = b`, or `None` if the system is inconsistent.
/// `rhs[k]` is the right-hand side of `rows[k]`.
pub fn solve(rows: &[SparseVec], rhs: &[Rational], ncols: usize) -> Option<Vec<Rational>> {
    assert_eq!(rows.len(), rhs.len());
    let augmented: Vec<SparseVec> = rows
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            if !b.is_zero() {
                r.push((ncols, *b));
            }
            r
        })
        .collect();
    let reduced = rref(&augmented, ncols + 1);
    if reduced.pivots.contains(&ncols) {
        return None;
    }
    let mut x = vec![Rational::zero(); ncols];
    for (k, row) in reduced.rows.iter().enumerate() {
        if let Some(v) = lookup(row, ncols) {
            x[reduced.pivots[k]] = *v;
        }
    }
    Some(x)
}

/// A linear subspace of `Q^ambient`, stored by its reduced echelon basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    echelon: Rref,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Self {
            ambient,
            echelon: Rref {
                ncols: ambient,
                rows: Vec::new(),
                pivots: Vec::new(),
            },
        }
    }

    pub fn span(ambient: usize, vectors: &[SparseVec]) -> Self {
        Self {
            ambient,
            echelon: rref(vectors, ambient),
        }
    }

    pub fn span_dense(ambient: usize, vectors: &[Vec<Rational>]) -> Self {
        let sparse: Vec<SparseVec> = vectors.iter().map(|v| sparse_from_dense(v)).collect();
        Self::span(ambient, &sparse)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.echelon.rank()
    }

    /// The reduced echelon basis.
    pub fn basis(&self) -> &[SparseVec] {
        &self.echelon.rows
    }

    pub fn basis_dense(&self) -> Vec<Vec<Rational>> {
        self.basis()
            .iter()
            .map(|v| dense_from_sparse(v, self.ambient))
            .collect()
    }

    pub fn contains(&self, v: &[(usize, Rational)]) -> bool {
        self.echelon.reduce(v).is_empty()
    }

    pub fn contains_dense(&self, v: &[Rational]) -> bool {
        self.contains(&sparse_from_dense(v))
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[(usize, Rational)]) -> Option<Vec<Rational>> {
        let coords: Vec<Rational> = self
            .echelon
            .pivots
            .iter()
            .map(|&p| lookup(v, p).cloned().unwrap_or_else(Rational::zero))
            .collect();
        let mut residual: SparseVec = v.to_vec();
        for (c, row) in coords.iter().zip(&self.echelon.rows) {
            if !c.is_zero() {
                residual = axpy_rational(&residual, &(-*c), row);
            }
        }
        residual.is_empty().then_some(coords)
    }

    pub fn sum(&self, other: &Self) -> Self {
        assert_eq!(self.ambient, other.ambient);
        let mut rows = self.basis().to_vec();
        rows.extend_from_slice(other.basis());
        Self::span(self.ambient, &rows)
    }

    /// Exact intersection via the kernel of `(a, b) ↦ Σ aᵢuᵢ − Σ bⱼwⱼ`.
    pub fn intersect(&self, other: &Self) -> Self {
        assert_eq!(self.ambient, other.ambient);
        let (p, q) = (self.dim(), other.dim());
        if p == 0 || q == 0 {
            return Self::zero(self.ambient);
        }
        // Columns: first the basis of self, then the negated basis of other.
        let mut columns: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); self.ambient];
        for (k, v) in self.basis().iter().enumerate() {
            for (i, x) in v {
                columns[*i].push((k, *x));
            }
        }
        for (k, v) in other.basis().iter().enumerate() {
            for (i, x) in v {
                columns[*i].push((p + k, -*x));
            }
        }
        let kernel = nullspace(&columns, p + q);
        let vectors: Vec<SparseVec> = kernel
            .iter()
            .map(|coeffs| {
                let mut acc: SparseVec = Vec::new();
                for (k, a) in coeffs.iter().filter(|(k, _)| *k < p) {
                    acc = axpy_rational(&acc, a, &self.basis()[*k]);
                }
                acc
            })
            .collect();
        Self::span(self.ambient, &vectors)
    }
}
