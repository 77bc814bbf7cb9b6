//! Dense matrices over [`Rational`] with the handful of operations the
//! construction and centralizer code needs.
//!
//! Matrices are small (the tautological representation at desk scale), so a
//! row-major `Vec` is used; products skip zero entries of the left factor,
//! which keeps commutators with the very sparse shift operators cheap.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::{format_rational, parse_rational, Rational};

/// Upper bound on the side length accepted when parsing matrices from
/// external documents.
pub const MAX_PARSED_DIM: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn diagonal(values: &[Rational]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, v) in values.iter().enumerate() {
            m.set(i, i, *v);
        }
        m
    }

    /// Builds a matrix from row-major data; `data.len()` must be `rows * cols`.
    pub fn from_row_major(rows: usize, cols: usize, data: Vec<Rational>) -> Self {
        assert_eq!(data.len(), rows * cols, "row-major data has the wrong length");
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// The single-entry matrix `E_{row,col}` of size `n`.
    pub fn unit(n: usize, row: usize, col: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m.set(row, col, Rational::one());
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> &Rational {
        &self.data[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Rational) {
        self.data[row * self.cols + col] = value;
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.data
    }

    pub fn into_row_major(self) -> Vec<Rational> {
        self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        self.is_square()
            && self.nonzeros().all(|(r, c, _)| r == c)
    }

    pub fn diagonal_entries(&self) -> Vec<Rational> {
        (0..self.rows.min(self.cols)).map(|i| *self.get(i, i)).collect()
    }

    pub fn trace(&self) -> Rational {
        self.diagonal_entries().into_iter().sum()
    }

    /// Iterates over `(row, col, value)` for the nonzero entries in row-major order.
    pub fn nonzeros(&self) -> impl Iterator<Item = (usize, usize, &Rational)> + '_ {
        self.data
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(move |(idx, v)| (idx / self.cols, idx % self.cols, v))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (r, c, v) in self.nonzeros() {
            t.set(c, r, *v);
        }
        t
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * factor).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_shape(other);
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.assert_same_shape(other);
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = Self::zeros(self.rows, other.cols);
        for (r, k, a) in self.nonzeros() {
            let row = &other.data[k * other.cols..(k + 1) * other.cols];
            for (c, b) in row.iter().enumerate() {
                if !b.is_zero() {
                    let slot = &mut out.data[r * other.cols + c];
                    *slot += a * b;
                }
            }
        }
        out
    }

    /// `[self, other] = self·other − other·self`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn pow(&self, exponent: u32) -> Self {
        assert!(self.is_square());
        let mut acc = Self::identity(self.rows);
        for _ in 0..exponent {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplies the vector `v` (a column) by this matrix.
    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        let mut out = vec![Rational::zero(); self.rows];
        for (r, c, a) in self.nonzeros() {
            if !v[c].is_zero() {
                out[r] += a * v[c];
            }
        }
        out
    }

    /// Conjugates by a permutation given as `perm[i] = image of basis index i`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        assert!(self.is_square() && perm.len() == self.rows);
        let mut out = Self::zeros(self.rows, self.cols);
        for (r, c, v) in self.nonzeros() {
            out.set(perm[r], perm[c], *v);
        }
        out
    }

    fn assert_same_shape(&self, other: &Self) {
        assert!(
            self.rows == other.rows && self.cols == other.cols,
            "shape mismatch: {}x{} vs {}x{}",
            self.rows,
            self.cols,
            other.rows,
            other.cols
        );
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| format_rational(self.get(r, c))).collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Output layout for matrices in JSON documents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MatrixFormat {
    #[default]
    Dense,
    Sparse,
}

/// JSON form of a matrix: either an array of rows of `"p/q"` strings, or a
/// sparse object listing `(row, col, value)` triples.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MatrixRepr {
    Dense(Vec<Vec<String>>),
    Sparse {
        rows: usize,
        cols: usize,
        entries: Vec<(usize, usize, String)>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatrixParseError {
    #[error("matrix rows have different lengths")]
    Ragged,
    #[error("matrix of size {0}x{1} exceeds the parse limit")]
    TooLarge(usize, usize),
    #[error("entry ({0}, {1}) is out of bounds")]
    OutOfBounds(usize, usize),
    #[error("entry ({0}, {1}) listed twice")]
    DuplicateEntry(usize, usize),
    #[error("bad entry: {0}")]
    BadEntry(#[from] crate::rational::ParseRationalError),
}

impl MatrixRepr {
    pub fn encode(matrix: &Matrix, format: MatrixFormat) -> Self {
        match format {
            MatrixFormat::Dense => MatrixRepr::Dense(
                (0..matrix.rows)
                    .map(|r| (0..matrix.cols).map(|c| format_rational(matrix.get(r, c))).collect())
                    .collect(),
            ),
            MatrixFormat::Sparse => MatrixRepr::Sparse {
                rows: matrix.rows,
                cols: matrix.cols,
                entries: matrix
                    .nonzeros()
                    .map(|(r, c, v)| (r, c, format_rational(v)))
                    .collect(),
            },
        }
    }

    pub fn decode(&self) -> Result<Matrix, MatrixParseError> {
        match self {
            MatrixRepr::Dense(rows) => {
                let r = rows.len();
                let c = rows.first().map_or(0, Vec::len);
                if r > MAX_PARSED_DIM || c > MAX_PARSED_DIM {
                    return Err(MatrixParseError::TooLarge(r, c));
                }
                if rows.iter().any(|row| row.len() != c) {
                    return Err(MatrixParseError::Ragged);
                }
                let mut data = Vec::with_capacity(r * c);
                for row in rows {
                    for entry in row {
                        data.push(parse_rational(entry)?);
                    }
                }
                Ok(Matrix::from_row_major(r, c, data))
            }
            MatrixRepr::Sparse { rows, cols, entries } => {
                if *rows > MAX_PARSED_DIM || *cols > MAX_PARSED_DIM {
                    return Err(MatrixParseError::TooLarge(*rows, *cols));
                }
                let mut m = Matrix::zeros(*rows, *cols);
                let mut seen = std::collections::BTreeSet::new();
                for (r, c, v) in entries {
                    if r >= rows || c >= cols {
                        return Err(MatrixParseError::OutOfBounds(*r, *c));
                    }
                    if !seen.insert((*r, *c)) {
                        return Err(MatrixParseError::DuplicateEntry(*r, *c));
                    }
                    m.set(*r, *c, parse_rational(v)?);
                }
                Ok(m)
            }
        }
    }
}
