//! Exact rational spectra of commuting diagonalizable matrices.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, SparseVec, Subspace};
use crate::matrix::Matrix;
use crate::rational::Rational;

/// Joint eigenvalue pair of `(h₁, h₂)`.
pub type Key = (Rational, Rational);

/// Trial division bound for factoring the constant term of a characteristic
/// polynomial.
const TRIAL_DIVISION_LIMIT: u64 = 1 << 20;

fn big(r: &Rational) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

/// Characteristic polynomial `det(tI − M)` by Faddeev–LeVerrier, returned as
/// coefficients `c[0] + c[1] t + … + c[n] tⁿ` with `c[n] = 1`.
fn characteristic_polynomial(m: &Matrix) -> Vec<BigRational> {
    let n = m.rows();
    let a: Vec<Vec<BigRational>> = (0..n).map(|i| (0..n).map(|j| big(m.get(i, j))).collect()).collect();
    let mut coeffs = vec![BigRational::zero(); n + 1];
    coeffs[n] = BigRational::one();
    // M_k = A·M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A·M_k)/k
    let mut mk: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); n]; n];
    for k in 1..=n {
        let c_prev = coeffs[n - k + 1].clone();
        let mut next = vec![vec![BigRational::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = BigRational::zero();
                for l in 0..n {
                    if !a[i][l].is_zero() && !mk[l][j].is_zero() {
                        acc += &a[i][l] * &mk[l][j];
                    }
                }
                if i == j {
                    acc += &c_prev;
                }
                next[i][j] = acc;
            }
        }
        mk = next;
        let mut trace = BigRational::zero();
        for i in 0..n {
            for l in 0..n {
                if !a[i][l].is_zero() && !mk[l][i].is_zero() {
                    trace += &a[i][l] * &mk[l][i];
                }
            }
        }
        coeffs[n - k] = -trace / BigRational::from_integer(BigInt::from(k));
    }
    coeffs
}

fn prime_factors(mut n: BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut d: u64 = 2;
    while d <= TRIAL_DIVISION_LIMIT && BigInt::from(d) * BigInt::from(d) <= n {
        let bd = BigInt::from(d);
        if (&n % &bd).is_zero() {
            out.push(bd.clone());
            while (&n % &bd).is_zero() {
                n /= &bd;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > BigInt::one() {
        // Either prime or an unfactored cofactor; in the latter case some
        // candidates are missed and the multiplicity check reports it.
        out.push(n);
    }
    out
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut divs = vec![BigInt::one()];
    let mut rest = n.abs();
    for p in prime_factors(rest.clone()) {
        let mut power = BigInt::one();
        let mut extended = Vec::new();
        while (&rest % &p).is_zero() {
            rest /= &p;
            power *= &p;
            for d in &divs {
                extended.push(d * &power);
            }
        }
        divs.extend(extended);
    }
    divs
}

fn evaluate(coeffs: &[BigRational], t: &BigRational) -> BigRational {
    coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * t + c)
}

/// Distinct rational roots of the characteristic polynomial.
pub fn rational_eigenvalues(m: &Matrix) -> Result<Vec<Rational>> {
    if m.is_diagonal() {
        let mut values = m.diagonal_entries();
        values.sort();
        values.dedup();
        return Ok(values);
    }
    let coeffs = characteristic_polynomial(m);
    let lcm = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut ints: Vec<BigInt> = coeffs
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    let mut roots = Vec::new();
    if ints.first().is_some_and(|c| c.is_zero()) {
        roots.push(Rational::zero());
        while ints.first().is_some_and(|c| c.is_zero()) {
            ints.remove(0);
        }
    }
    if ints.len() > 1 {
        let constant = ints[0].clone();
        let leading = ints[ints.len() - 1].clone();
        let poly: Vec<BigRational> = ints.iter().map(|c| BigRational::from_integer(c.clone())).collect();
        let mut candidates = Vec::new();
        for p in divisors(&constant) {
            for q in divisors(&leading) {
                for sign in [1, -1] {
                    candidates.push(BigRational::new(BigInt::from(sign) * &p, q.clone()));
                }
            }
        }
        candidates.sort();
        candidates.dedup();
        for c in candidates {
            if evaluate(&poly, &c).is_zero() {
                let n = c.numer().to_i128();
                let d = c.denom().to_i128();
                match (n, d) {
                    (Some(n), Some(d)) => roots.push(Rational::new(n, d)),
                    _ => return Err(Error::NotNormalForm("eigenvalue outside the 128-bit range".into())),
                }
            }
        }
    }
    roots.sort();
    roots.dedup();
    Ok(roots)
}

fn shifted_rows(m: &Matrix, lambda: &Rational) -> Vec<SparseVec> {
    let n = m.rows();
    (0..n)
        .map(|i| {
            (0..n)
                .filter_map(|j| {
                    let mut v = *m.get(i, j);
                    if i == j {
                        v -= lambda;
                    }
                    (!v.is_zero()).then_some((j, v))
                })
                .collect()
        })
        .collect()
}

/// Joint eigenspaces of two commuting matrices on `V`, keyed by eigenvalue
/// pair. Fails unless the pair is simultaneously diagonalizable over `Q`.
pub fn joint_eigenspaces(h1: &Matrix, h2: &Matrix) -> Result<BTreeMap<Key, Subspace>> {
    let n = h1.rows();
    let mut out = BTreeMap::new();
    if h1.is_diagonal() && h2.is_diagonal() {
        let mut groups: BTreeMap<Key, Vec<SparseVec>> = BTreeMap::new();
        for k in 0..n {
            groups
                .entry((*h1.get(k, k), *h2.get(k, k)))
                .or_default()
                .push(vec![(k, Rational::one())]);
        }
        for (key, vectors) in groups {
            out.insert(key, Subspace::span(n, &vectors));
        }
        return Ok(out);
    }
    let ev1 = rational_eigenvalues(h1)?;
    let ev2 = rational_eigenvalues(h2)?;
    let mut total = 0;
    for l1 in &ev1 {
        let rows1 = shifted_rows(h1, l1);
        for l2 in &ev2 {
            let mut rows = rows1.clone();
            rows.extend(shifted_rows(h2, l2));
            let kernel = linalg::nullspace(&rows, n);
            if !kernel.is_empty() {
                total += kernel.len();
                out.insert((*l1, *l2), Subspace::span(n, &kernel));
            }
        }
    }
    if total != n {
        return Err(Error::NotNormalForm(
            "h1, h2 are not simultaneously diagonalizable with rational eigenvalues".into(),
        ));
    }
    Ok(out)
}
