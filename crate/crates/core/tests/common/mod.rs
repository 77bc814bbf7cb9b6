//! Independent oracles shared by the integration tests. Nothing here calls
//! into the library's own enumeration or shape classification.

#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::BTreeSet;

use nilpair::centralizer::centralizer;
use nilpair::linalg::{nullspace, SparseVec};
use nilpair::rational::{int, Rational};
use nilpair::{AlgebraSpec, Matrix, Node, SkewGraph};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Cells = BTreeSet<(i64, i64)>;

pub fn connected(cells: &Cells) -> bool {
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

pub fn square_axiom(cells: &Cells) -> bool {
    cells.iter().all(|&(x, y)| {
        !cells.contains(&(x + 1, y + 1)) || (cells.contains(&(x + 1, y)) && cells.contains(&(x, y + 1)))
    })
}

/// Translates so that the minimum coordinates are zero.
pub fn normalize(cells: &Cells) -> Cells {
    let mx = cells.iter().map(|c| c.0).min().unwrap_or(0);
    let my = cells.iter().map(|c| c.1).min().unwrap_or(0);
    cells.iter().map(|&(x, y)| (x - mx, y - my)).collect()
}

/// All connected `n`-cell sets satisfying the square axiom, up to
/// translation, by exhaustive subset search. The lexicographically smallest
/// cell is pinned at `(0, n-1)` and the rest range over a `n × (2n-1)` window.
pub fn brute_force_shapes(n: usize) -> BTreeSet<Cells> {
    let anchor = (0i64, n as i64 - 1);
    let window: Vec<(i64, i64)> = (0..n as i64)
        .flat_map(|x| (0..2 * n as i64 - 1).map(move |y| (x, y)))
        .filter(|&c| c > anchor)
        .collect();
    let mut out = BTreeSet::new();
    let mut chosen = vec![anchor];
    fn go(window: &[(i64, i64)], start: usize, need: usize, chosen: &mut Vec<(i64, i64)>, out: &mut BTreeSet<Cells>) {
        if need == 0 {
            let set: Cells = chosen.iter().copied().collect();
            if connected(&set) && square_axiom(&set) {
                out.insert(normalize(&set));
            }
            return;
        }
        for i in start..window.len() {
            chosen.push(window[i]);
            go(window, i + 1, need - 1, chosen, out);
            chosen.pop();
        }
    }
    go(&window, 0, n - 1, &mut chosen, &mut out);
    out
}

/// The same set by Redelmeier's growth of fixed polyominoes, filtered by the
/// square axiom. Feasible well past the range of the subset search.
pub fn grown_shapes(n: usize) -> BTreeSet<Cells> {
    fn neighbours((x, y): (i64, i64)) -> [(i64, i64); 4] {
        [(x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)]
    }
    // Cells with y > 0, or y = 0 and x >= 0, so that (0, 0) is the minimum.
    fn allowed((x, y): (i64, i64)) -> bool {
        y > 0 || (y == 0 && x >= 0)
    }
    fn go(
        n: usize,
        shape: &mut Vec<(i64, i64)>,
        untried: Vec<(i64, i64)>,
        seen: &mut BTreeSet<(i64, i64)>,
        out: &mut BTreeSet<Cells>,
    ) {
        let mut untried = untried;
        while let Some(cell) = untried.pop() {
            shape.push(cell);
            if shape.len() == n {
                let set: Cells = shape.iter().copied().collect();
                if square_axiom(&set) {
                    out.insert(normalize(&set));
                }
            } else {
                let mut next = untried.clone();
                let mut added = Vec::new();
                for nb in neighbours(cell) {
                    if allowed(nb) && seen.insert(nb) {
                        next.push(nb);
                        added.push(nb);
                    }
                }
                go(n, shape, next, seen, out);
                for a in added {
                    seen.remove(&a);
                }
            }
            shape.pop();
        }
    }
    let mut out = BTreeSet::new();
    let mut seen = BTreeSet::from([(0, 0)]);
    go(n, &mut Vec::new(), vec![(0, 0)], &mut seen, &mut out);
    out
}

/// Cells of a one-component graph, normalized.
pub fn cells_of_nodes(nodes: &[Node]) -> Cells {
    let mx = nodes.iter().map(|n| n.x).min().unwrap();
    let my = nodes.iter().map(|n| n.y).min().unwrap();
    nodes
        .iter()
        .map(|n| {
            let dx: Rational = n.x - mx;
            let dy: Rational = n.y - my;
            assert!(dx.is_integer() && dy.is_integer());
            (dx.to_integer() as i64, dy.to_integer() as i64)
        })
        .collect()
}

pub fn graph_of_cells(cells: &Cells) -> SkewGraph {
    SkewGraph::connected(cells.iter().map(|&(x, y)| Node::int(x as i128, y as i128))).canonical()
}

pub fn sources(cells: &Cells) -> usize {
    cells
        .iter()
        .filter(|&&(x, y)| !cells.contains(&(x - 1, y)) && !cells.contains(&(x, y - 1)))
        .count()
}

pub fn sinks(cells: &Cells) -> usize {
    cells
        .iter()
        .filter(|&&(x, y)| !cells.contains(&(x + 1, y)) && !cells.contains(&(x, y + 1)))
        .count()
}

pub fn is_young(cells: &Cells) -> bool {
    sources(cells) == 1 || sinks(cells) == 1
}

pub fn bbox(cells: &Cells) -> (i64, i64) {
    let w = cells.iter().map(|c| c.0).max().unwrap() + 1;
    let h = cells.iter().map(|c| c.1).max().unwrap() + 1;
    (w, h)
}

pub fn is_rectangle(cells: &Cells) -> bool {
    let (w, h) = bbox(cells);
    cells.len() as i64 == w * h
}

/// Whether every node of the (centred) graph component has coordinates in `Z`,
/// `1/2 + Z`, or each mixed case.
pub fn coordinate_type(nodes: &[Node]) -> (bool, bool) {
    (nodes[0].x.is_integer(), nodes[0].y.is_integer())
}

/// Near-rectangular shapes built from the removal recipe: an even × even
/// rectangle with central-symmetric removals on its extreme columns or rows.
pub fn near_rectangular_shapes(max_cells: usize) -> BTreeSet<Cells> {
    let mut out = BTreeSet::new();
    for w in (2..=max_cells as i64).step_by(2) {
        for h in (2..=max_cells as i64).step_by(2) {
            let full: Cells = (0..w).flat_map(|x| (0..h).map(move |y| (x, y))).collect();
            // Remove one corner pair.
            let third: Cells = full.iter().copied().filter(|&c| c != (0, 0) && c != (w - 1, h - 1)).collect();
            // Keep only the top cell of the left column and the bottom cell of the right one.
            let first: Cells = full
                .iter()
                .copied()
                .filter(|&(x, y)| (x != 0 || y == h - 1) && (x != w - 1 || y == 0))
                .collect();
            let second: Cells = full
                .iter()
                .copied()
                .filter(|&(x, y)| (y != 0 || x == w - 1) && (y != h - 1 || x == 0))
                .collect();
            for s in [third, first, second] {
                if s.len() <= max_cells && s.len() != full.len() && connected(&s) && square_axiom(&s) {
                    out.insert(s);
                }
            }
        }
    }
    out
}

pub fn partitions(n: usize) -> usize {
    let mut p = vec![0usize; n + 1];
    p[0] = 1;
    for k in 1..=n {
        for m in k..=n {
            p[m] += p[m - k];
        }
    }
    p[n]
}

pub fn divisor_count(n: usize) -> usize {
    (1..=n).filter(|d| n.is_multiple_of(*d)).count()
}

pub fn big(r: &Rational) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

/// Textbook Gauss-Jordan elimination over arbitrary-precision rationals.
pub fn naive_rref(mut rows: Vec<Vec<BigRational>>, ncols: usize) -> (Vec<Vec<BigRational>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = BigRational::one() / rows[r][c].clone();
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..ncols {
                    let t = &f * &rows[r][j];
                    rows[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

/// Nullspace basis from free columns, brought to reduced echelon form.
pub fn naive_nullspace(rows: Vec<Vec<BigRational>>, ncols: usize) -> Vec<Vec<BigRational>> {
    let (reduced, pivots) = naive_rref(rows, ncols);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![BigRational::zero(); ncols];
        v[free] = BigRational::one();
        for (k, &p) in pivots.iter().enumerate() {
            v[p] = -reduced[k][free].clone();
        }
        basis.push(v);
    }
    naive_rref(basis, ncols).0
}

pub fn to_big_rows(rows: &[SparseVec], ncols: usize) -> Vec<Vec<BigRational>> {
    rows.iter()
        .map(|r| {
            let mut v = vec![BigRational::zero(); ncols];
            for (i, x) in r {
                v[*i] = big(x);
            }
            v
        })
        .collect()
}

/// `x ↦ [m, x]` on entry coordinates, written out directly.
pub fn commutator_system(m: &Matrix) -> Vec<SparseVec> {
    let n = m.rows();
    let mut rows = Vec::new();
    for r in 0..n {
        for c in 0..n {
            let mut row = vec![Rational::zero(); n * n];
            for k in 0..n {
                row[k * n + c] += m.get(r, k);
                row[r * n + k] -= m.get(k, c);
            }
            rows.push(row.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect());
        }
    }
    rows
}

pub fn random_matrix(rng: &mut StdRng, n: usize) -> Matrix {
    let data: Vec<Rational> = (0..n * n)
        .map(|_| {
            if rng.gen_bool(0.5) {
                Rational::zero()
            } else {
                Rational::new(rng.gen_range(-4..=4), rng.gen_range(1..=3))
            }
        })
        .collect();
    Matrix::from_row_major(n, n, data)
}

/// Compares the library nullspace and sl_n centralizer against naive
/// elimination on random commutator systems; returns the failing trial indices.
pub fn random_system_mismatches(seed: u64, trials: usize) -> Vec<usize> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for trial in 0..trials {
        let n = rng.gen_range(2..=4);
        let a = random_matrix(&mut rng, n);
        let b = if rng.gen_bool(0.5) { Some(random_matrix(&mut rng, n)) } else { None };
        let mut rows = commutator_system(&a);
        if let Some(b) = &b {
            rows.extend(commutator_system(b));
        }
        let ours = to_big_rows(&nullspace(&rows, n * n), n * n);
        let naive = naive_nullspace(to_big_rows(&rows, n * n), n * n);

        // Inside sl_n the trace condition is one more equation.
        let mut with_trace = to_big_rows(&rows, n * n);
        let mut trace = vec![BigRational::zero(); n * n];
        for k in 0..n {
            trace[k * n + k] = big(&int(1));
        }
        with_trace.push(trace);
        let spec = AlgebraSpec::sl(n).unwrap();
        let mut elements = vec![a.clone()];
        elements.extend(b.clone());
        let basis = centralizer(&spec, &elements).unwrap();
        let members_ok = basis
            .iter()
            .all(|x| x.trace().is_zero() && elements.iter().all(|m| x.commutator(m).is_zero()));
        if ours != naive || basis.len() != naive_nullspace(with_trace, n * n).len() || !members_ok {
            failures.push(trial);
        }
    }
    failures
}
