//! Matrices with polynomial entries.

use crate::group::GroupPresentation;
use crate::polycore::{Matrix, Poly};

pub type PolyMatrix = Vec<Vec<Poly>>;

pub fn identity(p: u32, n: usize) -> PolyMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| Poly::constant(p, (i == j) as i64)).collect())
        .collect()
}

pub fn zeros(p: u32, rows: usize, cols: usize) -> PolyMatrix {
    vec![vec![Poly::zero(p); cols]; rows]
}

pub fn constant(m: &Matrix) -> PolyMatrix {
    let p = m.characteristic();
    (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| Poly::constant(p, m.get(i, j) as i64))
                .collect()
        })
        .collect()
}

pub fn cols(m: &PolyMatrix) -> usize {
    m.first().map_or(0, |r| r.len())
}

pub fn mul(p: u32, a: &PolyMatrix, b: &PolyMatrix) -> PolyMatrix {
    let (n, k, m) = (a.len(), b.len(), cols(b));
    let mut out = zeros(p, n, m);
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[l][j].is_zero() {
                    out[i][j].add_assign_ref(&(&a[i][l] * &b[l][j]));
                }
            }
        }
    }
    out
}

pub fn sub(a: &PolyMatrix, b: &PolyMatrix) -> PolyMatrix {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect())
        .collect()
}

pub fn transpose(p: u32, a: &PolyMatrix) -> PolyMatrix {
    let mut out = zeros(p, cols(a), a.len());
    for (i, row) in a.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            out[j][i] = e.clone();
        }
    }
    out
}

pub fn map(a: &PolyMatrix, f: impl Fn(&Poly) -> Poly) -> PolyMatrix {
    a.iter().map(|r| r.iter().map(&f).collect()).collect()
}

pub fn reduce(g: &GroupPresentation, a: &PolyMatrix, points: usize, offset: usize) -> PolyMatrix {
    map(a, |e| g.reduce(e, points, offset))
}

/// Whether `a ≡ b` modulo the relations of `points` generic points.
pub fn congruent(g: &GroupPresentation, a: &PolyMatrix, b: &PolyMatrix, points: usize) -> bool {
    a.len() == b.len()
        && a.iter().zip(b).all(|(r, s)| {
            r.len() == s.len()
                && r.iter()
                    .zip(s)
                    .all(|(x, y)| g.reduce(&(x - y), points, 0).is_zero())
        })
}

pub fn is_zero(a: &PolyMatrix) -> bool {
    a.iter().flatten().all(Poly::is_zero)
}
