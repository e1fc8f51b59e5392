//! Exact linear algebra over GF(p): dense matrices and an incremental
//! echelon solver for the large, sparse systems produced by coefficient matching.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::field::{add_mod, inv_mod, mul_mod, neg_mod, sub_mod};

/// Dense row-major matrix over GF(p).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Matrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        Self {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(p: u32, rows: &[Vec<u32>]) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        let mut m = Self::zeros(p, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v % p);
            }
        }
        m
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(p: u32, rows: usize, cols: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(p, rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, &v) in col.iter().enumerate() {
                m.set(i, j, v % p);
            }
        }
        m
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let p = self.p;
        let mut out = Matrix::zeros(p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = add_mod(out.get(i, j), mul_mod(a, other.get(k, j), p), p);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(v).fold(0, |acc, (&a, &b)| {
                    add_mod(acc, mul_mod(a, b, self.p), self.p)
                })
            })
            .collect()
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| sub_mod(a, b, self.p))
            .collect();
        Matrix {
            p: self.p,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let p = self.p;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(piv) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if piv != r {
                for j in 0..m.cols {
                    let t = m.get(r, j);
                    m.set(r, j, m.get(piv, j));
                    m.set(piv, j, t);
                }
            }
            let inv = inv_mod(m.get(r, c), p);
            for j in 0..m.cols {
                m.set(r, j, mul_mod(m.get(r, j), inv, p));
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c);
                if f == 0 {
                    continue;
                }
                for j in 0..m.cols {
                    let v = sub_mod(m.get(i, j), mul_mod(f, m.get(r, j), p), p);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel `{x : A x = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<u32>> {
        let (r, pivots) = self.rref();
        nullspace_from_rref(&r, &pivots, self.cols, self.p)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(self.p, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(self.p, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j));
            }
        }
        Some(inv)
    }

    /// One solution of `A x = b`, if any.
    pub fn solve(&self, b: &[u32]) -> Option<Vec<u32>> {
        let mut sys = LinearSystem::new(self.p, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                sys.add(i, j, self.get(i, j));
            }
            sys.add_rhs(i, b[i]);
        }
        sys.solve().solution
    }
}

fn nullspace_from_rref(r: &Matrix, pivots: &[usize], ncols: usize, p: u32) -> Vec<Vec<u32>> {
    let mut is_pivot = vec![None; ncols];
    for (row, &c) in pivots.iter().enumerate() {
        is_pivot[c] = Some(row);
    }
    let mut out = Vec::new();
    for free in 0..ncols {
        if is_pivot[free].is_some() {
            continue;
        }
        let mut v = vec![0u32; ncols];
        v[free] = 1;
        for (row, &c) in pivots.iter().enumerate() {
            v[c] = neg_mod(r.get(row, free), p);
        }
        out.push(v);
    }
    out
}

/// Rank data of a linear system, recorded as solvability evidence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankEvidence {
    pub unknowns: usize,
    pub equations: usize,
    pub rank: usize,
    pub rank_augmented: usize,
}

impl RankEvidence {
    pub fn solvable(&self) -> bool {
        self.rank == self.rank_augmented
    }
}

#[derive(Clone, Debug)]
pub struct Solution {
    pub solution: Option<Vec<u32>>,
    pub evidence: RankEvidence,
}

/// A linear system `sum_j c_j * x_j = rhs` with one equation per key.
///
/// Equations are processed in key order and eliminated incrementally, so only
/// at most `unknowns` rows are ever stored densely.
#[derive(Clone, Debug)]
pub struct LinearSystem<K: Ord> {
    p: u32,
    unknowns: usize,
    rows: BTreeMap<K, Vec<(usize, u32)>>,
    rhs: BTreeMap<K, u32>,
}

impl<K: Ord + Clone> LinearSystem<K> {
    pub fn new(p: u32, unknowns: usize) -> Self {
        Self {
            p,
            unknowns,
            rows: BTreeMap::new(),
            rhs: BTreeMap::new(),
        }
    }

    pub fn unknowns(&self) -> usize {
        self.unknowns
    }

    pub fn add(&mut self, key: K, col: usize, coef: u32) {
        assert!(col < self.unknowns);
        let coef = coef % self.p;
        if coef != 0 {
            self.rows.entry(key).or_default().push((col, coef));
        }
    }

    pub fn add_rhs(&mut self, key: K, c: u32) {
        let c = c % self.p;
        if c != 0 {
            let e = self.rhs.entry(key.clone()).or_insert(0);
            *e = add_mod(*e, c, self.p);
            self.rows.entry(key).or_default();
        }
    }

    fn echelon(&self, with_rhs: bool) -> Echelon {
        let width = self.unknowns + usize::from(with_rhs);
        let mut ech = Echelon::new(self.p, width);
        for (key, entries) in &self.rows {
            let mut row = vec![0u32; width];
            for &(c, v) in entries {
                row[c] = add_mod(row[c], v, self.p);
            }
            if with_rhs {
                row[self.unknowns] = self.rhs.get(key).copied().unwrap_or(0);
            }
            ech.insert(row);
        }
        ech
    }

    /// Basis of the solutions of the homogeneous system (right-hand side ignored).
    pub fn nullspace(&self) -> Vec<Vec<u32>> {
        let ech = self.echelon(false);
        let (r, pivots) = ech.into_rref();
        nullspace_from_rref(&r, &pivots, self.unknowns, self.p)
    }

    pub fn rank(&self) -> usize {
        self.echelon(false).rank()
    }

    pub fn solve(&self) -> Solution {
        let ech = self.echelon(true);
        let rank_augmented = ech.rank();
        let consistent = ech.pivot_row(self.unknowns).is_none();
        let rank = if consistent {
            rank_augmented
        } else {
            rank_augmented - 1
        };
        let evidence = RankEvidence {
            unknowns: self.unknowns,
            equations: self.rows.len(),
            rank,
            rank_augmented,
        };
        if !consistent {
            return Solution {
                solution: None,
                evidence,
            };
        }
        let (r, pivots) = ech.into_rref();
        let mut x = vec![0u32; self.unknowns];
        for (row, &c) in pivots.iter().enumerate() {
            x[c] = r.get(row, self.unknowns);
        }
        Solution {
            solution: Some(x),
            evidence,
        }
    }
}

struct Echelon {
    p: u32,
    width: usize,
    rows: Vec<Vec<u32>>,
    pivot_of_col: Vec<Option<usize>>,
}

impl Echelon {
    fn new(p: u32, width: usize) -> Self {
        Self {
            p,
            width,
            rows: Vec::new(),
            pivot_of_col: vec![None; width],
        }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    fn pivot_row(&self, col: usize) -> Option<usize> {
        self.pivot_of_col[col]
    }

    fn insert(&mut self, mut row: Vec<u32>) {
        let p = self.p;
        for c in 0..self.width {
            let v = row[c];
            if v == 0 {
                continue;
            }
            match self.pivot_of_col[c] {
                Some(k) => {
                    let pr = &self.rows[k];
                    for j in c..self.width {
                        if pr[j] != 0 {
                            row[j] = sub_mod(row[j], mul_mod(v, pr[j], p), p);
                        }
                    }
                }
                None => {
                    let inv = inv_mod(v, p);
                    for x in row[c..].iter_mut() {
                        *x = mul_mod(*x, inv, p);
                    }
                    self.pivot_of_col[c] = Some(self.rows.len());
                    self.rows.push(row);
                    return;
                }
            }
        }
    }

    fn into_rref(self) -> (Matrix, Vec<usize>) {
        let mut pivots: Vec<(usize, usize)> = self
            .pivot_of_col
            .iter()
            .enumerate()
            .filter_map(|(c, r)| r.map(|r| (c, r)))
            .collect();
        pivots.sort_unstable();
        let rows: Vec<Vec<u32>> = pivots.iter().map(|&(_, r)| self.rows[r].clone()).collect();
        let m = if rows.is_empty() {
            Matrix::zeros(self.p, 0, self.width)
        } else {
            Matrix::from_rows(self.p, &rows)
        };
        // rows are already echelon with unit pivots; finish back-substitution
        let (r, piv) = m.rref();
        (r, piv)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nullspace_and_rank() {
        let m = Matrix::from_rows(7, &[vec![1, 2, 3], vec![2, 4, 1]]);
        assert_eq!(m.rank(), 2);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(m.mul_vec(&ns[0]).iter().all(|&v| v == 0));
    }

    #[test]
    fn inverse_roundtrip() {
        let m = Matrix::from_rows(3, &[vec![1, 1], vec![0, 2]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(3, 2));
        assert!(Matrix::from_rows(3, &[vec![1, 1], vec![2, 2]])
            .inverse()
            .is_none());
    }

    #[test]
    fn sparse_system_solves_and_reports_rank() {
        let mut s: LinearSystem<&str> = LinearSystem::new(7, 2);
        s.add("a", 0, 1);
        s.add("a", 1, 1);
        s.add_rhs("a", 3);
        s.add("b", 1, 2);
        s.add_rhs("b", 4);
        let sol = s.solve();
        assert_eq!(sol.solution, Some(vec![1, 2]));
        assert!(sol.evidence.solvable());
        s.add("c", 0, 1);
        s.add_rhs("c", 5);
        let bad = s.solve();
        assert!(bad.solution.is_none());
        assert_eq!(bad.evidence.rank, 2);
        assert_eq!(bad.evidence.rank_augmented, 3);
    }
}
