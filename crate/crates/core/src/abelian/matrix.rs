//! Dense integer matrices and Smith normal form.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl Index<(usize, usize)> for Matrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// Panics on ragged input.
    pub fn from_rows(cols: usize, rows: &[Vec<i64>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            data.extend_from_slice(r);
        }
        Self { rows: rows.len(), cols, data }
    }

    pub fn from_cols(rows: usize, cols: &[Vec<i64>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "ragged matrix");
            for (i, &v) in c.iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        m
    }

    pub fn diagonal(entries: &[i64]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, &v) in entries.iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    /// `self * other`; panics on a shape mismatch.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(self.cols, v.len(), "shape mismatch in product");
        (0..self.rows).map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in sum");
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect() }
    }

    pub fn scale(&self, c: i64) -> Matrix {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "row mismatch in hstack");
        let mut m = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)];
            }
            for j in 0..other.cols {
                m[(i, self.cols + j)] = other[(i, j)];
            }
        }
        m
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "column mismatch in vstack");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Self { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn block_diag(blocks: &[Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m[(r0 + i, c0 + j)] = b[(i, j)];
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut m = Self::zeros(idx.len(), self.cols);
        for (r, &i) in idx.iter().enumerate() {
            for j in 0..self.cols {
                m[(r, j)] = self[(i, j)];
            }
        }
        m
    }

    pub fn select_cols(&self, idx: &[usize]) -> Matrix {
        let mut m = Self::zeros(self.rows, idx.len());
        for i in 0..self.rows {
            for (c, &j) in idx.iter().enumerate() {
                m[(i, c)] = self[(i, j)];
            }
        }
        m
    }

    /// Writes `block` with its top-left corner at `(r0, c0)`.
    pub fn put(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] = block[(i, j)];
            }
        }
    }

    pub fn smith(&self) -> Smith {
        Smith::compute(self)
    }

    pub fn rank(&self) -> usize {
        self.smith().rank
    }

    /// A basis of `{x : self x = 0}`, as columns.
    pub fn kernel_basis(&self) -> Matrix {
        let s = self.smith();
        let idx: Vec<usize> = (s.rank..self.cols).collect();
        s.q.select_cols(&idx)
    }

    /// A basis of the lattice spanned by the columns.
    pub fn lattice_basis(&self) -> Matrix {
        let s = self.smith();
        let mut b = s.p_inv.select_cols(&(0..s.rank).collect::<Vec<_>>());
        for j in 0..s.rank {
            for i in 0..b.rows {
                b[(i, j)] *= s.diag[j];
            }
        }
        b
    }

    /// An integer solution of `self x = b`, if one exists.
    pub fn solve(&self, b: &[i64]) -> Option<Vec<i64>> {
        self.smith().solve(b)
    }
}

/// `p * a * q = d` with `d` diagonal, `diag[i]` dividing `diag[i + 1]`
/// and all of `p`, `q` unimodular.
#[derive(Debug, Clone)]
pub struct Smith {
    pub d: Matrix,
    pub p: Matrix,
    pub p_inv: Matrix,
    pub q: Matrix,
    pub q_inv: Matrix,
    pub diag: Vec<i64>,
    pub rank: usize,
}

const OVERFLOW: &str = "Smith normal form: entries exceed the supported integer range";

// The reduction runs in 128 bits with checked arithmetic and narrows at
// the end, so intermediate growth in the transforms has some headroom.
struct Work {
    cols: usize,
    data: Vec<i128>,
}

impl Work {
    fn from(m: &Matrix) -> Self {
        Self { cols: m.cols, data: m.data.iter().map(|&x| x as i128).collect() }
    }

    fn identity(n: usize) -> Self {
        Self::from(&Matrix::identity(n))
    }

    fn rows(&self) -> usize {
        if self.cols == 0 { 0 } else { self.data.len() / self.cols }
    }

    fn narrow(self, rows: usize) -> Matrix {
        let data = self.data.into_iter().map(|x| i64::try_from(x).expect(OVERFLOW)).collect();
        Matrix { rows, cols: self.cols, data }
    }
}

impl Index<(usize, usize)> for Work {
    type Output = i128;
    fn index(&self, (i, j): (usize, usize)) -> &i128 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Work {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i128 {
        &mut self.data[i * self.cols + j]
    }
}

// x + k v
fn mul_add(x: i128, k: i128, v: i128) -> i128 {
    k.checked_mul(v).and_then(|kv| x.checked_add(kv)).expect(OVERFLOW)
}

// q with |b - q a| <= |a| / 2
fn nearest_quotient(b: i128, a: i128) -> i128 {
    let q = b.div_euclid(a);
    let r = b - q * a;
    if 2 * r > a.abs() { q + a.signum() } else { q }
}

struct Reduction {
    rows: usize,
    cols: usize,
    d: Work,
    p: Work,
    p_inv: Work,
    q: Work,
    q_inv: Work,
}

impl Reduction {
    // Smallest nonzero entry of the remaining block, ties broken by the
    // fill-in count (row nonzeros - 1)(column nonzeros - 1).
    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let (r, c) = (self.rows, self.cols);
        let row_nz: Vec<usize> = (t..r).map(|i| (t..c).filter(|&j| self.d[(i, j)] != 0).count()).collect();
        let col_nz: Vec<usize> = (t..c).map(|j| (t..r).filter(|&i| self.d[(i, j)] != 0).count()).collect();
        let mut best: Option<((u128, usize), (usize, usize))> = None;
        for i in t..r {
            for j in t..c {
                let v = self.d[(i, j)].unsigned_abs();
                if v == 0 {
                    continue;
                }
                let key = (v, (row_nz[i - t] - 1) * (col_nz[j - t] - 1));
                if best.is_none_or(|(k, _)| key < k) {
                    best = Some((key, (i, j)));
                }
            }
        }
        best.map(|(_, at)| at)
    }

    // row_i += k row_j
    fn add_row(&mut self, i: usize, j: usize, k: i128) {
        for m in [&mut self.d, &mut self.p] {
            for col in 0..m.cols {
                m[(i, col)] = mul_add(m[(i, col)], k, m[(j, col)]);
            }
        }
        let m = &mut self.p_inv;
        for row in 0..m.rows() {
            m[(row, j)] = mul_add(m[(row, j)], -k, m[(row, i)]);
        }
    }

    // col_i += k col_j
    fn add_col(&mut self, i: usize, j: usize, k: i128) {
        for m in [&mut self.d, &mut self.q] {
            for row in 0..m.rows() {
                m[(row, i)] = mul_add(m[(row, i)], k, m[(row, j)]);
            }
        }
        let m = &mut self.q_inv;
        for col in 0..m.cols {
            m[(j, col)] = mul_add(m[(j, col)], -k, m[(i, col)]);
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for m in [&mut self.d, &mut self.p] {
            for col in 0..m.cols {
                m.data.swap(i * m.cols + col, j * m.cols + col);
            }
        }
        let m = &mut self.p_inv;
        for row in 0..m.rows() {
            m.data.swap(row * m.cols + i, row * m.cols + j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for m in [&mut self.d, &mut self.q] {
            for row in 0..m.rows() {
                m.data.swap(row * m.cols + i, row * m.cols + j);
            }
        }
        let m = &mut self.q_inv;
        for col in 0..m.cols {
            m.data.swap(i * m.cols + col, j * m.cols + col);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for m in [&mut self.d, &mut self.p] {
            for col in 0..m.cols {
                m[(i, col)] = -m[(i, col)];
            }
        }
        let m = &mut self.p_inv;
        for row in 0..m.rows() {
            m[(row, i)] = -m[(row, i)];
        }
    }
}

impl Smith {
    fn compute(a: &Matrix) -> Smith {
        let (r, c) = (a.rows, a.cols);
        let mut s = Reduction {
            rows: r,
            cols: c,
            d: Work::from(a),
            p: Work::identity(r),
            p_inv: Work::identity(r),
            q: Work::identity(c),
            q_inv: Work::identity(c),
        };
        let mut t = 0;
        while t < r.min(c) {
            loop {
                let Some((pi, pj)) = s.pivot(t) else { break };
                s.swap_rows(t, pi);
                s.swap_cols(t, pj);
                let a = s.d[(t, t)];
                let mut clear = true;
                for i in t + 1..r {
                    let q = nearest_quotient(s.d[(i, t)], a);
                    if q != 0 {
                        s.add_row(i, t, -q);
                    }
                    clear &= s.d[(i, t)] == 0;
                }
                for j in t + 1..c {
                    let q = nearest_quotient(s.d[(t, j)], a);
                    if q != 0 {
                        s.add_col(j, t, -q);
                    }
                    clear &= s.d[(t, j)] == 0;
                }
                if !clear {
                    continue;
                }
                match (t + 1..r).find(|&i| (t + 1..c).any(|j| s.d[(i, j)] % a != 0)) {
                    Some(i) => s.add_row(t, i, 1),
                    None => break,
                }
            }
            if s.d[(t, t)] == 0 {
                break;
            }
            if s.d[(t, t)] < 0 {
                s.negate_row(t);
            }
            t += 1;
        }
        let d = s.d.narrow(r);
        Smith {
            diag: (0..t).map(|i| d[(i, i)]).collect(),
            rank: t,
            d,
            p: s.p.narrow(r),
            p_inv: s.p_inv.narrow(r),
            q: s.q.narrow(c),
            q_inv: s.q_inv.narrow(c),
        }
    }

    pub fn solve(&self, b: &[i64]) -> Option<Vec<i64>> {
        let pb = self.p.mul_vec(b);
        let mut y = vec![0; self.q.rows];
        for (i, &v) in pb.iter().enumerate() {
            if i < self.rank {
                if v % self.diag[i] != 0 {
                    return None;
                }
                y[i] = v / self.diag[i];
            } else if v != 0 {
                return None;
            }
        }
        Some(self.q.mul_vec(&y))
    }
}
