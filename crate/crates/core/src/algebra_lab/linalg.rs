use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::field::Fp;

/// A dense matrix over `F_p`, row-major. A matrix with `rows = dim W` and
/// `cols = dim V` is a linear map `V → W` acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u32>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// The matrix whose columns are the given vectors of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<u32>]) -> Self {
        let mut m = Mat::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length");
            for (i, &v) in c.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn apply(&self, f: Fp, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| {
                let row = &self.data[i * self.cols..(i + 1) * self.cols];
                row.iter().zip(v).fold(0, |acc, (&a, &b)| f.mul_add(acc, a, b))
            })
            .collect()
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn mul(&self, f: Fp, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "matrix sizes");
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * out.cols + j;
                    out.data[idx] = f.mul_add(out.data[idx], a, other.get(k, j));
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self, f: Fp) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| m.get(i, c) != 0) else { continue };
            for j in 0..m.cols {
                m.data.swap(r * m.cols + j, p * m.cols + j);
            }
            let inv = f.inv(m.get(r, c));
            for j in 0..m.cols {
                let v = f.mul(m.get(r, j), inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                let factor = m.get(i, c);
                if i == r || factor == 0 {
                    continue;
                }
                for j in 0..m.cols {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self, f: Fp) -> usize {
        self.rref(f).1.len()
    }

    /// A basis of `{v : self·v = 0}`.
    pub fn nullspace(&self, f: Fp) -> Vec<Vec<u32>> {
        let (r, pivots) = self.rref(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![0; self.cols];
                v[fc] = 1;
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(r.get(row, fc));
                }
                v
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn inverse(&self, f: Fp) -> Option<Mat> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Mat::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let (r, pivots) = aug.rref(f);
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut inv = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j));
            }
        }
        Some(inv)
    }
}

/// A sparse vector: sorted `(index, nonzero value)` pairs.
pub type Sparse = Vec<(usize, u32)>;

/// Adds `c·v` into an accumulator.
pub fn axpy(f: Fp, acc: &mut BTreeMap<usize, u32>, c: u32, v: &[(usize, u32)]) {
    if c == 0 {
        return;
    }
    for &(i, x) in v {
        let e = acc.entry(i).or_insert(0);
        *e = f.mul_add(*e, c, x);
        if *e == 0 {
            acc.remove(&i);
        }
    }
}

pub fn sparse_from(acc: BTreeMap<usize, u32>) -> Sparse {
    acc.into_iter().filter(|&(_, v)| v != 0).collect()
}

/// Incremental row echelon form over sparse rows. Each stored row has a
/// leading coefficient 1 in its pivot column, the smallest column it uses.
#[derive(Clone, Debug)]
pub struct Echelon {
    f: Fp,
    cols: usize,
    pivots: HashMap<usize, Sparse>,
}

impl Echelon {
    pub fn new(f: Fp, cols: usize) -> Self {
        Echelon { f, cols, pivots: HashMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `v` modulo the stored rows; the result has no entry in a pivot column.
    pub fn reduce(&self, v: &[(usize, u32)]) -> Sparse {
        let f = self.f;
        let mut acc: BTreeMap<usize, u32> = v.iter().copied().filter(|&(_, x)| x != 0).collect();
        let mut done = BTreeMap::new();
        while let Some((c, x)) = acc.pop_first() {
            match self.pivots.get(&c) {
                Some(row) => {
                    let factor = f.neg(x);
                    axpy(f, &mut acc, factor, &row[1..]);
                }
                None => {
                    done.insert(c, x);
                }
            }
        }
        sparse_from(done)
    }

    /// Adds a row; returns whether it was independent of the earlier ones.
    pub fn insert(&mut self, v: &[(usize, u32)]) -> bool {
        let r = self.reduce(v);
        let Some(&(lead, x)) = r.first() else { return false };
        let inv = self.f.inv(x);
        let row: Sparse = r.iter().map(|&(c, y)| (c, self.f.mul(y, inv))).collect();
        self.pivots.insert(lead, row);
        true
    }

    pub fn is_pivot(&self, c: usize) -> bool {
        self.pivots.contains_key(&c)
    }

    pub fn cols(&self) -> usize {
        self.cols
    }
}

/// The quotient of `F_p^cols` by the span of some relation rows, with
/// coordinates given by the non-pivot columns.
#[derive(Clone, Debug)]
pub struct Quotient {
    f: Fp,
    echelon: Echelon,
    free: Vec<usize>,
    position: HashMap<usize, usize>,
}

impl Quotient {
    pub fn new(echelon: Echelon) -> Self {
        let free: Vec<usize> = (0..echelon.cols()).filter(|&c| !echelon.is_pivot(c)).collect();
        let position = free.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        Quotient { f: echelon.f, echelon, free, position }
    }

    pub fn dim(&self) -> usize {
        self.free.len()
    }

    /// Generator column of quotient basis vector `j`.
    pub fn basis_column(&self, j: usize) -> usize {
        self.free[j]
    }

    pub fn project(&self, v: &[(usize, u32)]) -> Vec<u32> {
        let mut out = vec![0; self.dim()];
        for (c, x) in self.echelon.reduce(v) {
            out[self.position[&c]] = x;
        }
        out
    }

    pub fn is_zero(&self, v: &[(usize, u32)]) -> bool {
        self.echelon.reduce(v).is_empty()
    }

    pub fn field(&self) -> Fp {
        self.f
    }
}
