use std::fmt;

use super::vector::{LatticeVector, Scalar};

/// Dense integer matrix in row-major order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IntMatrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> IntMatrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, S::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<S>>, cols: usize) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix rows");
            data.extend(row);
        }
        Self { rows: n, cols, data }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&c| S::from_i64_exact(c)).collect())
                .collect(),
            cols,
        )
    }

    /// Matrix whose rows are the given vectors.
    pub fn from_vectors(vectors: &[LatticeVector<S>], cols: usize) -> Self {
        Self::from_rows(vectors.iter().map(|v| v.coords().to_vec()).collect(), cols)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: S) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vector(&self, i: usize) -> LatticeVector<S> {
        LatticeVector::new(self.row(i).to_vec())
    }

    pub fn row_vectors(&self) -> Vec<LatticeVector<S>> {
        (0..self.rows).map(|i| self.row_vector(i)).collect()
    }

    pub fn is_zero_row(&self, i: usize) -> bool {
        self.row(i).iter().all(|c| c.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j).clone() + a.clone() * other.get(k, j).clone();
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, v: &LatticeVector<S>) -> LatticeVector<S> {
        assert_eq!(v.dim(), self.rows);
        let mut out = vec![S::zero(); self.cols];
        for (i, c) in v.coords().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o = o.clone() + c.clone() * self.get(i, j).clone();
            }
        }
        LatticeVector::new(out)
    }

    /// Matrix times column vector.
    pub fn apply(&self, v: &LatticeVector<S>) -> LatticeVector<S> {
        assert_eq!(v.dim(), self.cols);
        LatticeVector::new(
            (0..self.rows)
                .map(|i| {
                    self.row(i)
                        .iter()
                        .zip(v.coords())
                        .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
                })
                .collect(),
        )
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j).clone();
            self.set(i, j, v);
        }
    }

    pub fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -self.get(i, j).clone();
            self.set(i, j, v);
        }
    }

    /// `row[target] += k * row[source]`
    pub fn add_row_multiple(&mut self, target: usize, source: usize, k: &S) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = self.get(target, j).clone() + k.clone() * self.get(source, j).clone();
            self.set(target, j, v);
        }
    }

    /// `col[target] += k * col[source]`
    pub fn add_col_multiple(&mut self, target: usize, source: usize, k: &S) {
        if k.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = self.get(i, target).clone() + k.clone() * self.get(i, source).clone();
            self.set(i, target, v);
        }
    }

    /// Replace rows `a`, `b` by `(s*a + t*b, p*a + q*b)`.
    pub fn combine_rows(&mut self, a: usize, b: usize, s: &S, t: &S, p: &S, q: &S) {
        for j in 0..self.cols {
            let x = self.get(a, j).clone();
            let y = self.get(b, j).clone();
            self.set(a, j, s.clone() * x.clone() + t.clone() * y.clone());
            self.set(b, j, p.clone() * x + q.clone() * y);
        }
    }

    /// Replace columns `a`, `b` by `(s*a + t*b, p*a + q*b)`.
    pub fn combine_cols(&mut self, a: usize, b: usize, s: &S, t: &S, p: &S, q: &S) {
        for i in 0..self.rows {
            let x = self.get(i, a).clone();
            let y = self.get(i, b).clone();
            self.set(i, a, s.clone() * x.clone() + t.clone() * y.clone());
            self.set(i, b, p.clone() * x + q.clone() * y);
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> S {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return S::one();
        }
        let mut m = self.clone();
        let mut sign = S::one();
        let mut prev = S::one();
        for k in 0..n - 1 {
            if m.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !m.get(i, k).is_zero()) {
                    Some(i) => {
                        m.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return S::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (m.get(i, j).clone() * m.get(k, k).clone()
                        - m.get(i, k).clone() * m.get(k, j).clone())
                        / prev.clone();
                    m.set(i, j, v);
                }
                m.set(i, k, S::zero());
            }
            prev = m.get(k, k).clone();
        }
        sign * m.get(n - 1, n - 1).clone()
    }

    /// Classical adjugate: `A * adj(A) = det(A) * I`.
    pub fn adjugate(&self) -> Self {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut adj = Self::zeros(n, n);
        if n == 1 {
            adj.set(0, 0, S::one());
            return adj;
        }
        for i in 0..n {
            for j in 0..n {
                let minor = Self::from_rows(
                    (0..n)
                        .filter(|&r| r != i)
                        .map(|r| {
                            (0..n)
                                .filter(|&c| c != j)
                                .map(|c| self.get(r, c).clone())
                                .collect()
                        })
                        .collect(),
                    n - 1,
                );
                let mut cof = minor.determinant();
                if (i + j) % 2 == 1 {
                    cof = -cof;
                }
                adj.set(j, i, cof);
            }
        }
        adj
    }
}

impl<S: Scalar> fmt::Display for IntMatrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", self.row_vector(i))?;
        }
        write!(f, "]")
    }
}
