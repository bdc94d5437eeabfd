//! Dense linear algebra over a [`Field`]: reduced row spaces and small matrices.

use crate::field::{Field, Scalar};

/// A subspace of `k^width`, stored as a fully reduced row echelon basis.
#[derive(Clone, Debug)]
pub struct RowSpace {
    field: Field,
    width: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn new(field: &Field, width: usize) -> Self {
        RowSpace { field: field.clone(), width, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn from_vectors<'a, I>(field: &Field, width: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = &'a Vec<Scalar>>,
    {
        let mut s = Self::new(field, width);
        for v in vectors {
            s.insert(v.clone());
        }
        s
    }

    /// The whole space `k^width`.
    pub fn full(field: &Field, width: usize) -> Self {
        let mut s = Self::new(field, width);
        for i in 0..width {
            let mut v = vec![0; width];
            v[i] = 1;
            s.rows.push(v);
            s.pivots.push(i);
        }
        s
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.width
    }

    /// Reduced basis, sorted by pivot column.
    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Normal form of `v` modulo the space.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut w = v.to_vec();
        self.reduce_in_place(&mut w);
        w
    }

    pub fn reduce_in_place(&self, w: &mut [Scalar]) {
        let f = &self.field;
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let a = w[c];
            if a != 0 {
                f.axpy(w, f.neg(a), row, c);
            }
        }
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let f = &self.field;
        let mut w = v.to_vec();
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let a = w[c];
            if a != 0 {
                f.axpy(&mut w, f.neg(a), row, c);
            }
        }
        w.iter().all(|&x| x == 0)
    }

    /// Coordinates of `v` in [`basis`](Self::basis), if `v` lies in the space.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let coords: Vec<Scalar> = self.pivots.iter().map(|&c| v[c]).collect();
        if self.reduce(v).iter().all(|&x| x == 0) {
            Some(coords)
        } else {
            None
        }
    }

    /// Adds `v` to the space. Returns `true` if the dimension grew.
    pub fn insert(&mut self, mut v: Vec<Scalar>) -> bool {
        debug_assert_eq!(v.len(), self.width);
        self.reduce_in_place(&mut v);
        let Some(c) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let f = self.field.clone();
        let inv = f.inv(v[c]).unwrap();
        f.scale_slice(&mut v[c..], inv);
        for row in self.rows.iter_mut() {
            let a = row[c];
            if a != 0 {
                f.axpy(row, f.neg(a), &v, c);
            }
        }
        let at = self.pivots.partition_point(|&q| q < c);
        self.pivots.insert(at, c);
        self.rows.insert(at, v);
        true
    }

    pub fn contains_space(&self, other: &RowSpace) -> bool {
        other.rows.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &RowSpace) -> RowSpace {
        let mut s = self.clone();
        for v in &other.rows {
            s.insert(v.clone());
        }
        s
    }

    /// Intersection by the Zassenhaus algorithm.
    pub fn intersect(&self, other: &RowSpace) -> RowSpace {
        let w = self.width;
        let mut big = RowSpace::new(&self.field, 2 * w);
        for v in &self.rows {
            let mut r = v.clone();
            r.extend_from_slice(v);
            big.insert(r);
        }
        for v in &other.rows {
            let mut r = v.clone();
            r.resize(2 * w, 0);
            big.insert(r);
        }
        let mut out = RowSpace::new(&self.field, w);
        for (row, &c) in big.rows.iter().zip(&big.pivots) {
            if c >= w {
                out.insert(row[w..].to_vec());
            }
        }
        out
    }
}

impl PartialEq for RowSpace {
    fn eq(&self, other: &Self) -> bool {
        self.width == other.width && self.pivots == other.pivots && self.rows == other.rows
    }
}

impl Eq for RowSpace {}

/// Coefficient vectors `c` with `sum_i c_i rows[i] = 0`, as a basis of that kernel.
pub fn left_kernel(field: &Field, rows: &[Vec<Scalar>], width: usize) -> Vec<Vec<Scalar>> {
    let m = rows.len();
    let mut aug = RowSpace::new(field, width + m);
    for (i, r) in rows.iter().enumerate() {
        let mut v = r.clone();
        v.resize(width + m, 0);
        v[width + i] = 1;
        aug.insert(v);
    }
    aug.rows
        .iter()
        .zip(&aug.pivots)
        .filter(|(_, &c)| c >= width)
        .map(|(r, _)| r[width..].to_vec())
        .collect()
}

/// A dense row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Scalar>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend_from_slice(r);
        }
        Matrix { rows: rows.len(), cols, data }
    }

    /// Matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(columns: &[Vec<Scalar>]) -> Self {
        Self::from_rows(columns).transpose()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, field: &Field, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a != 0 {
                    field.axpy(dst, a, other.row(k), 0);
                }
            }
        }
        out
    }

    pub fn apply(&self, field: &Field, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        let mut out = vec![0; self.rows];
        for (j, &x) in v.iter().enumerate() {
            if x != 0 {
                for i in 0..self.rows {
                    let a = self.get(i, j);
                    if a != 0 {
                        out[i] = field.add(out[i], field.mul(a, x));
                    }
                }
            }
        }
        out
    }

    /// Basis of `{v : A v = 0}`.
    pub fn kernel(&self, field: &Field) -> Vec<Vec<Scalar>> {
        let rs = RowSpace::from_vectors(field, self.cols, (0..self.rows).map(|i| self.row(i).to_vec()).collect::<Vec<_>>().iter());
        let pivots = rs.pivots();
        let mut is_pivot = vec![false; self.cols];
        for &c in pivots {
            is_pivot[c] = true;
        }
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0; self.cols];
            v[free] = 1;
            for (row, &c) in rs.basis().iter().zip(pivots) {
                v[c] = field.neg(row[free]);
            }
            out.push(v);
        }
        out
    }

    pub fn rank(&self, field: &Field) -> usize {
        let mut rs = RowSpace::new(field, self.cols);
        for i in 0..self.rows {
            rs.insert(self.row(i).to_vec());
        }
        rs.dim()
    }

    pub fn inverse(&self, field: &Field) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = RowSpace::new(field, 2 * n);
        for i in 0..n {
            let mut v = self.row(i).to_vec();
            v.resize(2 * n, 0);
            v[n + i] = 1;
            aug.insert(v);
        }
        if aug.pivots().iter().take(n).enumerate().any(|(i, &c)| c != i) || aug.dim() < n {
            return None;
        }
        let rows: Vec<Vec<Scalar>> = aug.basis()[..n].iter().map(|r| r[n..].to_vec()).collect();
        Some(Matrix::from_rows(&rows))
    }

    pub fn is_invertible(&self, field: &Field) -> bool {
        self.rows == self.cols && self.rank(field) == self.rows
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> Field {
        Field::prime(5).unwrap()
    }

    #[test]
    fn insert_and_reduce() {
        let f = f5();
        let mut s = RowSpace::new(&f, 3);
        assert!(s.insert(vec![1, 2, 3]));
        assert!(s.insert(vec![0, 1, 1]));
        assert!(!s.insert(vec![1, 3, 4]));
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&[2, 4, 1]));
        assert!(!s.contains(&[0, 0, 1]));
        assert_eq!(s.basis(), &[vec![1, 0, 1], vec![0, 1, 1]]);
    }

    #[test]
    fn coordinates_roundtrip() {
        let f = f5();
        let s = RowSpace::from_vectors(&f, 4, [vec![1, 2, 0, 3], vec![0, 1, 4, 1]].iter());
        let v: Vec<Scalar> = (0..4).map(|k| f.add(f.mul(3, s.basis()[0][k]), f.mul(2, s.basis()[1][k]))).collect();
        assert_eq!(s.coordinates(&v), Some(vec![3, 2]));
        assert_eq!(s.coordinates(&[0, 0, 0, 1]), None);
    }

    #[test]
    fn intersection_dimension() {
        let f = f5();
        let a = RowSpace::from_vectors(&f, 4, [vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 0]].iter());
        let b = RowSpace::from_vectors(&f, 4, [vec![0, 1, 1, 1], vec![0, 0, 1, 0], vec![0, 0, 0, 1]].iter());
        let c = a.intersect(&b);
        assert_eq!(c.dim(), 2);
        assert_eq!(a.sum(&b).dim(), 4);
        for v in c.basis() {
            assert!(a.contains(v) && b.contains(v));
        }
    }

    #[test]
    fn kernels() {
        let f = f5();
        let rows = vec![vec![1, 2, 3], vec![2, 4, 1], vec![3, 1, 2]];
        let lk = left_kernel(&f, &rows, 3);
        assert_eq!(lk.len(), 1);
        for c in &lk {
            let mut s = vec![0; 3];
            for (i, r) in rows.iter().enumerate() {
                f.axpy(&mut s, c[i], r, 0);
            }
            assert_eq!(s, vec![0, 0, 0]);
        }
        let m = Matrix::from_rows(&rows);
        let k = m.kernel(&f);
        assert_eq!(k.len(), 1);
        assert_eq!(m.apply(&f, &k[0]), vec![0, 0, 0]);
        assert_eq!(m.rank(&f), 2);
        assert!(m.inverse(&f).is_none());
    }

    #[test]
    fn inverse_works() {
        let f = f5();
        let m = Matrix::from_rows(&[vec![1, 2], vec![3, 4]]);
        let inv = m.inverse(&f).unwrap();
        assert_eq!(m.mul(&f, &inv), Matrix::identity(2));
    }
}
