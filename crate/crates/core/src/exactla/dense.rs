use std::fmt;

use super::field::Fp;
use crate::error::{Error, Result};

/// Dense row-major matrix over GF(p).
#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    f: Fp,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(fm, "Mat {}x{} over GF({})", self.rows, self.cols, self.f.p())?;
        for i in 0..self.rows {
            writeln!(fm, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

impl Mat {
    pub fn zeros(f: Fp, rows: usize, cols: usize) -> Self {
        Mat { f, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(f: Fp, n: usize) -> Self {
        let mut m = Mat::zeros(f, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % f.p();
        }
        m
    }

    pub fn from_vec(f: Fp, rows: usize, cols: usize, data: Vec<u32>) -> Self {
        assert_eq!(data.len(), rows * cols);
        debug_assert!(data.iter().all(|&x| x < f.p()));
        Mat { f, rows, cols, data }
    }

    /// Build from signed integer rows, reducing mod p.
    pub fn from_rows(f: Fp, rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Mat::zeros(f, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &x) in row.iter().enumerate() {
                m.data[i * c + j] = f.reduce_i64(x);
            }
        }
        m
    }

    /// Matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_cols(f: Fp, rows: usize, cols: &[Vec<u32>]) -> Self {
        let mut m = Mat::zeros(f, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for i in 0..rows {
                m.data[i * cols.len() + j] = c[i];
            }
        }
        m
    }

    #[inline]
    pub fn field(&self) -> Fp {
        self.f
    }
    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }
    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }
    #[inline]
    pub fn data(&self) -> &[u32] {
        &self.data
    }
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }
    #[inline]
    pub fn add_at(&mut self, i: usize, j: usize, v: u32) {
        let k = i * self.cols + j;
        self.data[k] = self.f.add(self.data[k], v);
    }
    #[inline]
    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.f, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    fn check_same_shape(&self, o: &Mat) -> Result<()> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::Shape(format!("{}x{} vs {}x{}", self.rows, self.cols, o.rows, o.cols)));
        }
        Ok(())
    }

    pub fn try_add(&self, o: &Mat) -> Result<Mat> {
        self.check_same_shape(o)?;
        let f = self.f;
        let data = self.data.iter().zip(&o.data).map(|(&a, &b)| f.add(a, b)).collect();
        Ok(Mat { f, rows: self.rows, cols: self.cols, data })
    }

    pub fn add(&self, o: &Mat) -> Mat {
        self.try_add(o).expect("shape mismatch in add")
    }

    pub fn sub(&self, o: &Mat) -> Mat {
        self.check_same_shape(o).expect("shape mismatch in sub");
        let f = self.f;
        let data = self.data.iter().zip(&o.data).map(|(&a, &b)| f.sub(a, b)).collect();
        Mat { f, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: u32) -> Mat {
        let f = self.f;
        Mat { f, rows: self.rows, cols: self.cols, data: self.data.iter().map(|&a| f.mul(a, c)).collect() }
    }

    /// `self += c * o`
    pub fn axpy(&mut self, c: u32, o: &Mat) {
        self.check_same_shape(o).expect("shape mismatch in axpy");
        if c == 0 {
            return;
        }
        let f = self.f;
        for (a, &b) in self.data.iter_mut().zip(&o.data) {
            if b != 0 {
                *a = f.add(*a, f.mul(c, b));
            }
        }
    }

    pub fn try_mul(&self, o: &Mat) -> Result<Mat> {
        if self.cols != o.rows {
            return Err(Error::Shape(format!("cannot multiply {}x{} by {}x{}", self.rows, self.cols, o.rows, o.cols)));
        }
        let p = self.f.p() as u64;
        let (n, m, k) = (self.rows, o.cols, self.cols);
        let mut acc = vec![0u64; m];
        let mut out = Mat::zeros(self.f, n, m);
        for i in 0..n {
            acc.iter_mut().for_each(|x| *x = 0);
            let arow = self.row(i);
            for (l, &a) in arow.iter().enumerate().take(k) {
                if a == 0 {
                    continue;
                }
                let a = a as u64;
                let brow = &o.data[l * m..(l + 1) * m];
                for (x, &b) in acc.iter_mut().zip(brow) {
                    *x += a * b as u64;
                }
            }
            for (j, x) in acc.iter().enumerate() {
                out.data[i * m + j] = (x % p) as u32;
            }
        }
        Ok(out)
    }

    pub fn mul(&self, o: &Mat) -> Mat {
        self.try_mul(o).expect("shape mismatch in mul")
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols, "shape mismatch in mul_vec");
        let p = self.f.p() as u64;
        (0..self.rows)
            .map(|i| {
                let s: u64 = self.row(i).iter().zip(v).map(|(&a, &b)| a as u64 * b as u64).sum();
                (s % p) as u32
            })
            .collect()
    }

    /// Kronecker (tensor) product.
    pub fn kron(&self, o: &Mat) -> Mat {
        let f = self.f;
        let mut out = Mat::zeros(f, self.rows * o.rows, self.cols * o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..o.rows {
                    for l in 0..o.cols {
                        out.set(i * o.rows + k, j * o.cols + l, f.mul(a, o.get(k, l)));
                    }
                }
            }
        }
        out
    }

    /// Block-diagonal direct sum.
    pub fn direct_sum(&self, o: &Mat) -> Mat {
        let mut out = Mat::zeros(self.f, self.rows + o.rows, self.cols + o.cols);
        out.paste(0, 0, self);
        out.paste(self.rows, self.cols, o);
        out
    }

    pub fn paste(&mut self, r0: usize, c0: usize, o: &Mat) {
        assert!(r0 + o.rows <= self.rows && c0 + o.cols <= self.cols);
        for i in 0..o.rows {
            let dst = (r0 + i) * self.cols + c0;
            self.data[dst..dst + o.cols].copy_from_slice(o.row(i));
        }
    }

    pub fn hstack(&self, o: &Mat) -> Mat {
        assert_eq!(self.rows, o.rows, "hstack row mismatch");
        let mut out = Mat::zeros(self.f, self.rows, self.cols + o.cols);
        out.paste(0, 0, self);
        out.paste(0, self.cols, o);
        out
    }

    pub fn vstack(&self, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.cols, "vstack col mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&o.data);
        Mat { f: self.f, rows: self.rows + o.rows, cols: self.cols, data }
    }

    pub fn select_cols(&self, idx: &[usize]) -> Mat {
        let mut out = Mat::zeros(self.f, self.rows, idx.len());
        for i in 0..self.rows {
            for (k, &j) in idx.iter().enumerate() {
                out.data[i * idx.len() + k] = self.get(i, j);
            }
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> Mat {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        Mat { f: self.f, rows: idx.len(), cols: self.cols, data }
    }

    /// Reduced row echelon form with pivot columns. Pivoting takes the first
    /// non-zero entry at or below the current row.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let piv = m.rref_in_place();
        (m, piv)
    }

    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.f;
        let p = f.p() as u64;
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if pr != r {
                for j in c..cols {
                    self.data.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(self.data[r * cols + c]);
            if inv != 1 {
                for j in c..cols {
                    let k = r * cols + j;
                    self.data[k] = f.mul(self.data[k], inv);
                }
            }
            let (before, rest) = self.data.split_at_mut(r * cols);
            let (prow, after) = rest.split_at_mut(cols);
            let eliminate = |row: &mut [u32]| {
                let factor = row[c];
                if factor == 0 {
                    return;
                }
                let neg = p - factor as u64;
                for j in c..cols {
                    if prow[j] != 0 {
                        row[j] = ((row[j] as u64 + neg * prow[j] as u64) % p) as u32;
                    }
                }
            };
            before.chunks_mut(cols).for_each(eliminate);
            after.chunks_mut(cols).for_each(eliminate);
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        // eliminate along the shorter side
        if self.rows > self.cols {
            self.transpose().rref().1.len()
        } else {
            self.rref().1.len()
        }
    }

    /// Columns form a basis of the right kernel.
    pub fn nullspace(&self) -> Mat {
        let (r, piv) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !piv.contains(c)).collect();
        let mut out = Mat::zeros(self.f, self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            out.set(fc, k, 1);
            for (pi, &pc) in piv.iter().enumerate() {
                let v = r.get(pi, fc);
                if v != 0 {
                    out.set(pc, k, self.f.neg(v));
                }
            }
        }
        out
    }

    /// Columns form a basis of the column space (chosen among the original columns).
    pub fn image_basis(&self) -> Mat {
        let (_, piv) = self.rref();
        self.select_cols(&piv)
    }

    /// Solve `self * x = b`; `None` iff `b` is not in the column space.
    pub fn solve(&self, b: &[u32]) -> Option<Vec<u32>> {
        let bm = Mat::from_cols(self.f, self.rows, &[b.to_vec()]);
        self.solve_mat(&bm).map(|x| x.col(0))
    }

    /// Solve `self * X = B` column by column simultaneously.
    pub fn solve_mat(&self, b: &Mat) -> Option<Mat> {
        assert_eq!(self.rows, b.rows, "solve shape mismatch");
        let aug = self.hstack(b);
        let (r, piv) = aug.rref();
        if piv.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = Mat::zeros(self.f, self.cols, b.cols);
        for (i, &pc) in piv.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, r.get(i, self.cols + j));
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Mat> {
        if self.rows != self.cols {
            return None;
        }
        self.solve_mat(&Mat::identity(self.f, self.rows)).filter(|x| self.mul(x) == Mat::identity(self.f, self.rows))
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }
}

/// A subspace of GF(p)^m with a fixed basis (columns of `basis`), prepared for
/// fast coordinate extraction and for choosing a standard-vector complement.
#[derive(Clone, Debug)]
pub struct Subspace {
    basis: Mat,
    pivot_rows: Vec<usize>,
    pivot_inv: Mat,
    complement: Vec<usize>,
}

impl Subspace {
    /// `basis` must have full column rank.
    pub fn new(basis: Mat) -> Self {
        let (_, piv) = basis.transpose().rref();
        assert_eq!(piv.len(), basis.cols(), "Subspace basis is not independent");
        let pivot_inv = basis.select_rows(&piv).inverse().expect("pivot block invertible");
        let complement = (0..basis.rows()).filter(|i| !piv.contains(i)).collect();
        Subspace { basis, pivot_rows: piv, pivot_inv, complement }
    }

    /// Span of arbitrary columns (dependent columns dropped).
    pub fn span(m: &Mat) -> Self {
        Subspace::new(m.image_basis())
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.rows()
    }
    pub fn dim(&self) -> usize {
        self.basis.cols()
    }
    pub fn basis(&self) -> &Mat {
        &self.basis
    }
    /// Indices `j` such that the standard vectors `e_j` complete the basis.
    pub fn complement(&self) -> &[usize] {
        &self.complement
    }

    /// Coordinates of `v` in the basis, without a membership check.
    pub fn coords_unchecked(&self, v: &[u32]) -> Vec<u32> {
        let vp: Vec<u32> = self.pivot_rows.iter().map(|&i| v[i]).collect();
        self.pivot_inv.mul_vec(&vp)
    }

    pub fn coords(&self, v: &[u32]) -> Option<Vec<u32>> {
        let x = self.coords_unchecked(v);
        (self.basis.mul_vec(&x) == v).then_some(x)
    }

    /// Coordinates of all columns of `m`; `None` if some column is outside.
    pub fn coords_mat(&self, m: &Mat) -> Option<Mat> {
        let x = self.coords_unchecked_mat(m);
        (self.basis.mul(&x) == *m).then_some(x)
    }

    pub fn coords_unchecked_mat(&self, m: &Mat) -> Mat {
        self.pivot_inv.mul(&m.select_rows(&self.pivot_rows))
    }

    /// Split `v = basis * x + sum_j y_j e_j` over the complement; returns `y`.
    pub fn residue(&self, v: &[u32]) -> Vec<u32> {
        let f = self.basis.field();
        let x = self.coords_unchecked(v);
        let sx = self.basis.mul_vec(&x);
        self.complement.iter().map(|&j| f.sub(v[j], sx[j])).collect()
    }

    pub fn residue_mat(&self, m: &Mat) -> Mat {
        let x = self.coords_unchecked_mat(m);
        let sx = self.basis.mul(&x);
        m.sub(&sx).select_rows(&self.complement)
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.coords(v).is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> Fp {
        Fp::new(p).unwrap()
    }

    #[test]
    fn rref_identity_and_rank_one() {
        let id = Mat::identity(f(5), 3);
        let (r, piv) = id.rref();
        assert_eq!(r, id);
        assert_eq!(piv, vec![0, 1, 2]);

        let m = Mat::from_rows(f(5), &[vec![1, 2], vec![2, 4]]);
        let (r, piv) = m.rref();
        assert_eq!(r, Mat::from_rows(f(5), &[vec![1, 2], vec![0, 0]]));
        assert_eq!(piv, vec![0]);

        let z = Mat::zeros(f(5), 2, 3);
        let (r, piv) = z.rref();
        assert_eq!(r, z);
        assert!(piv.is_empty());
    }

    #[test]
    fn nullspace_examples() {
        assert_eq!(Mat::identity(f(7), 4).nullspace().cols(), 0);
        let m = Mat::from_rows(f(5), &[vec![1, 2], vec![2, 4]]);
        let ns = m.nullspace();
        assert_eq!(ns.cols(), 1);
        assert!(m.mul(&ns).is_zero());
        // (3,1) up to scalar
        let v = ns.col(0);
        let s = f(5).inv(v[1]);
        assert_eq!([f(5).mul(v[0], s), 1], [3, 1]);
        assert_eq!(Mat::zeros(f(3), 1, 3).nullspace().cols(), 3);
    }

    #[test]
    fn solve_and_image() {
        let id = Mat::identity(f(5), 3);
        assert_eq!(id.solve(&[1, 2, 3]), Some(vec![1, 2, 3]));
        let m = Mat::from_rows(f(5), &[vec![1], vec![2]]);
        let im = m.image_basis();
        assert_eq!(im.col(0), vec![1, 2]);
        assert_eq!(m.solve(&[1, 1]), None);
        let k = Mat::from_rows(f(3), &[vec![2]]).kron(&Mat::identity(f(3), 2));
        assert_eq!(k, Mat::identity(f(3), 2).scale(2));
    }

    #[test]
    fn subspace_residue_and_coords() {
        let b = Mat::from_rows(f(3), &[vec![1, 0], vec![1, 1], vec![0, 2]]);
        let s = Subspace::new(b.clone());
        assert_eq!(s.dim(), 2);
        assert_eq!(s.complement().len(), 1);
        let v = b.mul_vec(&[2, 1]);
        assert_eq!(s.coords(&v), Some(vec![2, 1]));
        assert!(s.residue(&v).iter().all(|&x| x == 0));
        assert!(!s.contains(&[0, 0, 1]) || s.complement() != [2]);
    }

    #[test]
    fn inverse_roundtrip() {
        let m = Mat::from_rows(f(7), &[vec![2, 1], vec![1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Mat::identity(f(7), 2));
        assert!(Mat::from_rows(f(7), &[vec![1, 2], vec![2, 4]]).inverse().is_none());
    }
}
