use std::collections::BTreeMap;

use super::dense::Mat;
use super::field::Fp;

/// Sparse vector as sorted `(index, value)` pairs with non-zero values.
pub type SparseVec = Vec<(u32, u32)>;

/// Column-major coordinate-list matrix over GF(p).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMat {
    f: Fp,
    rows: usize,
    cols: Vec<SparseVec>,
}

impl SparseMat {
    pub fn zeros(f: Fp, rows: usize, ncols: usize) -> Self {
        SparseMat { f, rows, cols: vec![Vec::new(); ncols] }
    }

    pub fn from_dense(m: &Mat) -> Self {
        let cols = (0..m.cols())
            .map(|j| {
                (0..m.rows())
                    .filter_map(|i| {
                        let v = m.get(i, j);
                        (v != 0).then_some((i as u32, v))
                    })
                    .collect()
            })
            .collect();
        SparseMat { f: m.field(), rows: m.rows(), cols }
    }

    /// Build from unsorted triplets; duplicate entries are summed.
    pub fn from_triplets(
        f: Fp,
        rows: usize,
        ncols: usize,
        trip: impl IntoIterator<Item = (usize, usize, u32)>,
    ) -> Self {
        let mut acc: Vec<BTreeMap<u32, u32>> = vec![BTreeMap::new(); ncols];
        for (i, j, v) in trip {
            assert!(i < rows && j < ncols, "triplet out of range");
            let e = acc[j].entry(i as u32).or_insert(0);
            *e = f.add(*e, v % f.p());
        }
        let cols = acc.into_iter().map(|c| c.into_iter().filter(|&(_, v)| v != 0).collect()).collect();
        SparseMat { f, rows, cols }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn ncols(&self) -> usize {
        self.cols.len()
    }
    pub fn col(&self, j: usize) -> &SparseVec {
        &self.cols[j]
    }
    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn to_dense(&self) -> Mat {
        let mut m = Mat::zeros(self.f, self.rows, self.cols.len());
        for (j, c) in self.cols.iter().enumerate() {
            for &(i, v) in c {
                m.set(i as usize, j, v);
            }
        }
        m
    }

    /// `self * x` for a dense right factor.
    pub fn mul_dense(&self, x: &Mat) -> Mat {
        assert_eq!(self.cols.len(), x.rows(), "shape mismatch in sparse mul");
        let f = self.f;
        let mut out = Mat::zeros(f, self.rows, x.cols());
        for (k, c) in self.cols.iter().enumerate() {
            for j in 0..x.cols() {
                let b = x.get(k, j);
                if b == 0 {
                    continue;
                }
                for &(i, v) in c {
                    out.add_at(i as usize, j, f.mul(v, b));
                }
            }
        }
        out
    }

    /// Column echelon reduction: returns the rank and a kernel basis (as sparse
    /// combinations of columns).
    fn eliminate(&self) -> (usize, Vec<SparseVec>) {
        let f = self.f;
        // pivot lead row -> (reduced column, combination of original columns)
        let mut pivots: BTreeMap<u32, (SparseVec, SparseVec)> = BTreeMap::new();
        let mut kernel = Vec::new();
        for (j, c) in self.cols.iter().enumerate() {
            let mut v = c.clone();
            let mut comb: SparseVec = vec![(j as u32, 1)];
            while let Some(&(lead, lv)) = v.first() {
                match pivots.get(&lead) {
                    Some((pv, pc)) => {
                        // pivot columns are normalised to lead value 1
                        let c = f.neg(lv);
                        v = axpy_sparse(f, &v, c, pv);
                        comb = axpy_sparse(f, &comb, c, pc);
                    }
                    None => break,
                }
            }
            match v.first() {
                None => kernel.push(comb),
                Some(&(lead, lv)) => {
                    let inv = f.inv(lv);
                    let v = v.into_iter().map(|(i, x)| (i, f.mul(x, inv))).collect();
                    let comb = comb.into_iter().map(|(i, x)| (i, f.mul(x, inv))).collect();
                    pivots.insert(lead, (v, comb));
                }
            }
        }
        (pivots.len(), kernel)
    }

    pub fn rank(&self) -> usize {
        self.eliminate().0
    }

    /// Columns form a basis of the right kernel.
    pub fn nullspace(&self) -> Mat {
        let (_, ker) = self.eliminate();
        let mut m = Mat::zeros(self.f, self.cols.len(), ker.len());
        for (k, v) in ker.iter().enumerate() {
            for &(i, x) in v {
                m.set(i as usize, k, x);
            }
        }
        m
    }
}

/// `a + c * b` on sorted sparse vectors.
pub fn axpy_sparse(f: Fp, a: &SparseVec, c: u32, b: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i]);
            i += 1;
        } else if take_b {
            let v = f.mul(c, b[j].1);
            if v != 0 {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = f.add(a[i].1, f.mul(c, b[j].1));
            if v != 0 {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dense_roundtrip_and_rank() {
        let f = Fp::new(5).unwrap();
        let m = Mat::from_rows(f, &[vec![1, 2, 0], vec![2, 4, 0], vec![0, 0, 3]]);
        let s = SparseMat::from_dense(&m);
        assert_eq!(s.to_dense(), m);
        assert_eq!(s.rank(), 2);
        let ns = s.nullspace();
        assert_eq!(ns.cols(), 1);
        assert!(m.mul(&ns).is_zero());
    }

    #[test]
    fn triplets_accumulate() {
        let f = Fp::new(3).unwrap();
        let s = SparseMat::from_triplets(f, 2, 2, [(0, 0, 1), (0, 0, 2), (1, 1, 1)]);
        assert_eq!(s.nnz(), 1);
        assert_eq!(s.to_dense(), Mat::from_rows(f, &[vec![0, 0], vec![0, 1]]));
    }
}
