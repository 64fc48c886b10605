//! Finite-dimensional algebras with a complete set of orthogonal "vertex"
//! idempotents and a basis adapted to them, and the Schur algebra `S(n,d)`
//! realised as `Σ_d`-invariant operators on `V^{⊗d}`.

mod build;
mod cache;

use std::collections::HashMap;

use crate::exactla::{Fp, Mat};

pub use build::{build_schur_algebra, build_schur_algebra_cached, multi_indices, pair_matrix, MAX_TENSOR_DIM};
pub use cache::{cache_dir_from_env, read_cache, write_cache};

/// Dense element of an algebra: one coefficient per basis element.
pub type Elem = Vec<u32>;

/// Extra data carried by a Schur algebra.
#[derive(Clone, Debug)]
pub struct SchurData {
    pub n: usize,
    pub d: usize,
    /// Weight (composition of `d` into `n` parts) of each vertex.
    pub weights: Vec<Vec<usize>>,
    /// Orbit matrix (row-major `n x n`) of each basis element.
    pub mats: Vec<Vec<u8>>,
    weight_index: HashMap<Vec<usize>, usize>,
    mat_index: HashMap<Vec<u8>, usize>,
}

impl SchurData {
    pub fn weight_index(&self, w: &[usize]) -> Option<usize> {
        self.weight_index.get(w).copied()
    }
    pub fn mat_index(&self, m: &[u8]) -> Option<usize> {
        self.mat_index.get(m).copied()
    }
}

#[derive(Clone, Debug)]
pub enum AlgebraKind {
    Schur(SchurData),
    /// Basic algebra `fAf` of another algebra; vertices are labelled by the
    /// partitions of the projective indecomposables.
    Basic {
        labels: Vec<crate::combinatorics::Partition>,
    },
}

/// Algebra over GF(p) whose basis elements `b` each satisfy
/// `e_t b e_s = b` for a pair of vertex idempotents `(t, s)`.
#[derive(Clone, Debug)]
pub struct Algebra {
    f: Fp,
    n_vertices: usize,
    ends: Vec<(usize, usize)>,
    idempotents: Vec<usize>,
    /// `mult[a]`: sorted by `b`, list of `(b, [(c, coef)])`.
    mult: Vec<Vec<(u32, Vec<(u32, u32)>)>>,
    transpose: Option<Vec<usize>>,
    by_pair: Vec<Vec<usize>>,
    generators: Vec<usize>,
    kind: AlgebraKind,
}

impl Algebra {
    /// Assemble from raw data. `triples` lists non-zero structure constants
    /// `b_a b_b = Σ coef b_c`.
    pub(crate) fn from_parts(
        f: Fp,
        n_vertices: usize,
        ends: Vec<(usize, usize)>,
        idempotents: Vec<usize>,
        mut triples: Vec<(u32, u32, u32, u32)>,
        transpose: Option<Vec<usize>>,
        generators: Vec<usize>,
        kind: AlgebraKind,
    ) -> Self {
        let dim = ends.len();
        triples.sort_unstable();
        let mut mult: Vec<Vec<(u32, Vec<(u32, u32)>)>> = vec![Vec::new(); dim];
        for (a, b, c, z) in triples {
            let z = z % f.p();
            if z == 0 {
                continue;
            }
            let row = &mut mult[a as usize];
            match row.last_mut() {
                Some((bb, list)) if *bb == b => match list.last_mut() {
                    Some((cc, zz)) if *cc == c => *zz = f.add(*zz, z),
                    _ => list.push((c, z)),
                },
                _ => row.push((b, vec![(c, z)])),
            }
        }
        for row in &mut mult {
            for (_, list) in row.iter_mut() {
                list.retain(|&(_, z)| z != 0);
            }
            row.retain(|(_, l)| !l.is_empty());
        }
        let mut by_pair = vec![Vec::new(); n_vertices * n_vertices];
        for (i, &(t, s)) in ends.iter().enumerate() {
            by_pair[t * n_vertices + s].push(i);
        }
        Algebra { f, n_vertices, ends, idempotents, mult, transpose, by_pair, generators, kind }
    }

    pub fn field(&self) -> Fp {
        self.f
    }
    pub fn dim(&self) -> usize {
        self.ends.len()
    }
    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }
    /// `(target vertex, source vertex)` of a basis element.
    pub fn ends(&self, b: usize) -> (usize, usize) {
        self.ends[b]
    }
    pub fn idempotent(&self, v: usize) -> usize {
        self.idempotents[v]
    }
    pub fn idempotents(&self) -> &[usize] {
        &self.idempotents
    }
    /// Basis elements in `e_t A e_s`.
    pub fn basis_between(&self, t: usize, s: usize) -> &[usize] {
        &self.by_pair[t * self.n_vertices + s]
    }
    /// Non-idempotent basis elements which together with the vertex
    /// idempotents generate the algebra.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }
    pub fn kind(&self) -> &AlgebraKind {
        &self.kind
    }
    pub fn schur(&self) -> Option<&SchurData> {
        match &self.kind {
            AlgebraKind::Schur(s) => Some(s),
            _ => None,
        }
    }
    pub fn has_transpose(&self) -> bool {
        self.transpose.is_some()
    }
    /// The anti-automorphism `ξ_C ↦ ξ_{C^T}`. Panics if absent.
    pub fn transpose_elt(&self, b: usize) -> usize {
        self.transpose.as_ref().expect("algebra has no transpose")[b]
    }

    /// Number of stored non-zero structure constants.
    pub fn nnz(&self) -> usize {
        self.mult.iter().flat_map(|r| r.iter().map(|(_, l)| l.len())).sum()
    }

    /// Structure constants as `(a, b, c, coef)`.
    pub fn triples(&self) -> impl Iterator<Item = (u32, u32, u32, u32)> + '_ {
        self.mult
            .iter()
            .enumerate()
            .flat_map(|(a, row)| row.iter().flat_map(move |(b, l)| l.iter().map(move |&(c, z)| (a as u32, *b, c, z))))
    }

    /// `b_a b_b` as a sparse list.
    pub fn basis_product(&self, a: usize, b: usize) -> &[(u32, u32)] {
        let row = &self.mult[a];
        match row.binary_search_by_key(&(b as u32), |(x, _)| *x) {
            Ok(k) => &row[k].1,
            Err(_) => &[],
        }
    }

    pub fn zero(&self) -> Elem {
        vec![0; self.dim()]
    }

    pub fn basis_elem(&self, b: usize) -> Elem {
        let mut e = self.zero();
        e[b] = 1;
        e
    }

    pub fn one(&self) -> Elem {
        let mut e = self.zero();
        for &i in &self.idempotents {
            e[i] = 1;
        }
        e
    }

    pub fn mul(&self, x: &Elem, y: &Elem) -> Elem {
        let f = self.f;
        let p = f.p() as u64;
        let mut acc = vec![0u64; self.dim()];
        for (a, &xa) in x.iter().enumerate() {
            if xa == 0 {
                continue;
            }
            for (b, list) in &self.mult[a] {
                let yb = y[*b as usize];
                if yb == 0 {
                    continue;
                }
                let w = (xa as u64 * yb as u64) % p;
                for &(c, z) in list {
                    let slot = &mut acc[c as usize];
                    *slot += w * z as u64;
                    if *slot >= 1 << 62 {
                        *slot %= p;
                    }
                }
            }
        }
        acc.into_iter().map(|v| f.reduce_u64(v)).collect()
    }

    pub fn add(&self, x: &Elem, y: &Elem) -> Elem {
        x.iter().zip(y).map(|(&a, &b)| self.f.add(a, b)).collect()
    }

    pub fn scale(&self, c: u32, x: &Elem) -> Elem {
        x.iter().map(|&a| self.f.mul(a, c)).collect()
    }

    pub fn sub(&self, x: &Elem, y: &Elem) -> Elem {
        x.iter().zip(y).map(|(&a, &b)| self.f.sub(a, b)).collect()
    }

    pub fn transpose_elem(&self, x: &Elem) -> Elem {
        let mut out = self.zero();
        for (b, &v) in x.iter().enumerate() {
            if v != 0 {
                out[self.transpose_elt(b)] = v;
            }
        }
        out
    }

    /// Verifies associativity on a deterministic sample of basis triples.
    pub fn check_associativity(&self, samples: usize, seed: u64) -> bool {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let dim = self.dim();
        for _ in 0..samples {
            let a = rng.gen_range(0..dim);
            // pick composable partners so that the check is not vacuous
            let (_, s) = self.ends(a);
            let row: Vec<usize> = (0..self.n_vertices).flat_map(|t| self.basis_between(s, t).to_vec()).collect();
            let b = row[rng.gen_range(0..row.len())];
            let (_, s2) = self.ends(b);
            let row2: Vec<usize> = (0..self.n_vertices).flat_map(|t| self.basis_between(s2, t).to_vec()).collect();
            let c = row2[rng.gen_range(0..row2.len())];
            let (ea, eb, ec) = (self.basis_elem(a), self.basis_elem(b), self.basis_elem(c));
            if self.mul(&self.mul(&ea, &eb), &ec) != self.mul(&ea, &self.mul(&eb, &ec)) {
                return false;
            }
        }
        true
    }

    /// Unit check: every vertex idempotent acts as identity on its side.
    pub fn check_unit(&self) -> bool {
        let one = self.one();
        (0..self.dim()).all(|b| {
            let e = self.basis_elem(b);
            self.mul(&one, &e) == e && self.mul(&e, &one) == e
        })
    }

    /// The subalgebra generated by the vertex idempotents and
    /// `generators()` is everything.
    pub fn generators_span(&self) -> bool {
        let f = self.f;
        let dim = self.dim();
        let mut span: Vec<Elem> = self.idempotents.iter().map(|&i| self.basis_elem(i)).collect();
        span.extend(self.generators.iter().map(|&g| self.basis_elem(g)));
        let mut basis = Mat::from_cols(f, dim, &span).image_basis();
        loop {
            let cur = basis.cols();
            let mut cols: Vec<Elem> = (0..cur).map(|j| basis.col(j)).collect();
            for &g in &self.generators {
                let ge = self.basis_elem(g);
                for j in 0..cur {
                    let w = self.mul(&ge, &basis.col(j));
                    if w.iter().any(|&x| x != 0) {
                        cols.push(w);
                    }
                }
            }
            basis = Mat::from_cols(f, dim, &cols).image_basis();
            if basis.cols() == dim {
                return true;
            }
            if basis.cols() == cur {
                return false;
            }
        }
    }

    /// Truncation idempotent of `S(m,d)` onto the weights supported on the
    /// first `n` coordinates, as a dense element.
    pub fn truncation_idempotent(&self, n: usize) -> crate::Result<Elem> {
        let s = self.schur().ok_or_else(|| crate::Error::invalid("truncation needs a Schur algebra"))?;
        if n >= s.n || n == 0 {
            return Err(crate::Error::invalid(format!("truncation to {n} columns from {} needs 0 < n < m", s.n)));
        }
        let mut e = self.zero();
        for (v, w) in s.weights.iter().enumerate() {
            if w[n..].iter().all(|&x| x == 0) {
                e[self.idempotents[v]] = 1;
            }
        }
        Ok(e)
    }

    /// Vertices of `S(m,d)` kept by the truncation to `n` columns.
    pub fn truncation_vertices(&self, n: usize) -> Vec<usize> {
        let s = self.schur().expect("Schur algebra");
        (0..self.n_vertices).filter(|&v| s.weights[v][n..].iter().all(|&x| x == 0)).collect()
    }

    /// Basis relabelling `S(n,d) → e S(m,d) e`: pad each orbit matrix with
    /// zeros. Returns `None` entries never; panics on parameter mismatch.
    pub fn truncation_relabel(&self, small: &Algebra) -> crate::Result<Vec<usize>> {
        let big = self.schur().ok_or_else(|| crate::Error::invalid("not a Schur algebra"))?;
        let sm = small.schur().ok_or_else(|| crate::Error::invalid("not a Schur algebra"))?;
        if sm.d != big.d || sm.n >= big.n || self.f != small.f {
            return Err(crate::Error::invalid("truncation parameters do not match"));
        }
        let (n, m) = (sm.n, big.n);
        sm.mats
            .iter()
            .map(|c| {
                let mut pad = vec![0u8; m * m];
                for r in 0..n {
                    for s in 0..n {
                        pad[r * m + s] = c[r * n + s];
                    }
                }
                big.mat_index(&pad).ok_or_else(|| crate::Error::inconsistent("padded matrix missing"))
            })
            .collect()
    }

    /// Vertex map `S(n,d) → S(m,d)` matching the relabelling.
    pub fn truncation_vertex_map(&self, small: &Algebra) -> crate::Result<Vec<usize>> {
        let big = self.schur().ok_or_else(|| crate::Error::invalid("not a Schur algebra"))?;
        let sm = small.schur().ok_or_else(|| crate::Error::invalid("not a Schur algebra"))?;
        sm.weights
            .iter()
            .map(|w| {
                let mut pad = w.clone();
                pad.resize(big.n, 0);
                big.weight_index(&pad).ok_or_else(|| crate::Error::inconsistent("padded weight missing"))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::binomial;

    #[test]
    fn dimensions() {
        let a = build_schur_algebra(2, 3, 3).unwrap();
        assert_eq!(a.dim(), 20);
        let a = build_schur_algebra(1, 4, 5).unwrap();
        assert_eq!(a.dim(), 1);
        let a = build_schur_algebra(3, 5, 5).unwrap();
        assert_eq!(a.dim(), 1287);
        assert_eq!(a.dim() as u64, binomial(13, 5));
    }

    #[test]
    fn idempotents_and_unit() {
        let a = build_schur_algebra(2, 3, 3).unwrap();
        let s = a.schur().unwrap();
        assert_eq!(s.weights, vec![vec![3, 0], vec![2, 1], vec![1, 2], vec![0, 3]]);
        for (i, &x) in a.idempotents().iter().enumerate() {
            for (j, &y) in a.idempotents().iter().enumerate() {
                let prod = a.mul(&a.basis_elem(x), &a.basis_elem(y));
                if i == j {
                    assert_eq!(prod, a.basis_elem(x));
                } else {
                    assert!(prod.iter().all(|&v| v == 0));
                }
            }
        }
        assert!(a.check_unit());
        assert!(a.check_associativity(200, 1));
    }

    #[test]
    fn transpose_is_anti_automorphism() {
        let a = build_schur_algebra(2, 3, 5).unwrap();
        for &e in a.idempotents() {
            assert_eq!(a.transpose_elt(e), e);
        }
        for x in 0..a.dim() {
            assert_eq!(a.transpose_elt(a.transpose_elt(x)), x);
            for y in 0..a.dim() {
                let (ex, ey) = (a.basis_elem(x), a.basis_elem(y));
                let lhs = a.transpose_elem(&a.mul(&ex, &ey));
                let rhs = a.mul(&a.transpose_elem(&ey), &a.transpose_elem(&ex));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn truncation_matches_smaller_algebra() {
        let big = build_schur_algebra(3, 3, 3).unwrap();
        let small = build_schur_algebra(2, 3, 3).unwrap();
        let e = big.truncation_idempotent(2).unwrap();
        assert_eq!(big.mul(&e, &e), e);
        let rel = big.truncation_relabel(&small).unwrap();
        assert_eq!(rel.len(), 20);
        // structure constants agree under the relabelling
        for a in 0..small.dim() {
            for b in 0..small.dim() {
                let lhs: Vec<(u32, u32)> =
                    small.basis_product(a, b).iter().map(|&(c, z)| (rel[c as usize] as u32, z)).collect();
                let mut lhs = lhs;
                lhs.sort();
                assert_eq!(lhs, big.basis_product(rel[a], rel[b]).to_vec());
            }
        }
        // dim eAe
        let cnt = (0..big.dim())
            .filter(|&b| {
                let (t, s) = big.ends(b);
                big.truncation_vertices(2).contains(&t) && big.truncation_vertices(2).contains(&s)
            })
            .count();
        assert_eq!(cnt, 20);
        let b31 = build_schur_algebra(3, 1, 3).unwrap();
        let e = b31.truncation_idempotent(1).unwrap();
        let ee: Vec<usize> =
            (0..b31.dim()).filter(|&b| b31.mul(&b31.mul(&e, &b31.basis_elem(b)), &e)[b] != 0).collect();
        assert_eq!(ee.len(), 1);
    }

    #[test]
    fn generators_generate() {
        for (n, d, p) in [(2, 3, 3), (3, 3, 2), (2, 5, 5), (3, 4, 3)] {
            let a = build_schur_algebra(n, d, p).unwrap();
            assert!(a.generators_span(), "generators fail for {n},{d},{p}");
        }
    }
}
