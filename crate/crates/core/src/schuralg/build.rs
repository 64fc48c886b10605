use std::collections::HashMap;
use std::path::Path;
use std::sync::Arc;

use rayon::prelude::*;

use super::{cache, Algebra, AlgebraKind, SchurData};
use crate::combinatorics::compositions;
use crate::error::{Error, Result};
use crate::exactla::Fp;

/// Largest `n^d` for which the tensor space is materialised.
pub const MAX_TENSOR_DIM: usize = 1_000_000;

/// All multi-indices in `{0..n-1}^d`, ordered so that position in the list
/// equals the base-`n` value with the first slot most significant.
pub fn multi_indices(n: usize, d: usize) -> Vec<Vec<u8>> {
    let total = n.pow(d as u32);
    (0..total)
        .map(|mut x| {
            let mut v = vec![0u8; d];
            for t in (0..d).rev() {
                v[t] = (x % n) as u8;
                x /= n;
            }
            v
        })
        .collect()
}

/// Row-major `n x n` matrix counting positions `t` with `(i_t, j_t) = (r, s)`.
pub fn pair_matrix(n: usize, i: &[u8], j: &[u8]) -> Vec<u8> {
    let mut m = vec![0u8; n * n];
    for (&a, &b) in i.iter().zip(j) {
        m[a as usize * n + b as usize] += 1;
    }
    m
}

fn representative(n: usize, c: &[u8]) -> (Vec<u8>, Vec<u8>) {
    let (mut i, mut j) = (Vec::new(), Vec::new());
    for r in 0..n {
        for s in 0..n {
            for _ in 0..c[r * n + s] {
                i.push(r as u8);
                j.push(s as u8);
            }
        }
    }
    (i, j)
}

struct Skeleton {
    data: SchurData,
    ends: Vec<(usize, usize)>,
    idempotents: Vec<usize>,
    transpose: Vec<usize>,
    generators: Vec<usize>,
}

fn skeleton(n: usize, d: usize) -> Result<Skeleton> {
    if n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    if d > u8::MAX as usize {
        return Err(Error::invalid("degree too large"));
    }
    let weights = compositions(d, n);
    let weight_index: HashMap<Vec<usize>, usize> = weights.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    let mut mats: Vec<(usize, usize, Vec<u8>)> = compositions(d, n * n)
        .into_iter()
        .map(|c| {
            let m: Vec<u8> = c.iter().map(|&x| x as u8).collect();
            let rows: Vec<usize> = (0..n).map(|r| (0..n).map(|s| m[r * n + s] as usize).sum()).collect();
            let cols: Vec<usize> = (0..n).map(|s| (0..n).map(|r| m[r * n + s] as usize).sum()).collect();
            (weight_index[&rows], weight_index[&cols], m)
        })
        .collect();
    mats.sort_by_key(|(t, s, _)| (*t, *s));
    let ends: Vec<(usize, usize)> = mats.iter().map(|(t, s, _)| (*t, *s)).collect();
    let mats: Vec<Vec<u8>> = mats.into_iter().map(|(_, _, m)| m).collect();
    let mat_index: HashMap<Vec<u8>, usize> = mats.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let idempotents = weights
        .iter()
        .map(|w| {
            let mut m = vec![0u8; n * n];
            for r in 0..n {
                m[r * n + r] = w[r] as u8;
            }
            mat_index[&m]
        })
        .collect();
    let transpose = mats
        .iter()
        .map(|m| {
            let mut t = vec![0u8; n * n];
            for r in 0..n {
                for s in 0..n {
                    t[s * n + r] = m[r * n + s];
                }
            }
            mat_index[&t]
        })
        .collect();
    // divided powers of the simple root operators: one adjacent
    // off-diagonal entry on top of a diagonal matrix
    let generators = (0..mats.len())
        .filter(|&b| {
            let m = &mats[b];
            let off: Vec<(usize, usize)> =
                (0..n * n).filter(|&x| x / n != x % n && m[x] != 0).map(|x| (x / n, x % n)).collect();
            off.len() == 1 && off[0].0.abs_diff(off[0].1) == 1
        })
        .collect();
    let data = SchurData { n, d, weights, mats, weight_index, mat_index };
    Ok(Skeleton { data, ends, idempotents, transpose, generators })
}

fn structure_constants(n: usize, d: usize, data: &SchurData) -> Vec<(u32, u32, u32, u32)> {
    let ks = multi_indices(n, d);
    data.mats
        .par_iter()
        .enumerate()
        .flat_map_iter(|(c, m)| {
            let (i, j) = representative(n, m);
            let mut count: HashMap<(u32, u32), u32> = HashMap::new();
            for k in &ks {
                let a = data.mat_index[&pair_matrix(n, &i, k)] as u32;
                let b = data.mat_index[&pair_matrix(n, k, &j)] as u32;
                *count.entry((a, b)).or_insert(0) += 1;
            }
            count.into_iter().map(move |((a, b), z)| (a, b, c as u32, z))
        })
        .collect()
}

fn check_guard(n: usize, d: usize) -> Result<()> {
    let t = (n as f64).powi(d as i32);
    if t > MAX_TENSOR_DIM as f64 {
        return Err(Error::ResourceGuard(format!("n^d = {n}^{d} exceeds {MAX_TENSOR_DIM}")));
    }
    Ok(())
}

/// Build `S(n,d)` over GF(p) from its action on `V^{⊗d}`.
pub fn build_schur_algebra(n: usize, d: usize, p: u32) -> Result<Arc<Algebra>> {
    let f = Fp::new(p)?;
    check_guard(n, d)?;
    let sk = skeleton(n, d)?;
    let triples = structure_constants(n, d, &sk.data);
    Ok(Arc::new(assemble(f, sk, triples)))
}

fn assemble(f: Fp, sk: Skeleton, triples: Vec<(u32, u32, u32, u32)>) -> Algebra {
    Algebra::from_parts(
        f,
        sk.data.weights.len(),
        sk.ends,
        sk.idempotents,
        triples,
        Some(sk.transpose),
        sk.generators,
        AlgebraKind::Schur(sk.data),
    )
}

/// As [`build_schur_algebra`], reading and writing structure constants in
/// `dir`. A corrupt or mismatched cache file is rebuilt.
pub fn build_schur_algebra_cached(n: usize, d: usize, p: u32, dir: &Path) -> Result<Arc<Algebra>> {
    let f = Fp::new(p)?;
    check_guard(n, d)?;
    let sk = skeleton(n, d)?;
    let dim = sk.ends.len();
    let path = cache::cache_path(dir, n, d, p);
    if let Ok(triples) = cache::read_cache(&path, n, d, p, dim) {
        return Ok(Arc::new(assemble(f, sk, triples)));
    }
    let triples = structure_constants(n, d, &sk.data);
    let alg = assemble(f, sk, triples);
    // a failed cache write only costs a rebuild next time
    let _ = cache::write_cache(&path, n, d, p, &alg);
    Ok(Arc::new(alg))
}
