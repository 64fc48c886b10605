use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::combinatorics::{enum_lambda, Partition};
use crate::error::{Error, Result};
use crate::exactla::{Mat, Poly, Subspace};
use crate::polymod::{coords_in, simple_general, Module, ModuleMap};
use crate::schuralg::{Algebra, AlgebraKind, Elem};

const SPLIT_ATTEMPTS: usize = 400;

/// Basic algebra `B = fAf` of a Schur algebra, where `f = Σ_λ f_λ` runs over
/// one primitive idempotent per simple label. `B`-modules are equivalent to
/// `A`-modules through `M ↦ fM`, so every Ext computation is done over `B`.
#[derive(Clone, Debug)]
pub struct BasicAlgebra {
    big: Arc<Algebra>,
    basic: Arc<Algebra>,
    labels: Vec<Partition>,
    /// Vertex of `A` containing `f_λ`.
    vertex: Vec<usize>,
    /// `f_λ` as an element of `A`.
    idem: Vec<Elem>,
    /// Basis element of `B` as an element of `A`.
    elems: Vec<Elem>,
    simples: Vec<Module>,
}

fn restrict_coords(x: &Elem, idx: &[usize]) -> Vec<u32> {
    idx.iter().map(|&b| x[b]).collect()
}

/// `poly(x)` with `unit` as the identity.
fn eval_at(alg: &Algebra, poly: &Poly, x: &Elem, unit: &Elem) -> Elem {
    let mut acc = alg.zero();
    for &c in poly.coef.iter().rev() {
        acc = alg.add(&alg.mul(&acc, x), &alg.scale(c, unit));
    }
    acc
}

/// Minimal polynomial of `x` inside `unit·A·unit`, computed from the
/// coordinates of powers on the basis elements `idx`.
fn min_poly(alg: &Algebra, x: &Elem, unit: &Elem, idx: &[usize]) -> Poly {
    let f = alg.field();
    let mut cols = vec![restrict_coords(unit, idx)];
    let mut cur = unit.clone();
    loop {
        cur = alg.mul(x, &cur);
        cols.push(restrict_coords(&cur, idx));
        let m = Mat::from_cols(f, idx.len(), &cols);
        let ns = m.nullspace();
        if ns.cols() > 0 {
            return Poly::new(ns.col(0)).monic(f);
        }
    }
}

impl BasicAlgebra {
    pub fn new(alg: &Arc<Algebra>) -> Result<Self> {
        let sd = alg.schur().ok_or_else(|| Error::invalid("basic algebra needs a Schur algebra"))?;
        let f = alg.field();
        let labels = enum_lambda(sd.d, sd.n);
        let simples: Vec<Module> = labels.iter().map(|l| simple_general(alg, l)).collect::<Result<_>>()?;
        let mut rng = ChaCha8Rng::seed_from_u64(0xba51c);
        let mut vertex = Vec::new();
        let mut idem = Vec::new();
        for (li, l) in labels.iter().enumerate() {
            let w = l.conjugate().padded(sd.n);
            let v = sd.weight_index(&w).ok_or_else(|| Error::inconsistent("highest weight missing"))?;
            if simples[li].dims()[v] != 1 {
                return Err(Error::inconsistent(format!("highest weight space of F({l}) is not a line")));
            }
            let idx = alg.basis_between(v, v).to_vec();
            let rank_on = |e: &Elem, k: usize| simples[k].act_block(e, v, v).rank();
            let mut fe = alg.basis_elem(alg.idempotent(v));
            let mut tries = 0;
            loop {
                let total: usize = (0..labels.len()).map(|k| rank_on(&fe, k)).sum();
                if total == 1 {
                    break;
                }
                tries += 1;
                if tries > SPLIT_ATTEMPTS {
                    return Err(Error::inconsistent(format!("could not split an idempotent for {l}")));
                }
                let mut y = alg.zero();
                for &b in &idx {
                    y[b] = rng.gen_range(0..f.p());
                }
                let x = alg.mul(&alg.mul(&fe, &y), &fe);
                let m = min_poly(alg, &x, &fe, &idx);
                let deg = m.degree().unwrap_or(0);
                for c in 0..f.p() {
                    let k = m.root_multiplicity(f, c);
                    if k == 0 || k == deg {
                        continue;
                    }
                    let q = Poly::linear(f, c).pow(f, k);
                    let (r, rem) = m.divrem(f, &q);
                    debug_assert!(rem.is_zero());
                    let (_, _, b) = q.ext_gcd(f, &r);
                    let eps = eval_at(alg, &b.mul(f, &r), &x, &fe);
                    let other = alg.sub(&fe, &eps);
                    fe = if rank_on(&eps, li) > 0 { eps } else { other };
                    break;
                }
            }
            if rank_on(&fe, li) != 1 {
                return Err(Error::inconsistent(format!("idempotent for {l} misses its simple")));
            }
            vertex.push(v);
            idem.push(fe);
        }

        // basis of each block f_λ A f_μ
        let nl = labels.len();
        let mut elems: Vec<Elem> = Vec::new();
        let mut ends = Vec::new();
        let mut idempotents = vec![0usize; nl];
        let mut block_basis: Vec<Vec<Option<(Subspace, Vec<usize>)>>> = vec![vec![None; nl]; nl];
        for a in 0..nl {
            for b in 0..nl {
                let idx = alg.basis_between(vertex[a], vertex[b]);
                let cols: Vec<Elem> = idx
                    .iter()
                    .map(|&x| {
                        let y = alg.mul(&alg.mul(&idem[a], &alg.basis_elem(x)), &idem[b]);
                        restrict_coords(&y, idx)
                    })
                    .collect();
                let img = if idx.is_empty() { Mat::zeros(f, 0, 0) } else { Mat::from_cols(f, idx.len(), &cols) };
                let mut chosen: Vec<Vec<u32>> = Vec::new();
                if a == b {
                    // f_λ first, then a basis of the radical of the local ring
                    let v = vertex[a];
                    let sm = &simples[a];
                    let fl = sm.act_block(&idem[a], v, v);
                    let top = fl.image_basis();
                    let chi = |e: &Elem| -> u32 {
                        let w = sm.act_block(e, v, v).mul(&top);
                        let u = top.col(0);
                        let k = u.iter().position(|&z| z != 0).unwrap();
                        f.mul(w.get(k, 0), f.inv(u[k]))
                    };
                    chosen.push(restrict_coords(&idem[a], idx));
                    let fcoords = restrict_coords(&idem[a], idx);
                    let mut rad = Vec::new();
                    for j in 0..img.cols() {
                        let mut e = alg.zero();
                        for (t, &bx) in idx.iter().enumerate() {
                            e[bx] = img.get(t, j);
                        }
                        let c = chi(&e);
                        let col: Vec<u32> =
                            img.col(j).iter().zip(&fcoords).map(|(&z, &fz)| f.sub(z, f.mul(c, fz))).collect();
                        rad.push(col);
                    }
                    if !rad.is_empty() {
                        let r = Mat::from_cols(f, idx.len(), &rad).image_basis();
                        for j in 0..r.cols() {
                            chosen.push(r.col(j));
                        }
                    }
                } else if img.cols() > 0 {
                    let r = img.image_basis();
                    for j in 0..r.cols() {
                        chosen.push(r.col(j));
                    }
                }
                if chosen.is_empty() {
                    continue;
                }
                let basis = Mat::from_cols(f, idx.len(), &chosen);
                let mut ids = Vec::new();
                for c in &chosen {
                    let mut e = alg.zero();
                    for (t, &bx) in idx.iter().enumerate() {
                        e[bx] = c[t];
                    }
                    if a == b && ids.is_empty() {
                        idempotents[a] = elems.len();
                    }
                    ids.push(elems.len());
                    elems.push(e);
                    ends.push((a, b));
                }
                if basis.rank() != basis.cols() {
                    return Err(Error::inconsistent("dependent block basis"));
                }
                block_basis[a][b] = Some((Subspace::new(basis), ids));
            }
        }
        let mut triples = Vec::new();
        for x in 0..elems.len() {
            let (a, b) = ends[x];
            for c in 0..nl {
                let Some((_, ids)) = &block_basis[b][c] else { continue };
                let Some((tsp, tids)) = &block_basis[a][c] else {
                    continue;
                };
                let idx = alg.basis_between(vertex[a], vertex[c]);
                for &y in ids {
                    let prod = alg.mul(&elems[x], &elems[y]);
                    let co = tsp
                        .coords(&restrict_coords(&prod, idx))
                        .ok_or_else(|| Error::inconsistent("block product escapes f A f"))?;
                    for (k, &z) in co.iter().enumerate() {
                        if z != 0 {
                            triples.push((x as u32, y as u32, tids[k] as u32, z));
                        }
                    }
                }
            }
        }
        let generators: Vec<usize> = (0..elems.len()).filter(|x| !idempotents.contains(x)).collect();
        let basic = Algebra::from_parts(
            f,
            nl,
            ends,
            idempotents,
            triples,
            None,
            generators,
            AlgebraKind::Basic { labels: labels.clone() },
        );
        Ok(BasicAlgebra { big: alg.clone(), basic: Arc::new(basic), labels, vertex, idem, elems, simples })
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.big
    }
    pub fn basic(&self) -> &Arc<Algebra> {
        &self.basic
    }
    pub fn labels(&self) -> &[Partition] {
        &self.labels
    }
    pub fn label_index(&self, l: &Partition) -> Option<usize> {
        self.labels.iter().position(|x| x == l)
    }
    pub fn vertex(&self, k: usize) -> usize {
        self.vertex[k]
    }
    pub fn idempotent(&self, k: usize) -> &Elem {
        &self.idem[k]
    }
    /// Basis element `x` of `B` as an element of `A`.
    pub fn lift(&self, x: usize) -> &Elem {
        &self.elems[x]
    }
    pub fn simple(&self, k: usize) -> &Module {
        &self.simples[k]
    }

    /// Cartan matrix `dim f_λ A f_μ`.
    pub fn cartan(&self) -> Vec<Vec<usize>> {
        let n = self.labels.len();
        (0..n).map(|a| (0..n).map(|b| self.basic.basis_between(a, b).len()).collect()).collect()
    }

    /// `fM` as a `B`-module, with the basis of each `f_λ M` chosen inside `M_{v_λ}`.
    pub fn reduce_with_basis(&self, m: &Module) -> Result<(Module, Vec<Mat>)> {
        if !Arc::ptr_eq(m.algebra(), &self.big) {
            return Err(Error::Shape("module over a different algebra".into()));
        }
        let f = self.big.field();
        let nl = self.labels.len();
        let us: Vec<Mat> =
            (0..nl).map(|k| m.act_block(&self.idem[k], self.vertex[k], self.vertex[k]).image_basis()).collect();
        let dims: Vec<usize> = us.iter().map(Mat::cols).collect();
        let action = (0..self.basic.dim())
            .map(|x| {
                let (a, b) = self.basic.ends(x);
                if dims[a] == 0 || dims[b] == 0 {
                    return Ok(Mat::zeros(f, dims[a], dims[b]));
                }
                let img = m.act_block(&self.elems[x], self.vertex[a], self.vertex[b]).mul(&us[b]);
                coords_in(&us[a], &img)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((Module::new(self.basic.clone(), dims, action)?, us))
    }

    pub fn reduce(&self, m: &Module) -> Result<Module> {
        Ok(self.reduce_with_basis(m)?.0)
    }

    /// `f h` for `h: M → N`.
    pub fn reduce_map(&self, h: &ModuleMap, m: &Module, n: &Module) -> Result<ModuleMap> {
        let (_, um) = self.reduce_with_basis(m)?;
        let (_, un) = self.reduce_with_basis(n)?;
        let blocks = (0..self.labels.len())
            .map(|k| coords_in(&un[k], &h.blocks[self.vertex[k]].mul(&um[k])))
            .collect::<Result<_>>()?;
        Ok(ModuleMap { blocks })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schuralg::build_schur_algebra;

    #[test]
    fn basic_algebra_of_s23() {
        let a = build_schur_algebra(2, 3, 3).unwrap();
        let b = BasicAlgebra::new(&a).unwrap();
        assert!(b.basic().check_associativity(200, 1));
        assert!(b.basic().check_unit());
        // each simple reduces to a one-dimensional module at its own vertex
        for k in 0..b.labels().len() {
            let s = b.reduce(b.simple(k)).unwrap();
            let mut e = vec![0; b.labels().len()];
            e[k] = 1;
            assert_eq!(s.dims(), &e[..]);
        }
        // labels (2,1), (1,1,1): the Cartan matrix is D^T D for D = [[1,1],[0,1]]
        assert_eq!(b.cartan(), vec![vec![2, 1], vec![1, 1]]);
    }

    #[test]
    fn semisimple_case_is_diagonal() {
        let a = build_schur_algebra(2, 2, 3).unwrap();
        let b = BasicAlgebra::new(&a).unwrap();
        assert_eq!(b.cartan(), vec![vec![1, 0], vec![0, 1]]);
    }
}
