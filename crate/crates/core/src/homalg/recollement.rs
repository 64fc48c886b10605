use std::sync::Arc;

use super::basic_for;
use super::resolution::{ext_dims, minimal_resolution, ExtTable, FreeModule};
use crate::error::{Error, Result};
use crate::exactla::{Mat, SparseMat};
use crate::polymod::{coords_in, hom_space, restrict_map, CochainComplex, Module, ModuleMap};
use crate::schuralg::Algebra;

/// The truncation `S(m,d) → S(n,d) = e S(m,d) e` and its adjoints.
#[derive(Clone, Debug)]
pub struct Recollement {
    big: Arc<Algebra>,
    small: Arc<Algebra>,
    rel: Vec<usize>,
    vmap: Vec<usize>,
}

/// `j_* N` together with the data needed to push maps through it.
#[derive(Clone, Debug)]
pub struct LowerStar {
    pub module: Module,
    /// Per big vertex `u`: `(small vertex, big basis element, offset)` for
    /// each unknown block `φ(x) ∈ N_v`.
    slots: Vec<Vec<(usize, usize, usize)>>,
    /// Per big vertex: solutions of the linearity equations (columns).
    kernels: Vec<Mat>,
}

impl Recollement {
    pub fn new(big: &Arc<Algebra>, small: &Arc<Algebra>) -> Result<Self> {
        let rel = big.truncation_relabel(small)?;
        let vmap = big.truncation_vertex_map(small)?;
        Ok(Recollement { big: big.clone(), small: small.clone(), rel, vmap })
    }

    pub fn big(&self) -> &Arc<Algebra> {
        &self.big
    }
    pub fn small(&self) -> &Arc<Algebra> {
        &self.small
    }

    fn check_big(&self, m: &Module) -> Result<()> {
        if !Arc::ptr_eq(m.algebra(), &self.big) {
            return Err(Error::Shape("module is not over the big algebra".into()));
        }
        Ok(())
    }

    fn check_small(&self, n: &Module) -> Result<()> {
        if !Arc::ptr_eq(n.algebra(), &self.small) {
            return Err(Error::Shape("module is not over the truncated algebra".into()));
        }
        Ok(())
    }

    /// `j^* M = eM`.
    pub fn jstar(&self, m: &Module) -> Result<Module> {
        self.check_big(m)?;
        let mut out = m.restrict(self.small.clone(), &self.rel, &self.vmap)?;
        if let Some(l) = m.label() {
            out.set_label(l.clone());
        }
        Ok(out)
    }

    pub fn jstar_map(&self, h: &ModuleMap) -> ModuleMap {
        ModuleMap { blocks: self.vmap.iter().map(|&v| h.blocks[v].clone()).collect() }
    }

    /// `j_* N = Hom_{eAe}(eA, N)` with `(aφ)(x) = φ(xa)`.
    pub fn jlowerstar(&self, n: &Module) -> Result<LowerStar> {
        self.check_small(n)?;
        let big = &self.big;
        let f = big.field();
        let nbv = big.n_vertices();
        let nsv = self.small.n_vertices();
        let mut slots = Vec::with_capacity(nbv);
        let mut kernels = Vec::with_capacity(nbv);
        for u in 0..nbv {
            let mut sl = Vec::new();
            let mut pos = std::collections::HashMap::new();
            let mut off = 0;
            for v in 0..nsv {
                for &x in big.basis_between(self.vmap[v], u) {
                    pos.insert(x, off);
                    sl.push((v, x, off));
                    off += n.dims()[v];
                }
            }
            let mut trip = Vec::new();
            let mut row = 0;
            for &s in self.small.generators() {
                let (t, s0) = self.small.ends(s);
                let (nt, ns) = (n.dims()[t], n.dims()[s0]);
                if nt == 0 {
                    continue;
                }
                let act = n.action(s);
                for &x in big.basis_between(self.vmap[s0], u) {
                    let ox = pos[&x];
                    // Σ_z c_z φ(z) - N(s) φ(x) = 0
                    for &(z, c) in big.basis_product(self.rel[s], x) {
                        let oz = pos[&(z as usize)];
                        for r in 0..nt {
                            trip.push((row + r, oz + r, c));
                        }
                    }
                    for r in 0..nt {
                        for k in 0..ns {
                            let a = act.get(r, k);
                            if a != 0 {
                                trip.push((row + r, ox + k, f.neg(a)));
                            }
                        }
                    }
                    row += nt;
                }
            }
            let ker = if off == 0 {
                Mat::zeros(f, 0, 0)
            } else if row == 0 {
                Mat::identity(f, off)
            } else {
                SparseMat::from_triplets(f, row, off, trip).nullspace()
            };
            slots.push(sl);
            kernels.push(ker);
        }
        let dims: Vec<usize> = kernels.iter().map(Mat::cols).collect();
        let offsets_len: Vec<usize> = kernels.iter().map(Mat::rows).collect();
        let action = (0..big.dim())
            .map(|a| {
                let (u1, u) = big.ends(a);
                if dims[u1] == 0 || dims[u] == 0 {
                    return Ok(Mat::zeros(f, dims[u1], dims[u]));
                }
                let pos: std::collections::HashMap<usize, usize> = slots[u].iter().map(|&(_, x, o)| (x, o)).collect();
                let mut t = Mat::zeros(f, offsets_len[u1], offsets_len[u]);
                for &(v, x1, o1) in &slots[u1] {
                    for &(z, c) in big.basis_product(x1, a) {
                        let oz = pos[&(z as usize)];
                        for r in 0..n.dims()[v] {
                            t.add_at(o1 + r, oz + r, c);
                        }
                    }
                }
                coords_in(&kernels[u1], &t.mul(&kernels[u]))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut module = Module::new(big.clone(), dims, action)?;
        if let Some(l) = n.label() {
            module.set_label(l.clone());
        }
        Ok(LowerStar { module, slots, kernels })
    }

    /// `j_*(g) = g ∘ -` for `g: N → N'`.
    pub fn jlowerstar_map(&self, g: &ModuleMap, src: &LowerStar, tgt: &LowerStar) -> Result<ModuleMap> {
        let f = self.big.field();
        let blocks = (0..self.big.n_vertices())
            .map(|u| {
                let (ks, kt) = (&src.kernels[u], &tgt.kernels[u]);
                if ks.cols() == 0 || kt.cols() == 0 {
                    return Ok(Mat::zeros(f, kt.cols(), ks.cols()));
                }
                let mut t = Mat::zeros(f, kt.rows(), ks.rows());
                for (&(v, x, os), &(v2, x2, ot)) in src.slots[u].iter().zip(&tgt.slots[u]) {
                    debug_assert!(v == v2 && x == x2);
                    t.paste(ot, os, &g.blocks[v]);
                }
                coords_in(kt, &t.mul(ks))
            })
            .collect::<Result<_>>()?;
        Ok(ModuleMap { blocks })
    }

    /// `j_! N = Ae ⊗_{eAe} N`, as a free module on a basis of `N` modulo
    /// the relations `s·[n] = [s n]` for the truncated generators `s`.
    pub fn jshriek(&self, n: &Module) -> Result<Module> {
        self.check_small(n)?;
        let big = &self.big;
        let f = big.field();
        let nsv = self.small.n_vertices();
        let mut gens = Vec::new();
        let mut copy = vec![Vec::new(); nsv];
        for v in 0..nsv {
            for _ in 0..n.dims()[v] {
                copy[v].push(gens.len());
                gens.push(self.vmap[v]);
            }
        }
        let free = FreeModule::new(big, gens)?;
        let fm = &free.module;
        let nbv = big.n_vertices();
        let mut cols: Vec<Vec<Vec<u32>>> = vec![Vec::new(); nbv];
        for &s in self.small.generators() {
            let (t, s0) = self.small.ends(s);
            let ut = self.vmap[t];
            let act = n.action(s);
            for j in 0..n.dims()[s0] {
                let mut r = free.element(ut, &[(copy[s0][j], &big.basis_elem(self.rel[s]))]);
                let unit = big.basis_elem(big.idempotent(ut));
                for k in 0..n.dims()[t] {
                    let c = act.get(k, j);
                    if c != 0 {
                        let e = free.element(ut, &[(copy[t][k], &unit)]);
                        for (ri, ei) in r.iter_mut().zip(e) {
                            *ri = f.sub(*ri, f.mul(c, ei));
                        }
                    }
                }
                if r.iter().all(|&z| z == 0) {
                    continue;
                }
                for w in 0..nbv {
                    for &a in big.basis_between(w, ut) {
                        let v = fm.action(a).mul_vec(&r);
                        if v.iter().any(|&z| z != 0) {
                            cols[w].push(v);
                        }
                    }
                }
            }
        }
        let bases: Vec<Mat> = (0..nbv)
            .map(|w| {
                if cols[w].is_empty() {
                    Mat::zeros(f, fm.dims()[w], 0)
                } else {
                    Mat::from_cols(f, fm.dims()[w], &cols[w]).image_basis()
                }
            })
            .collect();
        let (mut q, _) = fm.quotient(bases)?;
        if let Some(l) = n.label() {
            q.set_label(l.clone());
        }
        Ok(q)
    }

    /// `H^q(R j_* N)` for `q ≤ qmax`, from the dual of a projective
    /// resolution of `N^#`.
    pub fn r_jlowerstar_cohomology(&self, n: &Module, qmax: usize) -> Result<Vec<Module>> {
        let (objs, maps) = self.rj_complex(n, qmax)?;
        let c = CochainComplex::new(0, objs, maps)?;
        c.check()?;
        let mut h = c.cohomology()?;
        // a complete resolution may stop early
        h.resize_with(qmax + 1, || Module::zero(self.big.clone()));
        Ok(h)
    }

    /// `j_* I^0 → ⋯ → j_* I^{qmax+1}` for an injective resolution `I` of `N`.
    pub fn rj_complex(&self, n: &Module, qmax: usize) -> Result<(Vec<Module>, Vec<ModuleMap>)> {
        self.check_small(n)?;
        let (inj, dmaps) = injective_resolution(n, qmax + 1)?;
        let lowered: Vec<LowerStar> = inj.iter().map(|m| self.jlowerstar(m)).collect::<Result<_>>()?;
        let maps = dmaps
            .iter()
            .enumerate()
            .map(|(q, g)| self.jlowerstar_map(g, &lowered[q], &lowered[q + 1]))
            .collect::<Result<Vec<_>>>()?;
        Ok((lowered.into_iter().map(|l| l.module).collect(), maps))
    }

    /// Compares `dim Ext^q(j^* P, F)` with `H^q Hom(P, R j_* F)`.
    pub fn prop24_check(&self, p: &Module, fmod: &Module, qmax: usize) -> Result<Prop24Report> {
        self.check_big(p)?;
        let lhs = ext_dims(&self.jstar(p)?, fmod, qmax)?;
        let (objs, maps) = self.rj_complex(fmod, qmax)?;
        let homs: Vec<Vec<ModuleMap>> = objs.iter().map(|o| hom_space(p, o)).collect::<Result<_>>()?;
        let f = p.field();
        let ranks: Vec<usize> = maps
            .iter()
            .enumerate()
            .map(|(q, d)| {
                let cols: Vec<Vec<u32>> = homs[q].iter().map(|h| flatten(&d.compose(h))).collect();
                if cols.is_empty() {
                    return 0;
                }
                Mat::from_cols(f, cols[0].len(), &cols).rank()
            })
            .collect();
        let rhs: Vec<usize> = (0..=qmax)
            .map(|q| {
                let dim = homs.get(q).map_or(0, Vec::len);
                let out = ranks.get(q).copied().unwrap_or(0);
                let inc = if q > 0 { ranks.get(q - 1).copied().unwrap_or(0) } else { 0 };
                dim - out - inc
            })
            .collect();
        let rhs = ExtTable::new(lhs.pair[0].clone(), lhs.pair[1].clone(), &rhs);
        Ok(Prop24Report { holds: lhs == rhs, lhs, rhs })
    }
}

fn flatten(h: &ModuleMap) -> Vec<u32> {
    h.blocks.iter().flat_map(|b| b.data().iter().copied()).collect()
}

#[derive(Clone, Debug)]
pub struct Prop24Report {
    pub lhs: ExtTable,
    pub rhs: ExtTable,
    pub holds: bool,
}

/// `0 → N → I^0 → ⋯ → I^len` with `I^q = (A ⊗_B P_q)^#` for a minimal
/// projective resolution `P` of `N^#` over the basic algebra `B`.
pub fn injective_resolution(n: &Module, len: usize) -> Result<(Vec<Module>, Vec<ModuleMap>)> {
    let (proj, diffs) = projective_resolution(&n.dual()?, len)?;
    let inj = proj.iter().map(Module::dual).collect::<Result<Vec<_>>>()?;
    let maps = diffs.iter().map(ModuleMap::dual).collect();
    Ok((inj, maps))
}

/// Projective resolution `P_0 ← P_1 ← ⋯ ← P_len` over the algebra of `m`,
/// each term a sum of indecomposable projectives `A f_λ`. `diffs[q]` maps
/// `P_{q+1} → P_q`.
pub fn projective_resolution(m: &Module, len: usize) -> Result<(Vec<Module>, Vec<ModuleMap>)> {
    let alg = m.algebra();
    let basic = basic_for(alg)?;
    let f = alg.field();
    let res = minimal_resolution(&basic.reduce(m)?, len)?;
    let mut terms = Vec::new();
    let mut frees = Vec::new();
    let mut incls = Vec::new();
    for t in &res.terms {
        let gens: Vec<usize> = t.gens.iter().map(|&l| basic.vertex(l)).collect();
        let free = FreeModule::new(alg, gens)?;
        let images: Vec<Vec<u32>> = t
            .gens
            .iter()
            .enumerate()
            .map(|(g, &l)| free.element(basic.vertex(l), &[(g, basic.idempotent(l))]))
            .collect();
        let rf = free.cover(&free.module, &images);
        let (img, incl) = rf.image(&free.module)?;
        terms.push(img);
        incls.push(incl);
        frees.push(free);
    }
    let mut maps = Vec::new();
    for (q, d) in res.diffs.iter().enumerate() {
        let (src_b, tgt_b) = (&res.terms[q + 1], &res.terms[q]);
        let (src, tgt) = (&frees[q + 1], &frees[q]);
        let images: Vec<Vec<u32>> = (0..src_b.n_gens())
            .map(|g1| {
                let w1 = src_b.gens[g1];
                let col = src_b.on_generator(d, g1);
                let parts: Vec<(usize, Vec<u32>)> = (0..tgt_b.n_gens())
                    .map(|g| {
                        let c = tgt_b.component(w1, g, &col);
                        let mut e = alg.zero();
                        for (x, &cx) in c.iter().enumerate() {
                            if cx != 0 {
                                for (y, &z) in basic.lift(x).iter().enumerate() {
                                    e[y] = f.add(e[y], f.mul(cx, z));
                                }
                            }
                        }
                        (g, e)
                    })
                    .collect();
                let refs: Vec<(usize, &Vec<u32>)> = parts.iter().map(|(g, e)| (*g, e)).collect();
                tgt.element(basic.vertex(src_b.gens[g1]), &refs)
            })
            .collect();
        let h = src.cover(&tgt.module, &images);
        maps.push(restrict_map(&h, &incls[q + 1], &incls[q])?);
    }
    if res.terms.is_empty() {
        terms.push(Module::zero(alg.clone()));
    }
    Ok((terms, maps))
}

/// `dim Ext^q(I^{⊗d}, F)`, the cohomology of the derived Schur functor.
pub fn rs_dims(fmod: &Module, qmax: usize) -> Result<ExtTable> {
    let t = crate::polymod::tensor_power_module(fmod.algebra())?;
    ext_dims(&t.module, fmod, qmax)
}
