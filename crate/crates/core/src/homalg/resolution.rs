use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::basic::BasicAlgebra;
use crate::error::{Error, Result};
use crate::exactla::{Mat, Subspace};
use crate::polymod::{Label, LabelKind, Module, ModuleMap};
use crate::schuralg::{Algebra, Elem};

/// Default bound on the number of entries of a single matrix built while
/// resolving.
pub const DEFAULT_BUDGET: u64 = 400_000_000;

/// Position of each basis element inside its `basis_between` list.
fn local_index(alg: &Algebra) -> Vec<usize> {
    let mut local = vec![0usize; alg.dim()];
    for t in 0..alg.n_vertices() {
        for s in 0..alg.n_vertices() {
            for (k, &b) in alg.basis_between(t, s).iter().enumerate() {
                local[b] = k;
            }
        }
    }
    local
}

/// `⊕_g A e_{gens[g]}`, with vertex `u` spanned by the basis elements of
/// `e_u A e_{gens[g]}` copy by copy.
#[derive(Clone, Debug)]
pub struct FreeModule {
    pub module: Module,
    pub gens: Vec<usize>,
    /// `offs[u][g]`: start of copy `g` inside vertex `u`.
    offs: Vec<Vec<usize>>,
    local: Arc<Vec<usize>>,
}

impl FreeModule {
    pub fn new(alg: &Arc<Algebra>, gens: Vec<usize>) -> Result<Self> {
        Self::with_local(alg, gens, Arc::new(local_index(alg)))
    }

    fn with_local(alg: &Arc<Algebra>, gens: Vec<usize>, local: Arc<Vec<usize>>) -> Result<Self> {
        let f = alg.field();
        let nv = alg.n_vertices();
        let mut offs = vec![Vec::with_capacity(gens.len()); nv];
        let mut dims = vec![0usize; nv];
        for u in 0..nv {
            for &w in &gens {
                offs[u].push(dims[u]);
                dims[u] += alg.basis_between(u, w).len();
            }
        }
        let mut action: Vec<Mat> = (0..alg.dim())
            .map(|a| {
                let (t, s) = alg.ends(a);
                Mat::zeros(f, dims[t], dims[s])
            })
            .collect();
        for (a, act) in action.iter_mut().enumerate() {
            let (t, s) = alg.ends(a);
            for (g, &w) in gens.iter().enumerate() {
                for &x in alg.basis_between(s, w) {
                    for &(c, z) in alg.basis_product(a, x) {
                        act.add_at(offs[t][g] + local[c as usize], offs[s][g] + local[x], z);
                    }
                }
            }
        }
        let module = Module::new(alg.clone(), dims, action)?.with_label(Label::new(
            LabelKind::Projective,
            None,
            format!("P{gens:?}"),
        ));
        Ok(FreeModule { module, gens, offs, local })
    }

    pub fn n_gens(&self) -> usize {
        self.gens.len()
    }

    /// Index of `x ∈ e_u A e_{gens[g]}` inside vertex `u`.
    pub fn pos(&self, u: usize, g: usize, x: usize) -> usize {
        self.offs[u][g] + self.local[x]
    }

    /// The vector `Σ_g parts[g]·gen_g` at vertex `u`; each part lies in
    /// `e_u A e_{gens[g]}`.
    pub fn element(&self, u: usize, parts: &[(usize, &Elem)]) -> Vec<u32> {
        let alg = self.module.algebra();
        let f = alg.field();
        let mut v = vec![0u32; self.module.dims()[u]];
        for &(g, e) in parts {
            for &x in alg.basis_between(u, self.gens[g]) {
                let i = self.pos(u, g, x);
                v[i] = f.add(v[i], e[x]);
            }
        }
        v
    }

    /// Component of a vector at vertex `u` along copy `g`, as an algebra element.
    pub fn component(&self, u: usize, g: usize, v: &[u32]) -> Elem {
        let alg = self.module.algebra();
        let mut e = alg.zero();
        for &x in alg.basis_between(u, self.gens[g]) {
            e[x] = v[self.pos(u, g, x)];
        }
        e
    }

    /// The map sending generator `g` to `images[g] ∈ tgt_{gens[g]}`.
    pub fn cover(&self, tgt: &Module, images: &[Vec<u32>]) -> ModuleMap {
        let alg = self.module.algebra();
        let f = alg.field();
        let blocks = (0..alg.n_vertices())
            .map(|u| {
                let mut b = Mat::zeros(f, tgt.dims()[u], self.module.dims()[u]);
                for (g, &w) in self.gens.iter().enumerate() {
                    for &x in alg.basis_between(u, w) {
                        let col = tgt.action(x).mul_vec(&images[g]);
                        let j = self.pos(u, g, x);
                        for (i, &z) in col.iter().enumerate() {
                            if z != 0 {
                                b.set(i, j, z);
                            }
                        }
                    }
                }
                b
            })
            .collect();
        ModuleMap { blocks }
    }

    /// Value of a map on generator `g`.
    pub fn on_generator(&self, h: &ModuleMap, g: usize) -> Vec<u32> {
        let w = self.gens[g];
        let idem = self.module.algebra().idempotent(w);
        h.blocks[w].col(self.pos(w, g, idem))
    }
}

/// Minimal projective resolution `⋯ → P_1 → P_0 → M` over an algebra whose
/// non-idempotent basis elements span its radical (a basic algebra).
#[derive(Clone, Debug)]
pub struct Resolution {
    pub terms: Vec<FreeModule>,
    /// `diffs[q]: P_{q+1} → P_q`.
    pub diffs: Vec<ModuleMap>,
    pub augmentation: ModuleMap,
    /// The last computed kernel was zero, so the resolution is complete.
    pub complete: bool,
}

/// Complement of the radical of `x` at each vertex, as standard-vector indices.
fn top_indices(x: &Module) -> Vec<Vec<usize>> {
    let alg = x.algebra();
    let f = alg.field();
    let idem = alg.idempotents();
    (0..alg.n_vertices())
        .map(|u| {
            let du = x.dims()[u];
            if du == 0 {
                return Vec::new();
            }
            let mut cols: Vec<Vec<u32>> = Vec::new();
            for s in 0..alg.n_vertices() {
                if x.dims()[s] == 0 {
                    continue;
                }
                for &b in alg.basis_between(u, s) {
                    if idem.contains(&b) {
                        continue;
                    }
                    let a = x.action(b);
                    for j in 0..a.cols() {
                        cols.push(a.col(j));
                    }
                }
            }
            let rad = if cols.is_empty() { Mat::zeros(f, du, 0) } else { Mat::from_cols(f, du, &cols).image_basis() };
            if rad.cols() == 0 {
                (0..du).collect()
            } else {
                Subspace::new(rad).complement().to_vec()
            }
        })
        .collect()
}

/// Resolves `m` up to `P_len` (fewer terms if the resolution stops).
pub fn minimal_resolution(m: &Module, len: usize) -> Result<Resolution> {
    minimal_resolution_with_budget(m, len, DEFAULT_BUDGET)
}

pub fn minimal_resolution_with_budget(m: &Module, len: usize, budget: u64) -> Result<Resolution> {
    let alg = m.algebra().clone();
    let f = alg.field();
    let local = Arc::new(local_index(&alg));
    let mut terms: Vec<FreeModule> = Vec::new();
    let mut diffs = Vec::new();
    let mut augmentation = None;
    let mut x = m.clone();
    let mut incl: Option<ModuleMap> = None;
    let mut complete = false;
    if m.dim() == 0 {
        let augmentation = ModuleMap { blocks: vec![Mat::zeros(f, 0, 0); alg.n_vertices()] };
        return Ok(Resolution { terms, diffs, augmentation, complete: true });
    }
    for _q in 0..=len {
        let tops = top_indices(&x);
        let mut gens = Vec::new();
        let mut images = Vec::new();
        for (u, idx) in tops.iter().enumerate() {
            for &i in idx {
                let mut v = vec![0u32; x.dims()[u]];
                v[i] = 1;
                gens.push(u);
                images.push(v);
            }
        }
        let p = FreeModule::with_local(&alg, gens, local.clone())?;
        for u in 0..alg.n_vertices() {
            let size = p.module.dims()[u] as u64 * x.dims()[u].max(1) as u64;
            if size > budget {
                return Err(Error::ResourceGuard(format!(
                    "resolution block of {size} entries exceeds the budget {budget}"
                )));
            }
        }
        let pi = p.cover(&x, &images);
        for u in 0..alg.n_vertices() {
            if pi.blocks[u].rank() != x.dims()[u] {
                return Err(Error::inconsistent("projective cover is not surjective"));
            }
        }
        match &incl {
            None => augmentation = Some(pi.clone()),
            Some(i) => diffs.push(i.compose(&pi)),
        }
        let (k, kin) = pi.kernel(&p.module)?;
        terms.push(p);
        if k.dim() == 0 {
            complete = true;
            break;
        }
        x = k;
        incl = Some(kin);
    }
    let augmentation = augmentation.expect("at least one term");
    Ok(Resolution { terms, diffs, augmentation, complete })
}

impl Resolution {
    /// Number of computed terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Ranks of the `P_q` as multisets of vertices.
    pub fn generator_vertices(&self, q: usize) -> &[usize] {
        self.terms.get(q).map(|t| &t.gens[..]).unwrap_or(&[])
    }

    /// Dimension of `Hom(P_q, N)` in generator coordinates.
    fn hom_offsets(&self, q: usize, n: &Module) -> Vec<usize> {
        let mut offs = vec![0];
        for &w in self.generator_vertices(q) {
            offs.push(offs.last().unwrap() + n.dims()[w]);
        }
        offs
    }

    /// `δ_q: Hom(P_q, N) → Hom(P_{q+1}, N)`, `φ ↦ φ ∘ ∂`.
    pub fn hom_differential(&self, q: usize, n: &Module) -> Mat {
        let f = n.field();
        let src = self.hom_offsets(q, n);
        let tgt = self.hom_offsets(q + 1, n);
        let mut out = Mat::zeros(f, *tgt.last().unwrap(), *src.last().unwrap());
        let (Some(pq), Some(pq1), Some(d)) = (self.terms.get(q), self.terms.get(q + 1), self.diffs.get(q)) else {
            return out;
        };
        for (g1, &w1) in pq1.gens.iter().enumerate() {
            let col = pq1.on_generator(d, g1);
            for g in 0..pq.n_gens() {
                let c = pq.component(w1, g, &col);
                let blk = n.act_block(&c, w1, pq.gens[g]);
                out.paste(tgt[g1], src[g], &blk);
            }
        }
        out
    }

    /// `dim Ext^q(M, N)` for `0 ≤ q ≤ qmax`; needs the terms up to `qmax + 1`
    /// unless the resolution is complete.
    pub fn ext_dims(&self, n: &Module, qmax: usize) -> Result<Vec<usize>> {
        if !self.complete && self.terms.len() < qmax + 2 {
            return Err(Error::invalid("resolution too short for the requested degree"));
        }
        let deltas: Vec<Mat> = (0..=qmax).map(|q| self.hom_differential(q, n)).collect();
        let ranks: Vec<usize> = deltas.iter().map(Mat::rank).collect();
        Ok((0..=qmax)
            .map(|q| {
                let dim = *self.hom_offsets(q, n).last().unwrap();
                dim - ranks[q] - if q > 0 { ranks[q - 1] } else { 0 }
            })
            .collect())
    }
}

/// SHA-256 of the field, weight dimensions and every action matrix.
pub fn module_digest(m: &Module) -> [u8; 32] {
    let mut h = Sha256::new();
    h.update(m.field().p().to_le_bytes());
    for &d in m.dims() {
        h.update((d as u64).to_le_bytes());
    }
    for b in 0..m.algebra().dim() {
        for &x in m.action(b).data() {
            h.update(x.to_le_bytes());
        }
    }
    h.finalize().into()
}

type ResolutionCache = Mutex<HashMap<(usize, [u8; 32]), Arc<Resolution>>>;

/// Resolution of `m` with at least `len` terms (or complete), shared with
/// earlier calls on a module with the same content over the same algebra.
/// A cache hit does no new work, so the budget only applies on a miss.
pub fn cached_resolution(m: &Module, len: usize, budget: u64) -> Result<Arc<Resolution>> {
    static CACHE: OnceLock<ResolutionCache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    // cached resolutions hold the algebra, so its address cannot be reused
    let key = (Arc::as_ptr(m.algebra()) as usize, module_digest(m));
    if let Some(r) = cache.lock().unwrap().get(&key) {
        if r.complete || r.len() >= len {
            return Ok(r.clone());
        }
    }
    let r = Arc::new(minimal_resolution_with_budget(m, len, budget)?);
    cache.lock().unwrap().insert(key, r.clone());
    Ok(r)
}

/// Ext dimensions keyed by degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtTable {
    pub pair: [String; 2],
    pub dims: BTreeMap<usize, usize>,
    pub qmax: usize,
}

impl ExtTable {
    pub fn new(a: impl Into<String>, b: impl Into<String>, dims: &[usize]) -> Self {
        ExtTable {
            pair: [a.into(), b.into()],
            dims: dims.iter().copied().enumerate().collect(),
            qmax: dims.len().saturating_sub(1),
        }
    }

    /// Table with dimension one exactly in the listed degrees.
    pub fn from_degrees(a: impl Into<String>, b: impl Into<String>, degrees: &[usize], qmax: usize) -> Self {
        let dims: Vec<usize> = (0..=qmax).map(|q| degrees.iter().filter(|&&d| d == q).count()).collect();
        Self::new(a, b, &dims)
    }

    pub fn get(&self, q: usize) -> usize {
        self.dims.get(&q).copied().unwrap_or(0)
    }

    pub fn as_vec(&self) -> Vec<usize> {
        (0..=self.qmax).map(|q| self.get(q)).collect()
    }

    pub fn nonzero_degrees(&self) -> Vec<usize> {
        self.dims.iter().filter(|(_, &d)| d > 0).map(|(&q, _)| q).collect()
    }

    /// Same dimensions in every degree up to the common `qmax`.
    pub fn same_dims(&self, o: &ExtTable) -> bool {
        let q = self.qmax.min(o.qmax);
        (0..=q).all(|k| self.get(k) == o.get(k))
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    /// Rows `labelA,labelB,q,dim`.
    pub fn csv_rows(&self) -> Vec<String> {
        (0..=self.qmax).map(|q| format!("{},{},{},{}", self.pair[0], self.pair[1], q, self.get(q))).collect()
    }
}

/// `dim Ext^q_A(M, N)` computed over the basic algebra.
pub fn ext_dims_basic(basic: &BasicAlgebra, m: &Module, n: &Module, qmax: usize) -> Result<ExtTable> {
    ext_dims_basic_with_budget(basic, m, n, qmax, DEFAULT_BUDGET)
}

pub fn ext_dims_basic_with_budget(
    basic: &BasicAlgebra,
    m: &Module,
    n: &Module,
    qmax: usize,
    budget: u64,
) -> Result<ExtTable> {
    let rm = basic.reduce(m)?;
    let rn = basic.reduce(n)?;
    let res = cached_resolution(&rm, qmax + 1, budget)?;
    let dims = res.ext_dims(&rn, qmax)?;
    Ok(ExtTable::new(m.name(), n.name(), &dims))
}

/// `dim Ext^q_A(M, N)` for `q ≤ qmax`.
pub fn ext_dims(m: &Module, n: &Module, qmax: usize) -> Result<ExtTable> {
    ext_dims_with_budget(m, n, qmax, DEFAULT_BUDGET)
}

/// As [`ext_dims`], failing with a resource-guard error when a linear
/// system would exceed `budget` matrix entries.
pub fn ext_dims_with_budget(m: &Module, n: &Module, qmax: usize, budget: u64) -> Result<ExtTable> {
    if !Arc::ptr_eq(m.algebra(), n.algebra()) {
        return Err(Error::Shape("modules over different algebras".into()));
    }
    let basic = super::basic_for(m.algebra())?;
    ext_dims_basic_with_budget(&basic, m, n, qmax, budget)
}

/// The graded algebra `Ext^*(M, M)` truncated at `qmax`, with Yoneda
/// products computed by lifting cocycles to chain maps.
#[derive(Clone, Debug)]
pub struct YonedaExt {
    res: Resolution,
    m: Module,
    /// Cocycles `P_q → M` (generator coordinates) representing a basis.
    reps: Vec<Vec<Vec<u32>>>,
    /// Per degree: span of coboundaries followed by the representatives.
    spaces: Vec<Option<Subspace>>,
    bnd_dim: Vec<usize>,
    qmax: usize,
}

impl YonedaExt {
    /// `m` must be a module over a basic algebra (see `BasicAlgebra::reduce`).
    pub fn new(m: &Module, qmax: usize) -> Result<Self> {
        let f = m.field();
        let res = minimal_resolution(m, qmax + 1)?;
        let deltas: Vec<Mat> = (0..=qmax).map(|q| res.hom_differential(q, m)).collect();
        let mut reps = Vec::new();
        let mut spaces = Vec::new();
        let mut bnd_dim = Vec::new();
        for q in 0..=qmax {
            let z = deltas[q].nullspace();
            let dimq = deltas[q].cols();
            let b = if q > 0 { deltas[q - 1].image_basis() } else { Mat::zeros(f, dimq, 0) };
            // extend a basis of the coboundaries by cocycles
            let mut cols: Vec<Vec<u32>> = (0..b.cols()).map(|j| b.col(j)).collect();
            let mut r = Vec::new();
            for j in 0..z.cols() {
                let mut trial = cols.clone();
                trial.push(z.col(j));
                if Mat::from_cols(f, dimq, &trial).rank() == trial.len() {
                    cols = trial;
                    r.push(z.col(j));
                }
            }
            bnd_dim.push(b.cols());
            spaces.push(if cols.is_empty() { None } else { Some(Subspace::new(Mat::from_cols(f, dimq, &cols))) });
            reps.push(r);
        }
        Ok(YonedaExt { res, m: m.clone(), reps, spaces, bnd_dim, qmax })
    }

    pub fn dim(&self, q: usize) -> usize {
        self.reps.get(q).map(Vec::len).unwrap_or(0)
    }

    /// Split a cocycle vector into per-generator images in `M`.
    fn split(&self, q: usize, v: &[u32]) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let mut o = 0;
        for &w in self.res.generator_vertices(q) {
            let d = self.m.dims()[w];
            out.push(v[o..o + d].to_vec());
            o += d;
        }
        out
    }

    /// Chain map `ψ_k: P_{b+k} → P_k` lifting the cocycle `eta` of degree `b`,
    /// for `k ≤ upto`.
    fn lift(&self, b: usize, eta: &[u32], upto: usize) -> Result<Vec<ModuleMap>> {
        let res = &self.res;
        let mut out: Vec<ModuleMap> = Vec::new();
        for k in 0..=upto {
            let (Some(src), Some(tgt)) = (res.terms.get(b + k), res.terms.get(k)) else {
                break;
            };
            let mut images = Vec::with_capacity(src.n_gens());
            let targets: Vec<Vec<u32>> = if k == 0 {
                self.split(b, eta)
            } else {
                let d = &res.diffs[b + k - 1];
                (0..src.n_gens())
                    .map(|g| {
                        let w = src.gens[g];
                        out[k - 1].blocks[w].mul_vec(&src.on_generator(d, g))
                    })
                    .collect()
            };
            for (g, y) in targets.iter().enumerate() {
                let w = src.gens[g];
                let map = if k == 0 { &res.augmentation } else { &res.diffs[k - 1] };
                let x = map.blocks[w].solve(y).ok_or_else(|| Error::inconsistent("cocycle does not lift"))?;
                images.push(x);
            }
            out.push(src.cover(&tgt.module, &images));
        }
        Ok(out)
    }

    /// Coordinates of `xi · eta` (composition `ξ ∘ η`) in the basis of
    /// `Ext^{a+b}`, or `None` beyond `qmax`.
    pub fn product(&self, a: usize, xi: &[u32], b: usize, eta: &[u32]) -> Result<Option<Vec<u32>>> {
        let q = a + b;
        if q > self.qmax {
            return Ok(None);
        }
        if self.dim(q) == 0 {
            return Ok(Some(Vec::new()));
        }
        let psi = self.lift(b, eta, a)?;
        let pa = &self.res.terms[a];
        let xi_map = pa.cover(&self.m, &self.split(a, xi));
        let comp = xi_map.compose(&psi[a]);
        let pq = &self.res.terms[q];
        let mut v = Vec::new();
        for g in 0..pq.n_gens() {
            v.extend(pq.on_generator(&comp, g));
        }
        let sp = self.spaces[q].as_ref().expect("non-zero degree");
        let c = sp.coords(&v).ok_or_else(|| Error::inconsistent("product is not a cocycle"))?;
        Ok(Some(c[self.bnd_dim[q]..].to_vec()))
    }

    /// Product of basis classes `i ∈ Ext^a`, `j ∈ Ext^b`.
    pub fn basis_product(&self, a: usize, i: usize, b: usize, j: usize) -> Result<Option<Vec<u32>>> {
        self.product(a, &self.reps[a][i].clone(), b, &self.reps[b][j].clone())
    }

    /// The cocycle of `id_M`, i.e. the augmentation on generators.
    pub fn unit_cocycle(&self) -> Vec<u32> {
        let p0 = &self.res.terms[0];
        (0..p0.n_gens()).flat_map(|g| p0.on_generator(&self.res.augmentation, g)).collect()
    }

    /// Coordinates of a degree-`q` cocycle in the basis of `Ext^q`.
    pub fn class_of(&self, q: usize, v: &[u32]) -> Result<Vec<u32>> {
        match &self.spaces[q] {
            None => Ok(Vec::new()),
            Some(sp) => {
                let c = sp.coords(v).ok_or_else(|| Error::inconsistent("not a cocycle"))?;
                Ok(c[self.bnd_dim[q]..].to_vec())
            }
        }
    }

    pub fn basis_cocycle(&self, q: usize, i: usize) -> &[u32] {
        &self.reps[q][i]
    }
}
