use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::characters::LaurentCharacter;
use crate::combinatorics::Partition;
use crate::error::{Error, Result};
use crate::exactla::{Fp, Mat, Subspace};
use crate::schuralg::{Algebra, Elem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LabelKind {
    Costandard,
    Standard,
    Simple,
    Tensor,
    Omega,
    Projective,
    Regular,
    DualRegular,
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Label {
    pub kind: LabelKind,
    pub partition: Option<Partition>,
    pub name: String,
}

impl Label {
    pub fn new(kind: LabelKind, partition: Option<Partition>, name: impl Into<String>) -> Self {
        Label { kind, partition, name: name.into() }
    }
}

/// Finite-dimensional left module. Vectors are laid out vertex by vertex;
/// the action of basis element `b` with ends `(t, s)` is a dense
/// `dims[t] x dims[s]` block.
#[derive(Clone)]
pub struct Module {
    alg: Arc<Algebra>,
    dims: Vec<usize>,
    offsets: Vec<usize>,
    action: Vec<Mat>,
    label: Option<Label>,
}

impl fmt::Debug for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Module(dim {}, dims {:?}, label {:?})", self.dim(), self.dims, self.label.as_ref().map(|l| &l.name))
    }
}

fn offsets_of(dims: &[usize]) -> Vec<usize> {
    let mut o = Vec::with_capacity(dims.len() + 1);
    let mut acc = 0;
    o.push(0);
    for &d in dims {
        acc += d;
        o.push(acc);
    }
    o
}

impl Module {
    pub fn new(alg: Arc<Algebra>, dims: Vec<usize>, action: Vec<Mat>) -> Result<Self> {
        if dims.len() != alg.n_vertices() || action.len() != alg.dim() {
            return Err(Error::Shape("module data does not match the algebra".into()));
        }
        for (b, m) in action.iter().enumerate() {
            let (t, s) = alg.ends(b);
            if m.rows() != dims[t] || m.cols() != dims[s] {
                return Err(Error::Shape(format!("action block {b} has wrong shape")));
            }
        }
        let offsets = offsets_of(&dims);
        Ok(Module { alg, dims, offsets, action, label: None })
    }

    pub fn zero(alg: Arc<Algebra>) -> Self {
        let f = alg.field();
        let action = (0..alg.dim()).map(|_| Mat::zeros(f, 0, 0)).collect();
        let dims = vec![0; alg.n_vertices()];
        Module::new(alg, dims, action).unwrap()
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }
    pub fn field(&self) -> Fp {
        self.alg.field()
    }
    pub fn dim(&self) -> usize {
        *self.offsets.last().unwrap()
    }
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }
    pub fn offset(&self, v: usize) -> usize {
        self.offsets[v]
    }
    pub fn action(&self, b: usize) -> &Mat {
        &self.action[b]
    }
    pub fn label(&self) -> Option<&Label> {
        self.label.as_ref()
    }
    pub fn with_label(mut self, l: Label) -> Self {
        self.label = Some(l);
        self
    }
    pub fn set_label(&mut self, l: Label) {
        self.label = Some(l);
    }
    pub fn name(&self) -> String {
        self.label.as_ref().map(|l| l.name.clone()).unwrap_or_else(|| "M".into())
    }
    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Action of an algebra element restricted to `e_t x e_s`.
    pub fn act_block(&self, x: &Elem, t: usize, s: usize) -> Mat {
        let f = self.field();
        let mut out = Mat::zeros(f, self.dims[t], self.dims[s]);
        for &b in self.alg.basis_between(t, s) {
            if x[b] != 0 {
                out.axpy(x[b], &self.action[b]);
            }
        }
        out
    }

    /// Action of an arbitrary element on the whole space.
    pub fn act_full(&self, x: &Elem) -> Mat {
        let f = self.field();
        let mut out = Mat::zeros(f, self.dim(), self.dim());
        for (b, &c) in x.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let (t, s) = self.alg.ends(b);
            let blk = &self.action[b];
            for r in 0..blk.rows() {
                for k in 0..blk.cols() {
                    let v = blk.get(r, k);
                    if v != 0 {
                        out.add_at(self.offsets[t] + r, self.offsets[s] + k, f.mul(v, c));
                    }
                }
            }
        }
        out
    }

    /// Basis element `b` applied to a global vector.
    pub fn act_vec(&self, b: usize, v: &[u32]) -> Vec<u32> {
        let (t, s) = self.alg.ends(b);
        let mut out = vec![0; self.dim()];
        let part = self.action[b].mul_vec(&v[self.offsets[s]..self.offsets[s + 1]]);
        out[self.offsets[t]..self.offsets[t + 1]].copy_from_slice(&part);
        out
    }

    /// Checks that idempotents act as identities and that `samples`
    /// random composable pairs satisfy the structure constants.
    pub fn check_relations(&self, samples: usize, seed: u64) -> Result<()> {
        use rand::{Rng, SeedableRng};
        let f = self.field();
        for (v, &e) in self.alg.idempotents().iter().enumerate() {
            if self.action[e] != Mat::identity(f, self.dims[v]) {
                return Err(Error::inconsistent(format!("idempotent of vertex {v} does not act as identity")));
            }
        }
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let nv = self.alg.n_vertices();
        for _ in 0..samples {
            let a = rng.gen_range(0..self.alg.dim());
            let (t, s) = self.alg.ends(a);
            let u = rng.gen_range(0..nv);
            let cands = self.alg.basis_between(s, u);
            if cands.is_empty() {
                continue;
            }
            let b = cands[rng.gen_range(0..cands.len())];
            let lhs = self.action[a].mul(&self.action[b]);
            let mut rhs = Mat::zeros(f, self.dims[t], self.dims[u]);
            for &(c, z) in self.alg.basis_product(a, b) {
                rhs.axpy(z, &self.action[c as usize]);
            }
            if lhs != rhs {
                return Err(Error::inconsistent(format!("action violates b{a}*b{b}")));
            }
        }
        Ok(())
    }

    /// Weight-space dimensions as a character (Schur algebras only).
    pub fn weight_character(&self) -> Result<LaurentCharacter> {
        let s = self.alg.schur().ok_or_else(|| Error::invalid("characters need a Schur algebra"))?;
        let mut c = LaurentCharacter::zero(s.n);
        for (v, w) in s.weights.iter().enumerate() {
            c.add_term(w.iter().map(|&x| x as i32).collect(), self.dims[v] as i64);
        }
        Ok(c)
    }

    pub fn direct_sum(mods: &[&Module]) -> Result<Module> {
        let alg = mods.first().ok_or_else(|| Error::invalid("empty direct sum"))?.alg.clone();
        let nv = alg.n_vertices();
        let dims: Vec<usize> = (0..nv).map(|v| mods.iter().map(|m| m.dims[v]).sum()).collect();
        let f = alg.field();
        let action = (0..alg.dim())
            .map(|b| {
                let (t, s) = alg.ends(b);
                let mut out = Mat::zeros(f, dims[t], dims[s]);
                let (mut r0, mut c0) = (0, 0);
                for m in mods {
                    out.paste(r0, c0, &m.action[b]);
                    r0 += m.dims[t];
                    c0 += m.dims[s];
                }
                out
            })
            .collect();
        Module::new(alg, dims, action)
    }

    /// Kuhn dual: the dual space with `a ↦ ρ(τ a)^T`.
    pub fn dual(&self) -> Result<Module> {
        if !self.alg.has_transpose() {
            return Err(Error::invalid("duality needs an anti-automorphism"));
        }
        let action = (0..self.alg.dim()).map(|b| self.action[self.alg.transpose_elt(b)].transpose()).collect();
        let mut m = Module::new(self.alg.clone(), self.dims.clone(), action)?;
        if let Some(l) = &self.label {
            let kind = match l.kind {
                LabelKind::Costandard => LabelKind::Standard,
                LabelKind::Standard => LabelKind::Costandard,
                LabelKind::Regular => LabelKind::DualRegular,
                LabelKind::DualRegular => LabelKind::Regular,
                k => k,
            };
            m.label = Some(Label::new(kind, l.partition.clone(), format!("{}#", l.name)));
        }
        Ok(m)
    }

    /// Submodule spanned by the columns of `bases[v]` (independent,
    /// weight-homogeneous). Fails if the span is not invariant.
    pub fn submodule(&self, bases: Vec<Mat>) -> Result<(Module, ModuleMap)> {
        let f = self.field();
        let spaces: Vec<Option<Subspace>> =
            bases.iter().map(|b| if b.cols() == 0 { None } else { Some(Subspace::new(b.clone())) }).collect();
        let dims: Vec<usize> = bases.iter().map(|b| b.cols()).collect();
        let mut action = Vec::with_capacity(self.alg.dim());
        for b in 0..self.alg.dim() {
            let (t, s) = self.alg.ends(b);
            if dims[t] == 0 || dims[s] == 0 {
                if dims[s] > 0 && !self.action[b].mul(&bases[s]).is_zero() {
                    return Err(Error::inconsistent("subspace is not invariant"));
                }
                action.push(Mat::zeros(f, dims[t], dims[s]));
                continue;
            }
            let img = self.action[b].mul(&bases[s]);
            let c = spaces[t]
                .as_ref()
                .unwrap()
                .coords_mat(&img)
                .ok_or_else(|| Error::inconsistent("subspace is not invariant"))?;
            action.push(c);
        }
        let sub = Module::new(self.alg.clone(), dims, action)?;
        Ok((sub, ModuleMap { blocks: bases }))
    }

    /// Quotient by the invariant subspace spanned by `bases[v]`, using the
    /// standard-vector complement. Returns the quotient and the projection.
    pub fn quotient(&self, bases: Vec<Mat>) -> Result<(Module, ModuleMap)> {
        let f = self.field();
        let nv = self.alg.n_vertices();
        let spaces: Vec<Option<Subspace>> =
            bases.iter().map(|b| if b.cols() == 0 { None } else { Some(Subspace::new(b.clone())) }).collect();
        let proj: Vec<Mat> = (0..nv)
            .map(|v| match &spaces[v] {
                None => Mat::identity(f, self.dims[v]),
                Some(sp) => sp.residue_mat(&Mat::identity(f, self.dims[v])),
            })
            .collect();
        let comp: Vec<Vec<usize>> = (0..nv)
            .map(|v| match &spaces[v] {
                None => (0..self.dims[v]).collect(),
                Some(sp) => sp.complement().to_vec(),
            })
            .collect();
        let dims: Vec<usize> = comp.iter().map(Vec::len).collect();
        let mut action = Vec::with_capacity(self.alg.dim());
        for b in 0..self.alg.dim() {
            let (t, s) = self.alg.ends(b);
            if dims[t] == 0 || dims[s] == 0 {
                action.push(Mat::zeros(f, dims[t], dims[s]));
                continue;
            }
            let lifted = self.action[b].select_cols(&comp[s]);
            action.push(proj[t].mul(&lifted));
        }
        // well-definedness: the subspace must map into itself
        for b in 0..self.alg.dim() {
            let (t, s) = self.alg.ends(b);
            if bases[s].cols() > 0 && dims[t] > 0 && !proj[t].mul(&self.action[b].mul(&bases[s])).is_zero() {
                return Err(Error::inconsistent("quotient by a non-invariant subspace"));
            }
        }
        let q = Module::new(self.alg.clone(), dims, action)?;
        Ok((q, ModuleMap { blocks: proj }))
    }

    /// Same module over a different algebra, through a basis relabelling
    /// `small → self.alg` and the matching vertex map.
    pub fn restrict(&self, small: Arc<Algebra>, rel: &[usize], vmap: &[usize]) -> Result<Module> {
        let dims: Vec<usize> = vmap.iter().map(|&v| self.dims[v]).collect();
        let action = rel.iter().map(|&b| self.action[b].clone()).collect();
        Module::new(small, dims, action)
    }
}

/// Weight-preserving linear map given by one block per vertex
/// (`dims_target[v] x dims_source[v]`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    pub blocks: Vec<Mat>,
}

impl ModuleMap {
    pub fn zero(src: &Module, tgt: &Module) -> Self {
        let f = src.field();
        ModuleMap { blocks: (0..src.dims.len()).map(|v| Mat::zeros(f, tgt.dims[v], src.dims[v])).collect() }
    }

    pub fn identity(m: &Module) -> Self {
        let f = m.field();
        ModuleMap { blocks: m.dims.iter().map(|&d| Mat::identity(f, d)).collect() }
    }

    /// Split a global matrix (target x source) into vertex blocks; fails if
    /// it does not preserve weights.
    pub fn from_global(src: &Module, tgt: &Module, g: &Mat) -> Result<Self> {
        if g.rows() != tgt.dim() || g.cols() != src.dim() {
            return Err(Error::Shape("global map shape".into()));
        }
        let nv = src.dims.len();
        let mut blocks = Vec::with_capacity(nv);
        for v in 0..nv {
            let rows: Vec<usize> = (tgt.offsets[v]..tgt.offsets[v + 1]).collect();
            let cols: Vec<usize> = (src.offsets[v]..src.offsets[v + 1]).collect();
            blocks.push(g.select_rows(&rows).select_cols(&cols));
        }
        let m = ModuleMap { blocks };
        if m.to_global(src, tgt) != *g {
            return Err(Error::inconsistent("map does not preserve weights"));
        }
        Ok(m)
    }

    pub fn to_global(&self, src: &Module, tgt: &Module) -> Mat {
        let f = src.field();
        let mut g = Mat::zeros(f, tgt.dim(), src.dim());
        for (v, b) in self.blocks.iter().enumerate() {
            g.paste(tgt.offsets[v], src.offsets[v], b);
        }
        g
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ModuleMap) -> ModuleMap {
        ModuleMap { blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.mul(b)).collect() }
    }

    pub fn add(&self, o: &ModuleMap) -> ModuleMap {
        ModuleMap { blocks: self.blocks.iter().zip(&o.blocks).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn scale(&self, c: u32) -> ModuleMap {
        ModuleMap { blocks: self.blocks.iter().map(|a| a.scale(c)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Mat::is_zero)
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().map(Mat::rank).sum()
    }

    pub fn is_iso(&self) -> bool {
        self.blocks.iter().all(|b| b.rows() == b.cols() && b.is_invertible())
    }

    /// Exact check against every basis element when both modules have
    /// dimension at most 200, otherwise against the generators plus 200
    /// sampled basis elements.
    pub fn is_equivariant(&self, src: &Module, tgt: &Module) -> bool {
        let alg = src.algebra();
        let check = |b: usize| {
            let (t, s) = alg.ends(b);
            tgt.action[b].mul(&self.blocks[s]) == self.blocks[t].mul(&src.action[b])
        };
        if src.dim() <= 200 && tgt.dim() <= 200 {
            return (0..alg.dim()).all(check);
        }
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
        alg.generators().iter().all(|&b| check(b)) && (0..200).all(|_| check(rng.gen_range(0..alg.dim())))
    }

    /// Kernel as a submodule of `src`.
    pub fn kernel(&self, src: &Module) -> Result<(Module, ModuleMap)> {
        src.submodule(self.blocks.iter().map(Mat::nullspace).collect())
    }

    /// Image as a submodule of `tgt`.
    pub fn image(&self, tgt: &Module) -> Result<(Module, ModuleMap)> {
        tgt.submodule(self.blocks.iter().map(Mat::image_basis).collect())
    }

    pub fn cokernel(&self, tgt: &Module) -> Result<(Module, ModuleMap)> {
        tgt.quotient(self.blocks.iter().map(Mat::image_basis).collect())
    }

    /// Kuhn dual map `N^# → M^#`.
    pub fn dual(&self) -> ModuleMap {
        ModuleMap { blocks: self.blocks.iter().map(Mat::transpose).collect() }
    }
}

/// Cochain complex `C^base → C^{base+1} → ⋯`.
#[derive(Clone, Debug)]
pub struct CochainComplex {
    pub base: i64,
    pub objects: Vec<Module>,
    /// `maps[k]: objects[k] → objects[k+1]`.
    pub maps: Vec<ModuleMap>,
}

impl CochainComplex {
    pub fn new(base: i64, objects: Vec<Module>, maps: Vec<ModuleMap>) -> Result<Self> {
        if objects.is_empty() || maps.len() + 1 != objects.len() {
            return Err(Error::Shape("complex needs one map between consecutive objects".into()));
        }
        Ok(CochainComplex { base, objects, maps })
    }

    pub fn single(m: Module) -> Self {
        CochainComplex { base: 0, objects: vec![m], maps: vec![] }
    }

    /// Consecutive composites vanish and every map is equivariant.
    pub fn check(&self) -> Result<()> {
        for (k, m) in self.maps.iter().enumerate() {
            if !m.is_equivariant(&self.objects[k], &self.objects[k + 1]) {
                return Err(Error::inconsistent(format!("differential {k} is not equivariant")));
            }
        }
        for k in 1..self.maps.len() {
            if !self.maps[k].compose(&self.maps[k - 1]).is_zero() {
                return Err(Error::inconsistent(format!("d∘d ≠ 0 at position {k}")));
            }
        }
        Ok(())
    }

    /// Cohomology modules `H^{base+k}` as subquotients.
    pub fn cohomology(&self) -> Result<Vec<Module>> {
        let f = self.objects[0].field();
        let mut out = Vec::with_capacity(self.objects.len());
        for k in 0..self.objects.len() {
            let obj = &self.objects[k];
            let (ker, incl) = match self.maps.get(k) {
                Some(d) => d.kernel(obj)?,
                None => (obj.clone(), ModuleMap::identity(obj)),
            };
            let img: Vec<Mat> = match k.checked_sub(1) {
                Some(j) => {
                    let d = &self.maps[j];
                    (0..obj.dims.len())
                        .map(|v| {
                            let im = d.blocks[v].image_basis();
                            if im.cols() == 0 {
                                return Ok(Mat::zeros(f, ker.dims[v], 0));
                            }
                            let sp = Subspace::new(incl.blocks[v].clone());
                            sp.coords_mat(&im).ok_or_else(|| Error::inconsistent("image not inside kernel"))
                        })
                        .collect::<Result<_>>()?
                }
                None => ker.dims.iter().map(|&d| Mat::zeros(f, d, 0)).collect(),
            };
            out.push(ker.quotient(img)?.0);
        }
        Ok(out)
    }

    pub fn cohomology_dims(&self) -> Result<Vec<usize>> {
        Ok(self.cohomology()?.iter().map(Module::dim).collect())
    }
}
