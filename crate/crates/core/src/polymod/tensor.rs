use std::collections::HashMap;
use std::sync::Arc;

use super::module::{Label, LabelKind, Module, ModuleMap};
use crate::error::{Error, Result};
use crate::exactla::Mat;
use crate::schuralg::{multi_indices, pair_matrix, Algebra, MAX_TENSOR_DIM};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SlotKind {
    /// Coinvariants of the slot permutations: a symmetric power.
    Sym,
    /// Exterior power: signed coinvariants, repeated entries vanish.
    Alt,
}

/// Sort each slot group of a raw multi-index into canonical form. Returns the
/// canonical multi-index and whether the sign flipped, or `None` when an
/// alternating group has a repeated entry.
pub fn canonical(groups: &[(SlotKind, usize)], raw: &[u8]) -> Option<(Vec<u8>, bool)> {
    let mut out = raw.to_vec();
    let mut neg = false;
    let mut pos = 0;
    for &(kind, len) in groups {
        let g = &mut out[pos..pos + len];
        if kind == SlotKind::Alt {
            let mut inv = 0usize;
            for a in 0..len {
                for b in a + 1..len {
                    if g[a] > g[b] {
                        inv += 1;
                    } else if g[a] == g[b] {
                        return None;
                    }
                }
            }
            neg ^= inv % 2 == 1;
        }
        g.sort_unstable();
        pos += len;
    }
    Some((out, neg))
}

fn group_tuples(kind: SlotKind, len: usize, n: usize) -> Vec<Vec<u8>> {
    fn rec(kind: SlotKind, len: usize, n: usize, start: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v as u8);
            let next = if kind == SlotKind::Alt { v + 1 } else { v };
            rec(kind, len, n, next, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(kind, len, n, 0, &mut Vec::new(), &mut out);
    out
}

/// Quotient of `V^{⊗d}` by slot-group symmetrisations, with its canonical
/// monomial basis.
#[derive(Clone, Debug)]
pub struct TensorModule {
    pub module: Module,
    pub groups: Vec<(SlotKind, usize)>,
    basis: Vec<Vec<u8>>,
    index: HashMap<Vec<u8>, usize>,
}

impl TensorModule {
    /// Canonical lift of each basis vector, in module order.
    pub fn basis(&self) -> &[Vec<u8>] {
        &self.basis
    }

    pub fn index_of(&self, canonical_lift: &[u8]) -> Option<usize> {
        self.index.get(canonical_lift).copied()
    }

    /// Image of a raw multi-index: `(basis index, negated)`.
    pub fn project(&self, raw: &[u8]) -> Option<(usize, bool)> {
        let (c, neg) = canonical(&self.groups, raw)?;
        Some((self.index[&c], neg))
    }

    /// Linear map defined on basis lifts, with values given as signed raw
    /// multi-indices in `tgt`; the result must preserve weights.
    pub fn map_to<F>(&self, tgt: &TensorModule, f: F) -> Result<ModuleMap>
    where
        F: Fn(&[u8]) -> Vec<(Vec<u8>, i64)>,
    {
        let fp = self.module.field();
        let mut g = Mat::zeros(fp, tgt.module.dim(), self.module.dim());
        for (col, lift) in self.basis.iter().enumerate() {
            for (raw, c) in f(lift) {
                if let Some((row, neg)) = tgt.project(&raw) {
                    let v = fp.from_i64(if neg { -c } else { c });
                    g.add_at(row, col, v);
                }
            }
        }
        ModuleMap::from_global(&self.module, &tgt.module, &g)
    }

    /// Canonical projection from another slot quotient with the same slot
    /// count (typically `V^{⊗d}`), slots matched positionally.
    pub fn projection_from(&self, src: &TensorModule) -> Result<ModuleMap> {
        src.map_to(self, |lift| vec![(lift.to_vec(), 1)])
    }
}

/// Slot-quotient module over a Schur algebra `S(n,d)`; the group lengths must
/// sum to `d`.
pub fn slot_quotient(alg: &Arc<Algebra>, groups: &[(SlotKind, usize)]) -> Result<TensorModule> {
    let s = alg.schur().ok_or_else(|| Error::invalid("tensor modules need a Schur algebra"))?;
    let (n, d) = (s.n, s.d);
    if groups.iter().map(|g| g.1).sum::<usize>() != d {
        return Err(Error::invalid("slot groups must cover all tensor factors"));
    }
    let total = n.checked_pow(d as u32).unwrap_or(usize::MAX);
    if total > MAX_TENSOR_DIM {
        return Err(Error::ResourceGuard(format!("n^d = {n}^{d} exceeds the tensor budget")));
    }
    let groups: Vec<(SlotKind, usize)> = groups.iter().copied().filter(|g| g.1 > 0).collect();

    // canonical basis as the product of per-group tuples
    let mut lifts: Vec<Vec<u8>> = vec![vec![]];
    for &(kind, len) in &groups {
        let tuples = group_tuples(kind, len, n);
        lifts = lifts
            .iter()
            .flat_map(|pre| {
                tuples.iter().map(move |t| {
                    let mut v = pre.clone();
                    v.extend_from_slice(t);
                    v
                })
            })
            .collect();
    }
    let vertex_of = |lift: &[u8]| {
        let mut w = vec![0usize; n];
        for &x in lift {
            w[x as usize] += 1;
        }
        s.weight_index(&w).expect("weight present")
    };
    let nv = alg.n_vertices();
    let mut per_vertex: Vec<Vec<Vec<u8>>> = vec![Vec::new(); nv];
    for l in lifts {
        per_vertex[vertex_of(&l)].push(l);
    }
    let dims: Vec<usize> = per_vertex.iter().map(Vec::len).collect();
    let mut basis = Vec::new();
    let mut pos_in_vertex = HashMap::new();
    for list in &mut per_vertex {
        list.sort();
        for (k, l) in list.iter().enumerate() {
            pos_in_vertex.insert(l.clone(), k);
            basis.push(l.clone());
        }
    }
    let index: HashMap<Vec<u8>, usize> = basis.iter().enumerate().map(|(k, l)| (l.clone(), k)).collect();

    let f = alg.field();
    let mut action: Vec<Mat> = (0..alg.dim())
        .map(|b| {
            let (t, s) = alg.ends(b);
            Mat::zeros(f, dims[t], dims[s])
        })
        .collect();
    let all = multi_indices(n, d);
    for (sv, list) in per_vertex.iter().enumerate() {
        for (col, k) in list.iter().enumerate() {
            for i in &all {
                let Some((ci, neg)) = canonical(&groups, i) else { continue };
                let c = s.mat_index(&pair_matrix(n, i, k)).expect("orbit present");
                debug_assert_eq!(alg.ends(c).1, sv);
                let row = pos_in_vertex[&ci];
                action[c].add_at(row, col, if neg { f.neg(1) } else { 1 });
            }
        }
    }
    let module = Module::new(alg.clone(), dims, action)?;
    Ok(TensorModule { module, groups, basis, index })
}

/// `V^{⊗d}` with the defining action.
pub fn tensor_power_module(alg: &Arc<Algebra>) -> Result<TensorModule> {
    let d = alg.schur().ok_or_else(|| Error::invalid("tensor modules need a Schur algebra"))?.d;
    let mut t = slot_quotient(alg, &vec![(SlotKind::Sym, 1); d])?;
    t.module.set_label(Label::new(LabelKind::Tensor, None, format!("I^{d}")));
    Ok(t)
}

/// `Ω^i = S^{d-i} ⊗ Λ^i`.
pub fn omega_module(alg: &Arc<Algebra>, i: usize) -> Result<TensorModule> {
    let d = alg.schur().ok_or_else(|| Error::invalid("tensor modules need a Schur algebra"))?.d;
    if i > d {
        return Err(Error::invalid(format!("Ω^{i} needs i ≤ {d}")));
    }
    let mut t = slot_quotient(alg, &[(SlotKind::Sym, d - i), (SlotKind::Alt, i)])?;
    t.module.set_label(Label::new(LabelKind::Omega, None, format!("Omega{i}")));
    Ok(t)
}

fn omega_split(t: &TensorModule) -> usize {
    match t.groups.as_slice() {
        [(SlotKind::Sym, a), (SlotKind::Alt, _)] => *a,
        [(SlotKind::Sym, a)] => *a,
        [(SlotKind::Alt, _)] => 0,
        _ => panic!("not an Ω module"),
    }
}

/// De Rham differential `d(m ⊗ ω) = Σ_v ∂m/∂v ⊗ v ∧ ω`.
pub fn de_rham(src: &TensorModule, tgt: &TensorModule) -> Result<ModuleMap> {
    let a = omega_split(src);
    if omega_split(tgt) + 1 != a {
        return Err(Error::invalid("de Rham differential goes from Ω^i to Ω^{i+1}"));
    }
    src.map_to(tgt, |lift| {
        let (m, w) = lift.split_at(a);
        let mut out = Vec::new();
        let mut k = 0;
        while k < m.len() {
            let v = m[k];
            let mult = m.iter().filter(|&&x| x == v).count();
            let mut raw: Vec<u8> = m[..k].iter().chain(&m[k + mult..]).copied().collect();
            raw.extend(std::iter::repeat_n(v, mult - 1));
            raw.push(v);
            raw.extend_from_slice(w);
            out.push((raw, mult as i64));
            k += mult;
        }
        out
    })
}

/// Koszul differential `κ(m ⊗ v_1∧…∧v_i) = Σ_k (-1)^{k-1} m v_k ⊗ v_1∧…v̂_k…∧v_i`.
pub fn koszul(src: &TensorModule, tgt: &TensorModule) -> Result<ModuleMap> {
    let a = omega_split(src);
    if omega_split(tgt) != a + 1 {
        return Err(Error::invalid("Koszul differential goes from Ω^i to Ω^{i-1}"));
    }
    src.map_to(tgt, |lift| {
        let (m, w) = lift.split_at(a);
        (0..w.len())
            .map(|k| {
                let mut raw = m.to_vec();
                raw.push(w[k]);
                raw.extend(w.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, &x)| x));
                (raw, if k % 2 == 0 { 1 } else { -1 })
            })
            .collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schuralg::build_schur_algebra;

    #[test]
    fn canonical_signs() {
        let g = [(SlotKind::Sym, 2), (SlotKind::Alt, 2)];
        assert_eq!(canonical(&g, &[1, 0, 1, 0]), Some((vec![0, 1, 0, 1], true)));
        assert_eq!(canonical(&g, &[1, 0, 1, 1]), None);
    }

    #[test]
    fn tensor_power_dims() {
        let a = build_schur_algebra(2, 3, 3).unwrap();
        let t = tensor_power_module(&a).unwrap();
        assert_eq!(t.module.dim(), 8);
        t.module.check_relations(200, 1).unwrap();
    }

    #[test]
    fn omega_dims_and_identities() {
        let a = build_schur_algebra(2, 3, 3).unwrap();
        let om: Vec<_> = (0..=2).map(|i| omega_module(&a, i).unwrap()).collect();
        assert_eq!(om.iter().map(|t| t.module.dim()).collect::<Vec<_>>(), vec![4, 6, 2]);
        for t in &om {
            t.module.check_relations(300, 2).unwrap();
        }
        let d0 = de_rham(&om[0], &om[1]).unwrap();
        let d1 = de_rham(&om[1], &om[2]).unwrap();
        let k1 = koszul(&om[1], &om[0]).unwrap();
        let k2 = koszul(&om[2], &om[1]).unwrap();
        assert!(d1.compose(&d0).is_zero());
        assert!(k1.compose(&k2).is_zero());
        assert!(k1.compose(&d0).is_zero());
        assert!(k2.compose(&d1).add(&d0.compose(&k1)).is_zero());
        for (m, s, t) in [(&d0, &om[0], &om[1]), (&k2, &om[2], &om[1])] {
            assert!(m.is_equivariant(&s.module, &t.module));
        }
        // d(x^3) = 3x^2 dx = 0
        let x3 = om[0].index_of(&[0, 0, 0]).unwrap();
        let g = d0.to_global(&om[0].module, &om[1].module);
        assert!(g.col(x3).iter().all(|&v| v == 0));
    }

    #[test]
    fn leibniz_on_monomial() {
        // d(x^2 y) = 2xy ⊗ dx + x^2 ⊗ dy over S(2,3), p = 5
        let a = build_schur_algebra(2, 3, 5).unwrap();
        let o0 = omega_module(&a, 0).unwrap();
        let o1 = omega_module(&a, 1).unwrap();
        let d0 = de_rham(&o0, &o1).unwrap();
        let g = d0.to_global(&o0.module, &o1.module);
        let c = g.col(o0.index_of(&[0, 0, 1]).unwrap());
        assert_eq!(c[o1.index_of(&[0, 1, 0]).unwrap()], 2);
        assert_eq!(c[o1.index_of(&[0, 0, 1]).unwrap()], 1);
        assert_eq!(c.iter().filter(|&&v| v != 0).count(), 2);
    }
}
