use std::sync::Arc;

use rand::{Rng, SeedableRng};

use super::module::{Label, LabelKind, Module, ModuleMap};
use crate::error::{Error, Result};
use crate::exactla::{Mat, SparseMat};
use crate::schuralg::Algebra;

/// Basis of `Hom_A(M, N)`. The intertwiner equations are imposed for the
/// algebra generators only; weight preservation is built into the unknowns.
pub fn hom_space(m: &Module, n: &Module) -> Result<Vec<ModuleMap>> {
    if !Arc::ptr_eq(m.algebra(), n.algebra()) {
        return Err(Error::Shape("modules over different algebras".into()));
    }
    let alg = m.algebra();
    let f = alg.field();
    let nv = alg.n_vertices();
    // unknown X_v[r][c] sits at off[v] + r * m_v + c
    let mut off = vec![0usize; nv + 1];
    for v in 0..nv {
        off[v + 1] = off[v] + n.dims()[v] * m.dims()[v];
    }
    let nunk = off[nv];
    if nunk == 0 {
        return Ok(Vec::new());
    }
    let mut trip = Vec::new();
    let mut row = 0usize;
    for &b in alg.generators() {
        let (t, s) = alg.ends(b);
        let (nt, ms) = (n.dims()[t], m.dims()[s]);
        if nt == 0 || ms == 0 {
            continue;
        }
        let (na, ma) = (n.action(b), m.action(b));
        let (ns, mt) = (n.dims()[s], m.dims()[t]);
        // (N(b) X_s - X_t M(b))[r][c]
        for r in 0..nt {
            for c in 0..ms {
                for k in 0..ns {
                    let v = na.get(r, k);
                    if v != 0 {
                        trip.push((row, off[s] + k * ms + c, v));
                    }
                }
                for k in 0..mt {
                    let v = ma.get(k, c);
                    if v != 0 {
                        trip.push((row, off[t] + r * mt + k, f.neg(v)));
                    }
                }
                row += 1;
            }
        }
    }
    let sys = SparseMat::from_triplets(f, row, nunk, trip);
    let ns = sys.nullspace();
    Ok((0..ns.cols())
        .map(|j| {
            let col = ns.col(j);
            let blocks =
                (0..nv).map(|v| Mat::from_vec(f, n.dims()[v], m.dims()[v], col[off[v]..off[v + 1]].to_vec())).collect();
            ModuleMap { blocks }
        })
        .collect())
}

pub fn hom_dim(m: &Module, n: &Module) -> Result<usize> {
    Ok(hom_space(m, n)?.len())
}

/// Outcome of an isomorphism test.
#[derive(Clone, Debug)]
pub enum IsoResult {
    Isomorphic(ModuleMap),
    NotIsomorphic,
    /// The Hom space was too large to enumerate and sampling found nothing.
    Inconclusive,
}

impl IsoResult {
    pub fn is_iso(&self) -> bool {
        matches!(self, IsoResult::Isomorphic(_))
    }
}

/// Largest Hom space (as a set) that is enumerated exhaustively.
pub const ISO_ENUM_BOUND: u64 = 16384;

/// Decides `M ≅ N`. Random combinations of a Hom basis are tried first; if
/// none is invertible the space is enumerated when it has at most
/// `ISO_ENUM_BOUND` elements, otherwise the result is inconclusive.
pub fn iso_test(m: &Module, n: &Module) -> Result<IsoResult> {
    if m.dims() != n.dims() {
        return Ok(IsoResult::NotIsomorphic);
    }
    if m.dim() == 0 {
        return Ok(IsoResult::Isomorphic(ModuleMap::identity(m)));
    }
    let basis = hom_space(m, n)?;
    if basis.is_empty() {
        return Ok(IsoResult::NotIsomorphic);
    }
    let f = m.field();
    let p = f.p() as u64;
    let combo = |coef: &[u32]| {
        let mut acc = ModuleMap::zero(m, n);
        for (c, h) in coef.iter().zip(&basis) {
            if *c != 0 {
                acc = acc.add(&h.scale(*c));
            }
        }
        acc
    };
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x150);
    for _ in 0..32 {
        let coef: Vec<u32> = (0..basis.len()).map(|_| rng.gen_range(0..f.p())).collect();
        let h = combo(&coef);
        if h.is_iso() {
            return Ok(IsoResult::Isomorphic(h));
        }
    }
    let size = p.checked_pow(basis.len() as u32);
    match size {
        Some(sz) if sz <= ISO_ENUM_BOUND => {
            let mut coef = vec![0u32; basis.len()];
            for _ in 0..sz {
                let h = combo(&coef);
                if h.is_iso() {
                    return Ok(IsoResult::Isomorphic(h));
                }
                for c in coef.iter_mut() {
                    *c += 1;
                    if *c < f.p() {
                        break;
                    }
                    *c = 0;
                }
            }
            Ok(IsoResult::NotIsomorphic)
        }
        _ => Ok(IsoResult::Inconclusive),
    }
}

/// `A` acting on itself by left multiplication; vertex `t` holds the basis
/// elements with target `t`.
pub fn regular_module(alg: &Arc<Algebra>) -> Result<Module> {
    let f = alg.field();
    let nv = alg.n_vertices();
    let mut pos = vec![0usize; alg.dim()];
    let mut dims = vec![0usize; nv];
    for b in 0..alg.dim() {
        let t = alg.ends(b).0;
        pos[b] = dims[t];
        dims[t] += 1;
    }
    let mut action: Vec<Mat> = (0..alg.dim())
        .map(|a| {
            let (t, s) = alg.ends(a);
            Mat::zeros(f, dims[t], dims[s])
        })
        .collect();
    for (a, act) in action.iter_mut().enumerate() {
        let s = alg.ends(a).1;
        for u in 0..nv {
            for &x in alg.basis_between(s, u) {
                for &(c, z) in alg.basis_product(a, x) {
                    act.add_at(pos[c as usize], pos[x], z);
                }
            }
        }
    }
    let m = Module::new(alg.clone(), dims, action)?;
    Ok(m.with_label(Label::new(LabelKind::Regular, None, "A")))
}

/// Kuhn dual of the regular module.
pub fn dual_regular(alg: &Arc<Algebra>) -> Result<Module> {
    regular_module(alg)?.dual()
}
