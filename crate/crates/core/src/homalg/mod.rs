//! Projective resolutions and Ext over Schur algebras, the truncation
//! functors between `S(m,d)` and `S(n,d)`, and symbolic Grothendieck groups.

mod basic;
mod k0;
mod recollement;
mod resolution;

use std::sync::{Arc, Mutex, OnceLock};

use crate::error::Result;
use crate::schuralg::Algebra;

pub use basic::BasicAlgebra;
pub use k0::{det_i64, k0_matrix, rs_class, K0Class, K0Report};
pub use recollement::{injective_resolution, projective_resolution, rs_dims, LowerStar, Prop24Report, Recollement};
pub use resolution::{
    cached_resolution, ext_dims, ext_dims_basic, ext_dims_basic_with_budget, ext_dims_with_budget, minimal_resolution,
    minimal_resolution_with_budget, module_digest, ExtTable, FreeModule, Resolution, YonedaExt, DEFAULT_BUDGET,
};

type BasicCache = Mutex<Vec<Arc<BasicAlgebra>>>;

/// Basic algebra of `alg`, memoised by algebra identity for the lifetime of
/// the process.
pub fn basic_for(alg: &Arc<Algebra>) -> Result<Arc<BasicAlgebra>> {
    static CACHE: OnceLock<BasicCache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(Vec::new()));
    {
        let c = cache.lock().unwrap();
        if let Some(b) = c.iter().find(|b| Arc::ptr_eq(b.algebra(), alg)) {
            return Ok(b.clone());
        }
    }
    let b = Arc::new(BasicAlgebra::new(alg)?);
    cache.lock().unwrap().push(b.clone());
    Ok(b)
}

/// `Ext^*(M, M)` with Yoneda products, for a module over a Schur algebra.
pub fn ext_yoneda(m: &crate::polymod::Module, qmax: usize) -> Result<YonedaExt> {
    let basic = basic_for(m.algebra())?;
    YonedaExt::new(&basic.reduce(m)?, qmax)
}
