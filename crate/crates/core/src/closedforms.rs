//! Closed formulas for the p-hook block of `P_{p,n}`: decomposition matrix,
//! Ext tables, expected derived-functor cohomology and the Yoneda algebra
//! of the simples.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::characters::char_costandard;
use crate::combinatorics::{hat, hook_specht_dim, is_p_hook, Partition};
use crate::error::{Error, Result};
use crate::homalg::ExtTable;
use crate::polymod::simple_dim_sym;

pub fn dec_matrix(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|i| (0..n).map(|j| i64::from(j == i || j == i + 1)).collect()).collect()
}

/// The six pairs of hook functors with a closed Ext formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ExtPair {
    FS,
    FF,
    SS,
    SF,
    FW,
    SW,
}

impl ExtPair {
    pub const ALL: [ExtPair; 6] = [ExtPair::FS, ExtPair::FF, ExtPair::SS, ExtPair::SF, ExtPair::FW, ExtPair::SW];

    /// Kinds of the first and second argument.
    pub fn kinds(self) -> (HookKind, HookKind) {
        use HookKind::*;
        match self {
            ExtPair::FS => (F, S),
            ExtPair::FF => (F, F),
            ExtPair::SS => (S, S),
            ExtPair::SF => (S, F),
            ExtPair::FW => (F, W),
            ExtPair::SW => (S, W),
        }
    }

    pub fn from_kinds(a: HookKind, b: HookKind) -> Option<Self> {
        ExtPair::ALL.into_iter().find(|p| p.kinds() == (a, b))
    }

    /// Degrees `q` with `Ext^q = k`.
    pub fn degrees(self, n: usize, i: usize, j: usize) -> Result<Vec<usize>> {
        if i >= n || j >= n {
            return Err(Error::invalid(format!("hook indices ({i},{j}) out of range for n = {n}")));
        }
        let (ii, jj, nn) = (i as i64, j as i64, n as i64);
        let mut out: BTreeSet<i64> = BTreeSet::new();
        match self {
            ExtPair::FS => {
                if j >= i {
                    out.insert(jj - ii);
                }
            }
            ExtPair::FF => {
                let top = n - i.max(j) - 1;
                for r in 0..=top as i64 {
                    out.insert((ii - jj).abs() + 2 * r);
                }
            }
            ExtPair::SS => {
                if i == j {
                    out.insert(0);
                }
                if j > i {
                    out.insert(jj - ii - 1);
                    out.insert(jj - ii);
                }
            }
            ExtPair::SF => {
                if i < j {
                    out.insert(jj - ii - 1);
                }
                out.insert(2 * nn - ii - jj - 2);
            }
            ExtPair::FW => {
                if i > j {
                    out.insert(ii - jj - 1);
                }
                out.insert(2 * nn - ii - jj - 2);
            }
            ExtPair::SW => {
                if i == j {
                    out.insert(0);
                }
                out.insert(2 * nn - ii - jj - 3);
                out.insert(2 * nn - ii - jj - 2);
            }
        }
        Ok(out.into_iter().filter(|&q| q >= 0).map(|q| q as usize).collect())
    }

    pub fn table(self, n: usize, i: usize, j: usize, qmax: usize) -> Result<ExtTable> {
        let (a, b) = self.kinds();
        Ok(ExtTable::from_degrees(
            Symbol::hook(a, i).to_string(),
            Symbol::hook(b, j).to_string(),
            &self.degrees(n, i, j)?,
            qmax,
        ))
    }
}

impl fmt::Display for ExtPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

pub fn ext_fs(n: usize, i: usize, j: usize, qmax: usize) -> Result<ExtTable> {
    ExtPair::FS.table(n, i, j, qmax)
}
pub fn ext_ff(n: usize, i: usize, j: usize, qmax: usize) -> Result<ExtTable> {
    ExtPair::FF.table(n, i, j, qmax)
}
pub fn ext_ss(n: usize, i: usize, j: usize, qmax: usize) -> Result<ExtTable> {
    ExtPair::SS.table(n, i, j, qmax)
}
pub fn ext_sf(n: usize, i: usize, j: usize, qmax: usize) -> Result<ExtTable> {
    ExtPair::SF.table(n, i, j, qmax)
}
pub fn ext_fw(n: usize, i: usize, j: usize, qmax: usize) -> Result<ExtTable> {
    ExtPair::FW.table(n, i, j, qmax)
}
pub fn ext_sw(n: usize, i: usize, j: usize, qmax: usize) -> Result<ExtTable> {
    ExtPair::SW.table(n, i, j, qmax)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum HookKind {
    S,
    F,
    W,
}

/// Labels appearing in expected cohomology: functors evaluated on `k^m`
/// and `Σ_p`-modules.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Symbol {
    S(usize),
    F(usize),
    W(usize),
    Sp(usize),
    SpDual(usize),
    G(usize),
}

impl Symbol {
    pub fn hook(kind: HookKind, i: usize) -> Self {
        match kind {
            HookKind::S => Symbol::S(i),
            HookKind::F => Symbol::F(i),
            HookKind::W => Symbol::W(i),
        }
    }

    /// Dimension at `p`; functor symbols are evaluated on `k^m`.
    pub fn dim(&self, p: usize, m: usize) -> Result<u64> {
        let eval = |i: usize| -> Result<i64> {
            if i >= p {
                return Ok(0);
            }
            Ok(char_costandard(&Partition::hook(p, i), m).eval_ones())
        };
        let v = match *self {
            Symbol::S(i) | Symbol::W(i) => eval(i)?,
            // [W_k] = [F_k] + [F_{k+1}] along the hook block of P_p
            Symbol::F(i) => {
                (i..p).map(|k| eval(k).map(|x| if (k - i) % 2 == 0 { x } else { -x })).sum::<Result<i64>>()?
            }
            Symbol::Sp(i) | Symbol::SpDual(i) => hook_specht_dim(p, i)? as i64,
            Symbol::G(i) => {
                if i == 0 {
                    0
                } else {
                    simple_dim_sym(p, i)? as i64
                }
            }
        };
        u64::try_from(v).map_err(|_| Error::inconsistent(format!("negative dimension for {self}")))
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::S(i) => write!(f, "S{i}"),
            Symbol::F(i) => write!(f, "F{i}"),
            Symbol::W(i) => write!(f, "W{i}"),
            Symbol::Sp(i) => write!(f, "Sp{i}"),
            Symbol::SpDual(i) => write!(f, "Sp'{i}"),
            Symbol::G(i) => write!(f, "G{i}"),
        }
    }
}

/// Cohomology as a list of `(degree, label)`; a degree may repeat.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedCohomology {
    pub n: usize,
    pub terms: Vec<(usize, Symbol)>,
}

impl ExpectedCohomology {
    /// Total dimension in each degree `0..=qmax`.
    pub fn dims(&self, p: usize, m: usize, qmax: usize) -> Result<Vec<u64>> {
        let mut out = vec![0u64; qmax + 1];
        for &(q, s) in &self.terms {
            if q <= qmax {
                out[q] += s.dim(p, m)?;
            }
        }
        Ok(out)
    }

    /// Euler characteristic `Σ (-1)^q [H^q]`.
    pub fn euler(&self) -> BTreeMap<Symbol, i64> {
        let mut out = BTreeMap::new();
        for &(q, s) in &self.terms {
            *out.entry(s).or_insert(0) += if q % 2 == 0 { 1 } else { -1 };
        }
        out.retain(|_, c| *c != 0);
        out
    }
}

fn check_range(n: usize, i: usize) -> Result<()> {
    if n == 0 || i >= n {
        return Err(Error::invalid(format!("index {i} out of range for n = {n}")));
    }
    Ok(())
}

/// `H^*(Rj_* X_i)` for the truncation `P_p → P_{p,n}`, labels taken in `P_p`.
/// For `W_i` the extra terms are `F_n` (the simple killed by truncation);
/// `F_{n-1}` in the same position would contradict `Rs(W_i)`.
pub fn rjstar_expected(n: usize, kind: HookKind, i: usize) -> Result<ExpectedCohomology> {
    check_range(n, i)?;
    let terms = if i == n - 1 {
        vec![(0, Symbol::S(n - 1))]
    } else {
        match kind {
            HookKind::F => vec![(0, Symbol::F(i)), (n - i - 1, Symbol::F(n))],
            HookKind::W => vec![(0, Symbol::W(i)), (n - i - 2, Symbol::F(n)), (n - i - 1, Symbol::F(n))],
            HookKind::S => vec![(0, Symbol::S(i))],
        }
    };
    Ok(ExpectedCohomology { n, terms })
}

/// `H^*(Rs X_i)` as `Σ_p`-modules.
pub fn rs_expected(n: usize, kind: HookKind, i: usize) -> Result<ExpectedCohomology> {
    check_range(n, i)?;
    let terms = match kind {
        HookKind::S => vec![(0, Symbol::Sp(i))],
        _ if i == n - 1 => vec![(0, Symbol::Sp(n - 1))],
        HookKind::F if i == 0 => vec![(n - 1, Symbol::G(n))],
        HookKind::F => vec![(0, Symbol::G(i)), (n - 1 - i, Symbol::G(n))],
        HookKind::W => vec![(0, Symbol::SpDual(i)), (n - i - 2, Symbol::G(n)), (n - i - 1, Symbol::G(n))],
    };
    Ok(ExpectedCohomology { n, terms })
}

/// Reading of the product rule `b^t_{lm}·b^u_{ji}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum YonedaConvention {
    /// Non-zero iff `j = l`, result `b^{t+u}_{mi}`, bound `t+u ≤ 2n-i-m-2`.
    Verbatim,
    /// Non-zero iff `m = j`, result `b^{t+u}_{li}`, bound `t+u ≤ 2n-i-l-2`.
    Swapped,
}

/// The graded algebra spanned by the symbols `b^t_{ji}`.
#[derive(Clone, Debug)]
pub struct YonedaB {
    pub n: usize,
    pub convention: YonedaConvention,
    /// `(t, j, i)` for each basis symbol.
    pub basis: Vec<(usize, usize, usize)>,
    index: HashMap<(usize, usize, usize), usize>,
}

/// A failed algebra axiom, with the offending basis symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomFailure {
    Associativity(usize, usize, usize),
    Unit(usize),
}

impl YonedaB {
    pub fn new(n: usize, convention: YonedaConvention) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("n must be positive"));
        }
        let mut basis = Vec::new();
        for t in 0..=2 * n - 2 {
            for j in 0..n {
                for i in 0..n {
                    if Self::admissible(n, t, j, i) {
                        basis.push((t, j, i));
                    }
                }
            }
        }
        let index = basis.iter().enumerate().map(|(k, &s)| (s, k)).collect();
        Ok(YonedaB { n, convention, basis, index })
    }

    pub fn admissible(n: usize, t: usize, j: usize, i: usize) -> bool {
        let d = i.abs_diff(j);
        t >= d && (t - d).is_multiple_of(2) && (t - d) / 2 < n - i.max(j)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, t: usize, j: usize, i: usize) -> Option<usize> {
        self.index.get(&(t, j, i)).copied()
    }

    pub fn symbol(&self, a: usize) -> String {
        let (t, j, i) = self.basis[a];
        format!("b^{t}_{{{j}{i}}}")
    }

    /// Product of two basis symbols; `None` means zero.
    pub fn mul(&self, a: usize, b: usize) -> Option<usize> {
        let (t, l, m) = self.basis[a];
        let (u, j, i) = self.basis[b];
        let n = self.n;
        let (ok, res) = match self.convention {
            YonedaConvention::Verbatim => (j == l && t + u + i + m + 2 <= 2 * n, (m, i)),
            YonedaConvention::Swapped => (m == j && t + u + i + l + 2 <= 2 * n, (l, i)),
        };
        if !ok {
            return None;
        }
        self.index_of(t + u, res.0, res.1)
    }

    /// Product of linear combinations (dense coefficient vectors over `Z`).
    pub fn mul_vec(&self, x: &[i64], y: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; self.dim()];
        for (a, &xa) in x.iter().enumerate() {
            if xa == 0 {
                continue;
            }
            for (b, &yb) in y.iter().enumerate() {
                if yb != 0 {
                    if let Some(c) = self.mul(a, b) {
                        out[c] += xa * yb;
                    }
                }
            }
        }
        out
    }

    pub fn unit(&self) -> Vec<i64> {
        let mut e = vec![0i64; self.dim()];
        for i in 0..self.n {
            e[self.index_of(0, i, i).expect("b^0_ii exists")] = 1;
        }
        e
    }

    /// Exhaustive associativity over basis triples, then the two-sided unit.
    pub fn check_axioms(&self) -> std::result::Result<(), AxiomFailure> {
        let d = self.dim();
        for a in 0..d {
            for b in 0..d {
                let ab = self.mul(a, b);
                for c in 0..d {
                    let left = ab.and_then(|x| self.mul(x, c));
                    let right = self.mul(b, c).and_then(|y| self.mul(a, y));
                    if left != right {
                        return Err(AxiomFailure::Associativity(a, b, c));
                    }
                }
            }
        }
        let e = self.unit();
        for a in 0..d {
            let mut x = vec![0i64; d];
            x[a] = 1;
            if self.mul_vec(&e, &x) != x || self.mul_vec(&x, &e) != x {
                return Err(AxiomFailure::Unit(a));
            }
        }
        Ok(())
    }

    /// `dim e_j B_t e_i`.
    pub fn graded_dim(&self, t: usize, j: usize, i: usize) -> usize {
        usize::from(self.index_of(t, j, i).is_some())
    }
}

/// Outcome of trying both conventions.
#[derive(Clone, Debug)]
pub struct ConventionReport {
    pub verbatim: std::result::Result<(), AxiomFailure>,
    pub swapped: std::result::Result<(), AxiomFailure>,
}

impl ConventionReport {
    /// The first convention passing the axioms, verbatim preferred.
    pub fn accepted(&self) -> Option<YonedaConvention> {
        if self.verbatim.is_ok() {
            Some(YonedaConvention::Verbatim)
        } else if self.swapped.is_ok() {
            Some(YonedaConvention::Swapped)
        } else {
            None
        }
    }
}

pub fn yoneda_convention_report(n: usize) -> Result<ConventionReport> {
    Ok(ConventionReport {
        verbatim: YonedaB::new(n, YonedaConvention::Verbatim)?.check_axioms(),
        swapped: YonedaB::new(n, YonedaConvention::Swapped)?.check_axioms(),
    })
}

/// Builds `B` under the first convention passing the axioms.
#[allow(non_snake_case)]
pub fn yoneda_B(n: usize) -> Result<YonedaB> {
    let rep = yoneda_convention_report(n)?;
    let conv = rep.accepted().ok_or_else(|| {
        Error::inconsistent(format!("no product convention is associative and unital for n = {n}: {rep:?}"))
    })?;
    YonedaB::new(n, conv)
}

/// Nilpotency order of `x = b^2_{ii}` in the diagonal subalgebra
/// `span{b^{2r}_{ii}}`, after checking that this span is closed,
/// commutative and generated by `x`. Returns 1 when the span is the ground
/// field.
pub fn diagonal_nilpotency(b: &YonedaB, i: usize) -> Result<usize> {
    let diag: Vec<usize> = (0..b.dim()).filter(|&a| b.basis[a].1 == i && b.basis[a].2 == i).collect();
    for &x in &diag {
        for &y in &diag {
            let xy = b.mul(x, y);
            if xy != b.mul(y, x) {
                return Err(Error::inconsistent(format!("diagonal {i} is not commutative")));
            }
            if let Some(z) = xy {
                if !diag.contains(&z) {
                    return Err(Error::inconsistent(format!("diagonal {i} is not closed")));
                }
            }
        }
    }
    let one = b.index_of(0, i, i).ok_or_else(|| Error::inconsistent("missing b^0_ii"))?;
    let Some(x) = b.index_of(2, i, i) else {
        return if diag == [one] { Ok(1) } else { Err(Error::inconsistent("diagonal has no degree-2 generator")) };
    };
    // x^k = b^{2k}_ii until it vanishes
    let mut pow = Some(x);
    let mut k = 1;
    while let Some(cur) = pow {
        if b.basis[cur] != (2 * k, i, i) {
            return Err(Error::inconsistent(format!("x^{k} is not b^{}_ii", 2 * k)));
        }
        pow = b.mul(cur, x);
        k += 1;
    }
    if k != diag.len() {
        return Err(Error::inconsistent("powers of x do not span the diagonal"));
    }
    Ok(k)
}

/// Every diagonal subalgebra is `k[x]/(x^{n-i})`.
pub fn yoneda_diag_check(n: usize) -> Result<bool> {
    let b = yoneda_B(n)?;
    for i in 0..n {
        if diagonal_nilpotency(&b, i)? != n - i {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The two Ext queries identified by the hat duality, with closed forms
/// where both labels are p-hooks at `d = p`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SwQuery {
    pub n: usize,
    pub k: usize,
    pub kind: HookKind,
    pub left: (usize, Partition, Partition),
    pub right: (usize, Partition, Partition),
    pub left_closed: Option<ExtTable>,
    pub right_closed: Option<ExtTable>,
}

pub fn sw_ext_symmetry_expected(
    l: &Partition,
    m: &Partition,
    n: usize,
    k: usize,
    kind: HookKind,
    p: usize,
    qmax: usize,
) -> Result<SwQuery> {
    let d = l.weight();
    if m.weight() != d {
        return Err(Error::invalid("labels of different weights"));
    }
    for x in [l, m] {
        if x.columns() > n || x.len() > k {
            return Err(Error::invalid(format!("{x} does not fit in the {n}x{k} rectangle")));
        }
    }
    let (lh, mh) = (hat(l, n, k)?, hat(m, n, k)?);
    let closed = |a: &Partition, b: &Partition, w: usize| -> Result<Option<ExtTable>> {
        if w != p {
            return Ok(None);
        }
        let (Some(i), Some(j)) = (is_p_hook(a, p), is_p_hook(b, p)) else { return Ok(None) };
        if i >= n || j >= n {
            return Ok(None);
        }
        let pair = ExtPair::from_kinds(kind, kind).expect("diagonal pair");
        pair.table(n, i, j, qmax).map(Some)
    };
    let left_closed = closed(l, m, d)?;
    let right_closed = closed(&lh, &mh, n * k - d)?;
    Ok(SwQuery { n, k, kind, left: (d, l.clone(), m.clone()), right: (n * k - d, lh, mh), left_closed, right_closed })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decomposition_matrices() {
        assert_eq!(dec_matrix(2), vec![vec![1, 1], vec![0, 1]]);
        assert_eq!(dec_matrix(1), vec![vec![1]]);
        let d = dec_matrix(4);
        assert_eq!(d[2], vec![0, 0, 1, 1]);
        assert_eq!(d[3], vec![0, 0, 0, 1]);
    }

    #[test]
    fn ext_examples() {
        assert_eq!(ExtPair::FF.degrees(2, 0, 0).unwrap(), vec![0, 2]);
        assert_eq!(ExtPair::SS.degrees(3, 0, 2).unwrap(), vec![1, 2]);
        assert_eq!(ExtPair::SW.degrees(2, 0, 0).unwrap(), vec![0, 1, 2]);
        assert_eq!(ExtPair::FS.degrees(2, 0, 1).unwrap(), vec![1]);
        assert!(ExtPair::FF.degrees(2, 2, 0).is_err());
    }

    #[test]
    fn expected_lists() {
        assert_eq!(rs_expected(2, HookKind::F, 0).unwrap().terms, vec![(1, Symbol::G(2))]);
        assert_eq!(
            rs_expected(3, HookKind::W, 0).unwrap().terms,
            vec![(0, Symbol::SpDual(0)), (1, Symbol::G(3)), (2, Symbol::G(3))]
        );
        assert_eq!(rjstar_expected(2, HookKind::F, 1).unwrap().terms, vec![(0, Symbol::S(1))]);
        for k in [HookKind::S, HookKind::F, HookKind::W] {
            assert_eq!(rs_expected(3, k, 2).unwrap().terms, vec![(0, Symbol::Sp(2))]);
        }
    }

    #[test]
    fn symbol_dimensions() {
        // F_0 in P_3 on k^3 is the Frobenius twist, F_2 = Λ^3
        assert_eq!(Symbol::F(0).dim(3, 3).unwrap(), 3);
        assert_eq!(Symbol::F(2).dim(3, 3).unwrap(), 1);
        assert_eq!(Symbol::G(2).dim(3, 2).unwrap(), 1);
        assert_eq!(Symbol::Sp(1).dim(3, 2).unwrap(), 2);
    }

    #[test]
    fn yoneda_n2() {
        let b = YonedaB::new(2, YonedaConvention::Swapped).unwrap();
        assert_eq!(b.dim(), 5);
        let e00 = b.index_of(0, 0, 0).unwrap();
        let x = b.index_of(2, 0, 0).unwrap();
        assert_eq!(b.mul(e00, x), Some(x));
        assert_eq!(b.mul(x, x), None);
    }

    #[test]
    fn verbatim_reading_is_not_unital() {
        let rep = yoneda_convention_report(2).unwrap();
        assert!(rep.verbatim.is_err());
        assert_eq!(rep.accepted(), Some(YonedaConvention::Swapped));
    }

    #[test]
    fn diagonal_orders() {
        let b = yoneda_B(4).unwrap();
        assert_eq!(diagonal_nilpotency(&b, 1).unwrap(), 3);
        let b = yoneda_B(3).unwrap();
        assert_eq!(diagonal_nilpotency(&b, 2).unwrap(), 1);
        assert_eq!(diagonal_nilpotency(&yoneda_B(2).unwrap(), 0).unwrap(), 2);
    }
}
