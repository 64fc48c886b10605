use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::closedforms::{rs_expected, HookKind, Symbol};
use crate::error::{Error, Result};

/// Integer combination of labels in a Grothendieck group.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct K0Class(pub BTreeMap<Symbol, i64>);

impl K0Class {
    pub fn add(&mut self, s: Symbol, c: i64) {
        let e = self.0.entry(s).or_insert(0);
        *e += c;
        if *e == 0 {
            self.0.remove(&s);
        }
    }

    /// `X[k]`, using `X[1] = -X`.
    pub fn shift(&self, k: i64) -> Self {
        let sign = if k.rem_euclid(2) == 0 { 1 } else { -1 };
        K0Class(self.0.iter().map(|(&s, &c)| (s, sign * c)).collect())
    }

    /// Rewrites Specht symbols through `[Sp_i] = [G_i] + [G_{i+1}]`, with
    /// `G_0 = G_p = 0` (the composition factors of hook Specht modules in
    /// the principal block of `k Σ_p`; taken as known, not recomputed).
    pub fn to_simple_basis(&self, p: usize) -> Self {
        let mut out = K0Class::default();
        for (&s, &c) in &self.0 {
            match s {
                Symbol::Sp(i) | Symbol::SpDual(i) => {
                    for g in [i, i + 1] {
                        if g >= 1 && g < p {
                            out.add(Symbol::G(g), c);
                        }
                    }
                }
                _ => out.add(s, c),
            }
        }
        out
    }
}

impl fmt::Display for K0Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.0.iter().map(|(s, c)| format!("{c}[{s}]")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `[Rs(F_i)]` as the Euler characteristic of its cohomology.
pub fn rs_class(n: usize, i: usize) -> Result<K0Class> {
    let mut out = K0Class::default();
    for (s, c) in rs_expected(n, HookKind::F, i)?.euler() {
        out.add(s, c);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct K0Report {
    pub p: usize,
    /// `[Rs(F_i)]` in the Specht/simple labels of the case lists.
    pub classes: Vec<K0Class>,
    /// Row `i`: coefficients of `[Rs(F_i)]` on `G_1, …, G_{p-1}`.
    pub matrix: Vec<Vec<i64>>,
    pub det: i64,
    pub unimodular: bool,
}

/// Matrix of `K_0(Rs)` for `n = p - 1` in the bases `[F_i]` and `[G_j]`.
pub fn k0_matrix(p: usize, n: usize) -> Result<K0Report> {
    if p < 2 || n + 1 != p {
        return Err(Error::invalid(format!("K0 comparison needs n = p - 1, got p = {p}, n = {n}")));
    }
    let classes: Vec<K0Class> = (0..n).map(|i| rs_class(n, i)).collect::<Result<_>>()?;
    let matrix: Vec<Vec<i64>> = classes
        .iter()
        .map(|c| {
            let g = c.to_simple_basis(p);
            (1..p).map(|j| g.0.get(&Symbol::G(j)).copied().unwrap_or(0)).collect()
        })
        .collect();
    let det = det_i64(&matrix);
    Ok(K0Report { p, classes, matrix, det, unimodular: det.abs() == 1 })
}

/// Determinant by fraction-free elimination.
pub fn det_i64(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            let Some(r) = (k + 1..n).find(|&r| a[r][k] != 0) else { return 0 };
            a.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    (sign * a[n - 1][n - 1]) as i64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinants() {
        assert_eq!(det_i64(&[vec![2, 1], vec![1, 1]]), 1);
        assert_eq!(det_i64(&[vec![0, 1], vec![1, 0]]), -1);
        assert_eq!(det_i64(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 10]]), -3);
    }

    #[test]
    fn p3_classes() {
        let r = k0_matrix(3, 2).unwrap();
        assert_eq!(r.classes[0].0, BTreeMap::from([(Symbol::G(2), -1)]));
        assert_eq!(r.classes[1].0, BTreeMap::from([(Symbol::Sp(1), 1)]));
        assert!(r.unimodular);
    }

    #[test]
    fn p2_edge() {
        let r = k0_matrix(2, 1).unwrap();
        assert_eq!(r.matrix.len(), 1);
        assert_eq!(r.det.abs(), 1);
        assert!(k0_matrix(5, 3).is_err());
    }
}
