//! Integer Laurent polynomials in a fixed number of variables, Schur
//! polynomials, Littlewood–Richardson coefficients by Yamanouchi fillings,
//! and the rectangle duality identity for characters.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::combinatorics::{enum_lambda_rect, hat, Partition};
use crate::error::{Error, Result};

/// Integer Laurent polynomial in `n_vars` variables. Zero coefficients are
/// never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentCharacter {
    n_vars: usize,
    terms: BTreeMap<Vec<i32>, i64>,
}

/// Characters of polynomial modules; exponents are non-negative.
pub type SymPolynomial = LaurentCharacter;

impl LaurentCharacter {
    pub fn zero(n_vars: usize) -> Self {
        LaurentCharacter { n_vars, terms: BTreeMap::new() }
    }

    pub fn one(n_vars: usize) -> Self {
        Self::monomial(vec![0; n_vars], 1)
    }

    pub fn monomial(exp: Vec<i32>, coef: i64) -> Self {
        let mut c = Self::zero(exp.len());
        c.add_term(exp, coef);
        c
    }

    /// `(x_1 ⋯ x_n)^k`.
    pub fn det_power(n_vars: usize, k: i32) -> Self {
        Self::monomial(vec![k; n_vars], 1)
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i32>, i64> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coef(&self, exp: &[i32]) -> i64 {
        self.terms.get(exp).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, exp: Vec<i32>, coef: i64) {
        assert_eq!(exp.len(), self.n_vars, "exponent length mismatch");
        if coef == 0 {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(coef);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coef;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.n_vars, o.n_vars);
        let mut r = self.clone();
        for (e, &c) in &o.terms {
            r.add_term(e.clone(), c);
        }
        r
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut r = Self::zero(self.n_vars);
        for (e, &c) in &self.terms {
            r.add_term(e.clone(), c * k);
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(-1))
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.n_vars, o.n_vars);
        let mut r = Self::zero(self.n_vars);
        for (a, &x) in &self.terms {
            for (b, &y) in &o.terms {
                let e = a.iter().zip(b).map(|(u, v)| u + v).collect();
                r.add_term(e, x * y);
            }
        }
        r
    }

    /// Substitute `x_i ↦ x_i^{-1}` for every variable.
    pub fn invert_vars(&self) -> Self {
        let terms = self.terms.iter().map(|(e, &c)| (e.iter().map(|x| -x).collect(), c)).collect();
        LaurentCharacter { n_vars: self.n_vars, terms }
    }

    /// Multiply by `det^k`.
    pub fn twist(&self, k: i32) -> Self {
        let terms = self.terms.iter().map(|(e, &c)| (e.iter().map(|x| x + k).collect(), c)).collect();
        LaurentCharacter { n_vars: self.n_vars, terms }
    }

    pub fn permute_vars(&self, perm: &[usize]) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, &c)| {
                let mut f = vec![0; e.len()];
                for (i, &x) in e.iter().enumerate() {
                    f[perm[i]] = x;
                }
                (f, c)
            })
            .collect();
        LaurentCharacter { n_vars: self.n_vars, terms }
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n_vars.saturating_sub(1)).all(|i| {
            let mut perm: Vec<usize> = (0..self.n_vars).collect();
            perm.swap(i, i + 1);
            self.permute_vars(&perm) == *self
        })
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x >= 0))
    }

    /// Value at `x_1 = ⋯ = x_n = 1`, i.e. the dimension for a character.
    pub fn eval_ones(&self) -> i64 {
        self.terms.values().sum()
    }
}

impl fmt::Debug for LaurentCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            for (i, x) in e.iter().enumerate() {
                if *x != 0 {
                    write!(f, "*x{}^{}", i + 1, x)?;
                }
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    exp: Vec<i32>,
    coef: i64,
}

#[derive(Serialize, Deserialize)]
struct CharJson {
    vars: usize,
    terms: Vec<TermJson>,
}

impl Serialize for LaurentCharacter {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let j = CharJson {
            vars: self.n_vars,
            terms: self.terms.iter().map(|(e, &c)| TermJson { exp: e.clone(), coef: c }).collect(),
        };
        j.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentCharacter {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = CharJson::deserialize(d)?;
        let mut c = LaurentCharacter::zero(j.vars);
        for t in j.terms {
            if t.exp.len() != j.vars {
                return Err(serde::de::Error::custom("exponent length differs from vars"));
            }
            c.add_term(t.exp, t.coef);
        }
        Ok(c)
    }
}

/// Schur polynomial as the generating function of semistandard tableaux,
/// built by peeling off the horizontal strip of the largest entry.
pub fn schur_poly(l: &Partition, n_vars: usize) -> SymPolynomial {
    let mut memo = BTreeMap::new();
    schur_rec(l.parts(), n_vars, &mut memo)
}

fn schur_rec(l: &[usize], n: usize, memo: &mut BTreeMap<(Vec<usize>, usize), SymPolynomial>) -> SymPolynomial {
    if l.len() > n {
        return LaurentCharacter::zero(n);
    }
    if l.is_empty() {
        return LaurentCharacter::one(n);
    }
    if n == 1 {
        return LaurentCharacter::monomial(vec![l[0] as i32], 1);
    }
    let key = (l.to_vec(), n);
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    // μ interlaces λ: λ_{i+1} <= μ_i <= λ_i, and μ has at most n-1 rows
    let mut out = LaurentCharacter::zero(n);
    let mut mu = vec![0usize; l.len()];
    interlacing(l, 0, &mut mu, &mut |mu: &[usize]| {
        let m: Vec<usize> = mu.iter().copied().filter(|&x| x > 0).collect();
        if m.len() > n - 1 {
            return;
        }
        let strip = (l.iter().sum::<usize>() - m.iter().sum::<usize>()) as i32;
        let sub = schur_rec(&m, n - 1, memo);
        for (e, &c) in sub.terms() {
            let mut f = e.clone();
            f.push(strip);
            out.add_term(f, c);
        }
    });
    memo.insert(key, out.clone());
    out
}

fn interlacing(l: &[usize], i: usize, mu: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if i == l.len() {
        f(mu);
        return;
    }
    let lo = l.get(i + 1).copied().unwrap_or(0);
    for v in lo..=l[i] {
        mu[i] = v;
        interlacing(l, i + 1, mu, f);
    }
}

/// Which Schur polynomial represents the costandard object labelled `λ`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Convention {
    /// `S_λ ↦ s_{λ'}`: labels bound the number of columns.
    #[default]
    Conjugate,
    /// `S_λ ↦ s_λ`; only useful for comparing against other labelings.
    Direct,
}

pub fn char_costandard_with(l: &Partition, n_vars: usize, conv: Convention) -> SymPolynomial {
    match conv {
        Convention::Conjugate => schur_poly(&l.conjugate(), n_vars),
        Convention::Direct => schur_poly(l, n_vars),
    }
}

pub fn char_costandard(l: &Partition, n_vars: usize) -> SymPolynomial {
    char_costandard_with(l, n_vars, Convention::Conjugate)
}

/// Complete homogeneous symmetric polynomial `h_k`.
pub fn complete_h(k: usize, n_vars: usize) -> SymPolynomial {
    let mut out = LaurentCharacter::zero(n_vars);
    if n_vars == 0 {
        return if k == 0 { LaurentCharacter::one(0) } else { out };
    }
    for c in crate::combinatorics::compositions(k, n_vars) {
        out.add_term(c.into_iter().map(|x| x as i32).collect(), 1);
    }
    out
}

/// Elementary symmetric polynomial `e_k`.
pub fn elementary_e(k: usize, n_vars: usize) -> SymPolynomial {
    let mut out = LaurentCharacter::zero(n_vars);
    for mask in 0u32..(1 << n_vars) {
        if mask.count_ones() as usize == k {
            out.add_term((0..n_vars).map(|i| ((mask >> i) & 1) as i32).collect(), 1);
        }
    }
    out
}

/// Littlewood–Richardson expansion of the skew shape `P/λ`: content of each
/// semistandard filling whose reverse reading word is Yamanouchi.
pub fn lr_expand_skew(big: &Partition, l: &Partition) -> Result<BTreeMap<Partition, u64>> {
    if !big.contains(l) {
        return Err(Error::invalid(format!("{l:?} is not contained in {big:?}")));
    }
    // cells in reading order: rows top to bottom, each row right to left
    let rows = big.len();
    let mut cells = Vec::new();
    for r in 0..rows {
        for c in (l.part(r)..big.part(r)).rev() {
            cells.push((r, c));
        }
    }
    let mut grid: Vec<Vec<usize>> = (0..rows).map(|r| vec![0; big.part(r)]).collect();
    let mut counts = vec![0usize; cells.len() + 1];
    let mut out = BTreeMap::new();
    lr_fill(&cells, 0, l, &mut grid, &mut counts, &mut out);
    Ok(out)
}

fn lr_fill(
    cells: &[(usize, usize)],
    k: usize,
    l: &Partition,
    grid: &mut Vec<Vec<usize>>,
    counts: &mut Vec<usize>,
    out: &mut BTreeMap<Partition, u64>,
) {
    if k == cells.len() {
        let content: Vec<usize> = counts[1..].iter().copied().take_while(|&x| x > 0).collect();
        *out.entry(Partition::new(content).expect("Yamanouchi content is a partition")).or_insert(0) += 1;
        return;
    }
    let (r, c) = cells[k];
    // rows weakly increase left to right; we fill right to left
    let hi = if c + 1 < grid[r].len() { grid[r][c + 1] } else { usize::MAX };
    // columns strictly increase downwards
    let lo = if r > 0 && c >= l.part(r - 1) { grid[r - 1][c] + 1 } else { 1 };
    // a Yamanouchi prefix never uses a letter larger than one more than the
    // number of distinct letters so far
    let maxv = counts.iter().skip(1).take_while(|&&x| x > 0).count() + 1;
    for v in lo..=hi.min(maxv) {
        if v > 1 && counts[v] + 1 > counts[v - 1] {
            continue;
        }
        grid[r][c] = v;
        counts[v] += 1;
        lr_fill(cells, k + 1, l, grid, counts, out);
        counts[v] -= 1;
    }
    grid[r][c] = 0;
}

/// `P/λ` for `P = (n^k)` has exactly one LR content with at most `n`
/// columns, equal to `λ̂`, with multiplicity one.
pub fn lemma32_check(l: &Partition, n: usize, k: usize) -> Result<bool> {
    let big = Partition::rectangle(n, k);
    let h = hat(l, n, k)?;
    let exp = lr_expand_skew(&big, l)?;
    let fitting: Vec<(&Partition, &u64)> = exp.iter().filter(|(m, _)| m.columns() <= n).collect();
    Ok(fitting.len() == 1 && *fitting[0].0 == h && *fitting[0].1 == 1)
}

/// Character form of the duality: the dual character twisted by `det^k`
/// equals the character labelled by the rectangle complement.
pub fn sw_character_identity(l: &Partition, n: usize, k: usize) -> Result<bool> {
    let h = hat(l, n, k)?;
    let lhs = char_costandard(l, n).invert_vars().twist(k as i32);
    Ok(lhs == char_costandard(&h, n))
}

/// Runs both rectangle checks over every label in `Λ(d,n,k)`, all `d`.
/// Returns the first failing label, if any.
pub fn exhaustive_rectangle_checks(n: usize, k: usize) -> Result<Option<Partition>> {
    for d in 0..=n * k {
        for l in enum_lambda_rect(d, n, k)? {
            if !lemma32_check(&l, n, k)? || !sw_character_identity(&l, n, k)? {
                return Ok(Some(l));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn poly(n: usize, t: &[(&[i32], i64)]) -> SymPolynomial {
        let mut c = LaurentCharacter::zero(n);
        for (e, k) in t {
            c.add_term(e.to_vec(), *k);
        }
        c
    }

    #[test]
    fn schur_examples() {
        assert_eq!(schur_poly(&pt(&[2, 1]), 2), poly(2, &[(&[2, 1], 1), (&[1, 2], 1)]));
        assert_eq!(schur_poly(&pt(&[1]), 3), poly(3, &[(&[1, 0, 0], 1), (&[0, 1, 0], 1), (&[0, 0, 1], 1)]));
        assert!(schur_poly(&pt(&[1, 1, 1]), 2).is_zero());
    }

    #[test]
    fn costandard_examples() {
        let s3 = poly(2, &[(&[3, 0], 1), (&[2, 1], 1), (&[1, 2], 1), (&[0, 3], 1)]);
        assert_eq!(char_costandard(&pt(&[1, 1, 1]), 2), s3);
        assert_eq!(char_costandard(&pt(&[2, 1]), 2), poly(2, &[(&[2, 1], 1), (&[1, 2], 1)]));
        assert_eq!(char_costandard(&pt(&[3, 1, 1]), 3).eval_ones(), 6);
        assert_eq!(char_costandard_with(&pt(&[1, 1, 1]), 2, Convention::Direct), LaurentCharacter::zero(2));
    }

    #[test]
    fn lr_examples() {
        let e = lr_expand_skew(&pt(&[2, 2]), &pt(&[1])).unwrap();
        assert_eq!(e, BTreeMap::from([(pt(&[2, 1]), 1)]));
        let e = lr_expand_skew(&pt(&[3, 3]), &pt(&[2, 1])).unwrap();
        assert_eq!(e.get(&pt(&[2, 1])), Some(&1));
        let e = lr_expand_skew(&pt(&[1]), &pt(&[1])).unwrap();
        assert_eq!(e, BTreeMap::from([(Partition::empty(), 1)]));
        assert!(lr_expand_skew(&pt(&[1]), &pt(&[2])).is_err());
    }

    #[test]
    fn lemma32_examples() {
        assert!(lemma32_check(&pt(&[1]), 2, 2).unwrap());
        assert!(lemma32_check(&pt(&[2, 1]), 3, 2).unwrap());
        assert!(lemma32_check(&Partition::empty(), 2, 1).unwrap());
    }

    #[test]
    fn sw_identity_examples() {
        assert!(sw_character_identity(&pt(&[1]), 2, 2).unwrap());
        assert!(sw_character_identity(&pt(&[2, 2]), 2, 2).unwrap());
        assert!(sw_character_identity(&pt(&[1, 1, 1]), 2, 3).unwrap());
        assert_eq!(char_costandard(&pt(&[1]), 2).invert_vars().twist(2), poly(2, &[(&[2, 1], 1), (&[1, 2], 1)]));
    }

    #[test]
    fn json_shape() {
        let c = schur_poly(&pt(&[1]), 2);
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(s, r#"{"vars":2,"terms":[{"exp":[0,1],"coef":1},{"exp":[1,0],"coef":1}]}"#);
        let back: LaurentCharacter = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
    }
}
