//! Partitions and the label sets of the categories: `Λ(d,n)` (diagrams of
//! weight `d` with at most `n` columns), the rectangle-bounded `Λ(d,n,k)`,
//! p-cores, the block invariant `α`, and the rectangle complement `λ ↦ λ̂`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Weakly decreasing sequence of positive parts. Stored without trailing
/// zeros; callers that need padding do it locally.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Accepts trailing zeros and strips them; rejects increasing sequences.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(Error::invalid(format!("{parts:?} is not a partition")));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: vec![] }
    }

    /// The hook `(i+1, 1^{p-i-1})` of weight `p`.
    pub fn hook(p: usize, i: usize) -> Self {
        assert!(i < p, "hook index out of range");
        let mut parts = vec![i + 1];
        parts.extend(std::iter::repeat_n(1, p - i - 1));
        Partition { parts }
    }

    /// The rectangle `(n^k)`.
    pub fn rectangle(n: usize, k: usize) -> Self {
        if n == 0 {
            return Partition::empty();
        }
        Partition { parts: vec![n; k] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of rows.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Number of columns, i.e. the largest part.
    pub fn columns(&self) -> usize {
        self.parts.first().copied().unwrap_or(0)
    }

    /// Part `i` (0-based), zero beyond the length.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn padded(&self, len: usize) -> Vec<usize> {
        let mut v = self.parts.clone();
        v.resize(len.max(v.len()), 0);
        v
    }

    pub fn conjugate(&self) -> Partition {
        let c = self.columns();
        let parts = (1..=c).map(|j| self.parts.iter().filter(|&&x| x >= j).count()).collect();
        Partition { parts }
    }

    /// Diagram containment `other ⊆ self`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.parts.iter().zip(&self.parts).all(|(a, b)| a <= b)
    }

    /// Classical dominance `self ⊵ other`; both must have the same weight.
    pub fn dominates(&self, other: &Partition) -> Result<bool> {
        if self.weight() != other.weight() {
            return Err(Error::invalid("dominance between partitions of different weight"));
        }
        let n = self.len().max(other.len());
        let (mut a, mut b) = (0, 0);
        for i in 0..n {
            a += self.part(i);
            b += other.part(i);
            if a < b {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Hook lengths of the cells of the first column, read top to bottom.
    pub fn beta_numbers(&self) -> Vec<usize> {
        let r = self.len();
        (0..r).map(|i| self.parts[i] + (r - 1 - i)).collect()
    }

    pub fn from_beta_numbers(beta: &[usize]) -> Partition {
        let mut b = beta.to_vec();
        b.sort_unstable_by(|x, y| y.cmp(x));
        let r = b.len();
        let parts = b.iter().enumerate().map(|(i, &x)| x - (r - 1 - i)).collect();
        Partition::new(parts).expect("beta set yields a partition")
    }

    /// Hook length of cell `(i, j)` (0-based); the cell must lie in the diagram.
    pub fn hook_length(&self, i: usize, j: usize) -> usize {
        let arm = self.parts[i] - j - 1;
        let leg = self.conjugate().part(j) - i - 1;
        arm + leg + 1
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Vec<usize> {
        p.parts
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;
    /// Comma separated parts; the empty string or `()` is the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']).trim();
        if t.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = t
            .split(',')
            .map(|x| x.trim().parse::<usize>().map_err(|_| Error::invalid(format!("bad part {x:?} in {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// Lexicographic order on parts, so that `sort` gives lexicographic
/// ascending order; enumeration uses descending.
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.parts.cmp(&other.parts)
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Partitions of `d` with all parts `<= max_part` and at most `max_len`
/// parts, in lexicographically descending order.
pub fn partitions_bounded(d: usize, max_part: usize, max_len: usize) -> Vec<Partition> {
    fn rec(rem: usize, max_part: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        if slots == 0 {
            return;
        }
        for x in (1..=max_part.min(rem)).rev() {
            cur.push(x);
            rec(rem - x, x, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(d, max_part, max_len, &mut Vec::new(), &mut out);
    out
}

/// `Λ(d,n)`: partitions of `d` with at most `n` columns.
pub fn enum_lambda(d: usize, n: usize) -> Vec<Partition> {
    partitions_bounded(d, n, usize::MAX)
}

/// `Λ(d,n,k)`: at most `n` columns and at most `k` rows.
pub fn enum_lambda_rect(d: usize, n: usize, k: usize) -> Result<Vec<Partition>> {
    if d > n * k {
        return Err(Error::invalid(format!("weight {d} does not fit in a {n}x{k} rectangle")));
    }
    Ok(partitions_bounded(d, n, k))
}

pub fn conjugate(l: &Partition) -> Partition {
    l.conjugate()
}

/// The order on `Λ(d,n)`: reversed dominance, so `λ ≤ μ` iff `λ ⊵ μ`.
pub fn paper_leq(l: &Partition, m: &Partition) -> Result<bool> {
    l.dominates(m)
}

/// p-core by sliding beads up the runners of a p-abacus.
pub fn p_core(l: &Partition, p: usize) -> Partition {
    assert!(p >= 1);
    let beta = l.beta_numbers();
    let mut runners: Vec<usize> = vec![0; p];
    for &b in &beta {
        runners[b % p] += 1;
    }
    let mut core_beta = Vec::with_capacity(beta.len());
    for (r, &count) in runners.iter().enumerate() {
        for k in 0..count {
            core_beta.push(r + k * p);
        }
    }
    Partition::from_beta_numbers(&core_beta)
}

/// True iff the diagram has a removable rim hook of length `p`, i.e. some
/// beta number `b >= p` with `b - p` not a beta number.
pub fn has_removable_rim_hook(l: &Partition, p: usize) -> bool {
    let beta = l.beta_numbers();
    beta.iter().any(|&b| b >= p && !beta.contains(&(b - p)))
}

/// Value of the block invariant `α`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Alpha {
    Finite(u32),
    /// `n = 1`: the defining condition is vacuous.
    Unconstrained,
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Alpha::Finite(r) => write!(f, "{r}"),
            Alpha::Unconstrained => write!(f, "inf"),
        }
    }
}

fn p_adic_valuation(mut x: usize, p: usize) -> u32 {
    assert!(x > 0);
    let mut v = 0;
    while x.is_multiple_of(p) {
        x /= p;
        v += 1;
    }
    v
}

/// Largest `r` with `λ'_i - λ'_{i+1} ≡ -1 (mod p^r)` for `1 <= i <= n-1`,
/// the conjugate padded to exactly `n` entries.
pub fn alpha(l: &Partition, p: usize, n: usize) -> Result<Alpha> {
    if l.columns() > n {
        return Err(Error::invalid(format!("{l:?} has more than {n} columns")));
    }
    if n <= 1 {
        return Ok(Alpha::Unconstrained);
    }
    let c = l.conjugate().padded(n);
    // x ≡ -1 mod p^r  <=>  p^r | x + 1
    let r = (0..n - 1).map(|i| p_adic_valuation(c[i] - c[i + 1] + 1, p)).min().unwrap();
    Ok(Alpha::Finite(r))
}

/// One block of `Λ(d,n)` with its invariants.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub core: Partition,
    pub alpha: Alpha,
    pub members: Vec<Partition>,
}

/// Blocks of `Λ(d,n)` as classes of equal `(p-core, α)`, listed in order of
/// first appearance in the enumeration.
pub fn blocks(d: usize, n: usize, p: usize) -> Result<Vec<Block>> {
    let mut order: Vec<(Partition, Alpha)> = Vec::new();
    let mut classes: BTreeMap<(Partition, Alpha), Vec<Partition>> = BTreeMap::new();
    for l in enum_lambda(d, n) {
        let key = (p_core(&l, p), alpha(&l, p, n)?);
        if !classes.contains_key(&key) {
            order.push(key.clone());
        }
        classes.entry(key).or_default().push(l);
    }
    Ok(order
        .into_iter()
        .map(|k| {
            let members = classes.remove(&k).unwrap();
            Block { core: k.0, alpha: k.1, members }
        })
        .collect())
}

/// `Some(i)` when `λ = (i+1, 1^{p-i-1})`.
pub fn is_p_hook(l: &Partition, p: usize) -> Option<usize> {
    if l.weight() != p || l.is_empty() {
        return None;
    }
    let i = l.parts[0] - 1;
    (l.parts[1..].iter().all(|&x| x == 1)).then_some(i)
}

/// Complement in the `n x k` rectangle, turned upside down:
/// `(λ_1..λ_k) ↦ (n-λ_k, ..., n-λ_1)`.
pub fn hat(l: &Partition, n: usize, k: usize) -> Result<Partition> {
    if l.columns() > n || l.len() > k {
        return Err(Error::invalid(format!("{l:?} does not fit in {n} columns and {k} rows")));
    }
    let pad = l.padded(k);
    Partition::new(pad.iter().rev().map(|&x| n - x).collect())
}

/// Length function of the Kazhdan–Lusztig theory on `Λ(p,n)`.
pub fn kl_length(l: &Partition, p: usize, _n: usize) -> usize {
    is_p_hook(l, p).unwrap_or(0)
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Number of standard tableaux of the hook `(i+1, 1^{p-i-1})`.
pub fn hook_specht_dim(p: usize, i: usize) -> Result<u64> {
    if i >= p {
        return Err(Error::invalid(format!("hook index {i} out of range for p={p}")));
    }
    Ok(binomial(p as u64 - 1, i as u64))
}

/// Number of standard Young tableaux by the hook length formula.
pub fn syt_count(l: &Partition) -> u64 {
    let d = l.weight() as u64;
    let mut num: u128 = (1..=d as u128).product();
    for i in 0..l.len() {
        for j in 0..l.parts[i] {
            num /= l.hook_length(i, j) as u128;
        }
    }
    num as u64
}

/// Compositions of `d` into exactly `n` non-negative parts, lexicographically
/// descending.
pub fn compositions(d: usize, n: usize) -> Vec<Vec<usize>> {
    fn rec(rem: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slots == 1 {
            cur.push(rem);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for x in (0..=rem).rev() {
            cur.push(x);
            rec(rem - x, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(vec![]);
        }
        return out;
    }
    rec(d, n, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enum_lambda(3, 2), vec![pt(&[2, 1]), pt(&[1, 1, 1])]);
        assert_eq!(enum_lambda(0, 5), vec![Partition::empty()]);
        assert_eq!(enum_lambda(5, 2), vec![pt(&[2, 2, 1]), pt(&[2, 1, 1, 1]), pt(&[1, 1, 1, 1, 1])]);
        assert_eq!(enum_lambda_rect(3, 2, 2).unwrap(), vec![pt(&[2, 1])]);
        assert_eq!(enum_lambda_rect(4, 2, 2).unwrap(), vec![pt(&[2, 2])]);
        assert_eq!(enum_lambda_rect(1, 2, 2).unwrap(), vec![pt(&[1])]);
        assert!(enum_lambda_rect(5, 2, 2).is_err());
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(pt(&[2, 1]).conjugate(), pt(&[2, 1]));
        assert_eq!(pt(&[3, 1]).conjugate(), pt(&[2, 1, 1]));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
    }

    #[test]
    fn reversed_dominance() {
        assert!(paper_leq(&pt(&[2, 1]), &pt(&[1, 1, 1])).unwrap());
        assert!(!paper_leq(&pt(&[1, 1, 1]), &pt(&[2, 1])).unwrap());
        assert!(paper_leq(&pt(&[2, 1]), &pt(&[2, 1])).unwrap());
        assert!(paper_leq(&pt(&[2, 1]), &pt(&[1])).is_err());
    }

    #[test]
    fn p_core_examples() {
        assert_eq!(p_core(&pt(&[2, 1, 1, 1]), 5), Partition::empty());
        assert_eq!(p_core(&pt(&[2, 2, 1]), 5), pt(&[2, 2, 1]));
        assert_eq!(p_core(&pt(&[1]), 3), pt(&[1]));
        assert_eq!(p_core(&pt(&[4, 2]), 3), pt(&[4, 2]));
        assert_eq!(p_core(&pt(&[4, 1]), 3), pt(&[1, 1]));
        assert_eq!(p_core(&pt(&[3, 3]), 3), Partition::empty());
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(alpha(&pt(&[2, 1, 1, 1]), 5, 2).unwrap(), Alpha::Finite(0));
        assert_eq!(alpha(&pt(&[2, 1]), 2, 2).unwrap(), Alpha::Finite(1));
        assert_eq!(alpha(&pt(&[1]), 3, 1).unwrap(), Alpha::Unconstrained);
        assert!(alpha(&pt(&[3]), 3, 2).is_err());
    }

    #[test]
    fn block_examples() {
        let b = blocks(3, 2, 3).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].members, vec![pt(&[2, 1]), pt(&[1, 1, 1])]);

        let b = blocks(5, 2, 5).unwrap();
        let mut sets: Vec<Vec<Partition>> = b.into_iter().map(|x| x.members).collect();
        sets.sort();
        assert_eq!(sets, vec![vec![pt(&[2, 1, 1, 1]), pt(&[1, 1, 1, 1, 1])], vec![pt(&[2, 2, 1])]]);

        let b = blocks(2, 2, 5).unwrap();
        assert!(b.iter().all(|x| x.members.len() == 1));
        assert_eq!(b.len(), 2);
    }

    #[test]
    fn hooks_and_lengths() {
        assert_eq!(is_p_hook(&pt(&[1, 1, 1]), 3), Some(0));
        assert_eq!(is_p_hook(&pt(&[3, 1, 1]), 5), Some(2));
        assert_eq!(is_p_hook(&pt(&[2, 2, 1]), 5), None);
        assert_eq!(kl_length(&pt(&[2, 1, 1, 1]), 5, 3), 1);
        assert_eq!(kl_length(&pt(&[2, 2, 1]), 5, 2), 0);
        assert_eq!(kl_length(&pt(&[1, 1, 1, 1, 1, 1, 1]), 7, 3), 0);
        assert_eq!(Partition::hook(5, 2), pt(&[3, 1, 1]));
    }

    #[test]
    fn hat_examples() {
        assert_eq!(hat(&pt(&[1, 1, 1]), 2, 3).unwrap(), pt(&[1, 1, 1]));
        assert_eq!(hat(&pt(&[1]), 2, 2).unwrap(), pt(&[2, 1]));
        assert_eq!(hat(&pt(&[2, 2]), 2, 2).unwrap(), Partition::empty());
        assert!(hat(&pt(&[3]), 2, 2).is_err());
    }

    #[test]
    fn hook_specht_dims() {
        assert_eq!(hook_specht_dim(3, 1).unwrap(), 2);
        assert_eq!(hook_specht_dim(5, 0).unwrap(), 1);
        assert_eq!(hook_specht_dim(5, 2).unwrap(), 6);
        assert!(hook_specht_dim(3, 3).is_err());
        // cross-check with the hook length formula
        for p in [2usize, 3, 5, 7] {
            for i in 0..p {
                assert_eq!(hook_specht_dim(p, i).unwrap(), syt_count(&Partition::hook(p, i)));
            }
        }
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("2,1".parse::<Partition>().unwrap(), pt(&[2, 1]));
        assert_eq!("()".parse::<Partition>().unwrap(), Partition::empty());
        assert!("1,2".parse::<Partition>().is_err());
        assert_eq!(serde_json::to_string(&pt(&[2, 1])).unwrap(), "[2,1]");
        let back: Partition = serde_json::from_str("[3,1,1]").unwrap();
        assert_eq!(back, pt(&[3, 1, 1]));
    }

    #[test]
    fn compositions_count() {
        assert_eq!(compositions(3, 2), vec![vec![3, 0], vec![2, 1], vec![1, 2], vec![0, 3]]);
        assert_eq!(compositions(5, 3).len(), 21);
    }
}
