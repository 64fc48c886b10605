use super::field::Fp;

/// Univariate polynomial over GF(p), coefficients low degree first, no
/// trailing zeros (the zero polynomial is empty).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    pub coef: Vec<u32>,
}

impl Poly {
    pub fn new(mut coef: Vec<u32>) -> Self {
        while coef.last() == Some(&0) {
            coef.pop();
        }
        Poly { coef }
    }

    pub fn zero() -> Self {
        Poly { coef: vec![] }
    }

    pub fn one() -> Self {
        Poly { coef: vec![1] }
    }

    /// `t - c`
    pub fn linear(f: Fp, c: u32) -> Self {
        Poly::new(vec![f.neg(c), 1])
    }

    pub fn is_zero(&self) -> bool {
        self.coef.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coef.len().checked_sub(1)
    }

    pub fn lead(&self) -> u32 {
        *self.coef.last().unwrap_or(&0)
    }

    pub fn eval(&self, f: Fp, x: u32) -> u32 {
        self.coef.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn mul(&self, f: Fp, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![0u32; self.coef.len() + o.coef.len() - 1];
        for (i, &a) in self.coef.iter().enumerate() {
            for (j, &b) in o.coef.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::new(out)
    }

    pub fn sub(&self, f: Fp, o: &Poly) -> Poly {
        let n = self.coef.len().max(o.coef.len());
        let out = (0..n).map(|i| f.sub(*self.coef.get(i).unwrap_or(&0), *o.coef.get(i).unwrap_or(&0))).collect();
        Poly::new(out)
    }

    pub fn pow(&self, f: Fp, e: usize) -> Poly {
        (0..e).fold(Poly::one(), |acc, _| acc.mul(f, self))
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, f: Fp, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = f.inv(d.lead());
        let mut r = self.coef.clone();
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut q = vec![0u32; r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = f.mul(r[k + dd], inv);
            q[k] = c;
            if c != 0 {
                for (j, &dc) in d.coef.iter().enumerate() {
                    r[k + j] = f.sub(r[k + j], f.mul(c, dc));
                }
            }
        }
        r.truncate(dd);
        (Poly::new(q), Poly::new(r))
    }

    pub fn monic(&self, f: Fp) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let inv = f.inv(self.lead());
        Poly::new(self.coef.iter().map(|&c| f.mul(c, inv)).collect())
    }

    /// Returns `(g, a, b)` with `a*self + b*o = g`, `g` monic.
    pub fn ext_gcd(&self, f: Fp, o: &Poly) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(f, &r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(f, &q.mul(f, &s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(f, &q.mul(f, &t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = f.inv(r0.lead());
        let sc = |p: Poly| Poly::new(p.coef.into_iter().map(|c| f.mul(c, inv)).collect());
        (sc(r0), sc(s0), sc(t0))
    }

    /// Multiplicity of the root `c`.
    pub fn root_multiplicity(&self, f: Fp, c: u32) -> usize {
        let lin = Poly::linear(f, c);
        let mut p = self.clone();
        let mut k = 0;
        while !p.is_zero() {
            let (q, r) = p.divrem(f, &lin);
            if !r.is_zero() {
                break;
            }
            p = q;
            k += 1;
        }
        k
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divrem_and_gcd() {
        let f = Fp::new(5).unwrap();
        // (t-1)^2 (t-2)
        let a = Poly::linear(f, 1).pow(f, 2).mul(f, &Poly::linear(f, 2));
        assert_eq!(a.root_multiplicity(f, 1), 2);
        assert_eq!(a.root_multiplicity(f, 2), 1);
        assert_eq!(a.root_multiplicity(f, 3), 0);
        let g = Poly::linear(f, 1).pow(f, 2);
        let h = Poly::linear(f, 2);
        let (d, x, y) = g.ext_gcd(f, &h);
        assert_eq!(d, Poly::one());
        let lhs = x.mul(f, &g).sub(f, &y.mul(f, &h).mul(f, &Poly::new(vec![f.neg(1)])));
        assert_eq!(lhs, Poly::one());
    }
}
