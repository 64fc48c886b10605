use crate::error::{Error, Result};

/// Prime field GF(p). Elements are plain `u32` values in `[0, p)`.
///
/// The modulus is kept below 2^16 so that a `u64` accumulator can absorb
/// at least 2^32 products before it has to be reduced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    p: u32,
}

pub const MAX_PRIME: u32 = 1 << 16;

impl Fp {
    pub fn new(p: u32) -> Result<Self> {
        if p >= MAX_PRIME {
            return Err(Error::invalid(format!("modulus {p} exceeds 2^16")));
        }
        if !is_prime(p) {
            return Err(Error::invalid(format!("{p} is not prime")));
        }
        Ok(Fp { p })
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce_i64(self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn reduce_u64(self, x: u64) -> u32 {
        (x % self.p as u64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(self, mut a: u32, mut e: u64) -> u32 {
        let mut r = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// Inverse by Fermat. Panics on zero.
    pub fn inv(self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero in GF({})", self.p);
        self.pow(a, (self.p - 2) as u64)
    }

    pub fn from_i64(self, x: i64) -> u32 {
        self.reduce_i64(x)
    }

    /// Signed representative in `(-p/2, p/2]`, handy for printing.
    pub fn signed(self, a: u32) -> i64 {
        let a = a as i64;
        let p = self.p as i64;
        if a > p / 2 {
            a - p
        } else {
            a
        }
    }
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverses_mod_small_primes() {
        for p in [2u32, 3, 5, 7, 11, 13] {
            let f = Fp::new(p).unwrap();
            for a in 1..p {
                assert_eq!(f.mul(a, f.inv(a)), 1);
            }
        }
    }

    #[test]
    fn rejects_composites() {
        assert!(Fp::new(4).is_err());
        assert!(Fp::new(1).is_err());
        assert!(Fp::new(65537).is_err());
    }

    #[test]
    fn signed_representatives() {
        let f = Fp::new(5).unwrap();
        assert_eq!(f.signed(4), -1);
        assert_eq!(f.signed(2), 2);
        assert_eq!(f.reduce_i64(-7), 3);
    }
}
