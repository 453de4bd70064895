//! Arithmetic in the chain ring `V = Z/p^(m+1)`.
//!
//! Every nonzero element of `V` factors uniquely as `p^j * u` with `u` a unit
//! and `0 <= j <= m`; the exponent `j` is the valuation. The zero element has
//! valuation `m + 1`. Scalars cache their valuation so that the Gröbner and
//! Howell routines can compare divisibility without recomputing it.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The coefficient ring `Z/p^(m+1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ChainRing {
    p: u64,
    m: u32,
    modulus: u64,
}

/// An element of [`ChainRing`] together with its valuation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingScalar {
    value: u64,
    valuation: u32,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl ChainRing {
    pub fn new(p: u64, m: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let exponent = m + 1;
        let modulus = p
            .checked_pow(exponent)
            .filter(|&q| q <= 1u64 << 63)
            .ok_or(Error::ModulusTooLarge { p, exponent })?;
        Ok(ChainRing { p, m, modulus })
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn m(&self) -> u32 {
        self.m
    }

    /// `p^(m+1)`.
    #[inline]
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Nilpotency index `m + 1`; also the valuation of zero.
    #[inline]
    pub fn length(&self) -> u32 {
        self.m + 1
    }

    /// The residue field `Z/p` of this ring.
    pub fn residue_field(&self) -> ChainRing {
        ChainRing {
            p: self.p,
            m: 0,
            modulus: self.p,
        }
    }

    /// `p^j` as a raw integer, for `j <= m + 1`.
    #[inline]
    pub fn p_pow(&self, j: u32) -> u64 {
        self.p.pow(j)
    }

    fn valuation_of(&self, value: u64) -> u32 {
        if value == 0 {
            return self.length();
        }
        let mut v = value;
        let mut j = 0;
        while v.is_multiple_of(self.p) {
            v /= self.p;
            j += 1;
        }
        j
    }

    #[inline]
    fn make(&self, value: u64) -> RingScalar {
        RingScalar {
            value,
            valuation: self.valuation_of(value),
        }
    }

    /// Reduces an arbitrary integer into `[0, p^(m+1))`.
    pub fn normalize(&self, n: i128) -> RingScalar {
        let r = n.rem_euclid(self.modulus as i128) as u64;
        self.make(r)
    }

    /// Reduces a nonnegative integer.
    #[inline]
    pub fn from_u64(&self, n: u64) -> RingScalar {
        self.make(n % self.modulus)
    }

    #[inline]
    pub fn zero(&self) -> RingScalar {
        RingScalar {
            value: 0,
            valuation: self.length(),
        }
    }

    #[inline]
    pub fn one(&self) -> RingScalar {
        // `Z/p` has modulus p >= 2, so 1 is never zero here.
        RingScalar {
            value: 1,
            valuation: 0,
        }
    }

    /// `p^j` as a scalar (zero once `j > m`).
    pub fn p_power(&self, j: u32) -> RingScalar {
        if j > self.m {
            self.zero()
        } else {
            RingScalar {
                value: self.p.pow(j),
                valuation: j,
            }
        }
    }

    #[inline]
    pub fn add(&self, a: RingScalar, b: RingScalar) -> RingScalar {
        let s = (a.value as u128 + b.value as u128) % self.modulus as u128;
        self.make(s as u64)
    }

    #[inline]
    pub fn sub(&self, a: RingScalar, b: RingScalar) -> RingScalar {
        let s = (a.value as u128 + self.modulus as u128 - b.value as u128) % self.modulus as u128;
        self.make(s as u64)
    }

    #[inline]
    pub fn neg(&self, a: RingScalar) -> RingScalar {
        if a.value == 0 {
            a
        } else {
            RingScalar {
                value: self.modulus - a.value,
                valuation: a.valuation,
            }
        }
    }

    #[inline]
    pub fn mul(&self, a: RingScalar, b: RingScalar) -> RingScalar {
        if a.valuation + b.valuation > self.m {
            return self.zero();
        }
        let prod = (a.value as u128 * b.value as u128) % self.modulus as u128;
        RingScalar {
            value: prod as u64,
            valuation: a.valuation + b.valuation,
        }
    }

    /// Inverse of a unit.
    pub fn invert(&self, x: RingScalar) -> Result<RingScalar> {
        if x.valuation != 0 {
            return Err(Error::NotAUnit);
        }
        let (mut old_r, mut r) = (x.value as i128, self.modulus as i128);
        let (mut old_s, mut s) = (1i128, 0i128);
        while r != 0 {
            let q = old_r / r;
            (old_r, r) = (r, old_r - q * r);
            (old_s, s) = (s, old_s - q * s);
        }
        debug_assert_eq!(old_r, 1);
        Ok(self.normalize(old_s))
    }

    /// Splits a nonzero scalar as `p^j * u` and returns the unit `u`
    /// reduced into `[0, p^(m+1-j))`, lifted back to `V`.
    pub fn unit_part(&self, x: RingScalar) -> Option<RingScalar> {
        if x.is_zero() {
            return None;
        }
        Some(self.make(x.value / self.p.pow(x.valuation)))
    }

    /// Some `q` with `q * b = a`, or `None` when `val(b) > val(a)`.
    ///
    /// `q` is only determined modulo `p^(m+1-val(b))`; the smallest
    /// nonnegative representative is returned. When `a = 0` the quotient is 0.
    pub fn divide_exact(&self, a: RingScalar, b: RingScalar) -> Option<RingScalar> {
        if a.is_zero() {
            return Some(self.zero());
        }
        if b.valuation > a.valuation {
            return None;
        }
        let u = self.unit_part(a)?;
        let w = self.unit_part(b)?;
        let w_inv = self.invert(w).ok()?;
        let q = self.mul(self.mul(u, w_inv), self.p_power(a.valuation - b.valuation));
        let q = self.from_u64(q.value % self.p_pow(self.length() - b.valuation));
        debug_assert_eq!(self.mul(q, b), a);
        Some(q)
    }

    /// Multiplies by a raw integer factor.
    pub fn scale(&self, a: RingScalar, k: u64) -> RingScalar {
        self.mul(a, self.from_u64(k))
    }
}

impl RingScalar {
    #[inline]
    pub fn value(&self) -> u64 {
        self.value
    }

    #[inline]
    pub fn valuation(&self) -> u32 {
        self.valuation
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    #[inline]
    pub fn is_unit(&self) -> bool {
        self.valuation == 0
    }
}

impl fmt::Display for RingScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl fmt::Display for ChainRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z/{}^{}", self.p, self.m + 1)
    }
}
