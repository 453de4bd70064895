//! Rational p-adic integers `u/v` with `p` not dividing `v`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An element of `Z_(p)`, stored in lowest terms with positive denominator.
///
/// The prime is not part of the value; operations that need it take it
/// explicitly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PAdicRational {
    num: i64,
    den: u64,
}

impl PAdicRational {
    /// `num/den` reduced to lowest terms. Fails if `den == 0`.
    pub fn new(num: i64, den: i64) -> Option<Self> {
        if den == 0 {
            return None;
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = (num / g, den / g);
        if d < 0 {
            n = -n;
            d = -d;
        }
        Some(PAdicRational { num: n, den: d as u64 })
    }

    pub fn integer(n: i64) -> Self {
        PAdicRational { num: n, den: 1 }
    }

    pub fn numer(&self) -> i64 {
        self.num
    }

    pub fn denom(&self) -> u64 {
        self.den
    }

    /// Whether the denominator is prime to `p`, i.e. the value lies in `Z_(p)`.
    pub fn is_p_integral(&self, p: u64) -> bool {
        !self.den.is_multiple_of(p)
    }

    pub fn is_negative(&self) -> bool {
        self.num < 0
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    /// `floor(self)`.
    pub fn floor(&self) -> i64 {
        Integer::div_floor(&self.num, &(self.den as i64))
    }

    pub fn add_integer(&self, k: i64) -> Self {
        PAdicRational::new(self.num + k * self.den as i64, self.den as i64).unwrap()
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.num as i128 * other.den as i128 - other.num as i128 * self.den as i128;
        let d = self.den as i128 * other.den as i128;
        from_i128(n, d)
    }

    /// Residue of `self` modulo `p^k`, in `[0, p^k)`.
    fn residue(&self, p: u64, k: u32) -> u64 {
        assert!(self.is_p_integral(p), "{self} is not {p}-integral");
        let modulus = p.pow(k) as i128;
        let inv = mod_inverse(self.den as i128 % modulus, modulus);
        ((self.num as i128).rem_euclid(modulus) * inv).rem_euclid(modulus) as u64
    }

    /// The first `k` base-`p` digits.
    pub fn digits(&self, p: u64, k: u32) -> Vec<u64> {
        let mut r = self.truncate_below(p, k);
        (0..k)
            .map(|_| {
                let d = r % p;
                r /= p;
                d
            })
            .collect()
    }

    /// Right truncation `sum_{i<k} d_i p^i`, the representative of `self`
    /// modulo `p^k` in `[0, p^k)`.
    pub fn truncate_below(&self, p: u64, k: u32) -> u64 {
        if k == 0 {
            return 0;
        }
        self.residue(p, k)
    }

    /// Left truncation: `(self - self_{<k}) / p^k`.
    pub fn truncate_above(&self, p: u64, k: u32) -> Self {
        let low = self.truncate_below(p, k) as i128;
        let n = self.num as i128 - low * self.den as i128;
        let pk = p.pow(k) as i128;
        debug_assert_eq!(n % pk, 0);
        from_i128(n / pk, self.den as i128)
    }

    /// `p`-adic valuation (negative when `p` divides the denominator);
    /// `None` for zero.
    pub fn valuation(&self, p: u64) -> Option<i64> {
        if self.num == 0 {
            return None;
        }
        let mut v = 0i64;
        let (mut n, mut d) = (self.num.unsigned_abs(), self.den);
        while n % p == 0 {
            n /= p;
            v += 1;
        }
        while d % p == 0 {
            d /= p;
            v -= 1;
        }
        Some(v)
    }

    pub fn mul(&self, other: &Self) -> Self {
        from_i128(
            self.num as i128 * other.num as i128,
            self.den as i128 * other.den as i128,
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.num as i128 * other.den as i128 + other.num as i128 * self.den as i128;
        from_i128(n, self.den as i128 * other.den as i128)
    }
}

fn from_i128(n: i128, d: i128) -> PAdicRational {
    let g = n.gcd(&d);
    let (mut n, mut d) = (n / g, d / g);
    if d < 0 {
        n = -n;
        d = -d;
    }
    PAdicRational {
        num: i64::try_from(n).expect("numerator overflow"),
        den: u64::try_from(d).expect("denominator overflow"),
    }
}

fn mod_inverse(a: i128, m: i128) -> i128 {
    let ext = a.extended_gcd(&m);
    debug_assert_eq!(ext.gcd.abs(), 1);
    ext.x.rem_euclid(m)
}

impl Ord for PAdicRational {
    /// Real-number order.
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as i128 * other.den as i128).cmp(&(other.num as i128 * self.den as i128))
    }
}

impl PartialOrd for PAdicRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PAdicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for PAdicRational {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let s = s.trim().replace('\u{2212}', "-");
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.as_str(), "1"),
        };
        let n: i64 = n.parse().map_err(|_| format!("bad numerator in {s:?}"))?;
        let d: i64 = d.parse().map_err(|_| format!("bad denominator in {s:?}"))?;
        PAdicRational::new(n, d).ok_or_else(|| format!("zero denominator in {s:?}"))
    }
}

/// All `u/v` in lowest terms with `p` not dividing `v`, `1 <= v <= den_bound`,
/// `|u| <= num_bound` and `u = residue * v (mod modulus)`, sorted by `(v, u)`.
///
/// `modulus` must be a power of `p`.
pub fn reconstruct(
    residue: u64,
    modulus: u64,
    p: u64,
    den_bound: u64,
    num_bound: u64,
) -> Result<Vec<PAdicRational>> {
    if residue >= modulus {
        return Err(Error::Invariant(format!(
            "residue {residue} not reduced modulo {modulus}"
        )));
    }
    let q = modulus as i128;
    let nb = num_bound as i128;
    let mut out = Vec::new();
    for v in 1..=den_bound {
        if v % p == 0 {
            continue;
        }
        // smallest representative u0 in [0, q); all others are u0 + k q
        let u0 = (residue as i128 * v as i128).rem_euclid(q);
        let mut u = u0 - ((u0 + nb) / q) * q;
        while u <= nb {
            if u >= -nb && u.gcd(&(v as i128)) == 1 {
                out.push(PAdicRational {
                    num: u as i64,
                    den: v,
                });
            }
            u += q;
        }
    }
    Ok(out)
}
