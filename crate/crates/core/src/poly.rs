//! Sparse multivariate polynomials over `Z/p^(m+1)`, Frobenius lifts, and
//! the decomposition of a polynomial in the basis `{x^a : 0 <= a_i < p^e}`
//! of `R` over `F^e(R)`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use smallvec::SmallVec;

use crate::chainring::{ChainRing, RingScalar};
use crate::error::{Error, Result};

/// Exponent vector. Ordered by degree-reverse-lexicographic order with
/// `x1 > x2 > ... > xn`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(SmallVec<[u32; 4]>);

impl Monomial {
    pub fn new(exponents: impl IntoIterator<Item = u32>) -> Self {
        Monomial(exponents.into_iter().collect())
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[i] = 1;
        m
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other`, assuming `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Monomial {
        debug_assert!(other.divides(self));
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn scale(&self, k: u32) -> Monomial {
        Monomial(self.0.iter().map(|a| a * k).collect())
    }

    /// Splits each exponent as `a = q * base + r` with `0 <= r < base`.
    pub fn split(&self, base: u32) -> (Monomial, Monomial) {
        let q = self.0.iter().map(|a| a / base).collect();
        let r = self.0.iter().map(|a| a % base).collect();
        (Monomial(q), Monomial(r))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (a, b) in self.0.iter().rev().zip(other.0.iter().rev()) {
                if a != b {
                    // smaller exponent in the last differing variable is larger
                    return b.cmp(a);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in `nvars` variables over a [`ChainRing`].
///
/// Terms are kept in increasing monomial order, so the leading term is the
/// last entry. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    ring: ChainRing,
    nvars: usize,
    terms: BTreeMap<Monomial, RingScalar>,
}

impl Poly {
    pub fn zero(ring: ChainRing, nvars: usize) -> Self {
        Poly {
            ring,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: ChainRing, nvars: usize, c: RingScalar) -> Self {
        Self::term(ring, c, Monomial::one(nvars))
    }

    pub fn one(ring: ChainRing, nvars: usize) -> Self {
        Self::constant(ring, nvars, ring.one())
    }

    pub fn var(ring: ChainRing, nvars: usize, i: usize) -> Self {
        Self::term(ring, ring.one(), Monomial::var(nvars, i))
    }

    pub fn term(ring: ChainRing, c: RingScalar, mono: Monomial) -> Self {
        let nvars = mono.nvars();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(mono, c);
        }
        Poly { ring, nvars, terms }
    }

    /// Builds a polynomial from integer coefficients; repeated monomials add up.
    pub fn from_terms(
        ring: ChainRing,
        nvars: usize,
        terms: impl IntoIterator<Item = (i128, Vec<u32>)>,
    ) -> Result<Self> {
        let mut p = Self::zero(ring, nvars);
        for (c, exps) in terms {
            if exps.len() != nvars {
                return Err(Error::NvarsMismatch(nvars, exps.len()));
            }
            p.add_term(Monomial::new(exps), ring.normalize(c));
        }
        Ok(p)
    }

    pub fn ring(&self) -> ChainRing {
        self.ring
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &RingScalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, mono: &Monomial) -> RingScalar {
        self.terms.get(mono).copied().unwrap_or(self.ring.zero())
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, RingScalar)> {
        self.terms.iter().next_back().map(|(m, c)| (m, *c))
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.keys().next_back()
    }

    pub fn leading_coefficient(&self) -> Option<RingScalar> {
        self.terms.values().next_back().copied()
    }

    /// The constant if the polynomial has degree zero.
    pub fn as_constant(&self) -> Option<RingScalar> {
        match self.terms.len() {
            0 => Some(self.ring.zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then_some(*c)
            }
            _ => None,
        }
    }

    pub fn is_unit_constant(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_unit())
    }

    /// Smallest coefficient valuation (`m + 1` for zero).
    pub fn content_valuation(&self) -> u32 {
        self.terms
            .values()
            .map(RingScalar::valuation)
            .min()
            .unwrap_or(self.ring.length())
    }

    /// Over `V[x]` a polynomial is a nonzerodivisor iff some coefficient is a unit.
    pub fn is_nonzerodivisor(&self) -> bool {
        self.content_valuation() == 0
    }

    pub fn add_term(&mut self, mono: Monomial, c: RingScalar) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(mono.nvars(), self.nvars);
        let ring = self.ring;
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = ring.add(*o.get(), c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_compatible(&self, other: &Poly) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        if self.nvars != other.nvars {
            return Err(Error::NvarsMismatch(self.nvars, other.nvars));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), *c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), self.ring.neg(*c));
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_compatible(other)?;
        let ring = self.ring;
        let q = ring.modulus() as u128;
        let mut acc: HashMap<Monomial, u128> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if ca.valuation() + cb.valuation() > ring.m() {
                    continue;
                }
                let prod = ca.value() as u128 * cb.value() as u128 % q;
                let slot = acc.entry(ma.mul(mb)).or_insert(0);
                *slot = (*slot + prod) % q;
            }
        }
        let terms = acc
            .into_iter()
            .filter(|(_, c)| *c != 0)
            .map(|(m, c)| (m, ring.from_u64(c as u64)))
            .collect();
        Ok(Poly {
            ring,
            nvars: self.nvars,
            terms,
        })
    }

    pub fn pow(&self, mut k: u64) -> Poly {
        let mut result = Poly::one(self.ring, self.nvars);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn scalar_mul(&self, c: RingScalar) -> Poly {
        let ring = self.ring;
        let terms = self
            .terms
            .iter()
            .filter_map(|(m, a)| {
                let b = ring.mul(*a, c);
                (!b.is_zero()).then(|| (m.clone(), b))
            })
            .collect();
        Poly {
            ring,
            nvars: self.nvars,
            terms,
        }
    }

    /// `c * x^mono * self`
    pub fn mul_term(&self, c: RingScalar, mono: &Monomial) -> Poly {
        let ring = self.ring;
        let terms = self
            .terms
            .iter()
            .filter_map(|(m, a)| {
                let b = ring.mul(*a, c);
                (!b.is_zero()).then(|| (m.mul(mono), b))
            })
            .collect();
        Poly {
            ring,
            nvars: self.nvars,
            terms,
        }
    }

    /// `self += c * x^mono * other`, in place.
    pub fn add_scaled(&mut self, c: RingScalar, mono: &Monomial, other: &Poly) {
        let ring = self.ring;
        for (m, a) in &other.terms {
            let b = ring.mul(*a, c);
            if !b.is_zero() {
                self.add_term(m.mul(mono), b);
            }
        }
    }

    /// Removes and returns the leading term.
    pub fn pop_leading(&mut self) -> Option<(Monomial, RingScalar)> {
        self.terms.pop_last()
    }

    /// Makes the leading coefficient exactly `p^v` by multiplying with a unit.
    pub fn normalize_leading(&self) -> Poly {
        match self.leading_coefficient() {
            None => self.clone(),
            Some(lc) => {
                let ring = self.ring;
                let u = ring.unit_part(lc).expect("nonzero leading coefficient");
                if u.value() == 1 {
                    self.clone()
                } else {
                    self.scalar_mul(ring.invert(u).expect("unit part is a unit"))
                }
            }
        }
    }

    /// Image under the coefficient reduction `Z/p^(m+1) -> Z/p^(k+1)`, `k <= m`.
    pub fn reduce_to(&self, target: ChainRing) -> Result<Poly> {
        if target.p() != self.ring.p() || target.m() > self.ring.m() {
            return Err(Error::RingMismatch);
        }
        let mut out = Poly::zero(target, self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), target.from_u64(c.value()));
        }
        Ok(out)
    }

    /// Multiplies every exponent by `k`.
    pub fn scale_exponents(&self, k: u32) -> Poly {
        Poly {
            ring: self.ring,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.scale(k), *c)).collect(),
        }
    }

    /// Substitutes `images[i]` for `x_i`.
    pub fn substitute(&self, images: &[Poly]) -> Result<Poly> {
        if images.len() != self.nvars {
            return Err(Error::NvarsMismatch(self.nvars, images.len()));
        }
        let Some(first) = images.first() else {
            return Ok(self.clone());
        };
        let target_nvars = first.nvars;
        let mut powers = PowerCache::new(images);
        let mut out = Poly::zero(self.ring, target_nvars);
        for (m, c) in &self.terms {
            let t = powers.monomial(m).scalar_mul(*c);
            out = &out + &t;
        }
        Ok(out)
    }

    /// Renders the polynomial with the given variable names, leading term first.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, names }
    }
}

/// Cached powers `images[i]^k` for repeated monomial substitution.
pub(crate) struct PowerCache<'a> {
    images: &'a [Poly],
    powers: Vec<Vec<Poly>>,
}

impl<'a> PowerCache<'a> {
    pub(crate) fn new(images: &'a [Poly]) -> Self {
        PowerCache {
            images,
            powers: images.iter().map(|g| vec![Poly::one(g.ring, g.nvars)]).collect(),
        }
    }

    fn power(&mut self, i: usize, k: u32) -> &Poly {
        let cache = &mut self.powers[i];
        while cache.len() <= k as usize {
            let next = cache.last().unwrap() * &self.images[i];
            cache.push(next);
        }
        &cache[k as usize]
    }

    pub(crate) fn monomial(&mut self, mono: &Monomial) -> Poly {
        let g = &self.images[0];
        let mut acc = Poly::one(g.ring, g.nvars);
        for (i, &a) in mono.exponents().iter().enumerate() {
            if a > 0 {
                acc = &acc * self.power(i, a);
            }
        }
        acc
    }
}

impl Ord for Poly {
    /// Compares term lists from the leading term down, monomial first and
    /// coefficient value second.
    fn cmp(&self, other: &Self) -> Ordering {
        let mut a = self.terms.iter().rev();
        let mut b = other.terms.iter().rev();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some((ma, ca)), Some((mb, cb))) => {
                    let o = ma.cmp(mb).then(ca.value().cmp(&cb.value()));
                    if o != Ordering::Equal {
                        return o;
                    }
                }
            }
        }
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

// Operator impls panic on mismatched rings; use the `checked_*` forms when
// the operands come from user input.
impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs).expect("polynomial ring mismatch")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.checked_sub(rhs).expect("polynomial ring mismatch")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs).expect("polynomial ring mismatch")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scalar_mul(self.ring.normalize(-1))
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a Poly,
    names: &'a [String],
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.poly.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mut factors: Vec<String> = Vec::new();
            if c.value() != 1 || m.is_one() {
                factors.push(c.value().to_string());
            }
            for (i, &a) in m.exponents().iter().enumerate() {
                let name = self
                    .names
                    .get(i)
                    .cloned()
                    .unwrap_or_else(|| format!("x{}", i + 1));
                match a {
                    0 => {}
                    1 => factors.push(name),
                    _ => factors.push(format!("{name}^{a}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display_with(&[]).fmt(f)
    }
}

/// A lift of Frobenius `F(x_i) = x_i^p + p * h_i`, acting as the identity on
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusLift {
    ring: ChainRing,
    nvars: usize,
    corrections: Vec<Poly>,
    standard: bool,
}

impl FrobeniusLift {
    /// The lift `F(x_i) = x_i^p`.
    pub fn standard(ring: ChainRing, nvars: usize) -> Self {
        FrobeniusLift {
            ring,
            nvars,
            corrections: vec![Poly::zero(ring, nvars); nvars],
            standard: true,
        }
    }

    /// A lift with corrections `h_i`, so `F(x_i) = x_i^p + p * h_i`.
    pub fn with_corrections(ring: ChainRing, corrections: Vec<Poly>) -> Result<Self> {
        let nvars = corrections.len();
        for h in &corrections {
            if h.ring != ring {
                return Err(Error::RingMismatch);
            }
            if h.nvars != nvars {
                return Err(Error::InvalidLift(format!(
                    "correction in {} variables for a lift of {} variables",
                    h.nvars, nvars
                )));
            }
        }
        let p = ring.from_u64(ring.p());
        let standard = corrections.iter().all(|h| h.scalar_mul(p).is_zero());
        Ok(FrobeniusLift {
            ring,
            nvars,
            corrections,
            standard,
        })
    }

    /// A lift given directly by the images `F(x_i)`; each image must be
    /// congruent to `x_i^p` modulo `p`.
    pub fn from_images(ring: ChainRing, images: Vec<Poly>) -> Result<Self> {
        let nvars = images.len();
        let p = ring.p();
        let mut corrections = Vec::with_capacity(nvars);
        for (i, img) in images.iter().enumerate() {
            let mut diff = img.checked_sub(&Poly::var(ring, nvars, i).pow(p))?;
            if diff.content_valuation() == 0 {
                return Err(Error::InvalidLift(format!(
                    "image of variable {} is not x^p modulo p",
                    i + 1
                )));
            }
            // divide every coefficient by p
            diff.terms = diff
                .terms
                .into_iter()
                .map(|(m, c)| (m, ring.from_u64(c.value() / p)))
                .filter(|(_, c)| !c.is_zero())
                .collect();
            corrections.push(diff);
        }
        Self::with_corrections(ring, corrections)
    }

    pub fn ring(&self) -> ChainRing {
        self.ring
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_standard(&self) -> bool {
        self.standard
    }

    pub fn corrections(&self) -> &[Poly] {
        &self.corrections
    }

    /// `F(x_i) = x_i^p + p * h_i`.
    pub fn image_of_var(&self, i: usize) -> Poly {
        let ring = self.ring;
        let xp = Poly::var(ring, self.nvars, i).pow(ring.p());
        &xp + &self.corrections[i].scalar_mul(ring.from_u64(ring.p()))
    }

    /// Images `F^e(x_i)` of all variables.
    pub fn iterated_images(&self, e: u32) -> Vec<Poly> {
        let ring = self.ring;
        if self.standard {
            let pe = ring.p().pow(e) as u32;
            return (0..self.nvars)
                .map(|i| Poly::term(ring, ring.one(), Monomial::var(self.nvars, i).scale(pe)))
                .collect();
        }
        let base: Vec<Poly> = (0..self.nvars).map(|i| self.image_of_var(i)).collect();
        let mut images: Vec<Poly> = (0..self.nvars).map(|i| Poly::var(ring, self.nvars, i)).collect();
        for _ in 0..e {
            images = images
                .iter()
                .map(|g| g.substitute(&base).expect("lift variable count"))
                .collect();
        }
        images
    }

    /// The reduction of this lift to a smaller coefficient ring.
    pub fn reduce_to(&self, target: ChainRing) -> Result<FrobeniusLift> {
        let corrections = self
            .corrections
            .iter()
            .map(|h| h.reduce_to(target))
            .collect::<Result<Vec<_>>>()?;
        Self::with_corrections(target, corrections)
    }
}

/// Applies `F` to `f` `e` times.
pub fn frobenius_apply(f: &Poly, lift: &FrobeniusLift, e: u32) -> Result<Poly> {
    check_lift(f, lift)?;
    if e == 0 {
        return Ok(f.clone());
    }
    if lift.is_standard() {
        let pe = checked_p_pow(f.ring.p(), e)?;
        return Ok(f.scale_exponents(pe));
    }
    f.substitute(&lift.iterated_images(e))
}

fn check_lift(f: &Poly, lift: &FrobeniusLift) -> Result<()> {
    if f.ring != lift.ring {
        return Err(Error::RingMismatch);
    }
    if f.nvars != lift.nvars {
        return Err(Error::NvarsMismatch(f.nvars, lift.nvars));
    }
    Ok(())
}

fn checked_p_pow(p: u64, e: u32) -> Result<u32> {
    p.checked_pow(e)
        .and_then(|q| u32::try_from(q).ok())
        .ok_or(Error::WindowTooLarge(e))
}

/// Components of `f` in the basis `{x^a : 0 <= a_i < p^e}` of `R` over
/// `F^e(R)`: returns `g_a` with `f = sum_a F^e(g_a) * x^a`. Zero components
/// are omitted.
///
/// For the standard lift this is the base-`p^e` exponent split. For other
/// lifts every term `c x^(p^e q + a)` contributes `c x^q` to `g_a` and leaves
/// the error `c (x^(p^e q) - F^e(x^q)) x^a`, whose coefficients carry at
/// least one more factor of `p`; after `m + 1` rounds nothing is left.
pub fn phi_decompose(f: &Poly, lift: &FrobeniusLift, e: u32) -> Result<BTreeMap<Monomial, Poly>> {
    check_lift(f, lift)?;
    let ring = f.ring;
    let nvars = f.nvars;
    let pe = checked_p_pow(ring.p(), e)?;
    let mut comps: BTreeMap<Monomial, Poly> = BTreeMap::new();

    if lift.is_standard() || e == 0 {
        for (m, c) in f.terms() {
            let (q, a) = m.split(pe);
            comps
                .entry(a)
                .or_insert_with(|| Poly::zero(ring, nvars))
                .add_term(q, *c);
        }
        comps.retain(|_, g| !g.is_zero());
        return Ok(comps);
    }

    let images = lift.iterated_images(e);
    let mut cache = PowerCache::new(&images);
    let mut work = f.clone();
    let mut rounds = 0;
    while !work.is_zero() {
        if rounds > ring.length() {
            return Err(Error::Invariant(
                "Frobenius decomposition did not terminate".into(),
            ));
        }
        rounds += 1;
        let mut next = Poly::zero(ring, nvars);
        for (m, c) in work.terms() {
            let (q, a) = m.split(pe);
            comps
                .entry(a.clone())
                .or_insert_with(|| Poly::zero(ring, nvars))
                .add_term(q.clone(), *c);
            if q.is_one() {
                continue;
            }
            let plain = Poly::term(ring, ring.one(), q.scale(pe));
            let lifted = cache.monomial(&q);
            let err = (&plain - &lifted).mul_term(*c, &a);
            next = &next + &err;
        }
        work = next;
    }
    comps.retain(|_, g| !g.is_zero());
    Ok(comps)
}

/// Reassembles `sum_a F^e(g_a) x^a`; the inverse of [`phi_decompose`].
pub fn phi_recompose(
    comps: &BTreeMap<Monomial, Poly>,
    lift: &FrobeniusLift,
    e: u32,
) -> Result<Poly> {
    let ring = lift.ring;
    let mut out = Poly::zero(ring, lift.nvars);
    for (a, g) in comps {
        let t = frobenius_apply(g, lift, e)?.mul_term(ring.one(), a);
        out = &out + &t;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(p: u64, m: u32) -> ChainRing {
        ChainRing::new(p, m).unwrap()
    }

    fn poly(r: ChainRing, nvars: usize, terms: &[(i128, &[u32])]) -> Poly {
        Poly::from_terms(r, nvars, terms.iter().map(|(c, e)| (*c, e.to_vec()))).unwrap()
    }

    /// F2(x) = x^2 + 2y(x+y), F2(y) = y^2 over Z/4.
    fn lift_f2() -> FrobeniusLift {
        let r = ring(2, 1);
        let fx = poly(r, 2, &[(1, &[2, 0]), (2, &[1, 1]), (2, &[0, 2])]);
        let fy = poly(r, 2, &[(1, &[0, 2])]);
        FrobeniusLift::from_images(r, vec![fx, fy]).unwrap()
    }

    #[test]
    fn degrevlex_order() {
        let a = Monomial::new([2, 0, 0]);
        let b = Monomial::new([1, 1, 0]);
        let c = Monomial::new([0, 1, 1]);
        let d = Monomial::new([3, 0, 0]);
        assert!(a > b && b > c && d > a);
        let e = Monomial::new([1, 0, 1]);
        assert!(b > e && e > c);
    }

    #[test]
    fn arithmetic_examples() {
        let r4 = ring(2, 1);
        let x1 = poly(r4, 1, &[(1, &[1]), (1, &[0])]);
        assert_eq!(x1.pow(2), poly(r4, 1, &[(1, &[2]), (2, &[1]), (1, &[0])]));

        let r9 = ring(3, 1);
        let f = poly(r9, 2, &[(1, &[2, 0]), (3, &[0, 1])]);
        assert_eq!(f.pow(2), poly(r9, 2, &[(1, &[4, 0]), (6, &[2, 1])]));
        assert!((&f * &Poly::zero(r9, 2)).is_zero());
        assert_eq!(f.degree(), Some(2));
        assert_eq!(Poly::zero(r9, 2).degree(), None);
    }

    #[test]
    fn mismatched_operands_error() {
        let a = Poly::one(ring(3, 1), 2);
        let b = Poly::one(ring(3, 1), 3);
        let c = Poly::one(ring(2, 1), 2);
        assert!(matches!(a.checked_add(&b), Err(Error::NvarsMismatch(2, 3))));
        assert_eq!(a.checked_mul(&c), Err(Error::RingMismatch));
    }

    #[test]
    fn frobenius_examples() {
        let r9 = ring(3, 1);
        let f = poly(r9, 2, &[(1, &[2, 0]), (3, &[0, 1])]);
        let std = FrobeniusLift::standard(r9, 2);
        assert_eq!(
            frobenius_apply(&f, &std, 1).unwrap(),
            poly(r9, 2, &[(1, &[6, 0]), (3, &[0, 3])])
        );
        assert_eq!(frobenius_apply(&f, &std, 0).unwrap(), f);

        let r4 = ring(2, 1);
        let x = Poly::var(r4, 2, 0);
        let f2 = lift_f2();
        assert!(!f2.is_standard());
        assert_eq!(
            frobenius_apply(&x, &f2, 1).unwrap(),
            poly(r4, 2, &[(1, &[2, 0]), (2, &[1, 1]), (2, &[0, 2])])
        );
    }

    #[test]
    fn from_images_rejects_non_lifts() {
        let r4 = ring(2, 1);
        let bad = poly(r4, 1, &[(1, &[2]), (1, &[1])]);
        assert!(matches!(
            FrobeniusLift::from_images(r4, vec![bad]),
            Err(Error::InvalidLift(_))
        ));
    }

    #[test]
    fn decompose_examples() {
        let r9 = ring(3, 1);
        let f = poly(r9, 2, &[(1, &[2, 0]), (3, &[0, 1])]);
        let comps = phi_decompose(&f, &FrobeniusLift::standard(r9, 2), 1).unwrap();
        let expected: BTreeMap<Monomial, Poly> = [
            (Monomial::new([2, 0]), Poly::one(r9, 2)),
            (Monomial::new([0, 1]), Poly::constant(r9, 2, r9.from_u64(3))),
        ]
        .into_iter()
        .collect();
        assert_eq!(comps, expected);

        let r2 = ring(2, 0);
        let x5 = poly(r2, 1, &[(1, &[5])]);
        let comps = phi_decompose(&x5, &FrobeniusLift::standard(r2, 1), 2).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[&Monomial::new([1])], Poly::var(r2, 1, 0));

        let r4 = ring(2, 1);
        let f2 = lift_f2();
        let x2 = poly(r4, 2, &[(1, &[2, 0])]);
        let comps = phi_decompose(&x2, &f2, 1).unwrap();
        let expected: BTreeMap<Monomial, Poly> = [
            (Monomial::new([0, 0]), poly(r4, 2, &[(1, &[1, 0]), (2, &[0, 1])])),
            (Monomial::new([1, 1]), Poly::constant(r4, 2, r4.from_u64(2))),
        ]
        .into_iter()
        .collect();
        assert_eq!(comps, expected);
        assert_eq!(phi_recompose(&comps, &f2, 1).unwrap(), x2);
    }

    #[test]
    fn iterated_images_compose() {
        let f2 = lift_f2();
        let once = f2.iterated_images(1);
        let twice = f2.iterated_images(2);
        let again: Vec<Poly> = once.iter().map(|g| g.substitute(&once).unwrap()).collect();
        assert_eq!(twice, again);
    }

    #[test]
    fn display_leading_term_first() {
        let r9 = ring(3, 1);
        let f = poly(r9, 2, &[(1, &[2, 0]), (3, &[0, 1]), (8, &[0, 0])]);
        let names = vec!["x".to_string(), "y".to_string()];
        assert_eq!(f.display_with(&names).to_string(), "x^2 + 3*y + 8");
        assert_eq!(Poly::zero(r9, 2).to_string(), "0");
    }
}
