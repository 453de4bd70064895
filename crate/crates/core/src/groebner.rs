//! Strong Gröbner bases over the chain ring `Z/p^(m+1)`.
//!
//! A term `c x^b` divides `c' x^g` when `b <= g` componentwise and
//! `val(c) <= val(c')`. Completion closes the basis under S-polynomials and
//! under annihilator multiples `p^(m+1-v) g`, where `v` is the valuation of
//! the leading coefficient of `g`; the latter are what make `2x` a leading
//! term of `(x + 2)` over `Z/4`.
//!
//! Bases are returned fully reduced with leading coefficients `p^v`, and
//! normal forms also reduce coefficients modulo the smallest applicable
//! `p^v`, so the reduced basis of an ideal is unique under the fixed order.

use std::collections::BTreeSet;

use crate::cartier::IdealGens;
use crate::chainring::{ChainRing, RingScalar};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly::{Monomial, Poly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: ChainRing,
    nvars: usize,
    elements: Vec<Poly>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Pair {
    Spoly(usize, usize),
    Annihilator(usize),
}

fn term_divides(lm: &Monomial, lc: RingScalar, m: &Monomial, c: RingScalar) -> bool {
    lc.valuation() <= c.valuation() && lm.divides(m)
}

/// Normal form of `g` against `basis`, accumulating quotients into `quotients`
/// when provided.
fn reduce(g: &Poly, basis: &[Poly], mut quotients: Option<&mut Vec<Poly>>) -> Poly {
    let ring = g.ring();
    let mut work = g.clone();
    let mut rem = Poly::zero(ring, g.nvars());
    while let Some((mono, c)) = work.pop_leading() {
        // applicable element with the smallest leading valuation
        let best = basis
            .iter()
            .enumerate()
            .filter(|(_, b)| b.leading_monomial().is_some_and(|lm| lm.divides(&mono)))
            .min_by_key(|(i, b)| (b.leading_coefficient().unwrap().valuation(), *i));
        let Some((idx, b)) = best else {
            rem.add_term(mono, c);
            continue;
        };
        let (lm, lc) = b.leading_term().unwrap();
        let shift = mono.div(lm);
        // lc = p^v, so integer division by p^v is the exact / truncated quotient
        let q = ring.from_u64(c.value() / lc.value());
        let leftover = ring.from_u64(c.value() % lc.value());
        if !q.is_zero() {
            let mut tail = b.clone();
            tail.pop_leading();
            work.add_scaled(ring.neg(q), &shift, &tail);
            if let Some(qs) = quotients.as_deref_mut() {
                qs[idx].add_term(shift.clone(), q);
            }
        }
        if !leftover.is_zero() {
            rem.add_term(mono, leftover);
        }
    }
    rem
}

fn s_polynomial(a: &Poly, b: &Poly) -> Poly {
    let ring = a.ring();
    let (lma, lca) = a.leading_term().unwrap();
    let (lmb, lcb) = b.leading_term().unwrap();
    let l = lma.lcm(lmb);
    let (va, vb) = (lca.valuation(), lcb.valuation());
    let (ca, cb) = if va <= vb {
        (ring.p_power(vb - va), ring.one())
    } else {
        (ring.one(), ring.p_power(va - vb))
    };
    let mut s = a.mul_term(ca, &l.div(lma));
    s.add_scaled(ring.neg(cb), &l.div(lmb), b);
    s
}

/// Computes the reduced strong Gröbner basis of `J` (degrevlex).
pub fn strong_groebner(j: &IdealGens) -> GroebnerBasis {
    let ring = j.ring();
    let nvars = j.nvars();
    if j.has_unit_generator() {
        return GroebnerBasis::unit(ring, nvars);
    }
    let mut basis: Vec<Poly> = Vec::new();
    // pairs keyed by the lcm of leading monomials, so low-degree pairs go first
    let mut queue: BTreeSet<(Monomial, Pair)> = BTreeSet::new();

    let insert = |g: Poly, basis: &mut Vec<Poly>, queue: &mut BTreeSet<(Monomial, Pair)>| -> bool {
        let r = reduce(&g, basis, None);
        if r.is_zero() {
            return false;
        }
        let r = r.normalize_leading();
        if r.is_unit_constant() {
            return true;
        }
        let idx = basis.len();
        let lm = r.leading_monomial().unwrap().clone();
        for (i, b) in basis.iter().enumerate() {
            queue.insert((lm.lcm(b.leading_monomial().unwrap()), Pair::Spoly(i, idx)));
        }
        if r.leading_coefficient().unwrap().valuation() > 0 {
            queue.insert((lm, Pair::Annihilator(idx)));
        }
        basis.push(r);
        false
    };

    for g in j.generators() {
        if insert(g.clone(), &mut basis, &mut queue) {
            return GroebnerBasis::unit(ring, nvars);
        }
    }
    while let Some((_, pair)) = queue.pop_first() {
        let s = match pair {
            Pair::Spoly(a, b) => s_polynomial(&basis[a], &basis[b]),
            Pair::Annihilator(a) => {
                let v = basis[a].leading_coefficient().unwrap().valuation();
                basis[a].scalar_mul(ring.p_power(ring.length() - v))
            }
        };
        if insert(s, &mut basis, &mut queue) {
            return GroebnerBasis::unit(ring, nvars);
        }
    }
    GroebnerBasis::interreduce(ring, nvars, basis)
}

impl GroebnerBasis {
    pub fn unit(ring: ChainRing, nvars: usize) -> Self {
        GroebnerBasis {
            ring,
            nvars,
            elements: vec![Poly::one(ring, nvars)],
        }
    }

    fn interreduce(ring: ChainRing, nvars: usize, mut basis: Vec<Poly>) -> Self {
        basis.sort_by(|a, b| {
            let (ma, ca) = a.leading_term().unwrap();
            let (mb, cb) = b.leading_term().unwrap();
            ma.cmp(mb).then(ca.valuation().cmp(&cb.valuation()))
        });
        let mut kept: Vec<Poly> = Vec::new();
        for g in basis {
            let (lm, lc) = g.leading_term().unwrap();
            let redundant = kept.iter().any(|h| {
                let (hm, hc) = h.leading_term().unwrap();
                term_divides(hm, hc, lm, lc)
            });
            if !redundant {
                kept.push(g);
            }
        }
        let mut elements = Vec::with_capacity(kept.len());
        for i in 0..kept.len() {
            let mut tail = kept[i].clone();
            let (lm, lc) = tail.pop_leading().unwrap();
            let mut reduced = reduce(&tail, &kept, None);
            reduced.add_term(lm, lc);
            elements.push(reduced);
        }
        elements.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
        GroebnerBasis {
            ring,
            nvars,
            elements,
        }
    }

    pub fn ring(&self) -> ChainRing {
        self.ring
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn elements(&self) -> &[Poly] {
        &self.elements
    }

    pub fn is_unit(&self) -> bool {
        self.elements.iter().any(Poly::is_unit_constant)
    }

    pub fn normal_form(&self, g: &Poly) -> Poly {
        reduce(g, &self.elements, None)
    }

    /// Returns `(r, q)` with `g = sum_i q[i] * elements[i] + r`.
    pub fn normal_form_with_certificate(&self, g: &Poly) -> (Poly, Vec<Poly>) {
        let mut qs = vec![Poly::zero(self.ring, self.nvars); self.elements.len()];
        let r = reduce(g, &self.elements, Some(&mut qs));
        (r, qs)
    }

    pub fn contains(&self, g: &Poly) -> bool {
        self.normal_form(g).is_zero()
    }

    pub fn contains_all(&self, j: &IdealGens) -> bool {
        j.generators().iter().all(|g| self.contains(g))
    }

    pub fn as_ideal(&self) -> IdealGens {
        IdealGens::new(self.ring, self.nvars, self.elements.iter().cloned())
            .expect("basis elements share the ring")
    }
}

fn check_same(j: &IdealGens, g: &Poly) -> Result<()> {
    if j.ring() != g.ring() {
        return Err(Error::RingMismatch);
    }
    if j.nvars() != g.nvars() {
        return Err(Error::NvarsMismatch(j.nvars(), g.nvars()));
    }
    Ok(())
}

pub fn ideal_contains(j: &IdealGens, g: &Poly) -> Result<bool> {
    check_same(j, g)?;
    Ok(strong_groebner(j).contains(g))
}

/// Mutual containment of generators.
pub fn ideal_equal(a: &IdealGens, b: &IdealGens) -> Result<bool> {
    if a.ring() != b.ring() {
        return Err(Error::RingMismatch);
    }
    if a.nvars() != b.nvars() {
        return Err(Error::NvarsMismatch(a.nvars(), b.nvars()));
    }
    let ga = strong_groebner(a);
    let gb = strong_groebner(b);
    Ok(ga.contains_all(b) && gb.contains_all(a))
}

/// Least `t` with `p^t g` in the ideal; `m + 1` when only `p^(m+1) g = 0` works.
pub fn min_p_power_in_basis(gb: &GroebnerBasis, g: &Poly) -> u32 {
    let ring = gb.ring();
    (0..ring.length())
        .find(|&t| gb.contains(&g.scalar_mul(ring.p_power(t))))
        .unwrap_or(ring.length())
}

pub fn min_p_power_in(j: &IdealGens, g: &Poly) -> Result<u32> {
    check_same(j, g)?;
    Ok(min_p_power_in_basis(&strong_groebner(j), g))
}

fn monomials_up_to(nvars: usize, degree: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut current = vec![0u32; nvars];
    fn rec(i: usize, left: u32, current: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == current.len() {
            out.push(Monomial::new(current.iter().copied()));
            return;
        }
        for a in 0..=left {
            current[i] = a;
            rec(i + 1, left - a, current, out);
        }
        current[i] = 0;
    }
    rec(0, degree, &mut current, &mut out);
    out
}

/// Searches for `g = sum_i c_i f_i` with every `c_i` of degree at most `cap`
/// by solving the linear system over `V`. `Some(true)` carries a certificate;
/// `None` means no certificate exists at this cap, which does not rule out
/// membership.
pub fn membership_bruteforce(j: &IdealGens, g: &Poly, cap: u32) -> Result<Option<bool>> {
    check_same(j, g)?;
    if g.is_zero() {
        return Ok(Some(true));
    }
    let ring = j.ring();
    let multipliers = monomials_up_to(j.nvars(), cap);
    let mut rows_polys = Vec::new();
    for f in j.generators() {
        for mu in &multipliers {
            rows_polys.push(f.mul_term(ring.one(), mu));
        }
    }
    let mut columns: BTreeSet<Monomial> = g.terms().map(|(m, _)| m.clone()).collect();
    for r in &rows_polys {
        columns.extend(r.terms().map(|(m, _)| m.clone()));
    }
    let columns: Vec<Monomial> = columns.into_iter().rev().collect();
    let to_row = |p: &Poly| -> Vec<RingScalar> { columns.iter().map(|m| p.coefficient(m)).collect() };
    let matrix = Matrix::new(ring, columns.len(), rows_polys.iter().map(to_row).collect())?;
    Ok(matrix.span_contains(&to_row(g))?.then_some(true))
}
