//! ν-invariants: the integers `n` at which the chain
//! `C^(F,e)(f^0) ⊇ C^(F,e)(f^1) ⊇ ...` drops strictly.
//!
//! The set of level `e` is periodic modulo `p^(e+m)`, so everything is
//! computed on the window `[0, p^(e+m))`.

use serde::Serialize;

use crate::cartier::{cartier_of_poly, frobenius_pullback_ideal, IdealGens};
use crate::error::{Error, Result};
use crate::groebner::{strong_groebner, GroebnerBasis};
use crate::poly::{FrobeniusLift, Poly};

/// The members of `ν•_f(F, p^e)` inside the window `[0, p^(e+m))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NuLevelSet {
    pub level: u32,
    /// `p^(e+m)`; the full set is `members + window * Z`.
    pub window: u64,
    pub members: Vec<u64>,
}

impl NuLevelSet {
    /// Membership of an arbitrary integer, using periodicity.
    pub fn contains(&self, n: i64) -> bool {
        let r = n.rem_euclid(self.window as i64) as u64;
        self.members.binary_search(&r).is_ok()
    }
}

/// `p^(e+m)`, the period of the level-`e` set.
pub fn level_window(lift: &FrobeniusLift, e: u32) -> Result<u64> {
    let ring = lift.ring();
    ring.p()
        .checked_pow(e + ring.m())
        .ok_or(Error::WindowTooLarge(e + ring.m()))
}

pub(crate) fn check_input(f: &Poly, lift: &FrobeniusLift) -> Result<()> {
    if f.ring() != lift.ring() {
        return Err(Error::RingMismatch);
    }
    if f.nvars() != lift.nvars() {
        return Err(Error::NvarsMismatch(f.nvars(), lift.nvars()));
    }
    if !f.is_nonzerodivisor() {
        return Err(Error::ZeroDivisor);
    }
    Ok(())
}

/// Reduced Gröbner basis of `C^(F,e)(f^n)`.
pub fn cartier_power_basis(f: &Poly, lift: &FrobeniusLift, e: u32, n: u64) -> Result<GroebnerBasis> {
    Ok(strong_groebner(&cartier_of_poly(&f.pow(n), lift, e)?))
}

/// Whether `n` is a ν-invariant of level `e`. Negative `n` are reduced into
/// the window first.
pub fn is_nu(f: &Poly, lift: &FrobeniusLift, e: u32, n: i64) -> Result<bool> {
    check_input(f, lift)?;
    let window = level_window(lift, e)?;
    let n = n.rem_euclid(window as i64) as u64;
    let fnp = f.pow(n);
    let upper = strong_groebner(&cartier_of_poly(&fnp, lift, e)?);
    let lower = strong_groebner(&cartier_of_poly(&(&fnp * f), lift, e)?);
    // the chain is descending, but check both directions anyway
    Ok(!(upper.contains_all(&lower.as_ideal()) && lower.contains_all(&upper.as_ideal())))
}

/// Walks the chain `C^(F,e)(f^n)` for `n = 0..=p^(e+m)` once and records the
/// strict drops.
pub fn nu_set(f: &Poly, lift: &FrobeniusLift, e: u32) -> Result<NuLevelSet> {
    check_input(f, lift)?;
    let window = level_window(lift, e)?;
    let mut members = Vec::new();
    let mut power = Poly::one(f.ring(), f.nvars());
    let mut prev = strong_groebner(&cartier_of_poly(&power, lift, e)?);
    for n in 0..window {
        power = &power * f;
        let next = strong_groebner(&cartier_of_poly(&power, lift, e)?);
        // next ⊆ prev always holds; the drop is strict iff prev ⊄ next
        if !next.contains_all(&prev.as_ideal()) {
            members.push(n);
        }
        prev = next;
    }
    Ok(NuLevelSet {
        level: e,
        window,
        members,
    })
}

/// `ν^J_f(F, p^e) = max { n >= 0 : f^n ∉ F^e(J) }`, or `-1` when `J` is the
/// unit ideal. Scans at most `cap` powers; the result is checked to be a
/// ν-invariant of level `e`.
pub fn nu_j(f: &Poly, j: &IdealGens, lift: &FrobeniusLift, e: u32, cap: u64) -> Result<i64> {
    check_input(f, lift)?;
    let pulled = strong_groebner(&frobenius_pullback_ideal(j, lift, e)?);
    let mut power = Poly::one(f.ring(), f.nvars());
    let mut found = None;
    for n in 0..=cap {
        if pulled.contains(&power) {
            found = Some(n as i64 - 1);
            break;
        }
        power = &power * f;
    }
    let nu = found.ok_or(Error::NotFull { cap })?;
    if !is_nu(f, lift, e, nu)? {
        return Err(Error::Invariant(format!(
            "nu^J = {nu} is not a nu-invariant of level {e}"
        )));
    }
    Ok(nu)
}
