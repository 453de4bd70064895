//! Bernstein–Sato root detection by walking ν-invariant residues level by
//! level, plus strengths and the b-function report.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::chainring::ChainRing;
use crate::error::{Error, Result};
use crate::groebner::{min_p_power_in_basis, strong_groebner};
use crate::nu::{check_input, is_nu, level_window, nu_set};
use crate::padic::{reconstruct, PAdicRational};
use crate::cartier::cartier_of_poly;
use crate::poly::{frobenius_apply, FrobeniusLift, Poly};

/// Bounds on the rationals `u/v` proposed for a surviving residue:
/// `1 <= v <= den_bound`, `|u| <= num_bound`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ReconBounds {
    pub den_bound: u64,
    pub num_bound: u64,
}

impl ReconBounds {
    /// `den_bound = min(50, p^4 - 1)`, `num_bound = 2 * den_bound`.
    pub fn default_for(p: u64) -> Self {
        let den_bound = p.saturating_pow(4).saturating_sub(1).min(50);
        ReconBounds {
            den_bound,
            num_bound: 2 * den_bound,
        }
    }

    /// `2 * num_bound * den_bound`; the window must exceed this so two
    /// admissible rationals never share a residue.
    pub fn separation(&self) -> u64 {
        2u64.saturating_mul(self.num_bound).saturating_mul(self.den_bound)
    }
}

/// `max(3, ceil(log_p(2 * num * den)) + 1 - m)`.
pub fn default_max_level(p: u64, m: u32, bounds: ReconBounds) -> u32 {
    let target = bounds.separation();
    let mut k = 0u32;
    let mut pk = 1u64;
    while pk < target {
        pk = pk.saturating_mul(p);
        k += 1;
    }
    (k + 1).saturating_sub(m).max(3)
}

/// Survivors of one level of the residue tree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TreeLevel {
    pub level: u32,
    /// `p^(level+m)`.
    pub modulus: u64,
    /// Sorted residues in `[0, modulus)`; the parent of `r` is
    /// `r mod p^(level-1+m)`.
    pub survivors: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResidueTree {
    pub p: u64,
    pub m: u32,
    pub levels: Vec<TreeLevel>,
}

impl ResidueTree {
    pub fn max_level(&self) -> u32 {
        self.levels.len() as u32 - 1
    }

    pub fn survives(&self, level: u32, residue: u64) -> bool {
        self.levels
            .get(level as usize)
            .is_some_and(|l| l.survivors.binary_search(&residue).is_ok())
    }

    /// Whether every truncation of `alpha` survives at levels `0..=max_level`.
    pub fn contains_root(&self, alpha: &PAdicRational) -> bool {
        alpha.is_p_integral(self.p)
            && self
                .levels
                .iter()
                .all(|l| self.survives(l.level, alpha.truncate_below(self.p, l.level + self.m)))
    }
}

/// `(m+1) * C(d p^m + n, n)`: the length of the polynomials of degree
/// `<= d p^m` over `V`, which caps the number of ν-invariants in a window
/// when the lift is standard.
pub fn survivor_cap(f: &Poly) -> u64 {
    let ring = f.ring();
    let d = f.degree().unwrap_or(0) as u64;
    let top = d.saturating_mul(ring.p_pow(ring.m()));
    let n = f.nvars() as u64;
    let mut binom: u128 = 1;
    for i in 1..=n {
        binom = binom * (top + i) as u128 / i as u128;
    }
    u64::try_from(binom.saturating_mul(ring.length() as u128)).unwrap_or(u64::MAX)
}

/// Builds the residue tree for levels `0..=max_level`: level-`e` survivors
/// are ν-invariants of level `e` whose reduction survives at level `e-1`
/// and which have a surviving refinement at level `e+1`.
pub fn candidate_residues(f: &Poly, lift: &FrobeniusLift, max_level: u32) -> Result<ResidueTree> {
    check_input(f, lift)?;
    if max_level < 1 {
        return Err(Error::Invariant("max level must be at least 1".into()));
    }
    let ring = f.ring();
    let p = ring.p();
    let cap = lift.is_standard().then(|| survivor_cap(f));
    let check_cap = |level: u32, count: usize| -> Result<()> {
        match cap {
            Some(k) if count as u64 > k => Err(Error::Invariant(format!(
                "{count} survivors at level {level} exceed the bound {k}"
            ))),
            _ => Ok(()),
        }
    };

    let base = nu_set(f, lift, 0)?;
    check_cap(0, base.members.len())?;
    let mut levels = vec![TreeLevel {
        level: 0,
        modulus: base.window,
        survivors: base.members,
    }];
    for e in 1..=max_level {
        let prev = levels.last().unwrap();
        let modulus = level_window(lift, e)?;
        let step = prev.modulus;
        let candidates: Vec<u64> = prev
            .survivors
            .iter()
            .flat_map(|&r| (0..p).map(move |k| r + k * step))
            .collect();
        let flags = candidates
            .par_iter()
            .map(|&c| is_nu(f, lift, e, c as i64))
            .collect::<Result<Vec<bool>>>()?;
        let mut survivors: Vec<u64> = candidates
            .into_iter()
            .zip(flags)
            .filter_map(|(c, keep)| keep.then_some(c))
            .collect();
        survivors.sort_unstable();
        check_cap(e, survivors.len())?;
        levels.push(TreeLevel {
            level: e,
            modulus,
            survivors,
        });
    }
    // keep only residues that extend to the top level
    for e in (0..max_level as usize).rev() {
        let modulus = levels[e].modulus;
        let reached: BTreeSet<u64> = levels[e + 1].survivors.iter().map(|r| r % modulus).collect();
        levels[e].survivors.retain(|r| reached.contains(r));
    }
    Ok(ResidueTree {
        p,
        m: ring.m(),
        levels,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootEntry {
    pub alpha: PAdicRational,
    /// `0` until filled in by [`strength`]; reports only keep `>= 1`.
    pub strength: u32,
    pub stabilized: bool,
    pub verified_to_level: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootReport {
    pub p: u64,
    pub m: u32,
    pub bounds: ReconBounds,
    /// Sorted increasingly.
    pub roots: Vec<RootEntry>,
    /// Top-level survivors with no admissible rational that passes every level.
    pub unresolved: Vec<u64>,
    /// Top-level survivors that agree with a verified root modulo
    /// `p^max_level` and differ only in the last `m` digits, which no
    /// computed level constrains.
    pub shadows: Vec<u64>,
    pub verified_to_level: u32,
    pub tree: ResidueTree,
}

impl RootReport {
    pub fn alphas(&self) -> Vec<PAdicRational> {
        self.roots.iter().map(|r| r.alpha).collect()
    }
}

/// Root candidates from the residue tree, each reconstructed rational
/// verified against every level.
pub fn detect_roots(
    f: &Poly,
    lift: &FrobeniusLift,
    max_level: u32,
    bounds: ReconBounds,
) -> Result<RootReport> {
    let ring = f.ring();
    let window = level_window(lift, max_level)?;
    let required = bounds.separation();
    if window <= required {
        return Err(Error::LevelTooSmall {
            level: max_level,
            window,
            required,
        });
    }
    let tree = candidate_residues(f, lift, max_level)?;
    let top = tree.levels.last().unwrap();
    let mut roots = BTreeSet::new();
    let mut unresolved = Vec::new();
    for &r in &top.survivors {
        let verified: Vec<PAdicRational> =
            reconstruct(r, top.modulus, ring.p(), bounds.den_bound, bounds.num_bound)?
                .into_iter()
                .filter(|a| tree.contains_root(a))
                .collect();
        if verified.is_empty() {
            unresolved.push(r);
        }
        roots.extend(verified);
    }
    let shadow_modulus = ring.p_pow(max_level);
    let root_classes: BTreeSet<u64> = roots
        .iter()
        .map(|a| a.truncate_below(ring.p(), max_level))
        .collect();
    let (shadows, unresolved): (Vec<u64>, Vec<u64>) = unresolved
        .into_iter()
        .partition(|r| root_classes.contains(&(r % shadow_modulus)));
    let roots = roots
        .into_iter()
        .map(|alpha| RootEntry {
            alpha,
            strength: 0,
            stabilized: false,
            verified_to_level: max_level,
        })
        .collect();
    Ok(RootReport {
        p: ring.p(),
        m: ring.m(),
        bounds,
        roots,
        unresolved,
        shadows,
        verified_to_level: max_level,
        tree,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrengthResult {
    /// Strength at the last computed level.
    pub value: u32,
    /// The last two levels agree.
    pub stabilized: bool,
    /// `(level, strength)` for each computed level.
    pub per_level: Vec<(u32, u32)>,
    pub verified_to_level: u32,
}

/// Strength at one level: the least `t` with every generator of
/// `C(f^a)` times `p^t` inside `C(f^(a+1))`, `a` the truncation of `alpha`.
pub fn strength_at_level(f: &Poly, lift: &FrobeniusLift, alpha: &PAdicRational, e: u32) -> Result<u32> {
    check_input(f, lift)?;
    let ring = f.ring();
    if !alpha.is_p_integral(ring.p()) {
        return Err(Error::NotPIntegral(alpha.to_string()));
    }
    let a = alpha.truncate_below(ring.p(), e + ring.m());
    let fa = f.pow(a);
    let upper = cartier_of_poly(&fa, lift, e)?;
    let lower = strong_groebner(&cartier_of_poly(&(&fa * f), lift, e)?);
    Ok(upper
        .generators()
        .iter()
        .map(|g| min_p_power_in_basis(&lower, g))
        .max()
        .unwrap_or(0))
}

/// Strengths for levels `e_start..=e_stop`; fails if they ever increase.
pub fn strength(
    f: &Poly,
    lift: &FrobeniusLift,
    alpha: &PAdicRational,
    e_start: u32,
    e_stop: u32,
) -> Result<StrengthResult> {
    if e_stop < e_start {
        return Err(Error::Invariant(format!("empty level range {e_start}..={e_stop}")));
    }
    let per_level = (e_start..=e_stop)
        .into_par_iter()
        .map(|e| Ok((e, strength_at_level(f, lift, alpha, e)?)))
        .collect::<Result<Vec<_>>>()?;
    if let Some(w) = per_level.windows(2).find(|w| w[1].1 > w[0].1) {
        return Err(Error::Invariant(format!(
            "strength of {alpha} increased from {} at level {} to {} at level {}",
            w[0].1, w[0].0, w[1].1, w[1].0
        )));
    }
    let n = per_level.len();
    Ok(StrengthResult {
        value: per_level[n - 1].1,
        stabilized: n >= 2 && per_level[n - 1].1 == per_level[n - 2].1,
        per_level,
        verified_to_level: e_stop,
    })
}

/// Roots with their strengths. Strengths are computed over levels
/// `0..=max_level`.
pub fn bfunction_report(
    f: &Poly,
    lift: &FrobeniusLift,
    max_level: u32,
    bounds: ReconBounds,
) -> Result<RootReport> {
    let mut report = detect_roots(f, lift, max_level, bounds)?;
    let strengths = report
        .roots
        .par_iter()
        .map(|r| strength(f, lift, &r.alpha, 0, max_level))
        .collect::<Result<Vec<_>>>()?;
    for (root, s) in report.roots.iter_mut().zip(strengths) {
        root.strength = s.value;
        root.stabilized = s.stabilized;
        root.verified_to_level = s.verified_to_level;
    }
    report.roots.retain(|r| r.strength >= 1);
    check_report(f, lift, &report)?;
    Ok(report)
}

/// Structural checks on a finished report: strengths in range, and all
/// roots negative when `F(f) = f^p`.
fn check_report(f: &Poly, lift: &FrobeniusLift, report: &RootReport) -> Result<()> {
    let top = f.ring().length();
    if let Some(r) = report.roots.iter().find(|r| r.strength > top) {
        return Err(Error::Invariant(format!(
            "strength {} of {} exceeds {top}",
            r.strength, r.alpha
        )));
    }
    if !report.roots.iter().all(|r| r.alpha.is_negative())
        && frobenius_apply(f, lift, 1)? == f.pow(f.ring().p())
    {
        return Err(Error::Invariant(
            "F(f) = f^p but a nonnegative root was found".into(),
        ));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Mismatch {
    /// Negative roots over `V` differ from the roots of `f mod p`.
    NegativeRoots {
        over_v: Vec<PAdicRational>,
        mod_p: Vec<PAdicRational>,
    },
    /// A nonnegative root with no negative root in its class mod `Z`.
    NotATranslate { root: PAdicRational },
    /// The root sets differ modulo `Z`.
    ClassesModZ {
        over_v: Vec<PAdicRational>,
        mod_p: Vec<PAdicRational>,
    },
    /// One of the runs left residues unresolved, so the comparison is
    /// incomplete.
    Unresolved { mod_p: bool, residues: Vec<u64> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Crosscheck {
    pub over_v: RootReport,
    pub mod_p: RootReport,
    pub mismatches: Vec<Mismatch>,
}

impl Crosscheck {
    pub fn is_consistent(&self) -> bool {
        self.mismatches.is_empty()
    }
}

fn fractional_part(a: &PAdicRational) -> PAdicRational {
    a.add_integer(-a.floor())
}

/// Runs root detection on `f` and on `f mod p` and compares the results.
/// The run mod `p` uses `max_level + m` so both windows have the same size.
pub fn crosscheck_mod_p(
    f: &Poly,
    lift: &FrobeniusLift,
    max_level: u32,
    bounds: ReconBounds,
) -> Result<Crosscheck> {
    let ring = f.ring();
    let field = ring.residue_field();
    let f0 = f.reduce_to(field)?;
    let lift0 = lift.reduce_to(field)?;
    let over_v = detect_roots(f, lift, max_level, bounds)?;
    let mod_p = detect_roots(&f0, &lift0, max_level + ring.m(), bounds)?;

    let mut mismatches = Vec::new();
    for (report, is_mod_p) in [(&over_v, false), (&mod_p, true)] {
        if !report.unresolved.is_empty() {
            mismatches.push(Mismatch::Unresolved {
                mod_p: is_mod_p,
                residues: report.unresolved.clone(),
            });
        }
    }

    let negatives: Vec<PAdicRational> =
        over_v.alphas().into_iter().filter(|a| a.is_negative()).collect();
    let negatives_mod_p: Vec<PAdicRational> =
        mod_p.alphas().into_iter().filter(|a| a.is_negative()).collect();
    if negatives != negatives_mod_p {
        mismatches.push(Mismatch::NegativeRoots {
            over_v: negatives.clone(),
            mod_p: negatives_mod_p,
        });
    }

    let negative_classes: BTreeSet<PAdicRational> = negatives.iter().map(fractional_part).collect();
    for a in over_v.alphas().into_iter().filter(|a| !a.is_negative()) {
        if !negative_classes.contains(&fractional_part(&a)) {
            mismatches.push(Mismatch::NotATranslate { root: a });
        }
    }

    let classes = |r: &RootReport| -> Vec<PAdicRational> {
        r.alphas()
            .iter()
            .map(fractional_part)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    };
    let (cv, cp) = (classes(&over_v), classes(&mod_p));
    if cv != cp {
        mismatches.push(Mismatch::ClassesModZ {
            over_v: cv,
            mod_p: cp,
        });
    }

    Ok(Crosscheck {
        over_v,
        mod_p,
        mismatches,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrengthVerdict {
    pub alpha: PAdicRational,
    pub b_value: PAdicRational,
    /// `None` encodes `+infinity` (`b(alpha) = 0`).
    pub b_valuation: Option<i64>,
    /// `(m, strength of alpha in f mod p^(m+1))`.
    pub strengths: Vec<(u32, StrengthResult)>,
    /// Strengths do not decrease as `m` grows.
    pub monotone: bool,
    /// `v_p(b(alpha)) >= strength` for every `m`.
    pub bounded: bool,
}

impl StrengthVerdict {
    pub fn holds(&self) -> bool {
        self.monotone && self.bounded
    }
}

/// Compares strengths of `alpha` in the reductions `f_m` of `f` with
/// user-supplied values `b(alpha)` of the characteristic-zero b-function.
///
/// `f` and `lift` must live over `Z/p^(M+1)` with `M >= max(m_range)`.
/// Strengths use levels `0..=levels`.
pub fn strength_vs_bsato(
    f: &Poly,
    lift: &FrobeniusLift,
    b_values: &[(PAdicRational, PAdicRational)],
    m_range: std::ops::RangeInclusive<u32>,
    levels: u32,
) -> Result<Vec<StrengthVerdict>> {
    let ring = f.ring();
    let p = ring.p();
    if *m_range.end() > ring.m() {
        return Err(Error::Invariant(format!(
            "m = {} requested but the input lives over Z/{}",
            m_range.end(),
            ring.modulus()
        )));
    }
    let reductions = m_range
        .map(|m| {
            let r = ChainRing::new(p, m)?;
            Ok((m, f.reduce_to(r)?, lift.reduce_to(r)?))
        })
        .collect::<Result<Vec<_>>>()?;
    b_values
        .iter()
        .map(|(alpha, b)| {
            let strengths = reductions
                .iter()
                .map(|(m, fm, lm)| Ok((*m, strength(fm, lm, alpha, 0, levels)?)))
                .collect::<Result<Vec<_>>>()?;
            let b_valuation = b.valuation(p);
            let monotone = strengths.windows(2).all(|w| w[0].1.value <= w[1].1.value);
            let bounded = strengths
                .iter()
                .all(|(_, s)| b_valuation.is_none_or(|v| v >= s.value as i64));
            Ok(StrengthVerdict {
                alpha: *alpha,
                b_value: *b,
                b_valuation,
                strengths,
                monotone,
                bounded,
            })
        })
        .collect()
}
