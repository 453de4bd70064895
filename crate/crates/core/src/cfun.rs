//! Locally constant functions `Z_p -> V` at a finite level, and the
//! finite-support modules over them that describe the b-function.

use serde::Serialize;

use crate::bsr::RootReport;
use crate::chainring::{ChainRing, RingScalar};
use crate::error::{Error, Result};
use crate::padic::PAdicRational;

/// A function `Z/p^e -> V`, viewed as a function on `Z_p` through
/// reduction mod `p^e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelFunction {
    ring: ChainRing,
    level: u32,
    values: Vec<RingScalar>,
}

fn level_size(ring: ChainRing, level: u32) -> Result<usize> {
    ring.p()
        .checked_pow(level)
        .and_then(|n| usize::try_from(n).ok())
        .ok_or(Error::WindowTooLarge(level))
}

impl LevelFunction {
    pub fn new(ring: ChainRing, level: u32, values: Vec<RingScalar>) -> Result<Self> {
        let expected = level_size(ring, level)?;
        if values.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                found: values.len(),
            });
        }
        Ok(LevelFunction {
            ring,
            level,
            values,
        })
    }

    pub fn constant(ring: ChainRing, level: u32, c: RingScalar) -> Result<Self> {
        Ok(LevelFunction {
            ring,
            level,
            values: vec![c; level_size(ring, level)?],
        })
    }

    /// The indicator of `a + p^e Z_p`.
    pub fn chi(ring: ChainRing, level: u32, a: u64) -> Result<Self> {
        let size = level_size(ring, level)?;
        if a as usize >= size {
            return Err(Error::ResidueOutOfRange { residue: a, level });
        }
        let mut values = vec![ring.zero(); size];
        values[a as usize] = ring.one();
        Ok(LevelFunction {
            ring,
            level,
            values,
        })
    }

    pub fn ring(&self) -> ChainRing {
        self.ring
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn values(&self) -> &[RingScalar] {
        &self.values
    }

    /// Value at any integer, reduced mod `p^e`.
    pub fn at(&self, n: i64) -> RingScalar {
        self.values[n.rem_euclid(self.values.len() as i64) as usize]
    }

    /// Value at a `p`-adic integer.
    pub fn at_padic(&self, alpha: &PAdicRational) -> RingScalar {
        self.values[alpha.truncate_below(self.ring.p(), self.level) as usize]
    }

    /// The same function seen at a finer level.
    pub fn refine(&self, to_level: u32) -> Result<Self> {
        if to_level < self.level {
            return Err(Error::Invariant(format!(
                "cannot refine level {} to coarser level {to_level}",
                self.level
            )));
        }
        let size = level_size(self.ring, to_level)?;
        let n = self.values.len();
        Ok(LevelFunction {
            ring: self.ring,
            level: to_level,
            values: (0..size).map(|r| self.values[r % n]).collect(),
        })
    }

    fn pointwise(&self, other: &Self, op: impl Fn(RingScalar, RingScalar) -> RingScalar) -> Result<Self> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        let level = self.level.max(other.level);
        let (a, b) = (self.refine(level)?, other.refine(level)?);
        Ok(LevelFunction {
            ring: self.ring,
            level,
            values: a.values.iter().zip(&b.values).map(|(&x, &y)| op(x, y)).collect(),
        })
    }

    /// Pointwise product, at the finer of the two levels.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let ring = self.ring;
        self.pointwise(other, |x, y| ring.mul(x, y))
    }

    /// Pointwise sum, at the finer of the two levels.
    pub fn add(&self, other: &Self) -> Result<Self> {
        let ring = self.ring;
        self.pointwise(other, |x, y| ring.add(x, y))
    }
}

/// A module `⊕ V/(p^t_i)` supported at finitely many distinct points `α_i`;
/// its annihilator is the product of the point ideals `(p^t_i : α_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiniteSupportModule {
    ring: ChainRing,
    points: Vec<(PAdicRational, u32)>,
}

impl FiniteSupportModule {
    pub fn new(ring: ChainRing, points: Vec<(PAdicRational, u32)>) -> Result<Self> {
        let mut seen = std::collections::BTreeSet::new();
        for (a, t) in &points {
            if !a.is_p_integral(ring.p()) {
                return Err(Error::NotPIntegral(a.to_string()));
            }
            if *t > ring.length() {
                return Err(Error::Invariant(format!("exponent {t} exceeds {}", ring.length())));
            }
            if !seen.insert(*a) {
                return Err(Error::Invariant(format!("point {a} listed twice")));
            }
        }
        Ok(FiniteSupportModule { ring, points })
    }

    pub fn from_report(report: &RootReport) -> Result<Self> {
        let ring = ChainRing::new(report.p, report.m)?;
        Self::new(ring, report.roots.iter().map(|r| (r.alpha, r.strength)).collect())
    }

    pub fn points(&self) -> &[(PAdicRational, u32)] {
        &self.points
    }

    /// The annihilator exponent of the stalk at `beta`; `0` off the support.
    pub fn stalk(&self, beta: &PAdicRational) -> u32 {
        self.points
            .iter()
            .find(|(a, _)| a == beta)
            .map_or(0, |&(_, t)| t)
    }

    /// Whether `phi` annihilates the module. `phi`'s level has to separate
    /// the support points.
    pub fn annihilated_by(&self, phi: &LevelFunction) -> Result<bool> {
        if phi.ring != self.ring {
            return Err(Error::RingMismatch);
        }
        let p = self.ring.p();
        let mut residues: Vec<u64> = self
            .points
            .iter()
            .map(|(a, _)| a.truncate_below(p, phi.level))
            .collect();
        residues.sort_unstable();
        if residues.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::LevelTooCoarse);
        }
        Ok(self
            .points
            .iter()
            .all(|(a, t)| phi.at_padic(a).valuation() >= *t))
    }
}

/// Whether `phi` lies in the b-function ideal described by `report`.
pub fn bfunction_contains(report: &RootReport, phi: &LevelFunction) -> Result<bool> {
    FiniteSupportModule::from_report(report)?.annihilated_by(phi)
}
