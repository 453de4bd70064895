//! The level-`e` Cartier operation on ideals and the Frobenius pullback.

use crate::chainring::ChainRing;
use crate::error::{Error, Result};
use crate::poly::{frobenius_apply, phi_decompose, FrobeniusLift, Poly};

/// A generating set of an ideal of `V[x1..xn]`.
///
/// Zero generators are dropped and the rest are kept sorted and
/// deduplicated, so equal generating sets compare equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealGens {
    ring: ChainRing,
    nvars: usize,
    gens: Vec<Poly>,
}

impl IdealGens {
    pub fn new(ring: ChainRing, nvars: usize, gens: impl IntoIterator<Item = Poly>) -> Result<Self> {
        let mut out = Vec::new();
        for g in gens {
            if g.ring() != ring {
                return Err(Error::RingMismatch);
            }
            if g.nvars() != nvars {
                return Err(Error::NvarsMismatch(nvars, g.nvars()));
            }
            if !g.is_zero() {
                out.push(g);
            }
        }
        out.sort();
        out.dedup();
        Ok(IdealGens {
            ring,
            nvars,
            gens: out,
        })
    }

    pub fn principal(f: Poly) -> Self {
        let (ring, nvars) = (f.ring(), f.nvars());
        Self::new(ring, nvars, [f]).expect("single generator matches its own ring")
    }

    pub fn unit(ring: ChainRing, nvars: usize) -> Self {
        Self::principal(Poly::one(ring, nvars))
    }

    pub fn ring(&self) -> ChainRing {
        self.ring
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Poly] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// True when some generator is a unit constant, which makes the ideal `(1)`.
    pub fn has_unit_generator(&self) -> bool {
        self.gens.iter().any(Poly::is_unit_constant)
    }

    /// Largest generator degree, `None` for the zero ideal.
    pub fn max_degree(&self) -> Option<u32> {
        self.gens.iter().filter_map(Poly::degree).max()
    }
}

fn check_lift(j: &IdealGens, lift: &FrobeniusLift) -> Result<()> {
    if j.ring != lift.ring() {
        return Err(Error::RingMismatch);
    }
    if j.nvars != lift.nvars() {
        return Err(Error::NvarsMismatch(j.nvars, lift.nvars()));
    }
    Ok(())
}

/// `(F^e(J))`, generated by the images of the generators of `J`.
pub fn frobenius_pullback_ideal(j: &IdealGens, lift: &FrobeniusLift, e: u32) -> Result<IdealGens> {
    check_lift(j, lift)?;
    let gens = j
        .gens
        .iter()
        .map(|g| frobenius_apply(g, lift, e))
        .collect::<Result<Vec<_>>>()?;
    IdealGens::new(j.ring, j.nvars, gens)
}

/// `C^(F,e)(J)`: the ideal generated by every component of every generator
/// of `J` in the basis `{x^a : 0 <= a_i < p^e}`.
pub fn cartier_generators(j: &IdealGens, lift: &FrobeniusLift, e: u32) -> Result<IdealGens> {
    check_lift(j, lift)?;
    if j.has_unit_generator() {
        return Ok(IdealGens::unit(j.ring, j.nvars));
    }
    let mut comps = Vec::new();
    for g in &j.gens {
        comps.extend(phi_decompose(g, lift, e)?.into_values());
    }
    IdealGens::new(j.ring, j.nvars, comps)
}

/// `C^(F,e)(f^n)` for a single polynomial.
pub fn cartier_of_poly(f: &Poly, lift: &FrobeniusLift, e: u32) -> Result<IdealGens> {
    cartier_generators(&IdealGens::principal(f.clone()), lift, e)
}
