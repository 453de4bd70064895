//! Bernstein–Sato roots of polynomials over `Z/p^(m+1)` computed from
//! ν-invariants of Cartier operations.
//!
//! The pipeline is: polynomials and Frobenius lifts ([`poly`]), the Cartier
//! operation on ideals ([`cartier`]), ideal membership through strong Gröbner
//! bases ([`groebner`]), ν-invariant windows ([`nu`]), and finally root
//! detection and strengths ([`bsr`]).

pub mod bsr;
pub mod cartier;
pub mod cfun;
pub mod chainring;
pub mod error;
pub mod groebner;
pub mod linalg;
pub mod nu;
pub mod padic;
pub mod poly;

pub use bsr::{
    bfunction_report, candidate_residues, crosscheck_mod_p, default_max_level, detect_roots, strength,
    strength_vs_bsato, Crosscheck, Mismatch, ReconBounds, ResidueTree, RootEntry, RootReport,
    StrengthResult, StrengthVerdict,
};
pub use cartier::{cartier_generators, cartier_of_poly, frobenius_pullback_ideal, IdealGens};
pub use cfun::{bfunction_contains, FiniteSupportModule, LevelFunction};
pub use chainring::{ChainRing, RingScalar};
pub use error::{Error, Result};
pub use groebner::{ideal_contains, ideal_equal, membership_bruteforce, min_p_power_in, strong_groebner, GroebnerBasis};
pub use linalg::Matrix;
pub use nu::{is_nu, nu_j, nu_set, NuLevelSet};
pub use padic::{reconstruct, PAdicRational};
pub use poly::{frobenius_apply, phi_decompose, phi_recompose, FrobeniusLift, Monomial, Poly};
