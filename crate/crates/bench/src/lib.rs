//! Fixtures shared by the benchmarks in `benches/`.

use bsroots_core::{ChainRing, FrobeniusLift, IdealGens, Poly};

/// `x^2 + 3y` over `Z/9` with the standard lift.
pub fn quadratic_plus_p() -> (Poly, FrobeniusLift) {
    let ring = ChainRing::new(3, 1).unwrap();
    let f = Poly::from_terms(ring, 2, [(1, vec![2, 0]), (3, vec![0, 1])]).unwrap();
    (f, FrobeniusLift::standard(ring, 2))
}

/// `x^a` in one variable over `Z/p^(m+1)`.
pub fn monomial(p: u64, m: u32, a: u32) -> (Poly, FrobeniusLift) {
    let ring = ChainRing::new(p, m).unwrap();
    let f = Poly::from_terms(ring, 1, [(1, vec![a])]).unwrap();
    (f, FrobeniusLift::standard(ring, 1))
}

/// A small ideal over `Z/8` whose basis needs several annihilator and
/// S-polynomial steps.
pub fn mixed_ideal() -> IdealGens {
    let ring = ChainRing::new(2, 2).unwrap();
    let g1 = Poly::from_terms(ring, 3, [(1, vec![2, 1, 0]), (2, vec![0, 0, 2]), (3, vec![1, 0, 0])]).unwrap();
    let g2 = Poly::from_terms(ring, 3, [(2, vec![1, 1, 1]), (1, vec![0, 2, 0]), (1, vec![0, 0, 1])]).unwrap();
    let g3 = Poly::from_terms(ring, 3, [(4, vec![3, 0, 0]), (1, vec![0, 1, 2]), (6, vec![1, 0, 0])]).unwrap();
    IdealGens::new(ring, 3, [g1, g2, g3]).unwrap()
}
