//! Random instances and checks shared by the property, oracle and
//! acceptance tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use bsroots_core::bsr::survivor_cap;
use bsroots_core::*;
use std::result::Result;
use rand::rngs::StdRng;
use rand::Rng;

pub fn poly(r: ChainRing, nvars: usize, terms: &[(i128, &[u32])]) -> Poly {
    Poly::from_terms(r, nvars, terms.iter().map(|(c, e)| (*c, e.to_vec()))).unwrap()
}

pub fn q(n: i64, d: i64) -> PAdicRational {
    PAdicRational::new(n, d).unwrap()
}

/// A random polynomial of total degree at most `deg`, with roughly
/// `density` of the monomials present.
pub fn random_poly(rng: &mut StdRng, r: ChainRing, nvars: usize, deg: u32, density: f64) -> Poly {
    let mut terms = Vec::new();
    let mut exps = vec![0u32; nvars];
    loop {
        if exps.iter().sum::<u32>() <= deg && rng.gen_bool(density) {
            terms.push((rng.gen_range(0..r.modulus()) as i128, exps.clone()));
        }
        // odometer over [0, deg]^nvars
        let mut i = 0;
        while i < nvars {
            exps[i] += 1;
            if exps[i] <= deg {
                break;
            }
            exps[i] = 0;
            i += 1;
        }
        if i == nvars {
            break;
        }
    }
    Poly::from_terms(r, nvars, terms).unwrap()
}

/// A random nonconstant nonzerodivisor.
pub fn random_nzd(rng: &mut StdRng, r: ChainRing, nvars: usize, deg: u32) -> Poly {
    loop {
        let f = random_poly(rng, r, nvars, deg, 0.4);
        if f.is_nonzerodivisor() && f.degree().unwrap_or(0) >= 1 {
            return f;
        }
    }
}

/// The standard lift, or one with random linear corrections.
pub fn random_lift(rng: &mut StdRng, r: ChainRing, nvars: usize) -> FrobeniusLift {
    if r.m() == 0 || rng.gen_bool(0.5) {
        return FrobeniusLift::standard(r, nvars);
    }
    let h = (0..nvars).map(|_| random_poly(rng, r, nvars, 1, 0.5)).collect();
    FrobeniusLift::with_corrections(r, h).unwrap()
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub ring: ChainRing,
    pub e: u32,
    pub f: Poly,
    pub lift: FrobeniusLift,
}

/// Two variables, degree at most 3, `p` in {2, 3}, `m <= 1`, `e <= 2`.
pub fn random_instance(rng: &mut StdRng) -> Instance {
    let p = if rng.gen_bool(0.5) { 2 } else { 3 };
    let m = rng.gen_range(0..=1);
    let ring = ChainRing::new(p, m).unwrap();
    // keep the window p^(e+m) small enough for full chains
    let e = rng.gen_range(0..=(2 - m.min(if p == 3 { 1 } else { 0 })));
    let f = random_nzd(rng, ring, 2, 3);
    let lift = random_lift(rng, ring, 2);
    Instance { ring, e, f, lift }
}

fn fail(what: &str, inst: &Instance, detail: String) -> String {
    format!(
        "{what}: p={} m={} e={} f={} lift={:?}: {detail}",
        inst.ring.p(),
        inst.ring.m(),
        inst.e,
        inst.f,
        inst.lift.corrections().iter().map(|h| h.to_string()).collect::<Vec<_>>()
    )
}

/// Whether `C(f^n) != C(f^(n+1))` computed directly from `n`, without
/// reducing `n` into the window.
fn drops_at(f: &Poly, lift: &FrobeniusLift, e: u32, n: u64) -> bool {
    let a = cartier_of_poly(&f.pow(n), lift, e).unwrap();
    let b = cartier_of_poly(&f.pow(n + 1), lift, e).unwrap();
    !ideal_equal(&a, &b).unwrap()
}

/// Every structural property on one instance; the error names the first
/// violation.
pub fn check_properties(inst: &Instance, rng: &mut StdRng) -> Result<(), String> {
    let Instance { ring, e, f, lift } = inst;
    let (ring, e) = (*ring, *e);
    let p = ring.p();
    let m = ring.m();

    // descending chain: the level e+1 set reduces into the level e set
    let lower = nu_set(f, lift, e).map_err(|err| fail("nu_set", inst, err.to_string()))?;
    if e < 2 {
        let upper = nu_set(f, lift, e + 1).unwrap();
        if let Some(n) = upper.members.iter().find(|&&n| !lower.contains(n as i64)) {
            return Err(fail("nu chain not descending", inst, format!("{n} at level {}", e + 1)));
        }
    }

    // periodicity, checked on raw exponents past the window
    let window = lower.window;
    for _ in 0..2 {
        let n = rng.gen_range(0..window);
        if drops_at(f, lift, e, n) != drops_at(f, lift, e, n + window) {
            return Err(fail("nu not periodic", inst, format!("n={n} window={window}")));
        }
    }

    // level shift: ν_f(e) = ν_{F(f)}(e+1), sampled at a few points
    if e == 0 {
        let ff = frobenius_apply(f, lift, 1).unwrap();
        for _ in 0..2 {
            let n = rng.gen_range(0..window * p) as i64;
            if is_nu(&ff, lift, 1, n).unwrap() != lower.contains(n) {
                return Err(fail("nu level shift", inst, format!("n={n}")));
            }
        }
    }

    // degree bound for the standard lift
    if lift.is_standard() {
        let d = f.degree().unwrap();
        let pe = p.pow(e) as u32;
        let c = cartier_of_poly(f, lift, e).unwrap();
        if c.max_degree().unwrap_or(0) > d / pe {
            return Err(fail("cartier degree bound", inst, format!("{:?} > {}", c.max_degree(), d / pe)));
        }
        let cap = survivor_cap(f);
        if lower.members.len() as u64 > cap {
            return Err(fail("nu cardinality bound", inst, format!("{} > {cap}", lower.members.len())));
        }
    }

    // Cartier undoes the Frobenius pullback, also after extra pullbacks
    let j = IdealGens::new(ring, 2, [f.clone(), random_poly(rng, ring, 2, 2, 0.4)]).unwrap();
    let pulled = frobenius_pullback_ideal(&j, lift, e).unwrap();
    if !ideal_equal(&cartier_generators(&pulled, lift, e).unwrap(), &j).unwrap() {
        return Err(fail("C(F^e(I)) != I", inst, format!("I = {:?}", j.generators())));
    }
    if e < 2 {
        let c0 = cartier_generators(&j, lift, 0).unwrap();
        let pulled1 = frobenius_pullback_ideal(&c0, lift, 1).unwrap();
        if !ideal_equal(&cartier_generators(&pulled1, lift, 1).unwrap(), &c0).unwrap() {
            return Err(fail("C^e(I) != C^(e+1)(F(I))", inst, String::new()));
        }
    }

    // F^e(g^(p^m)) = g^(p^(m+e))
    let g = random_poly(rng, ring, 2, 2, 0.5);
    let pm = p.pow(m);
    if frobenius_apply(&g.pow(pm), lift, e).unwrap() != g.pow(pm * p.pow(e)) {
        return Err(fail("F^e(g^(p^m)) != g^(p^(m+e))", inst, format!("g = {g}")));
    }

    // n in ν_f  =>  floor(n/k) in ν_{f^k}
    if !lower.members.is_empty() {
        let n = lower.members[rng.gen_range(0..lower.members.len())];
        let k = rng.gen_range(2..=3u64);
        if !is_nu(&f.pow(k), lift, e, (n / k) as i64).unwrap() {
            return Err(fail("floor(n/k) not in nu(f^k)", inst, format!("n={n} k={k}")));
        }
    }
    Ok(())
}

/// A tiny membership instance: a few generators in one or two variables,
/// and a target that is either a combination of them or random.
pub struct MembershipInstance {
    pub ideal: IdealGens,
    pub target: Poly,
    /// Degree of the multipliers used to build `target`, when it was built
    /// as a combination.
    pub combination_degree: Option<u32>,
}

pub fn random_membership(rng: &mut StdRng) -> MembershipInstance {
    let p = [2u64, 3][rng.gen_range(0..2)];
    let m = rng.gen_range(0..=2);
    let ring = ChainRing::new(p, m).unwrap();
    let nvars = rng.gen_range(1..=2);
    let ngens = rng.gen_range(1..=3);
    let gens: Vec<Poly> = (0..ngens).map(|_| random_poly(rng, ring, nvars, 2, 0.5)).collect();
    let ideal = IdealGens::new(ring, nvars, gens.clone()).unwrap();
    if rng.gen_bool(0.5) {
        let deg = rng.gen_range(0..=2);
        let mut target = Poly::zero(ring, nvars);
        for g in &gens {
            target = &target + &(&random_poly(rng, ring, nvars, deg, 0.5) * g);
        }
        MembershipInstance {
            ideal,
            target,
            combination_degree: Some(deg),
        }
    } else {
        MembershipInstance {
            ideal,
            target: random_poly(rng, ring, nvars, 3, 0.5),
            combination_degree: None,
        }
    }
}

/// Multiplier degree up to which the certificate search runs.
pub const CERTIFICATE_DEGREE_LIMIT: u32 = 16;

/// Gröbner membership against the linear-algebra search. A combination
/// target must be certified at its construction degree. For any target, a
/// certificate with multipliers of degree at most
/// [`CERTIFICATE_DEGREE_LIMIT`] must exist exactly when the Gröbner test
/// says yes.
pub fn check_membership(inst: &MembershipInstance) -> Result<(), String> {
    let j = &inst.ideal;
    let g = &inst.target;
    let gb = strong_groebner(j);
    let member = gb.contains(g);
    let describe = || format!("J = {:?}, g = {g}", j.generators().iter().map(|x| x.to_string()).collect::<Vec<_>>());
    if let Some(d) = inst.combination_degree {
        if !member {
            return Err(format!("combination not recognised: {}", describe()));
        }
        if membership_bruteforce(j, g, d).unwrap() != Some(true) {
            return Err(format!("no certificate at degree {d}: {}", describe()));
        }
    }
    let certified = if member {
        // cheapest first: small caps settle almost every member
        (0..=CERTIFICATE_DEGREE_LIMIT).any(|cap| membership_bruteforce(j, g, cap).unwrap() == Some(true))
    } else {
        membership_bruteforce(j, g, CERTIFICATE_DEGREE_LIMIT).unwrap() == Some(true)
    };
    if certified != member {
        return Err(format!("groebner says {member}, certificate search says {certified}: {}", describe()));
    }
    // the division certificate reconstructs g from the basis
    let (r, quotients) = gb.normal_form_with_certificate(g);
    let mut back = r.clone();
    for (qi, bi) in quotients.iter().zip(gb.elements()) {
        back = &back + &(qi * bi);
    }
    if back != *g || (member != r.is_zero()) {
        return Err(format!("division certificate broken: {}", describe()));
    }
    Ok(())
}

/// The row span by exhaustive enumeration.
pub fn enumerate_span(m: &Matrix) -> BTreeSet<Vec<u64>> {
    let q = m.ring().modulus();
    let mut span = BTreeSet::new();
    span.insert(vec![0u64; m.ncols()]);
    for row in m.rows() {
        let mut next = BTreeSet::new();
        for v in &span {
            for c in 0..q {
                next.insert(v.iter().zip(row).map(|(a, b)| (a + c * b.value()) % q).collect());
            }
        }
        span = next;
    }
    span
}

/// A random matrix whose span is small enough to enumerate
/// (`|V|^ncols <= 2^16`).
pub fn random_matrix(rng: &mut StdRng) -> Matrix {
    let (p, m) = [(2u64, 0u32), (2, 1), (2, 2), (3, 0), (3, 1), (5, 0), (2, 3)][rng.gen_range(0..7)];
    let ring = ChainRing::new(p, m).unwrap();
    let q = ring.modulus();
    let max_cols = (16.0 / (q as f64).log2()).floor() as usize;
    let ncols = rng.gen_range(1..=max_cols.clamp(1, 4));
    let nrows = rng.gen_range(0..=4);
    let rows = (0..nrows)
        .map(|_| {
            (0..ncols)
                .map(|_| {
                    // bias towards non-units so the annihilator logic is exercised
                    let v = rng.gen_range(0..q);
                    if rng.gen_bool(0.5) { ring.from_u64(v * p % q) } else { ring.from_u64(v) }
                })
                .collect()
        })
        .collect();
    Matrix::new(ring, ncols, rows).unwrap()
}

/// Howell form spans the same set, is idempotent, and every span vector
/// reduces to zero against it.
pub fn check_howell(mat: &Matrix) -> Result<(), String> {
    let h = mat.howell_form();
    let span = enumerate_span(mat);
    if enumerate_span(&h) != span {
        return Err(format!("span changed: {:?} -> {:?}", mat.to_values(), h.to_values()));
    }
    if h.howell_form() != h {
        return Err(format!("not idempotent: {:?}", mat.to_values()));
    }
    let ring = mat.ring();
    let q = ring.modulus();
    // membership agrees with enumeration on every vector of V^ncols
    let total = q.pow(mat.ncols() as u32);
    for code in 0..total {
        let mut c = code;
        let v: Vec<u64> = (0..mat.ncols())
            .map(|_| {
                let d = c % q;
                c /= q;
                d
            })
            .collect();
        let scalars: Vec<RingScalar> = v.iter().map(|&x| ring.from_u64(x)).collect();
        if mat.span_contains(&scalars).unwrap() != span.contains(&v) {
            return Err(format!("membership of {v:?} wrong for {:?}", mat.to_values()));
        }
    }
    Ok(())
}
