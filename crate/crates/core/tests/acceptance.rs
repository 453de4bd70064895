//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs with a plain `main` so the summary lines always reach the terminal.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use bsroots_core::*;
use std::result::Result;
use common::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn set(v: &[u64]) -> BTreeSet<u64> {
    v.iter().copied().collect()
}

fn alphas(report: &RootReport) -> Vec<String> {
    report.alphas().iter().map(|a| a.to_string()).collect()
}

fn pos_bsr() -> (Poly, FrobeniusLift) {
    let r9 = ChainRing::new(3, 1).unwrap();
    (poly(r9, 2, &[(1, &[2, 0]), (3, &[0, 1])]), FrobeniusLift::standard(r9, 2))
}

/// `{k p^e - 1} ∪ {(k p^e - 1)/2 : k odd} ∪ {(k p^e + 1)/2 : k odd}` in `[0, window)`.
fn positive_root_formula(p: i64, e: u32, window: i64) -> BTreeSet<u64> {
    let pe = p.pow(e);
    let mut out = BTreeSet::new();
    for k in 0..=(2 * window / pe + 2) {
        let candidates = [
            Some(k * pe - 1),
            (k % 2 == 1).then(|| (k * pe - 1) / 2),
            (k % 2 == 1).then(|| (k * pe + 1) / 2),
        ];
        for n in candidates.into_iter().flatten() {
            if (0..window).contains(&n) {
                out.insert(n as u64);
            }
        }
    }
    out
}

fn criterion_1() -> Check {
    let start = Instant::now();
    let (f, lift) = pos_bsr();
    let level2 = nu_set(&f, &lift, 2).map_err(|e| e.to_string())?;
    let expected2 = set(&[4, 5, 8, 13, 14, 17, 22, 23, 26]);
    ensure(set(&level2.members) == expected2, || format!("level 2 window {:?}", level2.members))?;
    ensure(expected2 == positive_root_formula(3, 2, 27), || "formula disagrees at level 2".into())?;
    let level3 = nu_set(&f, &lift, 3).map_err(|e| e.to_string())?;
    let expected3 = positive_root_formula(3, 3, 81);
    ensure(set(&level3.members) == expected3, || {
        format!("level 3 window {:?}, formula {:?}", level3.members, expected3)
    })?;
    let report = detect_roots(&f, &lift, 4, ReconBounds { den_bound: 10, num_bound: 10 })
        .map_err(|e| e.to_string())?;
    ensure(alphas(&report) == ["-1", "-1/2", "1/2"], || format!("roots {:?}", alphas(&report)))?;
    Ok(format!(
        "windows mod 27 and 81 exact, roots {{-1, -1/2, 1/2}}, {:.1}s",
        start.elapsed().as_secs_f64()
    ))
}

fn criterion_2() -> Check {
    for (p, m) in [(2u64, 0u32), (2, 1), (2, 2), (3, 0), (3, 1), (5, 0)] {
        let r = ChainRing::new(p, m).unwrap();
        let s = strength(&Poly::var(r, 1, 0), &FrobeniusLift::standard(r, 1), &q(-1, 1), 0, 3)
            .map_err(|e| e.to_string())?;
        ensure(s.value == m + 1 && s.stabilized, || format!("p={p} m={m}: {s:?}"))?;
    }
    Ok("str(-1, x) = m+1, stabilized, for all six (p, m)".into())
}

fn criterion_3() -> Check {
    let r4 = ChainRing::new(2, 1).unwrap();
    let f1 = FrobeniusLift::standard(r4, 2);
    let f2 = FrobeniusLift::from_images(
        r4,
        vec![
            poly(r4, 2, &[(1, &[2, 0]), (2, &[1, 1]), (2, &[0, 2])]),
            poly(r4, 2, &[(1, &[0, 2])]),
        ],
    )
    .unwrap();
    let x = Poly::var(r4, 2, 0);
    let x_plus_y = poly(r4, 2, &[(1, &[1, 0]), (1, &[0, 1])]);
    let w = |f: &Poly, lift: &FrobeniusLift| nu_set(f, lift, 1).map(|s| s.members).map_err(|e| e.to_string());
    ensure(w(&x, &f1)? == [1, 3], || "ν_x(F1)".into())?;
    ensure(w(&x_plus_y, &f1)? == [1, 2, 3], || "ν_{x+y}(F1)".into())?;
    ensure(w(&x, &f2)? == [1, 2, 3], || format!("ν_x(F2) = {:?}", w(&x, &f2)))?;
    let b = ReconBounds { den_bound: 3, num_bound: 3 };
    let r1 = detect_roots(&x, &f1, 4, b).map_err(|e| e.to_string())?;
    let r2 = detect_roots(&x, &f2, 4, b).map_err(|e| e.to_string())?;
    ensure(r1.alphas() == r2.alphas() && alphas(&r1) == ["-1"], || {
        format!("roots F1 {:?}, F2 {:?}", alphas(&r1), alphas(&r2))
    })?;
    Ok("windows {1,3}, {1,2,3}, {1,2,3}; roots of x agree under both lifts".into())
}

fn criterion_4() -> Check {
    let r4 = ChainRing::new(2, 1).unwrap();
    let (f, lift) = pos_bsr();
    let cases = [
        ("x^2 + 3y over Z/9", f, lift, 4, ReconBounds { den_bound: 10, num_bound: 10 }),
        ("x over Z/4", Poly::var(r4, 2, 0), FrobeniusLift::standard(r4, 2), 4, ReconBounds { den_bound: 3, num_bound: 3 }),
        (
            "x + 2y over Z/4",
            poly(r4, 2, &[(1, &[1, 0]), (2, &[0, 1])]),
            FrobeniusLift::standard(r4, 2),
            4,
            ReconBounds { den_bound: 3, num_bound: 3 },
        ),
    ];
    let mut summary = Vec::new();
    for (name, f, lift, level, bounds) in cases {
        let c = crosscheck_mod_p(&f, &lift, level, bounds).map_err(|e| format!("{name}: {e}"))?;
        ensure(c.is_consistent(), || format!("{name}: {:?}", c.mismatches))?;
        summary.push(format!("{name}: {:?} vs {:?}", alphas(&c.over_v), alphas(&c.mod_p)));
    }
    Ok(summary.join("; "))
}

fn criterion_5() -> Check {
    let cases = 240;
    let mut rng = StdRng::seed_from_u64(0x5eed_0005);
    for i in 0..cases {
        let inst = random_instance(&mut rng);
        check_properties(&inst, &mut rng).map_err(|e| format!("case {i}: {e}"))?;
    }
    Ok(format!("{cases} random instances, zero violations"))
}

fn criterion_6() -> Check {
    let mut rng = StdRng::seed_from_u64(0x5eed_0006);
    let memberships = 600;
    let mut members = 0;
    for i in 0..memberships {
        let inst = random_membership(&mut rng);
        if strong_groebner(&inst.ideal).contains(&inst.target) {
            members += 1;
        }
        check_membership(&inst).map_err(|e| format!("membership case {i}: {e}"))?;
    }
    let matrices = 600;
    for i in 0..matrices {
        let mat = random_matrix(&mut rng);
        check_howell(&mat).map_err(|e| format!("matrix case {i}: {e}"))?;
    }
    Ok(format!(
        "{memberships} membership instances ({members} members), {matrices} Howell spans, zero disagreements"
    ))
}

/// ν-invariants of `x^a` under the standard lift, from floor arithmetic.
fn monomial_nu(a: u64, p: u64, e: u32, n: u64) -> bool {
    let pe = p.pow(e);
    a * n / pe < a * (n + 1) / pe
}

/// Rationals `u/v` (`v <= den`, `|u| <= num`) whose truncations mod
/// `p^(e+m)` satisfy the floor criterion for every `e <= depth`.
fn monomial_roots_oracle(a: u64, p: u64, m: u32, depth: u32, den: i64, num: i64) -> Vec<PAdicRational> {
    let mut out = BTreeSet::new();
    for v in 1..=den {
        for u in -num..=num {
            let alpha = q(u, v);
            if !alpha.is_p_integral(p) {
                continue;
            }
            if (0..=depth).all(|e| monomial_nu(a, p, e, alpha.truncate_below(p, e + m))) {
                out.insert(alpha);
            }
        }
    }
    out.into_iter().collect()
}

fn criterion_7() -> Check {
    let bounds = ReconBounds { den_bound: 3, num_bound: 3 };
    let mut summary = Vec::new();
    for (a, p) in [(1u32, 2u64), (1, 3), (2, 3), (3, 2)] {
        for m in 0..=1u32 {
            let r = ChainRing::new(p, m).unwrap();
            let f = Poly::term(r, r.one(), Monomial::new([a]));
            let level = default_max_level(p, m, bounds);
            let report = detect_roots(&f, &FrobeniusLift::standard(r, 1), level, bounds).map_err(|e| e.to_string())?;
            // the oracle looks much deeper than the engine
            let oracle = monomial_roots_oracle(a as u64, p, m, 12, 3, 3);
            ensure(report.alphas() == oracle, || {
                format!("x^{a}, p={p}, m={m}: engine {:?}, oracle {:?}", alphas(&report), oracle)
            })?;
            ensure(report.unresolved.is_empty(), || format!("x^{a}, p={p}: unresolved {:?}", report.unresolved))?;
            if m == 0 {
                summary.push(format!("x^{a}@{p}: {:?}", alphas(&report)));
            }
        }
    }
    let r2 = ChainRing::new(2, 0).unwrap();
    let x3 = Poly::term(r2, r2.one(), Monomial::new([3]));
    let report = detect_roots(&x3, &FrobeniusLift::standard(r2, 1), 6, bounds).map_err(|e| e.to_string())?;
    ensure(alphas(&report) == ["-1", "-2/3", "-1/3"], || format!("x^3 at p=2: {:?}", alphas(&report)))?;
    for (p, m) in [(2u64, 0u32), (2, 1), (3, 1), (2, 2)] {
        let r = ChainRing::new(p, m).unwrap();
        let xy = poly(r, 2, &[(1, &[1, 1])]);
        for (f, lift) in [
            (Poly::var(r, 1, 0), FrobeniusLift::standard(r, 1)),
            (xy, FrobeniusLift::standard(r, 2)),
        ] {
            let s = strength(&f, &lift, &q(-1, 1), 0, 2).map_err(|e| e.to_string())?;
            ensure(s.value == m + 1, || format!("strength of -1 in {f} at p={p} m={m}: {}", s.value))?;
        }
    }
    Ok(summary.join(", ") + "; strengths of -1 in x, xy equal m+1")
}

fn criterion_8() -> Check {
    let mut verdicts = Vec::new();
    // b_x(s) = s + 1
    for p in [2u64, 3] {
        let r = ChainRing::new(p, 2).unwrap();
        let vals: Vec<_> = [q(-1, 1), q(-2, 1), q(-3, 1)].into_iter().map(|a| (a, a.add_integer(1))).collect();
        verdicts.extend(
            strength_vs_bsato(&Poly::var(r, 1, 0), &FrobeniusLift::standard(r, 1), &vals, 0..=2, 2)
                .map_err(|e| e.to_string())?,
        );
    }
    // b_{x^2}(s) = (s + 1)(s + 1/2)
    let r27 = ChainRing::new(3, 2).unwrap();
    let x2 = Poly::term(r27, r27.one(), Monomial::new([2]));
    let b = |s: PAdicRational| s.add_integer(1).mul(&s.add(&q(1, 2)));
    let vals: Vec<_> = [q(-1, 1), q(-1, 2), q(-3, 2), q(-2, 1)].into_iter().map(|a| (a, b(a))).collect();
    verdicts.extend(strength_vs_bsato(&x2, &FrobeniusLift::standard(r27, 1), &vals, 0..=2, 2).map_err(|e| e.to_string())?);
    let bad: Vec<_> = verdicts.iter().filter(|v| !v.holds()).collect();
    ensure(bad.is_empty(), || format!("violations: {bad:?}"))?;
    Ok(format!("{} (alpha, m-range) verdicts, zero violations", verdicts.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 8] = [
        ("1 positive-root example", criterion_1),
        ("2 strength of -1 in x", criterion_2),
        ("3 lift dependence of nu", criterion_3),
        ("4 crosscheck mod p", criterion_4),
        ("5 property suite", criterion_5),
        ("6 oracle equivalence", criterion_6),
        ("7 monomial closed forms", criterion_7),
        ("8 strength vs b-function", criterion_8),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {name}: {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 8 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
