//! Text and JSON rendering of run results.
//!
//! The JSON document always carries the keys `config`, `nu_windows`,
//! `residue_tree`, `roots`, `unresolved`, `shadows`, `strengths` and
//! `verified_to_level`. Keys that do not apply to the chosen mode hold an
//! empty list or `null`. `crosscheck` appears only in crosscheck mode and
//! `timing` only with `--timing`.

use std::fmt::Write as _;
use std::time::Duration;

use bsroots_core::{Mismatch, PAdicRational, ResidueTree, RootEntry, RootReport, StrengthResult};
use serde_json::{json, Value};

use crate::{CliError, Job, Outcome, ParseErrorKind, RunConfig};

/// Number of p-adic digits printed per root.
pub const DIGITS: u32 = 8;

fn digit_count(p: u64) -> u32 {
    (1..=DIGITS)
        .take_while(|&k| p.checked_pow(k).is_some_and(|q| q < 1 << 62))
        .last()
        .unwrap_or(0)
}

fn digits(alpha: &PAdicRational, p: u64) -> Vec<u64> {
    alpha.digits(p, digit_count(p))
}

fn fractions(xs: &[PAdicRational]) -> Value {
    xs.iter().map(|a| a.to_string()).collect()
}

fn root_json(entry: &RootEntry, p: u64, with_strength: bool) -> Value {
    json!({
        "alpha": entry.alpha.to_string(),
        "numerator": entry.alpha.numer(),
        "denominator": entry.alpha.denom(),
        "digits": digits(&entry.alpha, p),
        "strength": with_strength.then_some(entry.strength),
        "stabilized": with_strength.then_some(entry.stabilized),
        "verified_to_level": entry.verified_to_level,
    })
}

fn tree_json(tree: &ResidueTree) -> Value {
    tree.levels
        .iter()
        .map(|l| {
            json!({
                "level": l.level,
                "modulus": l.modulus,
                "count": l.survivors.len(),
                "survivors": l.survivors,
            })
        })
        .collect()
}

fn strength_json(alpha: &PAdicRational, s: &StrengthResult) -> Value {
    json!({
        "alpha": alpha.to_string(),
        "value": s.value,
        "stabilized": s.stabilized,
        "per_level": s.per_level.iter().map(|(e, t)| json!({"level": e, "strength": t})).collect::<Value>(),
        "verified_to_level": s.verified_to_level,
    })
}

fn mismatch_json(m: &Mismatch) -> Value {
    match m {
        Mismatch::NegativeRoots { over_v, mod_p } => json!({
            "kind": "negative_roots",
            "over_v": fractions(over_v),
            "mod_p": fractions(mod_p),
        }),
        Mismatch::NotATranslate { root } => json!({
            "kind": "not_a_translate",
            "root": root.to_string(),
        }),
        Mismatch::ClassesModZ { over_v, mod_p } => json!({
            "kind": "classes_mod_z",
            "over_v": fractions(over_v),
            "mod_p": fractions(mod_p),
        }),
        Mismatch::Unresolved { mod_p, residues } => json!({
            "kind": "unresolved",
            "mod_p": mod_p,
            "residues": residues,
        }),
    }
}

fn report_roots(report: &RootReport, with_strength: bool) -> Value {
    report
        .roots
        .iter()
        .map(|r| root_json(r, report.p, with_strength))
        .collect()
}

fn config_json(cfg: &RunConfig, job: &Job) -> Value {
    let ring = job.f.ring();
    let lift: Vec<Value> = job
        .lift
        .corrections()
        .iter()
        .zip(&job.vars)
        .filter(|(h, _)| !job.lift.is_standard() && !h.is_zero())
        .map(|(h, v)| json!({"var": v, "correction": h.display_with(&job.vars).to_string()}))
        .collect();
    json!({
        "p": ring.p(),
        "m": ring.m(),
        "vars": job.vars,
        "poly": job.f.display_with(&job.vars).to_string(),
        "lift": lift,
        "mode": job.mode,
        "max_level": job.max_level,
        "den_bound": job.bounds.den_bound,
        "num_bound": job.bounds.num_bound,
        "alpha": job.alpha.map(|a| a.to_string()),
        "input": cfg.poly,
    })
}

pub fn structured(cfg: &RunConfig, job: &Job, outcome: &Outcome, elapsed: Option<Duration>) -> String {
    let mut doc = json!({
        "config": config_json(cfg, job),
        "nu_windows": [],
        "residue_tree": outcome.tree().map(tree_json).unwrap_or(json!([])),
        "roots": [],
        "unresolved": [],
        "shadows": [],
        "strengths": [],
        "verified_to_level": null,
    });
    match outcome {
        Outcome::Nu(sets) => {
            doc["nu_windows"] = sets
                .iter()
                .map(|s| json!({"level": s.level, "window": s.window, "members": s.members}))
                .collect();
            doc["verified_to_level"] = json!(job.max_level);
        }
        Outcome::Roots(r) | Outcome::Bfunction(r) => {
            let with_strength = matches!(outcome, Outcome::Bfunction(_));
            doc["roots"] = report_roots(r, with_strength);
            doc["unresolved"] = json!(r.unresolved);
            doc["shadows"] = json!(r.shadows);
            doc["verified_to_level"] = json!(r.verified_to_level);
            if with_strength {
                doc["strengths"] = r
                    .roots
                    .iter()
                    .map(|e| json!({"alpha": e.alpha.to_string(), "value": e.strength, "stabilized": e.stabilized}))
                    .collect();
            }
        }
        Outcome::Strength(alpha, s) => {
            doc["strengths"] = json!([strength_json(alpha, s)]);
            doc["verified_to_level"] = json!(s.verified_to_level);
        }
        Outcome::Crosscheck(c) => {
            doc["roots"] = report_roots(&c.over_v, false);
            doc["unresolved"] = json!(c.over_v.unresolved);
            doc["shadows"] = json!(c.over_v.shadows);
            doc["verified_to_level"] = json!(c.over_v.verified_to_level);
            doc["crosscheck"] = json!({
                "consistent": c.is_consistent(),
                "mod_p": {
                    "roots": report_roots(&c.mod_p, false),
                    "unresolved": c.mod_p.unresolved,
                    "verified_to_level": c.mod_p.verified_to_level,
                },
                "mismatches": c.mismatches.iter().map(mismatch_json).collect::<Value>(),
            });
        }
    }
    if let Some(d) = elapsed {
        doc["timing"] = json!({"elapsed_ms": d.as_millis() as u64});
    }
    let mut out = serde_json::to_string_pretty(&doc).expect("json values always serialize");
    out.push('\n');
    out
}

pub fn error_record(err: &CliError) -> String {
    let record = match err {
        CliError::Parse { field, error } => {
            let (kind, name) = match &error.kind {
                ParseErrorKind::Syntax(_) => ("syntax", None),
                ParseErrorKind::UnknownVariable(v) => ("unknown_variable", Some(v.clone())),
            };
            json!({
                "kind": kind,
                "field": field,
                "offset": error.offset,
                "name": name,
                "message": error.to_string(),
            })
        }
        CliError::Config(msg) => json!({"kind": "config", "message": msg}),
        CliError::Engine(e) => json!({"kind": "engine", "message": e.to_string()}),
    };
    let mut out = serde_json::to_string_pretty(&json!({
        "error": record,
        "exit_code": err.exit_code(),
    }))
    .expect("json values always serialize");
    out.push('\n');
    out
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

fn write_roots(out: &mut String, report: &RootReport, with_strength: bool) {
    if report.roots.is_empty() {
        writeln!(out, "roots: none").unwrap();
    }
    for r in &report.roots {
        write!(out, "root {}  digits {}", r.alpha, join(&digits(&r.alpha, report.p))).unwrap();
        if with_strength {
            write!(
                out,
                "  strength {}{}",
                r.strength,
                if r.stabilized { " (stabilized)" } else { "" }
            )
            .unwrap();
        }
        writeln!(out).unwrap();
    }
    if !report.unresolved.is_empty() {
        writeln!(out, "unresolved: {}", join(&report.unresolved)).unwrap();
    }
    if !report.shadows.is_empty() {
        writeln!(out, "shadows: {}", join(&report.shadows)).unwrap();
    }
    writeln!(out, "verified to level {}", report.verified_to_level).unwrap();
}

pub fn text(job: &Job, outcome: &Outcome, elapsed: Option<Duration>) -> String {
    let ring = job.f.ring();
    let mut out = String::new();
    writeln!(
        out,
        "f = {} over Z/{}",
        job.f.display_with(&job.vars),
        ring.modulus()
    )
    .unwrap();
    match outcome {
        Outcome::Nu(sets) => {
            for s in sets {
                writeln!(out, "level {} (mod {}): {}", s.level, s.window, join(&s.members)).unwrap();
            }
        }
        Outcome::Roots(r) => write_roots(&mut out, r, false),
        Outcome::Bfunction(r) => write_roots(&mut out, r, true),
        Outcome::Strength(alpha, s) => {
            for (e, t) in &s.per_level {
                writeln!(out, "level {e}: {t}").unwrap();
            }
            writeln!(
                out,
                "strength of {alpha}: {}{}",
                s.value,
                if s.stabilized { " (stabilized)" } else { "" }
            )
            .unwrap();
        }
        Outcome::Crosscheck(c) => {
            write_roots(&mut out, &c.over_v, false);
            writeln!(out, "mod {}: {}", ring.p(), join(&c.mod_p.alphas())).unwrap();
            if c.is_consistent() {
                writeln!(out, "consistent").unwrap();
            }
            for m in &c.mismatches {
                writeln!(out, "mismatch: {}", mismatch_json(m)).unwrap();
            }
        }
    }
    if let Some(d) = elapsed {
        writeln!(out, "elapsed {} ms", d.as_millis()).unwrap();
    }
    out
}
