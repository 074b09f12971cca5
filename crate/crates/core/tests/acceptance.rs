//! Acceptance suite. Runs every criterion at its stated scope and time limit, prints one
//! PASS/FAIL line per criterion and exits non-zero when any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use zipstrata::fq_oracle::{dl_strata_counts, geometric_merge, log_slope, FqGroupSpec, GroupFamily};
use zipstrata::parabolic::{check_coset_identities, coset_system, opposite_type, TypeSubset};
use zipstrata::root_weyl::{CartanDatum, WeylGroup};
use zipstrata::verify::{self, check_reversal, VerifyConfig};
use zipstrata::zip_poset::{main_theorem_equivalence, make_zip_datum, sigma0, Flavor, Side};
use zipstrata::{Caps, Exec, Result};

type Outcome = std::result::Result<String, String>;

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn groups(max_rank: usize) -> Vec<WeylGroup> {
    CartanDatum::supported_up_to_rank(max_rank)
        .into_iter()
        .map(|d| WeylGroup::new(d).expect("supported datum"))
        .collect()
}

fn lift<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn sigma0_duality() -> Outcome {
    let mut n = 0;
    for g in groups(4) {
        for i in TypeSubset::all(g.rank()) {
            let s = lift(sigma0(&g, i))?;
            let j = lift(opposite_type(&g, i))?;
            let cj = lift(coset_system(&g, j))?;
            let mut img: Vec<_> = s.pairs.iter().map(|p| p.1).collect();
            img.sort_unstable();
            if img != cj.left_reps {
                return Err(format!("{} I={i}: sigma0 is not onto ^J W", g.datum()));
            }
            let top = g.length(cj.w0_upper);
            if let Some(&(w, _)) = s.pairs.iter().find(|&&(w, sw)| g.length(sw) + g.length(w) != top) {
                return Err(format!("{} I={i}: length formula fails at {}", g.datum(), g.word_string(w)));
            }
            n += 1;
        }
    }
    Ok(format!("{n} (type, I) cases"))
}

fn order_reversal() -> Outcome {
    let mut n = 0;
    for g in groups(3) {
        for i in TypeSubset::all(g.rank()) {
            lift(check_reversal(&g, i, Exec::Auto))?.map_err(|e| format!("{} I={i}: {e}", g.datum()))?;
            n += 1;
        }
    }
    Ok(format!("{n} (type, I) cases"))
}

fn main_equivalence() -> Outcome {
    let mut pairs = 0;
    for g in groups(3) {
        for i in TypeSubset::all(g.rank()) {
            let r = lift(main_theorem_equivalence(&g, i, Exec::Auto))?;
            if !r.holds() {
                let (wp, w) = r.counterexamples[0];
                return Err(format!(
                    "{} I+={i}: {} counterexamples, first w'={} w={}",
                    g.datum(),
                    r.counterexamples.len(),
                    g.word_string(wp),
                    g.word_string(w)
                ));
            }
            pairs += r.pairs_checked;
        }
    }
    Ok(format!("{pairs} pairs"))
}

fn partial_orders() -> Outcome {
    let mut n = 0;
    for g in groups(4) {
        for i in TypeSubset::all(g.rank()) {
            for flavor in [Flavor::Eo, Flavor::Dl] {
                let d = lift(make_zip_datum(&g, i, flavor))?;
                for side in [Side::Left, Side::Right] {
                    let p = lift(d.strata_poset(side, Exec::Auto))?;
                    let where_ = || format!("{} I={i} {flavor} {side:?}", g.datum());
                    if !p.leq.is_reflexive() {
                        return Err(format!("{}: not reflexive", where_()));
                    }
                    if let Some((a, b)) = p.leq.antisymmetry_violation() {
                        return Err(format!("{}: antisymmetry fails at {}, {}", where_(), p.names[a], p.names[b]));
                    }
                    if let Some((a, b, c)) = p.leq.transitivity_violation() {
                        return Err(format!(
                            "{}: transitivity fails at {}, {}, {}",
                            where_(),
                            p.names[a],
                            p.names[b],
                            p.names[c]
                        ));
                    }
                    n += 1;
                }
            }
        }
    }
    Ok(format!("{n} posets"))
}

fn coset_identities() -> Outcome {
    let cfg = VerifyConfig {
        rank_max: 4,
        order_rank_max: 0,
        twisted: false,
        exec: Exec::Auto,
    };
    let report = lift(verify::run(&cfg))?;
    for s in &report.subsets {
        s.coset_identities.clone().map_err(|e| format!("{} I={}: {e}", s.datum, s.i))?;
    }
    for g in groups(4) {
        for i in TypeSubset::all(g.rank()) {
            lift(check_coset_identities(&g, &lift(coset_system(&g, i))?))?;
        }
    }
    Ok(format!("{} (type, I) cases", report.subsets.len()))
}

fn bruhat_cross_validation() -> Outcome {
    let mut entries = 0;
    for name in ["A3", "B3", "C3"] {
        let g = common::group(name);
        let oracle = common::reflection_closure(&g);
        for u in 0..g.order() {
            for w in 0..g.order() {
                if g.leq(u, w) != oracle[u][w] {
                    return Err(format!("{name}: disagreement at ({}, {})", g.word_string(u), g.word_string(w)));
                }
                entries += 1;
            }
        }
    }
    Ok(format!("{entries} table entries"))
}

fn gl(n: usize, q: usize, weights: &[i32]) -> std::result::Result<FqGroupSpec, String> {
    lift(FqGroupSpec::new(GroupFamily::Gl, n, q, weights.to_vec()))
}

fn finite_field_bijection() -> Outcome {
    let cases: [(usize, &[i32], usize); 3] = [(2, &[1, 0], 2), (3, &[1, 0, 0], 3), (3, &[2, 1, 0], 6)];
    let mut summary = Vec::new();
    let mut failures = Vec::new();
    for (n, w, expected) in cases {
        let spec = gl(n, 2, w)?;
        let r = lift(geometric_merge(&spec, Flavor::Eo, &[1, 2], Caps::default(), Exec::Auto))?;
        let line = format!(
            "{}: merged {:?} expected {} ({}) reps distinct {} exact {}",
            spec.describe(),
            r.merged_counts,
            r.expected,
            r.stability,
            r.representatives_distinct,
            r.exact_count()
        );
        if r.expected != expected || !r.bijection_holds() {
            failures.push(line);
        } else {
            summary.push(line);
        }
    }
    if failures.is_empty() {
        Ok(summary.join("; "))
    } else {
        Err(failures.join("; "))
    }
}

fn dl_point_counts() -> Outcome {
    let spec = gl(2, 2, &[1, 0])?;
    for m in 1..=4u32 {
        let c = lift(dl_strata_counts(&spec, m, Caps::default(), Exec::Auto))?;
        let q = 1usize << m;
        let counts: Vec<usize> = c.counts.iter().map(|x| x.1).collect();
        if counts != [3, q - 2] || c.total != q + 1 {
            return Err(format!("GL_2 m={m}: counts {counts:?} total {}", c.total));
        }
    }
    // Every label must be hit at some extension degree for each oracle specification in use.
    let specs = [gl(2, 2, &[1, 0])?, gl(3, 2, &[1, 0, 0])?, gl(3, 2, &[2, 1, 0])?, gl(3, 2, &[1, 1, 0])?];
    for spec in &specs {
        let runs: Vec<_> = (1..=3u32)
            .map(|m| lift(dl_strata_counts(spec, m, Caps::default(), Exec::Auto)))
            .collect::<std::result::Result<_, _>>()?;
        let g = lift(spec.weyl_group())?;
        for (k, &(w, _)) in runs[0].counts.iter().enumerate() {
            if runs.iter().all(|r| r.counts[k].1 == 0) {
                return Err(format!("{}: label {} empty for m in 1..=3", spec.describe(), g.word_string(w)));
            }
        }
        if let Some(r) = runs.iter().find(|r| r.total as u128 != r.expected_total) {
            return Err(format!("{} m={}: total {} != {}", spec.describe(), r.m, r.total, r.expected_total));
        }
    }
    Ok("GL_2 counts exact for m=1..4; all labels populated".into())
}

fn dimension_law() -> Outcome {
    let spec = gl(2, 2, &[1, 0])?;
    for m in 1..=4u32 {
        let c = lift(dl_strata_counts(&spec, m, Caps::default(), Exec::Auto))?;
        let q = 1usize << m;
        if c.counts[0].1 != 2 + 1 || c.counts[1].1 != q - 2 {
            return Err(format!("GL_2 m={m}: counts not q+1 and q^m-q"));
        }
    }
    let spec = gl(3, 2, &[1, 1, 0])?;
    let g = lift(spec.weyl_group())?;
    let c2 = lift(dl_strata_counts(&spec, 2, Caps::default(), Exec::Auto))?;
    let c3 = lift(dl_strata_counts(&spec, 3, Caps::default(), Exec::Auto))?;
    let (top, n2) = *c2.counts.iter().max_by_key(|x| g.length(x.0)).expect("labels");
    let n3 = c3.count(top).unwrap_or(0);
    let len = g.length(top) as f64;
    match log_slope(spec.q(), 2, n2, 3, n3) {
        Some(s) if (s - len).abs() <= 0.15 => Ok(format!("top stratum {} slope {s:.3}", g.word_string(top))),
        Some(s) => Err(format!("top stratum {} slope {s:.3}, length {len}", g.word_string(top))),
        None => Err(format!(
            "top stratum {} has counts {n2} (m=2) and {n3} (m=3); slope undefined",
            g.word_string(top)
        )),
    }
}

fn twist_report() -> Outcome {
    let report = lift(verify::run(&VerifyConfig::default()))?;
    let mut differ = 0;
    for s in &report.subsets {
        let c = s
            .twist_comparison
            .as_ref()
            .ok_or_else(|| format!("{} I={}: no twist comparison", s.datum, s.i))?;
        if !c.coincide() {
            differ += 1;
        }
    }
    Ok(format!("{} (type, I) reported, {differ} with differing orders", report.subsets.len()))
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { id: 1, name: "sigma0 duality, rank <= 4", limit: Some(Duration::from_secs(60)), run: sigma0_duality },
        Criterion { id: 2, name: "order reversal, rank <= 3", limit: Some(Duration::from_secs(120)), run: order_reversal },
        Criterion { id: 3, name: "EO/DL equivalence, rank <= 3", limit: Some(Duration::from_secs(120)), run: main_equivalence },
        Criterion { id: 4, name: "strata posets are partial orders, rank <= 4", limit: None, run: partial_orders },
        Criterion { id: 5, name: "longest element identities, rank <= 4", limit: None, run: coset_identities },
        Criterion { id: 6, name: "Bruhat vs reflection closure on A3, B3, C3", limit: None, run: bruhat_cross_validation },
        Criterion { id: 7, name: "finite-field orbit bijection, tower [1,2]", limit: Some(Duration::from_secs(300)), run: finite_field_bijection },
        Criterion { id: 8, name: "fine DL point counts and non-emptiness", limit: None, run: dl_point_counts },
        Criterion { id: 9, name: "dimension law from point counts", limit: None, run: dimension_law },
        Criterion { id: 10, name: "EO twist comparison report, rank <= 3", limit: None, run: twist_report },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let outcome = match (outcome, c.limit) {
            (Ok(_), Some(limit)) if elapsed > limit => Err(format!("took {elapsed:.2?}, limit {limit:?}")),
            (o, _) => o,
        };
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {:>2} {tag} [{:.2?}] {}: {detail}", c.id, elapsed, c.name);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
