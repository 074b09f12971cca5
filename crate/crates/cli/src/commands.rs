//! Subcommand implementations. Each returns the rendered output and whether it passed.

use serde_json::json;
use zipstrata::fq_oracle::{dl_strata_counts, geometric_merge, log_slope, FqGroupSpec, GroupFamily};
use zipstrata::parabolic::{opposite_type, TypeSubset};
use zipstrata::root_weyl::{CartanDatum, ElemId, WeylGroup};
use zipstrata::verify::{self, Check, VerifyConfig};
use zipstrata::zip_poset::{make_zip_datum, Flavor, Side};
use zipstrata::{Caps, Error, Exec, Result};

use crate::output::{poset_dot, tsv_row, PosetJson};
use crate::{DlSimArgs, FlavorArg, OracleArgs, PosetArgs, PosetFormat, ReportFormat, SideArg, VerifyArgs, WeylArgs, WeylOp};

pub struct Outcome {
    pub text: String,
    pub diagnostics: Vec<String>,
    pub passed: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome {
            text,
            diagnostics: Vec::new(),
            passed: true,
        }
    }
}

fn flavor(f: FlavorArg) -> Flavor {
    match f {
        FlavorArg::Eo => Flavor::Eo,
        FlavorArg::Dl => Flavor::Dl,
    }
}

/// `split`, `twisted`, or a 1-based permutation of the simple indices.
fn apply_frobenius_arg(datum: CartanDatum, arg: &str) -> Result<CartanDatum> {
    match arg.trim() {
        "split" => Ok(datum),
        "twisted" => {
            let t = datum
                .standard_twist()
                .ok_or_else(|| Error::Config(format!("{} has no non-trivial diagram automorphism", datum.name())))?;
            datum.with_automorphism(t)
        }
        perm => {
            let parsed = parse_indices(perm)?;
            if parsed.contains(&0) {
                return Err(Error::Usage("Frobenius permutation entries are 1-based".into()));
            }
            datum.with_automorphism(parsed.into_iter().map(|i| i - 1).collect())
        }
    }
}

fn parse_indices(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| p.parse::<usize>().map_err(|_| Error::Usage(format!("expected an integer, got {p:?}"))))
        .collect()
}

fn parse_weights(text: &str) -> Result<Vec<i32>> {
    text.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| p.parse::<i32>().map_err(|_| Error::Usage(format!("bad weight {p:?}"))))
        .collect()
}

fn parse_levels(text: &str) -> Result<Vec<u32>> {
    parse_indices(text)?
        .into_iter()
        .map(|m| u32::try_from(m).map_err(|_| Error::Usage(format!("level {m} too large"))))
        .collect()
}

fn build_group(cartan: &str, frobenius: &str, caps: Caps) -> Result<WeylGroup> {
    let datum: CartanDatum = cartan.parse()?;
    WeylGroup::with_caps(apply_frobenius_arg(datum, frobenius)?, caps)
}

fn subset_list(s: TypeSubset) -> String {
    s.to_string()
}

pub fn poset(a: &PosetArgs, caps: Caps) -> Result<Outcome> {
    let g = build_group(&a.cartan, &a.frobenius, caps)?;
    let i = TypeSubset::parse(g.rank(), &a.subset)?;
    let fl = flavor(a.flavor);
    let d = make_zip_datum(&g, i, fl)?;
    let side = match a.side {
        SideArg::Left => Side::Left,
        SideArg::Right => Side::Right,
    };
    let p = d.strata_poset(side, Exec::Auto)?;
    let side_name = match side {
        Side::Left => "left",
        Side::Right => "right",
    };
    let text = match a.format {
        PosetFormat::Dot => {
            let title = format!("{} I={} J={} {} {}", g.datum(), i, d.j(), fl, side_name);
            poset_dot(&title, &p)
        }
        PosetFormat::Json => {
            let doc = PosetJson::new(g.datum().to_string(), i, d.j(), fl.to_string(), side_name.into(), &p);
            let mut s = serde_json::to_string_pretty(&doc).map_err(|e| Error::Consistency(e.to_string()))?;
            s.push('\n');
            s
        }
    };
    Ok(Outcome::ok(text))
}

fn check_cell(c: Option<&Check>) -> &'static str {
    match c {
        None => "skip",
        Some(Ok(())) => "ok",
        Some(Err(_)) => "FAIL",
    }
}

pub fn verify(a: &VerifyArgs, caps: Caps) -> Result<Outcome> {
    let twisted = match a.frobenius.as_str() {
        "split" => false,
        "twisted" => true,
        other => return Err(Error::Usage(format!("--frobenius must be split or twisted, got {other:?}"))),
    };
    let cfg = VerifyConfig {
        rank_max: a.rank_max,
        order_rank_max: a.order_rank_max.unwrap_or(a.rank_max.min(3)),
        twisted,
        exec: Exec::Auto,
    };
    for d in verify::sweep_data(&cfg) {
        // Builds each group once under the caps so oversized sweeps fail with exit code 3.
        WeylGroup::with_caps(d, caps)?;
    }
    let report = verify::run(&cfg)?;
    let mut diagnostics = Vec::new();
    for s in &report.subsets {
        for (name, c) in s.mandatory() {
            if let Err(msg) = c {
                diagnostics.push(format!("FAIL {} I={} {name}: {msg}", s.datum, s.i));
            }
        }
    }
    let failed = report.subsets.iter().filter(|s| !s.passed()).count();
    diagnostics.push(format!(
        "{} subsets checked, {} passed, {} failed",
        report.subsets.len(),
        report.subsets.len() - failed,
        failed
    ));
    let text = match a.format {
        ReportFormat::Tsv => {
            let mut t = tsv_row([
                "type", "I", "J", "sigma0_bijective", "sigma0_lengths", "coset_identities", "posets", "sigma",
                "order_reversal", "main_theorem", "eo_twists_coincide",
            ]);
            for s in &report.subsets {
                let tw = match &s.twist_comparison {
                    None => "skip",
                    Some(c) if c.coincide() => "yes",
                    Some(_) => "no",
                };
                t.push_str(&tsv_row([
                    s.datum.as_str(),
                    &subset_list(s.i),
                    &subset_list(s.j),
                    check_cell(Some(&s.sigma0_bijective)),
                    check_cell(Some(&s.sigma0_lengths)),
                    check_cell(Some(&s.coset_identities)),
                    check_cell(Some(&s.posets)),
                    check_cell(Some(&s.sigma)),
                    check_cell(s.order_reversal.as_ref()),
                    check_cell(s.main_theorem.as_ref()),
                    tw,
                ]));
            }
            t
        }
        ReportFormat::Json => {
            let rows: Vec<_> = report
                .subsets
                .iter()
                .map(|s| {
                    let checks: serde_json::Map<String, serde_json::Value> = s
                        .mandatory()
                        .map(|(n, c)| (n.to_string(), json!(c.as_ref().err().map_or("ok".to_string(), |e| e.clone()))))
                        .collect();
                    json!({
                        "type": s.datum,
                        "I": s.i.to_string(),
                        "J": s.j.to_string(),
                        "passed": s.passed(),
                        "checks": checks,
                        "eo_twists": s.twist_comparison.as_ref().map(|c| json!({
                            "coincide": c.coincide(),
                            "differing_pairs": c.differing_pairs,
                            "longest_of_k_preserves_levi": c.longest_of_k_preserves_levi,
                            "longest_of_k_is_order": c.longest_of_k_is_order,
                        })),
                    })
                })
                .collect();
            format!(
                "{}\n",
                serde_json::to_string_pretty(&json!({"passed": report.passed(), "subsets": rows})).unwrap()
            )
        }
    };
    Ok(Outcome {
        text,
        diagnostics,
        passed: report.passed(),
    })
}

fn group_spec(family: &str, n: usize, q: usize, weights: Vec<i32>) -> Result<FqGroupSpec> {
    let family: GroupFamily = family.parse()?;
    FqGroupSpec::new(family, n, q, weights)
}

fn join<T: std::fmt::Display>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

pub fn oracle(a: &OracleArgs, caps: Caps) -> Result<Outcome> {
    let spec = group_spec(&a.family, a.n, a.q, parse_weights(&a.weights)?)?;
    let levels = parse_levels(&a.levels)?;
    let fl = flavor(a.flavor);
    let report = geometric_merge(&spec, fl, &levels, caps, Exec::Auto)?;
    let g = spec.weyl_group()?;
    let dl = if a.no_dl {
        Vec::new()
    } else {
        levels
            .iter()
            .map(|&m| dl_strata_counts(&spec, m, caps, Exec::Auto))
            .collect::<Result<Vec<_>>>()?
    };
    let labels = |ws: &[ElemId]| join(ws.iter().map(|&w| g.word_string(w)));
    let text = match a.format {
        ReportFormat::Tsv => {
            let mut t = tsv_row(["group", &spec.describe()]);
            t.push_str(&tsv_row(["flavor", &fl.to_string()]));
            t.push_str(&tsv_row(["base_orbits", &report.base.num_orbits().to_string()]));
            t.push_str(&tsv_row(["base_orbit_sizes", &join(&report.base.sizes)]));
            t.push_str(&tsv_row(["base_orbit_labels", &labels(&report.exact_labels)]));
            for (m, c) in levels.iter().zip(&report.merged_counts) {
                t.push_str(&tsv_row(["merged".to_string(), m.to_string(), c.to_string()]));
            }
            t.push_str(&tsv_row(["expected", &report.expected.to_string()]));
            t.push_str(&tsv_row(["exact", &report.exact_count().to_string()]));
            t.push_str(&tsv_row(["stability_heuristic", &report.stability.to_string()]));
            t.push_str(&tsv_row(["representatives_distinct", &report.representatives_distinct.to_string()]));
            t.push_str(&tsv_row(["bijection", &report.bijection_holds().to_string()]));
            for c in &dl {
                for &(w, n) in &c.counts {
                    t.push_str(&tsv_row(["dl_count".to_string(), c.m.to_string(), g.word_string(w), n.to_string()]));
                }
            }
            t
        }
        ReportFormat::Json => {
            let dl_json: Vec<_> = dl
                .iter()
                .map(|c| {
                    json!({
                        "m": c.m,
                        "field_order": c.field_order,
                        "counts": c.counts.iter().map(|&(w, n)| json!({"label": g.word_string(w), "count": n})).collect::<Vec<_>>(),
                        "total": c.total,
                    })
                })
                .collect();
            let doc = json!({
                "group": spec.describe(),
                "flavor": fl.to_string(),
                "base_orbit_sizes": report.base.sizes,
                "base_orbit_labels": report.exact_labels.iter().map(|&w| g.word_string(w)).collect::<Vec<_>>(),
                "levels": levels,
                "merged_counts": report.merged_counts,
                "expected": report.expected,
                "exact": report.exact_count(),
                "stability_heuristic": report.stability.to_string(),
                "representatives_distinct": report.representatives_distinct,
                "bijection": report.bijection_holds(),
                "dl": dl_json,
            });
            format!("{}\n", serde_json::to_string_pretty(&doc).unwrap())
        }
    };
    let mut diagnostics = Vec::new();
    if !report.bijection_holds() {
        diagnostics.push(format!(
            "tower merge gives {} classes ({}), expected {}; the exact classifier finds {}",
            report.merged_count(),
            report.stability,
            report.expected,
            report.exact_count()
        ));
    }
    Ok(Outcome {
        text,
        diagnostics,
        passed: report.bijection_holds(),
    })
}

pub fn dl_sim(a: &DlSimArgs, caps: Caps) -> Result<Outcome> {
    let weights = match &a.weights {
        Some(w) => parse_weights(w)?,
        None => (0..a.n as i32).rev().collect(),
    };
    let spec = group_spec(&a.family, a.n, a.q, weights)?;
    let g = spec.weyl_group()?;
    let ms = parse_levels(&a.m)?;
    if ms.is_empty() || ms.contains(&0) {
        return Err(Error::Usage("--m needs positive extension degrees".into()));
    }
    let runs = ms
        .iter()
        .map(|&m| dl_strata_counts(&spec, m, caps, Exec::Auto))
        .collect::<Result<Vec<_>>>()?;
    let i_minus = opposite_type(&g, spec.type_subset())?;
    let mut diagnostics = Vec::new();
    let passed = runs.iter().all(|r| r.total as u128 == r.expected_total);
    for r in &runs {
        if r.total as u128 != r.expected_total {
            diagnostics.push(format!("m={}: {} flags enumerated, product formula gives {}", r.m, r.total, r.expected_total));
        }
    }
    let q = spec.q();
    let slopes: Vec<(ElemId, u32, u32, Option<f64>)> = runs
        .windows(2)
        .flat_map(|w| {
            w[0].counts.iter().map(move |&(l, c1)| {
                let c2 = w[1].count(l).unwrap_or(0);
                (l, w[0].m, w[1].m, log_slope(q, w[0].m, c1, w[1].m, c2))
            })
        })
        .collect();
    let text = match a.format {
        ReportFormat::Tsv => {
            let mut t = tsv_row(["group", &spec.describe()]);
            t.push_str(&tsv_row(["labels_type", &i_minus.to_string()]));
            t.push_str(&tsv_row(["m", "field_order", "label", "length", "count"]));
            for r in &runs {
                for &(w, n) in &r.counts {
                    t.push_str(&tsv_row([
                        r.m.to_string(),
                        r.field_order.to_string(),
                        g.word_string(w),
                        g.length(w).to_string(),
                        n.to_string(),
                    ]));
                }
                t.push_str(&tsv_row([r.m.to_string(), r.field_order.to_string(), "total".into(), "-".into(), r.total.to_string()]));
            }
            for (l, m1, m2, s) in &slopes {
                let v = s.map_or("undefined".to_string(), |x| format!("{x:.4}"));
                t.push_str(&tsv_row(["slope".to_string(), format!("{m1}-{m2}"), g.word_string(*l), v]));
            }
            t
        }
        ReportFormat::Json => {
            let doc = json!({
                "group": spec.describe(),
                "labels_type": i_minus.to_string(),
                "runs": runs.iter().map(|r| json!({
                    "m": r.m,
                    "field_order": r.field_order,
                    "counts": r.counts.iter().map(|&(w, n)| json!({"label": g.word_string(w), "length": g.length(w), "count": n})).collect::<Vec<_>>(),
                    "total": r.total,
                    "expected_total": r.expected_total.to_string(),
                })).collect::<Vec<_>>(),
                "slopes": slopes.iter().map(|(l, m1, m2, s)| json!({"label": g.word_string(*l), "from": m1, "to": m2, "slope": s})).collect::<Vec<_>>(),
            });
            format!("{}\n", serde_json::to_string_pretty(&doc).unwrap())
        }
    };
    Ok(Outcome { text, diagnostics, passed })
}

/// Parses `e`, the empty string, `1,2,1` or `s1s2s1` into 0-based letters.
fn parse_word(g: &WeylGroup, text: &str) -> Result<ElemId> {
    let t = text.trim();
    let letters: Vec<usize> = if t.is_empty() || t == "e" {
        Vec::new()
    } else if t.starts_with('s') {
        t.split('s').filter(|p| !p.is_empty()).map(|p| p.parse::<usize>()).collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::Usage(format!("bad word {text:?}")))?
    } else {
        parse_indices(t)?
    };
    if let Some(&bad) = letters.iter().find(|&&i| i == 0 || i > g.rank()) {
        return Err(Error::Usage(format!("simple index {bad} out of range 1..={}", g.rank())));
    }
    g.from_word(&letters.iter().map(|i| i - 1).collect::<Vec<_>>())
}

pub fn weyl(a: &WeylArgs, caps: Caps) -> Result<Outcome> {
    let g = build_group(&a.cartan, &a.frobenius, caps)?;
    let text = match &a.op {
        WeylOp::Multiply { a: x, b: y } => g.word_string(g.mul(parse_word(&g, x)?, parse_word(&g, y)?)),
        WeylOp::Length { word } => g.length(parse_word(&g, word)?).to_string(),
        WeylOp::ReducedWord { word } => g.word_string(parse_word(&g, word)?),
        WeylOp::Longest => g.word_string(g.w0()),
        WeylOp::Frobenius { word } => g.word_string(g.frob(parse_word(&g, word)?)),
        WeylOp::Bruhat { u, w } => (g.leq(parse_word(&g, u)?, parse_word(&g, w)?) as u8).to_string(),
        WeylOp::Order => g.order().to_string(),
    };
    Ok(Outcome::ok(text + "\n"))
}

pub fn inspect(path: &std::path::Path) -> Result<Outcome> {
    let raw = std::fs::read_to_string(path).map_err(|e| Error::Usage(format!("cannot read {}: {e}", path.display())))?;
    let doc: PosetJson = serde_json::from_str(&raw).map_err(|e| Error::Usage(format!("not a poset file: {e}")))?;
    let p = doc.to_poset()?;
    let mut passed = true;
    let mut diagnostics = Vec::new();
    if p.hasse != doc.hasse {
        passed = false;
        diagnostics.push("stored hasse edges differ from the covers of leq_matrix".to_string());
    }
    let mut t = tsv_row(["type", &doc.cartan]);
    t.push_str(&tsv_row(["flavor", &doc.flavor]));
    t.push_str(&tsv_row(["labels".to_string(), p.len().to_string()]));
    t.push_str(&tsv_row(["hasse_edges".to_string(), p.hasse.len().to_string()]));
    t.push_str(&tsv_row(["chain".to_string(), p.is_chain().to_string()]));
    Ok(Outcome { text: t, diagnostics, passed })
}
