//! Exhaustive consistency sweeps over supported types and parabolic subsets.

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::parabolic::{coset_system, opposite_type, TypeSubset};
use crate::root_weyl::{CartanDatum, ElemId, WeylGroup};
use crate::zip_poset::{
    compare_eo_twists, main_theorem_equivalence, make_zip_datum, sigma0, Flavor, Side, TwistComparison,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyConfig {
    /// Largest rank included in the sweep.
    pub rank_max: usize,
    /// Largest rank for the quadratic order checks (reversal, equivalence, twist comparison).
    pub order_rank_max: usize,
    /// Use the non-trivial diagram automorphism where one exists instead of the split form.
    pub twisted: bool,
    pub exec: Exec,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            rank_max: 3,
            order_rank_max: 3,
            twisted: false,
            exec: Exec::Auto,
        }
    }
}

/// Pass/fail of one check, with a diagnostic when it fails.
pub type Check = std::result::Result<(), String>;

/// Results for one `(type, I)`.
#[derive(Debug, Clone)]
pub struct SubsetReport {
    pub datum: String,
    pub i: TypeSubset,
    pub j: TypeSubset,
    pub sigma0_bijective: Check,
    pub sigma0_lengths: Check,
    pub coset_identities: Check,
    pub posets: Check,
    pub sigma: Check,
    pub order_reversal: Option<Check>,
    pub main_theorem: Option<Check>,
    pub twist_comparison: Option<TwistComparison>,
}

impl SubsetReport {
    /// Every mandatory check that was run passed. The twist comparison is a finding, not a check.
    pub fn passed(&self) -> bool {
        self.mandatory().all(|(_, c)| c.is_ok())
    }

    /// `(name, result)` of every mandatory check that was run.
    pub fn mandatory(&self) -> impl Iterator<Item = (&'static str, &Check)> {
        [
            ("sigma0_bijective", Some(&self.sigma0_bijective)),
            ("sigma0_lengths", Some(&self.sigma0_lengths)),
            ("coset_identities", Some(&self.coset_identities)),
            ("posets", Some(&self.posets)),
            ("sigma", Some(&self.sigma)),
            ("order_reversal", self.order_reversal.as_ref()),
            ("main_theorem", self.main_theorem.as_ref()),
        ]
        .into_iter()
        .filter_map(|(n, c)| c.map(|c| (n, c)))
    }
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub subsets: Vec<SubsetReport>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.subsets.iter().all(SubsetReport::passed)
    }
}

/// The data swept for a given configuration.
pub fn sweep_data(cfg: &VerifyConfig) -> Vec<CartanDatum> {
    CartanDatum::supported_up_to_rank(cfg.rank_max)
        .into_iter()
        .map(|d| match (cfg.twisted, d.standard_twist()) {
            (true, Some(t)) => d.with_automorphism(t).expect("diagram automorphism"),
            _ => d,
        })
        .collect()
}

pub fn run(cfg: &VerifyConfig) -> Result<VerifyReport> {
    let mut subsets = Vec::new();
    for datum in sweep_data(cfg) {
        let g = WeylGroup::new(datum)?;
        for i in TypeSubset::all(g.rank()) {
            subsets.push(check_subset(&g, i, cfg)?);
        }
    }
    Ok(VerifyReport { subsets })
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn flatten(r: Result<Check>) -> Check {
    r.unwrap_or_else(|e| Err(e.to_string()))
}

pub fn check_subset(g: &WeylGroup, i: TypeSubset, cfg: &VerifyConfig) -> Result<SubsetReport> {
    let j = opposite_type(g, i)?;
    let s0 = sigma0(g, i)?;
    let cj = coset_system(g, j)?;

    let mut images: Vec<ElemId> = s0.pairs.iter().map(|p| p.1).collect();
    images.sort_unstable();
    let sigma0_bijective = ensure(images == cj.left_reps, || {
        format!("image of sigma0 is not ^J W ({} vs {} elements)", images.len(), cj.left_reps.len())
    });
    let top = g.length(cj.w0_upper);
    let sigma0_lengths = s0
        .pairs
        .iter()
        .find(|&&(w, s)| g.length(s) + g.length(w) != top)
        .map_or(Ok(()), |&(w, s)| {
            Err(format!(
                "l(sigma0({})) = {} but l(w0^J) - l(w) = {}",
                g.word_string(w),
                g.length(s),
                top - g.length(w)
            ))
        });

    let coset_identities = longest_element_identities(g, i);
    let posets = flatten(check_posets(g, i, cfg.exec));
    let sigma = flatten(check_sigma(g, i));

    let small = g.rank() <= cfg.order_rank_max;
    let order_reversal = small.then(|| flatten(check_reversal(g, i, cfg.exec)));
    let main_theorem = small.then(|| {
        flatten(main_theorem_equivalence(g, i, cfg.exec).map(|r| {
            ensure(r.holds(), || {
                let (wp, w) = r.counterexamples[0];
                format!(
                    "{} of {} pairs disagree, first (w'={}, w={})",
                    r.counterexamples.len(),
                    r.pairs_checked,
                    g.word_string(wp),
                    g.word_string(w)
                )
            })
        }))
    });
    let twist_comparison = if small {
        Some(compare_eo_twists(g, i, cfg.exec)?)
    } else {
        None
    };
    Ok(SubsetReport {
        datum: g.datum().to_string(),
        i,
        j,
        sigma0_bijective,
        sigma0_lengths,
        coset_identities,
        posets,
        sigma,
        order_reversal,
        main_theorem,
        twist_comparison,
    })
}

/// Conjugation by `w0` and the longest coset representatives.
fn longest_element_identities(g: &WeylGroup, i: TypeSubset) -> Check {
    let inner = || -> Result<Check> {
        let j = opposite_type(g, i)?;
        let ci = coset_system(g, i)?;
        let cj = coset_system(g, j)?;
        let w0 = g.w0();
        let conj = |x: ElemId| g.mul_all(&[w0, x, w0]);
        let mapped = |xs: &[ElemId], ys: &[ElemId]| {
            let mut img: Vec<ElemId> = xs.iter().map(|&x| conj(x)).collect();
            img.sort_unstable();
            img == ys && xs.iter().all(|&x| g.length(conj(x)) == g.length(x))
        };
        let checks: [(bool, &str); 8] = [
            (opposite_type(g, j)? == i, "opposite type is not an involution"),
            (cj.w0_upper == ci.upper_w0, "w0^J != ^I w0"),
            (ci.w0_upper == cj.upper_w0, "w0^I != ^J w0"),
            (ci.w_i0 == conj(cj.w_i0), "w_I0 != w0 w_J0 w0"),
            (mapped(&ci.w_i, &cj.w_i), "conjugation does not map W_I onto W_J"),
            (mapped(&ci.right_reps, &cj.right_reps), "conjugation does not map W^I onto W^J"),
            (mapped(&ci.left_reps, &cj.left_reps), "conjugation does not map ^I W onto ^J W"),
            (inverse_decomposition(g, &ci), "inverse of w^I w_I is not w_I^-1 (w^I)^-1"),
        ];
        if let Some((_, msg)) = checks.iter().find(|c| !c.0) {
            return Ok(Err(msg.to_string()));
        }
        // w -> w0 w w_I0 is an order reversing involution of W^I with complementary lengths
        let dual = |w: ElemId| g.mul_all(&[w0, w, ci.w_i0]);
        let top = g.length(ci.w0_upper);
        for &u in &ci.right_reps {
            let du = dual(u);
            if ci.right_reps.binary_search(&du).is_err() || g.length(du) + g.length(u) != top {
                return Ok(Err(format!("w0 w w_I0 misbehaves at {}", g.word_string(u))));
            }
            for &v in &ci.right_reps {
                if g.leq(u, v) != g.leq(dual(v), du) {
                    return Ok(Err("w0 w w_I0 does not reverse Bruhat order on W^I".into()));
                }
            }
        }
        Ok(Ok(()))
    };
    flatten(inner())
}

fn inverse_decomposition(g: &WeylGroup, ci: &crate::parabolic::CosetSystem) -> bool {
    (0..g.order()).all(|w| {
        let (upper, part) = crate::parabolic::decompose_right(g, w, ci.subset).expect("rank");
        let wi = g.inv(w);
        g.mul(g.inv(part), g.inv(upper)) == wi
            && ci.in_w_i(g, g.inv(part))
            && ci.left_reps.binary_search(&g.inv(upper)).is_ok()
    })
}

fn check_posets(g: &WeylGroup, i: TypeSubset, exec: Exec) -> Result<Check> {
    let ci = coset_system(g, i)?;
    for flavor in [Flavor::Eo, Flavor::Dl] {
        let d = make_zip_datum(g, i, flavor)?;
        for side in [Side::Left, Side::Right] {
            let p = match d.strata_poset(side, exec) {
                Ok(p) => p,
                Err(e) => return Ok(Err(e.to_string())),
            };
            for a in 0..p.len() {
                for b in 0..p.len() {
                    let (la, lb) = (p.labels[a], p.labels[b]);
                    if p.leq.get(a, b) && a != b && p.dims[a] >= p.dims[b] {
                        return Ok(Err(format!("{flavor} order does not refine length at {}, {}", p.names[a], p.names[b])));
                    }
                    if g.leq(la, lb) && !p.leq.get(a, b) {
                        return Ok(Err(format!("{flavor}: Bruhat {} <= {} not twisted", p.names[a], p.names[b])));
                    }
                }
            }
            if side == Side::Left {
                let top = *p.dims.iter().max().expect("nonempty");
                if top != g.length(ci.w0_upper) || top != g.length(g.w0()) - g.length(ci.w_i0) {
                    return Ok(Err(format!("{flavor}: top stratum has length {top}")));
                }
            }
        }
    }
    Ok(Ok(()))
}

fn check_sigma(g: &WeylGroup, i: TypeSubset) -> Result<Check> {
    for flavor in [Flavor::Eo, Flavor::Dl] {
        let d = make_zip_datum(g, i, flavor)?;
        let mut img = Vec::new();
        for &w in &d.labels(Side::Left) {
            match d.sigma(w) {
                Ok(s) => img.push(s),
                Err(e) => return Ok(Err(e.to_string())),
            }
        }
        img.sort_unstable();
        if img != d.labels(Side::Right) {
            return Ok(Err(format!("{flavor}: sigma is not a bijection onto W^J")));
        }
    }
    Ok(Ok(()))
}

/// `u <=_EO v` on `^I W` implies `sigma0(v) <=_DL sigma0(u)` on `^J W`.
pub fn check_reversal(g: &WeylGroup, i: TypeSubset, exec: Exec) -> Result<Check> {
    let j = opposite_type(g, i)?;
    let eo = make_zip_datum(g, i, Flavor::Eo)?;
    let dl = make_zip_datum(g, j, Flavor::Dl)?;
    let s0 = sigma0(g, i)?;
    let bad: Vec<(ElemId, ElemId)> = exec
        .map_slice(&s0.pairs, |&(u, su)| {
            s0.pairs
                .iter()
                .filter(|&&(v, sv)| eo.twisted_leq(u, v) && !dl.twisted_leq(sv, su))
                .map(|&(v, _)| (u, v))
                .collect::<Vec<_>>()
        })
        .into_iter()
        .flatten()
        .collect();
    Ok(ensure(bad.is_empty(), || {
        let (u, v) = bad[0];
        format!(
            "{} pairs fail, first u={} v={}",
            bad.len(),
            g.word_string(u),
            g.word_string(v)
        )
    }))
}

/// Convenience for callers that want a hard error instead of a report.
pub fn require(report: &VerifyReport) -> Result<()> {
    for s in &report.subsets {
        for (name, c) in s.mandatory() {
            if let Err(msg) = c {
                return Err(Error::Consistency(format!("{} I={}: {name}: {msg}", s.datum, s.i)));
            }
        }
    }
    Ok(())
}
