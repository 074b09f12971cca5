//! Zip data on Weyl groups and the twisted orders on their orbit labels.
//!
//! A zip datum here is the combinatorial shadow `(I, J, psi)` of a parabolic pair with a Levi
//! isogeny: `psi` is a length preserving isomorphism `W_I -> W_J` sending `I` onto `J`. Its
//! twisted order on `^I W` is
//!
//! ```text
//! w' <= w   iff   there is y in W_I with  y w' psi(y)^{-1} <= w  (Bruhat order).
//! ```
//!
//! Two flavors come from Frobenius:
//!
//! * DL: `J = phi(I)` and `psi = phi`.
//! * EO: `J = K = w0 phi(I) w0`, frame element `z = w0^K` and `psi(y) = z^{-1} phi(y) z`.
//!
//! The EO twist is written with `z` on the right because `w0^K` conjugates the other way: the
//! expression `z phi(y) z^{-1}` with `z = w0^K` does not land in `W_K` in general (already in
//! `A2` with `I = {1}`), whereas `z^{-1} phi(y) z` equals `z' phi(y) z'^{-1}` with
//! `z' = phi(w0^I)`. [`compare_eo_twists`] measures both readings side by side.

use std::collections::BTreeSet;

use crate::bitmat::BitMatrix;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::parabolic::{coset_system, frobenius_type, opposite_type, CosetSystem, TypeSubset};
use crate::root_weyl::{ElemId, WeylGroup};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Flavor {
    Eo,
    Dl,
    Custom,
}

impl std::fmt::Display for Flavor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Flavor::Eo => "EO",
            Flavor::Dl => "DL",
            Flavor::Custom => "custom",
        })
    }
}

/// Which set of labels a strata poset lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    /// `^I W`
    Left,
    /// `W^J`
    Right,
}

/// The two candidate EO twist elements, both applied as `psi(y) = t phi(y) t^{-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EoTwist {
    /// `t = w0^K`
    LongestOfK,
    /// `t = phi(w0^I)`
    FrobeniusOfW0I,
}

/// The element `t` of the given EO twist reading.
pub fn eo_twist_element(g: &WeylGroup, i: TypeSubset, twist: EoTwist) -> Result<ElemId> {
    Ok(match twist {
        EoTwist::LongestOfK => {
            let k = opposite_type(g, frobenius_type(g, i))?;
            coset_system(g, k)?.w0_upper
        }
        EoTwist::FrobeniusOfW0I => g.frob(coset_system(g, i)?.w0_upper),
    })
}

/// A validated zip datum on a tabulated Weyl group.
#[derive(Debug, Clone)]
pub struct ZipDatum<'g> {
    g: &'g WeylGroup,
    i: TypeSubset,
    j: TypeSubset,
    w_i: Vec<ElemId>,
    psi: Vec<ElemId>,
    psi_inv: Vec<ElemId>,
    frame_z: ElemId,
    flavor: Flavor,
}

/// The Frobenius-induced zip datum of the given flavor.
pub fn make_zip_datum(g: &WeylGroup, i: TypeSubset, flavor: Flavor) -> Result<ZipDatum<'_>> {
    match flavor {
        Flavor::Dl => {
            let j = frobenius_type(g, i);
            ZipDatum::validated(g, i, j, |y| g.frob(y), g.identity(), Flavor::Dl)
        }
        Flavor::Eo => {
            let k = opposite_type(g, frobenius_type(g, i))?;
            let z = coset_system(g, k)?.w0_upper;
            let zi = g.inv(z);
            ZipDatum::validated(g, i, k, |y| g.mul_all(&[zi, g.frob(y), z]), z, Flavor::Eo)
        }
        Flavor::Custom => Err(Error::Usage(
            "custom zip data need an explicit psi; use ZipDatum::custom".into(),
        )),
    }
}

impl<'g> ZipDatum<'g> {
    /// A zip datum with a user supplied `psi`, which must restrict to a length preserving
    /// isomorphism `W_I -> W_J` mapping the simple reflections of `I` onto those of `J`.
    pub fn custom(
        g: &'g WeylGroup,
        i: TypeSubset,
        j: TypeSubset,
        psi: impl Fn(ElemId) -> ElemId,
        frame_z: ElemId,
    ) -> Result<Self> {
        Self::validated(g, i, j, psi, frame_z, Flavor::Custom)
    }

    fn validated(
        g: &'g WeylGroup,
        i: TypeSubset,
        j: TypeSubset,
        psi: impl Fn(ElemId) -> ElemId,
        frame_z: ElemId,
        flavor: Flavor,
    ) -> Result<Self> {
        let ci = coset_system(g, i)?;
        let cj = coset_system(g, j)?;
        if frame_z >= g.order() {
            return Err(Error::Usage(format!("frame element {frame_z} out of range")));
        }
        let bad = |what: String| Err(Error::Consistency(format!("{} I={i} J={j}: {what}", g.datum())));
        if i.len() != j.len() {
            return bad("|I| != |J|".into());
        }
        let w_i = ci.w_i.clone();
        let images: Vec<ElemId> = w_i.iter().map(|&y| psi(y)).collect();
        for (&y, &py) in w_i.iter().zip(&images) {
            if py >= g.order() || !cj.in_w_i(g, py) {
                return bad(format!("psi({}) is not in W_J", g.word_string(y)));
            }
            if g.length(py) != g.length(y) {
                return bad(format!("psi does not preserve the length of {}", g.word_string(y)));
            }
        }
        if images.iter().collect::<BTreeSet<_>>().len() != w_i.len() || cj.w_i.len() != w_i.len() {
            return bad("psi is not a bijection W_I -> W_J".into());
        }
        let pos = |y: ElemId| w_i.binary_search(&y).expect("W_I is closed");
        for (a, &ya) in w_i.iter().enumerate() {
            for (b, &yb) in w_i.iter().enumerate() {
                if images[pos(g.mul(ya, yb))] != g.mul(images[a], images[b]) {
                    return bad("psi is not multiplicative".into());
                }
            }
        }
        let simple_images: u32 = i
            .indices()
            .into_iter()
            .map(|s| images[pos(g.simple(s))])
            .map(|img| {
                (0..g.rank())
                    .find(|&t| g.simple(t) == img)
                    .map_or(u32::MAX, |t| 1 << t)
            })
            .fold(0, |m, b| m | b);
        if simple_images != j.mask() {
            return bad("psi(I) != J".into());
        }
        let psi_inv = images.iter().map(|&p| g.inv(p)).collect();
        Ok(ZipDatum {
            g,
            i,
            j,
            w_i,
            psi: images,
            psi_inv,
            frame_z,
            flavor,
        })
    }

    pub fn group(&self) -> &'g WeylGroup {
        self.g
    }

    pub fn i(&self) -> TypeSubset {
        self.i
    }

    pub fn j(&self) -> TypeSubset {
        self.j
    }

    pub fn frame_z(&self) -> ElemId {
        self.frame_z
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    /// `psi(y)` for `y` in `W_I`.
    pub fn psi(&self, y: ElemId) -> Result<ElemId> {
        self.w_i
            .binary_search(&y)
            .map(|k| self.psi[k])
            .map_err(|_| Error::Usage(format!("{} is not in W_I", self.g.word_string(y))))
    }

    /// Elements of `W_I`, in group order.
    pub fn w_i(&self) -> &[ElemId] {
        &self.w_i
    }

    /// Labels of the chosen side.
    pub fn labels(&self, side: Side) -> Vec<ElemId> {
        let g = self.g;
        match side {
            Side::Left => (0..g.order()).filter(|&w| g.left_descents(w) & self.i.mask() == 0).collect(),
            Side::Right => (0..g.order()).filter(|&w| g.right_descents(w) & self.j.mask() == 0).collect(),
        }
    }

    /// `wp <= w` in the twisted order: some `y` in `W_I` has `y wp psi(y)^{-1} <= w`.
    pub fn twisted_leq(&self, wp: ElemId, w: ElemId) -> bool {
        twisted_leq_raw(self.g, &self.w_i, &self.psi_inv, wp, w)
    }

    /// The orbit `{y w psi(y)^{-1} : y in W_I}` of `w` under twisted conjugation.
    pub fn twisted_orbit(&self, w: ElemId) -> BTreeSet<ElemId> {
        self.w_i
            .iter()
            .zip(&self.psi_inv)
            .map(|(&y, &pyi)| self.g.mul_all(&[y, w, pyi]))
            .collect()
    }

    /// The element of `W^J` of the same length as `w` in the twisted orbit of `w in ^I W`.
    pub fn sigma(&self, w: ElemId) -> Result<ElemId> {
        let g = self.g;
        if g.left_descents(w) & self.i.mask() != 0 {
            return Err(Error::Usage(format!("{} is not in ^I W", g.word_string(w))));
        }
        let hits: Vec<ElemId> = self
            .twisted_orbit(w)
            .into_iter()
            .filter(|&x| g.length(x) == g.length(w) && g.right_descents(x) & self.j.mask() == 0)
            .collect();
        if hits.len() != 1 {
            let names: Vec<String> = hits.iter().map(|&x| g.word_string(x)).collect();
            let orbit: Vec<String> = self
                .twisted_orbit(w)
                .into_iter()
                .map(|x| format!("{}(l={})", g.word_string(x), g.length(x)))
                .collect();
            return Err(Error::Consistency(format!(
                "{} I={} J={} {}: sigma({}) has {} candidates {:?}; orbit {:?}",
                g.datum(),
                self.i,
                self.j,
                self.flavor,
                g.word_string(w),
                hits.len(),
                names,
                orbit
            )));
        }
        Ok(hits[0])
    }

    /// The twisted order on one side, with the partial order axioms checked.
    pub fn strata_poset(&self, side: Side, exec: Exec) -> Result<StrataPoset> {
        let labels = self.labels(side);
        let leq = twisted_relation(self.g, &self.w_i, &self.psi_inv, &labels, exec);
        StrataPoset::new(self.g, labels, leq, self.describe(side))
    }

    fn describe(&self, side: Side) -> String {
        format!(
            "{} {} I={} J={} side={}",
            self.g.datum(),
            self.flavor,
            self.i,
            self.j,
            match side {
                Side::Left => "^IW",
                Side::Right => "W^J",
            }
        )
    }
}

fn twisted_leq_raw(g: &WeylGroup, w_i: &[ElemId], psi_inv: &[ElemId], wp: ElemId, w: ElemId) -> bool {
    w_i.iter()
        .zip(psi_inv)
        .any(|(&y, &pyi)| g.leq(g.mul(g.mul(y, wp), pyi), w))
}

/// The relation `a <= b` iff some `y_k wp psi_k^{-1} <= w`, for arbitrary twist data.
///
/// `psi_inv[k]` is the inverse of the image of `w_i[k]`; nothing is assumed about it, so this
/// also evaluates twist readings that are not zip data.
pub fn twisted_relation(
    g: &WeylGroup,
    w_i: &[ElemId],
    psi_inv: &[ElemId],
    labels: &[ElemId],
    exec: Exec,
) -> BitMatrix {
    let rows: Vec<Vec<bool>> = exec.map_range(labels.len(), |a| {
        labels
            .iter()
            .map(|&b| twisted_leq_raw(g, w_i, psi_inv, labels[a], b))
            .collect()
    });
    BitMatrix::from_rows(labels.len(), rows)
}

/// A finite poset of strata labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrataPoset {
    /// Labels in group order (length, then reduced word).
    pub labels: Vec<ElemId>,
    /// Reduced words of the labels, `e` for the identity.
    pub names: Vec<String>,
    /// Stratum dimension relative to the closed stratum, `l(w)`.
    pub dims: Vec<usize>,
    /// `leq.get(a, b)` iff `labels[a] <= labels[b]`.
    pub leq: BitMatrix,
    /// Covering pairs `(a, b)` as positions in `labels`.
    pub hasse: Vec<(usize, usize)>,
}

impl StrataPoset {
    fn new(g: &WeylGroup, labels: Vec<ElemId>, leq: BitMatrix, what: String) -> Result<Self> {
        let names: Vec<String> = labels.iter().map(|&w| g.word_string(w)).collect();
        let dims: Vec<usize> = labels.iter().map(|&w| g.length(w)).collect();
        check_partial_order(&leq, &names).map_err(|e| Error::Consistency(format!("{what}: {e}")))?;
        let n = labels.len();
        let maximal: Vec<usize> = (0..n).filter(|&a| (0..n).all(|b| b == a || !leq.get(a, b))).collect();
        let top_len = dims.iter().copied().max().unwrap_or(0);
        if maximal.len() != 1 || dims[maximal[0]] != top_len {
            return Err(Error::Consistency(format!(
                "{what}: expected a unique maximal label of maximal length, found {:?}",
                maximal.iter().map(|&a| &names[a]).collect::<Vec<_>>()
            )));
        }
        let hasse = leq.covers();
        Ok(StrataPoset {
            labels,
            names,
            dims,
            leq,
            hasse,
        })
    }

    /// Rebuilds a poset from serialized parts, checking the order axioms again.
    pub fn from_parts(names: Vec<String>, dims: Vec<usize>, leq: BitMatrix) -> Result<Self> {
        if names.len() != dims.len() || names.len() != leq.size() {
            return Err(Error::Usage("poset parts have inconsistent sizes".into()));
        }
        check_partial_order(&leq, &names).map_err(Error::Consistency)?;
        let hasse = leq.covers();
        Ok(StrataPoset {
            labels: (0..names.len()).collect(),
            names,
            dims,
            leq,
            hasse,
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// True when any two labels are comparable.
    pub fn is_chain(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| (0..n).all(|b| self.leq.get(a, b) || self.leq.get(b, a)))
    }
}

fn check_partial_order(leq: &BitMatrix, names: &[String]) -> std::result::Result<(), String> {
    if !leq.is_reflexive() {
        return Err("relation is not reflexive".into());
    }
    if let Some((a, b)) = leq.antisymmetry_violation() {
        return Err(format!("antisymmetry fails for {} and {}", names[a], names[b]));
    }
    if let Some((a, b, c)) = leq.transitivity_violation() {
        return Err(format!(
            "transitivity fails for {} <= {} <= {}",
            names[a], names[b], names[c]
        ));
    }
    Ok(())
}

/// Covering edges of a poset.
pub fn hasse_edges(p: &StrataPoset) -> Vec<(usize, usize)> {
    p.leq.covers()
}

/// The duality `w -> w0^I w` from `^I W` onto `^J W`, `J` the opposite type of `I`.
#[derive(Debug, Clone)]
pub struct Sigma0 {
    pub i: TypeSubset,
    pub j: TypeSubset,
    /// `(w, sigma0(w))` for every `w` in `^I W`, in group order of `w`.
    pub pairs: Vec<(ElemId, ElemId)>,
    pub w0_upper_i: ElemId,
}

impl Sigma0 {
    pub fn apply(&self, w: ElemId) -> Option<ElemId> {
        self.pairs.iter().find(|p| p.0 == w).map(|p| p.1)
    }
}

pub fn sigma0(g: &WeylGroup, i: TypeSubset) -> Result<Sigma0> {
    let j = opposite_type(g, i)?;
    let ci: CosetSystem = coset_system(g, i)?;
    let pairs = ci
        .left_reps
        .iter()
        .map(|&w| (w, g.mul(ci.w0_upper, w)))
        .collect();
    Ok(Sigma0 {
        i,
        j,
        pairs,
        w0_upper_i: ci.w0_upper,
    })
}

/// Outcome of the check `[w <=_DL sigma0(w')] iff [w' <=_EO sigma0(w)]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub i_plus: TypeSubset,
    pub i_minus: TypeSubset,
    pub pairs_checked: usize,
    /// `(w', w)` pairs where the two sides disagree.
    pub counterexamples: Vec<(ElemId, ElemId)>,
}

impl EquivalenceReport {
    pub fn holds(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Compares the DL order on `^{I-}W` with the EO order on `^{I+}W` through `sigma0`, where
/// `I- = w0 I+ w0`.
pub fn main_theorem_equivalence(g: &WeylGroup, i_plus: TypeSubset, exec: Exec) -> Result<EquivalenceReport> {
    let i_minus = opposite_type(g, i_plus)?;
    let eo = make_zip_datum(g, i_plus, Flavor::Eo)?;
    let dl = make_zip_datum(g, i_minus, Flavor::Dl)?;
    let plus = sigma0(g, i_plus)?;
    let minus = sigma0(g, i_minus)?;
    let rows: Vec<Vec<(ElemId, ElemId)>> = exec.map_slice(&plus.pairs, |&(wp, s_wp)| {
        minus
            .pairs
            .iter()
            .filter(|&&(w, s_w)| dl.twisted_leq(w, s_wp) != eo.twisted_leq(wp, s_w))
            .map(|&(w, _)| (wp, w))
            .collect()
    });
    Ok(EquivalenceReport {
        i_plus,
        i_minus,
        pairs_checked: plus.pairs.len() * minus.pairs.len(),
        counterexamples: rows.into_iter().flatten().collect(),
    })
}

/// Whether the two EO twist readings induce the same relation on `^I W`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistComparison {
    pub i: TypeSubset,
    /// Number of ordered label pairs on which the relations differ.
    pub differing_pairs: usize,
    /// Whether `w0^K phi(.) (w0^K)^{-1}` maps `W_I` into `W_K`.
    pub longest_of_k_preserves_levi: bool,
    /// Whether the `w0^K` relation is a partial order.
    pub longest_of_k_is_order: bool,
    pub labels: usize,
}

impl TwistComparison {
    pub fn coincide(&self) -> bool {
        self.differing_pairs == 0
    }
}

/// Evaluates both EO twist readings on `^I W` and compares the induced relations.
pub fn compare_eo_twists(g: &WeylGroup, i: TypeSubset, exec: Exec) -> Result<TwistComparison> {
    let ci = coset_system(g, i)?;
    let k = opposite_type(g, frobenius_type(g, i))?;
    let ck = coset_system(g, k)?;
    let relation = |twist| -> Result<(BitMatrix, bool)> {
        let t = eo_twist_element(g, i, twist)?;
        let ti = g.inv(t);
        let images: Vec<ElemId> = ci.w_i.iter().map(|&y| g.mul_all(&[t, g.frob(y), ti])).collect();
        let preserves = images.iter().all(|&x| ck.in_w_i(g, x));
        let inv: Vec<ElemId> = images.iter().map(|&x| g.inv(x)).collect();
        Ok((twisted_relation(g, &ci.w_i, &inv, &ci.left_reps, exec), preserves))
    };
    let (a, a_ok) = relation(EoTwist::LongestOfK)?;
    let (b, _) = relation(EoTwist::FrobeniusOfW0I)?;
    let n = ci.left_reps.len();
    let differing_pairs = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter(|&(x, y)| a.get(x, y) != b.get(x, y))
        .count();
    let is_order = a.is_reflexive() && a.antisymmetry_violation().is_none() && a.transitivity_violation().is_none();
    Ok(TwistComparison {
        i,
        differing_pairs,
        longest_of_k_preserves_levi: a_ok,
        longest_of_k_is_order: is_order,
        labels: n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(name: &str) -> WeylGroup {
        WeylGroup::new(name.parse().unwrap()).unwrap()
    }

    fn subset(g: &WeylGroup, idx: &[usize]) -> TypeSubset {
        TypeSubset::new(g.rank(), idx).unwrap()
    }

    #[test]
    fn dl_data_in_split_case() {
        let g = group("A2");
        let d = make_zip_datum(&g, subset(&g, &[0]), Flavor::Dl).unwrap();
        assert_eq!(d.j(), subset(&g, &[0]));
        assert_eq!(d.psi(g.simple(0)).unwrap(), g.simple(0));
        let a1 = group("A1");
        let d = make_zip_datum(&a1, TypeSubset::empty(1), Flavor::Dl).unwrap();
        assert_eq!(d.w_i(), &[0]);
    }

    #[test]
    fn eo_datum_a2() {
        let g = group("A2");
        let d = make_zip_datum(&g, subset(&g, &[0]), Flavor::Eo).unwrap();
        assert_eq!(d.j(), subset(&g, &[1]));
        // w0^{2} = s2 s1
        assert_eq!(d.frame_z(), g.from_word(&[1, 0]).unwrap());
        assert_eq!(d.psi(g.simple(0)).unwrap(), g.simple(1));
        let p = d.strata_poset(Side::Left, Exec::Auto).unwrap();
        assert_eq!(p.dims, vec![0, 1, 2]);
        assert!(p.is_chain());
    }

    #[test]
    fn c2_siegel_chain() {
        let g = group("C2");
        let d = make_zip_datum(&g, subset(&g, &[0]), Flavor::Eo).unwrap();
        let p = d.strata_poset(Side::Left, Exec::Auto).unwrap();
        assert_eq!(p.len(), 4);
        assert!(p.is_chain());
        assert_eq!(hasse_edges(&p).len(), 3);
        for &w in &p.labels {
            let s = d.sigma(w).unwrap();
            assert_eq!(g.length(s), g.length(w));
        }
    }

    #[test]
    fn literal_longest_of_k_reading_leaves_the_levi() {
        let g = group("A2");
        let i = subset(&g, &[0]);
        let t = eo_twist_element(&g, i, EoTwist::LongestOfK).unwrap();
        assert_eq!(g.mul_all(&[t, g.simple(0), g.inv(t)]), g.w0());
        assert!(ZipDatum::custom(&g, i, subset(&g, &[1]), |y| g.mul_all(&[t, y, g.inv(t)]), t).is_err());
        let cmp = compare_eo_twists(&g, i, Exec::Auto).unwrap();
        assert!(!cmp.longest_of_k_preserves_levi);
    }

    #[test]
    fn custom_psi_validation() {
        let g = group("A3");
        let i = subset(&g, &[0]);
        let j = subset(&g, &[2]);
        let swap = |y: ElemId| if y == g.simple(0) { g.simple(2) } else { y };
        assert!(ZipDatum::custom(&g, i, j, swap, 0).is_ok());
        // length preserving but not onto J
        assert!(ZipDatum::custom(&g, i, j, |y| y, 0).is_err());
        assert!(make_zip_datum(&g, i, Flavor::Custom).is_err());
    }

    #[test]
    fn sigma0_small_cases() {
        let a1 = group("A1");
        let s = sigma0(&a1, TypeSubset::empty(1)).unwrap();
        assert_eq!(s.pairs, vec![(0, 1), (1, 0)]);
        let g = group("A3");
        let i = subset(&g, &[0, 2]);
        assert_eq!(sigma0(&g, i).unwrap().pairs.len(), 6);
    }

    #[test]
    fn main_theorem_small_cases() {
        let a1 = group("A1");
        let r = main_theorem_equivalence(&a1, TypeSubset::empty(1), Exec::Auto).unwrap();
        assert_eq!(r.pairs_checked, 4);
        assert!(r.holds());
        let c2 = group("C2");
        let r = main_theorem_equivalence(&c2, subset(&c2, &[0]), Exec::Auto).unwrap();
        assert_eq!(r.pairs_checked, 16);
        assert!(r.holds());
        let full = TypeSubset::full(2);
        let r = main_theorem_equivalence(&c2, full, Exec::Auto).unwrap();
        assert_eq!(r.pairs_checked, 1);
        assert!(r.holds());
    }

    #[test]
    fn full_parabolic_gives_one_point() {
        let g = group("B3");
        for flavor in [Flavor::Eo, Flavor::Dl] {
            let d = make_zip_datum(&g, TypeSubset::full(3), flavor).unwrap();
            let p = d.strata_poset(Side::Left, Exec::Auto).unwrap();
            assert_eq!(p.labels, vec![0]);
            assert!(p.hasse.is_empty());
        }
    }
}
