//! Parabolic subgroups `W_I`, minimal coset representatives and their longest elements.

use std::fmt;

use crate::error::{Error, Result};
use crate::root_weyl::{ElemId, WeylGroup};

/// A subset `I` of the simple reflections, as a bitmask over 0-based simple indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TypeSubset {
    mask: u32,
    rank: usize,
}

impl TypeSubset {
    /// Builds a subset from 0-based indices.
    pub fn new(rank: usize, indices: &[usize]) -> Result<Self> {
        let mut mask = 0u32;
        for &i in indices {
            if i >= rank {
                return Err(Error::Usage(format!(
                    "simple index {} out of range 1..={rank}",
                    i + 1
                )));
            }
            mask |= 1 << i;
        }
        Ok(TypeSubset { mask, rank })
    }

    /// Builds a subset from 1-based indices, as typed by users.
    pub fn from_one_based(rank: usize, indices: &[usize]) -> Result<Self> {
        if indices.contains(&0) {
            return Err(Error::Usage("simple indices are 1-based".into()));
        }
        let zero: Vec<usize> = indices.iter().map(|i| i - 1).collect();
        Self::new(rank, &zero)
    }

    /// Parses a comma separated list of 1-based indices; the empty string is the empty set.
    pub fn parse(rank: usize, text: &str) -> Result<Self> {
        let text = text.trim().trim_start_matches('{').trim_end_matches('}');
        let mut idx = Vec::new();
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            idx.push(
                part.parse::<usize>()
                    .map_err(|_| Error::Usage(format!("bad simple index {part:?}")))?,
            );
        }
        Self::from_one_based(rank, &idx)
    }

    pub fn from_mask(rank: usize, mask: u32) -> Result<Self> {
        if rank < 32 && mask >> rank != 0 {
            return Err(Error::Usage(format!("mask {mask:#b} exceeds rank {rank}")));
        }
        Ok(TypeSubset { mask, rank })
    }

    pub fn empty(rank: usize) -> Self {
        TypeSubset { mask: 0, rank }
    }

    pub fn full(rank: usize) -> Self {
        TypeSubset {
            mask: (1u32 << rank) - 1,
            rank,
        }
    }

    /// All `2^rank` subsets, by increasing mask.
    pub fn all(rank: usize) -> impl Iterator<Item = TypeSubset> {
        (0..1u32 << rank).map(move |mask| TypeSubset { mask, rank })
    }

    pub fn mask(self) -> u32 {
        self.mask
    }

    pub fn rank(self) -> usize {
        self.rank
    }

    pub fn contains(self, i: usize) -> bool {
        self.mask >> i & 1 == 1
    }

    pub fn len(self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.mask == 0
    }

    /// 0-based members in increasing order.
    pub fn indices(self) -> Vec<usize> {
        (0..self.rank).filter(|&i| self.contains(i)).collect()
    }

    /// Image under a permutation of the simple indices.
    pub fn map(self, perm: &[usize]) -> Self {
        let mask = self.indices().into_iter().fold(0, |m, i| m | 1 << perm[i]);
        TypeSubset {
            mask,
            rank: self.rank,
        }
    }
}

impl fmt::Display for TypeSubset {
    /// 1-based, e.g. `{1,3}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.indices().iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

/// Coset data for one parabolic type `I`.
#[derive(Debug, Clone)]
pub struct CosetSystem {
    pub subset: TypeSubset,
    /// Elements of `W_I`, in group order.
    pub w_i: Vec<ElemId>,
    /// `^I W`: elements without left descents in `I`.
    pub left_reps: Vec<ElemId>,
    /// `W^I`: elements without right descents in `I`.
    pub right_reps: Vec<ElemId>,
    /// Longest element of `W_I`.
    pub w_i0: ElemId,
    /// `w0^I`, the longest element of `W^I`.
    pub w0_upper: ElemId,
    /// `^I w0`, the longest element of `^I W`.
    pub upper_w0: ElemId,
    pub w0: ElemId,
}

impl CosetSystem {
    pub fn in_w_i(&self, g: &WeylGroup, w: ElemId) -> bool {
        g.support(w) & !self.subset.mask() == 0
    }
}

fn check_rank(g: &WeylGroup, i: TypeSubset) -> Result<()> {
    if i.rank() != g.rank() {
        return Err(Error::Usage(format!(
            "subset {i} has rank {} but {} has rank {}",
            i.rank(),
            g.datum(),
            g.rank()
        )));
    }
    Ok(())
}

/// Builds the coset system of `I`.
///
/// Minimal representatives are found by the descent criterion; every factorisation identity is
/// checked in debug builds.
pub fn coset_system(g: &WeylGroup, i: TypeSubset) -> Result<CosetSystem> {
    check_rank(g, i)?;
    let m = i.mask();
    let n = g.order();
    let w_i: Vec<ElemId> = (0..n).filter(|&w| g.support(w) & !m == 0).collect();
    let left_reps: Vec<ElemId> = (0..n).filter(|&w| g.left_descents(w) & m == 0).collect();
    let right_reps: Vec<ElemId> = (0..n).filter(|&w| g.right_descents(w) & m == 0).collect();
    // groups are numbered by length, so the last element of each list is its longest one
    let w_i0 = *w_i.last().expect("W_I contains e");
    let w0 = g.w0();
    let w0_upper = *right_reps.last().expect("nonempty");
    let upper_w0 = *left_reps.last().expect("nonempty");
    let cs = CosetSystem {
        subset: i,
        w_i,
        left_reps,
        right_reps,
        w_i0,
        w0_upper,
        upper_w0,
        w0,
    };
    if cfg!(debug_assertions) {
        check_coset_identities(g, &cs)?;
    }
    Ok(cs)
}

/// The structural identities every coset system must satisfy.
pub fn check_coset_identities(g: &WeylGroup, cs: &CosetSystem) -> Result<()> {
    let fail = |what: &str| {
        Err(Error::Consistency(format!(
            "{} I={}: {what}",
            g.datum(),
            cs.subset
        )))
    };
    if cs.w_i.len() * cs.left_reps.len() != g.order() || cs.w_i.len() * cs.right_reps.len() != g.order() {
        return fail("|W_I| * |reps| != |W|");
    }
    if g.mul(cs.w_i0, cs.upper_w0) != cs.w0 || g.mul(cs.w0_upper, cs.w_i0) != cs.w0 {
        return fail("w_I0 * ^I w0 = w0 = w0^I * w_I0 fails");
    }
    let max_len = cs.w_i.iter().map(|&w| g.length(w)).max().unwrap_or(0);
    if g.length(cs.w_i0) != max_len
        || cs.w_i.iter().filter(|&&w| g.length(w) == max_len).count() != 1
    {
        return fail("w_I0 is not the unique longest element of W_I");
    }
    for w in 0..g.order() {
        let (a, b) = strip_left(g, cs.subset.mask(), w);
        if g.mul(a, b) != w || g.length(a) + g.length(b) != g.length(w) {
            return fail("left decomposition");
        }
    }
    Ok(())
}

fn strip_left(g: &WeylGroup, m: u32, w: ElemId) -> (ElemId, ElemId) {
    let mut rep = w;
    let mut part = g.identity();
    // strip left descents in I one at a time: w = s rep' with l(rep') = l(w) - 1
    while let Some(s) = (0..g.rank()).find(|&s| m >> s & 1 == 1 && g.has_left_descent(rep, s)) {
        rep = g.mul(g.simple(s), rep);
        part = g.mul(part, g.simple(s));
    }
    (part, rep)
}

/// `w = w_I * ^I w` with lengths adding; returns `(w_I, ^I w)`.
pub fn decompose_left(g: &WeylGroup, w: ElemId, i: TypeSubset) -> Result<(ElemId, ElemId)> {
    check_rank(g, i)?;
    Ok(strip_left(g, i.mask(), w))
}

/// `w = w^I * w_I` with lengths adding; returns `(w^I, w_I)`.
pub fn decompose_right(g: &WeylGroup, w: ElemId, i: TypeSubset) -> Result<(ElemId, ElemId)> {
    let (a, b) = decompose_left(g, g.inv(w), i)?;
    Ok((g.inv(b), g.inv(a)))
}

/// `J` with `s_J = w0 s_I w0` elementwise.
pub fn opposite_type(g: &WeylGroup, i: TypeSubset) -> Result<TypeSubset> {
    check_rank(g, i)?;
    let w0 = g.w0();
    let mut mask = 0u32;
    for s in i.indices() {
        let c = g.mul_all(&[w0, g.simple(s), w0]);
        let j = (0..g.rank())
            .find(|&j| g.simple(j) == c)
            .ok_or_else(|| Error::Consistency("w0 s w0 is not simple".into()))?;
        mask |= 1 << j;
    }
    TypeSubset::from_mask(g.rank(), mask)
}

/// Image of `I` under the Frobenius diagram automorphism.
pub fn frobenius_type(g: &WeylGroup, i: TypeSubset) -> TypeSubset {
    i.map(g.datum().automorphism())
}
