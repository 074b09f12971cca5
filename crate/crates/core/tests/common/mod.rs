//! Independent oracles shared by the integration tests. They only use the multiplication,
//! inversion and length tables of a `WeylGroup`, never its Bruhat table or coset machinery.

#![allow(dead_code)]

use std::collections::BTreeSet;

use zipstrata::parabolic::TypeSubset;
use zipstrata::root_weyl::{CartanDatum, ElemId, WeylGroup};

pub fn group(name: &str) -> WeylGroup {
    WeylGroup::new(name.parse::<CartanDatum>().unwrap()).unwrap()
}

pub fn reflections(g: &WeylGroup) -> BTreeSet<ElemId> {
    let mut t = BTreeSet::new();
    for w in 0..g.order() {
        for i in 0..g.rank() {
            t.insert(g.mul_all(&[w, g.simple(i), g.inv(w)]));
        }
    }
    t
}

/// Bruhat order as the reflexive-transitive closure of `u -> t u` with `l(t u) = l(u) + 1`.
pub fn reflection_closure(g: &WeylGroup) -> Vec<Vec<bool>> {
    let n = g.order();
    let refl = reflections(g);
    let up: Vec<Vec<ElemId>> = (0..n)
        .map(|u| {
            refl.iter()
                .map(|&t| g.mul(t, u))
                .filter(|&tu| g.length(tu) == g.length(u) + 1)
                .collect()
        })
        .collect();
    let mut leq = vec![vec![false; n]; n];
    for (u, row) in leq.iter_mut().enumerate() {
        let mut stack = vec![u];
        row[u] = true;
        while let Some(x) = stack.pop() {
            for &y in &up[x] {
                if !row[y] {
                    row[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    leq
}

/// `u <= w` iff some subword of the given reduced word of `w` multiplies to `u`.
pub fn subword_leq(g: &WeylGroup, u: ElemId, w: ElemId) -> bool {
    let word = g.word(w);
    (0u32..1 << word.len()).any(|mask| {
        let mut x = g.identity();
        for (k, &s) in word.iter().enumerate() {
            if mask >> k & 1 == 1 {
                x = g.mul_simple(x, s);
            }
        }
        x == u
    })
}

/// `W_I` by closing `{e}` under right multiplication by the simple reflections of `I`.
pub fn parabolic_subgroup(g: &WeylGroup, i: TypeSubset) -> BTreeSet<ElemId> {
    let mut set = BTreeSet::from([g.identity()]);
    let mut frontier = vec![g.identity()];
    while let Some(x) = frontier.pop() {
        for s in i.indices() {
            let y = g.mul_simple(x, s);
            if set.insert(y) {
                frontier.push(y);
            }
        }
    }
    set
}

/// `^I W` as the unique shortest element of each right coset `W_I w`.
pub fn min_left_reps(g: &WeylGroup, i: TypeSubset) -> BTreeSet<ElemId> {
    let wi = parabolic_subgroup(g, i);
    (0..g.order())
        .map(|w| *wi.iter().map(|&y| g.mul(y, w)).collect::<Vec<_>>().iter().min_by_key(|&&x| (g.length(x), x)).unwrap())
        .collect()
}

/// `W^I` as the unique shortest element of each left coset `w W_I`.
pub fn min_right_reps(g: &WeylGroup, i: TypeSubset) -> BTreeSet<ElemId> {
    let wi = parabolic_subgroup(g, i);
    (0..g.order())
        .map(|w| *wi.iter().map(|&y| g.mul(w, y)).collect::<Vec<_>>().iter().min_by_key(|&&x| (g.length(x), x)).unwrap())
        .collect()
}

/// All `(a, b)` with `a` in `W_I`, `b` in `^I W` and `a b = w`.
pub fn left_factorizations(g: &WeylGroup, w: ElemId, i: TypeSubset) -> Vec<(ElemId, ElemId)> {
    let reps = min_left_reps(g, i);
    parabolic_subgroup(g, i)
        .into_iter()
        .filter_map(|a| {
            let b = g.mul(g.inv(a), w);
            reps.contains(&b).then_some((a, b))
        })
        .collect()
}

pub fn longest_by_search(g: &WeylGroup, set: &BTreeSet<ElemId>) -> ElemId {
    *set.iter().max_by_key(|&&x| g.length(x)).unwrap()
}

/// The spec's supported split types of rank at most `r`.
pub fn supported(r: usize) -> Vec<WeylGroup> {
    CartanDatum::supported_up_to_rank(r).into_iter().map(|d| WeylGroup::new(d).unwrap()).collect()
}
