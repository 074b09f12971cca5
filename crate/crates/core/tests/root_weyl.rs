mod common;

use common::{group, reflection_closure, subword_leq, supported};
use proptest::prelude::*;
use zipstrata::root_weyl::{
    apply_frobenius, bruhat_leq, build_root_system, length, longest_element, multiply, reduced_word, CartanDatum,
    Family, WeylElement, WeylGroup,
};
use zipstrata::{Caps, Error};

fn rs(name: &str) -> zipstrata::root_weyl::RootSystem {
    build_root_system(&name.parse().unwrap()).unwrap()
}

#[test]
fn root_counts() {
    for (name, roots, pos) in [("A2", 6, 3), ("G2", 12, 6), ("C2", 8, 4), ("B3", 18, 9), ("D4", 24, 12)] {
        let rs = rs(name);
        assert_eq!(rs.roots().len(), roots, "{name}");
        assert_eq!(rs.num_positive(), pos, "{name}");
    }
}

#[test]
fn group_orders() {
    for (name, n) in [("A1", 2), ("A2", 6), ("C2", 8), ("G2", 12), ("B3", 48), ("D4", 192), ("A4", 120), ("B4", 384)] {
        let g = group(name);
        assert_eq!(g.order(), n, "{name}");
        assert_eq!(g.datum().weyl_order(), n as u128);
    }
}

#[test]
fn unsupported_data_are_rejected() {
    assert!(matches!("E6".parse::<CartanDatum>(), Err(Error::Config(_))));
    assert!(matches!("A0".parse::<CartanDatum>(), Err(Error::Config(_))));
    assert!(matches!("G3".parse::<CartanDatum>(), Err(Error::Config(_))));
    let d: CartanDatum = "B3".parse().unwrap();
    assert!(d.clone().with_automorphism(vec![2, 1, 0]).is_err());
}

#[test]
fn cap_is_enforced() {
    let caps = Caps { weyl: 100, group: 1 };
    let e = WeylGroup::with_caps("B4".parse().unwrap(), caps).unwrap_err();
    assert!(matches!(e, Error::Cap { needed: 384, .. }));
}

#[test]
fn element_level_operations() {
    let rs = rs("A2");
    let e = WeylElement::identity(&rs);
    let s1 = WeylElement::simple(&rs, 0).unwrap();
    let s2 = WeylElement::simple(&rs, 1).unwrap();
    assert_eq!(multiply(&e, &s2).unwrap(), s2);
    assert!(multiply(&s1, &s1).unwrap().is_identity());
    assert_eq!(length(&multiply(&s1, &s2).unwrap()), 2);
    let w0 = longest_element(&rs);
    assert_eq!(length(&w0), 3);
    assert_eq!(reduced_word(&rs, &w0).unwrap(), vec![0, 1, 0]);
    assert_eq!(reduced_word(&rs, &s2).unwrap(), vec![1]);
    assert!(reduced_word(&rs, &e).unwrap().is_empty());
    assert!(!bruhat_leq(&rs, &s1, &s2).unwrap());
    assert!(bruhat_leq(&rs, &e, &w0).unwrap());
    assert!(WeylElement::simple(&rs, 2).is_err());

    let a1 = self::rs("A1");
    assert_eq!(reduced_word(&a1, &longest_element(&a1)).unwrap(), vec![0]);
    assert_eq!(length(&longest_element(&self::rs("C2"))), 4);

    let twisted = CartanDatum::new(Family::A, 2).unwrap().with_automorphism(vec![1, 0]).unwrap();
    let tw = build_root_system(&twisted).unwrap();
    assert_eq!(
        apply_frobenius(&tw, &WeylElement::simple(&tw, 0).unwrap()).unwrap(),
        WeylElement::simple(&tw, 1).unwrap()
    );
    let w = WeylElement::from_word(&rs, &[0, 1]).unwrap();
    assert_eq!(apply_frobenius(&rs, &w).unwrap(), w);

    let b2 = self::rs("B2");
    assert!(matches!(multiply(&s1, &WeylElement::simple(&b2, 0).unwrap()), Err(Error::Usage(_))));
}

#[test]
fn bruhat_matches_reflection_closure_oracle() {
    for g in supported(3) {
        let oracle = reflection_closure(&g);
        for u in 0..g.order() {
            for w in 0..g.order() {
                assert_eq!(g.leq(u, w), oracle[u][w], "{} {} {}", g.datum(), g.word_string(u), g.word_string(w));
            }
        }
    }
}

#[test]
fn bruhat_matches_subword_oracle() {
    for name in ["A3", "B3", "G2", "D4"] {
        let g = group(name);
        let rs = g.root_system();
        for u in 0..g.order() {
            for w in 0..g.order() {
                let expect = subword_leq(&g, u, w);
                assert_eq!(g.leq(u, w), expect, "{name}");
                if u % 7 == 0 {
                    assert_eq!(bruhat_leq(rs, g.element(u), g.element(w)).unwrap(), expect, "{name} element level");
                }
            }
        }
    }
}

#[test]
fn group_self_checks() {
    for g in supported(4) {
        g.self_check().unwrap();
    }
}

fn arb_group() -> impl Strategy<Value = &'static WeylGroup> {
    use std::sync::OnceLock;
    static GROUPS: OnceLock<Vec<WeylGroup>> = OnceLock::new();
    let gs = GROUPS.get_or_init(|| {
        let mut v = supported(4);
        for d in CartanDatum::supported_up_to_rank(4) {
            if let Some(t) = d.standard_twist() {
                v.push(WeylGroup::new(d.with_automorphism(t).unwrap()).unwrap());
            }
        }
        v
    });
    (0..gs.len()).prop_map(move |k| &gs[k])
}

fn arb_elements() -> impl Strategy<Value = (&'static WeylGroup, usize, usize, Vec<usize>)> {
    arb_group().prop_flat_map(|g| {
        let n = g.order();
        let r = g.rank();
        (Just(g), 0..n, 0..n, prop::collection::vec(0..r, 0..12))
    })
}

proptest! {
    #[test]
    fn length_is_inverse_invariant((g, w, _, _) in arb_elements()) {
        prop_assert_eq!(g.length(w), g.length(g.inv(w)));
    }

    #[test]
    fn simple_multiplication_changes_length_by_one((g, w, _, word) in arb_elements()) {
        for s in word {
            let l = g.length(w) as i64;
            let ls = g.length(g.mul_simple(w, s)) as i64;
            prop_assert_eq!((l - ls).abs(), 1);
        }
    }

    #[test]
    fn bruhat_symmetries((g, u, w, _) in arb_elements()) {
        let w0 = g.w0();
        prop_assert_eq!(g.leq(u, w), g.leq(g.inv(u), g.inv(w)));
        prop_assert_eq!(g.leq(u, w), g.leq(g.mul(w0, w), g.mul(w0, u)));
        prop_assert_eq!(g.leq(u, w), g.leq(g.frob(u), g.frob(w)));
    }

    #[test]
    fn reduced_word_reconstructs((g, w, _, _) in arb_elements()) {
        let word = g.word(w).to_vec();
        prop_assert_eq!(word.len(), g.length(w));
        prop_assert_eq!(g.from_word(&word).unwrap(), w);
        let rs = g.root_system();
        prop_assert_eq!(reduced_word(rs, g.element(w)).unwrap(), word);
    }

    #[test]
    fn words_multiply_like_elements((g, _, _, word) in arb_elements()) {
        let direct = g.from_word(&word).unwrap();
        let folded = word.iter().fold(g.identity(), |x, &s| g.mul_simple(x, s));
        prop_assert_eq!(direct, folded);
        prop_assert!(g.length(direct) <= word.len());
        prop_assert_eq!(g.length(direct) % 2, word.len() % 2);
    }

    #[test]
    fn longest_element_facts((g, w, _, _) in arb_elements()) {
        let w0 = g.w0();
        prop_assert_eq!(g.frob(w0), w0);
        prop_assert_eq!(g.length(g.mul(w, w0)), g.length(w0) - g.length(w));
        prop_assert!(g.leq(w, w0));
        prop_assert!(g.leq(g.identity(), w));
    }

    #[test]
    fn frobenius_is_an_automorphism((g, u, w, _) in arb_elements()) {
        prop_assert_eq!(g.frob(g.mul(u, w)), g.mul(g.frob(u), g.frob(w)));
        prop_assert_eq!(g.length(g.frob(w)), g.length(w));
    }
}
