use std::collections::{HashMap, HashSet, VecDeque};

use super::cartan::CartanDatum;
use super::element::{apply_frobenius, length, longest_element, reduced_word, WeylElement};
use super::roots::RootSystem;
use crate::bitmat::BitMatrix;
use crate::caps::{Caps, DEFAULT_WEYL_CAP};
use crate::error::{Error, Result};
use crate::exec::Exec;

/// Index of an element inside a [`WeylGroup`] table.
pub type ElemId = usize;

/// All elements of `W`, each once, by breadth-first search over right multiplication by simple
/// reflections. Fails when more than `cap` elements would be produced.
pub fn enumerate(rs: &RootSystem, cap: usize) -> Result<Vec<WeylElement>> {
    let what = || format!("Weyl group of {}", rs.datum());
    Caps::check(&what(), rs.datum().weyl_order(), cap)?;
    let e = WeylElement::identity(rs);
    let mut seen: HashSet<WeylElement> = HashSet::new();
    seen.insert(e.clone());
    let mut out = vec![e.clone()];
    let mut queue = VecDeque::from([e]);
    while let Some(w) = queue.pop_front() {
        for i in 0..rs.rank() {
            let ws = w.times_simple(rs, i);
            if seen.insert(ws.clone()) {
                if out.len() >= cap {
                    return Err(Error::Cap {
                        what: what(),
                        needed: out.len() as u128 + 1,
                        cap: cap as u128,
                    });
                }
                out.push(ws.clone());
                queue.push_back(ws);
            }
        }
    }
    Ok(out)
}

/// A fully tabulated finite Weyl group.
///
/// Elements are numbered by length and then lexicographically by reduced word, so id `0` is the
/// identity and the last id is `w0`. Multiplication, inversion, descents, Frobenius and the full
/// Bruhat order are precomputed.
#[derive(Debug, Clone)]
pub struct WeylGroup {
    rs: RootSystem,
    elems: Vec<WeylElement>,
    index: HashMap<WeylElement, ElemId>,
    words: Vec<Vec<usize>>,
    lengths: Vec<usize>,
    mul: Vec<u16>,
    inv: Vec<u16>,
    frob: Vec<u16>,
    left_desc: Vec<u32>,
    right_desc: Vec<u32>,
    support: Vec<u32>,
    bruhat: BitMatrix,
}

impl WeylGroup {
    /// Tabulates `W` with the default cap.
    pub fn new(datum: CartanDatum) -> Result<Self> {
        Self::build(datum, DEFAULT_WEYL_CAP, Exec::Auto)
    }

    /// Tabulates `W` honouring `caps.weyl`.
    pub fn with_caps(datum: CartanDatum, caps: Caps) -> Result<Self> {
        Self::build(datum, caps.weyl, Exec::Auto)
    }

    pub fn build(datum: CartanDatum, cap: usize, exec: Exec) -> Result<Self> {
        let rs = RootSystem::new(datum)?;
        let mut elems = enumerate(&rs, cap.min(u16::MAX as usize))?;
        let mut keyed: Vec<(usize, Vec<usize>, WeylElement)> = elems
            .drain(..)
            .map(|w| {
                let word = reduced_word(&rs, &w).expect("same system");
                (word.len(), word, w)
            })
            .collect();
        keyed.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
        let lengths: Vec<usize> = keyed.iter().map(|k| k.0).collect();
        let words: Vec<Vec<usize>> = keyed.iter().map(|k| k.1.clone()).collect();
        let elems: Vec<WeylElement> = keyed.into_iter().map(|k| k.2).collect();
        let index: HashMap<WeylElement, ElemId> =
            elems.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let n = elems.len();
        let rank = rs.rank();

        let mul: Vec<u16> = exec
            .flat_map_range(n, |a| {
                elems
                    .iter()
                    .map(|b| {
                        let ab = super::element::multiply(&elems[a], b).expect("same system");
                        index[&ab] as u16
                    })
                    .collect()
            });
        let inv: Vec<u16> = elems.iter().map(|w| index[&w.inverse()] as u16).collect();
        let frob: Vec<u16> = elems
            .iter()
            .map(|w| index[&apply_frobenius(&rs, w).expect("same system")] as u16)
            .collect();
        let mask = |f: &dyn Fn(usize) -> bool| (0..rank).filter(|&i| f(i)).fold(0u32, |m, i| m | 1 << i);
        let left_desc: Vec<u32> = elems.iter().map(|w| mask(&|i| w.has_left_descent(i))).collect();
        let right_desc: Vec<u32> = elems.iter().map(|w| mask(&|i| w.has_right_descent(i))).collect();
        let support: Vec<u32> = words
            .iter()
            .map(|wd| wd.iter().fold(0u32, |m, &i| m | 1 << i))
            .collect();

        let mut g = WeylGroup {
            rs,
            elems,
            index,
            words,
            lengths,
            mul,
            inv,
            frob,
            left_desc,
            right_desc,
            support,
            bruhat: BitMatrix::new(0),
        };
        g.bruhat = g.build_bruhat(exec);
        Ok(g)
    }

    /// Bruhat table by the descent recursion, one length layer at a time.
    ///
    /// `down[w]` is the set of `u <= w`. For `w != e` with smallest right descent `s`,
    /// `u <= w` iff `min(u, us) <= ws`, and `ws` lies in the previous layer.
    fn build_bruhat(&self, exec: Exec) -> BitMatrix {
        let n = self.order();
        let mut down = BitMatrix::new(n);
        down.set(0, 0, true);
        let max_len = self.lengths[n - 1];
        let mut start = 1;
        for l in 1..=max_len {
            let end = start + self.lengths[start..].iter().take_while(|&&x| x == l).count();
            let rows: Vec<Vec<usize>> = exec.map_range(end - start, |k| {
                let w = start + k;
                let s = self.right_desc[w].trailing_zeros() as usize;
                let ws = self.mul_simple(w, s);
                (0..n)
                    .filter(|&u| {
                        let u_min = if self.has_right_descent(u, s) {
                            self.mul_simple(u, s)
                        } else {
                            u
                        };
                        down.get(ws, u_min)
                    })
                    .collect()
            });
            for (k, row) in rows.into_iter().enumerate() {
                for u in row {
                    down.set(start + k, u, true);
                }
            }
            start = end;
        }
        BitMatrix::from_fn(n, |u, w| down.get(w, u))
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn datum(&self) -> &CartanDatum {
        self.rs.datum()
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    /// `|W|`.
    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn element(&self, id: ElemId) -> &WeylElement {
        &self.elems[id]
    }

    pub fn id_of(&self, w: &WeylElement) -> Result<ElemId> {
        w.check_system(&self.rs)?;
        self.index
            .get(w)
            .copied()
            .ok_or_else(|| Error::Usage("element not in this Weyl group".into()))
    }

    /// Id of `s_{word[0]} s_{word[1]} ...` (0-based letters).
    pub fn from_word(&self, word: &[usize]) -> Result<ElemId> {
        self.id_of(&WeylElement::from_word(&self.rs, word)?)
    }

    pub fn identity(&self) -> ElemId {
        0
    }

    pub fn w0(&self) -> ElemId {
        self.order() - 1
    }

    /// Id of the simple reflection `s_i`.
    pub fn simple(&self, i: usize) -> ElemId {
        1 + i
    }

    pub fn mul(&self, a: ElemId, b: ElemId) -> ElemId {
        self.mul[a * self.order() + b] as ElemId
    }

    /// Product of a sequence of elements, left to right.
    pub fn mul_all(&self, xs: &[ElemId]) -> ElemId {
        xs.iter().fold(0, |acc, &x| self.mul(acc, x))
    }

    pub fn mul_simple(&self, a: ElemId, i: usize) -> ElemId {
        self.mul(a, self.simple(i))
    }

    pub fn inv(&self, a: ElemId) -> ElemId {
        self.inv[a] as ElemId
    }

    pub fn length(&self, a: ElemId) -> usize {
        self.lengths[a]
    }

    pub fn frob(&self, a: ElemId) -> ElemId {
        self.frob[a] as ElemId
    }

    /// Reduced word with smallest-left-descent tie breaking (0-based letters).
    pub fn word(&self, a: ElemId) -> &[usize] {
        &self.words[a]
    }

    /// Reduced word rendered with 1-based letters, e.g. `s1s2s1`; the identity is `e`.
    pub fn word_string(&self, a: ElemId) -> String {
        if self.words[a].is_empty() {
            "e".to_string()
        } else {
            self.words[a].iter().map(|i| format!("s{}", i + 1)).collect()
        }
    }

    pub fn left_descents(&self, a: ElemId) -> u32 {
        self.left_desc[a]
    }

    pub fn right_descents(&self, a: ElemId) -> u32 {
        self.right_desc[a]
    }

    pub fn has_left_descent(&self, a: ElemId, i: usize) -> bool {
        self.left_desc[a] >> i & 1 == 1
    }

    pub fn has_right_descent(&self, a: ElemId, i: usize) -> bool {
        self.right_desc[a] >> i & 1 == 1
    }

    /// Bitmask of the simple reflections occurring in any reduced word of `a`.
    pub fn support(&self, a: ElemId) -> u32 {
        self.support[a]
    }

    /// Bruhat order `u <= w`.
    pub fn leq(&self, u: ElemId, w: ElemId) -> bool {
        self.bruhat.get(u, w)
    }

    /// The full Bruhat table, `get(u, w) == (u <= w)`.
    pub fn bruhat_matrix(&self) -> &BitMatrix {
        &self.bruhat
    }

    /// Consistency checks tying the table to the element-level operations.
    pub fn self_check(&self) -> Result<()> {
        let w0 = longest_element(&self.rs);
        if self.id_of(&w0)? != self.w0() {
            return Err(Error::Consistency("w0 is not the last element".into()));
        }
        for a in 0..self.order() {
            if length(&self.elems[a]) != self.lengths[a] {
                return Err(Error::Consistency(format!("length mismatch at {a}")));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(name: &str) -> WeylGroup {
        WeylGroup::new(name.parse().unwrap()).unwrap()
    }

    #[test]
    fn group_orders() {
        for (name, n) in [
            ("A1", 2),
            ("A2", 6),
            ("A3", 24),
            ("A4", 120),
            ("B2", 8),
            ("B3", 48),
            ("B4", 384),
            ("C2", 8),
            ("C3", 48),
            ("C4", 384),
            ("D3", 24),
            ("D4", 192),
            ("G2", 12),
        ] {
            let g = group(name);
            assert_eq!(g.order(), n, "{name}");
            g.self_check().unwrap();
        }
    }

    #[test]
    fn enumeration_cap_is_a_resource_error() {
        let rs = RootSystem::new("B3".parse().unwrap()).unwrap();
        assert!(matches!(enumerate(&rs, 47), Err(Error::Cap { .. })));
        assert_eq!(enumerate(&rs, 48).unwrap().len(), 48);
    }

    #[test]
    fn ordering_and_words() {
        let g = group("A2");
        let names: Vec<String> = (0..g.order()).map(|a| g.word_string(a)).collect();
        assert_eq!(names, ["e", "s1", "s2", "s1s2", "s2s1", "s1s2s1"]);
        assert_eq!(g.word(g.w0()), &[0, 1, 0]);
    }

    #[test]
    fn bruhat_table_a2() {
        let g = group("A2");
        let s1 = g.simple(0);
        let s2 = g.simple(1);
        assert!(!g.leq(s1, s2));
        assert!(!g.leq(s2, s1));
        for w in 0..g.order() {
            assert!(g.leq(0, w));
            assert!(g.leq(w, g.w0()));
            assert_eq!(g.leq(g.w0(), w), w == g.w0());
        }
        // every element of length 1 lies below every element of length 2 in A2
        for u in [s1, s2] {
            for w in [3, 4] {
                assert!(g.leq(u, w));
            }
        }
    }

    #[test]
    fn table_agrees_with_element_level_bruhat() {
        let g = group("B3");
        let rs = g.root_system();
        for u in 0..g.order() {
            for w in 0..g.order() {
                let direct =
                    super::super::element::bruhat_leq(rs, g.element(u), g.element(w)).unwrap();
                assert_eq!(g.leq(u, w), direct);
            }
        }
    }

    #[test]
    fn sequential_and_parallel_tables_agree() {
        let a = WeylGroup::build("C3".parse().unwrap(), 10_000, Exec::Auto).unwrap();
        let b = WeylGroup::build("C3".parse().unwrap(), 10_000, Exec::Sequential).unwrap();
        assert_eq!(a.bruhat_matrix(), b.bruhat_matrix());
        assert_eq!(a.mul, b.mul);
    }
}
