use std::fmt;

use super::roots::RootSystem;
use crate::error::{Error, Result};

/// An element of a Weyl group, stored as the permutation it induces on root indices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElement {
    tag: u32,
    perm: Box<[u8]>,
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeylElement{:?}", self.perm)
    }
}

impl WeylElement {
    pub fn identity(rs: &RootSystem) -> Self {
        WeylElement {
            tag: rs.group_tag(),
            perm: (0..rs.roots().len() as u8).collect(),
        }
    }

    /// The simple reflection `s_i` (0-based).
    pub fn simple(rs: &RootSystem, i: usize) -> Result<Self> {
        if i >= rs.rank() {
            return Err(Error::Usage(format!(
                "simple index {i} out of range for rank {}",
                rs.rank()
            )));
        }
        Ok(WeylElement {
            tag: rs.group_tag(),
            perm: rs.simple_reflection_action(i).into(),
        })
    }

    /// The product `s_{w[0]} s_{w[1]} ...` of simple reflections (0-based indices).
    pub fn from_word(rs: &RootSystem, word: &[usize]) -> Result<Self> {
        let mut w = WeylElement::identity(rs);
        for &i in word {
            if i >= rs.rank() {
                return Err(Error::Usage(format!(
                    "simple index {i} out of range for rank {}",
                    rs.rank()
                )));
            }
            w = w.times_simple(rs, i);
        }
        Ok(w)
    }

    /// Image of root index `k`.
    pub fn apply(&self, k: usize) -> usize {
        self.perm[k] as usize
    }

    pub fn permutation(&self) -> &[u8] {
        &self.perm
    }

    fn num_positive(&self) -> usize {
        self.perm.len() / 2
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(k, &p)| k == p as usize)
    }

    pub fn inverse(&self) -> Self {
        let mut perm = vec![0u8; self.perm.len()];
        for (k, &p) in self.perm.iter().enumerate() {
            perm[p as usize] = k as u8;
        }
        WeylElement {
            tag: self.tag,
            perm: perm.into(),
        }
    }

    /// True when `w(alpha_i) < 0`.
    pub fn has_right_descent(&self, i: usize) -> bool {
        self.apply(i) >= self.num_positive()
    }

    /// True when `w^{-1}(alpha_i) < 0`.
    pub fn has_left_descent(&self, i: usize) -> bool {
        let target = i as u8;
        let pre = self
            .perm
            .iter()
            .position(|&p| p == target)
            .expect("root permutation");
        pre >= self.num_positive()
    }

    /// `w s_i`.
    pub fn times_simple(&self, rs: &RootSystem, i: usize) -> Self {
        let s = rs.simple_reflection_action(i);
        WeylElement {
            tag: self.tag,
            perm: s.iter().map(|&k| self.perm[k as usize]).collect(),
        }
    }

    /// `s_i w`.
    pub fn simple_times(&self, rs: &RootSystem, i: usize) -> Self {
        let s = rs.simple_reflection_action(i);
        WeylElement {
            tag: self.tag,
            perm: self.perm.iter().map(|&k| s[k as usize]).collect(),
        }
    }

    pub(crate) fn same_group(&self, other: &Self) -> Result<()> {
        if self.tag != other.tag || self.perm.len() != other.perm.len() {
            Err(Error::Usage(
                "Weyl group elements belong to different root systems".into(),
            ))
        } else {
            Ok(())
        }
    }

    pub(crate) fn check_system(&self, rs: &RootSystem) -> Result<()> {
        if self.tag != rs.group_tag() || self.perm.len() != rs.roots().len() {
            Err(Error::Usage(format!(
                "Weyl group element does not belong to {}",
                rs.datum()
            )))
        } else {
            Ok(())
        }
    }
}

/// The product `a b`, acting as `(a b)(beta) = a(b(beta))`.
pub fn multiply(a: &WeylElement, b: &WeylElement) -> Result<WeylElement> {
    a.same_group(b)?;
    Ok(WeylElement {
        tag: a.tag,
        perm: b.perm.iter().map(|&k| a.perm[k as usize]).collect(),
    })
}

/// Coxeter length: the number of positive roots sent to negative roots.
pub fn length(w: &WeylElement) -> usize {
    let n = w.num_positive();
    w.perm[..n].iter().filter(|&&p| p as usize >= n).count()
}

/// The unique element sending every positive root to a negative root.
pub fn longest_element(rs: &RootSystem) -> WeylElement {
    let mut w = WeylElement::identity(rs);
    while let Some(i) = (0..rs.rank()).find(|&i| !w.has_right_descent(i)) {
        w = w.times_simple(rs, i);
    }
    w
}

/// A reduced word `[i1, i2, ...]` (0-based) with `w = s_{i1} s_{i2} ...`, taking the smallest
/// left descent at every step. Equal elements get equal words.
pub fn reduced_word(rs: &RootSystem, w: &WeylElement) -> Result<Vec<usize>> {
    w.check_system(rs)?;
    let mut word = Vec::with_capacity(length(w));
    let mut cur = w.clone();
    while let Some(i) = (0..rs.rank()).find(|&i| cur.has_left_descent(i)) {
        word.push(i);
        cur = cur.simple_times(rs, i);
    }
    Ok(word)
}

/// Bruhat order `u <= w`.
///
/// Uses the descent recursion: if `s` is a right descent of `w`, then `u <= w` iff
/// `min(u, us) <= ws`. Each step shortens `w`, so a query costs `O(l(w))` multiplications.
pub fn bruhat_leq(rs: &RootSystem, u: &WeylElement, w: &WeylElement) -> Result<bool> {
    u.check_system(rs)?;
    w.check_system(rs)?;
    let mut u = u.clone();
    let mut w = w.clone();
    loop {
        if length(&u) > length(&w) {
            return Ok(false);
        }
        match (0..rs.rank()).find(|&i| w.has_right_descent(i)) {
            None => return Ok(u.is_identity()),
            Some(s) => {
                if u.has_right_descent(s) {
                    u = u.times_simple(rs, s);
                }
                w = w.times_simple(rs, s);
            }
        }
    }
}

/// Frobenius twist `phi(w) = F w F^{-1}`, where `F` is the diagram automorphism acting on roots.
pub fn apply_frobenius(rs: &RootSystem, w: &WeylElement) -> Result<WeylElement> {
    w.check_system(rs)?;
    let f = rs.frobenius_action();
    let finv = rs.frobenius_inverse_action();
    Ok(WeylElement {
        tag: w.tag,
        perm: finv
            .iter()
            .map(|&k| f[w.perm[k as usize] as usize])
            .collect(),
    })
}
