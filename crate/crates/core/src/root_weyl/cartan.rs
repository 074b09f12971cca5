use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Dynkin family of a supported Cartan datum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    G,
}

impl Family {
    fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::G => 'G',
        }
    }
}

/// Cartan matrix of a finite root system together with a diagram automorphism.
///
/// Simple indices are 0-based. `cartan[i][j]` is `<alpha_i^vee, alpha_j>`, so the simple
/// reflection `s_i` sends `alpha_j` to `alpha_j - cartan[i][j] * alpha_i`. The automorphism is
/// the action of Frobenius on the simple reflections; it is the identity in the split case.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CartanDatum {
    family: Family,
    rank: usize,
    cartan: Vec<Vec<i32>>,
    automorphism: Vec<usize>,
}

impl CartanDatum {
    /// Builds the split datum of the given family and rank.
    ///
    /// Supported: A1-A4, B2-B4, C2-C4, D3-D4, G2.
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let supported = match family {
            Family::A => (1..=4).contains(&rank),
            Family::B | Family::C => (2..=4).contains(&rank),
            Family::D => (3..=4).contains(&rank),
            Family::G => rank == 2,
        };
        if !supported {
            return Err(Error::Config(format!(
                "unsupported Cartan type {}{rank} (supported: A1-A4, B2-B4, C2-C4, D3-D4, G2)",
                family.letter()
            )));
        }
        let mut c = vec![vec![0i32; rank]; rank];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 2;
        }
        let link = |c: &mut Vec<Vec<i32>>, i: usize, j: usize| {
            c[i][j] = -1;
            c[j][i] = -1;
        };
        match family {
            Family::A => {
                for i in 0..rank - 1 {
                    link(&mut c, i, i + 1);
                }
            }
            Family::B => {
                for i in 0..rank - 2 {
                    link(&mut c, i, i + 1);
                }
                // alpha_{r-1} short
                c[rank - 2][rank - 1] = -1;
                c[rank - 1][rank - 2] = -2;
            }
            Family::C => {
                for i in 0..rank - 2 {
                    link(&mut c, i, i + 1);
                }
                // alpha_{r-1} long
                c[rank - 2][rank - 1] = -2;
                c[rank - 1][rank - 2] = -1;
            }
            Family::D => {
                for i in 0..rank - 2 {
                    link(&mut c, i, i + 1);
                }
                link(&mut c, rank - 3, rank - 1);
            }
            Family::G => {
                // alpha_0 short, alpha_1 long
                c[0][1] = -3;
                c[1][0] = -1;
            }
        }
        Ok(CartanDatum {
            family,
            rank,
            cartan: c,
            automorphism: (0..rank).collect(),
        })
    }

    /// Replaces the Frobenius action on the simple reflections.
    ///
    /// `perm[i]` is the image of simple index `i`; it must be a permutation preserving the
    /// Cartan matrix.
    pub fn with_automorphism(mut self, perm: Vec<usize>) -> Result<Self> {
        let r = self.rank;
        let mut seen = vec![false; r];
        if perm.len() != r || perm.iter().any(|&p| p >= r || std::mem::replace(&mut seen[p], true))
        {
            return Err(Error::Config(format!(
                "diagram automorphism {perm:?} is not a permutation of 0..{r}"
            )));
        }
        for i in 0..r {
            for j in 0..r {
                if self.cartan[perm[i]][perm[j]] != self.cartan[i][j] {
                    return Err(Error::Config(format!(
                        "permutation {perm:?} does not preserve the Cartan matrix of {self}"
                    )));
                }
            }
        }
        self.automorphism = perm;
        Ok(self)
    }

    /// The non-trivial order-two diagram automorphism, if the Dynkin diagram has one.
    pub fn standard_twist(&self) -> Option<Vec<usize>> {
        let r = self.rank;
        match self.family {
            Family::A if r >= 2 => Some((0..r).rev().collect()),
            Family::D => {
                let mut p: Vec<usize> = (0..r).collect();
                p.swap(r - 2, r - 1);
                Some(p)
            }
            _ => None,
        }
    }

    /// Every supported split datum of rank at most `max_rank`, in a fixed order.
    pub fn supported_up_to_rank(max_rank: usize) -> Vec<CartanDatum> {
        let mut out = Vec::new();
        for (family, ranks) in [
            (Family::A, 1..=4),
            (Family::B, 2..=4),
            (Family::C, 2..=4),
            (Family::D, 3..=4),
            (Family::G, 2..=2),
        ] {
            for r in ranks {
                if r <= max_rank {
                    out.push(CartanDatum::new(family, r).expect("supported"));
                }
            }
        }
        out
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cartan_matrix(&self) -> &[Vec<i32>] {
        &self.cartan
    }

    pub fn automorphism(&self) -> &[usize] {
        &self.automorphism
    }

    pub fn is_split(&self) -> bool {
        self.automorphism.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// `|W|` from the classification, saturating at `u128::MAX`.
    pub fn weyl_order(&self) -> u128 {
        let fact = |n: usize| (1..=n as u128).fold(1u128, |a, k| a.saturating_mul(k));
        let r = self.rank;
        match self.family {
            Family::A => fact(r + 1),
            Family::B | Family::C => fact(r).saturating_mul(1u128 << r.min(127)),
            Family::D => fact(r).saturating_mul(1u128 << (r - 1).min(127)),
            Family::G => 12,
        }
    }

    /// Name of the type, e.g. `C2`.
    pub fn name(&self) -> String {
        format!("{}{}", self.family.letter(), self.rank)
    }
}

impl fmt::Display for CartanDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())?;
        if !self.is_split() {
            let img: Vec<String> = self.automorphism.iter().map(|p| (p + 1).to_string()).collect();
            write!(f, "[phi={}]", img.join(","))?;
        }
        Ok(())
    }
}

impl FromStr for CartanDatum {
    type Err = Error;

    /// Parses `A3`, `b2`, `G2`, ...
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('G') => Family::G,
            _ => return Err(Error::Config(format!("cannot parse Cartan type {s:?}"))),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::Config(format!("cannot parse Cartan type {s:?}")))?;
        CartanDatum::new(family, rank)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cartan_invariants_hold_for_all_supported() {
        for d in CartanDatum::supported_up_to_rank(4) {
            let c = d.cartan_matrix();
            for i in 0..d.rank() {
                assert_eq!(c[i][i], 2);
                for j in 0..d.rank() {
                    if i != j {
                        assert!(c[i][j] <= 0);
                        assert_eq!(c[i][j] == 0, c[j][i] == 0);
                    }
                }
            }
        }
        assert_eq!(CartanDatum::supported_up_to_rank(4).len(), 13);
    }

    #[test]
    fn rank_bounds_are_enforced() {
        assert!(CartanDatum::new(Family::A, 0).is_err());
        assert!(CartanDatum::new(Family::B, 1).is_err());
        assert!(CartanDatum::new(Family::D, 2).is_err());
        assert!(CartanDatum::new(Family::G, 3).is_err());
        assert!(CartanDatum::new(Family::A, 5).is_err());
    }

    #[test]
    fn parse_and_display() {
        let d: CartanDatum = "c3".parse().unwrap();
        assert_eq!(d.name(), "C3");
        assert!("E6".parse::<CartanDatum>().is_err());
        assert!("Ax".parse::<CartanDatum>().is_err());
    }

    #[test]
    fn automorphisms_must_preserve_cartan_matrix() {
        let a2 = CartanDatum::new(Family::A, 2).unwrap();
        let tw = a2.clone().with_automorphism(vec![1, 0]).unwrap();
        assert!(!tw.is_split());
        assert_eq!(tw.to_string(), "A2[phi=2,1]");
        let b2 = CartanDatum::new(Family::B, 2).unwrap();
        assert!(b2.with_automorphism(vec![1, 0]).is_err());
        let d4 = CartanDatum::new(Family::D, 4).unwrap();
        assert!(d4.clone().with_automorphism(d4.standard_twist().unwrap()).is_ok());
        // triality is also a diagram automorphism of D4
        assert!(d4.with_automorphism(vec![3, 1, 0, 2]).is_ok());
        assert!(a2.with_automorphism(vec![0, 0]).is_err());
    }
}
