use std::collections::HashSet;

use super::cartan::CartanDatum;
use crate::error::{Error, Result};

/// Roots of a Cartan datum, with the action of the simple reflections and Frobenius as
/// permutations of root indices.
///
/// Roots are stored as integer coefficient vectors in the simple roots. Indices `0..N` are the
/// positive roots ordered by height and then lexicographically (so index `i < rank` is the simple
/// root `alpha_i`), and index `N + k` is the negative of root `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSystem {
    datum: CartanDatum,
    roots: Vec<Vec<i32>>,
    positive: usize,
    simple_action: Vec<Vec<u8>>,
    frobenius: Vec<u8>,
    frobenius_inv: Vec<u8>,
}

/// Applies `s_i` to a coefficient vector.
fn reflect(cartan: &[Vec<i32>], i: usize, beta: &[i32]) -> Vec<i32> {
    let pairing: i32 = beta.iter().zip(&cartan[i]).map(|(c, a)| c * a).sum();
    let mut out = beta.to_vec();
    out[i] -= pairing;
    out
}

/// Builds the root system of `datum`.
pub fn build_root_system(datum: &CartanDatum) -> Result<RootSystem> {
    RootSystem::new(datum.clone())
}

impl RootSystem {
    pub fn new(datum: CartanDatum) -> Result<Self> {
        let r = datum.rank();
        let cartan = datum.cartan_matrix().to_vec();
        let unit = |i: usize| {
            let mut v = vec![0i32; r];
            v[i] = 1;
            v
        };

        // Closure of the simple roots under simple reflections, keeping positive ones. Every
        // positive root is reached from a simple root through positive roots.
        let mut seen: HashSet<Vec<i32>> = (0..r).map(unit).collect();
        let mut stack: Vec<Vec<i32>> = (0..r).map(unit).collect();
        while let Some(beta) = stack.pop() {
            for i in 0..r {
                let img = reflect(&cartan, i, &beta);
                if img.iter().all(|&c| c >= 0) && seen.insert(img.clone()) {
                    stack.push(img);
                }
            }
        }
        let mut positive: Vec<Vec<i32>> = seen.into_iter().collect();
        positive.sort_by(|a, b| {
            let ha: i32 = a.iter().sum();
            let hb: i32 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let n = positive.len();
        if 2 * n > u8::MAX as usize {
            return Err(Error::Config(format!("{datum} has too many roots")));
        }
        let mut roots = positive.clone();
        roots.extend(positive.iter().map(|v| v.iter().map(|c| -c).collect::<Vec<_>>()));

        let lookup = |v: &[i32]| -> Result<u8> {
            roots
                .iter()
                .position(|x| x == v)
                .map(|p| p as u8)
                .ok_or_else(|| Error::Consistency(format!("{v:?} is not a root of {datum}")))
        };

        let mut simple_action = Vec::with_capacity(r);
        for i in 0..r {
            let perm = roots
                .iter()
                .map(|beta| lookup(&reflect(&cartan, i, beta)))
                .collect::<Result<Vec<u8>>>()?;
            simple_action.push(perm);
        }

        let aut = datum.automorphism();
        let frobenius = roots
            .iter()
            .map(|beta| {
                let mut img = vec![0i32; r];
                for (j, &c) in beta.iter().enumerate() {
                    img[aut[j]] = c;
                }
                lookup(&img)
            })
            .collect::<Result<Vec<u8>>>()?;
        let mut frobenius_inv = vec![0u8; frobenius.len()];
        for (k, &img) in frobenius.iter().enumerate() {
            frobenius_inv[img as usize] = k as u8;
        }

        Ok(RootSystem {
            datum,
            roots,
            positive: n,
            simple_action,
            frobenius,
            frobenius_inv,
        })
    }

    pub fn datum(&self) -> &CartanDatum {
        &self.datum
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    /// Number of positive roots.
    pub fn num_positive(&self) -> usize {
        self.positive
    }

    /// All roots, positive ones first.
    pub fn roots(&self) -> &[Vec<i32>] {
        &self.roots
    }

    pub fn is_positive(&self, k: usize) -> bool {
        k < self.positive
    }

    /// Index of `-root(k)`.
    pub fn negate(&self, k: usize) -> usize {
        if k < self.positive {
            k + self.positive
        } else {
            k - self.positive
        }
    }

    /// Permutation of root indices induced by `s_i`.
    pub fn simple_reflection_action(&self, i: usize) -> &[u8] {
        &self.simple_action[i]
    }

    /// Permutation of root indices induced by Frobenius.
    pub fn frobenius_action(&self) -> &[u8] {
        &self.frobenius
    }

    pub(crate) fn frobenius_inverse_action(&self) -> &[u8] {
        &self.frobenius_inv
    }

    /// Identifier that distinguishes the Weyl groups of different types of the same size.
    pub(crate) fn group_tag(&self) -> u32 {
        (self.datum.family() as u32) << 8 | self.rank() as u32
    }
}
