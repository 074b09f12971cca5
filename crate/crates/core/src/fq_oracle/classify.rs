//! Exact geometric orbit labels without field extensions.
//!
//! For `x` in `G'` with zip datum `(P', Q', phi')` the element is written `x = p v q` with `v` a
//! fixed permutation in the double coset `W_{P'} v W_{Q'}`. The remaining freedom acts on
//! `m = pi_Q(q) phi'(pi_P(p))` in the Levi `L_{Q'}` through a smaller zip datum:
//!
//! ```text
//! G''  = L_{Q'}
//! P''  = L_{Q'} cap v^{-1} P' v
//! Q''  = phi'(L_{P'} cap v Q' v^{-1})
//! phi''= phi' o Ad(v)
//! ```
//!
//! The recursion stops when `P'' = G''`, where a single orbit remains. The list of chosen `v`
//! is therefore a complete invariant of the orbit over an algebraic closure, and it is computed
//! with rational operations only.
//!
//! Subgroups are described by functions on `{0..n-1}`: a Levi `L_beta` has `g_ij = 0` unless
//! `beta_i = beta_j`, and `P_lambda` has `g_ij = 0` whenever `lambda_i < lambda_j`. A
//! permutation matrix sends `e_j` to `e_{v(j)}`, so `v P_lambda v^{-1} = P_{lambda o v^{-1}}`.

use std::collections::HashMap;

use super::field::Fq;
use super::group::{orbit_representatives, FqGroupSpec};
use super::matrix::Mat;
use crate::error::{Error, Result};
use crate::root_weyl::{ElemId, WeylGroup};
use crate::zip_poset::Flavor;

/// Sequence of double coset representatives met by the recursion.
pub type OrbitInvariant = Vec<Vec<usize>>;

fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&x| a[x]).collect()
}

fn invert(a: &[usize]) -> Vec<usize> {
    let mut out = vec![0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        out[x] = i;
    }
    out
}

/// Relabels a tuple-valued function to small integers, keeping equality.
fn combine(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut seen: HashMap<(i64, i64), i64> = HashMap::new();
    a.iter()
        .zip(b)
        .map(|(&x, &y)| {
            let next = seen.len() as i64;
            *seen.entry((x, y)).or_insert(next)
        })
        .collect()
}

/// All permutations `s` with `class[s(i)] == class[i]`.
fn class_permutations(class: &[i64]) -> Vec<Vec<usize>> {
    let n = class.len();
    let mut out = vec![(0..n).collect::<Vec<usize>>()];
    let mut groups: HashMap<i64, Vec<usize>> = HashMap::new();
    for (i, &c) in class.iter().enumerate() {
        groups.entry(c).or_default().push(i);
    }
    for members in groups.values().filter(|m| m.len() > 1) {
        let mut next = Vec::new();
        for base in &out {
            for arrangement in permutations(members) {
                let mut s = base.clone();
                for (k, &i) in members.iter().enumerate() {
                    s[i] = arrangement[k];
                }
                next.push(s);
            }
        }
        out = next;
    }
    out
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for k in 0..items.len() {
        let mut rest = items.to_vec();
        let first = rest.remove(k);
        for mut tail in permutations(&rest) {
            tail.insert(0, first);
            out.push(tail);
        }
    }
    out
}

/// `x = L^{-1} u D R^{-1}` with `L` in the Borel of `key1` and `R` in the Borel of `key2`.
///
/// The Borel of a key is `{g : g_ij = 0 whenever key(i) < key(j)}`. Returns `(p, u, q)` with
/// `p = L^{-1}` and `q = D R^{-1}`.
fn bruhat_decompose(x: &Mat, key1: &[(i64, i64)], key2: &[(i64, i64)], f: &Fq) -> (Mat, Vec<usize>, Mat) {
    let n = x.n();
    let mut m = *x;
    let mut l = Mat::identity(n);
    let mut r = Mat::identity(n);
    let mut used = vec![false; n];
    let mut u = vec![usize::MAX; n];
    let mut cols: Vec<usize> = (0..n).collect();
    cols.sort_by(|&a, &b| key2[b].cmp(&key2[a]));
    for (pos, &j) in cols.iter().enumerate() {
        let i = (0..n)
            .filter(|&i| !used[i] && m.get(i, j) != 0)
            .min_by_key(|&i| key1[i])
            .expect("invertible matrix has a pivot in every column");
        let inv = f.inv(m.get(i, j));
        for rr in 0..n {
            if rr != i && !used[rr] && m.get(rr, j) != 0 {
                let c = f.neg(f.mul(m.get(rr, j), inv));
                m.add_row_multiple(rr, i, c, f);
                l.add_row_multiple(rr, i, c, f);
            }
        }
        for &cc in &cols[pos + 1..] {
            if m.get(i, cc) != 0 {
                let c = f.neg(f.mul(m.get(i, cc), inv));
                m.add_col_multiple(cc, j, c, f);
                r.add_col_multiple(cc, j, c, f);
            }
        }
        used[i] = true;
        u[j] = i;
    }
    let d: Vec<u8> = (0..n).map(|j| m.get(u[j], j)).collect();
    let p = l.inverse(f).expect("unitriangular");
    let q = Mat::diagonal(&d).mul(&r.inverse(f).expect("unitriangular"), f);
    (p, u, q)
}

/// The orbit invariant of `x` for the zip datum of `spec` and `flavor`.
pub fn orbit_invariant(spec: &FqGroupSpec, flavor: Flavor, x: &Mat) -> OrbitInvariant {
    let f = &spec.field;
    let n = spec.n;
    let chi: Vec<i64> = spec.weights.iter().map(|&w| w as i64).collect();
    let mut beta = vec![0i64; n];
    let mut lambda = chi.clone();
    let mut mu: Vec<i64> = match flavor {
        Flavor::Dl => chi,
        _ => chi.iter().map(|c| -c).collect(),
    };
    let mut sigma: Vec<usize> = (0..n).collect();
    let mut x = *x;
    let mut invariant = Vec::new();
    loop {
        let single = (0..n).all(|i| (0..n).all(|j| beta[i] != beta[j] || lambda[i] == lambda[j]));
        if single {
            return invariant;
        }
        debug_assert!(x.vanishes_on(|i, j| beta[i] != beta[j]));
        let key1: Vec<(i64, i64)> = (0..n).map(|i| (lambda[i], -(i as i64))).collect();
        let key2: Vec<(i64, i64)> = (0..n).map(|i| (mu[i], -(i as i64))).collect();
        let (p, u, q) = bruhat_decompose(&x, &key1, &key2, f);

        // canonical representative of the double coset and the factors reaching it
        let wp = class_permutations(&combine(&beta, &lambda));
        let wq = class_permutations(&combine(&beta, &mu));
        let mut best: Option<(Vec<usize>, &Vec<usize>, &Vec<usize>)> = None;
        for a in &wp {
            let au = compose(a, &u);
            for c in &wq {
                let v = compose(&au, c);
                if best.as_ref().is_none_or(|b| v < b.0) {
                    best = Some((v, a, c));
                }
            }
        }
        let (v, a, c) = best.expect("nonempty double coset");
        // u = a^{-1} v c^{-1}, so x = (p a^{-1}) v (c^{-1} q)
        let p = p.mul(&Mat::permutation(&invert(a)), f);
        let q = Mat::permutation(&invert(c)).mul(&q, f);

        let pi_q = q.masked(|i, j| mu[i] == mu[j]);
        let pi_p = p.masked(|i, j| lambda[i] == lambda[j]);
        let s = Mat::permutation(&sigma);
        let s_inv = Mat::permutation(&invert(&sigma));
        let phi_pi_p = Mat::product(&[s, pi_p.frob(f), s_inv], f);
        x = pi_q.mul(&phi_pi_p, f);

        let v_inv = invert(&v);
        let sigma_inv = invert(&sigma);
        beta = combine(&beta, &mu);
        let new_lambda: Vec<i64> = (0..n).map(|i| lambda[v[i]]).collect();
        let new_mu: Vec<i64> = (0..n).map(|i| mu[v_inv[sigma_inv[i]]]).collect();
        lambda = new_lambda;
        mu = new_mu;
        sigma = compose(&sigma, &v);
        invariant.push(v);
    }
}

/// Labels elements of `H(F_q)` by the `^I W` label of their geometric orbit.
#[derive(Debug, Clone)]
pub struct Classifier {
    spec: FqGroupSpec,
    flavor: Flavor,
    table: HashMap<OrbitInvariant, ElemId>,
}

impl Classifier {
    /// Fails when two representatives `w~ z~^{-1}` share an invariant.
    pub fn new(spec: &FqGroupSpec, g: &WeylGroup, flavor: Flavor) -> Result<Self> {
        let mut table = HashMap::new();
        for (w, m) in orbit_representatives(spec, g, flavor)? {
            if let Some(prev) = table.insert(orbit_invariant(spec, flavor, &m), w) {
                return Err(Error::Consistency(format!(
                    "{} {flavor}: representatives of {} and {} lie in one geometric orbit",
                    spec.describe(),
                    g.word_string(prev),
                    g.word_string(w)
                )));
            }
        }
        Ok(Classifier {
            spec: spec.clone(),
            flavor,
            table,
        })
    }

    pub fn label(&self, x: &Mat) -> Result<ElemId> {
        let inv = orbit_invariant(&self.spec, self.flavor, x);
        self.table.get(&inv).copied().ok_or_else(|| {
            Error::Consistency(format!(
                "{} {}: {x:?} has invariant {inv:?} matching no representative",
                self.spec.describe(),
                self.flavor
            ))
        })
    }
}
