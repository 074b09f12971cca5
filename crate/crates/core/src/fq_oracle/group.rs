use std::collections::HashMap;

use super::field::Fq;
use super::matrix::{Mat, MAX_N};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::parabolic::TypeSubset;
use crate::root_weyl::{CartanDatum, ElemId, Family, WeylGroup};
use crate::zip_poset::Flavor;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupFamily {
    Gl,
    Sl,
}

impl std::str::FromStr for GroupFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "gl" => Ok(GroupFamily::Gl),
            "sl" => Ok(GroupFamily::Sl),
            _ => Err(Error::Config(format!("unknown group family {s:?} (expected gl or sl)"))),
        }
    }
}

impl std::fmt::Display for GroupFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            GroupFamily::Gl => "GL",
            GroupFamily::Sl => "SL",
        })
    }
}

/// `GL_n` or `SL_n` over `F_q` with a cocharacter given by weakly decreasing weights.
///
/// The weights define the block upper triangular parabolic
/// `P = {g : g_ij = 0 whenever w_i < w_j}`, its opposite `P-` and the common Levi `L`.
/// Frobenius is the entrywise `p`-th power.
#[derive(Debug, Clone)]
pub struct FqGroupSpec {
    pub family: GroupFamily,
    pub n: usize,
    pub field: Fq,
    pub weights: Vec<i32>,
}

impl FqGroupSpec {
    pub fn new(family: GroupFamily, n: usize, q: usize, weights: Vec<i32>) -> Result<Self> {
        Self::with_field(family, n, Fq::with_order(q)?, weights)
    }

    pub fn with_field(family: GroupFamily, n: usize, field: Fq, weights: Vec<i32>) -> Result<Self> {
        if !(2..=MAX_N).contains(&n) {
            return Err(Error::Config(format!("matrix size {n} outside 2..={MAX_N}")));
        }
        if weights.len() != n {
            return Err(Error::Config(format!(
                "{} weights given for n = {n}",
                weights.len()
            )));
        }
        if weights.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Config(format!(
                "weights {weights:?} are not weakly decreasing"
            )));
        }
        Ok(FqGroupSpec {
            family,
            n,
            field,
            weights,
        })
    }

    /// The same group over `F_{q^m}`.
    pub fn extension(&self, m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::Config("extension degree must be positive".into()));
        }
        let field = Fq::new(self.field.p(), self.field.degree() * m)?;
        Self::with_field(self.family, self.n, field, self.weights.clone())
    }

    pub fn q(&self) -> usize {
        self.field.order()
    }

    /// Type of `P`: simple index `i` belongs to it when `w_i = w_{i+1}`.
    pub fn type_subset(&self) -> TypeSubset {
        let idx: Vec<usize> = (0..self.n - 1)
            .filter(|&i| self.weights[i] == self.weights[i + 1])
            .collect();
        TypeSubset::new(self.n - 1, &idx).expect("in range")
    }

    /// `W(A_{n-1})`.
    pub fn weyl_group(&self) -> Result<WeylGroup> {
        WeylGroup::new(CartanDatum::new(Family::A, self.n - 1)?)
    }

    pub fn describe(&self) -> String {
        let w: Vec<String> = self.weights.iter().map(i32::to_string).collect();
        format!("{}_{}(F_{}) weights ({})", self.family, self.n, self.q(), w.join(","))
    }

    pub fn contains(&self, m: &Mat) -> bool {
        match self.family {
            GroupFamily::Gl => m.det(&self.field) != 0,
            GroupFamily::Sl => m.det(&self.field) == 1,
        }
    }

    pub fn in_p(&self, m: &Mat) -> bool {
        m.vanishes_on(|i, j| self.weights[i] < self.weights[j])
    }

    pub fn in_p_minus(&self, m: &Mat) -> bool {
        m.vanishes_on(|i, j| self.weights[i] > self.weights[j])
    }

    /// `Q = P-` for EO and `Q = P` for DL. Both are defined over the prime field, so the
    /// Frobenius twist leaves them unchanged.
    pub fn in_q(&self, m: &Mat, flavor: Flavor) -> bool {
        match flavor {
            Flavor::Dl => self.in_p(m),
            _ => self.in_p_minus(m),
        }
    }

    /// Levi component of an element of `P` or `P-`.
    pub fn levi(&self, m: &Mat) -> Mat {
        m.masked(|i, j| self.weights[i] == self.weights[j])
    }

    /// Positions of the unipotent radical of `P`.
    pub fn radical_p(&self) -> Vec<(usize, usize)> {
        self.positions(|a, b| a > b)
    }

    /// Positions of the unipotent radical of `Q`.
    pub fn radical_q(&self, flavor: Flavor) -> Vec<(usize, usize)> {
        match flavor {
            Flavor::Dl => self.radical_p(),
            _ => self.positions(|a, b| a < b),
        }
    }

    fn positions(&self, rel: impl Fn(i32, i32) -> bool) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                if rel(self.weights[i], self.weights[j]) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Sizes of the Levi blocks.
    pub fn blocks(&self) -> Vec<usize> {
        let mut out: Vec<usize> = Vec::new();
        for i in 0..self.n {
            if i > 0 && self.weights[i] == self.weights[i - 1] {
                *out.last_mut().expect("nonempty") += 1;
            } else {
                out.push(1);
            }
        }
        out
    }

    /// `|H(F_q)|`.
    pub fn group_order(&self) -> u128 {
        let q = self.q() as u128;
        let gl = gl_order(self.n, q);
        match self.family {
            GroupFamily::Gl => gl,
            GroupFamily::Sl => gl / (q - 1),
        }
    }

    /// `|E(F_q)| = |L(F_q)| q^{dim U_P + dim U_Q}`.
    pub fn zip_group_order(&self) -> u128 {
        let q = self.q() as u128;
        let levi: u128 = self.blocks().iter().map(|&k| gl_order(k, q)).product();
        let levi = match self.family {
            GroupFamily::Gl => levi,
            GroupFamily::Sl => levi / (q - 1),
        };
        levi * q.pow(2 * self.radical_p().len() as u32)
    }

    /// Matrix Frobenius.
    pub fn frob(&self, m: &Mat) -> Mat {
        m.frob(&self.field)
    }
}

fn gl_order(n: usize, q: u128) -> u128 {
    (0..n as u32).map(|i| q.pow(n as u32) - q.pow(i)).product()
}

enum Index {
    Dense(Vec<u32>),
    Hashed(HashMap<Mat, u32>),
}

/// All elements of `H(F_q)` with an index from matrices to positions.
pub struct GroupTable {
    elems: Vec<Mat>,
    index: Index,
    q: usize,
}

const DENSE_LIMIT: usize = 1 << 22;

impl std::fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let index = match self.index {
            Index::Dense(_) => "dense",
            Index::Hashed(_) => "hashed",
        };
        f.debug_struct("GroupTable")
            .field("len", &self.elems.len())
            .field("q", &self.q)
            .field("index", &index)
            .finish()
    }
}

impl GroupTable {
    pub fn elements(&self) -> &[Mat] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn id_of(&self, m: &Mat) -> Option<usize> {
        match &self.index {
            Index::Dense(v) => {
                let id = v[m.encode(self.q)];
                (id != u32::MAX).then_some(id as usize)
            }
            Index::Hashed(h) => h.get(m).map(|&i| i as usize),
        }
    }
}

/// Enumerates `H(F_q)`; fails when `|H(F_q)|` exceeds `caps.group`.
pub fn enumerate_group(spec: &FqGroupSpec, caps: Caps) -> Result<GroupTable> {
    Caps::check(&format!("|{}|", spec.describe()), spec.group_order(), caps.group)?;
    let q = spec.q();
    let n = spec.n;
    let f = &spec.field;
    // row by row: the candidate rows for row r avoid the span of the rows above
    let mut elems = Vec::with_capacity(spec.group_order() as usize);
    let mut stack: Vec<(usize, Mat)> = vec![(0, Mat::zero(n))];
    let rows: Vec<Vec<u8>> = (1..q.pow(n as u32))
        .map(|code| {
            let mut v = vec![0u8; n];
            let mut c = code;
            for k in (0..n).rev() {
                v[k] = (c % q) as u8;
                c /= q;
            }
            v
        })
        .collect();
    while let Some((r, m)) = stack.pop() {
        if r == n {
            if spec.contains(&m) {
                elems.push(m);
            }
            continue;
        }
        for row in &rows {
            let mut next = m;
            for (j, &x) in row.iter().enumerate() {
                next.set(r, j, x);
            }
            if rank_of_first_rows(&next, r + 1, f) == r + 1 {
                stack.push((r + 1, next));
            }
        }
    }
    elems.sort_unstable();
    if elems.len() as u128 != spec.group_order() {
        return Err(Error::Consistency(format!(
            "enumerated {} elements of {}, expected {}",
            elems.len(),
            spec.describe(),
            spec.group_order()
        )));
    }
    let index = match q.checked_pow((n * n) as u32) {
        Some(size) if size <= DENSE_LIMIT => {
            let mut v = vec![u32::MAX; size];
            for (i, m) in elems.iter().enumerate() {
                v[m.encode(q)] = i as u32;
            }
            Index::Dense(v)
        }
        _ => Index::Hashed(elems.iter().enumerate().map(|(i, m)| (*m, i as u32)).collect()),
    };
    Ok(GroupTable { elems, index, q })
}

fn rank_of_first_rows(m: &Mat, rows: usize, f: &Fq) -> usize {
    let n = m.n();
    let mut a = *m;
    let mut rank = 0;
    for c in 0..n {
        let Some(piv) = (rank..rows).find(|&r| a.get(r, c) != 0) else {
            continue;
        };
        a.swap_rows(piv, rank);
        let di = f.inv(a.get(rank, c));
        for r in rank + 1..rows {
            let k = f.mul(a.get(r, c), di);
            if k != 0 {
                a.add_row_multiple(r, rank, f.neg(k), f);
            }
        }
        rank += 1;
    }
    rank
}

fn check_flavor(flavor: Flavor) -> Result<()> {
    if flavor == Flavor::Custom {
        return Err(Error::Config("the matrix oracle supports the EO and DL flavors".into()));
    }
    Ok(())
}

/// All `(a, b)` in `P(F_q) x Q(F_q)` with `Frob(levi(a)) = levi(b)`.
pub fn zip_group(spec: &FqGroupSpec, flavor: Flavor, caps: Caps) -> Result<Vec<(Mat, Mat)>> {
    check_flavor(flavor)?;
    Caps::check("|E(F_q)|", spec.zip_group_order(), caps.group)?;
    let group = enumerate_group(spec, caps)?;
    let f = &spec.field;
    let radical = spec.radical_q(flavor);
    let q = spec.q();
    let unipotents: Vec<Mat> = (0..q.pow(radical.len() as u32))
        .map(|code| {
            let mut m = Mat::identity(spec.n);
            let mut c = code;
            for &(i, j) in &radical {
                m.set(i, j, (c % q) as u8);
                c /= q;
            }
            m
        })
        .collect();
    let mut out = Vec::new();
    for a in group.elements().iter().filter(|a| spec.in_p(a)) {
        let fl = spec.frob(&spec.levi(a));
        for v in &unipotents {
            out.push((*a, fl.mul(v, f)));
        }
    }
    Ok(out)
}

/// Generators of `E(F_q)`: Levi torus and root elements paired with their Frobenius images,
/// and root elements of the two unipotent radicals paired with `1`.
pub fn zip_generators(spec: &FqGroupSpec, flavor: Flavor) -> Result<Vec<(Mat, Mat)>> {
    check_flavor(flavor)?;
    let n = spec.n;
    let f = &spec.field;
    let one = Mat::identity(n);
    let x = f.primitive();
    let mut gens = Vec::new();
    let levi_pair = |m: Mat, gens: &mut Vec<(Mat, Mat)>| gens.push((m, spec.frob(&m)));
    match spec.family {
        GroupFamily::Gl => {
            for i in 0..n {
                let mut d = vec![1u8; n];
                d[i] = x;
                levi_pair(Mat::diagonal(&d), &mut gens);
            }
        }
        GroupFamily::Sl => {
            for i in 0..n - 1 {
                let mut d = vec![1u8; n];
                d[i] = x;
                d[i + 1] = f.inv(x);
                levi_pair(Mat::diagonal(&d), &mut gens);
            }
        }
    }
    let basis = f.prime_basis();
    for i in 0..n {
        for j in 0..n {
            if i != j && spec.weights[i] == spec.weights[j] {
                for &c in &basis {
                    levi_pair(Mat::elementary(n, i, j, c), &mut gens);
                }
            }
        }
    }
    for &(i, j) in &spec.radical_p() {
        for &c in &basis {
            gens.push((Mat::elementary(n, i, j, c), one));
        }
    }
    for &(i, j) in &spec.radical_q(flavor) {
        for &c in &basis {
            gens.push((one, Mat::elementary(n, i, j, c)));
        }
    }
    Ok(gens)
}

/// The permutation of `{0..n-1}` induced by a Weyl group element of `A_{n-1}`.
pub fn weyl_permutation(g: &WeylGroup, w: ElemId) -> Vec<usize> {
    let n = g.rank() + 1;
    let mut perm: Vec<usize> = (0..n).collect();
    // w = s_{i1} s_{i2} ..., applied right to left
    for &i in g.word(w).iter().rev() {
        for p in perm.iter_mut() {
            if *p == i {
                *p = i + 1;
            } else if *p == i + 1 {
                *p = i;
            }
        }
    }
    perm
}

/// Representative of `w` in the normaliser of the diagonal torus.
///
/// For `GL_n` this is the permutation matrix. For `SL_n` each simple reflection is lifted to
/// `e_i -> e_{i+1}, e_{i+1} -> -e_i` and the lifts are multiplied along the reduced word; the
/// result is compatible with length additive products.
pub fn weyl_representative_matrix(spec: &FqGroupSpec, g: &WeylGroup, w: ElemId) -> Result<Mat> {
    if g.datum().family() != Family::A || g.rank() + 1 != spec.n {
        return Err(Error::Usage(format!(
            "{} is not the Weyl group of {}",
            g.datum(),
            spec.describe()
        )));
    }
    let f = &spec.field;
    Ok(match spec.family {
        GroupFamily::Gl => Mat::permutation(&weyl_permutation(g, w)),
        GroupFamily::Sl => {
            let n = spec.n;
            g.word(w).iter().fold(Mat::identity(n), |acc, &i| {
                let mut s = Mat::identity(n);
                s.set(i, i, 0);
                s.set(i + 1, i + 1, 0);
                s.set(i + 1, i, 1);
                s.set(i, i + 1, f.neg(1));
                acc.mul(&s, f)
            })
        }
    })
}

/// The orbit representatives `w~ z~^{-1}` for `w` in `^I W`, where `z` is the frame element of
/// the zip datum of the given flavor (`w0^K` for EO, `e` for DL).
pub fn orbit_representatives(spec: &FqGroupSpec, g: &WeylGroup, flavor: Flavor) -> Result<Vec<(ElemId, Mat)>> {
    check_flavor(flavor)?;
    let d = crate::zip_poset::make_zip_datum(g, spec.type_subset(), flavor)?;
    let f = &spec.field;
    let zi = weyl_representative_matrix(spec, g, d.frame_z())?
        .inverse(f)
        .expect("invertible");
    d.labels(crate::zip_poset::Side::Left)
        .into_iter()
        .map(|w| Ok((w, weyl_representative_matrix(spec, g, w)?.mul(&zi, f))))
        .collect()
}

/// Lang map `h -> h Frob(h)^{-1}`.
pub fn lang_map(spec: &FqGroupSpec, h: &Mat) -> Result<Mat> {
    let f = &spec.field;
    let inv = spec
        .frob(h)
        .inverse(f)
        .ok_or_else(|| Error::Usage("Lang map needs an invertible matrix".into()))?;
    Ok(h.mul(&inv, f))
}
