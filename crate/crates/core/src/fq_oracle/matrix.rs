use std::fmt;

use super::field::Fq;

/// Largest supported matrix size.
pub const MAX_N: usize = 4;

/// An `n x n` matrix over a table field, `n <= 4`, stored row-major.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat {
    n: u8,
    e: [u8; MAX_N * MAX_N],
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<u8>> = (0..self.n())
            .map(|i| (0..self.n()).map(|j| self.get(i, j)).collect())
            .collect();
        write!(f, "{rows:?}")
    }
}

impl Mat {
    pub fn zero(n: usize) -> Self {
        assert!(n <= MAX_N, "matrix size {n} exceeds {MAX_N}");
        Mat {
            n: n as u8,
            e: [0; MAX_N * MAX_N],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u8>]) -> Self {
        let mut m = Self::zero(rows.len());
        for (i, r) in rows.iter().enumerate() {
            for (j, &x) in r.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    pub fn diagonal(d: &[u8]) -> Self {
        let mut m = Self::zero(d.len());
        for (i, &x) in d.iter().enumerate() {
            m.set(i, i, x);
        }
        m
    }

    /// `1 + c E_ij`.
    pub fn elementary(n: usize, i: usize, j: usize, c: u8) -> Self {
        let mut m = Self::identity(n);
        m.set(i, j, c);
        m
    }

    /// The matrix sending `e_j` to `sign_j e_{perm[j]}`; signs are `1` or `-1` in `f`.
    pub fn monomial(perm: &[usize], signs: &[u8]) -> Self {
        let mut m = Self::zero(perm.len());
        for (j, (&pj, &s)) in perm.iter().zip(signs).enumerate() {
            m.set(pj, j, s);
        }
        m
    }

    /// The permutation matrix sending `e_j` to `e_{perm[j]}`.
    pub fn permutation(perm: &[usize]) -> Self {
        Self::monomial(perm, &vec![1; perm.len()])
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.e[i * MAX_N + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: u8) {
        self.e[i * MAX_N + j] = x;
    }

    pub fn mul(&self, b: &Mat, f: &Fq) -> Mat {
        let n = self.n();
        let mut out = Mat::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let x = f.mul(a, b.get(k, j));
                    if x != 0 {
                        out.e[i * MAX_N + j] = f.add(out.e[i * MAX_N + j], x);
                    }
                }
            }
        }
        out
    }

    /// Product of several matrices, left to right.
    pub fn product(ms: &[Mat], f: &Fq) -> Mat {
        ms.iter()
            .skip(1)
            .fold(ms[0], |acc, m| acc.mul(m, f))
    }

    /// Entrywise `x -> x^p`.
    pub fn frob(&self, f: &Fq) -> Mat {
        self.map(|x| f.frob(x))
    }

    /// Entrywise image under a table, e.g. a field embedding.
    pub fn map(&self, g: impl Fn(u8) -> u8) -> Mat {
        let mut out = *self;
        for i in 0..self.n() {
            for j in 0..self.n() {
                out.set(i, j, g(self.get(i, j)));
            }
        }
        out
    }

    pub fn det(&self, f: &Fq) -> u8 {
        let n = self.n();
        let mut a = *self;
        let mut det = 1u8;
        for c in 0..n {
            let Some(piv) = (c..n).find(|&r| a.get(r, c) != 0) else {
                return 0;
            };
            if piv != c {
                a.swap_rows(piv, c);
                det = f.neg(det);
            }
            let d = a.get(c, c);
            det = f.mul(det, d);
            let di = f.inv(d);
            for r in c + 1..n {
                let factor = f.mul(a.get(r, c), di);
                if factor != 0 {
                    a.add_row_multiple(r, c, f.neg(factor), f);
                }
            }
        }
        det
    }

    pub fn inverse(&self, f: &Fq) -> Option<Mat> {
        let n = self.n();
        let mut a = *self;
        let mut inv = Mat::identity(n);
        for c in 0..n {
            let piv = (c..n).find(|&r| a.get(r, c) != 0)?;
            a.swap_rows(piv, c);
            inv.swap_rows(piv, c);
            let di = f.inv(a.get(c, c));
            a.scale_row(c, di, f);
            inv.scale_row(c, di, f);
            for r in 0..n {
                if r != c {
                    let factor = a.get(r, c);
                    if factor != 0 {
                        a.add_row_multiple(r, c, f.neg(factor), f);
                        inv.add_row_multiple(r, c, f.neg(factor), f);
                    }
                }
            }
        }
        Some(inv)
    }

    pub fn swap_rows(&mut self, r: usize, s: usize) {
        for j in 0..self.n() {
            self.e.swap(r * MAX_N + j, s * MAX_N + j);
        }
    }

    pub fn scale_row(&mut self, r: usize, c: u8, f: &Fq) {
        for j in 0..self.n() {
            self.e[r * MAX_N + j] = f.mul(c, self.e[r * MAX_N + j]);
        }
    }

    /// `row_r += c * row_s`.
    pub fn add_row_multiple(&mut self, r: usize, s: usize, c: u8, f: &Fq) {
        for j in 0..self.n() {
            let x = f.mul(c, self.get(s, j));
            self.e[r * MAX_N + j] = f.add(self.e[r * MAX_N + j], x);
        }
    }

    /// `col_c += k * col_s`.
    pub fn add_col_multiple(&mut self, c: usize, s: usize, k: u8, f: &Fq) {
        for i in 0..self.n() {
            let x = f.mul(k, self.get(i, s));
            self.e[i * MAX_N + c] = f.add(self.e[i * MAX_N + c], x);
        }
    }

    /// Zeroes every entry `(i, j)` for which `keep(i, j)` is false.
    pub fn masked(&self, keep: impl Fn(usize, usize) -> bool) -> Mat {
        let mut out = *self;
        for i in 0..self.n() {
            for j in 0..self.n() {
                if !keep(i, j) {
                    out.set(i, j, 0);
                }
            }
        }
        out
    }

    /// True when every entry `(i, j)` with `forbidden(i, j)` is zero.
    pub fn vanishes_on(&self, forbidden: impl Fn(usize, usize) -> bool) -> bool {
        (0..self.n()).all(|i| (0..self.n()).all(|j| !forbidden(i, j) || self.get(i, j) == 0))
    }

    /// Base-`q` integer with the entries as digits, row-major.
    pub fn encode(&self, q: usize) -> usize {
        let n = self.n();
        let mut code = 0usize;
        for i in 0..n {
            for j in 0..n {
                code = code * q + self.get(i, j) as usize;
            }
        }
        code
    }

    pub fn decode(code: usize, n: usize, q: usize) -> Mat {
        let mut m = Mat::zero(n);
        let mut c = code;
        for k in (0..n * n).rev() {
            m.e[(k / n) * MAX_N + k % n] = (c % q) as u8;
            c /= q;
        }
        m
    }
}
