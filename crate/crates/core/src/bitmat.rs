//! Dense square boolean matrices stored as packed bit rows.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        BitMatrix {
            n,
            words,
            bits: vec![0; n * words],
        }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = BitMatrix::new(n);
        for i in 0..n {
            for j in 0..n {
                if f(i, j) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    pub fn from_rows(n: usize, rows: Vec<Vec<bool>>) -> Self {
        BitMatrix::from_fn(n, |i, j| rows[i][j])
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.n && j < self.n);
        (self.bits[i * self.words + j / 64] >> (j % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        let w = &mut self.bits[i * self.words + j / 64];
        if v {
            *w |= 1 << (j % 64);
        } else {
            *w &= !(1 << (j % 64));
        }
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    fn row_or_into(&mut self, dst: usize, src: usize) -> bool {
        let mut changed = false;
        for k in 0..self.words {
            let s = self.bits[src * self.words + k];
            let d = &mut self.bits[dst * self.words + k];
            let nd = *d | s;
            changed |= nd != *d;
            *d = nd;
        }
        changed
    }

    /// Number of true entries.
    pub fn count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Reflexive-transitive closure (Warshall on bit rows).
    pub fn closure(&self) -> BitMatrix {
        let mut m = self.clone();
        for i in 0..self.n {
            m.set(i, i, true);
        }
        for k in 0..self.n {
            for i in 0..self.n {
                if i != k && m.get(i, k) {
                    m.row_or_into(i, k);
                }
            }
        }
        m
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.n).all(|i| self.get(i, i))
    }

    /// First pair `(i, j)` with `i != j`, `i R j` and `j R i`.
    pub fn antisymmetry_violation(&self) -> Option<(usize, usize)> {
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.get(i, j) && self.get(j, i) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// First triple `(i, j, k)` with `i R j`, `j R k` but not `i R k`.
    pub fn transitivity_violation(&self) -> Option<(usize, usize, usize)> {
        for i in 0..self.n {
            for j in 0..self.n {
                if !self.get(i, j) {
                    continue;
                }
                // row(j) must be contained in row(i)
                let ri = self.row(i);
                let rj = self.row(j);
                for (w, (a, b)) in ri.iter().zip(rj).enumerate() {
                    let missing = b & !a;
                    if missing != 0 {
                        let k = w * 64 + missing.trailing_zeros() as usize;
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// Covering pairs of a partial order: `i < j` with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                if i == j || !self.get(i, j) {
                    continue;
                }
                let between = (0..self.n)
                    .any(|k| k != i && k != j && self.get(i, k) && self.get(k, j));
                if !between {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix({})", self.n)?;
        for i in 0..self.n {
            let row: String = (0..self.n)
                .map(|j| if self.get(i, j) { '1' } else { '.' })
                .collect();
            writeln!(f, "  {row}")?;
        }
        Ok(())
    }
}
