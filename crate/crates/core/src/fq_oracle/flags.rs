use super::classify::Classifier;
use super::field::Fq;
use super::group::{lang_map, weyl_representative_matrix, FqGroupSpec, GroupFamily};
use super::matrix::Mat;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::parabolic::{coset_system, opposite_type};
use crate::root_weyl::ElemId;
use crate::zip_poset::{make_zip_datum, Flavor, Side};

/// Bases in reduced row echelon form of all `k`-dimensional subspaces of `F^N`.
fn rref_subspaces(big_n: usize, k: usize, f: &Fq) -> Vec<Vec<Vec<u8>>> {
    let q = f.order();
    let mut out = Vec::new();
    for pivots in combinations(big_n, k) {
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|r| {
                let pv = &pivots;
                (pv[r] + 1..big_n)
                    .filter(move |c| !pv.contains(c))
                    .map(move |c| (r, c))
            })
            .collect();
        for code in 0..q.pow(free.len() as u32) {
            let mut rows = vec![vec![0u8; big_n]; k];
            for (r, &p) in pivots.iter().enumerate() {
                rows[r][p] = 1;
            }
            let mut c = code;
            for &(r, col) in &free {
                rows[r][col] = (c % q) as u8;
                c /= q;
            }
            out.push(rows);
        }
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Number of `F_Q`-points of the partial flag variety with the given block sizes.
pub fn flag_count(blocks: &[usize], big_q: u128) -> u128 {
    let qfac = |k: usize| -> u128 { (1..=k as u32).map(|i| big_q.pow(i) - 1).product() };
    let n: usize = blocks.iter().sum();
    qfac(n) / blocks.iter().map(|&b| qfac(b)).product::<u128>()
}

/// One matrix per flag `V_1 < V_2 < ...` with `dim V_i / V_{i-1} = blocks[i]`; the first
/// `blocks[0]` rows span `V_1`, and so on. These are representatives of `P-\GL_n`.
pub fn enumerate_flags(blocks: &[usize], f: &Fq) -> Vec<Mat> {
    let n: usize = blocks.iter().sum();
    let mut out = Vec::new();
    fn go(blocks: &[usize], free_cols: Vec<usize>, row: usize, m: Mat, f: &Fq, out: &mut Vec<Mat>) {
        let Some((&k, rest)) = blocks.split_first() else {
            out.push(m);
            return;
        };
        for basis in rref_subspaces(free_cols.len(), k, f) {
            let mut next = m;
            let mut used = Vec::new();
            for (r, vec) in basis.iter().enumerate() {
                for (c, &x) in vec.iter().enumerate() {
                    next.set(row + r, free_cols[c], x);
                }
                used.push(free_cols[vec.iter().position(|&x| x != 0).expect("pivot")]);
            }
            let remaining: Vec<usize> = free_cols.iter().copied().filter(|c| !used.contains(c)).collect();
            go(rest, remaining, row + k, next, f, out);
        }
    }
    go(blocks, (0..n).collect(), 0, Mat::zero(n), f, &mut out);
    out
}

/// Per-label point counts of the fine Deligne-Lusztig strata over `F_{q^m}`.
#[derive(Debug, Clone)]
pub struct DlStrataCounts {
    pub m: u32,
    /// Size of the field the flags live over.
    pub field_order: usize,
    /// `(w, count)` for every `w` in `^{I-}W`, zero counts included.
    pub counts: Vec<(ElemId, usize)>,
    pub total: usize,
    /// Point count of `P-\H` from the product formula.
    pub expected_total: u128,
}

impl DlStrataCounts {
    pub fn count(&self, w: ElemId) -> Option<usize> {
        self.counts.iter().find(|c| c.0 == w).map(|c| c.1)
    }
}

/// Counts the points of `P-\H` over `F_{q^m}` in each fine Deligne-Lusztig stratum.
///
/// For a flag `P- h` the element `x = y~^{-1} gamma(h) y~`, with `gamma` the Lang map and
/// `y = w0^{I-}`, lies in the standard parabolic picture of type `I- = w0 I w0`. Its DL orbit
/// label in `^{I-}W` is the stratum.
pub fn dl_strata_counts(spec: &FqGroupSpec, m: u32, caps: Caps, exec: Exec) -> Result<DlStrataCounts> {
    let ext = spec.extension(m)?;
    let big_q = ext.q() as u128;
    let blocks = spec.blocks();
    let expected_total = flag_count(&blocks, big_q);
    Caps::check("flag variety points", expected_total, caps.group)?;

    let g = spec.weyl_group()?;
    let minus_weights: Vec<i32> = (0..spec.n).map(|i| -spec.weights[spec.n - 1 - i]).collect();
    let minus = FqGroupSpec::with_field(spec.family, spec.n, ext.field.clone(), minus_weights)?;
    let i_minus = opposite_type(&g, spec.type_subset())?;
    if minus.type_subset() != i_minus {
        return Err(Error::Consistency("opposite weights do not have type w0 I w0".into()));
    }
    let y = coset_system(&g, i_minus)?.w0_upper;
    let f = &ext.field;
    let y_mat = weyl_representative_matrix(&minus, &g, y)?;
    let y_inv = y_mat.inverse(f).expect("invertible");
    let classifier = Classifier::new(&minus, &g, Flavor::Dl)?;

    let flags = enumerate_flags(&blocks, f);
    let labels: Vec<Result<ElemId>> = exec.map_slice(&flags, |h| {
        let mut h = *h;
        if spec.family == GroupFamily::Sl {
            let d = f.inv(h.det(f));
            h.scale_row(spec.n - 1, d, f);
        }
        let gamma = lang_map(&ext, &h)?;
        classifier.label(&Mat::product(&[y_inv, gamma, y_mat], f))
    });
    let labels = labels.into_iter().collect::<Result<Vec<_>>>()?;
    let d = make_zip_datum(&g, i_minus, Flavor::Dl)?;
    let counts: Vec<(ElemId, usize)> = d
        .labels(Side::Left)
        .into_iter()
        .map(|w| (w, labels.iter().filter(|&&l| l == w).count()))
        .collect();
    Ok(DlStrataCounts {
        m,
        field_order: ext.q(),
        total: flags.len(),
        counts,
        expected_total,
    })
}

/// `(log_q c2 - log_q c1) / (m2 - m1)`, the growth exponent of a count in `q^m`.
/// `None` when a count is zero.
pub fn log_slope(q: usize, m1: u32, c1: usize, m2: u32, c2: usize) -> Option<f64> {
    if c1 == 0 || c2 == 0 || m1 == m2 {
        return None;
    }
    let lq = (q as f64).ln();
    Some(((c2 as f64).ln() - (c1 as f64).ln()) / lq / (m2 as f64 - m1 as f64))
}
