use super::classify::Classifier;
use super::group::{enumerate_group, orbit_representatives, zip_generators, zip_group, FqGroupSpec, GroupTable};
use super::matrix::Mat;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::root_weyl::ElemId;
use crate::zip_poset::Flavor;

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
        }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let gp = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = gp;
            x = gp;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb) as usize] = ra.min(rb);
        }
    }
}

/// How the orbits are computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OrbitMode {
    /// Union-find seeded with generators of `E(F_q)`.
    Generators,
    /// Union-find over every element of `E(F_q)`.
    Full,
    /// Full enumeration when `|E| |H|` is at most [`FULL_MODE_LIMIT`], generators otherwise.
    #[default]
    Auto,
}

pub const FULL_MODE_LIMIT: u128 = 2_000_000;

/// `E(F_q)`-orbits on `H(F_q)`.
#[derive(Debug)]
pub struct OrbitTable {
    pub spec: FqGroupSpec,
    pub flavor: Flavor,
    pub group: GroupTable,
    /// Orbit id of each group element; ids follow the order of first appearance.
    pub orbit_of: Vec<u32>,
    pub sizes: Vec<usize>,
    /// `(w, orbit of w~ z~^{-1})` for every `w` in `^I W`.
    pub representative_labels: Vec<(ElemId, usize)>,
    pub zip_group_order: u128,
}

impl OrbitTable {
    pub fn num_orbits(&self) -> usize {
        self.sizes.len()
    }

    pub fn orbit_of_matrix(&self, m: &Mat) -> Option<usize> {
        self.group.id_of(m).map(|i| self.orbit_of[i] as usize)
    }

    pub fn members(&self, orbit: usize) -> Vec<Mat> {
        self.group
            .elements()
            .iter()
            .zip(&self.orbit_of)
            .filter(|(_, &o)| o as usize == orbit)
            .map(|(m, _)| *m)
            .collect()
    }

    /// First element of each orbit in enumeration order.
    pub fn orbit_leaders(&self) -> Vec<Mat> {
        let mut out: Vec<Option<Mat>> = vec![None; self.num_orbits()];
        for (m, &o) in self.group.elements().iter().zip(&self.orbit_of) {
            out[o as usize].get_or_insert(*m);
        }
        out.into_iter().map(|m| m.expect("orbits are nonempty")).collect()
    }
}

/// Partitions `H(F_q)` into `E(F_q)`-orbits under `(a, b) . g = a g b^{-1}`.
pub fn orbit_partition(spec: &FqGroupSpec, flavor: Flavor, mode: OrbitMode, caps: Caps, exec: Exec) -> Result<OrbitTable> {
    let group = enumerate_group(spec, caps)?;
    let f = &spec.field;
    let e_order = spec.zip_group_order();
    let full = match mode {
        OrbitMode::Full => true,
        OrbitMode::Generators => false,
        OrbitMode::Auto => e_order * group.len() as u128 <= FULL_MODE_LIMIT,
    };
    let pairs = if full {
        zip_group(spec, flavor, caps)?
    } else {
        zip_generators(spec, flavor)?
    };
    let pairs: Vec<(Mat, Mat)> = pairs
        .into_iter()
        .map(|(a, b)| (a, b.inverse(f).expect("invertible")))
        .collect();
    let elems = group.elements();
    let mut uf = UnionFind::new(elems.len());
    for (a, b_inv) in &pairs {
        let images: Vec<u32> = exec.map_slice(elems, |g| {
            let h = Mat::product(&[*a, *g, *b_inv], f);
            group.id_of(&h).expect("the zip group preserves H") as u32
        });
        for (i, &j) in images.iter().enumerate() {
            uf.union(i as u32, j);
        }
    }
    let mut id_of_root = std::collections::HashMap::new();
    let mut sizes = Vec::new();
    let orbit_of: Vec<u32> = (0..elems.len() as u32)
        .map(|i| {
            let r = uf.find(i);
            let next = id_of_root.len() as u32;
            let id = *id_of_root.entry(r).or_insert(next);
            if id as usize == sizes.len() {
                sizes.push(0);
            }
            sizes[id as usize] += 1;
            id
        })
        .collect();
    let g = spec.weyl_group()?;
    let representative_labels = orbit_representatives(spec, &g, flavor)?
        .into_iter()
        .map(|(w, m)| {
            let id = group
                .id_of(&m)
                .ok_or_else(|| Error::Consistency(format!("representative {m:?} not in the group")))?;
            Ok((w, orbit_of[id] as usize))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(OrbitTable {
        spec: spec.clone(),
        flavor,
        group,
        orbit_of,
        sizes,
        representative_labels,
        zip_group_order: e_order,
    })
}

/// Whether the merged orbit count has settled over the last two tower levels.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stability {
    Stable,
    Inconclusive,
}

impl std::fmt::Display for Stability {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Stability::Stable => "stable",
            Stability::Inconclusive => "inconclusive",
        })
    }
}

/// Base orbits merged by connectivity over a tower of extensions.
#[derive(Debug)]
pub struct MergeReport {
    pub base: OrbitTable,
    pub levels: Vec<u32>,
    /// Number of merged classes of base orbits at each level.
    pub merged_counts: Vec<usize>,
    /// Merged class of each base orbit at the top level.
    pub merged_class: Vec<usize>,
    /// `|^I W|`.
    pub expected: usize,
    pub stability: Stability,
    /// Whether the representatives of distinct labels lie in distinct merged classes.
    pub representatives_distinct: bool,
    /// Geometric label of each base orbit from the exact classifier.
    pub exact_labels: Vec<ElemId>,
}

impl MergeReport {
    pub fn merged_count(&self) -> usize {
        *self.merged_counts.last().expect("at least one level")
    }

    /// Number of distinct geometric orbits meeting `H(F_q)`, by the exact classifier.
    pub fn exact_count(&self) -> usize {
        let mut v = self.exact_labels.clone();
        v.sort_unstable();
        v.dedup();
        v.len()
    }

    /// Stable, equal to `|^I W|`, and separating the representatives.
    pub fn bijection_holds(&self) -> bool {
        self.stability == Stability::Stable
            && self.merged_count() == self.expected
            && self.representatives_distinct
    }
}

/// Merges `E(F_q)`-orbits that meet a common `E(F_{q^m})`-orbit, for each `m` in `levels`.
///
/// `levels` must start at 1 and each level must divide the next. The merged count is stable
/// when the last two levels agree.
pub fn geometric_merge(spec: &FqGroupSpec, flavor: Flavor, levels: &[u32], caps: Caps, exec: Exec) -> Result<MergeReport> {
    if levels.first() != Some(&1) || levels.windows(2).any(|w| w[1] <= w[0] || w[1] % w[0] != 0) {
        return Err(Error::Config(format!(
            "tower levels {levels:?} must start at 1 and increase by divisibility"
        )));
    }
    let base = orbit_partition(spec, flavor, OrbitMode::Auto, caps, exec)?;
    let leaders = base.orbit_leaders();
    let mut merged_counts = vec![base.num_orbits()];
    let mut merged_class: Vec<usize> = (0..base.num_orbits()).collect();
    for &m in &levels[1..] {
        let ext = spec.extension(m)?;
        let embed = spec.field.embedding_into(&ext.field)?;
        let big = orbit_partition(&ext, flavor, OrbitMode::Generators, caps, exec)?;
        let mut classes = std::collections::HashMap::new();
        merged_class = leaders
            .iter()
            .map(|x| {
                let y = x.map(|c| embed[c as usize]);
                let o = big.orbit_of_matrix(&y).expect("embedded element lies in the big group");
                let next = classes.len();
                *classes.entry(o).or_insert(next)
            })
            .collect();
        merged_counts.push(classes.len());
    }
    let stability = if merged_counts.len() >= 2 && merged_counts[merged_counts.len() - 1] == merged_counts[merged_counts.len() - 2] {
        Stability::Stable
    } else {
        Stability::Inconclusive
    };
    let mut rep_classes: Vec<usize> = base.representative_labels.iter().map(|&(_, o)| merged_class[o]).collect();
    rep_classes.sort_unstable();
    rep_classes.dedup();
    let representatives_distinct = rep_classes.len() == base.representative_labels.len();
    let g = spec.weyl_group()?;
    let classifier = Classifier::new(spec, &g, flavor)?;
    let exact_labels = leaders.iter().map(|x| classifier.label(x)).collect::<Result<Vec<_>>>()?;
    Ok(MergeReport {
        expected: base.representative_labels.len(),
        base,
        levels: levels.to_vec(),
        merged_counts,
        merged_class,
        stability,
        representatives_distinct,
        exact_labels,
    })
}
