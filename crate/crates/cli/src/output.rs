//! Rendering of results as DOT, JSON and TSV.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use zipstrata::bitmat::BitMatrix;
use zipstrata::parabolic::TypeSubset;
use zipstrata::zip_poset::StrataPoset;
use zipstrata::{Error, Result};

pub const POSET_SCHEMA: u32 = 1;

/// The JSON form of a strata poset. Indices in `hasse` refer to positions in `labels`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct PosetJson {
    pub schema: u32,
    #[serde(rename = "type")]
    pub cartan: String,
    #[serde(rename = "I")]
    pub i: Vec<usize>,
    #[serde(rename = "J")]
    pub j: Vec<usize>,
    pub flavor: String,
    pub side: String,
    pub labels: Vec<String>,
    pub lengths: Vec<usize>,
    pub leq_matrix: Vec<Vec<u8>>,
    pub hasse: Vec<(usize, usize)>,
}

fn one_based(s: TypeSubset) -> Vec<usize> {
    s.indices().into_iter().map(|i| i + 1).collect()
}

impl PosetJson {
    pub fn new(cartan: String, i: TypeSubset, j: TypeSubset, flavor: String, side: String, p: &StrataPoset) -> Self {
        let n = p.len();
        PosetJson {
            schema: POSET_SCHEMA,
            cartan,
            i: one_based(i),
            j: one_based(j),
            flavor,
            side,
            labels: p.names.clone(),
            lengths: p.dims.clone(),
            leq_matrix: (0..n).map(|a| (0..n).map(|b| p.leq.get(a, b) as u8).collect()).collect(),
            hasse: p.hasse.clone(),
        }
    }

    /// Rebuilds the poset, re-checking the order axioms.
    pub fn to_poset(&self) -> Result<StrataPoset> {
        if self.schema != POSET_SCHEMA {
            return Err(Error::Usage(format!("unsupported poset schema {}", self.schema)));
        }
        let n = self.labels.len();
        if self.leq_matrix.len() != n || self.leq_matrix.iter().any(|r| r.len() != n) {
            return Err(Error::Usage("leq_matrix is not square over the labels".into()));
        }
        let rows = self.leq_matrix.iter().map(|r| r.iter().map(|&x| x != 0).collect()).collect();
        StrataPoset::from_parts(self.labels.clone(), self.lengths.clone(), BitMatrix::from_rows(n, rows))
    }
}

/// Graphviz digraph of the Hasse diagram, edges pointing from smaller to larger strata.
pub fn poset_dot(title: &str, p: &StrataPoset) -> String {
    let mut s = String::new();
    writeln!(s, "digraph strata {{").unwrap();
    writeln!(s, "  label=\"{title}\";").unwrap();
    writeln!(s, "  rankdir=BT;").unwrap();
    writeln!(s, "  node [shape=box];").unwrap();
    for (name, dim) in p.names.iter().zip(&p.dims) {
        writeln!(s, "  \"{name}\" [label=\"{name}\\nl={dim}\"];").unwrap();
    }
    for &(a, b) in &p.hasse {
        writeln!(s, "  \"{}\" -> \"{}\";", p.names[a], p.names[b]).unwrap();
    }
    s.push_str("}\n");
    s
}

/// Joins fields with tabs.
pub fn tsv_row<I, T>(fields: I) -> String
where
    I: IntoIterator<Item = T>,
    T: std::fmt::Display,
{
    let mut s = String::new();
    for (k, f) in fields.into_iter().enumerate() {
        if k > 0 {
            s.push('\t');
        }
        write!(s, "{f}").unwrap();
    }
    s.push('\n');
    s
}

pub fn emit(text: &str, path: Option<&Path>) -> std::io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()
        }
    }
}
