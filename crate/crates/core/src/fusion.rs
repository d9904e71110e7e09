//! The fusion rings K_{n1,n2}: simples X_i ⊠ Y_j with i + j even.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::scalars::{qint, RatFunc2};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FusionError {
    #[error("n must be at least 2, got {0}")]
    Rank(u32),
    #[error("({0}, {1}) is not a simple of this ring")]
    InvalidLabel(u32, u32),
    #[error("operation needs a finite ring")]
    Infinite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SimpleLabel {
    pub i: u32,
    pub j: u32,
}

impl SimpleLabel {
    pub fn new(i: u32, j: u32) -> Self {
        Self { i, j }
    }

    pub fn unit() -> Self {
        Self { i: 0, j: 0 }
    }
}

impl fmt::Display for SimpleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

/// K_{n1,n2}; `None` stands for ∞.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FusionRing {
    n1: Option<u32>,
    n2: Option<u32>,
}

impl fmt::Display for FusionRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = |n: Option<u32>| n.map_or("inf".to_string(), |n| n.to_string());
        write!(f, "K_{{{},{}}}", s(self.n1), s(self.n2))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SimpleInfo {
    pub i: u32,
    pub j: u32,
    pub dim: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct RingSummary {
    pub n1: Option<u32>,
    pub n2: Option<u32>,
    pub simples: Vec<SimpleInfo>,
    pub edges: Vec<[SimpleLabel; 2]>,
}

impl FusionRing {
    pub fn new(n1: Option<u32>, n2: Option<u32>) -> Result<Self, FusionError> {
        for n in [n1, n2].into_iter().flatten() {
            if n < 2 {
                return Err(FusionError::Rank(n));
            }
        }
        Ok(Self { n1, n2 })
    }

    pub fn finite(n1: u32, n2: u32) -> Result<Self, FusionError> {
        Self::new(Some(n1), Some(n2))
    }

    pub fn infinite() -> Self {
        Self { n1: None, n2: None }
    }

    pub fn n1(&self) -> Option<u32> {
        self.n1
    }

    pub fn n2(&self) -> Option<u32> {
        self.n2
    }

    pub fn is_finite(&self) -> bool {
        self.n1.is_some() && self.n2.is_some()
    }

    pub fn contains(&self, s: SimpleLabel) -> bool {
        (s.i + s.j).is_multiple_of(2) && self.n1.is_none_or(|n| s.i < n) && self.n2.is_none_or(|n| s.j < n)
    }

    fn check(&self, s: SimpleLabel) -> Result<(), FusionError> {
        if self.contains(s) {
            Ok(())
        } else {
            Err(FusionError::InvalidLabel(s.i, s.j))
        }
    }

    /// All simples, ordered by (i, j).
    pub fn simples(&self) -> Result<Vec<SimpleLabel>, FusionError> {
        let (n1, n2) = self.n1.zip(self.n2).ok_or(FusionError::Infinite)?;
        Ok((0..n1)
            .flat_map(|i| (0..n2).map(move |j| SimpleLabel::new(i, j)))
            .filter(|s| (s.i + s.j) % 2 == 0)
            .collect())
    }

    /// s ⊗ X as a list of simples, each with multiplicity one.
    pub fn tensor_with_x(&self, s: SimpleLabel) -> Result<Vec<SimpleLabel>, FusionError> {
        self.check(s)?;
        Ok(self.neighbors(s, None))
    }

    fn neighbors(&self, s: SimpleLabel, window: Option<u32>) -> Vec<SimpleLabel> {
        let cap = |n: Option<u32>| match (n, window) {
            (Some(n), Some(w)) => n.min(w),
            (Some(n), None) => n,
            (None, Some(w)) => w,
            (None, None) => u32::MAX,
        };
        let (b1, b2) = (cap(self.n1), cap(self.n2));
        let mut out = Vec::with_capacity(4);
        for di in [-1i64, 1] {
            for dj in [-1i64, 1] {
                let (i, j) = (s.i as i64 + di, s.j as i64 + dj);
                if i >= 0 && j >= 0 && i < b1 as i64 && j < b2 as i64 {
                    out.push(SimpleLabel::new(i as u32, j as u32));
                }
            }
        }
        out.sort();
        out
    }

    /// Number of walks of length `len` from the unit to each simple.
    pub fn walks(&self, len: usize) -> BTreeMap<SimpleLabel, u128> {
        let window = Some(len as u32 + 2);
        let mut cur = BTreeMap::from([(SimpleLabel::unit(), 1u128)]);
        for _ in 0..len {
            let mut next = BTreeMap::new();
            for (s, c) in cur {
                for t in self.neighbors(s, window) {
                    *next.entry(t).or_insert(0) += c;
                }
            }
            cur = next;
        }
        cur
    }

    /// dim Hom(X^a, X^b), as pairs of walks meeting at a common simple.
    pub fn hom_dim(&self, a: usize, b: usize) -> u128 {
        let wa = self.walks(a);
        let wb = self.walks(b);
        wa.iter().map(|(s, x)| x * wb.get(s).copied().unwrap_or(0)).sum()
    }

    pub fn qdim(&self, s: SimpleLabel) -> Result<RatFunc2, FusionError> {
        self.check(s)?;
        Ok(&qint(s.i + 1, 1) * &qint(s.j + 1, 2))
    }

    /// Undirected edges of the fusion graph for ⊗X, each listed once.
    pub fn graph_edges(&self) -> Result<Vec<[SimpleLabel; 2]>, FusionError> {
        let mut out = Vec::new();
        for s in self.simples()? {
            for t in self.neighbors(s, None) {
                if s < t {
                    out.push([s, t]);
                }
            }
        }
        Ok(out)
    }

    pub fn summary(&self) -> Result<RingSummary, FusionError> {
        let simples = self
            .simples()?
            .into_iter()
            .map(|s| SimpleInfo { i: s.i, j: s.j, dim: self.qdim(s).expect("valid").to_string() })
            .collect();
        Ok(RingSummary { n1: self.n1, n2: self.n2, simples, edges: self.graph_edges()? })
    }
}

/// DOT rendering of the fusion graph for multiplication by X.
pub fn fusion_graph_dot(ring: &FusionRing) -> Result<String, FusionError> {
    let mut s = format!("graph \"{ring}\" {{\n");
    for v in ring.simples()? {
        s += &format!("  \"{v}\";\n");
    }
    for [a, b] in ring.graph_edges()? {
        s += &format!("  \"{a}\" -- \"{b}\";\n");
    }
    s += "}\n";
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn x_squared_decomposes() {
        let r = FusionRing::finite(5, 8).unwrap();
        let x = SimpleLabel::new(1, 1);
        let got = r.tensor_with_x(x).unwrap();
        assert_eq!(got, vec![SimpleLabel::new(0, 0), SimpleLabel::new(0, 2), SimpleLabel::new(2, 0), SimpleLabel::new(2, 2)]);
        assert_eq!(r.tensor_with_x(SimpleLabel::unit()).unwrap(), vec![x]);
        assert!(r.tensor_with_x(SimpleLabel::new(1, 0)).is_err());
    }

    #[test]
    fn rank_two_truncates() {
        let r = FusionRing::finite(2, 5).unwrap();
        let got = r.tensor_with_x(SimpleLabel::new(1, 1)).unwrap();
        assert_eq!(got, vec![SimpleLabel::new(0, 0), SimpleLabel::new(0, 2)]);
        assert!(FusionRing::finite(1, 3).is_err());
    }

    #[test]
    fn dot_has_all_vertices() {
        let r = FusionRing::finite(2, 2).unwrap();
        let dot = fusion_graph_dot(&r).unwrap();
        assert!(dot.contains("\"(0,0)\" -- \"(1,1)\""));
        assert!(fusion_graph_dot(&FusionRing::infinite()).is_err());
    }
}
