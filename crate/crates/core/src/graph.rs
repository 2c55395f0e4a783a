//! Simply-laced Coxeter graphs.
//!
//! Vertices are labelled `1..=n`, vertex `i` standing for the generator `s_i`;
//! an edge joins `s` and `s'` exactly when `m(s, s') = 3`. Internally vertex
//! `i` is bit `i - 1` of every packed vector.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::MAX_DIM;

/// The named Dynkin families with closed-form orbit descriptions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    D,
    E,
}

impl Family {
    /// Smallest rank the family is defined for.
    pub fn min_rank(self) -> usize {
        match self {
            Family::A => 1,
            Family::D => 4,
            Family::E => 6,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Family::A => "A",
            Family::D => "D",
            Family::E => "E",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(Family::A),
            "D" | "d" => Ok(Family::D),
            "E" | "e" => Ok(Family::E),
            other => Err(Error::Parse(format!("unknown family {other:?} (expected A, D or E)"))),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CoxeterGraph {
    n: usize,
    /// Normalized `(u, v)` with `u < v`, sorted.
    edges: Vec<(usize, usize)>,
    family: Option<Family>,
    /// `adjacency[i]` has bit `j` set iff vertices `i+1` and `j+1` are adjacent.
    adjacency: Vec<u64>,
}

impl CoxeterGraph {
    /// The Dynkin graph of `family` with `n` vertices: a path `1 - 2 - ... - n`
    /// for A, the path up to `n-1` with `n` hung on `n-2` for D, and the path
    /// up to `n-1` with `n` hung on `n-3` for E.
    pub fn build_family(family: Family, n: usize) -> Result<Self> {
        if n < family.min_rank() {
            return Err(Error::Range(format!(
                "{family}_{n}: rank must be at least {}",
                family.min_rank()
            )));
        }
        if n > MAX_DIM {
            return Err(Error::Range(format!("{family}_{n}: rank exceeds {MAX_DIM}")));
        }
        let edges: Vec<(usize, usize)> = match family {
            Family::A => (1..n).map(|i| (i, i + 1)).collect(),
            Family::D => (1..n - 1)
                .map(|i| (i, i + 1))
                .chain(std::iter::once((n - 2, n)))
                .collect(),
            Family::E => (1..n - 1)
                .map(|i| (i, i + 1))
                .chain(std::iter::once((n - 3, n)))
                .collect(),
        };
        let mut g = Self::from_validated(n, edges);
        g.family = Some(family);
        Ok(g)
    }

    pub fn build_custom(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 || n > MAX_DIM {
            return Err(Error::Validation(format!("vertex count {n} not in 1..={MAX_DIM}")));
        }
        let mut seen = BTreeSet::new();
        for &(u, v) in edges {
            if u == v {
                return Err(Error::Validation(format!("self-loop at vertex {u}")));
            }
            for w in [u, v] {
                if w == 0 || w > n {
                    return Err(Error::Validation(format!("endpoint {w} not in 1..={n}")));
                }
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::Validation(format!("duplicate edge {{{u}, {v}}}")));
            }
        }
        Ok(Self::from_validated(n, seen.into_iter().collect()))
    }

    fn from_validated(n: usize, mut edges: Vec<(usize, usize)>) -> Self {
        edges.sort_unstable();
        let mut adjacency = vec![0u64; n];
        for &(u, v) in &edges {
            adjacency[u - 1] |= 1 << (v - 1);
            adjacency[v - 1] |= 1 << (u - 1);
        }
        Self {
            n,
            edges,
            family: None,
            adjacency,
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn family(&self) -> Option<Family> {
        self.family
    }

    pub fn check_vertex(&self, s: usize) -> Result<()> {
        if s == 0 || s > self.n {
            return Err(Error::Range(format!("vertex {s} not in 1..={}", self.n)));
        }
        Ok(())
    }

    /// Neighbours of vertex `s`, ascending.
    pub fn neighbors(&self, s: usize) -> Result<Vec<usize>> {
        self.check_vertex(s)?;
        let mut bits = self.adjacency[s - 1];
        let mut out = Vec::with_capacity(bits.count_ones() as usize);
        while bits != 0 {
            out.push(bits.trailing_zeros() as usize + 1);
            bits &= bits - 1;
        }
        Ok(out)
    }

    /// Packed neighbour set of vertex `s` (bit `u - 1` for neighbour `u`).
    pub fn neighbor_mask(&self, s: usize) -> Result<u64> {
        self.check_vertex(s)?;
        Ok(self.adjacency[s - 1])
    }

    #[inline]
    pub(crate) fn adjacency(&self) -> &[u64] {
        &self.adjacency
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u >= 1 && u <= self.n && v >= 1 && v <= self.n && (self.adjacency[u - 1] >> (v - 1)) & 1 == 1
    }

    pub fn is_connected(&self) -> bool {
        let mut reached = 1u64;
        let mut frontier = 1u64;
        while frontier != 0 {
            let mut next = 0u64;
            let mut bits = frontier;
            while bits != 0 {
                next |= self.adjacency[bits.trailing_zeros() as usize];
                bits &= bits - 1;
            }
            frontier = next & !reached;
            reached |= next;
        }
        reached == crate::gf2::low_mask(self.n)
    }

    /// The subgraph induced on `subset`, relabelled `1..=|subset|` in
    /// ascending order of the original labels.
    pub fn induced_subgraph(&self, subset: &[usize]) -> Result<CoxeterGraph> {
        let mut verts: Vec<usize> = subset.to_vec();
        verts.sort_unstable();
        verts.dedup();
        if verts.is_empty() {
            return Err(Error::Range("empty vertex subset".into()));
        }
        for &v in &verts {
            self.check_vertex(v)?;
        }
        let edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .filter_map(|&(u, v)| {
                let a = verts.binary_search(&u).ok()?;
                let b = verts.binary_search(&v).ok()?;
                Some((a + 1, b + 1))
            })
            .collect();
        CoxeterGraph::build_custom(verts.len(), &edges)
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            n: self.n,
            edges: Some(self.edges.iter().map(|&(u, v)| [u, v]).collect()),
            family: self
                .family
                .map_or_else(|| "custom".to_string(), |f| f.as_str().to_string()),
        }
    }

    /// Validates the exchange form. A family tag with an explicit edge list
    /// must describe exactly the family's graph.
    pub fn from_json(json: &GraphJson) -> Result<Self> {
        let edges: Option<Vec<(usize, usize)>> = json
            .edges
            .as_ref()
            .map(|es| es.iter().map(|e| (e[0], e[1])).collect());
        match json.family.as_str() {
            "custom" | "Custom" => Self::build_custom(json.n, edges.as_deref().unwrap_or(&[])),
            tag => {
                let family: Family = tag.parse()?;
                let g = Self::build_family(family, json.n)?;
                if let Some(edges) = edges {
                    let given = Self::build_custom(json.n, &edges)?;
                    if given.edges != g.edges {
                        return Err(Error::Validation(format!(
                            "edge list does not match {family}_{}",
                            json.n
                        )));
                    }
                }
                Ok(g)
            }
        }
    }
}

impl fmt::Debug for CoxeterGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Some(fam) => write!(f, "CoxeterGraph({fam}_{})", self.n),
            None => write!(f, "CoxeterGraph(n={}, edges={:?})", self.n, self.edges),
        }
    }
}

/// Exchange form: `{"n": 4, "edges": [[1,2],[2,3],[2,4]], "family": "D"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<[usize; 2]>>,
    #[serde(default = "custom_tag")]
    pub family: String,
}

fn custom_tag() -> String {
    "custom".to_string()
}
