//! Walk moments, dense spectra, Weisfeiler-Leman certificates,
//! isomorphism search and comparison reports.

mod compare;
mod dense;
mod iso;
mod moments;
mod wl;

pub use compare::{
    compare, compare_graphs, compare_moments, compare_spectra, Comparable, CompareMode,
    ComparisonReport, Verdict,
};
pub use dense::{dense_spectrum, dense_spectrum_of, SpectrumReport, DEFAULT_DENSE_CAP};
pub use iso::{find_isomorphism, IsoBudget, IsoOutcome};
pub use moments::{
    group_dp, pattern_moment, walk_moments, MomentOptions, MomentSeq, Strategy,
    DEFAULT_MEM_BUDGET,
};
pub use wl::{wl_certificate, WlCertificate};

use crate::cayley::CayleyGraph;

/// A directed multigraph given by out-neighbor lists.
pub trait Adjacency: Sync {
    fn order(&self) -> usize;
    fn out_neighbors(&self, u: usize) -> &[u32];

    fn edge_count(&self) -> usize {
        (0..self.order()).map(|u| self.out_neighbors(u).len()).sum()
    }

    /// Out-degree if all vertices share one.
    fn regular_degree(&self) -> Option<usize> {
        let r = self.out_neighbors(0).len();
        (1..self.order())
            .all(|u| self.out_neighbors(u).len() == r)
            .then_some(r)
    }
}

impl Adjacency for CayleyGraph {
    fn order(&self) -> usize {
        self.n()
    }

    fn out_neighbors(&self, u: usize) -> &[u32] {
        CayleyGraph::out_neighbors(self, u)
    }

    fn regular_degree(&self) -> Option<usize> {
        Some(self.r())
    }
}

/// Plain adjacency lists, for graphs that are not matrix Cayley graphs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjList {
    offsets: Vec<usize>,
    nbrs: Vec<u32>,
}

impl AdjList {
    pub fn from_lists(lists: &[Vec<u32>]) -> AdjList {
        let mut offsets = vec![0];
        let mut nbrs = Vec::new();
        for l in lists {
            nbrs.extend_from_slice(l);
            offsets.push(nbrs.len());
        }
        AdjList { offsets, nbrs }
    }

    /// Cayley graph of `Z/n` with connection multiset `conn`.
    pub fn circulant(n: usize, conn: &[i64]) -> AdjList {
        let lists: Vec<Vec<u32>> = (0..n)
            .map(|u| {
                conn.iter()
                    .map(|&c| (u as i64 + c).rem_euclid(n as i64) as u32)
                    .collect()
            })
            .collect();
        AdjList::from_lists(&lists)
    }

    /// Same graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[u32]) -> AdjList {
        let n = self.order();
        let mut lists = vec![Vec::new(); n];
        for u in 0..n {
            lists[perm[u] as usize] = self.out_neighbors(u).iter().map(|&v| perm[v as usize]).collect();
        }
        AdjList::from_lists(&lists)
    }
}

impl Adjacency for AdjList {
    fn order(&self) -> usize {
        self.offsets.len() - 1
    }

    fn out_neighbors(&self, u: usize) -> &[u32] {
        &self.nbrs[self.offsets[u]..self.offsets[u + 1]]
    }
}

pub(crate) fn in_lists(g: &dyn Adjacency) -> AdjList {
    let n = g.order();
    let mut lists = vec![Vec::new(); n];
    for u in 0..n {
        for &v in g.out_neighbors(u) {
            lists[v as usize].push(u as u32);
        }
    }
    AdjList::from_lists(&lists)
}
