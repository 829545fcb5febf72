//! Cayley graphs of subgroups of `PGL_d(F_q)` built by breadth-first search.

use rayon::prelude::*;
use rustc_hash::FxHashMap;

use super::projmat::{canonicalize, check_packable, pack, unpack_into, ProjMat};
use crate::error::{Error, Result};
use crate::ff::{Field, Mat};

/// Vertices expanded per parallel batch.
const BATCH: usize = 1 << 14;

/// Right-multiplication Cayley graph `g -> g s`.
///
/// Vertex 0 is the identity; vertices are numbered in BFS discovery order
/// with generators applied in slot order. Each vertex has exactly `r`
/// out-edges stored in slot order; slot `i` carries generator `gen_ids[i]`
/// of the originating generator list and its color.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyGraph {
    pub(crate) q: u32,
    pub(crate) d: usize,
    pub(crate) r: usize,
    pub(crate) keys: Vec<u128>,
    pub(crate) adj: Vec<u32>,
    pub(crate) gen_ids: Vec<u32>,
    pub(crate) colors: Vec<u8>,
    pub(crate) symmetric: bool,
}

impl CayleyGraph {
    /// Closure of the identity under right multiplication by `gens`.
    /// Fails with [`Error::MaxVertices`] once more than `max_vertices`
    /// vertices are discovered; no partial graph is returned.
    pub fn build(
        f: &Field,
        gens: &[ProjMat],
        colors: &[u8],
        max_vertices: usize,
    ) -> Result<CayleyGraph> {
        if gens.is_empty() {
            return Err(Error::invalid("empty generator list"));
        }
        if colors.len() != gens.len() {
            return Err(Error::invalid("one color per generator required"));
        }
        let d = gens[0].dim();
        if gens.iter().any(|g| g.dim() != d) {
            return Err(Error::invalid("generators of mixed dimension"));
        }
        let q = f.q();
        check_packable(q, d)?;
        let r = gens.len();
        let dd = d * d;
        let gen_entries: Vec<u8> = gens.iter().flat_map(|g| g.mat().entries().to_vec()).collect();

        let id = Mat::identity(d);
        let mut keys = vec![pack(id.entries(), q)];
        let mut mats: Vec<u8> = id.entries().to_vec();
        let mut index: FxHashMap<u128, u32> = FxHashMap::default();
        index.insert(keys[0], 0);
        let mut adj: Vec<u32> = Vec::new();

        let mut head = 0;
        let mut prod_keys = vec![0u128; BATCH * r];
        let mut prod_mats = vec![0u8; BATCH * r * dd];
        while head < keys.len() {
            let end = keys.len().min(head + BATCH);
            let m = end - head;
            {
                let src = &mats[head * dd..end * dd];
                prod_keys[..m * r]
                    .par_chunks_mut(r)
                    .zip(prod_mats[..m * r * dd].par_chunks_mut(r * dd))
                    .enumerate()
                    .for_each(|(i, (ks, ms))| {
                        let a = &src[i * dd..(i + 1) * dd];
                        for g in 0..r {
                            let out = &mut ms[g * dd..(g + 1) * dd];
                            f.mat_mul_into(d, a, &gen_entries[g * dd..(g + 1) * dd], out);
                            canonicalize(f, out);
                            ks[g] = pack(out, q);
                        }
                    });
            }
            for (i, &k) in prod_keys[..m * r].iter().enumerate() {
                let next = keys.len() as u32;
                let v = *index.entry(k).or_insert(next);
                if v == next {
                    if keys.len() >= max_vertices {
                        return Err(Error::MaxVertices(max_vertices));
                    }
                    keys.push(k);
                    mats.extend_from_slice(&prod_mats[i * dd..(i + 1) * dd]);
                }
                adj.push(v);
            }
            head = end;
        }

        let gen_keys: rustc_hash::FxHashSet<u128> = gens.iter().map(|g| g.key(q)).collect();
        let symmetric = gens.iter().all(|g| gen_keys.contains(&g.inv(f).key(q)));
        Ok(CayleyGraph {
            q,
            d,
            r,
            keys,
            adj,
            gen_ids: (0..r as u32).collect(),
            colors: colors.to_vec(),
            symmetric,
        })
    }

    pub fn n(&self) -> usize {
        self.keys.len()
    }

    /// Out-degree.
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    /// Every vertex is reachable from the identity by construction.
    pub fn is_connected(&self) -> bool {
        true
    }

    pub fn key(&self, v: usize) -> u128 {
        self.keys[v]
    }

    pub fn keys(&self) -> &[u128] {
        &self.keys
    }

    pub fn vertex(&self, v: usize) -> ProjMat {
        ProjMat::from_key(self.keys[v], self.d, self.q)
    }

    pub fn out_neighbors(&self, u: usize) -> &[u32] {
        &self.adj[u * self.r..(u + 1) * self.r]
    }

    pub fn adjacency(&self) -> &[u32] {
        &self.adj
    }

    pub fn slot_generators(&self) -> &[u32] {
        &self.gen_ids
    }

    pub fn slot_colors(&self) -> &[u8] {
        &self.colors
    }

    pub fn index_of(&self) -> FxHashMap<u128, u32> {
        self.keys
            .iter()
            .enumerate()
            .map(|(i, &k)| (k, i as u32))
            .collect()
    }

    /// Decode vertex `v` into `out` (length `d^2`).
    pub fn vertex_entries(&self, v: usize, out: &mut [u8]) {
        unpack_into(self.keys[v], self.q, out);
    }

    /// Same vertices, only the out-edges whose color is in `colors`.
    pub fn colored_subgraph(&self, colors: &[u8]) -> Result<CayleyGraph> {
        if colors.is_empty() {
            return Err(Error::invalid("empty color set"));
        }
        let slots: Vec<usize> = (0..self.r)
            .filter(|&s| colors.contains(&self.colors[s]))
            .collect();
        let r = slots.len();
        let mut adj = Vec::with_capacity(self.n() * r);
        for u in 0..self.n() {
            let nb = self.out_neighbors(u);
            adj.extend(slots.iter().map(|&s| nb[s]));
        }
        let mut g = CayleyGraph {
            q: self.q,
            d: self.d,
            r,
            keys: self.keys.clone(),
            adj,
            gen_ids: slots.iter().map(|&s| self.gen_ids[s]).collect(),
            colors: slots.iter().map(|&s| self.colors[s]).collect(),
            symmetric: false,
        };
        g.symmetric = g.edges_symmetric();
        Ok(g)
    }

    /// Exhaustive check that `u -> v` implies `v -> u`, with multiplicity.
    pub fn edges_symmetric(&self) -> bool {
        let sorted = self.sorted_out_lists();
        (0..self.n()).all(|u| {
            let nb = &sorted[u * self.r..(u + 1) * self.r];
            let mut i = 0;
            while i < nb.len() {
                let v = nb[i];
                let mut j = i;
                while j < nb.len() && nb[j] == v {
                    j += 1;
                }
                let back = &sorted[v as usize * self.r..(v as usize + 1) * self.r];
                let lo = back.partition_point(|&x| (x as usize) < u);
                let hi = back.partition_point(|&x| (x as usize) <= u);
                if hi - lo != j - i {
                    return false;
                }
                i = j;
            }
            true
        })
    }

    fn sorted_out_lists(&self) -> Vec<u32> {
        let mut s = self.adj.clone();
        s.par_chunks_mut(self.r.max(1)).for_each(|c| c.sort_unstable());
        s
    }

    /// Undirected simple graph view in CSR form: `(offsets, neighbors)`,
    /// neighbor lists sorted, self-loops and repeated edges dropped.
    pub fn undirected_csr(&self) -> (Vec<usize>, Vec<u32>) {
        let n = self.n();
        let mut lists: Vec<Vec<u32>> = (0..n)
            .map(|u| self.out_neighbors(u).to_vec())
            .collect();
        if !self.symmetric {
            for u in 0..n {
                for s in 0..self.r {
                    let v = self.adj[u * self.r + s] as usize;
                    lists[v].push(u as u32);
                }
            }
        }
        let mut offsets = Vec::with_capacity(n + 1);
        let mut nbrs = Vec::new();
        offsets.push(0);
        for (u, mut l) in lists.into_iter().enumerate() {
            l.sort_unstable();
            l.dedup();
            l.retain(|&v| v as usize != u);
            nbrs.extend_from_slice(&l);
            offsets.push(nbrs.len());
        }
        (offsets, nbrs)
    }
}
