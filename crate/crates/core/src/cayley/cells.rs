//! Cell counts of the clique complex of a Cayley graph.

use super::graph::CayleyGraph;
use crate::error::{Error, Result};

/// `counts[i]` is the number of `i`-cells, i.e. complete subgraphs on
/// `i + 1` vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellCounts {
    pub counts: Vec<u64>,
}

/// Counts complete subgraphs of the undirected view with up to
/// `max_dim + 1` vertices, each vertex set once.
pub fn clique_cells(g: &CayleyGraph, max_dim: usize) -> Result<CellCounts> {
    if max_dim > g.d() {
        return Err(Error::Precondition(format!(
            "max_dim {max_dim} exceeds d = {}",
            g.d()
        )));
    }
    let (off, nb) = g.undirected_csr();
    let n = g.n();
    let mut counts = vec![0u64; max_dim + 1];
    counts[0] = n as u64;
    let mut scratch: Vec<Vec<u32>> = vec![Vec::new(); max_dim + 1];
    for u in 0..n {
        if max_dim == 0 {
            break;
        }
        let higher = &nb[off[u]..off[u + 1]];
        let start = higher.partition_point(|&v| (v as usize) <= u);
        scratch[1].clear();
        scratch[1].extend_from_slice(&higher[start..]);
        extend(&off, &nb, &mut scratch, 1, max_dim, &mut counts)?;
    }
    Ok(CellCounts { counts })
}

// scratch[level] holds the common higher neighbors of the current
// `level`-vertex clique; each is one new `level`-cell.
fn extend(
    off: &[usize],
    nb: &[u32],
    scratch: &mut [Vec<u32>],
    level: usize,
    max_dim: usize,
    counts: &mut [u64],
) -> Result<()> {
    counts[level] = counts[level]
        .checked_add(scratch[level].len() as u64)
        .ok_or(Error::Overflow("clique count"))?;
    if level == max_dim {
        return Ok(());
    }
    let cand = std::mem::take(&mut scratch[level]);
    for (i, &v) in cand.iter().enumerate() {
        let nv = &nb[off[v as usize]..off[v as usize + 1]];
        let next = &mut scratch[level + 1];
        next.clear();
        intersect_into(&cand[i + 1..], nv, next);
        if !next.is_empty() {
            extend(off, nb, scratch, level + 1, max_dim, counts)?;
        }
    }
    scratch[level] = cand;
    Ok(())
}

fn intersect_into(a: &[u32], b: &[u32], out: &mut Vec<u32>) {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
}
