//! One-dimensional Weisfeiler-Leman color refinement.

use rayon::prelude::*;
use sha2::{Digest, Sha256};

use super::{in_lists, AdjList, Adjacency};

/// Stable coloring summary. Equal certificates are necessary, not
/// sufficient, for isomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WlCertificate {
    pub rounds: usize,
    /// Color class sizes, descending.
    pub histogram: Vec<usize>,
    /// Hash of every round's signature table with class sizes.
    pub digest: String,
}

pub fn wl_certificate(g: &dyn Adjacency) -> WlCertificate {
    let sides = [Side::new(g)];
    let mut colors = vec![vec![0u32; g.order()]];
    let mut h = Sha256::new();
    let rounds = refine_joint(&sides, &mut colors, Some(&mut h)).expect("single graph never mismatches");
    let mut histogram = vec![0usize; colors[0].iter().max().map_or(0, |&m| m as usize + 1)];
    for &c in &colors[0] {
        histogram[c as usize] += 1;
    }
    histogram.sort_unstable_by(|a, b| b.cmp(a));
    WlCertificate {
        rounds,
        histogram,
        digest: hex::encode(&h.finalize()[..16]),
    }
}

pub(crate) struct Side<'a> {
    pub out: &'a dyn Adjacency,
    pub inn: AdjList,
}

impl<'a> Side<'a> {
    pub fn new(g: &'a dyn Adjacency) -> Side<'a> {
        Side { out: g, inn: in_lists(g) }
    }
}

#[inline]
fn mix(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

type Sig = (u32, u64, u64);

fn signatures(side: &Side, colors: &[u32]) -> Vec<Sig> {
    (0..colors.len())
        .into_par_iter()
        .map(|v| {
            let h = |nb: &[u32]| {
                nb.iter()
                    .fold(0u64, |acc, &w| acc.wrapping_add(mix(colors[w as usize] as u64)))
            };
            (colors[v], h(side.out.out_neighbors(v)), h(side.inn.out_neighbors(v)))
        })
        .collect()
}

/// Refines all sides in lockstep with a shared naming of colors until the
/// partition stops splitting. Returns the number of rounds, or `None` as
/// soon as two sides disagree on a class size.
///
/// New colors are ranks of (old color, neighbor-color multiset hashes) in
/// the joint sorted signature table, so the result is invariant under
/// relabeling. Hash collisions can only merge classes.
pub(crate) fn refine_joint(
    sides: &[Side],
    colors: &mut [Vec<u32>],
    mut trace: Option<&mut Sha256>,
) -> Option<usize> {
    let mut classes = {
        let mut all: Vec<u32> = colors.iter().flatten().copied().collect();
        all.sort_unstable();
        all.dedup();
        all.len()
    };
    let mut rounds = 0;
    loop {
        rounds += 1;
        let sigs: Vec<Vec<Sig>> = sides
            .iter()
            .zip(colors.iter())
            .map(|(s, c)| signatures(s, c))
            .collect();
        let mut table: Vec<Sig> = sigs.iter().flatten().copied().collect();
        table.par_sort_unstable();
        table.dedup();
        let mut counts = vec![vec![0usize; table.len()]; sides.len()];
        for (i, side_sigs) in sigs.iter().enumerate() {
            let new: Vec<u32> = side_sigs
                .par_iter()
                .map(|s| table.binary_search(s).expect("signature in table") as u32)
                .collect();
            for &c in &new {
                counts[i][c as usize] += 1;
            }
            colors[i] = new;
        }
        if counts.iter().any(|c| c != &counts[0]) {
            return None;
        }
        if let Some(h) = trace.as_deref_mut() {
            for (s, c) in table.iter().zip(&counts[0]) {
                h.update(s.0.to_le_bytes());
                h.update(s.1.to_le_bytes());
                h.update(s.2.to_le_bytes());
                h.update((*c as u64).to_le_bytes());
            }
        }
        if table.len() == classes {
            return Some(rounds);
        }
        classes = table.len();
    }
}
