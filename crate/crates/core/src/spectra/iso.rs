//! Exact isomorphism search by individualization and refinement.

use std::time::{Duration, Instant};

use super::wl::{refine_joint, Side};
use super::Adjacency;

#[derive(Clone, Debug)]
pub struct IsoBudget {
    pub max_nodes: u64,
    pub time_limit: Duration,
}

impl Default for IsoBudget {
    fn default() -> Self {
        IsoBudget {
            max_nodes: 100_000,
            time_limit: Duration::from_secs(600),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoOutcome {
    /// Witness: vertex `v` of the first graph maps to `map[v]`.
    Isomorphic(Vec<u32>),
    NonIsomorphic,
    Timeout { nodes: u64 },
}

enum Step {
    Found(Vec<u32>),
    Fail,
    Timeout,
}

struct Search<'a> {
    sides: [Side<'a>; 2],
    budget: IsoBudget,
    start: Instant,
    nodes: u64,
    transitive: bool,
}

/// Searches for a directed multigraph isomorphism `a -> b`.
///
/// With `vertex_transitive` set (true for Cayley graphs) the first
/// individualized vertex of `a` is only tried against one vertex of `b`.
pub fn find_isomorphism(
    a: &dyn Adjacency,
    b: &dyn Adjacency,
    vertex_transitive: bool,
    budget: &IsoBudget,
) -> IsoOutcome {
    if a.order() != b.order() || a.edge_count() != b.edge_count() {
        return IsoOutcome::NonIsomorphic;
    }
    let mut s = Search {
        sides: [Side::new(a), Side::new(b)],
        budget: budget.clone(),
        start: Instant::now(),
        nodes: 0,
        transitive: vertex_transitive,
    };
    let n = a.order();
    match s.node(vec![vec![0; n], vec![0; n]], 0) {
        Step::Found(m) => IsoOutcome::Isomorphic(m),
        Step::Fail => IsoOutcome::NonIsomorphic,
        Step::Timeout => IsoOutcome::Timeout { nodes: s.nodes },
    }
}

impl Search<'_> {
    fn node(&mut self, mut colors: Vec<Vec<u32>>, depth: usize) -> Step {
        self.nodes += 1;
        if self.nodes > self.budget.max_nodes || self.start.elapsed() > self.budget.time_limit {
            return Step::Timeout;
        }
        if refine_joint(&self.sides, &mut colors, None).is_none() {
            return Step::Fail;
        }
        let n = colors[0].len();
        let k = colors[0].iter().max().map_or(0, |&m| m as usize + 1);
        let mut size = vec![0usize; k];
        for &c in &colors[0] {
            size[c as usize] += 1;
        }
        let target = (0..k)
            .filter(|&c| size[c] > 1)
            .min_by_key(|&c| (size[c], c));
        let Some(target) = target else {
            let mut by_color = vec![0u32; k];
            for (w, &c) in colors[1].iter().enumerate() {
                by_color[c as usize] = w as u32;
            }
            let map: Vec<u32> = colors[0].iter().map(|&c| by_color[c as usize]).collect();
            return if self.verify(&map) { Step::Found(map) } else { Step::Fail };
        };
        let t = target as u32;
        let v = (0..n).find(|&v| colors[0][v] == t).unwrap();
        let mut cands: Vec<usize> = (0..n).filter(|&w| colors[1][w] == t).collect();
        if depth == 0 && self.transitive {
            cands.truncate(1);
        }
        let fresh = k as u32;
        for w in cands {
            let mut next = colors.clone();
            next[0][v] = fresh;
            next[1][w] = fresh;
            match self.node(next, depth + 1) {
                Step::Fail => {}
                other => return other,
            }
        }
        Step::Fail
    }

    fn verify(&self, map: &[u32]) -> bool {
        let (a, b) = (self.sides[0].out, self.sides[1].out);
        (0..a.order()).all(|u| {
            let mut x: Vec<u32> = a.out_neighbors(u).iter().map(|&v| map[v as usize]).collect();
            let mut y = b.out_neighbors(map[u] as usize).to_vec();
            x.sort_unstable();
            y.sort_unstable();
            x == y
        })
    }
}
