//! Closed-walk counts `N_k`: the number of length-`k` generator words whose
//! product is the identity.

use std::fmt::Write as _;
use std::path::Path;

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::cayley::projmat::{canonicalize, check_packable, pack, unpack_into};
use crate::cayley::{CayleyGraph, ProjMat};
use crate::error::{Error, Result};
use crate::ff::field::{get, join_ints, parse_ints, parse_kv};
use crate::ff::Field;
use crate::files::write_string_atomic;
use crate::forge::{expected_group_order, GenSet};

/// 4 GiB.
pub const DEFAULT_MEM_BUDGET: u64 = 4 << 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Word counts per group element over the whole enumerated group.
    GroupDp,
    /// Join of two balls of radius about `K/2`.
    BallMitm,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::GroupDp => "group-dp",
            Strategy::BallMitm => "ball-mitm",
        }
    }

    pub fn parse(s: &str) -> Result<Strategy> {
        match s {
            "group-dp" => Ok(Strategy::GroupDp),
            "ball-mitm" => Ok(Strategy::BallMitm),
            _ => Err(Error::invalid(format!("unknown strategy {s:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct MomentOptions {
    pub max_vertices: usize,
    pub mem_budget: u64,
}

impl Default for MomentOptions {
    fn default() -> Self {
        MomentOptions {
            max_vertices: 10_000_000,
            mem_budget: DEFAULT_MEM_BUDGET,
        }
    }
}

/// Exact walk moments `N_0..=N_K` of a generator multiset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentSeq {
    pub genset: String,
    /// `None` means all colors.
    pub colors: Option<Vec<u8>>,
    pub counts: Vec<u128>,
}

impl MomentSeq {
    pub fn k_max(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn to_text(&self) -> String {
        let colors = match &self.colors {
            None => "all".to_string(),
            Some(c) => join_ints(&c.iter().map(|&x| x as u32).collect::<Vec<_>>()),
        };
        let mut s = format!(
            "version=1 genset={} colors={colors} K={}\n",
            self.genset,
            self.k_max()
        );
        for (k, n) in self.counts.iter().enumerate() {
            writeln!(s, "{k} {n}").expect("string write");
        }
        s
    }

    pub fn from_text(text: &str) -> Result<MomentSeq> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::format("empty moment file"))?;
        let kv = parse_kv(header);
        let get = |k: &str| get(&kv, k);
        if get("version")? != "1" {
            return Err(Error::format("unsupported moment file version"));
        }
        let k: usize = get("K")?.parse().map_err(|_| Error::format("bad K"))?;
        let colors = match get("colors")? {
            "all" => None,
            c => Some(parse_ints(c)?.into_iter().map(|x| x as u8).collect()),
        };
        let mut counts = Vec::with_capacity(k + 1);
        for line in lines {
            let mut it = line.split_whitespace();
            let (Some(i), Some(n), None) = (it.next(), it.next(), it.next()) else {
                return Err(Error::format(format!("bad moment line {line:?}")));
            };
            if i.parse::<usize>().ok() != Some(counts.len()) {
                return Err(Error::format(format!("moment lines out of order at {line:?}")));
            }
            counts.push(n.parse().map_err(|_| Error::format(format!("bad count {n:?}")))?);
        }
        if counts.len() != k + 1 {
            return Err(Error::format(format!(
                "expected {} moment lines, found {}",
                k + 1,
                counts.len()
            )));
        }
        Ok(MomentSeq {
            genset: get("genset")?.to_string(),
            colors,
            counts,
        })
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        write_string_atomic(path, &self.to_text())
    }

    pub fn read(path: &Path) -> Result<MomentSeq> {
        Self::from_text(&std::fs::read_to_string(path)?)
    }
}

/// Walk moments of `gens` (restricted to `colors` if given) up to `k`.
pub fn walk_moments(
    gens: &GenSet,
    k: usize,
    strategy: Strategy,
    colors: Option<&[u8]>,
    opts: &MomentOptions,
) -> Result<MomentSeq> {
    let selected: Vec<usize> = (0..gens.len())
        .filter(|&i| colors.is_none_or(|c| c.contains(&gens.get(i).color)))
        .collect();
    if selected.is_empty() {
        return Err(Error::invalid("no generators of the requested colors"));
    }
    let counts = match strategy {
        Strategy::GroupDp => {
            let order = expected_group_order(gens.params());
            let per_vertex = (gens.len() * 4 + 16 + 48) as u64;
            let needed = order * BigUint::from(per_vertex);
            let needed = u64::try_from(&needed).unwrap_or(u64::MAX);
            if needed > opts.mem_budget {
                return Err(Error::MemoryBudget {
                    needed,
                    budget: opts.mem_budget,
                    hint: "group-dp stores the whole group; use ball-mitm".into(),
                });
            }
            let g = CayleyGraph::build(gens.field(), &gens.projs(), &gens.colors(), opts.max_vertices)?;
            group_dp(&g, &vec![selected; k])?
        }
        Strategy::BallMitm => {
            let projs: Vec<ProjMat> = selected.iter().map(|&i| gens.get(i).proj.clone()).collect();
            ball_mitm(gens.field(), &projs, k, opts.mem_budget)?
        }
    };
    let mut colors = colors.map(|c| c.to_vec());
    if let Some(c) = &mut colors {
        c.sort_unstable();
        c.dedup();
    }
    Ok(MomentSeq {
        genset: gens.hash(),
        colors,
        counts,
    })
}

/// Counts of words `w_1 .. w_j` with `w_i` drawn from the generator slots
/// `steps[i-1]` of `g` and product the identity, for `j = 0..=steps.len()`.
pub fn group_dp(g: &CayleyGraph, steps: &[Vec<usize>]) -> Result<Vec<u128>> {
    let n = g.n();
    let r = g.r();
    let adj = g.adjacency();
    // inverse slot of each generator slot, read off at the identity
    let inv: Vec<Option<usize>> = (0..r)
        .map(|i| {
            let v = adj[i] as usize;
            (0..r).find(|&j| adj[v * r + j] == 0)
        })
        .collect();
    let pull = steps.iter().flatten().all(|&i| inv[i].is_some());

    let mut f = vec![0u128; n];
    f[0] = 1;
    let mut out = vec![1u128];
    for slots in steps {
        if slots.iter().any(|&i| i >= r) {
            return Err(Error::invalid("generator slot out of range"));
        }
        let next = if pull {
            let back: Vec<usize> = slots.iter().map(|&i| inv[i].unwrap()).collect();
            (0..n)
                .into_par_iter()
                .map(|h| {
                    back.iter().try_fold(0u128, |acc, &j| {
                        acc.checked_add(f[adj[h * r + j] as usize])
                    })
                })
                .collect::<Option<Vec<u128>>>()
                .ok_or(Error::Overflow("walk moments"))?
        } else {
            let mut next = vec![0u128; n];
            for (u, &c) in f.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for &i in slots {
                    let v = adj[u * r + i] as usize;
                    next[v] = next[v].checked_add(c).ok_or(Error::Overflow("walk moments"))?;
                }
            }
            next
        };
        f = next;
        out.push(f[0]);
    }
    Ok(out)
}

/// Number of identity words whose `i`-th letter has color `pattern[i]`.
pub fn pattern_moment(g: &CayleyGraph, pattern: &[u8]) -> Result<u128> {
    let steps: Vec<Vec<usize>> = pattern
        .iter()
        .map(|&c| (0..g.r()).filter(|&s| g.slot_colors()[s] == c).collect())
        .collect();
    Ok(*group_dp(g, &steps)?.last().unwrap())
}

type Ball = Vec<(u128, u64)>;

fn ball_mitm(f: &Field, gens: &[ProjMat], k: usize, budget: u64) -> Result<Vec<u128>> {
    let d = gens[0].dim();
    check_packable(f.q(), d)?;
    let inv: Vec<ProjMat> = gens.iter().map(|g| g.inv(f)).collect();
    let mut a: Vec<u128> = gens.iter().map(|g| g.key(f.q())).collect();
    let mut b: Vec<u128> = inv.iter().map(|g| g.key(f.q())).collect();
    a.sort_unstable();
    b.sort_unstable();
    let symmetric = a == b;

    let radius = k.div_ceil(2);
    let mut used = 0u64;
    let fwd = balls(f, gens, radius, budget, &mut used)?;
    let bwd = if symmetric {
        None
    } else {
        Some(balls(f, &inv, k / 2, budget, &mut used)?)
    };
    let bwd = bwd.as_ref().unwrap_or(&fwd);

    (0..=k)
        .map(|j| join(&fwd[j.div_ceil(2)], &bwd[j / 2]))
        .collect()
}

/// `sum_g c_a(g) c'_b(g)` over keys present in both sorted balls.
fn join(x: &Ball, y: &Ball) -> Result<u128> {
    let (mut i, mut j) = (0, 0);
    let mut total = 0u128;
    while i < x.len() && j < y.len() {
        match x[i].0.cmp(&y[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                total = total
                    .checked_add(x[i].1 as u128 * y[j].1 as u128)
                    .ok_or(Error::Overflow("ball join"))?;
                i += 1;
                j += 1;
            }
        }
    }
    Ok(total)
}

/// Word-count maps of lengths `0..=radius`, each sorted by key.
fn balls(f: &Field, gens: &[ProjMat], radius: usize, budget: u64, used: &mut u64) -> Result<Vec<Ball>> {
    let q = f.q();
    let d = gens[0].dim();
    let dd = d * d;
    let r = gens.len();
    let gen_entries: Vec<u8> = gens.iter().flat_map(|g| g.mat().entries().to_vec()).collect();
    let entry = std::mem::size_of::<(u128, u64)>() as u64;

    let mut layers = vec![vec![(ProjMat::identity(d).key(q), 1u64)]];
    for a in 1..=radius {
        let prev = layers.last().unwrap();
        let needed = *used + prev.len() as u64 * r as u64 * entry;
        if needed > budget {
            return Err(Error::MemoryBudget {
                needed,
                budget,
                hint: format!("ball of radius {a} over {r} generators; lower K"),
            });
        }
        let mut prods: Ball = vec![(0, 0); prev.len() * r];
        prods
            .par_chunks_mut(r)
            .zip(prev.par_iter())
            .for_each_init(
                || (vec![0u8; dd], vec![0u8; dd]),
                |(src, dst), (out, &(key, c))| {
                    unpack_into(key, q, src);
                    for (s, o) in out.iter_mut().enumerate() {
                        f.mat_mul_into(d, src, &gen_entries[s * dd..(s + 1) * dd], dst);
                        canonicalize(f, dst);
                        *o = (pack(dst, q), c);
                    }
                },
            );
        prods.par_sort_unstable_by_key(|e| e.0);
        let mut merged: Ball = Vec::with_capacity(prods.len() / 2 + 1);
        for (key, c) in prods {
            match merged.last_mut() {
                Some(last) if last.0 == key => {
                    last.1 = last.1.checked_add(c).ok_or(Error::Overflow("ball counts"))?;
                }
                _ => merged.push((key, c)),
            }
        }
        merged.shrink_to_fit();
        *used += merged.len() as u64 * entry;
        layers.push(merged);
    }
    Ok(layers)
}
