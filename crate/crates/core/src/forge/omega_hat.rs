//! `Omega-hat`: all proper prefix products of length-`d` words over
//! `Omega` that multiply to the identity.
//!
//! Identity words are found in the finite quotient by meet-in-the-middle
//! (prefixes of length `ceil(d/2)` joined with inverted suffix products on
//! the projective key) and each candidate is then checked globally: the
//! product of the lifts must be a scalar in `F_q(t)^x`. Candidates that
//! pass only in the quotient are counted and discarded.

use rayon::prelude::*;
use rustc_hash::FxHashMap;

use super::genset::{GenSet, Generator, Kind};
use super::subspace::color_of;
use crate::cayley::projmat::{canonicalize, pack};
use crate::cayley::ProjMat;
use crate::cyclic::{CycAlg, CycElem};
use crate::error::{Error, Result};
use crate::ff::{gaussian_binomial, Field, Mat};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MitmReport {
    pub prefix_len: usize,
    pub suffix_len: usize,
    /// Words that are the identity in the finite quotient.
    pub candidates: u64,
    /// Candidates confirmed globally.
    pub verified: u64,
    /// Candidates rejected by the global check.
    pub rejected: u64,
    pub estimated_bytes: u64,
}

/// Rough peak memory of [`build_omega_hat`] in bytes, or `None` if it
/// does not fit in 64 bits.
pub fn omega_hat_memory_estimate(n: usize, d: usize, q: u32) -> Option<u64> {
    let b = (d / 2) as u32;
    let suffixes = (n as u64).checked_pow(b)?;
    // identity words = complete flags = prod_{i=1..d} (q^i - 1)/(q - 1)
    let mut flags: u64 = 1;
    for i in 1..=d as u32 {
        flags = flags.checked_mul(((q as u64).checked_pow(i)? - 1) / (q as u64 - 1))?;
    }
    let table = suffixes.checked_mul(24)?;
    let words = flags.checked_mul(4 * d as u64 + 48)?;
    table.checked_add(words)?.checked_add(64 << 20)
}

pub fn build_omega_hat(omega: &GenSet, memory_budget: u64) -> Result<(GenSet, MitmReport)> {
    if omega.kind() != Kind::Omega {
        return Err(Error::Precondition("Omega-hat is built from an Omega set".into()));
    }
    let params = omega.params();
    let f = params.field().clone();
    let q = params.q();
    let d = params.d();
    let n = omega.len();
    let a = d.div_ceil(2);
    let b = d - a;
    let lifts: Vec<CycElem> = omega
        .generators()
        .iter()
        .map(|g| {
            g.lift
                .clone()
                .ok_or_else(|| Error::Precondition("Omega-hat needs global lifts".into()))
        })
        .collect::<Result<_>>()?;

    let estimate = omega_hat_memory_estimate(n, d, q).unwrap_or(u64::MAX);
    if estimate > memory_budget {
        return Err(Error::MemoryBudget {
            needed: estimate,
            budget: memory_budget,
            hint: "raise the memory budget or use the Omega-bar set".into(),
        });
    }
    if (n as u64).pow(b as u32) > u32::MAX as u64 {
        return Err(Error::MemoryBudget {
            needed: estimate,
            budget: memory_budget,
            hint: "suffix table index exceeds 32 bits".into(),
        });
    }

    // (1+t) * omega is polynomial; the scale is central, so a word is a
    // global identity iff the product of scaled lifts is central.
    let one_t = CycAlg::norm_constant();
    let scaled: Vec<CycElem> = lifts.iter().map(|l| l.scale(&one_t)).collect();

    let mats: Vec<&Mat> = omega.generators().iter().map(|g| &g.mat).collect();
    let dd = d * d;

    // suffix table: key of (s_1 ... s_b)^{-1} -> suffix code
    let mut table: Vec<(u128, u32)> = Vec::with_capacity(n.pow(b as u32));
    for code in 0..n.pow(b as u32) {
        let word = decode(code as u64, n, b);
        let mut m = Mat::identity(d);
        for &w in &word {
            m = f.mat_mul(&m, mats[w as usize]);
        }
        let inv = f.mat_inv(&m).expect("products of units are units");
        table.push((ProjMat::new(&f, &inv)?.key(q), code as u32));
    }
    table.par_sort_unstable();

    let results: Vec<(Vec<u32>, u64, u64)> = (0..n)
        .into_par_iter()
        .map(|first| {
            let mut out = Vec::new();
            let mut cand = 0u64;
            let mut rej = 0u64;
            let mut word = vec![0u32; a];
            word[0] = first as u32;
            let mut fin = vec![vec![0u8; dd]; a];
            fin[0].copy_from_slice(mats[first].entries());
            let mut search = Search {
                f: &f,
                q,
                n,
                a,
                b,
                d,
                mats: &mats,
                scaled: &scaled,
                table: &table,
                word: &mut word,
                fin: &mut fin,
                glob: vec![None; a],
                out: &mut out,
                candidates: &mut cand,
                rejected: &mut rej,
            };
            search.descend(1)?;
            Ok((out, cand, rej))
        })
        .collect::<Result<_>>()?;

    let mut report = MitmReport {
        prefix_len: a,
        suffix_len: b,
        estimated_bytes: estimate,
        ..Default::default()
    };
    let mut words: Vec<u32> = Vec::new();
    for (w, c, r) in results {
        words.extend_from_slice(&w);
        report.candidates += c;
        report.rejected += r;
    }
    let mut word_list: Vec<&[u32]> = words.chunks(d).collect();
    word_list.sort_unstable();
    report.verified = word_list.len() as u64;

    // proper prefixes, deduplicated projectively; sorted words make the
    // first occurrence the lexicographically smallest witness
    let mut best: FxHashMap<u128, (usize, Vec<u32>)> = FxHashMap::default();
    let mut order: Vec<u128> = Vec::new();
    let mut cur = vec![0u8; dd];
    let mut tmp = vec![0u8; dd];
    for w in &word_list {
        cur.copy_from_slice(Mat::identity(d).entries());
        for len in 1..d {
            f.mat_mul_into(d, &cur, mats[w[len - 1] as usize].entries(), &mut tmp);
            canonicalize(&f, &mut tmp);
            std::mem::swap(&mut cur, &mut tmp);
            let key = pack(&cur, q);
            match best.get(&key) {
                Some((l, _)) if *l != len => {
                    return Err(Error::ColorClassMismatch(format!(
                        "one element is a prefix of lengths {l} and {len}"
                    )));
                }
                Some(_) => {}
                None => {
                    best.insert(key, (len, w[..len].to_vec()));
                    order.push(key);
                }
            }
        }
    }
    let mut elems: Vec<(usize, Vec<u32>, u128)> = order
        .into_iter()
        .map(|k| {
            let (l, w) = best.remove(&k).expect("inserted");
            (l, w, k)
        })
        .collect();
    elems.sort_by(|x, y| (x.0, &x.1).cmp(&(y.0, &y.1)));

    let one = params.alg().one();
    let gens: Vec<Generator> = elems
        .par_iter()
        .map(|(len, w, _)| {
            let mut mat = Mat::identity(d);
            let mut lift = one.clone();
            for &x in w {
                mat = f.mat_mul(&mat, mats[x as usize]);
                lift = lift.mul(&lifts[x as usize])?;
            }
            let mut g = Generator {
                proj: ProjMat::new(&f, &mat)?,
                mat,
                lift: Some(lift),
                j: w[0] as usize,
                color: *len as u8,
                inv: None,
                word: w.clone(),
            };
            let c = color_of(&g, d)?;
            if c != g.color {
                return Err(Error::ColorClassMismatch(format!(
                    "witness {w:?} has length {len} but the reduced norm gives color {c}"
                )));
            }
            g.color = c;
            Ok(g)
        })
        .collect::<Result<_>>()?;

    let mut gens = gens;
    let index: FxHashMap<u128, usize> = elems
        .iter()
        .enumerate()
        .map(|(i, e)| (e.2, i))
        .collect();
    for i in 0..gens.len() {
        let k = gens[i].proj.inv(&f).key(q);
        let partner = *index.get(&k).ok_or_else(|| {
            Error::Verification(format!("inverse of element {i} is missing from Omega-hat"))
        })?;
        gens[i].inv = Some(partner);
    }

    let set = GenSet::new(params.clone(), Kind::OmegaHat, gens);
    let counts = set.color_counts();
    for (l, &count) in counts.iter().enumerate().skip(1) {
        let expect = gaussian_binomial(d as u32, l as u32, q as u64)?;
        if num_bigint::BigUint::from(count) != expect {
            return Err(Error::ColorClassMismatch(format!(
                "color {l}: {count} elements, expected {expect}"
            )));
        }
    }
    if counts[0] != 0 {
        return Err(Error::ColorClassMismatch("color 0 element found".into()));
    }
    Ok((set, report))
}

fn decode(mut code: u64, n: usize, len: usize) -> Vec<u32> {
    let mut w = vec![0u32; len];
    for x in w.iter_mut().rev() {
        *x = (code % n as u64) as u32;
        code /= n as u64;
    }
    w
}

struct Search<'a> {
    f: &'a Field,
    q: u32,
    n: usize,
    a: usize,
    b: usize,
    d: usize,
    mats: &'a [&'a Mat],
    scaled: &'a [CycElem],
    table: &'a [(u128, u32)],
    word: &'a mut Vec<u32>,
    // fin[k] = product of the first k+1 prefix letters (raw)
    fin: &'a mut Vec<Vec<u8>>,
    // glob[k] = global product of the first k+1 scaled letters, if computed
    glob: Vec<Option<CycElem>>,
    out: &'a mut Vec<u32>,
    candidates: &'a mut u64,
    rejected: &'a mut u64,
}

impl Search<'_> {
    fn descend(&mut self, depth: usize) -> Result<()> {
        if depth == self.a {
            return self.join();
        }
        for x in 0..self.n {
            self.word[depth] = x as u32;
            let (done, rest) = self.fin.split_at_mut(depth);
            self.f.mat_mul_into(
                self.d,
                &done[depth - 1],
                self.mats[x].entries(),
                &mut rest[0],
            );
            self.glob[depth] = None;
            self.descend(depth + 1)?;
        }
        Ok(())
    }

    fn join(&mut self) -> Result<()> {
        let mut m = self.fin[self.a - 1].clone();
        canonicalize(self.f, &mut m);
        let key = pack(&m, self.q);
        let lo = self.table.partition_point(|e| e.0 < key);
        let hi = self.table.partition_point(|e| e.0 <= key);
        for &(_, code) in &self.table[lo..hi] {
            *self.candidates += 1;
            let suffix = decode(code as u64, self.n, self.b);
            let mut prod = self.prefix_global(self.a - 1)?;
            for &s in &suffix {
                prod = prod.mul(&self.scaled[s as usize])?;
            }
            if prod.as_central().is_some_and(|c| !c.is_zero()) {
                self.out.extend_from_slice(self.word);
                self.out.extend_from_slice(&suffix);
            } else {
                *self.rejected += 1;
            }
        }
        Ok(())
    }

    fn prefix_global(&mut self, k: usize) -> Result<CycElem> {
        if let Some(g) = &self.glob[k] {
            return Ok(g.clone());
        }
        let letter = &self.scaled[self.word[k] as usize];
        let g = if k == 0 {
            letter.clone()
        } else {
            self.prefix_global(k - 1)?.mul(letter)?
        };
        self.glob[k] = Some(g.clone());
        Ok(g)
    }
}
