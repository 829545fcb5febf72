//! `Omega` and its inverse closure.

use rustc_hash::FxHashMap;

use super::genset::{GenSet, Generator, Kind};
use super::params::GenParams;
use crate::cayley::ProjMat;
use crate::error::{Error, Result};
use crate::ff::FiniteField;

/// `Omega = { u^j (1 - z^{-1}) u^{-j} : 0 <= j < n }` with finite matrices
/// `theta^j b theta^{-j}`, `theta = regular_rep(u)`, `b = specialize(1 - z^{-1})`.
///
/// Each finite matrix is computed both by conjugating `b` and by
/// specializing the global lift; the two must agree.
pub fn build_omega(params: &GenParams) -> Result<GenSet> {
    let alg = params.alg();
    let ext = params.ext();
    let f = params.field();
    let q = params.q();
    let n = params.n();
    let alpha = f.elem(params.alpha())?;

    let base_lift = alg.one_minus_z_inv();
    let b = base_lift.specialize(&alpha)?;
    let theta = ext.regular_rep(params.unit());
    let theta_inv = f.mat_inv(&theta).expect("units act invertibly");

    let mut gens = Vec::with_capacity(n);
    let mut seen: FxHashMap<u128, usize> = FxHashMap::default();
    let mut conj = b.clone();
    let mut uj = 1u32;
    for j in 0..n {
        let lift = base_lift.conj_by_unit(uj)?;
        let direct = lift.specialize(&alpha)?;
        if direct != conj {
            return Err(Error::Verification(format!(
                "specialized lift and conjugated matrix differ at j={j}"
            )));
        }
        let proj = ProjMat::new(f, &conj)?;
        let key = proj.key(q);
        if let Some(&prev) = seen.get(&key) {
            return Err(Error::DuplicateGenerators(format!(
                "conjugates j={prev} and j={j} coincide in PGL_{}(F_{q}); the quotient is too small",
                params.d()
            )));
        }
        seen.insert(key, j);
        gens.push(Generator {
            mat: conj.clone(),
            proj,
            lift: Some(lift),
            j,
            color: 1,
            inv: None,
            word: vec![j as u32],
        });
        conj = f.mat_mul(&f.mat_mul(&theta, &conj), &theta_inv);
        uj = ext.mul(uj, params.unit());
    }
    Ok(GenSet::new(params.clone(), Kind::Omega, gens))
}

/// A coincidence found while symmetrizing: the inverse of generator `0`
/// equals generator `1` of the input.
pub type Coincidence = (usize, usize);

/// Union of the set and its projective inverses, inverses appended in
/// order; partner indices are filled in.
pub fn symmetrize(set: &GenSet) -> Result<GenSet> {
    symmetrize_report(set).map(|(s, _)| s)
}

pub fn symmetrize_report(set: &GenSet) -> Result<(GenSet, Vec<Coincidence>)> {
    let params = set.params();
    let f = params.field();
    let q = params.q();
    let d = params.d() as u8;
    let mut gens: Vec<Generator> = set.generators().to_vec();
    let mut index: FxHashMap<u128, usize> = FxHashMap::default();
    for (i, g) in gens.iter().enumerate() {
        index.insert(g.proj.key(q), i);
    }
    let mut coincidences = Vec::new();
    let original = gens.len();
    // Omega lifts are conjugates of 1 - z^{-1}; invert that once
    let base_inv = if set.kind() == Kind::Omega {
        Some(params.alg().one_minus_z_inv().inv()?)
    } else {
        None
    };
    let ext = params.ext();
    for i in 0..original {
        let g = &gens[i];
        let inv_proj = g.proj.inv(f);
        let key = inv_proj.key(q);
        if let Some(&k) = index.get(&key) {
            if set.kind() == Kind::Omega {
                coincidences.push((i, k));
            }
            gens[i].inv = Some(k);
            continue;
        }
        let inv = Generator {
            mat: f.mat_inv(&g.mat).expect("generators are invertible"),
            proj: inv_proj,
            lift: match (&g.lift, &base_inv) {
                (None, _) => None,
                (Some(_), Some(bi)) => Some(bi.conj_by_unit(ext.pow(params.unit(), g.j as u64))?),
                (Some(l), None) => Some(l.inv()?),
            },
            j: g.j,
            color: (d - g.color % d) % d,
            inv: Some(i),
            word: Vec::new(),
        };
        let k = gens.len();
        index.insert(key, k);
        gens[i].inv = Some(k);
        gens.push(inv);
    }
    let kind = match set.kind() {
        Kind::Omega => Kind::OmegaBar,
        k => k,
    };
    Ok((GenSet::new(params.clone(), kind, gens), coincidences))
}
