//! The family of generator sets obtained by element-wise `q^i`-th powers.

use super::genset::{GenSet, Generator, Kind};
use super::omega::build_omega;
use crate::cayley::ProjMat;
use crate::error::{Error, Result};
use crate::ff::family_size;

/// `m` sets, `m` = order of `q` in `(Z/d)^x / {+-1}`; set `i` raises every
/// matrix of `base` to the power `q^i`.
///
/// The Omega part (the color-1 elements in Omega order) of set `i` is
/// compared element-wise with an independently built Omega for
/// `sigma^(q^i)`; any difference is an error. Lifts are dropped since the
/// power map is not multiplicative on products.
pub fn family(base: &GenSet) -> Result<Vec<GenSet>> {
    if base.kind() == Kind::Omega {
        return Err(Error::Precondition(
            "family expects an Omega-bar or Omega-hat set".into(),
        ));
    }
    let params = base.params();
    let f = params.field();
    let q = params.q() as u64;
    let d = params.d();
    let m = family_size(q, d as u64)?;
    let n = params.n();
    let mut out = Vec::with_capacity(m);
    let mut e = 1u64;
    for i in 0..m {
        let gens: Vec<Generator> = base
            .generators()
            .iter()
            .map(|g| {
                let mat = f.mat_pow(&g.mat, e);
                Ok(Generator {
                    proj: ProjMat::new(f, &mat)?,
                    mat,
                    lift: None,
                    ..g.clone()
                })
            })
            .collect::<Result<_>>()?;
        let s = (params.s() as u64 * e % d as u64) as usize;
        let expect = build_omega(&params.with_s(s)?)?;
        for (j, (g, w)) in gens.iter().zip(expect.generators()).take(n).enumerate() {
            if g.color != 1 || g.mat != w.mat {
                return Err(Error::FamilyMismatch(format!(
                    "set {i}: element {j} raised to q^{i} differs from Omega for s={s}"
                )));
            }
        }
        let p = if i == 0 { params.clone() } else { params.with_s(s)? };
        out.push(GenSet::new(p, base.kind(), gens));
        e *= q;
    }
    Ok(out)
}
