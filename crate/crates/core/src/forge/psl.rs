//! Membership in `PSL_d(F_q)` and the predicted index of `PSL_d` in the
//! generated group.

use super::params::GenParams;
use crate::cayley::ProjMat;
use crate::ff::counting::gcd;
use crate::ff::{Field, FiniteField};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PslStatus {
    InPsl,
    InPglOnly,
}

/// `det(M)` is a `d`-th power in `F_q^x` iff `det^((q-1)/g) = 1` with
/// `g = gcd(d, q-1)`; scalars change `det` by `d`-th powers only.
pub fn psl_check(f: &Field, m: &ProjMat) -> PslStatus {
    let d = m.dim() as u64;
    let q = f.q() as u64;
    let g = gcd(d, q - 1);
    let det = f.mat_det(m.mat()) as u32;
    if f.pow(det, (q - 1) / g) == 1 {
        PslStatus::InPsl
    } else {
        PslStatus::InPglOnly
    }
}

/// Order of `gamma / (1 + gamma)` in `F_q^x / (F_q^x)^d`.
pub fn expected_index(params: &GenParams) -> u64 {
    let f = params.field();
    let g = params.gamma();
    let x = f
        .div(g, f.add(1, g))
        .expect("1 + gamma is nonzero by construction");
    let q = f.q() as u64;
    let e = (q - 1) / gcd(params.d() as u64, q - 1);
    let mut k = 1u64;
    let mut y = x;
    while f.pow(y, e) != 1 {
        y = f.mul(y, x);
        k += 1;
    }
    k
}

/// `|PSL_d(F_q)| * expected_index`.
pub fn expected_group_order(params: &GenParams) -> num_bigint::BigUint {
    crate::ff::psl_order(params.d() as u32, params.q() as u64)
        * num_bigint::BigUint::from(expected_index(params))
}
