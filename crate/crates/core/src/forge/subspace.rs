//! Building colors and the subspaces of `F_q^d` attached to generators.

use super::genset::Generator;
use crate::error::{Error, Result};
use crate::ff::{Place, VAL_INFINITY};

fn lift(g: &Generator) -> Result<&crate::cyclic::CycElem> {
    g.lift
        .as_ref()
        .ok_or_else(|| Error::Precondition("generator has no global lift".into()))
}

/// `nu_0(reduced_norm(lift)) mod d`.
pub fn color_of(g: &Generator, d: usize) -> Result<u8> {
    let l = lift(g)?;
    let nrd = l.reduced_norm()?;
    let v = nrd.valuation(&Place::Zero, l.alg().base().as_ref());
    if v == VAL_INFINITY {
        return Err(Error::NotInvertible);
    }
    Ok(v.rem_euclid(d as i64) as u8)
}

/// The subspace `(g O^d + t O^d) / t O^d` of `F_q^d` for the lift scaled by
/// `t^{-nu_min}`, as reduced echelon rows. Its dimension is `d - color`.
pub fn attach_subspace(g: &Generator) -> Result<Vec<Vec<u8>>> {
    let l = lift(g)?;
    let d = l.alg().degree();
    let f = l.alg().base();
    let normalized = l.shift_t(-l.min_valuation_at_zero());
    let nrd = normalized.reduced_norm()?;
    let v = nrd.valuation(&Place::Zero, f.as_ref());
    if v < 1 || v >= d as i64 {
        return Err(Error::Precondition(format!(
            "normalized lift has determinant valuation {v}, not a neighbor of the base vertex"
        )));
    }
    let m = normalized.evaluate_model(0, 1)?;
    let basis = f.column_space(&m);
    if basis.len() != d - v as usize {
        return Err(Error::Verification(format!(
            "attached subspace has dimension {} but the valuation is {v}",
            basis.len()
        )));
    }
    Ok(basis)
}
