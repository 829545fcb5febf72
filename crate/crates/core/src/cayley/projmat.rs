//! Matrices over `F_q` modulo scalars.

use std::fmt;

use crate::error::{Error, Result};
use crate::ff::{Field, Mat};

/// Scale `e` in place so its first nonzero entry (row-major) is 1.
/// Returns `false` for the zero matrix.
#[inline]
pub fn canonicalize(f: &Field, e: &mut [u8]) -> bool {
    let Some(&lead) = e.iter().find(|&&x| x != 0) else {
        return false;
    };
    if lead != 1 {
        let il = f.inv8(lead);
        for x in e.iter_mut() {
            *x = f.mul8(*x, il);
        }
    }
    true
}

/// Base-`q` packing of the entries, first entry least significant.
#[inline]
pub fn pack(e: &[u8], q: u32) -> u128 {
    let q = q as u128;
    e.iter().rev().fold(0u128, |acc, &x| acc * q + x as u128)
}

#[inline]
pub fn unpack_into(mut key: u128, q: u32, out: &mut [u8]) {
    // u128 division is slow; switch to u64 once the key fits
    let q128 = q as u128;
    let mut i = 0;
    while i < out.len() && key > u64::MAX as u128 {
        out[i] = (key % q128) as u8;
        key /= q128;
        i += 1;
    }
    let mut k = key as u64;
    let q = q as u64;
    for x in &mut out[i..] {
        *x = (k % q) as u8;
        k /= q;
    }
}

/// Whether `d x d` matrices over `F_q` pack into a `u128` key.
pub fn check_packable(q: u32, d: usize) -> Result<()> {
    let bits = (d * d) as f64 * (q as f64).log2();
    if bits > 127.0 {
        return Err(Error::invalid(format!(
            "{d}x{d} matrices over F_{q} do not fit a 128-bit key"
        )));
    }
    Ok(())
}

/// A nonsingular matrix scaled so its first nonzero entry is 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjMat(Mat);

impl fmt::Debug for ProjMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ProjMat{:?}", self.0)
    }
}

impl ProjMat {
    pub fn new(f: &Field, m: &Mat) -> Result<ProjMat> {
        if f.mat_det(m) == 0 {
            return Err(Error::invalid("singular matrix has no projective class in PGL"));
        }
        let mut e = m.entries().to_vec();
        canonicalize(f, &mut e);
        Ok(ProjMat(Mat::from_entries(m.dim(), e)))
    }

    pub fn identity(d: usize) -> ProjMat {
        ProjMat(Mat::identity(d))
    }

    pub fn mat(&self) -> &Mat {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_identity()
    }

    pub fn key(&self, q: u32) -> u128 {
        pack(self.0.entries(), q)
    }

    pub fn from_key(key: u128, d: usize, q: u32) -> ProjMat {
        let mut e = vec![0u8; d * d];
        unpack_into(key, q, &mut e);
        ProjMat(Mat::from_entries(d, e))
    }

    pub fn mul(&self, f: &Field, o: &ProjMat) -> ProjMat {
        let mut m = f.mat_mul(&self.0, &o.0);
        canonicalize(f, m.entries_mut());
        ProjMat(m)
    }

    pub fn inv(&self, f: &Field) -> ProjMat {
        let mut m = f.mat_inv(&self.0).expect("projective matrices are nonsingular");
        canonicalize(f, m.entries_mut());
        ProjMat(m)
    }

    pub fn pow(&self, f: &Field, e: u64) -> ProjMat {
        let mut m = f.mat_pow(&self.0, e);
        canonicalize(f, m.entries_mut());
        ProjMat(m)
    }
}
