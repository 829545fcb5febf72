//! Exact counting formulas over `F_q`.

use num_bigint::BigUint;

use crate::error::{Error, Result};

/// Number of `i`-dimensional subspaces of `F_q^d`.
pub fn gaussian_binomial(d: u32, i: u32, q: u64) -> Result<BigUint> {
    if i > d {
        return Err(Error::invalid(format!("need 0 <= i <= d, got i={i}, d={d}")));
    }
    if q < 2 {
        return Err(Error::invalid("q must be at least 2"));
    }
    let q = BigUint::from(q);
    let one = BigUint::from(1u32);
    let mut num = one.clone();
    let mut den = one.clone();
    for k in 0..i {
        num *= q.pow(d - k) - &one;
        den *= q.pow(k + 1) - &one;
    }
    Ok(num / den)
}

/// `|GL_d(F_q)|`
pub fn gl_order(d: u32, q: u64) -> BigUint {
    let q = BigUint::from(q);
    let qd = q.pow(d);
    (0..d).fold(BigUint::from(1u32), |acc, k| acc * (&qd - q.pow(k)))
}

/// `|PGL_d(F_q)| = |GL_d| / (q - 1)`
pub fn pgl_order(d: u32, q: u64) -> BigUint {
    gl_order(d, q) / BigUint::from(q - 1)
}

/// `|PSL_d(F_q)| = |PGL_d| / gcd(d, q - 1)`
pub fn psl_order(d: u32, q: u64) -> BigUint {
    pgl_order(d, q) / BigUint::from(gcd(d as u64, q - 1))
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Order of `q` in `(Z/dZ)^x / {+-1}`: least `m >= 1` with `q^m = +-1 mod d`.
pub fn family_size(q: u64, d: u64) -> Result<usize> {
    if d < 2 || gcd(q % d, d) != 1 {
        return Err(Error::invalid(format!("q={q} is not a unit mod d={d}")));
    }
    let mut x = q % d;
    for m in 1..=d as usize {
        if x == 1 % d || x == d - 1 {
            return Ok(m);
        }
        x = x * q % d;
    }
    unreachable!("unit of a finite group has finite order")
}
