//! Dense univariate polynomials over a finite field.
//!
//! Coefficients are stored low-to-high as field codes and never carry
//! trailing zeros, so the zero polynomial is the empty vector. Arithmetic
//! takes the field as an explicit argument.

use super::FiniteField;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly(Vec<u32>);

impl Poly {
    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn one() -> Self {
        Poly(vec![1])
    }

    /// The indeterminate `t`.
    pub fn x() -> Self {
        Poly(vec![0, 1])
    }

    pub fn constant(c: u32) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// `c0 + c1 t` as a convenience for linear places such as `1 + t`.
    pub fn linear(c0: u32, c1: u32) -> Self {
        Poly::from_coeffs(vec![c0, c1])
    }

    pub fn from_coeffs(mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn monomial(c: u32, k: usize) -> Self {
        if c == 0 {
            return Poly::zero();
        }
        let mut v = vec![0; k + 1];
        v[k] = c;
        Poly(v)
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.0
    }

    pub fn coeff(&self, k: usize) -> u32 {
        self.0.get(k).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0[0] == 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> u32 {
        self.0.last().copied().unwrap_or(0)
    }

    /// Order of vanishing at `t = 0`; `None` for the zero polynomial.
    pub fn low_order(&self) -> Option<usize> {
        self.0.iter().position(|&c| c != 0)
    }

    pub fn add<F: FiniteField + ?Sized>(&self, other: &Poly, f: &F) -> Poly {
        let n = self.0.len().max(other.0.len());
        let v = (0..n).map(|k| f.add(self.coeff(k), other.coeff(k))).collect();
        Poly::from_coeffs(v)
    }

    pub fn neg<F: FiniteField + ?Sized>(&self, f: &F) -> Poly {
        Poly(self.0.iter().map(|&c| f.neg(c)).collect())
    }

    pub fn sub<F: FiniteField + ?Sized>(&self, other: &Poly, f: &F) -> Poly {
        let n = self.0.len().max(other.0.len());
        let v = (0..n)
            .map(|k| f.sub(self.coeff(k), other.coeff(k)))
            .collect();
        Poly::from_coeffs(v)
    }

    pub fn scale<F: FiniteField + ?Sized>(&self, c: u32, f: &F) -> Poly {
        if c == 0 {
            return Poly::zero();
        }
        Poly(self.0.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn mul<F: FiniteField + ?Sized>(&self, other: &Poly, f: &F) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        let mut v = vec![0u32; self.0.len() + other.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.0.iter().enumerate() {
                if b != 0 {
                    v[i + j] = f.add(v[i + j], f.mul(a, b));
                }
            }
        }
        Poly::from_coeffs(v)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem<F: FiniteField + ?Sized>(&self, divisor: &Poly, f: &F) -> (Poly, Poly) {
        let dd = divisor.degree().expect("polynomial division by zero");
        if self.0.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let inv_lead = f.inv(divisor.lead()).expect("nonzero leading coefficient");
        let mut rem = self.0.clone();
        let mut quot = vec![0u32; rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = rem[k];
            if c == 0 {
                continue;
            }
            let factor = f.mul(c, inv_lead);
            quot[k - dd] = factor;
            for (j, &b) in divisor.0.iter().enumerate() {
                if b != 0 {
                    let idx = k - dd + j;
                    rem[idx] = f.sub(rem[idx], f.mul(factor, b));
                }
            }
        }
        rem.truncate(dd);
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    pub fn rem<F: FiniteField + ?Sized>(&self, divisor: &Poly, f: &F) -> Poly {
        self.divrem(divisor, f).1
    }

    /// Exact division, used after a gcd is known to divide.
    pub fn div_exact<F: FiniteField + ?Sized>(&self, divisor: &Poly, f: &F) -> Poly {
        if divisor.is_one() {
            return self.clone();
        }
        let (q, r) = self.divrem(divisor, f);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn monic<F: FiniteField + ?Sized>(&self, f: &F) -> Poly {
        match self.lead() {
            0 | 1 => self.clone(),
            c => self.scale(f.inv(c).expect("nonzero"), f),
        }
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd<F: FiniteField + ?Sized>(&self, other: &Poly, f: &F) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b, f);
            a = b;
            b = r;
        }
        a.monic(f)
    }

    pub fn eval<F: FiniteField + ?Sized>(&self, x: u32, f: &F) -> u32 {
        self.0
            .iter()
            .rev()
            .fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Apply a map to every coefficient (e.g. a field automorphism).
    pub fn map_coeffs(&self, map: impl Fn(u32) -> u32) -> Poly {
        Poly::from_coeffs(self.0.iter().map(|&c| map(c)).collect())
    }

    pub fn pow_mod<F: FiniteField + ?Sized>(&self, mut e: u128, modulus: &Poly, f: &F) -> Poly {
        let mut base = self.rem(modulus, f);
        let mut acc = Poly::one().rem(modulus, f);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, f).rem(modulus, f);
            }
            base = base.mul(&base, f).rem(modulus, f);
            e >>= 1;
        }
        acc
    }
}

/// Rabin's irreducibility test over the field `f`.
pub fn is_irreducible<F: FiniteField + ?Sized>(m: &Poly, f: &F) -> bool {
    let n = match m.degree() {
        None | Some(0) => return false,
        Some(1) => return true,
        Some(n) => n,
    };
    let r = f.order() as u128;
    // frob[k] = t^(r^k) mod m
    let mut frob = Vec::with_capacity(n + 1);
    frob.push(Poly::x().rem(m, f));
    for k in 1..=n {
        let next = frob[k - 1].pow_mod(r, m, f);
        frob.push(next);
    }
    if frob[n] != Poly::x().rem(m, f) {
        return false;
    }
    for l in prime_factors(n as u64) {
        let k = n / l as usize;
        let g = frob[k].sub(&Poly::x(), f).gcd(m, f);
        if !g.is_one() {
            return false;
        }
    }
    true
}

/// Distinct prime factors by trial division.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// First monic irreducible polynomial of degree `n` over `f`, scanning the
/// lower coefficients `c0 + c1 r + ... + c_{n-1} r^{n-1}` in increasing order.
pub fn first_irreducible<F: FiniteField + ?Sized>(n: usize, f: &F) -> Poly {
    let r = f.order() as u64;
    let total = r.pow(n as u32);
    for code in 0..total {
        let mut coeffs = Vec::with_capacity(n + 1);
        let mut c = code;
        for _ in 0..n {
            coeffs.push((c % r) as u32);
            c /= r;
        }
        coeffs.push(1);
        let m = Poly::from_coeffs(coeffs);
        if is_irreducible(&m, f) {
            return m;
        }
    }
    unreachable!("irreducible polynomials of every degree exist")
}
