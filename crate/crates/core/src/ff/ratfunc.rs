//! Rational functions in one variable `t` over a finite field, kept in a
//! canonical reduced form, together with their valuations.

use std::fmt;

use super::poly::Poly;
use super::FiniteField;
use crate::error::{Error, Result};

/// Valuation of zero.
pub const VAL_INFINITY: i64 = i64::MAX;

/// A place of `F(t)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Place {
    /// The `t`-adic place.
    Zero,
    /// The degree valuation `-deg`, i.e. the place at `1/t`.
    Infinity,
    /// A monic irreducible polynomial.
    Finite(Poly),
}

impl Place {
    pub fn degree(&self) -> usize {
        match self {
            Place::Zero | Place::Infinity => 1,
            Place::Finite(p) => p.degree().unwrap_or(0),
        }
    }
}

/// `num / den` with `den` monic, `gcd(num, den) = 1` and zero stored as `0/1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        RatFunc {
            num: Poly::one(),
            den: Poly::one(),
        }
    }

    pub fn constant(c: u32) -> Self {
        RatFunc {
            num: Poly::constant(c),
            den: Poly::one(),
        }
    }

    pub fn t() -> Self {
        RatFunc::from_poly(Poly::x())
    }

    pub fn from_poly(num: Poly) -> Self {
        RatFunc {
            num,
            den: Poly::one(),
        }
    }

    /// Reduce `num / den` to canonical form.
    pub fn new<F: FiniteField + ?Sized>(num: Poly, den: Poly, f: &F) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den, f))
    }

    fn reduce<F: FiniteField + ?Sized>(num: Poly, den: Poly, f: &F) -> Self {
        if num.is_zero() {
            return RatFunc::zero();
        }
        let g = num.gcd(&den, f);
        let (mut n, mut d) = (num.div_exact(&g, f), den.div_exact(&g, f));
        let lead = d.lead();
        if lead != 1 {
            let il = f.inv(lead).expect("nonzero");
            n = n.scale(il, f);
            d = d.scale(il, f);
        }
        RatFunc { num: n, den: d }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Constant value, if this is a constant.
    pub fn as_constant(&self) -> Option<u32> {
        if self.den.is_one() && self.num.degree().unwrap_or(0) == 0 {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    pub fn add<F: FiniteField + ?Sized>(&self, o: &RatFunc, f: &F) -> RatFunc {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return Self::reduce(self.num.add(&o.num, f), self.den.clone(), f);
        }
        let g = self.den.gcd(&o.den, f);
        let a = self.den.div_exact(&g, f);
        let b = o.den.div_exact(&g, f);
        let num = self.num.mul(&b, f).add(&o.num.mul(&a, f), f);
        let den = a.mul(&o.den, f);
        Self::reduce(num, den, f)
    }

    pub fn neg<F: FiniteField + ?Sized>(&self, f: &F) -> RatFunc {
        RatFunc {
            num: self.num.neg(f),
            den: self.den.clone(),
        }
    }

    pub fn sub<F: FiniteField + ?Sized>(&self, o: &RatFunc, f: &F) -> RatFunc {
        self.add(&o.neg(f), f)
    }

    pub fn mul<F: FiniteField + ?Sized>(&self, o: &RatFunc, f: &F) -> RatFunc {
        if self.is_zero() || o.is_zero() {
            return RatFunc::zero();
        }
        if self.is_one() {
            return o.clone();
        }
        if o.is_one() {
            return self.clone();
        }
        // cross-cancel so the result is already reduced
        let g1 = self.num.gcd(&o.den, f);
        let g2 = o.num.gcd(&self.den, f);
        let n = self
            .num
            .div_exact(&g1, f)
            .mul(&o.num.div_exact(&g2, f), f);
        let d = self
            .den
            .div_exact(&g2, f)
            .mul(&o.den.div_exact(&g1, f), f);
        let lead = d.lead();
        if lead == 1 {
            RatFunc { num: n, den: d }
        } else {
            let il = f.inv(lead).expect("nonzero");
            RatFunc {
                num: n.scale(il, f),
                den: d.scale(il, f),
            }
        }
    }

    pub fn scale<F: FiniteField + ?Sized>(&self, c: u32, f: &F) -> RatFunc {
        if c == 0 {
            return RatFunc::zero();
        }
        RatFunc {
            num: self.num.scale(c, f),
            den: self.den.clone(),
        }
    }

    pub fn inv<F: FiniteField + ?Sized>(&self, f: &F) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(self.den.clone(), self.num.clone(), f))
    }

    pub fn div<F: FiniteField + ?Sized>(&self, o: &RatFunc, f: &F) -> Result<RatFunc> {
        Ok(self.mul(&o.inv(f)?, f))
    }

    pub fn pow<F: FiniteField + ?Sized>(&self, e: i64, f: &F) -> Result<RatFunc> {
        let base = if e < 0 { self.inv(f)? } else { self.clone() };
        let mut acc = RatFunc::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base, f);
        }
        Ok(acc)
    }

    /// Value at `t = x`; errors on a pole.
    pub fn eval<F: FiniteField + ?Sized>(&self, x: u32, f: &F) -> Result<u32> {
        let dv = self.den.eval(x, f);
        if dv == 0 {
            return Err(Error::Pole(format!("{self:?} at t={x}")));
        }
        Ok(f.mul(self.num.eval(x, f), f.inv(dv).expect("nonzero")))
    }

    pub fn map_coeffs(&self, map: impl Fn(u32) -> u32) -> RatFunc {
        RatFunc {
            num: self.num.map_coeffs(&map),
            den: self.den.map_coeffs(&map),
        }
    }

    /// Order of vanishing at `place`; [`VAL_INFINITY`] for zero.
    pub fn valuation<F: FiniteField + ?Sized>(&self, place: &Place, f: &F) -> i64 {
        if self.is_zero() {
            return VAL_INFINITY;
        }
        match place {
            Place::Zero => {
                self.num.low_order().unwrap() as i64 - self.den.low_order().unwrap() as i64
            }
            Place::Infinity => {
                self.den.degree().unwrap() as i64 - self.num.degree().unwrap() as i64
            }
            Place::Finite(p) => poly_order(&self.num, p, f) - poly_order(&self.den, p, f),
        }
    }
}

fn poly_order<F: FiniteField + ?Sized>(a: &Poly, p: &Poly, f: &F) -> i64 {
    let mut k = 0;
    let mut cur = a.clone();
    loop {
        let (q, r) = cur.divrem(p, f);
        if !r.is_zero() {
            return k;
        }
        cur = q;
        k += 1;
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?})/({:?})", self.num.coeffs(), self.den.coeffs())
    }
}

/// Text form `<c0,c1,...>/<c0,c1,...>` (numerator/denominator field codes,
/// low-to-high); the zero polynomial is written as `0`.
impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |p: &Poly| {
            if p.is_zero() {
                "0".to_string()
            } else {
                super::field::join_ints(p.coeffs())
            }
        };
        write!(f, "{}/{}", show(&self.num), show(&self.den))
    }
}

impl RatFunc {
    /// Inverse of the `Display` form.
    pub fn parse<F: FiniteField + ?Sized>(s: &str, f: &F) -> Result<RatFunc> {
        let (n, d) = s
            .split_once('/')
            .ok_or_else(|| Error::format(format!("bad rational function {s:?}")))?;
        let parse = |t: &str| -> Result<Poly> {
            let v = super::field::parse_ints(t)?;
            if v.iter().any(|&c| c >= f.order()) {
                return Err(Error::format("coefficient out of range"));
            }
            Ok(Poly::from_coeffs(v))
        };
        RatFunc::new(parse(n)?, parse(d)?, f)
    }
}
