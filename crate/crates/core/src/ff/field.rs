//! Finite fields as polynomial residue rings with precomputed tables.
//!
//! Every element is a `u32` code. For a field of degree `n` over a subfield
//! of order `r`, the code of `c_0 + c_1 x + ... + c_{n-1} x^{n-1}` is
//! `c_0 + c_1 r + ... + c_{n-1} r^{n-1}` where each `c_i` is itself a
//! subfield code. Consequently `0` and `1` have codes 0 and 1, and the
//! subfield sits inside the extension as the codes below `r`.

use std::fmt;
use std::sync::Arc;

use super::poly::{self, Poly};
use crate::error::{Error, Result};

pub trait FiniteField: Send + Sync + fmt::Debug {
    fn order(&self) -> u32;
    fn characteristic(&self) -> u32;
    fn add(&self, a: u32, b: u32) -> u32;
    fn neg(&self, a: u32) -> u32;
    fn mul(&self, a: u32, b: u32) -> u32;
    fn inv(&self, a: u32) -> Option<u32>;

    fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    fn div(&self, a: u32, b: u32) -> Option<u32> {
        self.inv(b).map(|ib| self.mul(a, ib))
    }

    fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Image of an integer under `Z -> F`.
    fn from_int(&self, n: i64) -> u32 {
        let p = self.characteristic() as i64;
        let r = n.rem_euclid(p) as u32;
        let mut acc = 0;
        for _ in 0..r {
            acc = self.add(acc, 1);
        }
        acc
    }
}

/// `Z/pZ` with plain modular arithmetic; only used to bootstrap tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if p < 2 || !is_prime(p as u64) {
            return Err(Error::invalid(format!("{p} is not prime")));
        }
        Ok(PrimeField { p })
    }
}

impl FiniteField for PrimeField {
    fn order(&self) -> u32 {
        self.p
    }
    fn characteristic(&self) -> u32 {
        self.p
    }
    fn add(&self, a: u32, b: u32) -> u32 {
        (a + b) % self.p
    }
    fn neg(&self, a: u32) -> u32 {
        (self.p - a) % self.p
    }
    fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }
    fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            None
        } else {
            Some(self.pow(a, (self.p - 2) as u64))
        }
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|k| k * k <= n).all(|k| n % k != 0)
}

/// Largest extension order for which log/exp tables are built.
const MAX_TABLE_ORDER: u64 = 1 << 22;
/// Extensions up to this order also get a full addition table.
const ADD_TABLE_ORDER: u32 = 2500;

/// Log/exp tables for a simple extension of a tabulated subfield.
#[derive(Clone)]
struct Tables {
    order: u32,
    sub_order: u32,
    degree: usize,
    /// exp[i] = g^i for i in 0..2(order-1)
    exp: Vec<u32>,
    /// log[a] for a != 0
    log: Vec<u32>,
    neg: Vec<u32>,
    /// `add[a * order + b]` when small enough
    add: Option<Vec<u16>>,
    /// sub-field addition table, used for digitwise addition of large fields
    sub_add: Vec<u32>,
}

impl Tables {
    fn build<F: FiniteField + ?Sized>(sub: &F, modulus: &Poly) -> Result<Self> {
        let n = modulus
            .degree()
            .ok_or_else(|| Error::invalid("zero modulus"))?;
        let r = sub.order();
        let order64 = (r as u64).checked_pow(n as u32).unwrap_or(u64::MAX);
        if order64 > MAX_TABLE_ORDER {
            return Err(Error::invalid(format!(
                "field of order {order64} is too large for table arithmetic"
            )));
        }
        let order = order64 as u32;
        let encode = |coeffs: &[u32]| -> u32 {
            coeffs.iter().rev().fold(0u32, |acc, &c| acc * r + c)
        };
        let decode = |mut code: u32| -> Poly {
            let mut v = Vec::with_capacity(n);
            for _ in 0..n {
                v.push(code % r);
                code /= r;
            }
            Poly::from_coeffs(v)
        };
        let to_code = |p: &Poly| -> u32 {
            let mut v = p.coeffs().to_vec();
            v.resize(n, 0);
            encode(&v)
        };
        let group = order as u64 - 1;
        let factors = poly::prime_factors(group.max(1));
        // Smallest code that generates the multiplicative group.
        let mut generator = None;
        for code in 1..order {
            let g = decode(code);
            let primitive = group == 1
                || factors.iter().all(|&l| {
                    !g.pow_mod((group / l) as u128, modulus, sub).is_one()
                });
            if primitive {
                generator = Some(g);
                break;
            }
        }
        let g = generator.ok_or_else(|| Error::Reducible(format!("{modulus:?}")))?;
        let mut exp = Vec::with_capacity(2 * group as usize);
        let mut log = vec![u32::MAX; order as usize];
        let mut cur = Poly::one();
        for i in 0..group as usize {
            let c = to_code(&cur);
            if log[c as usize] != u32::MAX {
                return Err(Error::Reducible(format!("{modulus:?}")));
            }
            log[c as usize] = i as u32;
            exp.push(c);
            cur = cur.mul(&g, sub).rem(modulus, sub);
        }
        let first = exp.clone();
        exp.extend_from_slice(&first);
        let mut sub_add = vec![0u32; (r * r) as usize];
        for a in 0..r {
            for b in 0..r {
                sub_add[(a * r + b) as usize] = sub.add(a, b);
            }
        }
        let neg = (0..order)
            .map(|c| {
                let p = decode(c).neg(sub);
                to_code(&p)
            })
            .collect();
        let mut tables = Tables {
            order,
            sub_order: r,
            degree: n,
            exp,
            log,
            neg,
            add: None,
            sub_add,
        };
        if order <= ADD_TABLE_ORDER {
            // the table for r^k elements from the one for r^(k-1): low digits
            // via the subfield table, the rest by lookup
            let mut add = vec![0u16];
            let mut size = 1u32;
            for _ in 0..n {
                let next_size = size * r;
                let mut next = vec![0u16; (next_size * next_size) as usize];
                for a in 0..next_size {
                    for b in 0..next_size {
                        let low = tables.sub_add[((a % r) * r + b % r) as usize];
                        let high = add[((a / r) * size + b / r) as usize] as u32;
                        next[(a * next_size + b) as usize] = (low + r * high) as u16;
                    }
                }
                add = next;
                size = next_size;
            }
            tables.add = Some(add);
        }
        Ok(tables)
    }

    fn add_digitwise(&self, mut a: u32, mut b: u32) -> u32 {
        let r = self.sub_order;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.degree {
            let s = self.sub_add[((a % r) * r + b % r) as usize];
            out += s * place;
            place *= r;
            a /= r;
            b /= r;
        }
        out
    }

    #[inline]
    fn add(&self, a: u32, b: u32) -> u32 {
        match &self.add {
            Some(t) => t[(a * self.order + b) as usize] as u32,
            None => self.add_digitwise(a, b),
        }
    }

    #[inline]
    fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            0
        } else {
            self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
        }
    }

    #[inline]
    fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            None
        } else {
            let l = self.log[a as usize];
            let group = self.order - 1;
            Some(self.exp[((group - l) % group) as usize])
        }
    }
}

impl fmt::Debug for Tables {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tables(order={})", self.order)
    }
}

/// The base field `F_q = F_p[x]/(m(x))`, `q = p^f <= 256`.
#[derive(Clone)]
pub struct Field {
    prime: PrimeField,
    f: usize,
    modulus: Poly,
    tables: Tables,
    q: u32,
    add8: Vec<u8>,
    mul8: Vec<u8>,
    inv8: Vec<u8>,
    neg8: Vec<u8>,
}

impl Field {
    /// Prime field `F_p`, represented with modulus `x`.
    pub fn prime(p: u32) -> Result<Arc<Self>> {
        Self::with_modulus(p, Poly::x())
    }

    /// `F_{p^f}` using the first irreducible modulus in the scan order of
    /// [`poly::first_irreducible`].
    pub fn new(p: u32, f: usize) -> Result<Arc<Self>> {
        let prime = PrimeField::new(p)?;
        if f == 0 {
            return Err(Error::invalid("field degree must be at least 1"));
        }
        let m = if f == 1 {
            Poly::x()
        } else {
            poly::first_irreducible(f, &prime)
        };
        Self::with_modulus(p, m)
    }

    /// `F_p[x]/(modulus)`; the modulus must be monic and irreducible.
    pub fn with_modulus(p: u32, modulus: Poly) -> Result<Arc<Self>> {
        let prime = PrimeField::new(p)?;
        if modulus.coeffs().iter().any(|&c| c >= p) {
            return Err(Error::invalid("modulus coefficient out of range"));
        }
        let f = modulus
            .degree()
            .filter(|&n| n >= 1)
            .ok_or_else(|| Error::invalid("modulus must have positive degree"))?;
        if modulus.lead() != 1 {
            return Err(Error::invalid("modulus must be monic"));
        }
        if !poly::is_irreducible(&modulus, &prime) {
            return Err(Error::Reducible(format!("{:?} over F_{p}", modulus.coeffs())));
        }
        let q64 = (p as u64).pow(f as u32);
        if q64 > 256 {
            return Err(Error::invalid(format!(
                "base field order {q64} exceeds 256"
            )));
        }
        let tables = Tables::build(&prime, &modulus)?;
        let q = q64 as u32;
        let mut add8 = vec![0u8; (q * q) as usize];
        let mut mul8 = vec![0u8; (q * q) as usize];
        for a in 0..q {
            for b in 0..q {
                add8[(a * q + b) as usize] = tables.add(a, b) as u8;
                mul8[(a * q + b) as usize] = tables.mul(a, b) as u8;
            }
        }
        let inv8 = (0..q)
            .map(|a| tables.inv(a).unwrap_or(0) as u8)
            .collect();
        let neg8 = (0..q).map(|a| tables.neg[a as usize] as u8).collect();
        Ok(Arc::new(Field {
            prime,
            f,
            modulus,
            tables,
            q,
            add8,
            mul8,
            inv8,
            neg8,
        }))
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn p(&self) -> u32 {
        self.prime.order()
    }

    pub fn degree(&self) -> usize {
        self.f
    }

    pub fn is_prime_field(&self) -> bool {
        self.f == 1
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    /// F_p digits of an element code, low-to-high, length `f`.
    pub fn digits(&self, mut code: u32) -> Vec<u32> {
        let p = self.p();
        (0..self.f)
            .map(|_| {
                let d = code % p;
                code /= p;
                d
            })
            .collect()
    }

    pub fn from_digits(&self, digits: &[u32]) -> Result<u32> {
        let p = self.p();
        if digits.len() != self.f || digits.iter().any(|&d| d >= p) {
            return Err(Error::format(format!(
                "expected {} digits below {p}, got {digits:?}",
                self.f
            )));
        }
        Ok(digits.iter().rev().fold(0, |acc, &d| acc * p + d))
    }

    /// `p=<int> f=<int> mod=<c0,...,cf>`
    pub fn descriptor(&self) -> String {
        format!(
            "p={} f={} mod={}",
            self.p(),
            self.f,
            join_ints(&padded(&self.modulus, self.f + 1))
        )
    }

    pub fn from_descriptor(s: &str) -> Result<Arc<Self>> {
        let kv = parse_kv(s);
        let p: u32 = get_parsed(&kv, "p")?;
        let f: usize = get_parsed(&kv, "f")?;
        let m = parse_ints(get(&kv, "mod")?)?;
        if m.len() != f + 1 {
            return Err(Error::format("modulus length does not match f"));
        }
        Self::with_modulus(p, Poly::from_coeffs(m))
    }

    /// Structural equality (same characteristic and modulus).
    pub fn same_as(&self, other: &Field) -> bool {
        self.p() == other.p() && self.modulus == other.modulus
    }

    #[inline]
    pub fn add8(&self, a: u8, b: u8) -> u8 {
        self.add8[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn mul8(&self, a: u8, b: u8) -> u8 {
        self.mul8[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn inv8(&self, a: u8) -> u8 {
        self.inv8[a as usize]
    }

    #[inline]
    pub fn neg8(&self, a: u8) -> u8 {
        self.neg8[a as usize]
    }

    /// Checked element constructor.
    pub fn elem(self: &Arc<Self>, code: u32) -> Result<FieldElem> {
        if code >= self.q {
            return Err(Error::invalid(format!("code {code} not in F_{}", self.q)));
        }
        Ok(FieldElem {
            field: Arc::clone(self),
            code,
        })
    }

    /// Nonzero elements as codes.
    pub fn units(&self) -> impl Iterator<Item = u32> {
        1..self.q
    }
}

impl FiniteField for Field {
    fn order(&self) -> u32 {
        self.q
    }
    fn characteristic(&self) -> u32 {
        self.p()
    }
    #[inline]
    fn add(&self, a: u32, b: u32) -> u32 {
        self.add8(a as u8, b as u8) as u32
    }
    #[inline]
    fn neg(&self, a: u32) -> u32 {
        self.neg8[a as usize] as u32
    }
    #[inline]
    fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul8(a as u8, b as u8) as u32
    }
    fn inv(&self, a: u32) -> Option<u32> {
        self.tables.inv(a)
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({})", self.descriptor())
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

/// `F_{q^d} = F_q[tau]/(M(tau))` over a tabulated base field.
#[derive(Clone)]
pub struct ExtField {
    base: Arc<Field>,
    d: usize,
    modulus: Poly,
    tables: Tables,
}

impl ExtField {
    /// Default modulus: `x^5 - x - 1` for `(q, d) = (3, 5)`, otherwise the
    /// first irreducible in scan order.
    pub fn new(base: Arc<Field>, d: usize) -> Result<Arc<Self>> {
        if d == 0 {
            return Err(Error::invalid("extension degree must be at least 1"));
        }
        let m = Self::default_modulus(&base, d);
        Self::with_modulus(base, m)
    }

    pub fn default_modulus(base: &Field, d: usize) -> Poly {
        if base.q() == 3 && d == 5 {
            // x^5 - x - 1
            Poly::from_coeffs(vec![2, 2, 0, 0, 0, 1])
        } else if d == 1 {
            Poly::x()
        } else {
            poly::first_irreducible(d, base)
        }
    }

    pub fn with_modulus(base: Arc<Field>, modulus: Poly) -> Result<Arc<Self>> {
        let d = modulus
            .degree()
            .filter(|&n| n >= 1)
            .ok_or_else(|| Error::invalid("modulus must have positive degree"))?;
        if modulus.lead() != 1 {
            return Err(Error::invalid("modulus must be monic"));
        }
        if modulus.coeffs().iter().any(|&c| c >= base.q()) {
            return Err(Error::invalid("modulus coefficient out of range"));
        }
        if !poly::is_irreducible(&modulus, base.as_ref()) {
            return Err(Error::Reducible(format!(
                "{:?} over F_{}",
                modulus.coeffs(),
                base.q()
            )));
        }
        let tables = Tables::build(base.as_ref(), &modulus)?;
        Ok(Arc::new(ExtField {
            base,
            d,
            modulus,
            tables,
        }))
    }

    pub fn base(&self) -> &Arc<Field> {
        &self.base
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    /// Code of the distinguished generator `tau`.
    pub fn tau(&self) -> u32 {
        if self.d == 1 {
            // F_q[x]/(x): tau = 0 is not useful; callers only use tau for d >= 2
            0
        } else {
            self.base.q()
        }
    }

    /// Coordinates over the base field in the basis `1, tau, ..., tau^{d-1}`.
    pub fn coords(&self, mut code: u32) -> Vec<u32> {
        let q = self.base.q();
        (0..self.d)
            .map(|_| {
                let c = code % q;
                code /= q;
                c
            })
            .collect()
    }

    pub fn from_coords(&self, coords: &[u32]) -> u32 {
        let q = self.base.q();
        coords.iter().rev().fold(0, |acc, &c| acc * q + c)
    }

    /// True when the element lies in the base field.
    pub fn in_base(&self, code: u32) -> bool {
        code < self.base.q()
    }

    /// `x -> x^(q^i)`
    pub fn frobenius(&self, a: u32, i: usize) -> u32 {
        let e = (self.base.q() as u64).pow((i % self.d) as u32);
        self.pow(a, e)
    }

    /// Lookup table of `x -> x^(q^i)` over all codes.
    pub fn frobenius_table(&self, i: usize) -> Vec<u32> {
        (0..self.order()).map(|a| self.frobenius(a, i)).collect()
    }

    /// Adds `d=<int> emod=<...>` to the base descriptor; each extension
    /// coefficient is written as its comma-joined F_p digits, coefficients
    /// separated by `;`.
    pub fn descriptor(&self) -> String {
        format!(
            "{} d={} emod={}",
            self.base.descriptor(),
            self.d,
            self.modulus_string()
        )
    }

    pub fn modulus_string(&self) -> String {
        padded(&self.modulus, self.d + 1)
            .iter()
            .map(|&c| join_ints(&self.base.digits(c)))
            .collect::<Vec<_>>()
            .join(";")
    }

    pub fn from_descriptor(s: &str) -> Result<Arc<Self>> {
        let base = Field::from_descriptor(s)?;
        let kv = parse_kv(s);
        let d: usize = get_parsed(&kv, "d")?;
        let m = parse_ext_modulus(&base, get(&kv, "emod")?)?;
        if m.degree() != Some(d) {
            return Err(Error::format("extension modulus degree does not match d"));
        }
        Self::with_modulus(base, m)
    }

    pub fn same_as(&self, other: &ExtField) -> bool {
        self.base.same_as(&other.base) && self.modulus == other.modulus
    }

    pub fn elem(self: &Arc<Self>, code: u32) -> Result<ExtFieldElem> {
        if code >= self.order() {
            return Err(Error::invalid(format!("code {code} out of range")));
        }
        Ok(ExtFieldElem {
            field: Arc::clone(self),
            code,
        })
    }
}

pub(crate) fn parse_ext_modulus(base: &Field, s: &str) -> Result<Poly> {
    let coeffs = s
        .split(';')
        .map(|tuple| base.from_digits(&parse_ints(tuple)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(Poly::from_coeffs(coeffs))
}

impl FiniteField for ExtField {
    fn order(&self) -> u32 {
        self.tables.order
    }
    fn characteristic(&self) -> u32 {
        self.base.p()
    }
    #[inline]
    fn add(&self, a: u32, b: u32) -> u32 {
        self.tables.add(a, b)
    }
    #[inline]
    fn neg(&self, a: u32) -> u32 {
        self.tables.neg[a as usize]
    }
    #[inline]
    fn mul(&self, a: u32, b: u32) -> u32 {
        self.tables.mul(a, b)
    }
    #[inline]
    fn inv(&self, a: u32) -> Option<u32> {
        self.tables.inv(a)
    }
}

impl fmt::Debug for ExtField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExtField({})", self.descriptor())
    }
}

macro_rules! checked_elem {
    ($name:ident, $field:ty) => {
        /// Element bundled with its field; binary operations check that both
        /// operands live in the same field.
        #[derive(Clone, Debug)]
        pub struct $name {
            field: Arc<$field>,
            code: u32,
        }

        impl $name {
            pub fn code(&self) -> u32 {
                self.code
            }

            pub fn field(&self) -> &Arc<$field> {
                &self.field
            }

            fn check(&self, other: &Self) -> Result<()> {
                if Arc::ptr_eq(&self.field, &other.field) || self.field.same_as(&other.field) {
                    Ok(())
                } else {
                    Err(Error::FieldMismatch)
                }
            }

            fn with(&self, code: u32) -> Self {
                Self {
                    field: Arc::clone(&self.field),
                    code,
                }
            }

            pub fn try_add(&self, other: &Self) -> Result<Self> {
                self.check(other)?;
                Ok(self.with(self.field.add(self.code, other.code)))
            }

            pub fn try_sub(&self, other: &Self) -> Result<Self> {
                self.check(other)?;
                Ok(self.with(self.field.sub(self.code, other.code)))
            }

            pub fn try_mul(&self, other: &Self) -> Result<Self> {
                self.check(other)?;
                Ok(self.with(self.field.mul(self.code, other.code)))
            }

            pub fn try_div(&self, other: &Self) -> Result<Self> {
                self.check(other)?;
                Ok(self.with(other.inv()?.code).try_mul(self)?)
            }

            pub fn inv(&self) -> Result<Self> {
                self.field
                    .inv(self.code)
                    .map(|c| self.with(c))
                    .ok_or(Error::DivisionByZero)
            }

            pub fn pow(&self, e: u64) -> Self {
                self.with(self.field.pow(self.code, e))
            }

            pub fn is_zero(&self) -> bool {
                self.code == 0
            }
        }

        impl PartialEq for $name {
            fn eq(&self, other: &Self) -> bool {
                self.code == other.code && self.check(other).is_ok()
            }
        }
    };
}

checked_elem!(FieldElem, Field);
checked_elem!(ExtFieldElem, ExtField);

fn padded(p: &Poly, len: usize) -> Vec<u32> {
    let mut v = p.coeffs().to_vec();
    v.resize(len, 0);
    v
}

pub(crate) fn join_ints(v: &[u32]) -> String {
    v.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

pub(crate) fn parse_ints(s: &str) -> Result<Vec<u32>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| Error::format(format!("bad integer {t:?}")))
        })
        .collect()
}

pub(crate) fn parse_kv(s: &str) -> Vec<(String, String)> {
    s.split_whitespace()
        .filter_map(|tok| {
            tok.split_once('=')
                .map(|(k, v)| (k.to_string(), v.to_string()))
        })
        .collect()
}

pub(crate) fn get<'a>(kv: &'a [(String, String)], key: &str) -> Result<&'a str> {
    kv.iter()
        .find(|(k, _)| k == key)
        .map(|(_, v)| v.as_str())
        .ok_or_else(|| Error::format(format!("missing key {key}")))
}

pub(crate) fn get_parsed<T: std::str::FromStr>(kv: &[(String, String)], key: &str) -> Result<T> {
    get(kv, key)?
        .parse()
        .map_err(|_| Error::format(format!("bad value for {key}")))
}
