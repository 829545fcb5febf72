//! The cyclic algebra `D = F_{q^d}(t)[z]` with `z a = sigma(a) z` and
//! `z^d = 1 + t`, where `sigma` is the `s`-th power of Frobenius.
//!
//! Elements are stored as coefficient vectors `(c_0, ..., c_{d-1})` in the
//! basis `1, z, ..., z^{d-1}`. Two matrix models are derived from them: the
//! regular representation over `F_{q^d}(t)` ([`CycElem::to_matrix`]) and the
//! specialization to `M_d(F_q)` at a point `t = gamma` ([`CycElem::specialize`]).

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ff::field::{parse_kv, FiniteField};
use crate::ff::{ExtField, Field, FieldElem, Mat, Place, Poly, RatFunc};

#[derive(Debug)]
pub struct CycAlg {
    ext: Arc<ExtField>,
    s: usize,
    // frob[i] = table of x -> x^(q^i)
    frob: Vec<Vec<u32>>,
}

impl CycAlg {
    pub fn new(ext: Arc<ExtField>, s: usize) -> Result<Arc<Self>> {
        let d = ext.degree();
        if d < 2 {
            return Err(Error::invalid("the algebra needs d >= 2"));
        }
        if s == 0 || s >= d || crate::ff::counting::gcd(s as u64, d as u64) != 1 {
            return Err(Error::invalid(format!(
                "sigma exponent s={s} must lie in 1..{d} and be coprime to d={d}"
            )));
        }
        let frob = (0..d).map(|i| ext.frobenius_table(i)).collect();
        Ok(Arc::new(CycAlg { ext, s, frob }))
    }

    pub fn ext(&self) -> &Arc<ExtField> {
        &self.ext
    }

    pub fn base(&self) -> &Arc<Field> {
        self.ext.base()
    }

    pub fn degree(&self) -> usize {
        self.ext.degree()
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn same_as(&self, other: &CycAlg) -> bool {
        self.s == other.s && self.ext.same_as(&other.ext)
    }

    /// `sigma^k` applied to a field code; `k` may be negative.
    pub fn sigma_code(&self, a: u32, k: i64) -> u32 {
        self.frob[self.frob_index(k)][a as usize]
    }

    /// `sigma^k` applied coefficient-wise to a rational function.
    pub fn sigma(&self, c: &RatFunc, k: i64) -> RatFunc {
        let i = self.frob_index(k);
        if i == 0 {
            return c.clone();
        }
        let table = &self.frob[i];
        c.map_coeffs(|x| table[x as usize])
    }

    fn frob_index(&self, k: i64) -> usize {
        let d = self.degree() as i64;
        (self.s as i64 * k).rem_euclid(d) as usize
    }

    /// The central element `1 + t`.
    pub fn norm_constant() -> RatFunc {
        RatFunc::from_poly(Poly::linear(1, 1))
    }

    pub fn from_coeffs(self: &Arc<Self>, c: Vec<RatFunc>) -> Result<CycElem> {
        if c.len() != self.degree() {
            return Err(Error::invalid(format!(
                "expected {} coefficients, got {}",
                self.degree(),
                c.len()
            )));
        }
        Ok(CycElem {
            alg: Arc::clone(self),
            c,
        })
    }

    pub fn zero(self: &Arc<Self>) -> CycElem {
        self.scalar(RatFunc::zero())
    }

    pub fn one(self: &Arc<Self>) -> CycElem {
        self.scalar(RatFunc::one())
    }

    /// `c * z^0` for `c` in `F_{q^d}(t)`.
    pub fn scalar(self: &Arc<Self>, c: RatFunc) -> CycElem {
        let mut v = vec![RatFunc::zero(); self.degree()];
        v[0] = c;
        CycElem {
            alg: Arc::clone(self),
            c: v,
        }
    }

    /// The constant `a` of `F_{q^d}`.
    pub fn field_elem(self: &Arc<Self>, a: u32) -> CycElem {
        self.scalar(RatFunc::constant(a))
    }

    /// `c * z^j` for `0 <= j < d`.
    pub fn monomial(self: &Arc<Self>, c: RatFunc, j: usize) -> CycElem {
        let mut v = vec![RatFunc::zero(); self.degree()];
        v[j] = c;
        CycElem {
            alg: Arc::clone(self),
            c: v,
        }
    }

    pub fn z(self: &Arc<Self>) -> CycElem {
        self.monomial(RatFunc::one(), 1)
    }

    /// `z^{-1} = (1+t)^{-1} z^{d-1}`
    pub fn z_inv(self: &Arc<Self>) -> CycElem {
        let c = Self::norm_constant()
            .inv(self.ext.as_ref())
            .expect("1+t is nonzero");
        self.monomial(c, self.degree() - 1)
    }

    /// `1 - z^{-1}`
    pub fn one_minus_z_inv(self: &Arc<Self>) -> CycElem {
        self.one().sub(&self.z_inv()).expect("same algebra")
    }
}

#[derive(Clone)]
pub struct CycElem {
    alg: Arc<CycAlg>,
    c: Vec<RatFunc>,
}

impl PartialEq for CycElem {
    fn eq(&self, other: &Self) -> bool {
        self.alg.same_as(&other.alg) && self.c == other.c
    }
}

impl Eq for CycElem {}

impl fmt::Debug for CycElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.c.iter()).finish()
    }
}

impl CycElem {
    pub fn alg(&self) -> &Arc<CycAlg> {
        &self.alg
    }

    pub fn coeffs(&self) -> &[RatFunc] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(RatFunc::is_zero)
    }

    fn check(&self, other: &CycElem) -> Result<()> {
        if Arc::ptr_eq(&self.alg, &other.alg) || self.alg.same_as(&other.alg) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    fn with(&self, c: Vec<RatFunc>) -> CycElem {
        CycElem {
            alg: Arc::clone(&self.alg),
            c,
        }
    }

    pub fn add(&self, other: &CycElem) -> Result<CycElem> {
        self.check(other)?;
        let e = self.alg.ext.as_ref();
        Ok(self.with(
            self.c
                .iter()
                .zip(&other.c)
                .map(|(a, b)| a.add(b, e))
                .collect(),
        ))
    }

    pub fn neg(&self) -> CycElem {
        let e = self.alg.ext.as_ref();
        self.with(self.c.iter().map(|a| a.neg(e)).collect())
    }

    pub fn sub(&self, other: &CycElem) -> Result<CycElem> {
        self.add(&other.neg())
    }

    /// Left multiplication by the scalar `c` in `F_{q^d}(t)`.
    pub fn scale(&self, c: &RatFunc) -> CycElem {
        let e = self.alg.ext.as_ref();
        self.with(self.c.iter().map(|a| c.mul(a, e)).collect())
    }

    /// Product in `D`: `(a_i z^i)(b_j z^j) = a_i sigma^i(b_j) z^{i+j}`, with
    /// `z^d` folded to `1 + t`.
    pub fn mul(&self, other: &CycElem) -> Result<CycElem> {
        self.check(other)?;
        let alg = &self.alg;
        let e = alg.ext.as_ref();
        let d = alg.degree();
        let one_t = CycAlg::norm_constant();
        let mut out = vec![RatFunc::zero(); d];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let mut term = a.mul(&alg.sigma(b, i as i64), e);
                let k = i + j;
                if k >= d {
                    term = term.mul(&one_t, e);
                }
                out[k % d] = out[k % d].add(&term, e);
            }
        }
        Ok(self.with(out))
    }

    pub fn pow(&self, k: i64) -> Result<CycElem> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut acc = self.alg.one();
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base)?;
        }
        Ok(acc)
    }

    /// Two-sided inverse. Right multiplication by `self` is
    /// `F_{q^d}(t)`-linear in the coefficient vector, so `x * self = 1` is a
    /// `d x d` linear system.
    pub fn inv(&self) -> Result<CycElem> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let alg = &self.alg;
        let e = alg.ext.as_ref();
        let d = alg.degree();
        let one_t = CycAlg::norm_constant();
        let mut m: Vec<Vec<RatFunc>> = (0..d)
            .map(|k| {
                (0..d)
                    .map(|j| {
                        let a = &self.c[(k + d - j) % d];
                        let v = alg.sigma(a, j as i64);
                        if j > k {
                            v.mul(&one_t, e)
                        } else {
                            v
                        }
                    })
                    .collect()
            })
            .collect();
        let mut rhs = vec![RatFunc::zero(); d];
        rhs[0] = RatFunc::one();
        let x = solve(&mut m, &mut rhs, e).ok_or(Error::NotInvertible)?;
        let inv = self.with(x);
        if !self.mul(&inv)?.is_one() {
            return Err(Error::NotInvertible);
        }
        Ok(inv)
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1..].iter().all(RatFunc::is_zero)
    }

    /// The `F_q(t)`-scalar this element equals, if it is one.
    pub fn as_central(&self) -> Option<RatFunc> {
        if self.c[1..].iter().any(|c| !c.is_zero()) {
            return None;
        }
        let q = self.alg.base().q();
        let c = &self.c[0];
        let rational = c
            .num()
            .coeffs()
            .iter()
            .chain(c.den().coeffs())
            .all(|&x| x < q);
        rational.then(|| c.clone())
    }

    /// `u * self * u^{-1}` for a unit `u` of `F_{q^d}`:
    /// `c_j z^j -> c_j * u / sigma^j(u) * z^j`.
    pub fn conj_by_unit(&self, u: u32) -> Result<CycElem> {
        let alg = &self.alg;
        let e = alg.ext.as_ref();
        let u_inv = e.inv(u).ok_or(Error::DivisionByZero)?;
        Ok(self.with(
            self.c
                .iter()
                .enumerate()
                .map(|(j, c)| {
                    let f = e.mul(u, alg.sigma_code(u_inv, j as i64));
                    c.scale(f, e)
                })
                .collect(),
        ))
    }

    /// Regular representation over `F_{q^d}(t)`: a field element `c` maps
    /// to `diag(c, sigma^{-1} c, ..., sigma^{-(d-1)} c)`, and `z` to the
    /// matrix with `1` at `(j+1, j)` and `1+t` in the top-right corner.
    pub fn to_matrix(&self) -> GlobalMat {
        let alg = &self.alg;
        let e = alg.ext.as_ref();
        let d = alg.degree();
        let one_t = CycAlg::norm_constant();
        let mut m = vec![RatFunc::zero(); d * d];
        for (j, c) in self.c.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for col in 0..d {
                let row = (col + j) % d;
                let mut v = alg.sigma(c, -(row as i64));
                if col + j >= d {
                    v = v.mul(&one_t, e);
                }
                m[row * d + col] = v;
            }
        }
        GlobalMat {
            ext: Arc::clone(&alg.ext),
            n: d,
            e: m,
        }
    }

    /// Determinant of [`Self::to_matrix`], as an element of `F_q(t)`.
    pub fn reduced_norm(&self) -> Result<RatFunc> {
        let det = self.to_matrix().det();
        let q = self.alg.base().q();
        let rational = det
            .num()
            .coeffs()
            .iter()
            .chain(det.den().coeffs())
            .all(|&x| x < q);
        if !rational {
            return Err(Error::NormNotCentral(format!("{det}")));
        }
        Ok(det)
    }

    /// Minimum `t`-adic valuation over the coefficients.
    pub fn min_valuation_at_zero(&self) -> i64 {
        let e = self.alg.ext.as_ref();
        self.c
            .iter()
            .map(|c| c.valuation(&Place::Zero, e))
            .min()
            .expect("d >= 2")
    }

    /// Multiply by the central element `t^k`.
    pub fn shift_t(&self, k: i64) -> CycElem {
        let e = self.alg.ext.as_ref();
        let tk = RatFunc::t().pow(k, e).expect("t is nonzero");
        self.scale(&tk)
    }

    /// Image in `M_d(F_q)` under `t -> gamma`, `c -> regular_rep(c(gamma))`,
    /// `z -> root * frobenius_matrix(s)`. This is a ring homomorphism on
    /// elements regular at `gamma` provided `root^d = 1 + gamma`.
    pub fn evaluate_model(&self, gamma: u32, root: u32) -> Result<Mat> {
        let alg = &self.alg;
        let e = alg.ext.as_ref();
        let base = alg.base();
        let d = alg.degree();
        let phi = e.frobenius_matrix(alg.s)?;
        let zimg = base.mat_scale(&phi, root as u8);
        let mut zpow = Mat::identity(d);
        let mut out = Mat::zero(d);
        for (j, c) in self.c.iter().enumerate() {
            if j > 0 {
                zpow = base.mat_mul(&zpow, &zimg);
            }
            if c.is_zero() {
                continue;
            }
            let v = c.eval(gamma, e).map_err(|_| {
                Error::Pole(format!("coefficient {j} = {c} at t={gamma}"))
            })?;
            let term = base.mat_mul(&e.regular_rep(v), &zpow);
            out = base.mat_add(&out, &term);
        }
        Ok(out)
    }

    /// Reduction of the congruence quotient map at `t = gamma`, where
    /// `gamma = (1 + alpha)^d - 1` and `z -> (1 + alpha) * frobenius_matrix(s)`.
    pub fn specialize(&self, alpha: &FieldElem) -> Result<Mat> {
        let base = self.alg.base();
        if !alpha.field().same_as(base) {
            return Err(Error::FieldMismatch);
        }
        let a = alpha.code();
        let gamma = specialization_point(base, a, self.alg.degree())?;
        self.evaluate_model(gamma, base.add(1, a))
    }

    /// `d` lines of rational functions after a `version=1` header that
    /// names the algebra.
    pub fn to_text(&self) -> String {
        let mut s = format!(
            "version=1 s={} {}\n",
            self.alg.s,
            self.alg.ext.descriptor()
        );
        for c in &self.c {
            s.push_str(&c.to_string());
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<CycElem> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::format("empty input"))?;
        let alg = parse_alg_header(header)?;
        let e = alg.ext.as_ref();
        let c = lines
            .map(|l| RatFunc::parse(l.trim(), e))
            .collect::<Result<Vec<_>>>()?;
        alg.from_coeffs(c).map_err(|err| Error::format(err.to_string()))
    }
}

fn parse_alg_header(header: &str) -> Result<Arc<CycAlg>> {
    let kv = parse_kv(header);
    let get = |k: &str| {
        kv.iter()
            .find(|(key, _)| key == k)
            .map(|(_, v)| v.as_str())
            .ok_or_else(|| Error::format(format!("missing key {k}")))
    };
    if get("version")? != "1" {
        return Err(Error::format("unsupported version"));
    }
    let s: usize = get("s")?
        .parse()
        .map_err(|_| Error::format("bad s"))?;
    let ext = ExtField::from_descriptor(header)?;
    CycAlg::new(ext, s)
}

/// `gamma = (1 + alpha)^d - 1` for the degree-`d` specialization; rejects
/// `alpha` or `gamma` in `{0, -1}`.
pub fn specialization_point(base: &Field, alpha: u32, d: usize) -> Result<u32> {
    let minus_one = base.neg(1);
    if alpha == 0 || alpha == minus_one {
        return Err(Error::invalid(format!("alpha={alpha} must avoid 0 and -1")));
    }
    let gamma = base.sub(base.pow(base.add(1, alpha), d as u64), 1);
    if gamma == 0 || gamma == minus_one {
        return Err(Error::invalid(format!(
            "gamma=(1+alpha)^{d}-1={gamma} must avoid 0 and -1"
        )));
    }
    Ok(gamma)
}

/// Solve `m x = rhs` over `F_{q^d}(t)` by Gaussian elimination; `None` if
/// singular.
fn solve(m: &mut [Vec<RatFunc>], rhs: &mut [RatFunc], e: &ExtField) -> Option<Vec<RatFunc>> {
    let n = rhs.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        rhs.swap(col, piv);
        let inv = m[col][col].inv(e).ok()?;
        for k in col..n {
            m[col][k] = m[col][k].mul(&inv, e);
        }
        rhs[col] = rhs[col].mul(&inv, e);
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for k in col..n {
                let v = f.mul(&m[col][k], e);
                m[r][k] = m[r][k].sub(&v, e);
            }
            let v = f.mul(&rhs[col], e);
            rhs[r] = rhs[r].sub(&v, e);
        }
    }
    Some(rhs.to_vec())
}

/// A `d x d` matrix over `F_{q^d}(t)`, row-major.
#[derive(Clone)]
pub struct GlobalMat {
    ext: Arc<ExtField>,
    n: usize,
    e: Vec<RatFunc>,
}

impl PartialEq for GlobalMat {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.e == other.e && self.ext.same_as(&other.ext)
    }
}

impl Eq for GlobalMat {}

impl fmt::Debug for GlobalMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut l = f.debug_list();
        for r in 0..self.n {
            l.entry(&&self.e[r * self.n..(r + 1) * self.n]);
        }
        l.finish()
    }
}

impl GlobalMat {
    pub fn new(ext: Arc<ExtField>, n: usize, entries: Vec<RatFunc>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::invalid("entry count is not n^2"));
        }
        Ok(GlobalMat { ext, n, e: entries })
    }

    pub fn identity(ext: Arc<ExtField>, n: usize) -> Self {
        let mut e = vec![RatFunc::zero(); n * n];
        for i in 0..n {
            e[i * n + i] = RatFunc::one();
        }
        GlobalMat { ext, n, e }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> &RatFunc {
        &self.e[r * self.n + c]
    }

    pub fn entries(&self) -> &[RatFunc] {
        &self.e
    }

    pub fn mul(&self, o: &GlobalMat) -> GlobalMat {
        let n = self.n;
        let f = self.ext.as_ref();
        let mut out = vec![RatFunc::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = &self.e[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &o.e[k * n + j];
                    if !b.is_zero() {
                        out[i * n + j] = out[i * n + j].add(&a.mul(b, f), f);
                    }
                }
            }
        }
        GlobalMat {
            ext: Arc::clone(&self.ext),
            n,
            e: out,
        }
    }

    pub fn sub(&self, o: &GlobalMat) -> GlobalMat {
        let f = self.ext.as_ref();
        GlobalMat {
            ext: Arc::clone(&self.ext),
            n: self.n,
            e: self.e.iter().zip(&o.e).map(|(a, b)| a.sub(b, f)).collect(),
        }
    }

    pub fn scale(&self, c: &RatFunc) -> GlobalMat {
        let f = self.ext.as_ref();
        GlobalMat {
            ext: Arc::clone(&self.ext),
            n: self.n,
            e: self.e.iter().map(|a| c.mul(a, f)).collect(),
        }
    }

    pub fn det(&self) -> RatFunc {
        let n = self.n;
        let f = self.ext.as_ref();
        let mut m: Vec<Vec<RatFunc>> = (0..n).map(|r| self.e[r * n..(r + 1) * n].to_vec()).collect();
        let mut det = RatFunc::one();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
                return RatFunc::zero();
            };
            if piv != col {
                m.swap(col, piv);
                det = det.neg(f);
            }
            det = det.mul(&m[col][col], f);
            let inv = m[col][col].inv(f).expect("pivot is nonzero");
            for r in col + 1..n {
                if m[r][col].is_zero() {
                    continue;
                }
                let factor = m[r][col].mul(&inv, f);
                for k in col..n {
                    let v = factor.mul(&m[col][k], f);
                    m[r][k] = m[r][k].sub(&v, f);
                }
            }
        }
        det
    }

    /// Divide by the first nonzero entry in row-major order. Returns the
    /// normalized matrix and the divisor.
    pub fn canonical(&self) -> Result<(GlobalMat, RatFunc)> {
        let f = self.ext.as_ref();
        let lead = self
            .e
            .iter()
            .find(|x| !x.is_zero())
            .cloned()
            .ok_or_else(|| Error::invalid("zero matrix has no projective class"))?;
        let inv = lead.inv(f)?;
        Ok((self.scale(&inv), lead))
    }

    /// Equality up to an `F_q(t)^x` scalar.
    pub fn projectively_equal(&self, o: &GlobalMat) -> Result<bool> {
        let (a, la) = self.canonical()?;
        let (b, lb) = o.canonical()?;
        if a.e != b.e {
            return Ok(false);
        }
        let ratio = la.div(&lb, self.ext.as_ref())?;
        let q = self.ext.base().q();
        Ok(ratio
            .num()
            .coeffs()
            .iter()
            .chain(ratio.den().coeffs())
            .all(|&x| x < q))
    }

    /// `version=1 n=<n> <ext descriptor>` then one row per line, entries
    /// separated by spaces.
    pub fn to_text(&self) -> String {
        let mut s = format!("version=1 n={} {}\n", self.n, self.ext.descriptor());
        for r in 0..self.n {
            let row: Vec<String> = self.e[r * self.n..(r + 1) * self.n]
                .iter()
                .map(|x| x.to_string())
                .collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<GlobalMat> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::format("empty input"))?;
        let kv = parse_kv(header);
        let get = |k: &str| {
            kv.iter()
                .find(|(key, _)| key == k)
                .map(|(_, v)| v.clone())
                .ok_or_else(|| Error::format(format!("missing key {k}")))
        };
        if get("version")? != "1" {
            return Err(Error::format("unsupported version"));
        }
        let n: usize = get("n")?.parse().map_err(|_| Error::format("bad n"))?;
        let ext = ExtField::from_descriptor(header)?;
        let mut e = Vec::with_capacity(n * n);
        for line in lines {
            for tok in line.split_whitespace() {
                e.push(RatFunc::parse(tok, ext.as_ref())?);
            }
        }
        if e.len() != n * n {
            return Err(Error::format("truncated matrix"));
        }
        Ok(GlobalMat { ext, n, e })
    }
}
