//! Parameters of a generator construction.

use std::sync::Arc;

use crate::cayley::projmat::check_packable;
use crate::cyclic::{specialization_point, CycAlg};
use crate::error::{Error, Result};
use crate::ff::counting::gcd;
use crate::ff::field::is_prime;
use crate::ff::{ExtField, Field, FiniteField, Poly};

/// Largest extension field handled (size of the log/exp tables).
const MAX_EXT_ORDER: u64 = 1 << 22;

/// `q, d, s, alpha`, the extension and the unit generator `u`, with derived
/// `gamma = (1 + alpha)^d - 1` and `n = (q^d - 1)/(q - 1)`.
#[derive(Clone, Debug)]
pub struct GenParams {
    alg: Arc<CycAlg>,
    alpha: u32,
    gamma: u32,
    u: u32,
    n: usize,
    warnings: Vec<String>,
}

/// Optional overrides for [`GenParams::build`].
#[derive(Clone, Debug, Default)]
pub struct ParamOverrides {
    /// `alpha` as an integer (mapped into the prime subfield).
    pub alpha: Option<i64>,
    /// `alpha` as a field code; takes precedence over `alpha`.
    pub alpha_code: Option<u32>,
    pub base_modulus: Option<Poly>,
    pub ext_modulus: Option<Poly>,
    pub unit: Option<u32>,
}

impl GenParams {
    /// Defaults: `alpha = 1` for `(q, d) = (3, 5)`, otherwise `alpha = -2`.
    pub fn new(q: u32, d: usize, s: usize) -> Result<GenParams> {
        Self::build(q, d, s, &ParamOverrides::default())
    }

    pub fn with_alpha(q: u32, d: usize, s: usize, alpha: i64) -> Result<GenParams> {
        Self::build(
            q,
            d,
            s,
            &ParamOverrides {
                alpha: Some(alpha),
                ..Default::default()
            },
        )
    }

    pub fn build(q: u32, d: usize, s: usize, o: &ParamOverrides) -> Result<GenParams> {
        let (p, f) = prime_power(q)
            .ok_or_else(|| Error::invalid(format!("q={q} is not a prime power")))?;
        if q == 2 {
            return Err(Error::invalid(
                "q = 2 needs a quotient of degree e > 1, which is not supported",
            ));
        }
        if q > 256 {
            return Err(Error::invalid(format!("q={q} exceeds 256")));
        }
        if d < 2 {
            return Err(Error::invalid("d must be at least 2"));
        }
        if (q as u64).checked_pow(d as u32).is_none_or(|x| x > MAX_EXT_ORDER) {
            return Err(Error::invalid(format!("q^d = {q}^{d} is too large")));
        }
        check_packable(q, d)?;
        let base = match &o.base_modulus {
            Some(m) => Field::with_modulus(p, m.clone())?,
            None => Field::new(p, f)?,
        };
        if base.q() != q {
            return Err(Error::invalid("base modulus degree does not match q"));
        }
        let ext = match &o.ext_modulus {
            Some(m) => {
                if m.degree() != Some(d) {
                    return Err(Error::invalid("extension modulus degree does not match d"));
                }
                ExtField::with_modulus(base.clone(), m.clone())?
            }
            None => ExtField::new(base.clone(), d)?,
        };
        let alg = CycAlg::new(ext.clone(), s)?;
        let alpha = match (o.alpha_code, o.alpha) {
            (Some(c), _) if c < q => c,
            (Some(c), _) => return Err(Error::invalid(format!("alpha code {c} out of range"))),
            (None, Some(a)) => base.from_int(a),
            (None, None) if (q, d) == (3, 5) => 1,
            (None, None) => base.from_int(-2),
        };
        let gamma = specialization_point(&base, alpha, d)?;
        let u = match o.unit {
            Some(u) => {
                if u >= ext.order() || !ext.generates_quotient(u) {
                    return Err(Error::invalid(format!(
                        "u={u} does not generate F_{{q^d}}^x / F_q^x"
                    )));
                }
                u
            }
            None => ext.mult_generator(),
        };
        let n = ext.quotient_order() as usize;
        let mut warnings = Vec::new();
        if q % 2 == 0 || d % 2 == 0 || gcd(q as u64, d as u64) != 1 {
            warnings.push(format!(
                "q={q} and d={d} are not both odd and coprime; the construction is not covered by the general recipe"
            ));
        }
        if (q as u64) <= 4 * (d as u64).pow(2) + 1 {
            warnings.push(format!(
                "q={q} <= 4d^2+1 = {}; generation of PSL_d is not guaranteed a priori",
                4 * d * d + 1
            ));
        }
        Ok(GenParams {
            alg,
            alpha,
            gamma,
            u,
            n,
            warnings,
        })
    }

    /// Same field, `alpha` and `u` with a different `sigma` exponent.
    pub fn with_s(&self, s: usize) -> Result<GenParams> {
        let alg = CycAlg::new(self.alg.ext().clone(), s)?;
        Ok(GenParams {
            alg,
            ..self.clone()
        })
    }

    pub fn alg(&self) -> &Arc<CycAlg> {
        &self.alg
    }

    pub fn ext(&self) -> &Arc<ExtField> {
        self.alg.ext()
    }

    pub fn field(&self) -> &Arc<Field> {
        self.alg.base()
    }

    pub fn q(&self) -> u32 {
        self.field().q()
    }

    pub fn d(&self) -> usize {
        self.alg.degree()
    }

    pub fn s(&self) -> usize {
        self.alg.s()
    }

    pub fn alpha(&self) -> u32 {
        self.alpha
    }

    pub fn gamma(&self) -> u32 {
        self.gamma
    }

    pub fn unit(&self) -> u32 {
        self.u
    }

    /// `|Omega| = (q^d - 1)/(q - 1)`
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }
}

pub(crate) fn prime_power(q: u32) -> Option<(u32, usize)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|p| q % p == 0)?;
    if !is_prime(p as u64) {
        return None;
    }
    let mut x = q;
    let mut f = 0;
    while x % p == 0 {
        x /= p;
        f += 1;
    }
    (x == 1).then_some((p, f))
}
