//! Generators, generator sets and the generator-set file format.

use std::fmt::Write as _;
use std::path::Path;

use sha2::{Digest, Sha256};

use super::params::{GenParams, ParamOverrides};
use crate::cayley::ProjMat;
use crate::cyclic::CycElem;
use crate::error::{Error, Result};
use crate::ff::field::{join_ints, parse_ext_modulus, parse_ints, parse_kv};
use crate::ff::{Field, Mat, Poly};
use crate::files::write_string_atomic;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Omega,
    OmegaBar,
    OmegaHat,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Omega => "omega",
            Kind::OmegaBar => "omegabar",
            Kind::OmegaHat => "omegahat",
        }
    }

    pub fn parse(s: &str) -> Result<Kind> {
        match s {
            "omega" => Ok(Kind::Omega),
            "omegabar" => Ok(Kind::OmegaBar),
            "omegahat" => Ok(Kind::OmegaHat),
            _ => Err(Error::format(format!("unknown kind {s:?}"))),
        }
    }

    pub fn is_symmetric(self) -> bool {
        self != Kind::Omega
    }
}

/// One generator: the exact finite matrix, its projective class, the
/// global lift when known, and bookkeeping.
#[derive(Clone, Debug)]
pub struct Generator {
    /// Exact image of the lift in `M_d(F_q)` (not scaled).
    pub mat: Mat,
    pub proj: ProjMat,
    pub lift: Option<CycElem>,
    /// Conjugation index: `u^j (1 - z^{-1}) u^{-j}` for Omega elements; the
    /// first letter of the witness word for products.
    pub j: usize,
    pub color: u8,
    /// Index of the inverse generator within the same set, if present.
    pub inv: Option<usize>,
    /// Witness word: indices into Omega whose product is this generator.
    pub word: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct GenSet {
    params: GenParams,
    kind: Kind,
    gens: Vec<Generator>,
}

impl GenSet {
    pub(crate) fn new(params: GenParams, kind: Kind, gens: Vec<Generator>) -> GenSet {
        GenSet { params, kind, gens }
    }

    pub fn params(&self) -> &GenParams {
        &self.params
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn field(&self) -> &std::sync::Arc<Field> {
        self.params.field()
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn get(&self, i: usize) -> &Generator {
        &self.gens[i]
    }

    pub fn projs(&self) -> Vec<ProjMat> {
        self.gens.iter().map(|g| g.proj.clone()).collect()
    }

    pub fn colors(&self) -> Vec<u8> {
        self.gens.iter().map(|g| g.color).collect()
    }

    pub fn keys(&self) -> Vec<u128> {
        let q = self.params.q();
        self.gens.iter().map(|g| g.proj.key(q)).collect()
    }

    /// Number of generators of each color `0..d`.
    pub fn color_counts(&self) -> Vec<usize> {
        let mut c = vec![0; self.params.d()];
        for g in &self.gens {
            c[g.color as usize] += 1;
        }
        c
    }

    /// Whether the projective classes are closed under inversion.
    pub fn is_inverse_closed(&self) -> bool {
        let f = self.field();
        let q = self.params.q();
        let keys: rustc_hash::FxHashSet<u128> = self.keys().into_iter().collect();
        self.gens
            .iter()
            .all(|g| keys.contains(&g.proj.inv(f).key(q)))
    }

    pub fn header(&self) -> String {
        let p = &self.params;
        format!(
            "version=1 kind={} q={} d={} s={} alpha={} mod={} bmod={} u={}",
            self.kind.name(),
            p.q(),
            p.d(),
            p.s(),
            p.alpha(),
            p.ext().modulus_string(),
            join_ints(p.field().modulus().coeffs()),
            p.unit()
        )
    }

    /// The versioned text form: header line, then one line per generator.
    pub fn to_text(&self) -> String {
        let f = self.field();
        let mut s = self.header();
        s.push('\n');
        for (i, g) in self.gens.iter().enumerate() {
            let mat: Vec<String> = g
                .mat
                .entries()
                .iter()
                .map(|&x| join_ints(&f.digits(x as u32)))
                .collect();
            let inv = g.inv.map_or("-".to_string(), |x| x.to_string());
            write!(
                s,
                "idx={i} j={} color={} inv={inv} mat={}",
                g.j,
                g.color,
                mat.join(";")
            )
            .expect("string write");
            if !g.word.is_empty() {
                s.push_str(" word=");
                s.push_str(&join_ints(&g.word));
            }
            s.push('\n');
        }
        s
    }

    /// Short content hash of the text form.
    pub fn hash(&self) -> String {
        let h = Sha256::digest(self.to_text().as_bytes());
        hex::encode(&h[..8])
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        write_string_atomic(path, &self.to_text())
    }

    pub fn read(path: &Path) -> Result<GenSet> {
        Self::from_text(&std::fs::read_to_string(path)?)
    }

    /// Parses the text form. Lifts are not stored in files, so imported
    /// generators have `lift = None`.
    pub fn from_text(text: &str) -> Result<GenSet> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::format("empty generator file"))?;
        let kv = parse_kv(header);
        let get = |k: &str| -> Result<&str> {
            kv.iter()
                .find(|(key, _)| key == k)
                .map(|(_, v)| v.as_str())
                .ok_or_else(|| Error::format(format!("missing header key {k}")))
        };
        let num = |k: &str| -> Result<u64> {
            get(k)?
                .parse()
                .map_err(|_| Error::format(format!("bad value for {k}")))
        };
        if get("version")? != "1" {
            return Err(Error::format("unsupported generator file version"));
        }
        let kind = Kind::parse(get("kind")?)?;
        let q = num("q")? as u32;
        let d = num("d")? as usize;
        let s = num("s")? as usize;
        let (p, _) = super::params::prime_power(q)
            .ok_or_else(|| Error::format("q is not a prime power"))?;
        let base_modulus = match get("bmod") {
            Ok(b) => Some(Poly::from_coeffs(parse_ints(b)?)),
            Err(_) => None,
        };
        let base = match &base_modulus {
            Some(m) => Field::with_modulus(p, m.clone())?,
            None => Field::new(p, super::params::prime_power(q).expect("checked").1)?,
        };
        let ext_modulus = parse_ext_modulus(&base, get("mod")?)?;
        let o = ParamOverrides {
            alpha_code: Some(num("alpha")? as u32),
            base_modulus,
            ext_modulus: Some(ext_modulus),
            unit: get("u").ok().map(|u| u.parse()).transpose().map_err(|_| Error::format("bad u"))?,
            ..Default::default()
        };
        let params = GenParams::build(q, d, s, &o)?;
        let f = params.field().clone();
        let mut gens = Vec::new();
        for (i, line) in lines.enumerate() {
            let kv = parse_kv(line);
            let get = |k: &str| -> Result<&str> {
                kv.iter()
                    .find(|(key, _)| key == k)
                    .map(|(_, v)| v.as_str())
                    .ok_or_else(|| Error::format(format!("line {}: missing {k}", i + 2)))
            };
            let idx: usize = get("idx")?.parse().map_err(|_| Error::format("bad idx"))?;
            if idx != i {
                return Err(Error::format(format!("generator {i} has idx={idx}")));
            }
            let entries = get("mat")?
                .split(';')
                .map(|t| f.from_digits(&parse_ints(t)?).map(|c| c as u8))
                .collect::<Result<Vec<_>>>()?;
            if entries.len() != d * d {
                return Err(Error::format(format!("generator {i}: wrong entry count")));
            }
            let mat = Mat::from_entries(d, entries);
            let proj = ProjMat::new(&f, &mat)?;
            let inv = match get("inv")? {
                "-" => None,
                x => Some(x.parse().map_err(|_| Error::format("bad inv"))?),
            };
            let word = match get("word") {
                Ok(w) => parse_ints(w)?,
                Err(_) => Vec::new(),
            };
            gens.push(Generator {
                mat,
                proj,
                lift: None,
                j: get("j")?.parse().map_err(|_| Error::format("bad j"))?,
                color: get("color")?.parse().map_err(|_| Error::format("bad color"))?,
                inv,
                word,
            });
        }
        if gens.iter().any(|g| g.inv.is_some_and(|x| x >= gens.len())) {
            return Err(Error::format("inverse partner out of range"));
        }
        Ok(GenSet { params, kind, gens })
    }
}
