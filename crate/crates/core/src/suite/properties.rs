//! Randomized invariant checks with a fixed seed.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::SuiteOptions;
use crate::cayley::io::{decode_binary, export_binary, export_text, import_text};
use crate::cayley::{bfs_build, CayleyGraph};
use crate::cyclic::{CycAlg, CycElem};
use crate::error::Result;
use crate::ff::poly::is_irreducible;
use crate::ff::{ExtField, Field, FiniteField, Place, Poly, RatFunc};
use crate::forge::*;
use crate::spectra::{dense_spectrum, walk_moments, MomentOptions, MomentSeq, Strategy};

const SEED: u64 = 0x15_0ca7;
const CASES: usize = 128;

type Named = (&'static str, fn(&mut ChaCha8Rng) -> Result<bool>);

pub fn a10(_: &SuiteOptions) -> Result<(bool, String)> {
    let checks: [Named; 7] = [
        ("frobenius", frobenius),
        ("product-formula", product_formula),
        ("matrix-homomorphism", matrix_homomorphism),
        ("specialize-multiplicative", specialize_multiplicative),
        ("moments-vs-spectrum", moments_vs_spectrum),
        ("round-trips", round_trips),
        ("parallel-determinism", parallel_determinism),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut failed = Vec::new();
    for (name, check) in checks {
        if !check(&mut rng)? {
            failed.push(name);
        }
    }
    Ok(if failed.is_empty() {
        (true, format!("{} property groups hold, {CASES} random cases each", checks.len()))
    } else {
        (false, format!("failed: {}", failed.join(", ")))
    })
}

fn frobenius(rng: &mut ChaCha8Rng) -> Result<bool> {
    let towers = [
        ExtField::new(Field::prime(3)?, 5)?,
        ExtField::new(Field::prime(5)?, 3)?,
        ExtField::new(Field::new(3, 2)?, 2)?,
    ];
    for _ in 0..CASES {
        let e = &towers[rng.random_range(0..towers.len())];
        let n = e.order();
        let (a, b) = (rng.random_range(0..n), rng.random_range(0..n));
        let d = e.degree();
        let i = rng.random_range(0..d);
        let q = e.base().q() as u64;
        let m = e.frobenius_matrix(i)?;
        let coords: Vec<u8> = e.coords(a).iter().map(|&c| c as u8).collect();
        let img: Vec<u32> = e.base().mat_apply(&m, &coords).iter().map(|&c| c as u32).collect();
        let ok = e.frobenius(e.mul(a, b), i) == e.mul(e.frobenius(a, i), e.frobenius(b, i))
            && e.frobenius(e.add(a, b), i) == e.add(e.frobenius(a, i), e.frobenius(b, i))
            && e.frobenius(a, i) == e.pow(a, q.pow(i as u32))
            && (e.frobenius(a, 1) == a) == e.in_base(a)
            && img == e.coords(e.frobenius(a, i));
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

fn product_formula(rng: &mut ChaCha8Rng) -> Result<bool> {
    let fields = [Field::prime(3)?, Field::prime(5)?, Field::new(3, 2)?];
    for _ in 0..CASES {
        let f = &fields[rng.random_range(0..fields.len())];
        let ff = f.as_ref();
        let mut places: Vec<(Poly, i64)> = Vec::new();
        while places.len() < 3 {
            let deg = rng.random_range(1..=3);
            let mut c: Vec<u32> = (0..deg).map(|_| rng.random_range(0..f.q())).collect();
            c.push(1);
            let p = Poly::from_coeffs(c);
            if p.coeff(0) != 0 && is_irreducible(&p, ff) && places.iter().all(|x| x.0 != p) {
                places.push((p, rng.random_range(-3..=3)));
            }
        }
        let t_exp = rng.random_range(-3..=3);
        let mut x = RatFunc::constant(rng.random_range(1..f.q())).mul(&RatFunc::t().pow(t_exp, ff)?, ff);
        for (p, e) in &places {
            x = x.mul(&RatFunc::from_poly(p.clone()).pow(*e, ff)?, ff);
        }
        let mut total = x.valuation(&Place::Zero, ff) + x.valuation(&Place::Infinity, ff);
        for (p, e) in &places {
            let v = x.valuation(&Place::Finite(p.clone()), ff);
            if v != *e {
                return Ok(false);
            }
            total += v * p.degree().unwrap_or(0) as i64;
        }
        if total != 0 || x.valuation(&Place::Zero, ff) != t_exp {
            return Ok(false);
        }
    }
    Ok(true)
}

fn random_ratfunc(a: &CycAlg, rng: &mut ChaCha8Rng) -> Result<RatFunc> {
    let e = a.ext().as_ref();
    let n = e.order();
    let num = Poly::from_coeffs((0..3).map(|_| rng.random_range(0..n)).collect());
    let den = match rng.random_range(0..4) {
        0 => Poly::one(),
        1 => Poly::linear(1, 1),
        2 => Poly::x(),
        _ => Poly::from_coeffs(vec![rng.random_range(0..n), 1, 1]),
    };
    RatFunc::new(num, den, e)
}

fn random_elem(a: &Arc<CycAlg>, rng: &mut ChaCha8Rng) -> Result<CycElem> {
    let c = (0..a.degree())
        .map(|_| random_ratfunc(a, rng))
        .collect::<Result<_>>()?;
    a.from_coeffs(c)
}

fn algebras() -> Result<Vec<Arc<CycAlg>>> {
    Ok(vec![
        CycAlg::new(ExtField::new(Field::prime(3)?, 3)?, 1)?,
        CycAlg::new(ExtField::new(Field::prime(5)?, 3)?, 2)?,
        CycAlg::new(ExtField::new(Field::prime(3)?, 5)?, 2)?,
    ])
}

fn matrix_homomorphism(rng: &mut ChaCha8Rng) -> Result<bool> {
    let algs = algebras()?;
    for _ in 0..CASES {
        let a = &algs[rng.random_range(0..algs.len())];
        let (x, y) = (random_elem(a, rng)?, random_elem(a, rng)?);
        if x.mul(&y)?.to_matrix() != x.to_matrix().mul(&y.to_matrix()) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn specialize_multiplicative(rng: &mut ChaCha8Rng) -> Result<bool> {
    let params = [GenParams::new(3, 5, 1)?, GenParams::new(5, 3, 2)?, GenParams::new(3, 3, 1)?];
    let mut done = 0;
    let mut tries = 0;
    while done < CASES {
        tries += 1;
        if tries > 20 * CASES {
            return Ok(false);
        }
        let p = &params[rng.random_range(0..params.len())];
        let a = p.alg();
        let alpha = p.field().elem(p.alpha())?;
        let (x, y) = (random_elem(a, rng)?, random_elem(a, rng)?);
        let (Ok(sx), Ok(sy), Ok(sxy)) = (x.specialize(&alpha), y.specialize(&alpha), x.mul(&y)?.specialize(&alpha)) else {
            continue;
        };
        if sxy != p.field().mat_mul(&sx, &sy) {
            return Ok(false);
        }
        done += 1;
    }
    Ok(true)
}

fn small_bar(q: u32, alpha_code: u32) -> Result<GenSet> {
    let o = ParamOverrides {
        alpha_code: Some(alpha_code),
        ..Default::default()
    };
    symmetrize(&build_omega(&GenParams::build(q, 2, 1, &o)?)?)
}

fn moments_vs_spectrum(_: &mut ChaCha8Rng) -> Result<bool> {
    for (q, a) in [(5, 1), (7, 1), (9, 3)] {
        let bar = small_bar(q, a)?;
        let g = bfs_build(&bar, 10_000)?;
        let m = walk_moments(&bar, 6, Strategy::GroupDp, None, &MomentOptions::default())?;
        let s = dense_spectrum(&g, None, 5000)?;
        for (k, &nk) in m.counts.iter().enumerate() {
            let exact = g.n() as f64 * nk as f64;
            let scale: f64 = s.values().iter().map(|l| l.abs().powi(k as i32)).sum();
            if (s.power_sum(k as u32) - exact).abs() > 1e-6 * scale.max(exact.abs()) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn round_trips(_: &mut ChaCha8Rng) -> Result<bool> {
    let bar = small_bar(7, 1)?;
    let g = bfs_build(&bar, 10_000)?;
    let mut text = Vec::new();
    export_text(&g, &mut text)?;
    let mut bin = Vec::new();
    export_binary(&g, &mut bin)?;
    let sets_equal = GenSet::from_text(&bar.to_text())?.keys() == bar.keys();
    let m = walk_moments(&bar, 4, Strategy::BallMitm, None, &MomentOptions::default())?;
    Ok(import_text(text.as_slice())? == g
        && decode_binary(&bin)? == g
        && sets_equal
        && MomentSeq::from_text(&m.to_text())? == m)
}

fn parallel_determinism(_: &mut ChaCha8Rng) -> Result<bool> {
    let bar = symmetrize(&build_omega(&GenParams::new(3, 3, 1)?)?)?;
    let build = |threads: usize| -> Result<Vec<u8>> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| crate::Error::Precondition(e.to_string()))?;
        let g: CayleyGraph = pool.install(|| bfs_build(&bar, 100_000))?;
        let mut buf = Vec::new();
        export_binary(&g, &mut buf)?;
        Ok(buf)
    };
    Ok(build(1)? == build(4)?)
}
