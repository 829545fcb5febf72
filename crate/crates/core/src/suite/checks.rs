use std::collections::BTreeSet;

use num_bigint::BigUint;

use super::fixtures::*;
use super::SuiteOptions;
use crate::cayley::bfs_build;
use crate::error::Result;
use crate::ff::{family_size, pgl_order, ExtField, Field, FiniteField, Mat, Poly, RatFunc};
use crate::forge::*;
use crate::spectra::{walk_moments, MomentOptions, MomentSeq, Strategy};

type Outcome = Result<(bool, String)>;

fn f243() -> Result<std::sync::Arc<ExtField>> {
    ExtField::with_modulus(Field::prime(3)?, Poly::from_coeffs(vec![2, 2, 0, 0, 0, 1]))
}

/// `b^(s)`: the specialization of `1 - z^{-1}`, the first element of Omega.
fn first_generator(q: u32, d: usize, s: usize) -> Result<Mat> {
    let p = GenParams::new(q, d, s)?;
    p.alg().one_minus_z_inv().specialize(&p.field().elem(p.alpha())?)
}

pub fn a1(_: &SuiteOptions) -> Outcome {
    let e = f243()?;
    let default = GenParams::new(3, 5, 1)?;
    let omega_first = |s| -> Result<Mat> { Ok(build_omega(&GenParams::new(3, 5, s)?)?.get(0).mat.clone()) };
    let checks = [
        ("modulus", default.ext().same_as(&e)),
        ("alpha", default.alpha() == 1),
        ("phi_1", e.frobenius_matrix(1)? == phi1()),
        ("theta", e.regular_rep(e.tau()) == theta()),
        ("b^(1)", omega_first(1)? == b1()),
        ("b^(2)", omega_first(2)? == b2()),
    ];
    Ok(report(&checks))
}

pub fn a2(_: &SuiteOptions) -> Outcome {
    let e = f243()?;
    let t = e.tau();
    let t11 = e.pow(t, 11);
    let checks = [
        ("t^121 = 1", e.pow(t, 121) == 1),
        ("t^11 = t^3 - t^2 + t", e.coords(t11) == X_POW_11),
        ("t^11 != 1", t11 != 1),
    ];
    Ok(report(&checks))
}

pub fn a3(_: &SuiteOptions) -> Outcome {
    let f = Field::prime(3)?;
    let b1_cubed = f.mat_pow(&b1(), 3);
    let b2_cubed = f.mat_pow(&b2(), 3);
    let mut checks = vec![
        ("b1^3 = b2".to_string(), b1_cubed == b2()),
        ("b2^3 = b1".to_string(), b2_cubed == b1()),
    ];
    // the q-th power of b^(i) is b^(qi mod d)
    for (q, d) in [(3u32, 5usize), (5, 3), (7, 3), (3, 7)] {
        let gens: Vec<Mat> = (0..d)
            .map(|s| if s == 0 { Ok(Mat::identity(d)) } else { first_generator(q, d, s) })
            .collect::<Result<_>>()?;
        let fq = Field::prime(q)?;
        for s in 1..d {
            let ok = fq.mat_pow(&gens[s], q as u64) == gens[s * q as usize % d];
            checks.push((format!("(q,d)=({q},{d}) b^({s})^q"), ok));
        }
    }
    let mut note = String::new();
    if b1_cubed != b2() {
        let b3 = first_generator(3, 5, 3)?;
        note = format!("; b1^3 = b^(3) is {}", b1_cubed == b3);
    }
    let checks: Vec<(&str, bool)> = checks.iter().map(|(n, b)| (n.as_str(), *b)).collect();
    let (ok, detail) = report(&checks);
    Ok((ok, detail + &note))
}

pub fn a4(opts: &SuiteOptions) -> Outcome {
    let p = GenParams::new(3, 5, 1)?;
    let omega = build_omega(&p)?;
    let bar = symmetrize(&omega)?;
    let (hat, rep) = build_omega_hat(&omega, opts.mem_budget)?;
    let classes = &hat.color_counts()[1..];
    let ok = omega.len() == OMEGA_SIZE
        && bar.len() == OMEGA_BAR_SIZE
        && hat.len() == OMEGA_HAT_SIZE
        && classes == OMEGA_HAT_CLASSES
        && rep.verified + rep.rejected == rep.candidates;
    Ok((
        ok,
        format!(
            "|Omega|={} |Omega-bar|={} |Omega-hat|={} classes={:?} candidates={} verified={} rejected={}",
            omega.len(),
            bar.len(),
            hat.len(),
            classes,
            rep.candidates,
            rep.verified,
            rep.rejected
        ),
    ))
}

pub fn a5(_: &SuiteOptions) -> Outcome {
    let p = GenParams::new(3, 5, 1)?;
    let omega = build_omega(&p)?;
    let f = p.field().as_ref();
    let expect = RatFunc::new(Poly::x(), Poly::linear(1, 1), f)?;
    let mut good = 0;
    for g in omega.generators() {
        let lift = g.lift.as_ref().expect("built Omega carries lifts");
        if lift.reduced_norm()? == expect {
            good += 1;
        }
    }
    Ok((
        good == OMEGA_SIZE && omega.len() == OMEGA_SIZE,
        format!("{good}/{} norms equal t/(1+t)", omega.len()),
    ))
}

/// Every reduced echelon basis of a nonzero proper subspace of `F_q^d`,
/// enumerated by pivot columns and free entries.
fn echelon_subspaces(f: &Field, d: usize) -> BTreeSet<Vec<Vec<u8>>> {
    let q = f.q() as usize;
    let mut out = BTreeSet::new();
    for mask in 1u32..(1 << d) - 1 {
        let pivots: Vec<usize> = (0..d).filter(|&c| mask >> c & 1 == 1).collect();
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(i, &pc)| ((pc + 1)..d).filter(|c| mask >> c & 1 == 0).map(move |c| (i, c)))
            .collect();
        for mut code in 0..q.pow(free.len() as u32) {
            let mut rows = vec![vec![0u8; d]; pivots.len()];
            for (i, &pc) in pivots.iter().enumerate() {
                rows[i][pc] = 1;
            }
            for &(i, c) in &free {
                rows[i][c] = (code % q) as u8;
                code /= q;
            }
            out.insert(rows);
        }
    }
    out
}

pub fn a6(opts: &SuiteOptions) -> Outcome {
    let p = GenParams::new(3, 5, 1)?;
    let (hat, _) = build_omega_hat(&build_omega(&p)?, opts.mem_budget)?;
    let mut seen = BTreeSet::new();
    let mut dims_ok = true;
    for g in hat.generators() {
        let s = attach_subspace(g)?;
        dims_ok &= s.len() == 5 - g.color as usize;
        seen.insert(s);
    }
    let oracle = echelon_subspaces(p.field(), 5);
    let ok = seen.len() == hat.len() && seen == oracle && dims_ok;
    Ok((
        ok,
        format!(
            "{} generators, {} distinct subspaces, {} subspaces exist, codimension matches color: {dims_ok}",
            hat.len(),
            seen.len(),
            oracle.len()
        ),
    ))
}

pub fn a7(_: &SuiteOptions) -> Outcome {
    let p = GenParams::with_alpha(5, 3, 1, -2)?;
    let bar = symmetrize(&build_omega(&p)?)?;
    let g = bfs_build(&bar, 2_000_000)?;
    let n = BigUint::from(g.n());
    let ok = g.n() == PGL3_F5
        && n == pgl_order(3, 5)
        && n == expected_group_order(&p)
        && g.r() == 62
        && g.is_symmetric()
        && g.edges_symmetric()
        && g.is_connected();
    Ok((
        ok,
        format!(
            "{} vertices, |PGL_3(F_5)|={}, expected index {}, degree {}",
            g.n(),
            pgl_order(3, 5),
            expected_index(&p),
            g.r()
        ),
    ))
}

fn bar(q: u32, d: usize, s: usize) -> Result<GenSet> {
    symmetrize(&build_omega(&GenParams::new(q, d, s)?)?)
}

fn moment_opts(opts: &SuiteOptions) -> MomentOptions {
    MomentOptions {
        mem_budget: opts.mem_budget,
        ..Default::default()
    }
}

fn show(m: &MomentSeq) -> String {
    let v: Vec<String> = m.counts.iter().map(u128::to_string).collect();
    v.join(",")
}

pub fn a8(opts: &SuiteOptions) -> Outcome {
    let o = moment_opts(opts);
    let m1 = walk_moments(&bar(3, 5, 1)?, 6, Strategy::BallMitm, None, &o)?;
    let m2 = walk_moments(&bar(3, 5, 2)?, 6, Strategy::BallMitm, None, &o)?;
    Ok((
        m1.counts == m2.counts,
        format!("s=1: [{}] s=2: [{}] (partial evidence: k<=6 only)", show(&m1), show(&m2)),
    ))
}

pub fn a9(opts: &SuiteOptions) -> Outcome {
    let o = moment_opts(opts);
    let (x, y) = (bar(5, 3, 1)?, bar(5, 3, 2)?);
    let d1 = walk_moments(&x, 10, Strategy::GroupDp, None, &o)?;
    let d2 = walk_moments(&y, 10, Strategy::GroupDp, None, &o)?;
    let b1 = walk_moments(&x, 8, Strategy::BallMitm, None, &o)?;
    let b2 = walk_moments(&y, 8, Strategy::BallMitm, None, &o)?;
    let agree = b1.counts == d1.counts[..=8] && b2.counts == d2.counts[..=8];
    Ok((
        d1.counts == d2.counts && agree,
        format!(
            "s=1: [{}] s=2: [{}]; ball-mitm agrees for k<=8: {agree}",
            show(&d1),
            show(&d2)
        ),
    ))
}

/// Order of `q` in `(Z/d)^x / {+-1}` by repeated multiplication.
fn brute_family_size(q: u64, d: u64) -> usize {
    let mut x = q % d;
    let mut m = 1;
    while x != 1 % d && x != d - 1 {
        x = x * q % d;
        m += 1;
    }
    m
}

pub fn a11(_: &SuiteOptions) -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for (q, d, m) in FAMILY_SIZES {
        let got = family_size(q, d)?;
        let brute = brute_family_size(q, d);
        ok &= got == m && brute == m;
        parts.push(format!("(q,d)=({q},{d}): m={got} brute={brute}"));
    }
    let fam = family(&bar(3, 5, 1)?)?;
    ok &= fam.len() == 2;
    parts.push(format!("family of (3,5) built with {} sets", fam.len()));
    Ok((ok, parts.join("; ")))
}

fn report(checks: &[(&str, bool)]) -> (bool, String) {
    let failed: Vec<&str> = checks.iter().filter(|c| !c.1).map(|c| c.0).collect();
    if failed.is_empty() {
        (true, format!("{} checks hold", checks.len()))
    } else {
        (false, format!("failed: {}", failed.join(", ")))
    }
}

