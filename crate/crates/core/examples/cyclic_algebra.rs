//! Arithmetic in the cyclic algebra over F_q(t) with z^d = 1 + t, and its
//! specialization to d x d matrices over F_q.
//!
//! Usage: `cyclic_algebra [q] [d] [s] [alpha]` (default `3 5 1 1`).

use isocayley::cyclic::{CycAlg, specialization_point};
use isocayley::ff::{ExtField, Field};

fn main() -> isocayley::Result<()> {
    let args: Vec<String> = std::env::args().collect();
    let q: u32 = args.get(1).map_or(3, |s| s.parse().expect("q"));
    let d: usize = args.get(2).map_or(5, |s| s.parse().expect("d"));
    let s: usize = args.get(3).map_or(1, |s| s.parse().expect("s"));
    let alpha: u32 = args.get(4).map_or(1, |s| s.parse().expect("alpha"));

    let base = Field::prime(q)?;
    let alg = CycAlg::new(ExtField::new(base.clone(), d)?, s)?;

    let zd = alg.z().pow(d as i64)?;
    println!("z^{d} = {}", zd.as_central().expect("z^d is central"));

    let b = alg.one_minus_z_inv();
    let b_inv = b.inv()?;
    println!("b = 1 - z^-1 is a unit: {}", b.mul(&b_inv)?.is_one());
    println!("reduced norm of b: {}", b.reduced_norm()?);

    // z c = sigma(c) z for c in F_{q^d}.
    let c = alg.field_elem(alg.ext().tau());
    let lhs = alg.z().mul(&c)?;
    let rhs = alg.field_elem(alg.sigma_code(alg.ext().tau(), 1)).mul(&alg.z())?;
    println!("z tau = sigma(tau) z: {}", lhs.sub(&rhs)?.is_zero());

    let gamma = specialization_point(&base, alpha, d)?;
    println!("alpha = {alpha}, t -> gamma = {gamma}");
    let a = base.elem(alpha)?;
    let m = b.specialize(&a)?;
    for row in m.rows() {
        println!("  {row:?}");
    }
    let prod = b.mul(&b.conj_by_unit(alg.ext().tau())?)?;
    let direct = prod.specialize(&a)?;
    let composed = base.mat_mul(&m, &b.conj_by_unit(alg.ext().tau())?.specialize(&a)?);
    println!("specialization is multiplicative: {}", direct == composed);
    Ok(())
}
