//! The field tower F_p ⊂ F_q ⊂ F_{q^d}, Frobenius and q-analog counts.
//!
//! Usage: `field_tower [p] [f] [d]` (default `3 1 5`, i.e. F_3 ⊂ F_{3^5}).

use isocayley::ff::{family_size, gaussian_binomial, pgl_order, ExtField, Field, FiniteField};

fn main() -> isocayley::Result<()> {
    let args: Vec<String> = std::env::args().collect();
    let p: u32 = args.get(1).map_or(3, |s| s.parse().expect("p"));
    let f: usize = args.get(2).map_or(1, |s| s.parse().expect("f"));
    let d: usize = args.get(3).map_or(5, |s| s.parse().expect("d"));

    let base = Field::new(p, f)?;
    let q = base.q();
    let ext = ExtField::new(base.clone(), d)?;
    println!("base {}", base.descriptor());
    println!("extension {}", ext.descriptor());

    // tau generates F_{q^d} over F_q; its Frobenius orbit has length d.
    let tau = ext.tau();
    let orbit: Vec<u32> = (0..d).map(|i| ext.frobenius(tau, i)).collect();
    println!("Frobenius orbit of tau: {orbit:?}");
    assert_eq!(ext.frobenius(tau, d), tau);

    let u = ext.mult_generator();
    println!(
        "u = {u} generates F_{{q^d}}^x / F_q^x (order {}): {}",
        ext.quotient_order(),
        ext.generates_quotient(u)
    );

    // The regular representation turns field products into matrix products.
    let (a, b) = (tau, ext.add(tau, 1));
    let lhs = ext.regular_rep(ext.mul(a, b));
    let rhs = base.mat_mul(&ext.regular_rep(a), &ext.regular_rep(b));
    println!("regular_rep(ab) = regular_rep(a) regular_rep(b): {}", lhs == rhs);

    let sizes: Vec<String> = (0..=d as u32)
        .map(|i| gaussian_binomial(d as u32, i, q as u64).map(|n| n.to_string()))
        .collect::<isocayley::Result<_>>()?;
    println!("subspace counts [d choose i]_q: {}", sizes.join(" "));
    println!("|PGL_{d}(F_{q})| = {}", pgl_order(d as u32, q as u64));
    println!("q-power family size: {}", family_size(q as u64, d as u64)?);
    Ok(())
}
