//! Dense adjacency spectrum of a small Cayley graph, checked against the
//! closed-walk counts.
//!
//! Usage: `spectrum [q] [alpha]` (default `7 1`).

use isocayley::cayley::bfs_build;
use isocayley::forge::{build_omega, symmetrize, GenParams};
use isocayley::spectra::{dense_spectrum, walk_moments, MomentOptions, Strategy, DEFAULT_DENSE_CAP};

fn main() -> isocayley::Result<()> {
    let args: Vec<String> = std::env::args().collect();
    let q: u32 = args.get(1).map_or(7, |s| s.parse().expect("q"));
    let alpha: i64 = args.get(2).map_or(1, |s| s.parse().expect("alpha"));

    let bar = symmetrize(&build_omega(&GenParams::with_alpha(q, 2, 1, alpha)?)?)?;
    let g = bfs_build(&bar, 1_000_000)?;
    let spec = dense_spectrum(&g, None, DEFAULT_DENSE_CAP)?;
    println!("n={} r={} residual {:.2e}", spec.n, spec.r, spec.residual);
    for &(value, mult) in &spec.eigenvalues {
        let value = if value.abs() < spec.tolerance() { 0.0 } else { value };
        println!("  {value:>12.6} x{mult}");
    }

    let k = 8;
    let m = walk_moments(&bar, k, Strategy::GroupDp, None, &MomentOptions::default())?;
    for (i, &count) in m.counts.iter().enumerate() {
        let total = count as f64 * spec.n as f64;
        println!("k={i}: n*N_k = {total:.0}, sum lambda^k = {:.3}", spec.power_sum(i as u32));
    }
    Ok(())
}
