//! Omega-hat: products of pairs from Omega that are again generators, found
//! by meet-in-the-middle and verified by lifting.
//!
//! Usage: `omega_hat [q] [d]` (default `5 3`).

use std::time::Instant;

use isocayley::forge::{build_omega, build_omega_hat, omega_hat_memory_estimate, GenParams};

fn main() -> isocayley::Result<()> {
    let args: Vec<String> = std::env::args().collect();
    let q: u32 = args.get(1).map_or(5, |s| s.parse().expect("q"));
    let d: usize = args.get(2).map_or(3, |s| s.parse().expect("d"));

    let t = Instant::now();
    let omega = build_omega(&GenParams::new(q, d, 1)?)?;
    println!("|Omega| = {}", omega.len());
    if let Some(bytes) = omega_hat_memory_estimate(omega.len(), d, q) {
        println!("estimated memory: {bytes} bytes");
    }
    let (hat, report) = build_omega_hat(&omega, 4 << 30)?;
    println!(
        "|Omega-hat| = {}, color classes {:?}, {:.1?}",
        hat.len(),
        &hat.color_counts()[1..],
        t.elapsed()
    );
    println!(
        "candidates {} verified {} rejected {}, estimated {} bytes",
        report.candidates, report.verified, report.rejected, report.estimated_bytes
    );
    Ok(())
}
