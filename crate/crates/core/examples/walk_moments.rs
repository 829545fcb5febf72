//! Exact closed-walk counts for the two Omega-bar sets of one `(q, d)`.
//!
//! Usage: `walk_moments [q] [d] [K] [group-dp|ball-mitm]` (default `3 5 6 ball-mitm`).
//! Equal counts up to `K` are necessary for the two Cayley graphs to be
//! isospectral; they are evidence, not proof.

use std::time::Instant;

use isocayley::forge::{build_omega, symmetrize, GenParams};
use isocayley::spectra::{compare_moments, walk_moments, MomentOptions, Strategy};

fn main() -> isocayley::Result<()> {
    let args: Vec<String> = std::env::args().collect();
    let q: u32 = args.get(1).map_or(3, |s| s.parse().expect("q"));
    let d: usize = args.get(2).map_or(5, |s| s.parse().expect("d"));
    let k: usize = args.get(3).map_or(6, |s| s.parse().expect("K"));
    let strategy = Strategy::parse(args.get(4).map_or("ball-mitm", String::as_str))?;

    let mut seqs = Vec::new();
    for s in [1, 2] {
        let t = Instant::now();
        let bar = symmetrize(&build_omega(&GenParams::new(q, d, s)?)?)?;
        let m = walk_moments(&bar, k, strategy, None, &MomentOptions::default())?;
        println!("s={s}: {} generators, {:.1?}", bar.len(), t.elapsed());
        for (i, n) in m.counts.iter().enumerate() {
            println!("  N_{i} = {n}");
        }
        seqs.push(m);
    }
    let rep = compare_moments(&seqs[0], &seqs[1])?;
    println!("verdict: {}", rep.verdict.name());
    Ok(())
}
