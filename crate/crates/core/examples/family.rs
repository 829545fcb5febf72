//! The family of generator sets obtained from Omega-bar by q-power maps,
//! with closed-walk counts for each member.
//!
//! Usage: `family [q] [d] [K]` (default `3 5 4`).

use isocayley::forge::{build_omega, family, symmetrize, GenParams};
use isocayley::spectra::{walk_moments, MomentOptions, Strategy};

fn main() -> isocayley::Result<()> {
    let args: Vec<String> = std::env::args().collect();
    let q: u32 = args.get(1).map_or(3, |s| s.parse().expect("q"));
    let d: usize = args.get(2).map_or(5, |s| s.parse().expect("d"));
    let k: usize = args.get(3).map_or(4, |s| s.parse().expect("K"));

    let bar = symmetrize(&build_omega(&GenParams::new(q, d, 1)?)?)?;
    let fam = family(&bar)?;
    println!("family of {} sets", fam.len());
    for (i, set) in fam.iter().enumerate() {
        let m = walk_moments(set, k, Strategy::BallMitm, None, &MomentOptions::default())?;
        println!(
            "  {i}: s={} |set|={} hash {} N = {:?}",
            set.params().s(),
            set.len(),
            set.hash(),
            m.counts
        );
    }
    Ok(())
}
