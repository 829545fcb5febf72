//! Compare the Cayley graphs of the Omega-bar sets for sigma and sigma^2 at
//! (q, d) = (5, 3): spectra are too large for a dense solve, so run color
//! refinement and a budgeted isomorphism search.
//!
//! Usage: `isomorphism [max_nodes]` (default 100000).

use std::time::{Duration, Instant};

use isocayley::cayley::bfs_build;
use isocayley::forge::{build_omega, symmetrize, GenParams};
use isocayley::spectra::{compare_graphs, CompareMode, IsoBudget, DEFAULT_DENSE_CAP};

fn main() -> isocayley::Result<()> {
    let max_nodes: u64 = std::env::args().nth(1).map_or(100_000, |s| s.parse().expect("max_nodes"));
    let mut graphs = Vec::new();
    for s in [1, 2] {
        let t = Instant::now();
        let bar = symmetrize(&build_omega(&GenParams::new(5, 3, s)?)?)?;
        let g = bfs_build(&bar, 1_000_000)?;
        println!("s={s}: {} vertices, degree {}, {:.1?}", g.n(), g.r(), t.elapsed());
        graphs.push(g);
    }
    let budget = IsoBudget {
        max_nodes,
        time_limit: Duration::from_secs(600),
    };
    for mode in [CompareMode::Wl, CompareMode::Iso] {
        let t = Instant::now();
        let rep = compare_graphs(&graphs[0], &graphs[1], mode, DEFAULT_DENSE_CAP, &budget, true)?;
        println!("{}: {} ({:.1?})", mode.name(), rep.verdict.name(), t.elapsed());
        for (k, v) in &rep.details {
            println!("  {k}={v}");
        }
    }
    Ok(())
}
