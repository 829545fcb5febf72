//! Build a Cayley graph of PSL_2 by BFS, split it by color and round-trip it
//! through both file formats.
//!
//! Usage: `cayley_graph [q] [alpha]` (default `7 1`).

use isocayley::cayley::io::{read_graph, write_graph};
use isocayley::cayley::{bfs_build, GraphFormat};
use isocayley::forge::{build_omega, expected_group_order, symmetrize, GenParams};

fn main() -> isocayley::Result<()> {
    let args: Vec<String> = std::env::args().collect();
    let q: u32 = args.get(1).map_or(7, |s| s.parse().expect("q"));
    let alpha: i64 = args.get(2).map_or(1, |s| s.parse().expect("alpha"));

    let params = GenParams::with_alpha(q, 2, 1, alpha)?;
    let bar = symmetrize(&build_omega(&params)?)?;
    let g = bfs_build(&bar, 1_000_000)?;
    println!(
        "{} vertices (expected {}), out-degree {}, symmetric {}, connected {}",
        g.n(),
        expected_group_order(&params),
        g.r(),
        g.is_symmetric(),
        g.is_connected()
    );
    for c in 1..=(params.d() as u8 - 1) {
        let sub = g.colored_subgraph(&[c])?;
        println!("color {c}: out-degree {}", sub.r());
    }

    let dir = tempfile::tempdir()?;
    for format in [GraphFormat::Text, GraphFormat::Binary] {
        let path = dir.path().join("graph");
        write_graph(&g, &path, format)?;
        let back = read_graph(&path)?;
        let size = std::fs::metadata(&path)?.len();
        println!("{format:?}: {size} bytes, round trip equal {}", back.keys() == g.keys());
    }
    Ok(())
}
