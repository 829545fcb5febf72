//! Projective matrices over `F_q`, Cayley graphs and their clique complexes.

mod cells;
mod graph;
pub mod io;
pub mod projmat;

pub use cells::{clique_cells, CellCounts};
pub use graph::CayleyGraph;
pub use io::GraphFormat;
pub use projmat::ProjMat;

use crate::error::{Error, Result};
use crate::forge::GenSet;

/// Cayley graph of the group generated by a symmetric generator set.
pub fn bfs_build(gens: &GenSet, max_vertices: usize) -> Result<CayleyGraph> {
    if !gens.kind().is_symmetric() {
        return Err(Error::Precondition(
            "Cayley graphs are built from Omega-bar or Omega-hat".into(),
        ));
    }
    let g = CayleyGraph::build(gens.field(), &gens.projs(), &gens.colors(), max_vertices)?;
    debug_assert!(g.is_symmetric());
    Ok(g)
}
