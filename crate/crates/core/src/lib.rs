//! Explicit generator sets for `PSL_d(F_q)` built from cyclic division algebras, their
//! Cayley graphs and complexes, and exact spectral fingerprints for
//! comparing them.
//!
//! The crate is layered bottom-up:
//!
//! - [`ff`]: finite fields, polynomials, rational functions, valuations,
//!   Gaussian binomials.
//! - [`cyclic`]: the cyclic algebra `F_{q^d}(t)[z | z a = sigma(a) z, z^d = 1+t]`,
//!   its matrix model, reduced norms and specialization to `M_d(F_q)`.
//! - [`forge`]: the generator sets `Omega`, `Omega-bar`, `Omega-hat`, building
//!   colors, attached subspaces and the `q`-power family.
//! - [`cayley`]: projective matrices, BFS Cayley graphs, colored subgraphs,
//!   clique cells and graph files.
//! - [`spectra`]: closed-walk moments, dense spectra, Weisfeiler-Leman
//!   certificates, isomorphism search and comparison reports.
//! - [`cli`], [`suite`] and [`manifest`]: the `isocayley` command line,
//!   packaged verification suites and run manifests.

pub mod cayley;
pub mod cli;
pub mod cyclic;
pub mod error;
pub mod files;
pub mod ff;
pub mod forge;
pub mod manifest;
pub mod spectra;
pub mod suite;

pub use error::{Error, Result};
