//! Generator sets `Omega`, `Omega-bar` and `Omega-hat` with their global
//! lifts, colors, attached subspaces and group-theoretic checks.

mod family;
mod genset;
mod omega;
mod omega_hat;
mod params;
mod psl;
mod subspace;

pub use family::family;
pub use genset::{GenSet, Generator, Kind};
pub use omega::{build_omega, symmetrize, symmetrize_report, Coincidence};
pub use omega_hat::{build_omega_hat, omega_hat_memory_estimate, MitmReport};
pub use params::{GenParams, ParamOverrides};
pub use psl::{expected_group_order, expected_index, psl_check, PslStatus};
pub use subspace::{attach_subspace, color_of};
