//! Exact arithmetic over `F_q`, `F_{q^d}`, polynomials and rational
//! functions over them, and `q`-analog counting.

pub mod counting;
mod ext;
pub mod field;
pub mod mat;
pub mod poly;
pub mod ratfunc;

pub use counting::{family_size, gaussian_binomial, pgl_order, psl_order};
pub use field::{ExtField, ExtFieldElem, Field, FieldElem, FiniteField, PrimeField};
pub use mat::Mat;
pub use poly::Poly;
pub use ratfunc::{Place, RatFunc, VAL_INFINITY};
