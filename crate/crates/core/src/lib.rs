//! Exact feasibility screens for distance-regular graphs with classical
//! parameters, together with Terwilliger-algebra tooling for small concrete
//! graphs.
//!
//! The crate is organized bottom-up:
//!
//! - [`exact`]: rationals, dense rational matrices, integer polynomials and
//!   rational root finding. Everything that decides a verdict runs here.
//! - [`params`]: quantities computable from `(D, q, alpha, beta)` alone.
//! - [`feasibility`]: integrality and divisibility screens, the alpha
//!   classification, the two family eliminations and the `k_D`/`f_D` sweep.
//! - [`graphs`]: concrete graphs, generators, distance partitions and
//!   distance-regularity detection.
//! - [`talg`]: the Terwilliger algebra of a graph at a base vertex and the
//!   decomposition of the standard module.
//! - [`uniform`]: solving for uniform structures.

pub mod error;
pub mod exact;
pub mod feasibility;
pub mod graphs;
pub mod params;
pub mod talg;
pub mod uniform;

pub use error::{Error, Result};
