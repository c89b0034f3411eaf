//! Exact ℓ¹ filling norms and expansion constants of finite 2-complexes, finite
//! covers from permutation data, chain-level Poincaré duality for simplicial
//! 3-manifolds, and hyperbolicity diagnostics.
//!
//! All arithmetic is exact: rationals are `BigRational`, integer linear algebra
//! goes through Smith normal form, and linear programs are solved by an exact
//! simplex method whose dual vector doubles as an optimality certificate.

pub mod arith;
pub mod chain;
pub mod complex;
pub mod covers;
pub mod duality;
pub mod error;
pub mod filling;
pub mod homology;
pub mod hyperbolic;
pub mod ilp;
pub mod linalg;
pub mod lp;
pub mod matrix;
pub mod polytope;
pub mod snf;
pub mod subcomplex;

pub use chain::{Chain, ChainJson};
pub use complex::{parse_complex, CellComplex2, SignedEdge};
pub use error::{Error, Result};
pub use filling::{fill, primitive, rho, FillProblem, FillResult, Ring};
pub use homology::HomologySummary;
pub use matrix::IntMatrix;
