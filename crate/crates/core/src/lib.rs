//! Exact lattice-point counting for rational and quadratic-irrational
//! simplices, quasipolynomial fitting, and checks for period collapse.

pub mod arith;
pub mod counting;
pub mod criteria;
mod linalg;
pub mod polytopes;
pub mod precursive;
pub mod quasipoly;
pub mod search;
pub mod sequences;
pub mod verify;

pub use arith::{ArithError, QuadNumber, Rational};
pub use polytopes::{
    AdmissiblePair, AxisSimplex, GeometryError, Interval, RationalTriangle2D, RationalTriangleParams,
    TrianglePair,
};
pub use quasipoly::{Fit, Quasipolynomial};
