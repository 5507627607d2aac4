//! Normal-surface machinery for Dehn fillings of knot-manifolds.
//!
//! The crate works with generalized triangulations whose boundary is a one-vertex torus. It
//! provides normal and almost-normal (octagon) coordinates, exact vertex enumeration of the
//! solution cone, the normal-curve calculus on the boundary torus, layered solid tori, Dehn-filling
//! assembly, and candidate-slope reports.

pub mod coords;
mod dsu;
pub mod enumerate;
pub mod error;
pub mod filling;
pub mod layered;
pub mod par;
pub mod perm;
pub mod reports;
pub mod surface;
pub mod torus;
pub mod triangulation;

pub use coords::{Mode, NormalCoords};
pub use error::{Error, Result};
pub use perm::Perm4;
pub use torus::{IntersectionTriple, Slope, TorusCurve};
pub use triangulation::{BoundaryTorus, Triangulation};
