//! Hyperbolic volumes of once-punctured torus bundles and explicit
//! Weil-Petersson estimates derived from them.
//!
//! The pipeline for a monodromy `ψ ∈ SL₂(Z)`:
//!
//! 1. [`mapping_class`] reduces `ψ` to its cyclic `LR` word;
//! 2. [`triangulation`] layers one ideal tetrahedron per letter and derives
//!    the gluing equations;
//! 3. [`solver`] finds the complete hyperbolic structure and sums
//!    Bloch–Wigner volumes;
//! 4. [`bounds`] turns volumes into lower bounds on Weil-Petersson
//!    translation lengths, and evaluates the systole, diameter and inradius
//!    estimates; [`farey`] gives the distance intervals between noded
//!    surfaces of the punctured torus.

pub mod bounds;
pub mod error;
pub mod farey;
pub mod mapping_class;
pub mod solver;
pub mod special;
pub mod triangulation;

pub use bounds::{BoundReport, SurfaceType};
pub use error::{Error, Result};
pub use farey::{DistanceInterval, FareySlope};
pub use mapping_class::{Letter, LrWord, MappingClass, Matrix2, TraceClass};
pub use solver::{ShapeSolution, SolverOptions, VolumeResult};
pub use special::Constants;
pub use triangulation::{GluingSystem, IdealTriangulation};

pub use num_complex::Complex64;
