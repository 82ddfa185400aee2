//! Graded commutative-algebra workbench over prime fields.
//!
//! Computes minimal free resolutions, Tor/Ext modules, the subspace of
//! unstable cohomology classes and its filtration, annihilator spaces,
//! Yoneda products, Bass/Poincare series, and windowed probes of the
//! invariant sigma(R), for standard graded quotients R = F_p[x_1..x_v]/I.

pub mod cohomology;
pub mod complexes;
pub mod error;
pub mod extalgebra;
pub mod field_linalg;
pub mod groebner;
pub mod polyring;
pub mod resolution;
pub mod serieslab;
pub mod sigmalab;
pub mod suite;

pub use error::{Error, Result};
pub use field_linalg::{FMatrix, PrimeField, Subspace};
pub use polyring::{ModulePresentation, Monomial, Polynomial, RingPresentation};
pub use resolution::{FreeComplex, FreeModule};
