//! Combinatorial classification data for tight contact structures on lens
//! spaces L(p,q), solid tori, and thickened tori T²×I.
//!
//! The classification is governed by negative continued fractions and the
//! Farey tessellation: a minimally twisting T²×I factors into basic slices
//! along the shortest Farey path between its boundary slopes, sign choices
//! per continued-fraction block enumerate the isotopy classes, the relative
//! Euler class distinguishes them, and nonrotative layers reduce to chord
//! diagrams on an annulus with an integer holonomy.
//!
//! Everything here is exact integer arithmetic; enumeration results are
//! deterministic and reproducible.

pub mod contfrac;
pub mod diagram;
pub mod divsets;
pub mod farey;
pub mod lens;
pub mod slices;

pub use contfrac::{BlockShape, CfStep, NegContFrac};
pub use farey::{FareyError, IntegralVector, Mat2, Slope};
pub use lens::{LensDescriptor, LensSpace, SolidTorusDescriptor};
pub use slices::{
    BasicSlice, EulerVector, GlueOutcome, MinimalDescriptor, Sign, SliceFactorization, T2xIClass,
    TwistingData,
};
