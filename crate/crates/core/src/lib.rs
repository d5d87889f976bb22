//! Simplicial cell decompositions of products of 2-spheres and of complex
//! projective spaces, built from the staircase subdivision of triangle
//! products and a quotient by the symmetric group.
//!
//! The universal carrier is [`GluedComplex`]: facets with local labels `0..=d`
//! and face-to-face gluings. Everything else (face posets, quotients, derived
//! subdivisions, homology, graph encodings) is computed from it.

pub mod complex;
pub mod derived;
pub mod error;
pub mod exec;
pub mod gem;
pub mod homology;
pub mod quotient;
pub mod reference;
pub mod staircase;
pub mod sym_action;

pub use complex::{FVector, FacePoset, GluedComplex, Gluing, LabelPerm};
pub use error::{Error, Result};
pub use exec::Strategy;
