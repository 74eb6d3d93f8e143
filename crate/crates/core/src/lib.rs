//! Exact census of `[3x3; 3]` MRD codes over small finite fields.
//!
//! The crate builds every normalized MRD triple `(I, C_f, Z)` both by brute
//! force and through the symmetric-function parametrization over `F_{q^3}`,
//! checks the two against each other and against closed-form counts, and
//! evaluates the proportion of MRD codes among all 3-dimensional subspaces of
//! `F_q^{3x3}` exactly.

pub mod census;
pub mod cli;
pub mod error;
pub mod gfield;
pub mod mat3;
pub mod menichetti;
pub mod rankcode;
pub mod semifield;

pub use error::{Error, Result};
pub use gfield::{ExtCtx, ExtElem, FieldCtx, Fq, MinPoly, MonicCubic};
pub use mat3::Mat3;
pub use rankcode::{ExactCount, ExactRatio, MrdTriple};
