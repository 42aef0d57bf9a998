//! Exact-arithmetic computation of cohomology jump loci on the character
//! torus (C*)^n.
//!
//! The crate builds finite free chain complexes over the Laurent ring
//! Z[x_1^(+-1), ..., x_n^(+-1)] modelling a torus with a wedged k-sphere and
//! (k+1)-cells indexed by Laurent polynomials, computes twisted cohomology
//! dimensions pointwise at exact characters, runs the analogous first-degree
//! computation for finitely presented groups, and verifies the expected
//! locus identities over sampled character batteries.

pub mod chain;
pub mod construction;
pub mod error;
pub mod groups;
pub mod laurent;
pub mod loci;
pub mod obstruction;
pub mod scalar;

mod upoly;

pub use error::{Error, Result};
