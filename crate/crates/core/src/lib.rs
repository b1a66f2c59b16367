//! Exact combinatorics of simplicial complexes.
//!
//! The library computes:
//!
//! * face counts and their transforms: f-, h-, and g-vectors, Macaulay
//!   M-sequence tests, peak analysis ([`complex`], [`vectors`]);
//! * barycentric subdivisions with full vertex bookkeeping ([`complex`]);
//! * shellings: verification against both classical definitions, exhaustive
//!   budgeted search, and h-vectors from restriction faces ([`shelling`]);
//! * graded quotients of face rings by linear systems of parameters over a
//!   prime field, multiplication ranks, and randomized Lefschetz
//!   certificates ([`face_algebra`], [`field`]);
//! * refined descent statistics: tables A(d, i, j) counting permutations by
//!   descent number and first letter, the induced transform on h-vectors
//!   under barycentric subdivision, and the inequality families those tables
//!   satisfy ([`eulerian`]);
//! * a plain text facet-list format plus JSON serialization for
//!   certificates and reports ([`io`]).
//!
//! Everything is exact: integer data uses arbitrary precision, linear
//! algebra runs over F_p. Randomized checks take explicit seeds and report
//! them, so every result is reproducible.

// Parity tests and floor/ceiling halves stay in their textbook `%` and `/`
// forms throughout; the method spellings obscure the formulas.
#![allow(clippy::manual_is_multiple_of, clippy::manual_div_ceil)]

pub mod complex;
pub mod eulerian;
pub mod face_algebra;
pub mod field;
pub mod io;
pub mod shelling;
pub mod vectors;

#[cfg(test)]
pub(crate) mod fixtures;

pub use complex::{ComplexError, Face, SimplicialComplex, SubdividedComplex};
pub use eulerian::{EulerianError, EulerianTable};
pub use face_algebra::{GradedQuotientModel, LefschetzCertificate, LefschetzOutcome, LinearForm};
pub use field::PrimeField;
pub use io::ParseError;
pub use shelling::{ShellingCertificate, ShellingError, ShellingSearch};
pub use vectors::IntVector;
