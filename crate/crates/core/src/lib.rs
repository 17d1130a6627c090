//! Construction and verification of equiangular tight frames.
//!
//! An (n, d) equiangular tight frame (ETF) is a set of n unit vectors in C^d
//! whose pairwise squared overlaps all equal (n - d)/(d (n - 1)); any set
//! meeting that bound for every pair is automatically tight, meaning its
//! frame operator is (n/d) I. This crate builds such frames from three exact
//! combinatorial sources and verifies everything it builds:
//!
//! - Paley tournaments over GF(q) for prime powers q = 3 (mod 4), giving
//!   (q, (q+1)/2) and (q, (q-1)/2) frames through two Gram-matrix routes;
//! - skew conference matrices of order 2^k from a doubling recursion, giving
//!   the same two routes at n = 2^k - 1 (which need not be a prime power)
//!   plus a (2^k, 2^(k-1)) frame;
//! - quadratic-residue frames over any odd prime power q, giving (q+1,
//!   (q+1)/2) frames and, after removing one vector and renormalizing via
//!   the canonical tight frame map, (q, (q+1)/2) frames.
//!
//! The integer identities behind the constructions (A^2 = J - nI and
//! CC^T = (n-1)I) are checked exactly; the floating-point checks
//! (equiangularity, tightness, spectra) run against explicit tolerances
//! through [`verify`].

pub mod characters;
pub mod constructions;
pub mod field;
pub mod frame;
pub mod io;
pub mod linalg;
pub mod registry;
pub mod sign;
pub mod verify;

pub use field::{FieldElement, FiniteField};
pub use frame::{ConstructionTag, Frame, Provenance};
pub use linalg::ComplexMatrix;
pub use sign::SignMatrix;
pub use verify::VerificationReport;
