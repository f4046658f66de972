//! Exact-arithmetic verification of equivariant matrix presentations of
//! Ulrich and aCM sheaves on invariant hypersurfaces.
//!
//! A handful of representations with finitely many orbits carry an invariant
//! hypersurface `H` together with an equivariant pencil `φ(v) ∈ Hom(A, B)`
//! whose determinant is a power of the equation of `H`. The cokernel of the
//! pencil is then an Ulrich or aCM sheaf supported on `H`, and everything
//! that makes this work is a finite list of exact identities: determinant
//! power laws, corank stratifications, kernel identifications and Hilbert
//! functions. This crate builds the pencils over the rationals and checks
//! every one of those identities with no floating point anywhere.
//!
//! The constructions covered:
//!
//! * the four cubic (secant-variety) cases on spaces of dimension
//!   6, 9, 15 and 27 ([`severi`]),
//! * three-forms in seven variables with their degree-seven invariant
//!   ([`heptic7`]),
//! * the quadratic pencils attached to the quartic invariants of
//!   `∧³C⁶` ([`freud_sl6`]) and of the half-spin representation of
//!   `Spin₁₂` ([`freud_spin12`]).
//!
//! [`engine`] ties the cases together (determinant-identity trials, corank
//! surveys, linear sections, Hilbert functions) and emits JSON reports; the
//! companion `ulrich` binary is the command-line front end.

pub mod engine;
pub mod exactla;
pub mod exterior;
pub mod freud_sl6;
pub mod freud_spin12;
pub mod heptic7;
pub mod octjordan;
pub mod poly;
pub mod severi;

pub(crate) mod rngutil;

pub use exactla::{Matrix, Rat};
