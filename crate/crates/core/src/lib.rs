//! Exact-arithmetic workbench for the dynamics of surjective endomorphisms.
//!
//! The crate is organized around five subsystems:
//!
//! * [`exactlin`] — exact linear algebra over the integers and rationals:
//!   characteristic polynomials, rational spectra with Jordan data, certified
//!   eigenvalue-modulus intervals, and spectral-radius bounds.
//! * [`cones`] — rational polyhedral cones: canonical ray representations,
//!   facet enumeration by double description, invariance under integer
//!   matrices, and the dilation criteria that govern ray-permuting actions.
//! * [`dynsys`] — concrete endomorphism models over the rationals: split and
//!   factor-permuting polynomial self-maps of products of projective lines,
//!   with exact iteration, pullback matrices, section spaces and base loci.
//! * [`heights`] — Weil and canonical heights, the Jordan-block height
//!   recursion, arithmetic-degree estimation, point classification, and
//!   surveys of the small-height locus.
//! * [`atiyah`] — the formal calculus of semistable degree-zero bundles on an
//!   elliptic curve: tensor and symmetric-power decompositions, determinant
//!   and section-count bookkeeping, and anticanonical section tests.
//!
//! All decision procedures are exact: integer and rational arithmetic is
//! arbitrary precision, and every inexact quantity (logarithms of integers,
//! irrational eigenvalue moduli) is reported either as a certified rational
//! interval or as a fixed-point value with an explicit residual.

pub mod atiyah;
pub mod cones;
pub mod dynsys;
pub mod exactlin;
pub mod heights;

pub(crate) mod linalg;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// Shorthand used throughout the crate for exact rational scalars.
pub type Rat = BigRational;
/// Shorthand for exact integer scalars.
pub type Int = BigInt;
