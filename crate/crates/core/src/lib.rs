//! Exact computer algebra for the mod-2 cohomology of real Grassmannians
//! `G(n,k)` and their oriented double covers.
//!
//! Everything here is exact: polynomials over GF(2) with weighted variable
//! degrees, per-degree echelon linear algebra for graded quotient rings, and
//! the combinatorics of binary expansions. No floating point, no randomized
//! algorithms outside explicitly seeded sampling.
//!
//! The crate is organized around the objects it computes:
//!
//! * [`f2core`] — monomials, GF(2) polynomials, Lucas parity, binary
//!   supports, and the `3p1 + 4p2 + 5p3` decomposition.
//! * [`swclasses`] — dual Stiefel–Whitney classes and their mod-`w1`
//!   reductions.
//! * [`quotient`] — graded quotient rings with normal forms, duality
//!   pairings, cup length, and in-ring linear solving.
//! * [`grassmann`] — Borel rings, the double-cover Gysin analysis, oriented
//!   Betti numbers, and characteristic rank.
//! * [`oriented3`] — the anomalous classes of oriented 3-plane Grassmannians
//!   and the identities they satisfy.
//! * [`presentations`] — closed-form ring presentations, a small text format
//!   for them, homomorphism verification, and parameter searches.

pub mod f2core;
pub mod grassmann;
pub mod linalg;
pub mod oriented3;
pub mod presentations;
pub mod quotient;
pub mod swclasses;

use std::fmt;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Two polynomials over different variable sets were combined.
    AmbientMismatch,
    /// Exact division failed because the divisor does not divide every term.
    NotDivisible,
    /// A relation handed to a quotient constructor is not homogeneous.
    NonHomogeneousRelation(String),
    /// The degree cap is smaller than a relation degree.
    CapTooSmall { relation_degree: u32, cap: u32 },
    /// An element's degree does not match what the operation requires.
    DegreeMismatch { expected: u32, found: u32 },
    /// A duality pairing was requested on a ring whose top degree is not
    /// one-dimensional.
    TopDegreeNotOneDimensional { degree: usize, dim: usize },
    /// A configurable resource limit (term count, search-space size) was hit.
    ResourceCap(String),
    /// Input outside an operation's documented domain.
    InvalidInput(String),
    /// A theorem hypothesis that should hold computationally was violated;
    /// this signals an engine bug, not a mathematical discovery.
    HypothesisViolation(String),
    /// Malformed presentation text.
    Parse(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::AmbientMismatch => write!(f, "polynomials live over different variable sets"),
            Error::NotDivisible => write!(f, "exact division failed"),
            Error::NonHomogeneousRelation(r) => write!(f, "relation is not homogeneous: {r}"),
            Error::CapTooSmall {
                relation_degree,
                cap,
            } => write!(
                f,
                "degree cap {cap} below relation degree {relation_degree}"
            ),
            Error::DegreeMismatch { expected, found } => {
                write!(f, "degree mismatch: expected {expected}, found {found}")
            }
            Error::TopDegreeNotOneDimensional { degree, dim } => {
                write!(f, "top degree {degree} has dimension {dim}, expected 1")
            }
            Error::ResourceCap(what) => write!(f, "resource cap exceeded: {what}"),
            Error::InvalidInput(what) => write!(f, "invalid input: {what}"),
            Error::HypothesisViolation(what) => write!(f, "hypothesis violation: {what}"),
            Error::Parse(what) => write!(f, "parse error: {what}"),
        }
    }
}

impl std::error::Error for Error {}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
