//! Exact enumeration toolkit for the polytope `P_n`: the convex hull of the
//! n×n permutation matrices that vanish above the first superdiagonal.
//!
//! Everything here is exact integer/rational arithmetic; there is no floating
//! point anywhere. The crate computes Ehrhart polynomials of `P_n` and its
//! facets, relative volumes, the triangular-array family `A_n` that indexes a
//! unimodular simplicial decomposition of `P_n`, and the conjectured Catalan /
//! Narayana / Kostant identities tying all of these together.

pub mod arrays;
pub mod cache;
pub mod decomp;
pub mod ehrhart;
pub mod exact;
pub mod facets;
pub mod fixtures;
pub mod oracle;
pub mod transfer;
pub mod verify;
pub mod vertices;

use thiserror::Error;

/// Crate-wide error type. Exit-code mapping for the CLI:
/// usage/invalid input -> 2, scale guard -> 3, mismatch against
/// reference data -> 1.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("scale guard exceeded: {0} (pass --force / --heavy to override)")]
    GuardExceeded(String),
    #[error("self-check failed: {0}")]
    SelfCheck(String),
    #[error("reference data mismatch: {0}")]
    Mismatch(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
