//! Signed Young permutation modules over prime fields of odd characteristic.
//!
//! The crate constructs the modules `M(alpha|beta)` of symmetric groups on a
//! signed tabloid basis, decomposes them into indecomposable direct summands
//! with exact linear algebra over `F_p`, labels the summands as signed Young
//! modules `Y(lambda|p*mu)`, and computes signed p-Kostka numbers two
//! independent ways: by explicit decomposition and by the layer recursion
//! over Brauer quotients.
//!
//! Everything is exact; no floating point is used anywhere.

pub mod cache;
pub mod combinatorics;
pub mod fp_linalg;
pub mod registry;
pub mod rep;
pub mod report;
pub mod sylow;
pub mod tabloids;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("p = {0} is not an odd prime")]
    BadPrime(u64),
    #[error("dimension {dim} exceeds cap {cap} while building {what}")]
    DimensionCap { dim: u64, cap: u64, what: String },
    #[error("group order cap exceeded: |P| > {cap}")]
    GroupCap { cap: u64 },
    #[error("no solution")]
    NoSolution,
    #[error("decomposition unresolved: {0}")]
    Unresolved(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error("cache error: {0}")]
    Cache(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Checks that `p` is an odd prime. The whole theory assumes odd
/// characteristic; `p = 2` is rejected everywhere.
pub fn validate_odd_prime(p: u64) -> Result<()> {
    if p < 3 || p % 2 == 0 {
        return Err(Error::BadPrime(p));
    }
    let mut d = 3;
    while d * d <= p {
        if p % d == 0 {
            return Err(Error::BadPrime(p));
        }
        d += 2;
    }
    Ok(())
}

/// Tunable limits for the engine.
#[derive(Debug, Clone)]
pub struct Caps {
    /// Maximum module dimension accepted by decomposition.
    pub rep_dim: u64,
    /// Maximum number of tabloids enumerated for one shape.
    pub tabloids: u64,
    /// Maximum p-group order enumerated element by element.
    pub group_order: u64,
    /// Random Fitting attempts before certification kicks in.
    pub fitting_budget: u32,
    /// Largest End dimension for which idempotents are enumerated
    /// exhaustively.
    pub end_dim_exhaustive: usize,
    /// Largest p^dim(End) for the exhaustive idempotent enumeration.
    pub end_space_exhaustive: u64,
    /// Random invertibility trials in isomorphism testing.
    pub iso_retries: u32,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            rep_dim: 1500,
            tabloids: 1_000_000,
            group_order: 729, // 3^6
            fitting_budget: 40,
            end_dim_exhaustive: 12,
            end_space_exhaustive: 531_441, // 3^12
            iso_retries: 20,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odd_primes_accepted() {
        for p in [3u64, 5, 7, 11, 13] {
            assert!(validate_odd_prime(p).is_ok());
        }
    }

    #[test]
    fn non_primes_and_two_rejected() {
        for p in [0u64, 1, 2, 4, 9, 15, 21] {
            assert!(validate_odd_prime(p).is_err());
        }
    }
}
